#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "sr/gamma.hpp"
#include "sr/rng.hpp"

using namespace sr;

TEST_CASE("covering numbers count delta-cells per axis") {
    CHECK(covering_number(Box::cube(1, 4.0), 0.5) == 8);
    CHECK(covering_number(Box::cube(1, 4.0), 0.9) == 5);
    CHECK(covering_number(Box::cube(2, 3.0), 1.0) == 9);
    CHECK(covering_number(Box::cube(3, 1.0), 0.5) == 8);
    // ratios that land on an integer up to roundoff must not round up
    CHECK(covering_number(Box::cube(1, 0.3 * 7.0), 0.3) == 7);
    CHECK_THROWS_AS(covering_number(Box::cube(1, 1.0), 0.0), DomainError);
}

TEST_CASE("pigeonhole energy bound switches on past one point per cell") {
    Box box = Box::cube(1, 4.0);
    CostFunction hs = CostFunction::hard_sphere();
    // 5 cells of size 0.9: 5 points fit, the bound stays zero even with inf cost
    CHECK(gamma_lower_bound_energy(5, box, hs, 0.9) == 0.0);
    CHECK(std::isinf(gamma_lower_bound_energy(6, box, hs, 0.9)));

    CostFunction st = CostFunction::step(2.0);
    // 4 cells of size 0.5 on [0,2), 8 points: zeta = 2, bound = 8 * 1 * 1
    CHECK(gamma_lower_bound_energy(8, Box::cube(1, 2.0), st, 0.5) ==
          doctest::Approx(8.0));
    CHECK(gamma_lower_bound_energy(0, box, st, 0.5) == 0.0);
}

TEST_CASE("grid dynamic program matches exhaustive enumeration") {
    double g = 0.5;
    double k = 2.0;
    for (const CostFunction& cost :
         {CostFunction::hard_sphere(), CostFunction::step(2.0),
          CostFunction::step(1.0, 0.8)}) {
        for (double lambda : {0.5, 1.0, 1.7}) {
            GammaEstimate dp = gamma_bruteforce_1d(cost, lambda, k, g);

            // oracle: every multiplicity vector on the 4 grid sites
            double ell0 = cost(0.0);
            int cap = std::isinf(ell0) ? 1 : 8;
            int n_sites = 4;
            double best = 0.0;
            std::vector<int> m(n_sites, 0);
            while (true) {
                double val = 0.0;
                bool ok = true;
                long total = 0;
                for (int i = 0; i < n_sites && ok; ++i) {
                    total += m[i];
                    if (m[i] >= 2 && std::isinf(ell0)) ok = false;
                    if (m[i] >= 2) val -= m[i] * (m[i] - 1) * ell0;
                    for (int j = i + 1; j < n_sites && ok; ++j) {
                        if (m[i] == 0 || m[j] == 0) continue;
                        double c = cost((j - i) * g);
                        if (std::isinf(c)) ok = false;
                        val -= 2.0 * m[i] * m[j] * c;
                    }
                }
                if (ok) best = std::max(best, val + lambda * total);
                int idx = 0;
                while (idx < n_sites && m[idx] == cap) m[idx++] = 0;
                if (idx == n_sites) break;
                ++m[idx];
            }
            CHECK(dp.value == doctest::Approx(best).epsilon(1e-12));
            CHECK_FALSE(dp.lower_bound_flag);
        }
    }
}

TEST_CASE("hard-sphere boxes hold exactly k unit spheres") {
    CostFunction hs = CostFunction::hard_sphere();
    for (double k : {4.0, 5.0, 6.0}) {
        for (double lambda : {0.5, 1.0, 2.0}) {
            GammaEstimate est = gamma_bruteforce_1d(hs, lambda, k, 0.25);
            CHECK(est.value == doctest::Approx(lambda * k).epsilon(1e-12));
            CHECK(est.config.total_count() == static_cast<long>(k));
        }
    }
}

TEST_CASE("grid value grows with the chemical potential and the box") {
    CostFunction st = CostFunction::step(2.0);
    GammaEstimate a = gamma_bruteforce_1d(st, 1.0, 4.0, 0.25);
    GammaEstimate b = gamma_bruteforce_1d(st, 2.0, 4.0, 0.25);
    GammaEstimate c = gamma_bruteforce_1d(st, 1.0, 6.0, 0.25);
    CHECK(b.value >= a.value);
    CHECK(c.value >= a.value);
    CHECK(a.value == doctest::Approx(4.0));  // unit spacing saturates lambda * k
    CHECK(gamma_bruteforce_1d(st, -1.0, 4.0, 0.25).value == 0.0);
}

TEST_CASE("annealing reaches the known step-cost optimum and stays a lower bound") {
    CostFunction st = CostFunction::step(2.0);
    AnnealSchedule sched;
    GammaEstimate est = gamma_anneal(st, 1.0, 8.0, 1, sched, 42);
    CHECK(est.value >= 8.0 - 1e-9);   // the unit-spacing lattice seed already scores 8
    CHECK(est.value <= 8.0 + 1e-6);   // and 8 is the exact box optimum
    CHECK(est.lower_bound_flag);
    est.config.validate();

    GammaEstimate again = gamma_anneal(st, 1.0, 8.0, 1, sched, 42);
    CHECK(again.value == est.value);  // same seed, same answer

    CHECK(gamma_anneal(st, -0.5, 8.0, 1, sched, 1).value == 0.0);
}

TEST_CASE("annealed estimates respect the finite-box bound") {
    CostFunction st = CostFunction::step(2.0);
    AnnealSchedule sched;
    sched.stages = 80;
    for (double lambda : {0.5, 1.5, 3.0}) {
        GammaEstimate est = gamma_anneal(st, lambda, 6.0, 1, sched, 7);
        double ub = kInf;
        for (double delta : {0.25, 0.5, 0.99}) {
            ub = std::min(ub, gamma_upper_bound(lambda, Box::cube(1, 6.0), delta, st, 1));
        }
        CHECK(est.value <= ub + 1e-9);
    }
}

TEST_CASE("thermodynamic estimate lands on the step-cost density") {
    CostFunction st = CostFunction::step(2.0);
    AnnealSchedule sched;
    sched.stages = 120;
    GEstimate g = estimate_g(st, 1.0, {4.0, 8.0}, 1, 1, 99, sched);
    CHECK(g.g_value == doctest::Approx(1.0).epsilon(0.05));
    CHECK(g.values_by_k.size() == 2);
    CHECK(estimate_g(st, -1.0, {4.0, 8.0}, 1, 1, 99, sched).g_value == 0.0);
}

TEST_CASE("finite-box upper bound covers the closed forms") {
    CostFunction hs = CostFunction::hard_sphere();
    // l_- is infinite below contact distance: bound collapses to lambda * cells
    CHECK(gamma_upper_bound(2.0, Box::cube(1, 4.0), 0.9, hs, 1) ==
          doctest::Approx(10.0));
    CHECK(gamma_upper_bound(-1.0, Box::cube(1, 4.0), 0.9, hs, 1) == 0.0);

    CostFunction st = CostFunction::step(2.0);
    // delta 0.5: m = 8 cells on [0,4), l_- = 1, phi(2) = 9/4
    CHECK(gamma_upper_bound(2.0, Box::cube(1, 4.0), 0.5, st, 1) ==
          doctest::Approx(18.0));
    CHECK_THROWS_AS(gamma_upper_bound(1.0, Box::cube(1, 4.0), 1.0, st, 1),
                    DomainError);
}
