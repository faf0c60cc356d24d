#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "sr/config.hpp"
#include "sr/rng.hpp"

using namespace sr;

namespace {

PointConfiguration random_config(std::mt19937_64& eng, int dim, int n, double edge) {
    PointConfiguration cfg(Box::cube(dim, edge));
    std::uniform_real_distribution<double> unif(0.0, edge);
    std::vector<double> x(dim);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < dim; ++k) x[k] = unif(eng);
        cfg.push_back(x.data());
    }
    return cfg;
}

double brute_force_energy(const PointConfiguration& cfg, const CostFunction& cost,
                          double eps) {
    double total = 0.0;
    for (size_t i = 0; i < cfg.size(); ++i) {
        long m = cfg.multiplicity[i];
        if (m > 1) {
            double v = cost(0.0);
            if (std::isinf(v)) return kInf;
            total += static_cast<double>(m * (m - 1)) * v;
        }
        for (size_t j = i + 1; j < cfg.size(); ++j) {
            double v = cost(cfg.distance(i, j) / eps);
            if (std::isinf(v)) return kInf;
            total += 2.0 * cfg.multiplicity[i] * cfg.multiplicity[j] * v;
        }
    }
    return total;
}

}  // namespace

TEST_CASE("two points and a cluster match hand-computed energies") {
    CostFunction st = CostFunction::step(2.0);
    PointConfiguration cfg(Box::cube(1, 2.0));
    double a = 0.2, b = 0.7;
    cfg.push_back(&a);
    cfg.push_back(&b);
    // distance 0.5 < 1: ordered pairs contribute twice
    CHECK(interaction_energy(cfg, st, 1.0) == doctest::Approx(2.0));
    // scaled down, distance/eps = 5 is outside the cutoff
    CHECK(interaction_energy(cfg, st, 0.1) == 0.0);

    PointConfiguration cluster(Box::cube(1, 2.0));
    cluster.push_back(&a, 3);
    CHECK(interaction_energy(cluster, st, 1.0) == doctest::Approx(6.0));  // 3*2 pairs

    CHECK(std::isinf(interaction_energy(cluster, CostFunction::hard_sphere(), 1.0)));
}

TEST_CASE("scaled energy applies eps^d with the 0*inf convention") {
    CostFunction st = CostFunction::step(2.0);
    PointConfiguration cfg(Box::cube(2, 1.0));
    double p[2] = {0.3, 0.3};
    double q[2] = {0.35, 0.3};
    cfg.push_back(p);
    cfg.push_back(q);
    ScaledMeasure rho{cfg, 0.25};
    CHECK(scaled_energy(rho, st) == doctest::Approx(0.25 * 0.25 * 2.0));
    CHECK(scaled_energy(ScaledMeasure{PointConfiguration(Box::cube(2, 1.0)), 0.25}, st) ==
          0.0);
}

TEST_CASE("neighbor_pairs equals the quadratic scan oracle") {
    std::mt19937_64 eng = make_engine(11);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = 1 + trial % 2;
        PointConfiguration cfg = random_config(eng, dim, 300, 4.0);
        double range = 0.35;
        auto got = neighbor_pairs(cfg, range);
        std::vector<std::pair<int, int>> want;
        for (size_t i = 0; i < cfg.size(); ++i)
            for (size_t j = i + 1; j < cfg.size(); ++j)
                if (cfg.distance(i, j) < range)
                    want.emplace_back(static_cast<int>(i), static_cast<int>(j));
        std::sort(want.begin(), want.end());
        REQUIRE(got == want);
    }
}

TEST_CASE("cell-list energy path equals the all-pairs oracle") {
    std::mt19937_64 eng = make_engine(13);
    for (int trial = 0; trial < 10; ++trial) {
        int dim = 1 + trial % 2;
        // above the 256-point threshold so the cell path engages
        PointConfiguration cfg = random_config(eng, dim, 400, 6.0);
        for (const CostFunction& cost :
             {CostFunction::step(2.0), CostFunction::step(3.0, 0.4)}) {
            double eps = 0.5 + 0.1 * trial;
            CHECK(interaction_energy(cfg, cost, eps) ==
                  doctest::Approx(brute_force_energy(cfg, cost, eps)).epsilon(1e-12));
        }
    }
}

TEST_CASE("binned density conserves mass and normalizes by cell volume") {
    PointConfiguration cfg(Box::cube(1, 1.0));
    for (int i = 0; i < 10; ++i) {
        double x = 0.05 + 0.1 * i;
        cfg.push_back(&x);
    }
    ScaledMeasure rho{cfg, 0.1};
    DensityField field = bin_density(rho, {10});
    CHECK(field.total_mass() == doctest::Approx(rho.total_mass()));
    for (double v : field.values) CHECK(v == doctest::Approx(1.0));
    CHECK(field.clipped_mass == 0.0);
}

TEST_CASE("validate rejects escaped points and bad multiplicities") {
    PointConfiguration cfg(Box::cube(2, 1.0));
    double p[2] = {0.5, 0.5};
    cfg.push_back(p);
    CHECK_NOTHROW(cfg.validate());
    double q[2] = {1.5, 0.5};
    cfg.push_back(q);
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.erase(1);
    cfg.multiplicity[0] = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}
