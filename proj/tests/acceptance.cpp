// Acceptance gate: ten end-to-end checks over the full pipeline, one
// pass/fail line each. Closed-form regression where exact values exist,
// oracle equivalence and inequality suites elsewhere. Tolerances are
// pinned below next to each criterion.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sr/config.hpp"
#include "sr/converge.hpp"
#include "sr/convex.hpp"
#include "sr/cost.hpp"
#include "sr/gamma.hpp"
#include "sr/lattice.hpp"
#include "sr/meanfield.hpp"
#include "sr/rng.hpp"

using namespace sr;

namespace {

constexpr uint64_t kMasterSeed = 20260824ULL;

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

// Anneal-backed estimate of the energy density profile g on a lambda grid.
SampledConvexFunction annealed_g(const CostFunction& cost,
                                 const std::vector<double>& lambdas,
                                 const std::vector<double>& ks, int replicas,
                                 uint64_t seed, double* max_uncertainty = nullptr) {
    std::vector<double> vals(lambdas.size());
    double umax = 0.0;
    for (size_t i = 0; i < lambdas.size(); ++i) {
        GEstimate est = estimate_g(cost, lambdas[i], ks, 1, replicas,
                                   derive_seed(seed, {i}));
        vals[i] = est.g_value;
        umax = std::max(umax, est.uncertainty);
    }
    if (max_uncertainty) *max_uncertainty = umax;
    return SampledConvexFunction(lambdas, vals, DomainConvention::finite);
}

// Exact g for the step cost on a grid whose nodes and probe points hit the
// kinks exactly (grid spacing divides 1, probed t grid contains the integers).
SampledConvexFunction exact_step_g(double M, double lam_lo, double lam_hi, int n) {
    std::vector<double> grid = linspace(lam_lo, lam_hi, n);
    std::vector<double> vals(grid.size());
    long t_hi = static_cast<long>(std::ceil(2.0 * (1.0 + pos_part(lam_hi) / M))) + 2;
    const int per_unit = 400;
    for (size_t i = 0; i < grid.size(); ++i) {
        double best = 0.0;
        for (long k = 0; k <= t_hi * per_unit; ++k) {
            double t = static_cast<double>(k) / per_unit;
            best = std::max(best, grid[i] * t - step_cost_profile(M, t));
        }
        vals[i] = best;
    }
    return SampledConvexFunction(grid, vals, DomainConvention::finite);
}

PotentialField constant_potential(int cells, double value) {
    PotentialField pot;
    pot.domain = Box::cube(1, 1.0);
    pot.cells_per_dim = {cells};
    pot.values.assign(static_cast<size_t>(cells), value);
    return pot;
}

// --- criterion 1: step-cost profile recovered by the full pipeline -------

bool criterion_step_profile(std::string& why) {
    const double kRelTol = 0.10;   // relative error on nonzero targets
    const double kAbsTol = 0.05;   // absolute error where the target is 0
    CostFunction cost = CostFunction::step(2.0);
    SampledConvexFunction g =
        annealed_g(cost, linspace(0.0, 5.0, 11), {8.0, 16.0, 32.0}, 3,
                   derive_seed(kMasterSeed, {1}));
    SampledConvexFunction f = f_profile_from_g(g, linspace(0.0, 3.0, 13));
    for (double t : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        double target = step_cost_profile(2.0, t);
        double got = f.interpolate(t);
        double err = std::abs(got - target);
        bool ok = target == 0.0 ? err <= kAbsTol : err <= kRelTol * target;
        if (!ok) {
            std::ostringstream os;
            os << "t=" << t << " expected " << target << " got " << got;
            why = os.str();
            return false;
        }
    }
    return true;
}

// --- criterion 2: hard spheres, exact box values and packing profile -----

bool criterion_hard_spheres(std::string& why) {
    CostFunction cost = CostFunction::hard_sphere();
    for (double lambda : {0.5, 1.0, 2.0}) {
        for (int k = 4; k <= 12; ++k) {
            GammaEstimate est = gamma_bruteforce_1d(cost, lambda, k, 0.25);
            if (std::abs(est.value - lambda * k) > 1e-12 * (1.0 + lambda * k)) {
                std::ostringstream os;
                os << "box value lambda=" << lambda << " k=" << k << " got "
                   << est.value << " want " << lambda * k;
                why = os.str();
                return false;
            }
            // inferred packing fraction: value per volume per lambda
            double gamma1 = est.value / (lambda * k);
            if (gamma1 != 1.0) {
                why = "inferred packing fraction is not exactly 1";
                return false;
            }
        }
    }

    // profile side: g(lambda) = lambda exactly, so f jumps from 0 past t=1
    std::vector<double> lambdas = linspace(0.0, 40960.0, 33);
    std::vector<double> gvals(lambdas.size());
    for (size_t i = 0; i < lambdas.size(); ++i)
        gvals[i] = gamma_bruteforce_1d(cost, lambdas[i], 8.0, 0.25).value / 8.0;
    SampledConvexFunction g(lambdas, gvals, DomainConvention::finite);

    std::vector<double> t_grid;
    for (int i = 0; i <= 14; ++i) t_grid.push_back(0.07 * i);  // [0, 0.98]
    size_t n_zero = t_grid.size();
    for (double t : {1.05, 1.2, 2.0, 3.0}) t_grid.push_back(t);
    SampledConvexFunction f = f_profile_from_g(g, t_grid);
    for (size_t i = 0; i < f.size(); ++i) {
        bool ok = i < n_zero ? std::abs(f.values[i]) <= 1e-9 : f.values[i] >= 1e3;
        if (!ok) {
            std::ostringstream os;
            os << "profile at t=" << f.grid[i] << " is " << f.values[i];
            why = os.str();
            return false;
        }
    }
    return true;
}

// --- criterion 3: inverse-power cost, cubic growth and box scaling law ---

bool criterion_riesz_scaling(std::string& why) {
    const double kSlopeTol = 0.15;
    const double kScalingTol = 0.05;
    CostFunction cost = CostFunction::riesz(2.0);

    SampledConvexFunction g =
        annealed_g(cost, linspace(0.0, 160.0, 33), {8.0, 16.0, 24.0}, 2,
                   derive_seed(kMasterSeed, {3}));
    SampledConvexFunction f = f_profile_from_g(g, linspace(0.0, 4.0, 17));

    // log-log least squares over t in [1, 4]; cubic growth expected in d=1
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < f.size(); ++i) {
        if (f.grid[i] < 1.0 || f.values[i] <= 0.0) continue;
        double x = std::log(f.grid[i]), y = std::log(f.values[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y; ++n;
    }
    if (n < 5) {
        why = "too few positive profile points for the slope fit";
        return false;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (std::abs(slope - 3.0) > kSlopeTol) {
        std::ostringstream os;
        os << "log-log slope " << slope << " not within 3 +/- " << kSlopeTol;
        why = os.str();
        return false;
    }

    // box scaling: best(t*lambda, Q_k) = t * best(lambda, t^{1/s} Q_k)
    AnnealSchedule sched;
    double lambda0 = 10.0, s = 2.0;
    for (double t : {2.0, 4.0}) {
        GammaEstimate a = gamma_anneal(cost, t * lambda0, 8.0, 1, sched,
                                       derive_seed(kMasterSeed, {3, 1, (uint64_t)t}));
        GammaEstimate b = gamma_anneal(cost, lambda0, std::pow(t, 1.0 / s) * 8.0, 1,
                                       sched,
                                       derive_seed(kMasterSeed, {3, 2, (uint64_t)t}));
        double lhs = a.value, rhs = t * b.value;
        if (std::abs(lhs - rhs) > kScalingTol * std::max(std::abs(lhs), std::abs(rhs))) {
            std::ostringstream os;
            os << "scaling law at t=" << t << ": " << lhs << " vs " << rhs;
            why = os.str();
            return false;
        }
    }
    return true;
}

// --- criterion 4: lattice sum identities and the certified tail bound ----

bool criterion_zeta(std::string& why) {
    BravaisLattice line = BravaisLattice::cartesian(1);

    // half-height step cost turns the lattice sum into an integer part
    CostFunction step_half = CostFunction::step(1.0);
    for (double r : {0.3, 0.21, 0.11}) {
        ZetaResult z = epstein_zeta(step_half, line, r, 1e-9);
        double want = std::floor(1.0 / r);
        if (!z.certified || z.value != want) {
            std::ostringstream os;
            os << "integer-part identity at r=" << r << ": got " << z.value;
            why = os.str();
            return false;
        }
    }

    // inverse-square sum at r=1 is pi^2/3, certified to 1e-6
    CostFunction riesz = CostFunction::riesz(2.0);
    ZetaResult z = epstein_zeta(riesz, line, 1.0, 1e-6, 200000000L);
    double target = std::numbers::pi * std::numbers::pi / 3.0;
    if (!z.certified || std::abs(z.value - target) > 1e-6) {
        std::ostringstream os;
        os << "inverse-square sum: got " << z.value << " err bound " << z.error_bound
           << " certified " << z.certified;
        why = os.str();
        return false;
    }

    // the closed-form tail bound dominates the summed value everywhere valid
    for (int i = 0; i < 20; ++i) {
        double r = 1.0 + 0.25 * i;
        double bound = zeta_tail_bound(riesz, line, r, 1);
        double value = epstein_zeta(riesz, line, r, 1e-7).value;
        if (bound + 1e-9 < value) {
            std::ostringstream os;
            os << "tail bound " << bound << " below value " << value << " at r=" << r;
            why = os.str();
            return false;
        }
    }
    return true;
}

// --- criterion 5: two-sided sandwich on the estimated density profile ----

bool criterion_sandwich(std::string& why) {
    struct Case {
        CostFunction cost;
        double lam_hi;
        const char* name;
    };
    std::vector<Case> cases = {{CostFunction::step(2.0), 4.0, "step"},
                               {CostFunction::riesz(2.0), 32.0, "inverse-square"}};
    for (size_t c = 0; c < cases.size(); ++c) {
        double uncertainty = 0.0;
        SampledConvexFunction g =
            annealed_g(cases[c].cost, linspace(0.0, cases[c].lam_hi, 33),
                       {8.0, 16.0}, 2, derive_seed(kMasterSeed, {5, c}),
                       &uncertainty);
        SandwichReport rep = sandwich_check(g, cases[c].cost, 1, {0.5, 1.0},
                                            uncertainty + 1e-6);
        if (rep.violation_count() != 0) {
            std::ostringstream os;
            os << cases[c].name << ": " << rep.violation_count()
               << " sandwich violations (first at ";
            for (const auto& e : rep.entries)
                if (e.violated) {
                    os << e.check << " x=" << e.x << " margin=" << e.margin << ")";
                    break;
                }
            why = os.str();
            return false;
        }
    }
    return true;
}

// --- criterion 6: energy additivity under disjoint splits ----------------

bool criterion_additivity(std::string& why) {
    const double kRelTol = 1e-12;
    std::vector<CostFunction> costs = {
        CostFunction::riesz(2.0), CostFunction::hard_sphere(), CostFunction::step(2.0),
        CostFunction::tabulated({0.4, 1.0, 2.0}, {3.0, 1.0, 0.0}, 0.4)};
    auto engine = make_engine(derive_seed(kMasterSeed, {6}));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (int trial = 0; trial < 1000; ++trial) {
        const CostFunction& cost = costs[trial % costs.size()];
        int dim = 1 + trial % 2;
        double edge = 8.0;
        Box box = Box::cube(dim, edge);
        int n = 2 + static_cast<int>(unif(engine) * 199.0);
        int na = 1 + static_cast<int>(unif(engine) * (n - 1));

        PointConfiguration a(box), b(box), merged(box);
        std::vector<double> x(dim);
        for (int i = 0; i < n; ++i) {
            for (int d = 0; d < dim; ++d) x[d] = edge * unif(engine);
            (i < na ? a : b).push_back(x.data());
            merged.push_back(x.data());
        }
        double ea = interaction_energy(a, cost, 1.0);
        double eb = interaction_energy(b, cost, 1.0);
        double em = interaction_energy(merged, cost, 1.0);

        // union never drops below the parts
        if (std::isfinite(em) && em + kRelTol * (1.0 + std::abs(em)) < ea + eb) {
            std::ostringstream os;
            os << "union " << em << " below parts " << ea + eb << " at trial " << trial;
            why = os.str();
            return false;
        }

        // far-separated parts add exactly for finite-range costs
        if (cost.finite_range()) {
            Box wide = Box::cube(dim, 2.0 * edge + *cost.finite_range() + 1.0);
            PointConfiguration a2(wide), b2(wide), m2(wide);
            double shift = edge + *cost.finite_range() + 1.0;
            for (size_t i = 0; i < a.size(); ++i) {
                a2.push_back(a.point(i));
                m2.push_back(a.point(i));
            }
            for (size_t i = 0; i < b.size(); ++i) {
                std::vector<double> y(b.point(i), b.point(i) + dim);
                y[0] += shift;
                b2.push_back(y.data());
                m2.push_back(y.data());
            }
            double far = interaction_energy(m2, cost, 1.0);
            double parts = interaction_energy(a2, cost, 1.0) +
                           interaction_energy(b2, cost, 1.0);
            bool same = (std::isinf(far) && std::isinf(parts)) ||
                        std::abs(far - parts) <= kRelTol * (1.0 + std::abs(parts));
            if (!same) {
                std::ostringstream os;
                os << "separated union " << far << " vs parts " << parts;
                why = os.str();
                return false;
            }
        }
    }
    return true;
}

// --- criterion 7: coercivity lower bound on the scaled energy ------------

bool criterion_coercivity(std::string& why) {
    std::vector<CostFunction> costs = {CostFunction::riesz(2.0),
                                       CostFunction::hard_sphere(),
                                       CostFunction::step(2.0)};
    auto engine = make_engine(derive_seed(kMasterSeed, {7}));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (int trial = 0; trial < 500; ++trial) {
        const CostFunction& cost = costs[trial % costs.size()];
        int dim = 1 + trial % 2;
        double edge = 1.0 + 3.0 * unif(engine);
        double eps = 0.05 + 0.2 * unif(engine);
        Box box = Box::cube(dim, edge);
        int n = 1 + static_cast<int>(unif(engine) * 120.0);

        PointConfiguration cfg(box);
        std::vector<double> x(dim);
        for (int i = 0; i < n; ++i) {
            for (int d = 0; d < dim; ++d) x[d] = edge * unif(engine);
            cfg.push_back(x.data());
        }
        double energy = interaction_energy(cfg, cost, eps);

        for (double delta : {0.5, 1.0}) {
            // particles live in box/eps after rescaling distances by 1/eps
            double bound =
                gamma_lower_bound_energy(n, Box::cube(dim, edge / eps), cost, delta);
            bool ok = std::isinf(bound) ? std::isinf(energy)
                                        : energy + 1e-9 * (1.0 + std::abs(bound)) >=
                                              bound;
            if (!ok) {
                std::ostringstream os;
                os << "energy " << energy << " below bound " << bound << " (delta "
                   << delta << ", trial " << trial << ")";
                why = os.str();
                return false;
            }
        }
    }
    return true;
}

// --- criterion 8: conjugation round trips -------------------------------

bool criterion_conjugation(std::string& why) {
    // three-branch profile and its closed-form conjugate, on grid nodes
    for (int i = 0; i <= 800; ++i) {
        double t = -2.0 + 6.0 * i / 800.0;
        double want = t < 0.0 ? 0.0 : (t < 1.0 ? t : 0.25 * (1.0 + t) * (1.0 + t));
        if (std::abs(phi(t) - want) > 1e-9) {
            why = "three-branch profile drifted from its closed form";
            return false;
        }
        if (t >= 0.0 && std::abs(phi_star(t) - t * pos_part(t - 1.0)) > 1e-9) {
            why = "conjugate profile drifted from its closed form";
            return false;
        }
    }
    // conjugate pair consistency: phi*(z) = sup_t z t - phi(t) on a fine grid
    for (int zi = 0; zi <= 40; ++zi) {
        double z = 0.1 * zi;
        double sup = -kInf;
        for (int ti = 0; ti <= 4000; ++ti) {
            double t = -1.0 + 0.002 * ti;
            sup = std::max(sup, z * t - phi(t));
        }
        if (std::abs(sup - phi_star(z)) > 1e-5) {
            why = "conjugate pair inconsistent with the direct supremum";
            return false;
        }
    }

    // double transform lands on the convexification
    auto engine = make_engine(derive_seed(kMasterSeed, {8}));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 12 + static_cast<int>(unif(engine) * 30.0);
        std::vector<double> grid = linspace(0.0, 4.0, n);
        std::vector<double> vals(grid.size());
        for (double& v : vals) v = 4.0 * unif(engine);
        SampledConvexFunction f(grid, vals, DomainConvention::finite);
        SampledConvexFunction hull = convexify(f);

        // dual grid holding every hull slope keeps the round trip exact
        std::vector<double> duals;
        for (size_t i = 1; i < hull.size(); ++i)
            duals.push_back((hull.values[i] - hull.values[i - 1]) /
                            (hull.grid[i] - hull.grid[i - 1]));
        duals.push_back(duals.empty() ? 0.0 : duals.back() + 1.0);
        duals.insert(duals.begin(), duals.front() - 1.0);
        std::sort(duals.begin(), duals.end());
        duals.erase(std::unique(duals.begin(), duals.end()), duals.end());
        for (size_t i = 1; i < duals.size(); ++i)
            if (!(duals[i] > duals[i - 1])) duals[i] = duals[i - 1] + 1e-12;

        SampledConvexFunction conj = legendre_transform(f, duals);
        SampledConvexFunction back = legendre_transform(conj, grid);
        for (size_t i = 0; i < grid.size(); ++i) {
            if (std::abs(back.values[i] - hull.values[i]) >
                1e-8 * (1.0 + std::abs(hull.values[i]))) {
                std::ostringstream os;
                os << "double transform missed the hull at t=" << grid[i] << " ("
                   << back.values[i] << " vs " << hull.values[i] << ")";
                why = os.str();
                return false;
            }
        }
    }
    return true;
}

// --- criterion 9: mean-field identities ---------------------------------

bool criterion_meanfield(std::string& why) {
    SampledConvexFunction g = exact_step_g(2.0, -2.0, 8.0, 401);
    auto engine = make_engine(derive_seed(kMasterSeed, {9}));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // nonnegative potentials: zero value, zero density
    for (int trial = 0; trial < 20; ++trial) {
        PotentialField pot = constant_potential(32, 0.0);
        for (double& v : pot.values) v = 0.05 + 1.5 * unif(engine);
        MeanFieldSolution sol = solve_meanfield(pot, g);
        bool clean = std::abs(sol.value) <= 1e-12;
        for (double u : sol.density) clean = clean && std::abs(u) <= 1e-12;
        if (!clean) {
            why = "nonnegative potential produced mass or negative value";
            return false;
        }
    }

    // constant attractive potentials integrate the profile exactly
    for (double lambda : {0.5, 1.0, 2.0, 3.0}) {
        PotentialField pot = constant_potential(64, -lambda);
        MeanFieldSolution sol = solve_meanfield(pot, g);
        double want = -g.interpolate(lambda);
        if (std::abs(sol.value - want) > 1e-6) {
            std::ostringstream os;
            os << "constant potential -" << lambda << ": " << sol.value << " vs "
               << want;
            why = os.str();
            return false;
        }
    }

    // primal value from the recovered density matches the dual value
    for (int trial = 0; trial < 50; ++trial) {
        PotentialField pot = constant_potential(40, 0.0);
        for (double& v : pot.values) v = -1.9 + 3.8 * unif(engine);
        MeanFieldSolution sol = solve_meanfield(pot, g);
        double vol = pot.cell_volume();
        double primal = 0.0;
        for (size_t i = 0; i < pot.cell_count(); ++i) {
            double u = sol.density[i];
            primal += (conjugate_value(g, u) + u * pot.values[i]) * vol;
        }
        if (std::abs(primal - sol.value) > 1e-6 * (1.0 + std::abs(sol.value))) {
            std::ostringstream os;
            os << "primal-dual gap " << primal - sol.value << " at trial " << trial;
            why = os.str();
            return false;
        }
    }
    return true;
}

// --- criterion 10: scaled discrete minima approach the continuum ---------

bool criterion_convergence(std::string& why) {
    const double kFinalTol = 0.15;  // relative, at the smallest scale
    CostFunction cost = CostFunction::step(2.0);
    SampledConvexFunction g = exact_step_g(2.0, -2.0, 8.0, 401);
    PotentialField pot = constant_potential(20, -1.0);
    AnnealSchedule sched;
    ConvergenceRun run = run_convergence(pot, cost, g, {0.1, 0.05, 0.025}, sched,
                                         derive_seed(kMasterSeed, {10}));
    if (std::abs(run.continuum_value + 1.0) > 1e-9) {
        why = "continuum value is not -1";
        return false;
    }
    double prev_gap = kInf;
    for (const auto& rec : run.per_eps) {
        if (!rec.mass_bound_ok) {
            std::ostringstream os;
            os << "scaled mass exceeded its bound at eps=" << rec.eps;
            why = os.str();
            return false;
        }
        double gap = std::abs(rec.scaled_value - run.continuum_value);
        if (gap > prev_gap + 1e-9) {
            std::ostringstream os;
            os << "trend worsened at eps=" << rec.eps;
            why = os.str();
            return false;
        }
        prev_gap = gap;
    }
    double final_gap = std::abs(run.per_eps.back().scaled_value + 1.0);
    if (final_gap > kFinalTol) {
        std::ostringstream os;
        os << "final scaled value " << run.per_eps.back().scaled_value
           << " not within 15% of -1";
        why = os.str();
        return false;
    }
    return true;
}

struct Criterion {
    const char* name;
    bool (*run)(std::string&);
};

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {"step-cost profile recovery", criterion_step_profile},
        {"hard-sphere exact box values and packing profile", criterion_hard_spheres},
        {"inverse-power growth and box scaling law", criterion_riesz_scaling},
        {"lattice sum identities and certified tail bound", criterion_zeta},
        {"two-sided profile sandwich", criterion_sandwich},
        {"energy additivity under disjoint splits", criterion_additivity},
        {"coercivity lower bound", criterion_coercivity},
        {"conjugation round trips", criterion_conjugation},
        {"mean-field identities", criterion_meanfield},
        {"scaling limit trend", criterion_convergence},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string why;
        bool ok = false;
        try {
            ok = criteria[i].run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        std::printf("criterion %2zu [%s]: %s%s%s\n", i + 1, criteria[i].name,
                    ok ? "PASS" : "FAIL", why.empty() ? "" : " -- ", why.c_str());
        std::fflush(stdout);
        failures += ok ? 0 : 1;
    }
    if (failures) std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
