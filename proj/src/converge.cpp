#include "sr/converge.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sr/lattice.hpp"
#include "sr/rng.hpp"

namespace sr {

namespace {

// Nearest-cell lookup of the potential at an arbitrary point of the domain.
double potential_at(const PotentialField& pot, const double* x) {
    int d = pot.domain.dim();
    size_t flat = 0;
    for (int a = 0; a < d; ++a) {
        double h = pot.domain.edge[a] / pot.cells_per_dim[a];
        long ix = static_cast<long>(std::floor((x[a] - pot.domain.lo[a]) / h));
        ix = std::clamp(ix, 0L, static_cast<long>(pot.cells_per_dim[a]) - 1);
        flat = flat * static_cast<size_t>(pot.cells_per_dim[a]) + static_cast<size_t>(ix);
    }
    return pot.values[flat];
}

double exact_value(const PointConfiguration& cfg, const CostFunction& cost, double eps,
                   const PotentialField& pot) {
    double xi = interaction_energy(cfg, cost, eps);
    if (std::isinf(xi)) return kInf;
    double ext = 0.0;
    for (size_t i = 0; i < cfg.size(); ++i)
        ext += cfg.multiplicity[i] * potential_at(pot, cfg.point(i));
    return xi + ext;
}

double unit_insertion_energy(const PointConfiguration& cfg, const CostFunction& cost,
                             double eps, const double* x) {
    double s = 0.0;
    for (size_t j = 0; j < cfg.size(); ++j) {
        const double* y = cfg.point(j);
        double r2 = 0.0;
        for (int a = 0; a < cfg.dim; ++a) {
            double t = x[a] - y[a];
            r2 += t * t;
        }
        double v = cost(std::sqrt(r2) / eps);
        if (std::isinf(v)) return kInf;
        s += cfg.multiplicity[j] * v;
    }
    return s;
}

double unit_removal_energy(const PointConfiguration& cfg, const CostFunction& cost,
                           double eps, size_t i) {
    double s = 0.0;
    for (size_t j = 0; j < cfg.size(); ++j) {
        if (j == i) continue;
        double v = cost(cfg.distance(i, j) / eps);
        if (std::isinf(v)) return kInf;
        s += cfg.multiplicity[j] * v;
    }
    return s + mul0(static_cast<double>(cfg.multiplicity[i] - 1), cost(0.0));
}

double site_cross_energy(const PointConfiguration& cfg, const CostFunction& cost,
                         double eps, size_t i, const double* pos) {
    double s = 0.0;
    for (size_t j = 0; j < cfg.size(); ++j) {
        if (j == i) continue;
        const double* y = cfg.point(j);
        double r2 = 0.0;
        for (int a = 0; a < cfg.dim; ++a) {
            double t = pos[a] - y[a];
            r2 += t * t;
        }
        double v = cost(std::sqrt(r2) / eps);
        if (std::isinf(v)) return kInf;
        s += cfg.multiplicity[j] * v;
    }
    return s * cfg.multiplicity[i];
}

// Lattice seed at the density favored by the strongest attractive region,
// restricted to cells where the potential is negative.
PointConfiguration discrete_seed(const PotentialField& pot, const CostFunction& cost,
                                 double eps) {
    int d = pot.domain.dim();
    double u_min = *std::min_element(pot.values.begin(), pot.values.end());
    PointConfiguration seed(pot.domain);
    seed.dim = d;
    if (u_min >= 0.0) return seed;
    double lambda = -u_min;

    BravaisLattice lat = BravaisLattice::cartesian(d);
    double best_score = 0.0, best_t = 0.0;
    for (int j = 0; j <= 32; ++j) {
        double t = 0.25 * std::pow(2.0, 0.25 * j);
        double spacing = std::pow(t, -1.0 / d);
        double radius = cost.finite_range()
                            ? std::min(std::max(1.0, *cost.finite_range() / spacing), 64.0)
                            : 16.0;
        double per_point = 0.0;
        bool infinite = false;
        lat.for_each_in_ball(
            radius,
            [&](const double*, double norm) {
                double v = cost(spacing * norm);
                if (std::isinf(v))
                    infinite = true;
                else
                    per_point += v;
            },
            2000000L);
        double score = infinite ? -kInf : t * (lambda - per_point);
        if (score > best_score) {
            best_score = score;
            best_t = t;
        }
    }
    if (best_t <= 0.0) return seed;

    // Exact-contact spacings can round just below a cost discontinuity, so
    // compare a few slightly inflated variants by their exact value.
    double spacing = eps * std::pow(best_t, -1.0 / d);
    double best_val = kInf;
    for (double bump : {0.0, 1e-9, 1e-6, 1e-3}) {
        PointConfiguration cand =
            lattice_configuration(lat, spacing * (1.0 + bump), pot.domain);
        PointConfiguration kept(pot.domain);
        for (size_t i = 0; i < cand.size(); ++i)
            if (potential_at(pot, cand.point(i)) < 0.0)
                kept.push_back(cand.point(i), cand.multiplicity[i]);
        double v = exact_value(kept, cost, eps, pot);
        if (v < best_val) {
            best_val = v;
            seed = std::move(kept);
        }
    }
    return seed;
}

}  // namespace

std::pair<double, PointConfiguration> solve_discrete(const PotentialField& potential,
                                                     const CostFunction& cost, double eps,
                                                     const AnnealSchedule& schedule,
                                                     uint64_t seed) {
    potential.validate();
    if (!(eps > 0.0)) throw DomainError("solve_discrete: eps must be positive");
    if (!schedule.valid()) throw DomainError("solve_discrete: bad schedule");

    const Box& box = potential.domain;
    int dim = box.dim();
    double ell0 = cost(0.0);
    double u_abs = 0.0;
    for (double v : potential.values) u_abs = std::max(u_abs, std::abs(v));
    int mult_cap =
        std::isinf(ell0)
            ? 1
            : static_cast<int>(std::ceil(2.0 * u_abs / std::max(ell0, 1e-300))) + 4;
    const long total_cap = 200000;

    PointConfiguration cfg = discrete_seed(potential, cost, eps);
    double cur = exact_value(cfg, cost, eps, potential);
    if (std::isinf(cur) || cur > 0.0) {
        cfg = PointConfiguration(box);
        cur = 0.0;
    }
    PointConfiguration best_cfg = cfg;
    double best = cur;

    auto engine = make_engine(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double scaled_volume = box.volume() / std::pow(eps, dim);
    long proposals =
        schedule.proposals_per_volume *
        static_cast<long>(std::ceil(std::min(scaled_volume, 4096.0)));
    double temperature = std::max(u_abs, 1.0);
    double sigma = schedule.initial_sigma * eps;
    std::vector<double> trial(dim);

    for (int stage = 0; stage < schedule.stages; ++stage) {
        long moved = 0, tried_moves = 0;
        for (long p = 0; p < proposals; ++p) {
            double u = unif(engine);
            if (u < schedule.insert_prob) {
                bool on_top = !std::isinf(ell0) && !cfg.multiplicity.empty() &&
                              unif(engine) < 0.3;
                double d_val;
                if (on_top) {
                    size_t i = static_cast<size_t>(unif(engine) * cfg.size());
                    i = std::min(i, cfg.size() - 1);
                    if (cfg.multiplicity[i] >= mult_cap) continue;
                    double e = unit_insertion_energy(cfg, cost, eps, cfg.point(i));
                    if (std::isinf(e)) continue;
                    d_val = potential_at(potential, cfg.point(i)) + 2.0 * e;
                    if (d_val <= 0.0 || unif(engine) < std::exp(-d_val / temperature)) {
                        cfg.multiplicity[i] += 1;
                        cur += d_val;
                    }
                } else if (cfg.total_count() < total_cap) {
                    for (int a = 0; a < dim; ++a)
                        trial[a] = box.lo[a] + unif(engine) * box.edge[a];
                    double e = unit_insertion_energy(cfg, cost, eps, trial.data());
                    if (std::isinf(e)) continue;
                    d_val = potential_at(potential, trial.data()) + 2.0 * e;
                    if (d_val <= 0.0 || unif(engine) < std::exp(-d_val / temperature)) {
                        cfg.push_back(trial.data(), 1);
                        cur += d_val;
                    }
                }
            } else if (u < schedule.insert_prob + schedule.delete_prob) {
                if (cfg.multiplicity.empty()) continue;
                size_t i = static_cast<size_t>(unif(engine) * cfg.size());
                i = std::min(i, cfg.size() - 1);
                double e = unit_removal_energy(cfg, cost, eps, i);
                double d_val = -potential_at(potential, cfg.point(i)) - 2.0 * e;
                if (d_val <= 0.0 || unif(engine) < std::exp(-d_val / temperature)) {
                    if (cfg.multiplicity[i] > 1)
                        cfg.multiplicity[i] -= 1;
                    else
                        cfg.erase(i);
                    cur += d_val;
                }
            } else {
                if (cfg.multiplicity.empty()) continue;
                ++tried_moves;
                size_t i = static_cast<size_t>(unif(engine) * cfg.size());
                i = std::min(i, cfg.size() - 1);
                const double* x = cfg.point(i);
                bool inside = true;
                for (int a = 0; a < dim; ++a) {
                    trial[a] = x[a] + sigma * gauss(engine);
                    if (trial[a] < box.lo[a] || trial[a] >= box.lo[a] + box.edge[a])
                        inside = false;
                }
                if (!inside) continue;
                double e_new = site_cross_energy(cfg, cost, eps, i, trial.data());
                if (std::isinf(e_new)) continue;
                double e_old = site_cross_energy(cfg, cost, eps, i, x);
                int m = cfg.multiplicity[i];
                double d_val = 2.0 * (e_new - e_old) +
                               m * (potential_at(potential, trial.data()) -
                                    potential_at(potential, x));
                if (d_val <= 0.0 || unif(engine) < std::exp(-d_val / temperature)) {
                    double* xp = cfg.point(i);
                    for (int a = 0; a < dim; ++a) xp[a] = trial[a];
                    cur += d_val;
                    ++moved;
                }
            }
            if (cur < best) {
                best = cur;
                best_cfg = cfg;
            }
        }
        cur = exact_value(cfg, cost, eps, potential);
        if (cur < best) {
            best = cur;
            best_cfg = cfg;
        }
        if (tried_moves > 0) {
            double rate = static_cast<double>(moved) / tried_moves;
            if (rate > 0.45)
                sigma = std::min(sigma * 1.15, 0.5 * box.edge[0]);
            else if (rate < 0.35)
                sigma = std::max(sigma / 1.15, 1e-3 * eps);
        }
        temperature *= schedule.cooling;
    }

    double final_val = exact_value(best_cfg, cost, eps, potential);
    if (final_val > 0.0) {
        best_cfg = PointConfiguration(box);
        final_val = 0.0;
    }
    return {final_val, best_cfg};
}

ConvergenceRun run_convergence(const PotentialField& potential, const CostFunction& cost,
                               const SampledConvexFunction& fstar,
                               const std::vector<double>& eps_sequence,
                               const AnnealSchedule& schedule, uint64_t seed) {
    potential.validate();
    if (eps_sequence.size() < 3)
        throw DomainError("run_convergence: need at least three epsilons");
    for (size_t i = 1; i < eps_sequence.size(); ++i)
        if (!(eps_sequence[i] < eps_sequence[i - 1]))
            throw DomainError("run_convergence: eps sequence must decrease");

    ConvergenceRun run;
    run.eps_sequence = eps_sequence;
    MeanFieldSolution continuum = solve_meanfield(potential, fstar);
    run.continuum_value = continuum.value;
    run.continuum_density = continuum.density;

    int dim = potential.domain.dim();
    double u_abs = 0.0;
    for (double v : potential.values) u_abs = std::max(u_abs, std::abs(v));
    double vol = potential.cell_volume();

    for (size_t ei = 0; ei < eps_sequence.size(); ++ei) {
        double eps = eps_sequence[ei];
        EpsRecord rec;
        rec.eps = eps;
        rec.seed = derive_seed(seed, {static_cast<uint64_t>(ei)});
        auto [value, cfg] = solve_discrete(potential, cost, eps, schedule, rec.seed);
        rec.n_found = cfg.total_count();
        rec.scaled_value = std::pow(eps, dim) * value;
        rec.config = cfg;

        DensityField binned =
            bin_density(ScaledMeasure{cfg, eps}, potential.cells_per_dim);
        double l1 = 0.0;
        for (size_t c = 0; c < continuum.density.size(); ++c)
            l1 += std::abs(binned.values[c] - continuum.density[c]);
        rec.l1_distance = l1 * vol;

        // Coercivity cap on the scaled mass: best delta among a small sweep.
        double scaled_mass = std::pow(eps, dim) * static_cast<double>(rec.n_found);
        for (double delta : {0.5, 1.0}) {
            double lm = cost.lower_envelope(delta, dim);
            if (lm <= 0.0) continue;
            Box scaled_box = potential.domain;
            for (int a = 0; a < dim; ++a) {
                scaled_box.lo[a] /= eps;
                scaled_box.edge[a] /= eps;
            }
            double beta =
                std::pow(eps, dim) *
                static_cast<double>(covering_number(scaled_box, delta));
            double bound = std::isinf(lm) ? beta : beta * (1.0 + u_abs / lm);
            rec.mass_bound = std::min(rec.mass_bound, bound);
        }
        rec.mass_bound_ok = scaled_mass <= rec.mass_bound * (1.0 + 1e-9);
        run.per_eps.push_back(std::move(rec));
    }
    return run;
}

}  // namespace sr
