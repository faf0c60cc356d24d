#include "sr/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include "sr/convex.hpp"
#include "sr/lattice.hpp"
#include "sr/rng.hpp"

namespace sr {

long covering_number(const Box& box, double delta) {
    if (!(delta > 0.0)) throw DomainError("covering_number: delta must be positive");
    long n = 1;
    for (double e : box.edge) {
        double q = e / delta;
        long per_axis = static_cast<long>(std::ceil(q - 1e-9 * std::max(1.0, q)));
        n *= std::max(per_axis, 1L);
    }
    return n;
}

double gamma_lower_bound_energy(long n_points, const Box& box, const CostFunction& cost,
                                double delta) {
    if (n_points < 0) throw DomainError("gamma_lower_bound_energy: negative count");
    if (n_points == 0) return 0.0;
    double lm = cost.lower_envelope(delta, box.dim());
    double m = static_cast<double>(covering_number(box, delta));
    double zeta = static_cast<double>(n_points) / m;
    return mul0(static_cast<double>(n_points), mul0(lm, pos_part(zeta - 1.0)));
}

double gamma_upper_bound(double lambda, const Box& box, double delta,
                         const CostFunction& cost, int dim) {
    if (dim != box.dim()) throw DomainError("gamma_upper_bound: dim/box mismatch");
    double m = static_cast<double>(covering_number(box, delta));
    double lm = cost.lower_envelope(delta, dim);
    if (lm == 0.0)
        throw DomainError("gamma_upper_bound: lower envelope vanishes at this delta");
    if (std::isinf(lm)) return pos_part(lambda) * m;
    return m * lm * phi(lambda / lm);
}

namespace {

// Exact objective lambda * #S - xi(S) at scale eps = 1.
double exact_objective(const PointConfiguration& cfg, const CostFunction& cost,
                       double lambda) {
    double xi = interaction_energy(cfg, cost, 1.0);
    if (std::isinf(xi)) return -kInf;
    return lambda * static_cast<double>(cfg.total_count()) - xi;
}

// Energy of one extra unit placed at x against every stored point,
// coincidences included.
double unit_insertion_energy(const PointConfiguration& cfg, const CostFunction& cost,
                             const double* x) {
    double s = 0.0;
    std::vector<double> d(cfg.dim);
    for (size_t j = 0; j < cfg.size(); ++j) {
        const double* y = cfg.point(j);
        double r2 = 0.0;
        for (int a = 0; a < cfg.dim; ++a) {
            double t = x[a] - y[a];
            r2 += t * t;
        }
        double v = cost(std::sqrt(r2));
        if (std::isinf(v)) return kInf;
        s += cfg.multiplicity[j] * v;
    }
    return s;
}

// Energy released by removing one unit from stored point i: interactions
// with the other sites plus the m_i - 1 units left behind at distance 0.
double unit_removal_energy(const PointConfiguration& cfg, const CostFunction& cost,
                           size_t i) {
    double s = 0.0;
    for (size_t j = 0; j < cfg.size(); ++j) {
        if (j == i) continue;
        double v = cost(cfg.distance(i, j));
        if (std::isinf(v)) return kInf;  // unreachable from a finite-energy state
        s += cfg.multiplicity[j] * v;
    }
    return s + mul0(static_cast<double>(cfg.multiplicity[i] - 1), cost(0.0));
}

// Interaction of site i (all of its units) with every other site.
double site_cross_energy(const PointConfiguration& cfg, const CostFunction& cost,
                         size_t i, const double* pos) {
    double s = 0.0;
    for (size_t j = 0; j < cfg.size(); ++j) {
        if (j == i) continue;
        const double* y = cfg.point(j);
        double r2 = 0.0;
        for (int a = 0; a < cfg.dim; ++a) {
            double t = pos[a] - y[a];
            r2 += t * t;
        }
        double v = cost(std::sqrt(r2));
        if (std::isinf(v)) return kInf;
        s += cfg.multiplicity[j] * v;
    }
    return s * cfg.multiplicity[i];
}

// Per-point lattice energy truncated at a fixed radius; rough but cheap,
// used only to rank candidate seed densities.
double truncated_lattice_energy(const CostFunction& cost, const BravaisLattice& lattice,
                                double spacing) {
    double radius = 16.0;
    if (cost.finite_range()) radius = std::max(1.0, *cost.finite_range() / spacing);
    radius = std::min(radius, 64.0);
    double s = 0.0;
    bool infinite = false;
    lattice.for_each_in_ball(
        radius,
        [&](const double*, double norm) {
            double v = cost(spacing * norm);
            if (std::isinf(v)) infinite = true;
            s += std::isinf(v) ? 0.0 : v;
        },
        2000000L);
    return infinite ? kInf : s;
}

// Best lattice configuration over a geometric density sweep; may be empty.
PointConfiguration lattice_seed(const CostFunction& cost, double lambda, const Box& box,
                                int dim) {
    BravaisLattice lat = BravaisLattice::cartesian(dim);
    PointConfiguration best(box);
    double ell0 = cost(0.0);
    int m_max = std::isinf(ell0) ? 1 : 6;  // clusters only when l(0) is finite
    double best_score = 0.0, best_t = 0.0;
    int best_m = 1;
    for (int j = 0; j <= 32; ++j) {
        double t = 0.25 * std::pow(2.0, 0.25 * j);  // site densities 0.25 .. 64
        double spacing = std::pow(t, -1.0 / dim);
        double per_point = truncated_lattice_energy(cost, lat, spacing);
        if (std::isinf(per_point)) continue;
        for (int m = 1; m <= m_max; ++m) {
            // m-fold clusters: m(m-1) l(0) within a site, m^2 across sites
            double score =
                t * (m * lambda - m * (m - 1) * ell0 - m * m * per_point);
            if (score > best_score) {
                best_score = score;
                best_t = t;
                best_m = m;
            }
        }
    }
    if (best_t <= 0.0) return best;

    // Exact-contact spacings can round just below a cost discontinuity, so
    // compare a few slightly inflated variants by their exact objective.
    double spacing = std::pow(best_t, -1.0 / dim);
    double best_obj = 0.0;  // the empty configuration scores zero
    for (double bump : {0.0, 1e-9, 1e-6, 1e-3}) {
        PointConfiguration cand =
            lattice_configuration(lat, spacing * (1.0 + bump), box);
        for (int& m : cand.multiplicity) m = best_m;
        double obj = exact_objective(cand, cost, lambda);
        if (obj > best_obj) {
            best_obj = obj;
            best = std::move(cand);
        }
    }
    return best;
}

}  // namespace

GammaEstimate gamma_bruteforce_1d(const CostFunction& cost, double lambda, double k,
                                  double grid_step, long state_cap) {
    if (!(k > 0.0) || !(grid_step > 0.0))
        throw DomainError("gamma_bruteforce_1d: k and grid_step must be positive");
    if (!cost.finite_range())
        throw DomainError("gamma_bruteforce_1d: requires a finite-range cost");

    GammaEstimate out;
    out.lambda = lambda;
    out.k = k;
    out.dim = 1;
    out.method = "bruteforce_dp";
    out.lower_bound_flag = false;
    out.config = PointConfiguration(Box::cube(1, k));
    if (lambda <= 0.0) {
        out.value = 0.0;
        return out;
    }

    double range = *cost.finite_range();
    double ell0 = cost(0.0);
    if (!(ell0 > 0.0)) throw DomainError("gamma_bruteforce_1d: cost must be positive at 0");

    long n_sites = static_cast<long>(std::floor((k - 1e-9 * k) / grid_step)) + 1;
    long window = static_cast<long>(std::floor(range / grid_step - 1e-9));
    window = std::max(window, 0L);
    int cap = std::isinf(ell0)
                  ? 1
                  : static_cast<int>(std::ceil(2.0 * lambda / ell0)) + 4;
    long base = cap + 1;

    long states = 1;
    for (long j = 0; j < window; ++j) {
        if (states > state_cap / base)
            throw ResourceError("gamma_bruteforce_1d: state space exceeds cap");
        states *= base;
    }
    if (states * n_sites > 50000000L)
        throw ResourceError("gamma_bruteforce_1d: table memory exceeds cap");

    std::vector<double> ell(window + 1, 0.0);
    for (long j = 1; j <= window; ++j) ell[j] = cost(j * grid_step);
    std::vector<long> pw(window + 1, 1);
    for (long j = 1; j <= window; ++j) pw[j] = pw[j - 1] * base;
    long mod = window > 0 ? pw[window - 1] : 1;

    std::vector<double> cur(states, -kInf), nxt(states);
    cur[0] = 0.0;
    std::vector<std::vector<uint32_t>> prev(n_sites);
    std::vector<std::vector<uint8_t>> choice(n_sites);

    for (long i = 0; i < n_sites; ++i) {
        std::fill(nxt.begin(), nxt.end(), -kInf);
        prev[i].assign(states, 0);
        choice[i].assign(states, 0);
        for (long s = 0; s < states; ++s) {
            if (std::isinf(cur[s]) && cur[s] < 0.0) continue;
            for (int m = 0; m <= cap; ++m) {
                double gain = 0.0;
                if (m > 0) {
                    double self = mul0(static_cast<double>(m) * (m - 1), ell0);
                    if (std::isinf(self)) break;  // higher m only worse
                    double cross = 0.0;
                    bool blocked = false;
                    for (long j = 1; j <= window; ++j) {
                        long digit = (s / pw[j - 1]) % base;
                        if (digit == 0) continue;
                        if (std::isinf(ell[j])) {
                            blocked = true;
                            break;
                        }
                        cross += digit * ell[j];
                    }
                    if (blocked) break;
                    gain = lambda * m - self - 2.0 * m * cross;
                }
                long ns = window > 0 ? m + base * (s % mod) : 0;
                double v = cur[s] + gain;
                if (v > nxt[ns]) {
                    nxt[ns] = v;
                    prev[i][ns] = static_cast<uint32_t>(s);
                    choice[i][ns] = static_cast<uint8_t>(m);
                }
            }
        }
        cur.swap(nxt);
    }

    long arg = 0;
    for (long s = 1; s < states; ++s)
        if (cur[s] > cur[arg]) arg = s;

    std::vector<int> mult(n_sites, 0);
    long s = arg;
    for (long i = n_sites - 1; i >= 0; --i) {
        mult[i] = choice[i][s];
        s = prev[i][s];
    }
    for (long i = 0; i < n_sites; ++i) {
        if (mult[i] == 0) continue;
        double x = i * grid_step;
        out.config.push_back(&x, mult[i]);
    }
    double exact = exact_objective(out.config, cost, lambda);
    if (std::abs(exact - cur[arg]) > 1e-9 * (1.0 + std::abs(exact)))
        throw DomainError("gamma_bruteforce_1d: backtracked value disagrees with DP");
    out.value = std::max(exact, 0.0);
    if (out.value == 0.0 && exact < 0.0) out.config = PointConfiguration(Box::cube(1, k));
    return out;
}

GammaEstimate gamma_anneal(const CostFunction& cost, double lambda, double k, int dim,
                           const AnnealSchedule& schedule, uint64_t seed) {
    if (!(k > 0.0) || dim < 1) throw DomainError("gamma_anneal: bad box parameters");
    if (!schedule.valid()) throw DomainError("gamma_anneal: bad schedule");

    Box box = Box::cube(dim, k);
    GammaEstimate out;
    out.lambda = lambda;
    out.k = k;
    out.dim = dim;
    out.method = "anneal";
    out.seed = seed;
    out.config = PointConfiguration(box);
    out.value = 0.0;
    if (lambda <= 0.0) return out;

    double ell0 = cost(0.0);
    int mult_cap = std::isinf(ell0)
                       ? 1
                       : static_cast<int>(std::ceil(2.0 * lambda / std::max(ell0, 1e-300))) + 4;
    const long total_cap = 200000;

    PointConfiguration cfg = lattice_seed(cost, lambda, box, dim);
    double cur_obj = exact_objective(cfg, cost, lambda);
    PointConfiguration best_cfg = cfg;
    double best_obj = std::max(cur_obj, 0.0);
    if (cur_obj < 0.0) {
        cfg = PointConfiguration(box);
        cur_obj = 0.0;
        best_cfg = cfg;
    }

    auto engine = make_engine(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double volume = std::pow(k, dim);
    long proposals = schedule.proposals_per_volume *
                     static_cast<long>(std::ceil(volume));
    double temperature = std::max(std::abs(lambda), 1.0);
    double sigma = schedule.initial_sigma;
    std::vector<double> trial(dim);

    for (int stage = 0; stage < schedule.stages; ++stage) {
        long moved = 0, tried_moves = 0;
        for (long p = 0; p < proposals; ++p) {
            double u = unif(engine);
            double d_obj = -kInf;
            if (u < schedule.insert_prob) {
                bool on_top = !std::isinf(ell0) && !cfg.multiplicity.empty() &&
                              unif(engine) < 0.3;
                if (on_top) {
                    size_t i = static_cast<size_t>(unif(engine) * cfg.size());
                    i = std::min(i, cfg.size() - 1);
                    if (cfg.multiplicity[i] < mult_cap) {
                        double e = unit_insertion_energy(cfg, cost, cfg.point(i));
                        d_obj = std::isinf(e) ? -kInf : lambda - 2.0 * e;
                        if (d_obj >= 0.0 ||
                            unif(engine) < std::exp(d_obj / temperature)) {
                            cfg.multiplicity[i] += 1;
                            cur_obj += d_obj;
                        }
                    }
                } else if (cfg.total_count() < total_cap) {
                    for (int a = 0; a < dim; ++a)
                        trial[a] = box.lo[a] + unif(engine) * box.edge[a];
                    double e = unit_insertion_energy(cfg, cost, trial.data());
                    d_obj = std::isinf(e) ? -kInf : lambda - 2.0 * e;
                    if (d_obj >= 0.0 || unif(engine) < std::exp(d_obj / temperature)) {
                        cfg.push_back(trial.data(), 1);
                        cur_obj += d_obj;
                    }
                }
            } else if (u < schedule.insert_prob + schedule.delete_prob) {
                if (cfg.multiplicity.empty()) continue;
                size_t i = static_cast<size_t>(unif(engine) * cfg.size());
                i = std::min(i, cfg.size() - 1);
                double e = unit_removal_energy(cfg, cost, i);
                d_obj = -lambda + 2.0 * e;
                if (d_obj >= 0.0 || unif(engine) < std::exp(d_obj / temperature)) {
                    if (cfg.multiplicity[i] > 1)
                        cfg.multiplicity[i] -= 1;
                    else
                        cfg.erase(i);
                    cur_obj += d_obj;
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
                double e_new = site_cross_energy(cfg, cost, i, trial.data());
                if (std::isinf(e_new)) continue;
                double e_old = site_cross_energy(cfg, cost, i, x);
                d_obj = 2.0 * (e_old - e_new);  // ordered pairs count both ways
                if (d_obj >= 0.0 || unif(engine) < std::exp(d_obj / temperature)) {
                    double* xp = cfg.point(i);
                    for (int a = 0; a < dim; ++a) xp[a] = trial[a];
                    cur_obj += d_obj;
                    ++moved;
                }
            }
            if (cur_obj > best_obj) {
                best_obj = cur_obj;
                best_cfg = cfg;
            }
        }
        // Defend against incremental drift once per stage.
        double exact = exact_objective(cfg, cost, lambda);
        cur_obj = exact;
        if (exact > best_obj) {
            best_obj = exact;
            best_cfg = cfg;
        }
        if (tried_moves > 0) {
            double rate = static_cast<double>(moved) / tried_moves;
            if (rate > 0.45)
                sigma = std::min(sigma * 1.15, 0.5 * k);
            else if (rate < 0.35)
                sigma = std::max(sigma / 1.15, 1e-3 * k);
        }
        temperature *= schedule.cooling;
    }

    double final_exact = exact_objective(best_cfg, cost, lambda);
    if (final_exact <= 0.0) {
        out.config = PointConfiguration(box);
        out.value = 0.0;
    } else {
        out.config = best_cfg;
        out.value = final_exact;
    }
    out.sweeps = static_cast<long>(schedule.stages) * proposals;
    return out;
}

GEstimate estimate_g(const CostFunction& cost, double lambda,
                     const std::vector<double>& k_sequence, int dim, int replicas,
                     uint64_t seed, const AnnealSchedule& schedule) {
    if (k_sequence.empty()) throw DomainError("estimate_g: empty k sequence");
    if (replicas < 1) throw DomainError("estimate_g: need at least one replica");

    GEstimate out;
    out.lambda = lambda;
    if (lambda <= 0.0) {
        for (double k : k_sequence) out.values_by_k.emplace_back(k, 0.0);
        return out;
    }

    double spread_largest = 0.0;
    for (size_t ki = 0; ki < k_sequence.size(); ++ki) {
        double k = k_sequence[ki];
        double best = -kInf, worst = kInf;
        for (int r = 0; r < replicas; ++r) {
            uint64_t s = derive_seed(seed, {static_cast<uint64_t>(ki),
                                            static_cast<uint64_t>(r)});
            GammaEstimate est = gamma_anneal(cost, lambda, k, dim, schedule, s);
            double density = est.value / std::pow(k, dim);
            best = std::max(best, density);
            worst = std::min(worst, density);
        }
        out.values_by_k.emplace_back(k, best);
        if (ki + 1 == k_sequence.size()) spread_largest = best - worst;
    }

    out.g_value = out.values_by_k.front().second;
    for (const auto& [k, v] : out.values_by_k) out.g_value = std::min(out.g_value, v);
    size_t n = out.values_by_k.size();
    double trend = n >= 2 ? std::abs(out.values_by_k[n - 1].second -
                                     out.values_by_k[n - 2].second)
                          : 0.0;
    out.uncertainty = trend + spread_largest;
    return out;
}

}  // namespace sr
