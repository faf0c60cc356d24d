#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sr/common.hpp"
#include "sr/config.hpp"
#include "sr/cost.hpp"

namespace sr {

struct AnnealSchedule {
    double cooling = 0.95;
    int stages = 200;
    int proposals_per_volume = 50;   // proposals per stage = this * ceil(k^d)
    double initial_sigma = 0.3;      // displacement scale, self-tuned toward ~40% acceptance
    double insert_prob = 0.35;
    double delete_prob = 0.35;       // remainder goes to displacement moves

    bool valid() const {
        return cooling > 0.0 && cooling < 1.0 && stages > 0 && proposals_per_volume > 0 &&
               insert_prob >= 0.0 && delete_prob >= 0.0 &&
               insert_prob + delete_prob <= 1.0;
    }
};

/// Best found value of lambda * #S - xi(S) over finite S in a box of edge k.
struct GammaEstimate {
    double lambda = 0.0;
    double k = 0.0;
    int dim = 1;
    double value = 0.0;
    PointConfiguration config;
    std::string method;          // bruteforce_dp | anneal | lattice_seed
    uint64_t seed = 0;
    long sweeps = 0;
    bool lower_bound_flag = true;  // stochastic methods certify only a lower bound
};

struct GEstimate {
    double lambda = 0.0;
    std::vector<std::pair<double, double>> values_by_k;  // (k, value / k^d)
    double g_value = 0.0;
    double uncertainty = 0.0;
};

/// Minimal number of disjoint delta-hypercubes covering an axis-aligned box:
/// the product of per-axis ceil(edge/delta).
long covering_number(const Box& box, double delta);

/// Universal energy lower bound N l_-(delta) (zeta - 1)_+ with
/// zeta = N / m_delta(box); 0 * inf = 0 applies.
double gamma_lower_bound_energy(long n_points, const Box& box, const CostFunction& cost,
                                double delta);

/// Exact grid-restricted maximizer in d=1 via a sliding-window dynamic
/// program. Requires a finite-range cost; per-site multiplicity is allowed
/// when l(0) is finite.
GammaEstimate gamma_bruteforce_1d(const CostFunction& cost, double lambda, double k,
                                  double grid_step, long state_cap = 2000000L);

/// Grand-canonical Metropolis annealing with insert/delete/displace moves,
/// seeded from the best lattice configuration. Returns the best-ever
/// configuration; always a valid lower bound on Gamma.
GammaEstimate gamma_anneal(const CostFunction& cost, double lambda, double k, int dim,
                           const AnnealSchedule& schedule, uint64_t seed);

/// Thermodynamic-limit estimate: g = min over k of best anneal value / k^d.
GEstimate estimate_g(const CostFunction& cost, double lambda,
                     const std::vector<double>& k_sequence, int dim, int replicas,
                     uint64_t seed, const AnnealSchedule& schedule = {});

/// Right side of the finite-box bound m_delta(B) l_-(delta) phi(lambda/l_-);
/// reduces to lambda_+ m_delta(B) when l_-(delta) = +inf.
double gamma_upper_bound(double lambda, const Box& box, double delta,
                         const CostFunction& cost, int dim);

}  // namespace sr
