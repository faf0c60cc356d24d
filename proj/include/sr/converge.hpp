#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sr/common.hpp"
#include "sr/config.hpp"
#include "sr/convex.hpp"
#include "sr/cost.hpp"
#include "sr/gamma.hpp"
#include "sr/meanfield.hpp"

namespace sr {

struct EpsRecord {
    double eps = 0.0;
    long n_found = 0;
    double scaled_value = 0.0;  // eps^d * best discrete value
    PointConfiguration config;
    uint64_t seed = 0;
    double l1_distance = 0.0;   // binned empirical density vs continuum density
    double mass_bound = kInf;   // coercivity-derived cap on eps^d * N
    bool mass_bound_ok = true;
};

struct ConvergenceRun {
    std::vector<double> eps_sequence;
    std::vector<EpsRecord> per_eps;
    double continuum_value = 0.0;
    std::vector<double> continuum_density;  // on the potential grid
};

/// Best found value of sum of pair costs at scale eps plus the external
/// potential, over finite subsets of the potential's domain. Annealed upper
/// bound on the true infimum.
std::pair<double, PointConfiguration> solve_discrete(const PotentialField& potential,
                                                     const CostFunction& cost, double eps,
                                                     const AnnealSchedule& schedule,
                                                     uint64_t seed);

/// Runs solve_discrete over a decreasing eps sequence and compares scaled
/// minima and binned minimizers against the continuum solution built from
/// the supplied conjugate profile.
ConvergenceRun run_convergence(const PotentialField& potential, const CostFunction& cost,
                               const SampledConvexFunction& fstar,
                               const std::vector<double>& eps_sequence,
                               const AnnealSchedule& schedule, uint64_t seed);

}  // namespace sr
