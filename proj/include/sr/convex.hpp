#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sr/common.hpp"
#include "sr/cost.hpp"

namespace sr {

enum class DomainConvention { plus_infinity_left, plus_infinity_right, finite };

/// Univariate function of one real variable stored as samples on a strictly
/// increasing grid. Values live in (-inf, +inf]; +inf marks points outside
/// the effective domain. Closed under Legendre transform and convexification.
struct SampledConvexFunction {
    std::vector<double> grid;
    std::vector<double> values;
    DomainConvention convention = DomainConvention::plus_infinity_left;

    SampledConvexFunction() = default;
    SampledConvexFunction(std::vector<double> g, std::vector<double> v,
                          DomainConvention c = DomainConvention::plus_infinity_left);

    size_t size() const { return grid.size(); }

    /// Linear interpolation between finite nodes; behavior beyond the grid
    /// follows the domain convention (+inf or boundary-chord extrapolation).
    double interpolate(double x) const;

    /// Discrete convexity: nonnegative second differences up to tolerance.
    bool is_convex(double tol = 1e-10) const;
};

/// f*(lambda) = max over grid t of lambda*t - f(t). Direct O(n^2) scan.
SampledConvexFunction legendre_transform(const SampledConvexFunction& f,
                                         const std::vector<double>& dual_grid);

/// Monotone-argmax fast path; must agree with legendre_transform on convex
/// inputs and is property-tested against it.
SampledConvexFunction legendre_transform_fast(const SampledConvexFunction& f,
                                              const std::vector<double>& dual_grid);

/// sup over the grid nodes of f of x*t - f(t), for a single off-grid x.
double conjugate_value(const SampledConvexFunction& f, double x);

/// Greatest convex minorant on the grid (lower hull of the sample points).
SampledConvexFunction convexify(const SampledConvexFunction& f);

/// Three-branch profile: 0 on R_-, identity on [0,1), (1+t)^2/4 beyond.
double phi(double t);
/// Conjugate: z(z-1)_+ for z >= 0, +inf below.
double phi_star(double z);

/// f = g* on the t grid, with f(0) pinned to 0.
SampledConvexFunction f_profile_from_g(const SampledConvexFunction& g,
                                       const std::vector<double>& t_grid);

/// [left slope, right slope] at x from adjacent grid chords. Throws when x
/// falls outside the grid hull.
std::pair<double, double> subdifferential(const SampledConvexFunction& f, double x);

/// Closed-form energy density for the step cost: piecewise affine
/// interpolation of h(t) = (M/2) t (t-1)_+ through the integers.
double step_cost_profile(double M, double t);

struct SandwichEntry {
    std::string check;   // "g_lower", "g_upper", "f_lower", "f_upper"
    double x = 0.0;
    double bound = 0.0;  // the inequality side derived from theory
    double value = 0.0;  // the estimate under test
    double margin = 0.0; // value-minus-bound oriented so that >= -tol passes
    bool violated = false;
};

struct SandwichReport {
    std::vector<SandwichEntry> entries;
    int violation_count() const {
        int n = 0;
        for (const auto& e : entries) n += e.violated ? 1 : 0;
        return n;
    }
};

/// Checks the two-sided bounds on g (conjugate side) and on f = g* (primal
/// side) for the given deltas, at tolerance tol. Violations become report
/// entries, never exceptions.
SandwichReport sandwich_check(const SampledConvexFunction& g, const CostFunction& cost,
                              int dim, const std::vector<double>& delta_list,
                              double tol);

}  // namespace sr
