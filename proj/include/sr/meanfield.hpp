#pragma once

#include <optional>
#include <vector>

#include "sr/common.hpp"
#include "sr/convex.hpp"

namespace sr {

/// External potential sampled on a regular grid over a box domain. Values
/// are cell averages (midpoint convention).
struct PotentialField {
    Box domain;
    std::vector<int> cells_per_dim;
    std::vector<double> values;  // one finite value per cell, row-major

    size_t cell_count() const { return values.size(); }

    double cell_volume() const {
        double v = 1.0;
        for (int i = 0; i < domain.dim(); ++i) v *= domain.edge[i] / cells_per_dim[i];
        return v;
    }

    /// Midpoint of cell `flat` into `out` (length = dim).
    void cell_center(size_t flat, double* out) const;

    /// Throws DomainError on shape mismatch or non-finite values.
    void validate() const;
};

struct MultivaluedCell {
    size_t cell = 0;
    double lo = 0.0;
    double hi = 0.0;
};

struct MeanFieldSolution {
    std::vector<double> density;  // per cell, nonnegative
    double value = 0.0;
    std::vector<MultivaluedCell> multivalued_cells;
    std::optional<double> multiplier;

    double total_mass(const PotentialField& potential) const {
        double m = 0.0;
        for (double u : density) m += u;
        return m * potential.cell_volume();
    }
};

/// Unconstrained minimization: value = -integral of fstar(-U) by midpoint
/// quadrature; densities are chosen from the subdifferential of fstar at -U
/// (interval midpoint), with nondegenerate intervals reported.
MeanFieldSolution solve_meanfield(const PotentialField& potential,
                                  const SampledConvexFunction& fstar);

/// Mass-constrained variant: finds the multiplier mu by bisection so that
/// the solution for U - mu carries total mass kappa, distributing any
/// residual across the jump cells. Returns the primal value
/// integral of f(u) + u U.
MeanFieldSolution solve_meanfield_constrained(const PotentialField& potential,
                                              const SampledConvexFunction& fstar,
                                              double kappa);

}  // namespace sr
