#include "sr/meanfield.hpp"

#include <algorithm>
#include <cmath>

namespace sr {

void PotentialField::cell_center(size_t flat, double* out) const {
    int d = domain.dim();
    size_t rem = flat;
    for (int a = d - 1; a >= 0; --a) {
        size_t n = static_cast<size_t>(cells_per_dim[a]);
        size_t ix = rem % n;
        rem /= n;
        double h = domain.edge[a] / cells_per_dim[a];
        out[a] = domain.lo[a] + (static_cast<double>(ix) + 0.5) * h;
    }
}

void PotentialField::validate() const {
    if (static_cast<int>(cells_per_dim.size()) != domain.dim())
        throw DomainError("potential: grid/domain dimension mismatch");
    size_t n = 1;
    for (int c : cells_per_dim) {
        if (c < 1) throw DomainError("potential: cells per dim must be >= 1");
        n *= static_cast<size_t>(c);
    }
    if (n != values.size()) throw DomainError("potential: value count mismatch");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("potential: values must be finite");
}

namespace {

constexpr double kIntervalTol = 1e-9;

std::pair<double, double> slopes_at(const SampledConvexFunction& fstar, double x) {
    try {
        return subdifferential(fstar, x);
    } catch (const DomainError&) {
        throw DomainError(
            "mean-field solve: -U leaves the conjugate grid hull; extend the "
            "grid of the supplied conjugate profile");
    }
}

}  // namespace

MeanFieldSolution solve_meanfield(const PotentialField& potential,
                                  const SampledConvexFunction& fstar) {
    potential.validate();
    MeanFieldSolution sol;
    sol.density.resize(potential.cell_count());
    double vol = potential.cell_volume();
    double dual = 0.0;
    for (size_t i = 0; i < potential.cell_count(); ++i) {
        double x = -potential.values[i];
        auto [lo, hi] = slopes_at(fstar, x);
        lo = pos_part(lo);
        hi = pos_part(hi);
        sol.density[i] = 0.5 * (lo + hi);
        if (hi - lo > kIntervalTol * (1.0 + std::abs(hi)))
            sol.multivalued_cells.push_back({i, lo, hi});
        dual += fstar.interpolate(x);
    }
    sol.value = -dual * vol;
    return sol;
}

MeanFieldSolution solve_meanfield_constrained(const PotentialField& potential,
                                              const SampledConvexFunction& fstar,
                                              double kappa) {
    potential.validate();
    if (!(kappa > 0.0))
        throw DomainError("constrained mean-field solve: kappa must be positive");

    double vol = potential.cell_volume();
    double u_max = *std::max_element(potential.values.begin(), potential.values.end());
    double u_min = *std::min_element(potential.values.begin(), potential.values.end());

    // Keep -U + mu inside the conjugate grid hull for every cell.
    double mu_lo = fstar.grid.front() + u_max;
    double mu_hi = fstar.grid.back() + u_min;
    if (!(mu_lo < mu_hi))
        throw DomainError(
            "constrained mean-field solve: conjugate grid too narrow for this "
            "potential; extend the grid");

    // Total-mass interval [sum of left slopes, sum of right slopes] at shift mu.
    auto mass_bounds = [&](double mu) {
        double lo_sum = 0.0, hi_sum = 0.0;
        for (double u : potential.values) {
            auto [lo, hi] = slopes_at(fstar, mu - u);
            lo_sum += pos_part(lo);
            hi_sum += pos_part(hi);
        }
        return std::pair<double, double>{lo_sum * vol, hi_sum * vol};
    };

    auto [lo_at_min, hi_at_min] = mass_bounds(mu_lo);
    auto [lo_at_max, hi_at_max] = mass_bounds(mu_hi);
    double feas_tol = 1e-9 * (1.0 + kappa);
    if (kappa > hi_at_max + feas_tol)
        throw DomainError(
            "constrained mean-field solve: kappa exceeds the congestion bound "
            "(maximal slope of the conjugate profile times the domain volume)");
    if (kappa < lo_at_min - feas_tol)
        throw DomainError(
            "constrained mean-field solve: kappa below the minimal achievable "
            "mass on this conjugate grid");

    double a = mu_lo, b = mu_hi, mu = 0.5 * (a + b);
    for (int it = 0; it < 80; ++it) {
        mu = 0.5 * (a + b);
        auto [lo, hi] = mass_bounds(mu);
        if (lo > kappa)
            b = mu;
        else if (hi < kappa)
            a = mu;
        else
            break;
    }

    MeanFieldSolution sol;
    sol.multiplier = mu;
    sol.density.resize(potential.cell_count());

    std::vector<double> lo_i(potential.cell_count()), hi_i(potential.cell_count());
    double base_mass = 0.0, capacity = 0.0;
    for (size_t i = 0; i < potential.cell_count(); ++i) {
        auto [lo, hi] = slopes_at(fstar, mu - potential.values[i]);
        lo_i[i] = pos_part(lo);
        hi_i[i] = pos_part(hi);
        base_mass += lo_i[i] * vol;
        capacity += (hi_i[i] - lo_i[i]) * vol;
    }
    double residual = kappa - base_mass;
    double fill = capacity > 0.0 ? std::clamp(residual / capacity, 0.0, 1.0) : 0.0;
    for (size_t i = 0; i < potential.cell_count(); ++i) {
        sol.density[i] = lo_i[i] + fill * (hi_i[i] - lo_i[i]);
        if (hi_i[i] - lo_i[i] > kIntervalTol * (1.0 + std::abs(hi_i[i])))
            sol.multivalued_cells.push_back({i, lo_i[i], hi_i[i]});
    }

    double mass = sol.total_mass(potential);
    if (std::abs(mass - kappa) > 1e-6 * (1.0 + kappa))
        throw DomainError(
            "constrained mean-field solve: bisection failed to match the "
            "target mass within tolerance");

    // Primal value: integral of f(u) + u U with f recovered by conjugation.
    double primal = 0.0;
    for (size_t i = 0; i < potential.cell_count(); ++i) {
        double u = sol.density[i];
        primal += conjugate_value(fstar, u) + u * potential.values[i];
    }
    sol.value = primal * vol;
    return sol;
}

}  // namespace sr
