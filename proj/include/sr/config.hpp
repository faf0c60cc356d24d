#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sr/common.hpp"
#include "sr/cost.hpp"

namespace sr {

/// Finite multiset of points in a d-dimensional box. Points with
/// multiplicity m > 1 represent clusters of m coincident particles.
struct PointConfiguration {
    int dim = 1;
    Box box;
    std::vector<double> coords;        // flat, size() * dim entries
    std::vector<int> multiplicity;     // one entry per stored point, >= 1

    PointConfiguration() = default;
    explicit PointConfiguration(Box b) : dim(b.dim()), box(std::move(b)) {}

    size_t size() const { return multiplicity.size(); }
    const double* point(size_t i) const { return coords.data() + i * dim; }
    double* point(size_t i) { return coords.data() + i * dim; }

    /// Total particle count, multiplicities included.
    long total_count() const {
        long n = 0;
        for (int m : multiplicity) n += m;
        return n;
    }

    void push_back(const double* p, int mult = 1) {
        coords.insert(coords.end(), p, p + dim);
        multiplicity.push_back(mult);
    }

    void erase(size_t i) {
        coords.erase(coords.begin() + static_cast<long>(i * dim),
                     coords.begin() + static_cast<long>((i + 1) * dim));
        multiplicity.erase(multiplicity.begin() + static_cast<long>(i));
    }

    double distance(size_t i, size_t j) const {
        double s = 0.0;
        const double* a = point(i);
        const double* b = point(j);
        for (int k = 0; k < dim; ++k) {
            double d = a[k] - b[k];
            s += d * d;
        }
        return std::sqrt(s);
    }

    /// Throws DomainError if a point escapes the box or a multiplicity is < 1.
    void validate(double tol = 1e-12) const;
};

/// eps-scaled empirical measure rho = eps^d * sum m_x delta_x.
struct ScaledMeasure {
    PointConfiguration config;
    double eps = 1.0;

    double total_mass() const {
        return std::pow(eps, config.dim) * static_cast<double>(config.total_count());
    }
};

/// Ground interaction energy xi_{l,eps}(S): sum over ordered pairs of
/// distinct particles of l(|x-y|/eps). Clusters of multiplicity m add
/// m(m-1) * l(0). Exact all-pairs below 256 points; cell lists take over
/// for finite-range costs above that.
double interaction_energy(const PointConfiguration& config, const CostFunction& cost,
                          double eps);

/// F_eps(rho) = eps^d * xi_{l,eps}(S).
double scaled_energy(const ScaledMeasure& measure, const CostFunction& cost);

/// All unordered index pairs at distance < range. Complete and duplicate-free.
std::vector<std::pair<int, int>> neighbor_pairs(const PointConfiguration& config,
                                                double range);

struct DensityField {
    Box box;
    std::vector<int> cells_per_dim;
    std::vector<double> values;   // mass / cell volume, row-major
    double clipped_mass = 0.0;    // mass falling outside the grid

    size_t cell_count() const { return values.size(); }
    double cell_volume() const {
        double v = 1.0;
        for (int i = 0; i < box.dim(); ++i) v *= box.edge[i] / cells_per_dim[i];
        return v;
    }
    double total_mass() const {
        double m = 0.0;
        for (double v : values) m += v;
        return m * cell_volume();
    }
};

/// Piecewise-constant density of the scaled measure on a regular grid over
/// the measure's box.
DensityField bin_density(const ScaledMeasure& measure,
                         const std::vector<int>& cells_per_dim);

}  // namespace sr
