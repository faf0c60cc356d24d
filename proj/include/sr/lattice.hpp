#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "sr/common.hpp"
#include "sr/config.hpp"
#include "sr/cost.hpp"

namespace sr {

/// Bravais lattice G = F * Z^d for an invertible generator F.
class BravaisLattice {
public:
    static BravaisLattice from_generator(int dim, std::vector<double> row_major);
    static BravaisLattice cartesian(int dim);
    /// Hexagonal lattice in the plane with minimal vector length 1.
    static BravaisLattice hexagonal();

    int dim() const { return dim_; }
    double a_min() const { return a_min_; }
    double det_abs() const { return det_abs_; }
    const std::vector<double>& generator() const { return gen_; }
    const std::vector<double>& inverse() const { return inv_; }

    /// Constructive covering constant: max over a radius sweep of
    /// count(B_R)/R^d, times a safety factor 2. Satisfies #(B_r cap G) <= C r^d.
    double covering_constant() const { return c_lattice_; }

    void map(const long* n, double* v) const {
        for (int i = 0; i < dim_; ++i) {
            double s = 0.0;
            for (int j = 0; j < dim_; ++j) s += gen_[i * dim_ + j] * n[j];
            v[i] = s;
        }
    }

    /// Visits every nonzero lattice vector with |v| <= radius. Deterministic
    /// lexicographic order over integer coordinates.
    template <typename Fn>
    void for_each_in_ball(double radius, Fn&& fn, long cap = 100000000L) const {
        std::vector<long> bound(dim_);
        for (int i = 0; i < dim_; ++i) {
            bound[i] = static_cast<long>(std::floor(radius * inv_row_norm_[i])) + 1;
        }
        std::vector<long> n(dim_, 0);
        std::vector<double> v(dim_);
        long visited = 0;
        const double r2 = radius * radius;
        enumerate(0, bound, n, v, r2, visited, cap, fn);
    }

    std::vector<std::vector<double>> points_in_ball(double radius,
                                                    long cap = 100000000L) const;

private:
    template <typename Fn>
    void enumerate(int axis, const std::vector<long>& bound, std::vector<long>& n,
                   std::vector<double>& v, double r2, long& visited, long cap,
                   Fn&& fn) const {
        if (axis == dim_) {
            bool zero = true;
            for (long c : n)
                if (c != 0) zero = false;
            if (zero) return;
            map(n.data(), v.data());
            double s = 0.0;
            for (double x : v) s += x * x;
            if (s <= r2) {
                if (++visited > cap)
                    throw ResourceError("lattice enumeration exceeded point cap");
                fn(v.data(), std::sqrt(s));
            }
            return;
        }
        for (long c = -bound[axis]; c <= bound[axis]; ++c) {
            n[axis] = c;
            enumerate(axis + 1, bound, n, v, r2, visited, cap, fn);
        }
        n[axis] = 0;
    }

    int dim_ = 1;
    std::vector<double> gen_;           // row-major F
    std::vector<double> inv_;           // row-major F^{-1}
    std::vector<double> inv_row_norm_;  // |row_i(F^{-1})|, enumeration bounds
    double a_min_ = 1.0;
    double det_abs_ = 1.0;
    double c_lattice_ = 2.0;
};

struct ZetaResult {
    double value = 0.0;
    double error_bound = kInf;
    bool certified = false;
    long points_used = 0;
    double cutoff_radius = 0.0;
};

/// Epstein zeta Lambda_{l,G}(r) = sum over nonzero x in G of l(r|x|), by
/// direct summation up to a cutoff plus a certified tail bound driven by
/// the H3 integral. Certified when the returned error bound is <= tol and
/// r sits in the validity range of the tail estimate.
ZetaResult epstein_zeta(const CostFunction& cost, const BravaisLattice& lattice, double r,
                        double tol, long point_cap = 100000000L);

/// Closed-ish form bound (C_G / r^d) (l(r0) r0^d + d int_{r0}^inf t^{d-1} l dt),
/// valid for r >= r0 * max(1, 1/a_G). Throws if the H3 integral diverges.
double zeta_tail_bound(const CostFunction& cost, const BravaisLattice& lattice, double r,
                       int dim);

/// H_l(t) = t * Lambda_l(t^{-1/d}) on the cartesian lattice; +inf for t <= 0.
double h_profile(const CostFunction& cost, double t, int dim, double tol = 1e-7);

/// All points of spacing*G inside the half-open box.
PointConfiguration lattice_configuration(const BravaisLattice& lattice, double spacing,
                                         const Box& box, long cap = 100000000L);

/// int_a^inf u^{d-1} l_plus(u) du, closed form for the built-in kinds.
double tail_weighted_integral(const CostFunction& cost, double a, int dim);

}  // namespace sr
