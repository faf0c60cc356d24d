#include "sr/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace sr {

namespace {

// Gauss-Jordan inverse; dimensions here are tiny.
std::vector<double> invert(int d, std::vector<double> a) {
    std::vector<double> inv(d * d, 0.0);
    for (int i = 0; i < d; ++i) inv[i * d + i] = 1.0;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a[r * d + col]) > std::abs(a[piv * d + col])) piv = r;
        if (std::abs(a[piv * d + col]) < 1e-14)
            throw DomainError("lattice: generator is singular");
        if (piv != col)
            for (int j = 0; j < d; ++j) {
                std::swap(a[piv * d + j], a[col * d + j]);
                std::swap(inv[piv * d + j], inv[col * d + j]);
            }
        double p = a[col * d + col];
        for (int j = 0; j < d; ++j) {
            a[col * d + j] /= p;
            inv[col * d + j] /= p;
        }
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            double f = a[r * d + col];
            if (f == 0.0) continue;
            for (int j = 0; j < d; ++j) {
                a[r * d + j] -= f * a[col * d + j];
                inv[r * d + j] -= f * inv[col * d + j];
            }
        }
    }
    return inv;
}

double determinant(int d, std::vector<double> a) {
    double det = 1.0;
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::abs(a[r * d + col]) > std::abs(a[piv * d + col])) piv = r;
        if (std::abs(a[piv * d + col]) < 1e-14) return 0.0;
        if (piv != col) {
            det = -det;
            for (int j = 0; j < d; ++j) std::swap(a[piv * d + j], a[col * d + j]);
        }
        det *= a[col * d + col];
        for (int r = col + 1; r < d; ++r) {
            double f = a[r * d + col] / a[col * d + col];
            for (int j = 0; j < d; ++j) a[r * d + j] -= f * a[col * d + j];
        }
    }
    return det;
}

}  // namespace

BravaisLattice BravaisLattice::from_generator(int dim, std::vector<double> row_major) {
    if (dim < 1 || row_major.size() != static_cast<size_t>(dim) * dim)
        throw DomainError("lattice: generator must be d x d");
    BravaisLattice lat;
    lat.dim_ = dim;
    lat.gen_ = std::move(row_major);
    lat.det_abs_ = std::abs(determinant(dim, lat.gen_));
    double scale = 0.0;
    for (double g : lat.gen_) scale = std::max(scale, std::abs(g));
    if (lat.det_abs_ < 1e-12 * std::pow(std::max(scale, 1e-30), dim))
        throw DomainError("lattice: generator is numerically singular");
    lat.inv_ = invert(dim, lat.gen_);
    lat.inv_row_norm_.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) {
        double s = 0.0;
        for (int j = 0; j < dim; ++j) s += lat.inv_[i * dim + j] * lat.inv_[i * dim + j];
        lat.inv_row_norm_[i] = std::sqrt(s);
    }

    // a_min: the shortest vector is no longer than the shortest generator
    // column, so enumerating that ball finds it exactly.
    double col_min = kInf;
    for (int j = 0; j < dim; ++j) {
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += lat.gen_[i * dim + j] * lat.gen_[i * dim + j];
        col_min = std::min(col_min, std::sqrt(s));
    }
    lat.a_min_ = col_min;
    lat.for_each_in_ball(col_min * (1.0 + 1e-12),
                         [&](const double*, double len) {
                             lat.a_min_ = std::min(lat.a_min_, len);
                         });

    // constructive covering constant, safety factor 2
    double c_max = 0.0;
    for (int mult = 1; mult <= 64; mult *= 2) {
        double radius = lat.a_min_ * mult;
        long count = 1;  // origin
        lat.for_each_in_ball(radius, [&](const double*, double) { ++count; });
        c_max = std::max(c_max, static_cast<double>(count) / std::pow(radius, dim));
    }
    lat.c_lattice_ = 2.0 * c_max;
    return lat;
}

BravaisLattice BravaisLattice::cartesian(int dim) {
    std::vector<double> f(dim * dim, 0.0);
    for (int i = 0; i < dim; ++i) f[i * dim + i] = 1.0;
    return from_generator(dim, std::move(f));
}

BravaisLattice BravaisLattice::hexagonal() {
    return from_generator(2, {1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0});
}

std::vector<std::vector<double>> BravaisLattice::points_in_ball(double radius,
                                                                long cap) const {
    if (!(radius > 0.0)) throw DomainError("points_in_ball: radius must be positive");
    std::vector<std::vector<double>> pts;
    for_each_in_ball(
        radius, [&](const double* v, double) { pts.emplace_back(v, v + dim_); }, cap);
    return pts;
}

double tail_weighted_integral(const CostFunction& cost, double a, int dim) {
    if (a < 0.0) throw DomainError("tail_weighted_integral: negative start");
    const double r0 = cost.r0();
    if (a < r0) {
        double mid = cost.upper_envelope(0.5 * (a + r0));
        if (mid == kInf) return kInf;
        auto fn = [&](double u) { return cost.upper_envelope(u) * std::pow(u, dim - 1); };
        double head = adaptive_simpson(fn, a, r0, 1e-12);
        double rest = tail_weighted_integral(cost, r0, dim);
        return head + rest;
    }
    switch (cost.kind()) {
        case CostKind::riesz: {
            double s = cost.riesz_exponent();
            if (s <= dim) return kInf;
            return std::pow(a, dim - s) / (s - dim);
        }
        case CostKind::hard_sphere:
            return a >= 1.0 ? 0.0 : kInf;
        case CostKind::step: {
            double c = cost.step_cutoff();
            if (a >= c) return 0.0;
            return cost.step_height() * (std::pow(c, dim) - std::pow(a, dim)) / dim;
        }
        default: {
            if (cost.finite_range()) {
                double hi = *cost.finite_range();
                if (a >= hi) return 0.0;
                auto fn = [&](double u) { return cost(u) * std::pow(u, dim - 1); };
                return adaptive_simpson(fn, a, hi, 1e-12);
            }
            auto fn = [&](double u) { return cost(u) * std::pow(u, dim - 1); };
            double hi = std::max(2.0 * a, 2.0);
            double acc = adaptive_simpson(fn, a, hi, 1e-12);
            for (int dbl = 0; dbl < 60; ++dbl) {
                double piece = adaptive_simpson(fn, hi, 2.0 * hi, 1e-12);
                acc += piece;
                hi *= 2.0;
                if (std::abs(piece) < 1e-10 * std::max(std::abs(acc), 1.0)) return acc;
            }
            return kInf;
        }
    }
}

ZetaResult epstein_zeta(const CostFunction& cost, const BravaisLattice& lattice, double r,
                        double tol, long point_cap) {
    if (!(r > 0.0)) throw DomainError("epstein_zeta: r must be positive");
    if (!(tol > 0.0)) throw DomainError("epstein_zeta: tol must be positive");
    const int d = lattice.dim();
    const double c_lat = lattice.covering_constant();

    auto tail_bound = [&](double radius) {
        double up = cost.upper_envelope(r * radius);
        if (up == kInf) return kInf;
        double integral = tail_weighted_integral(cost, r * radius, d);
        if (integral == kInf) return kInf;
        return c_lat * (std::pow(radius, d) * up +
                        d / std::pow(r, d) * integral);
    };

    bool exact_finite = false;
    double cutoff = lattice.a_min();
    if (cost.finite_range()) {
        // every term beyond finite_range/r vanishes: the truncated sum is exact
        double needed = *cost.finite_range() / r * (1.0 + 1e-12);
        if (c_lat * std::pow(needed, d) <= static_cast<double>(point_cap)) {
            cutoff = std::max(cutoff, needed);
            exact_finite = true;
        }
    }
    if (!exact_finite) {
        while (tail_bound(cutoff) > tol) {
            double next = 2.0 * cutoff;
            if (c_lat * std::pow(next, d) > static_cast<double>(point_cap)) break;
            cutoff = next;
        }
    }

    // dyadic-shell accumulators, summed farthest shell first
    std::array<double, 64> buckets{};
    long points = 0;
    lattice.for_each_in_ball(
        cutoff,
        [&](const double*, double len) {
            double term = cost(r * len);
            ++points;
            if (term == 0.0) return;
            int b = 0;
            if (len > 0.0) {
                b = static_cast<int>(std::floor(std::log2(cutoff / len)));
                b = std::clamp(b, 0, 63);
            }
            buckets[static_cast<size_t>(b)] += term;
        },
        point_cap + (point_cap >> 2));

    ZetaResult res;
    for (double b : buckets) res.value += b;
    res.points_used = points;
    res.cutoff_radius = cutoff;
    res.error_bound = exact_finite ? 0.0 : tail_bound(cutoff);
    bool in_validity_range =
        r >= cost.r0() * std::max(1.0, 1.0 / lattice.a_min()) - 1e-12;
    res.certified = res.error_bound <= tol && (in_validity_range || exact_finite);
    return res;
}

double zeta_tail_bound(const CostFunction& cost, const BravaisLattice& lattice, double r,
                       int dim) {
    if (dim != lattice.dim()) throw DomainError("zeta_tail_bound: dim mismatch");
    const double r0 = cost.r0();
    if (r < r0 * std::max(1.0, 1.0 / lattice.a_min()) - 1e-12)
        throw DomainError("zeta_tail_bound: r below the validity range");
    double integral = tail_weighted_integral(cost, std::max(r0, 0.0), dim);
    if (integral == kInf)
        throw DomainError("zeta_tail_bound: tail integral diverges (H3 violated)");
    double head = r0 > 0.0 ? mul0(cost(r0), std::pow(r0, dim)) : 0.0;
    return lattice.covering_constant() / std::pow(r, dim) * (head + dim * integral);
}

double h_profile(const CostFunction& cost, double t, int dim, double tol) {
    if (t <= 0.0) return kInf;
    static const BravaisLattice z1 = BravaisLattice::cartesian(1);
    static const BravaisLattice z2 = BravaisLattice::cartesian(2);
    static const BravaisLattice z3 = BravaisLattice::cartesian(3);
    const BravaisLattice* lat = nullptr;
    BravaisLattice scratch = z1;
    switch (dim) {
        case 1: lat = &z1; break;
        case 2: lat = &z2; break;
        case 3: lat = &z3; break;
        default:
            scratch = BravaisLattice::cartesian(dim);
            lat = &scratch;
            break;
    }
    double r = std::pow(t, -1.0 / dim);
    ZetaResult z = epstein_zeta(cost, *lat, r, tol);
    return t * z.value;
}

PointConfiguration lattice_configuration(const BravaisLattice& lattice, double spacing,
                                         const Box& box, long cap) {
    if (!(spacing > 0.0)) throw DomainError("lattice_configuration: spacing must be positive");
    const int d = lattice.dim();
    if (box.dim() != d) throw DomainError("lattice_configuration: box dim mismatch");

    // integer ranges from the transformed box corners
    const std::vector<double>& inv = lattice.inverse();
    std::vector<double> corner(d), ncoord(d), fmin(d), fmax(d);
    bool first = true;
    for (long mask = 0; mask < (1L << d); ++mask) {
        for (int k = 0; k < d; ++k)
            corner[k] = box.lo[k] + ((mask >> k) & 1 ? box.edge[k] : 0.0);
        for (int i = 0; i < d; ++i) {
            double s = 0.0;
            for (int j = 0; j < d; ++j) s += inv[i * d + j] * corner[j];
            ncoord[i] = s / spacing;
        }
        for (int k = 0; k < d; ++k) {
            if (first || ncoord[k] < fmin[k]) fmin[k] = ncoord[k];
            if (first || ncoord[k] > fmax[k]) fmax[k] = ncoord[k];
        }
        first = false;
    }
    std::vector<long> nlo(d), nhi(d);
    double expected = 1.0;
    for (int k = 0; k < d; ++k) {
        nlo[k] = static_cast<long>(std::floor(fmin[k])) - 1;
        nhi[k] = static_cast<long>(std::ceil(fmax[k])) + 1;
        expected *= static_cast<double>(nhi[k] - nlo[k] + 1);
    }
    if (expected > static_cast<double>(cap))
        throw ResourceError("lattice_configuration: point cap exceeded");

    PointConfiguration cfg(box);
    std::vector<long> n(nlo);
    std::vector<double> v(d);
    while (true) {
        lattice.map(n.data(), v.data());
        bool inside = true;
        for (int k = 0; k < d; ++k) {
            double x = v[k] * spacing;
            v[k] = x;
            double hi = box.lo[k] + box.edge[k];
            if (x < box.lo[k] - 1e-12 * std::max(1.0, std::abs(box.lo[k])) ||
                x >= hi - 1e-12 * std::max(1.0, std::abs(hi))) {
                inside = false;
                break;
            }
        }
        if (inside) cfg.push_back(v.data());
        int k = 0;
        while (k < d && n[k] == nhi[k]) {
            n[k] = nlo[k];
            ++k;
        }
        if (k == d) break;
        ++n[k];
    }
    return cfg;
}

}  // namespace sr
