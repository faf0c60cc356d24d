#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sr {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Extended-real product with the convention 0 * inf = 0.
inline double mul0(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    return a * b;
}

inline double pos_part(double x) { return x > 0.0 ? x : 0.0; }

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Axis-aligned box: lower corner + edge lengths, half-open [lo, lo+edge).
struct Box {
    std::vector<double> lo;
    std::vector<double> edge;

    Box() = default;
    Box(std::vector<double> lo_, std::vector<double> edge_)
        : lo(std::move(lo_)), edge(std::move(edge_)) {
        if (lo.size() != edge.size()) throw DomainError("box: lo/edge dim mismatch");
        for (double e : edge)
            if (!(e > 0.0)) throw DomainError("box: edges must be positive");
    }

    static Box cube(int dim, double k, double origin = 0.0) {
        return Box(std::vector<double>(dim, origin), std::vector<double>(dim, k));
    }

    int dim() const { return static_cast<int>(lo.size()); }

    double volume() const {
        double v = 1.0;
        for (double e : edge) v *= e;
        return v;
    }

    bool contains(const double* p, double tol = 1e-12) const {
        for (int i = 0; i < dim(); ++i) {
            if (p[i] < lo[i] - tol || p[i] > lo[i] + edge[i] + tol) return false;
        }
        return true;
    }

    Box translated(const std::vector<double>& shift) const {
        Box b = *this;
        for (int i = 0; i < dim(); ++i) b.lo[i] += shift[i];
        return b;
    }
};

}  // namespace sr
