#include "sr/convex.hpp"

#include <algorithm>
#include <cmath>

#include "sr/lattice.hpp"

namespace sr {

SampledConvexFunction::SampledConvexFunction(std::vector<double> g, std::vector<double> v,
                                             DomainConvention c)
    : grid(std::move(g)), values(std::move(v)), convention(c) {
    if (grid.size() != values.size() || grid.empty())
        throw DomainError("sampled function: grid/values mismatch");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DomainError("sampled function: grid must be strictly increasing");
}

double SampledConvexFunction::interpolate(double x) const {
    auto chord_left = [this](double xx) {
        if (grid.size() < 2 || values[0] == kInf || values[1] == kInf) return values[0];
        double s = (values[1] - values[0]) / (grid[1] - grid[0]);
        return values[0] + s * (xx - grid[0]);
    };
    auto chord_right = [this](double xx) {
        size_t n = grid.size();
        if (n < 2 || values[n - 1] == kInf || values[n - 2] == kInf) return values[n - 1];
        double s = (values[n - 1] - values[n - 2]) / (grid[n - 1] - grid[n - 2]);
        return values[n - 1] + s * (xx - grid[n - 1]);
    };
    if (x < grid.front()) {
        return convention == DomainConvention::plus_infinity_left ? kInf : chord_left(x);
    }
    if (x > grid.back()) {
        return convention == DomainConvention::plus_infinity_right ? kInf : chord_right(x);
    }
    auto it = std::lower_bound(grid.begin(), grid.end(), x);
    size_t i = static_cast<size_t>(it - grid.begin());
    if (grid[i] == x) return values[i];
    size_t lo = i - 1;
    if (values[lo] == kInf || values[i] == kInf) return kInf;
    double w = (x - grid[lo]) / (grid[i] - grid[lo]);
    return values[lo] + w * (values[i] - values[lo]);
}

bool SampledConvexFunction::is_convex(double tol) const {
    double scale = 0.0;
    for (double v : values)
        if (std::isfinite(v)) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, 1.0);
    for (size_t i = 1; i + 1 < grid.size(); ++i) {
        if (values[i] == kInf) {
            // +inf nodes may not sit between finite ones
            bool left_fin = std::isfinite(values[i - 1]);
            bool right_fin = std::isfinite(values[i + 1]);
            if (left_fin && right_fin) return false;
            continue;
        }
        if (values[i - 1] == kInf || values[i + 1] == kInf) continue;
        double s1 = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
        double s2 = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
        if (s2 < s1 - tol * scale) return false;
    }
    return true;
}

SampledConvexFunction legendre_transform(const SampledConvexFunction& f,
                                         const std::vector<double>& dual_grid) {
    bool any_finite = false;
    for (double v : f.values)
        if (std::isfinite(v)) any_finite = true;
    if (!any_finite) throw DomainError("legendre_transform: all-infinite input");

    std::vector<double> out(dual_grid.size(), -kInf);
    for (size_t j = 0; j < dual_grid.size(); ++j) {
        double best = -kInf;
        for (size_t i = 0; i < f.size(); ++i) {
            if (!std::isfinite(f.values[i])) continue;
            best = std::max(best, dual_grid[j] * f.grid[i] - f.values[i]);
        }
        out[j] = best;
    }
    return SampledConvexFunction(dual_grid, std::move(out), DomainConvention::finite);
}

SampledConvexFunction legendre_transform_fast(const SampledConvexFunction& f,
                                              const std::vector<double>& dual_grid) {
    for (size_t j = 1; j < dual_grid.size(); ++j)
        if (!(dual_grid[j] > dual_grid[j - 1]))
            throw DomainError("legendre fast path: dual grid must be increasing");
    std::vector<size_t> finite;
    for (size_t i = 0; i < f.size(); ++i)
        if (std::isfinite(f.values[i])) finite.push_back(i);
    if (finite.empty()) throw DomainError("legendre_transform: all-infinite input");

    std::vector<double> out(dual_grid.size());
    size_t arg = 0;  // argmax index into `finite`; nondecreasing in lambda
    for (size_t j = 0; j < dual_grid.size(); ++j) {
        double lam = dual_grid[j];
        auto val = [&](size_t k) {
            size_t i = finite[k];
            return lam * f.grid[i] - f.values[i];
        };
        if (j == 0) {
            // full scan to initialize
            double best = val(0);
            for (size_t k = 1; k < finite.size(); ++k)
                if (val(k) >= best) {
                    best = val(k);
                    arg = k;
                }
        } else {
            while (arg + 1 < finite.size() && val(arg + 1) >= val(arg)) ++arg;
        }
        out[j] = val(arg);
    }
    return SampledConvexFunction(dual_grid, std::move(out), DomainConvention::finite);
}

double conjugate_value(const SampledConvexFunction& f, double x) {
    double best = -kInf;
    for (size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f.values[i])) continue;
        best = std::max(best, x * f.grid[i] - f.values[i]);
    }
    if (best == -kInf) throw DomainError("conjugate_value: all-infinite input");
    return best;
}

SampledConvexFunction convexify(const SampledConvexFunction& f) {
    struct Pt {
        double x, y;
    };
    std::vector<Pt> pts;
    for (size_t i = 0; i < f.size(); ++i)
        if (std::isfinite(f.values[i])) pts.push_back({f.grid[i], f.values[i]});
    if (pts.empty()) return f;

    // Andrew lower hull over the finite sample points
    std::vector<Pt> hull;
    for (const Pt& p : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }

    auto hull_eval = [&](double x) {
        auto it = std::lower_bound(hull.begin(), hull.end(), x,
                                   [](const Pt& p, double v) { return p.x < v; });
        if (it == hull.begin()) return it->y;
        if (it == hull.end()) return hull.back().y;
        const Pt& b = *it;
        const Pt& a = *(it - 1);
        if (b.x == x) return b.y;
        double w = (x - a.x) / (b.x - a.x);
        return a.y + w * (b.y - a.y);
    };

    SampledConvexFunction out = f;
    for (size_t i = 0; i < out.size(); ++i) {
        double x = out.grid[i];
        if (x >= pts.front().x && x <= pts.back().x) out.values[i] = hull_eval(x);
    }
    return out;
}

double phi(double t) {
    if (t < 0.0) return 0.0;
    if (t < 1.0) return t;
    return (1.0 + t) * (1.0 + t) / 4.0;
}

double phi_star(double z) {
    if (z < 0.0) return kInf;
    return z * pos_part(z - 1.0);
}

SampledConvexFunction f_profile_from_g(const SampledConvexFunction& g,
                                       const std::vector<double>& t_grid) {
    SampledConvexFunction f = legendre_transform(g, t_grid);
    f.convention = DomainConvention::plus_infinity_left;
    for (size_t i = 0; i < f.size(); ++i)
        if (f.grid[i] == 0.0) f.values[i] = 0.0;
    return f;
}

std::pair<double, double> subdifferential(const SampledConvexFunction& f, double x) {
    const auto& g = f.grid;
    const auto& v = f.values;
    if (x < g.front() - 1e-12 || x > g.back() + 1e-12)
        throw DomainError("subdifferential: point outside grid hull");
    x = std::clamp(x, g.front(), g.back());

    auto chord = [&](size_t a, size_t b) -> double {
        if (v[a] == kInf && v[b] == kInf) return 0.0;
        if (v[b] == kInf) return kInf;
        if (v[a] == kInf) return -kInf;
        return (v[b] - v[a]) / (g[b] - g[a]);
    };

    auto it = std::lower_bound(g.begin(), g.end(), x);
    size_t i = static_cast<size_t>(it - g.begin());
    double near_tol_lo = i > 0 ? 1e-9 * (g[i] - g[i - 1]) : 0.0;
    double near_tol_hi =
        i + 1 < g.size() ? 1e-9 * (g[i + 1] - g[i]) : near_tol_lo;
    bool on_node =
        i < g.size() && std::abs(g[i] - x) <= std::max(near_tol_lo, near_tol_hi);
    if (!on_node && i > 0 && std::abs(g[i - 1] - x) <= near_tol_lo) {
        --i;
        on_node = true;
    }
    if (on_node) {
        double left = i > 0 ? chord(i - 1, i) : chord(i, i + 1);
        double right = i + 1 < g.size() ? chord(i, i + 1) : chord(i - 1, i);
        return {left, right};
    }
    // interior of the segment [i-1, i]
    double s = chord(i - 1, i);
    return {s, s};
}

double step_cost_profile(double M, double t) {
    if (t < 0.0) throw DomainError("step_cost_profile: t must be nonnegative");
    auto h = [M](double x) { return 0.5 * M * x * pos_part(x - 1.0); };
    double k = std::floor(t);
    return h(k) + (t - k) * (h(k + 1.0) - h(k));
}

SandwichReport sandwich_check(const SampledConvexFunction& g, const CostFunction& cost,
                              int dim, const std::vector<double>& delta_list,
                              double tol) {
    SandwichReport report;

    // Over-approximate H on a t grid: H_over(t) = t * (Lambda + error bound),
    // so the derived H* and H** land on the safe side of each inequality.
    const double t_hi = 2.0 * std::pow(std::max(cost.r0(), 1e-6), -dim);
    const int nt = 257;
    std::vector<double> t_grid(nt);
    std::vector<double> h_over(nt);
    // loose on purpose: the error bound is added into H_over, so the derived
    // H* and H** stay on the safe side of each inequality at any tolerance
    static const double kZetaTol = 1e-3;
    for (int i = 0; i < nt; ++i) {
        double t = t_hi * static_cast<double>(i) / (nt - 1);
        t_grid[i] = t;
        if (t == 0.0) {
            h_over[i] = 0.0;
            continue;
        }
        double r = std::pow(t, -1.0 / dim);
        ZetaResult z = epstein_zeta(cost, BravaisLattice::cartesian(dim), r, kZetaTol);
        h_over[i] = z.value == kInf ? kInf : t * (z.value + z.error_bound);
    }
    SampledConvexFunction h_fn(t_grid, h_over, DomainConvention::plus_infinity_right);

    auto upper_at = [&](double lam) {
        double ub = kInf;
        for (double delta : delta_list) {
            double lm = cost.lower_envelope(delta, dim);
            double cand;
            if (lm == kInf)
                cand = std::pow(delta, -dim) * pos_part(lam);
            else if (lm > 0.0)
                cand = std::pow(delta, -dim) * lm * phi(lam / lm);
            else
                continue;
            ub = std::min(ub, cand);
        }
        return ub;
    };

    for (size_t j = 0; j < g.size(); ++j) {
        double lam = g.grid[j];
        double gv = g.values[j];
        double h_star = conjugate_value(h_fn, lam);  // H*(lambda), under-approx

        SandwichEntry lo;
        lo.check = "g_lower";
        lo.x = lam;
        lo.bound = h_star;
        lo.value = gv;
        lo.margin = gv - h_star;
        lo.violated = lo.margin < -tol;
        report.entries.push_back(lo);

        double ub = upper_at(lam);
        SandwichEntry hi;
        hi.check = "g_upper";
        hi.x = lam;
        hi.bound = ub;
        hi.value = gv;
        hi.margin = ub - gv;
        hi.violated = hi.margin < -tol;
        report.entries.push_back(hi);
    }

    // primal side: f = g* against l_-(d) t (t d^d - 1)_+ and H**
    SampledConvexFunction f = f_profile_from_g(g, t_grid);
    SampledConvexFunction h_hull = convexify(h_fn);
    for (size_t i = 0; i < f.size(); ++i) {
        double t = f.grid[i];
        double fv = f.values[i];
        double lower = 0.0;
        for (double delta : delta_list) {
            double lm = cost.lower_envelope(delta, dim);
            double term = mul0(lm, t * pos_part(t * std::pow(delta, dim) - 1.0));
            lower = std::max(lower, term);
        }
        SandwichEntry lo;
        lo.check = "f_lower";
        lo.x = t;
        lo.bound = lower;
        lo.value = fv;
        lo.margin = fv - lower;
        lo.violated = lo.margin < -tol;
        report.entries.push_back(lo);

        double upper = h_hull.values[i];
        SandwichEntry hi;
        hi.check = "f_upper";
        hi.x = t;
        hi.bound = upper;
        hi.value = fv;
        hi.margin = upper == kInf ? kInf : upper - fv;
        hi.violated = hi.margin < -tol;
        report.entries.push_back(hi);
    }
    return report;
}

}  // namespace sr
