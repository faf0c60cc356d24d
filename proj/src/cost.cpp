#include "sr/cost.hpp"

#include <algorithm>
#include <cmath>

namespace sr {

std::string to_string(CostKind k) {
    switch (k) {
        case CostKind::riesz: return "riesz";
        case CostKind::hard_sphere: return "hard_sphere";
        case CostKind::step: return "step";
        case CostKind::tabulated: return "tabulated";
        case CostKind::custom: return "custom";
    }
    return "?";
}

CostFunction CostFunction::riesz(double exponent, double r0) {
    if (!(exponent > 0.0)) throw DomainError("riesz: exponent must be positive");
    if (!(r0 > 0.0)) throw DomainError("riesz: r0 must be positive");
    CostFunction c;
    c.kind_ = CostKind::riesz;
    c.riesz_s_ = exponent;
    c.r0_ = r0;
    return c;
}

CostFunction CostFunction::hard_sphere() {
    CostFunction c;
    c.kind_ = CostKind::hard_sphere;
    c.r0_ = 1.0;
    c.finite_range_ = 1.0;
    return c;
}

CostFunction CostFunction::step(double M, double cutoff) {
    if (!(M > 0.0)) throw DomainError("step: M must be positive");
    if (!(cutoff > 0.0)) throw DomainError("step: cutoff must be positive");
    CostFunction c;
    c.kind_ = CostKind::step;
    c.step_value_ = M / 2.0;
    c.step_cutoff_ = cutoff;
    c.r0_ = cutoff;
    c.finite_range_ = cutoff;
    return c;
}

CostFunction CostFunction::tabulated(std::vector<double> radii, std::vector<double> values,
                                     double r0) {
    if (radii.empty() || radii.size() != values.size())
        throw DomainError("tabulated: need matching non-empty r/value columns");
    for (size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1]))
            throw DomainError("tabulated: radii must be strictly increasing");
    for (double v : values)
        if (v < 0.0) throw DomainError("tabulated: negative cost value");
    CostFunction c;
    c.kind_ = CostKind::tabulated;
    c.tab_r_ = std::move(radii);
    c.tab_v_ = std::move(values);
    c.r0_ = r0;
    if (c.tab_v_.back() == 0.0) {
        size_t i = c.tab_v_.size();
        while (i > 0 && c.tab_v_[i - 1] == 0.0) --i;
        if (i < c.tab_v_.size()) c.finite_range_ = c.tab_r_[i];
    }
    c.build_envelope_tables();
    return c;
}

CostFunction CostFunction::custom(std::function<double(double)> evaluator, double r0,
                                  std::optional<double> finite_range) {
    CostFunction c;
    c.kind_ = CostKind::custom;
    c.custom_ = std::move(evaluator);
    c.r0_ = r0;
    c.finite_range_ = finite_range;
    c.build_envelope_tables();
    return c;
}

double CostFunction::operator()(double r) const {
    if (r < 0.0) throw DomainError("cost: negative distance");
    switch (kind_) {
        case CostKind::riesz:
            return r == 0.0 ? kInf : std::pow(r, -riesz_s_);
        case CostKind::hard_sphere:
            return r < 1.0 ? kInf : 0.0;
        case CostKind::step:
            return r < step_cutoff_ ? step_value_ : 0.0;
        case CostKind::tabulated: {
            auto it = std::upper_bound(tab_r_.begin(), tab_r_.end(), r);
            if (it == tab_r_.begin()) return tab_v_.front();
            return tab_v_[static_cast<size_t>(it - tab_r_.begin()) - 1];
        }
        case CostKind::custom:
            return custom_(r);
    }
    return 0.0;
}

void CostFunction::build_envelope_tables() {
    // Sampled support for sup/inf queries below r0; beyond r0 the cost is
    // non-increasing so envelopes reduce to direct evaluation.
    const int n = 1024;
    double hi = r0_ > 0.0 ? r0_ : 1.0;
    if (finite_range_) hi = std::max(hi, *finite_range_);
    env_grid_.resize(n);
    env_upper_.resize(n);
    env_lower_.resize(n);
    // log-spaced with a linear blend near zero
    for (int i = 0; i < n; ++i) {
        double u = static_cast<double>(i) / (n - 1);
        env_grid_[i] = hi * (std::expm1(4.0 * u) / std::expm1(4.0));
    }
    env_grid_.front() = 0.0;
    env_grid_.back() = hi;
    std::vector<double> samples(n);
    for (int i = 0; i < n; ++i) samples[i] = (*this)(env_grid_[i]);
    double run = (*this)(hi);  // sup over [hi, inf) = l(hi) by monotone tail
    for (int i = n - 1; i >= 0; --i) {
        run = std::max(run, samples[i]);
        env_upper_[i] = run;
    }
    double lo = kInf;
    for (int i = 0; i < n; ++i) {
        lo = std::min(lo, samples[i]);
        env_lower_[i] = lo;
    }
}

double CostFunction::upper_envelope(double r) const {
    if (r < 0.0) throw DomainError("upper_envelope: negative distance");
    if (r >= r0_) return (*this)(r);
    switch (kind_) {
        case CostKind::riesz:
            return (*this)(r);  // already non-increasing
        case CostKind::hard_sphere:
            return kInf;
        case CostKind::step:
            return step_value_;
        default: {
            auto it = std::lower_bound(env_grid_.begin(), env_grid_.end(), r);
            double v = (*this)(r);
            if (it != env_grid_.end())
                v = std::max(v, env_upper_[static_cast<size_t>(it - env_grid_.begin())]);
            return v;
        }
    }
}

double CostFunction::lower_envelope(double r, int dim) const {
    if (r < 0.0) throw DomainError("lower_envelope: negative distance");
    if (dim < 1) throw DomainError("lower_envelope: dim must be >= 1");
    const double reach = r * std::sqrt(static_cast<double>(dim));
    switch (kind_) {
        case CostKind::riesz:
            return reach == 0.0 ? kInf : std::pow(reach, -riesz_s_);
        case CostKind::hard_sphere:
            return reach < 1.0 ? kInf : 0.0;
        case CostKind::step:
            return reach < step_cutoff_ ? step_value_ : 0.0;
        default: {
            if (reach >= r0_) {
                // past r0 the cost is non-increasing: the inf sits at the right end
                double v = (*this)(reach);
                if (!env_lower_.empty()) v = std::min(v, env_lower_.back());
                return v;
            }
            auto it = std::upper_bound(env_grid_.begin(), env_grid_.end(), reach);
            double v = (*this)(reach);
            if (it != env_grid_.begin())
                v = std::min(v, env_lower_[static_cast<size_t>(it - env_grid_.begin()) - 1]);
            return v;
        }
    }
}

double CostFunction::pseudo_inverse(double level) const {
    if (level < 0.0) throw DomainError("pseudo_inverse: negative level");
    switch (kind_) {
        case CostKind::riesz:
            return level == 0.0 ? kInf : std::pow(level, -1.0 / riesz_s_);
        case CostKind::hard_sphere:
            return 1.0;
        case CostKind::step:
            return level < step_value_ ? step_cutoff_ : 0.0;
        default: {
            if (upper_envelope(0.0) <= level) return 0.0;
            // coarse scan over the envelope grid, then bisection in the bracket
            double lo = 0.0;
            double hi = env_grid_.back();
            if (upper_envelope(hi) > level) {
                // extend beyond the table along the monotone tail
                while (upper_envelope(hi) > level) {
                    lo = hi;
                    hi = std::max(2.0 * hi, 1.0);
                    if (hi > 1e18) return kInf;
                }
            } else {
                for (size_t i = env_grid_.size(); i-- > 0;) {
                    if (env_upper_[i] > level) {
                        lo = env_grid_[i];
                        hi = (i + 1 < env_grid_.size()) ? env_grid_[i + 1] : env_grid_.back();
                        break;
                    }
                }
            }
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                if (upper_envelope(mid) > level)
                    lo = mid;
                else
                    hi = mid;
            }
            return hi;  // supremum: right edge of the plateau
        }
    }
}

double adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                        double tol, int max_depth) {
    auto simpson = [&](double x0, double x2) {
        double x1 = 0.5 * (x0 + x2);
        return (x2 - x0) / 6.0 * (fn(x0) + 4.0 * fn(x1) + fn(x2));
    };
    std::function<double(double, double, double, int)> rec =
        [&](double x0, double x2, double whole, int depth) -> double {
        double x1 = 0.5 * (x0 + x2);
        double left = simpson(x0, x1);
        double right = simpson(x1, x2);
        if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
            return left + right + (left + right - whole) / 15.0;
        return rec(x0, x1, left, depth - 1) + rec(x1, x2, right, depth - 1);
    };
    return rec(a, b, simpson(a, b), max_depth);
}

HypothesisReport CostFunction::validate_hypotheses(int dim) const {
    if (dim < 1) throw DomainError("validate_hypotheses: dim must be >= 1");
    HypothesisReport rep;
    rep.h1 = (*this)(0.0) > 0.0;

    // H2: sample the tail for monotonicity and decay.
    {
        rep.h2 = true;
        const int ns = 256;
        double prev = upper_envelope(r0_);
        double hi = finite_range_ ? *finite_range_ : std::max(1.0, r0_) * 1e6;
        for (int i = 1; i <= ns; ++i) {
            double u = static_cast<double>(i) / ns;
            double r = r0_ * std::pow(hi / std::max(r0_, 1e-9), u);
            if (r0_ == 0.0) r = hi * u;
            double v = (*this)(r);
            if (v > prev * (1.0 + 1e-9) + 1e-12) {
                rep.h2 = false;
                rep.note = "not non-increasing beyond r0";
                break;
            }
            prev = v;
        }
        if (rep.h2 && !finite_range_) {
            double far = (*this)(std::max(1.0, r0_) * 1e6);
            if (!(far < 1e-3 || far < (*this)(std::max(r0_, 1e-9)) * 1e-3)) {
                rep.h2 = false;
                rep.note = "does not vanish at infinity";
            }
        }
    }

    // H3 tail integral
    switch (kind_) {
        case CostKind::riesz:
            if (riesz_s_ > dim) {
                rep.h3 = true;
                rep.tail_integral = std::pow(r0_, dim - riesz_s_) / (riesz_s_ - dim);
            } else {
                rep.h3 = false;
                rep.tail_integral = kInf;
                rep.note = "riesz tail divergent for s <= d";
            }
            break;
        case CostKind::hard_sphere:
            rep.h3 = true;
            rep.tail_integral = 0.0;
            break;
        case CostKind::step:
            rep.h3 = true;
            rep.tail_integral = r0_ >= step_cutoff_
                                    ? 0.0
                                    : step_value_ *
                                          (std::pow(step_cutoff_, dim) - std::pow(r0_, dim)) /
                                          dim;
            break;
        case CostKind::tabulated: {
            double acc = 0.0;
            if (r0_ < tab_r_.front())
                acc += tab_v_.front() *
                       (std::pow(tab_r_.front(), dim) - std::pow(r0_, dim)) / dim;
            for (size_t i = 0; i < tab_r_.size(); ++i) {
                double a = std::max(tab_r_[i], r0_);
                double b = (i + 1 < tab_r_.size()) ? tab_r_[i + 1] : a;
                if (i + 1 == tab_r_.size()) {
                    if (tab_v_[i] > 0.0) {
                        rep.h3 = false;
                        rep.tail_integral = kInf;
                        rep.note = "table does not end with 0";
                        return rep;
                    }
                    break;
                }
                if (b > a)
                    acc += tab_v_[i] * (std::pow(b, dim) - std::pow(a, dim)) / dim;
            }
            rep.h3 = true;
            rep.tail_integral = acc;
            break;
        }
        case CostKind::custom: {
            auto integrand = [&](double r) { return (*this)(r)*std::pow(r, dim - 1); };
            double lo = r0_;
            double hi = finite_range_ ? *finite_range_ : std::max(2.0 * r0_, 2.0);
            double acc = adaptive_simpson(integrand, lo, hi, 1e-12);
            if (!finite_range_) {
                bool converged = false;
                for (int dbl = 0; dbl < 60; ++dbl) {
                    double piece = adaptive_simpson(integrand, hi, 2.0 * hi, 1e-12);
                    acc += piece;
                    hi *= 2.0;
                    if (std::abs(piece) < 1e-10 * std::max(std::abs(acc), 1.0)) {
                        converged = true;
                        break;
                    }
                }
                if (!converged) {
                    rep.h3 = false;
                    rep.tail_integral = acc;
                    rep.truncation_radius = hi;
                    rep.note = "tail quadrature did not converge within 60 doublings";
                    return rep;
                }
            }
            rep.h3 = std::isfinite(acc);
            rep.tail_integral = acc;
            rep.truncation_radius = hi;
            break;
        }
    }
    return rep;
}

}  // namespace sr
