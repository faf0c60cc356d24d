#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sr/common.hpp"

namespace sr {

enum class CostKind { riesz, hard_sphere, step, tabulated, custom };

std::string to_string(CostKind k);

struct HypothesisReport {
    bool h1 = false;          // l(0) > 0
    bool h2 = false;          // non-increasing past r0, vanishing at infinity
    bool h3 = false;          // tail integral finite
    double tail_integral = 0.0;
    double truncation_radius = 0.0;  // where the quadrature stopped (0 for closed forms)
    std::string note;

    bool all_pass() const { return h1 && h2 && h3; }
};

/// Radial two-point cost l(r) together with its regularity metadata.
/// Values live in the extended nonnegative reals; +inf is first class.
/// Immutable after construction; all queries are pure and thread-safe.
class CostFunction {
public:
    static CostFunction riesz(double exponent, double r0 = 1.0);
    static CostFunction hard_sphere();
    static CostFunction step(double M, double cutoff = 1.0);
    /// Right-continuous step interpolation of a (r, value) table with
    /// strictly increasing r. The last value holds on [r_last, +inf);
    /// end the table with 0 for a compactly supported cost.
    static CostFunction tabulated(std::vector<double> radii, std::vector<double> values,
                                  double r0);
    static CostFunction custom(std::function<double(double)> evaluator, double r0,
                               std::optional<double> finite_range = std::nullopt);

    CostKind kind() const { return kind_; }
    double r0() const { return r0_; }
    std::optional<double> finite_range() const { return finite_range_; }
    double riesz_exponent() const { return riesz_s_; }
    double step_height() const { return step_value_; }   // the value below the cutoff (M/2)
    double step_cutoff() const { return step_cutoff_; }

    /// l(r). Throws DomainError for r < 0.
    double operator()(double r) const;

    /// l_plus(r) = sup { l(s) : s >= r }. Equals l on [r0, inf).
    double upper_envelope(double r) const;

    /// l_minus(r) = inf { l(s) : 0 <= s <= r*sqrt(d) }.
    double lower_envelope(double r, int dim) const;

    /// sup { t >= 0 : l_plus(t) > level }; 0 when level >= l_plus(0).
    double pseudo_inverse(double level) const;

    /// Tail integral int_{r0}^inf l(r) r^{d-1} dr, closed form when available.
    HypothesisReport validate_hypotheses(int dim) const;

private:
    CostFunction() = default;
    void build_envelope_tables();

    CostKind kind_ = CostKind::custom;
    double r0_ = 0.0;
    std::optional<double> finite_range_;

    double riesz_s_ = 0.0;
    double step_value_ = 0.0;
    double step_cutoff_ = 1.0;
    std::vector<double> tab_r_, tab_v_;
    std::function<double(double)> custom_;

    // Sampled envelope support for tabulated/custom kinds.
    std::vector<double> env_grid_;
    std::vector<double> env_upper_;   // suffix max of samples
    std::vector<double> env_lower_;   // prefix min of samples
};

/// Adaptive Simpson quadrature of fn on [a, b] to the given tolerance.
double adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                        double tol, int max_depth = 40);

}  // namespace sr
