#pragma once

// Quadrature and special functions used by every closed-form expression.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace mmh {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class InfinityPolicy {
    Transform,  // x = a + s t / (1 - t) onto (0, 1)
    Truncate,   // integrate [a, a + truncate_length] and ignore the rest
};

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    InfinityPolicy infinity = InfinityPolicy::Transform;
    /// Length scale s of the semi-infinite substitution; pick it near where
    /// the integrand decays.
    double semi_infinite_scale = 1.0;
    double truncate_length = 0.0;

    void validate() const;

    QuadratureSpec with_tolerance(double rel, double abs) const
    {
        QuadratureSpec s = *this;
        s.rel_tol = rel;
        s.abs_tol = abs;
        return s;
    }
    QuadratureSpec with_scale(double scale) const
    {
        QuadratureSpec s = *this;
        s.semi_infinite_scale = scale;
        return s;
    }
};

/// Raised when adaptive quadrature runs out of subdivisions or meets a
/// non-finite integrand value. Carries the estimate reached so far.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double partial, double error_estimate)
        : std::runtime_error(what), partial_(partial), error_estimate_(error_estimate)
    {
    }
    double partial() const { return partial_; }
    double error_estimate() const { return error_estimate_; }

private:
    double partial_;
    double error_estimate_;
};

using RealFunction = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) quadrature over [a, b], b may be
/// +infinity. Stops once the summed error estimate is below
/// max(abs_tol, rel_tol |result|). Deterministic.
double integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec = {});

/// Single 15-point Kronrod rule on [a, b]; no error control. For short,
/// smooth pieces inside already-controlled computations.
double kronrod15(const RealFunction& f, double a, double b);

/// Generalized incomplete gamma, integral of x^(h-1) e^(-x) over [u, v].
/// v may be +infinity. Signed: u > v gives minus the integral over [v, u].
/// u = 0 requires h > 0.
double gen_inc_gamma(double h, double u, double v);

/// N (N!)^(-1/N), via the log-factorial.
double alzer_constant(int n);

/// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(int n, int k);

/// Neumaier compensated summation.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// 1 - (1 + z)^(-n) without cancellation for small z.
inline double one_minus_inverse_power(double z, int n)
{
    if (z == std::numeric_limits<double>::infinity())
        return 1.0;
    return -std::expm1(-n * std::log1p(z));
}

}  // namespace mmh
