#include "mmh/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace mmh {

namespace {

// Gauss-Kronrod 7/15 nodes on [-1, 1] (symmetric half, centre last).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss 7-point weights for the odd-indexed Kronrod nodes (1, 3, 5) and centre.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment rule15(const RealFunction& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        kron += kWgk[j] * (f1 + f2);
        if (j % 2 == 1)
            gauss += kWg[j / 2] * (f1 + f2);
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

double integrate_finite(const RealFunction& f, double a, double b, const QuadratureSpec& spec)
{
    if (a == b)
        return 0.0;
    std::priority_queue<Segment> heap;
    Segment first = rule15(f, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int subdivisions = 1;
    auto check_finite = [&]() {
        if (!std::isfinite(total) || !std::isfinite(total_err))
            throw NumericalError("integrate: non-finite integrand on [" + std::to_string(a) + ", " +
                                     std::to_string(b) + "]",
                                 total, total_err);
    };
    check_finite();
    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
        if (subdivisions >= spec.max_subdivisions)
            throw NumericalError("integrate: subdivision limit reached", total, total_err);
        Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // interval collapsed to adjacent doubles; nothing left to refine
            throw NumericalError("integrate: interval underflow", total, total_err);
        }
        Segment left = rule15(f, worst.a, mid);
        Segment right = rule15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
        check_finite();
        // periodically re-sum to keep the running totals from drifting
        if (subdivisions % 64 == 0) {
            std::priority_queue<Segment> copy = heap;
            CompensatedSum v, e;
            while (!copy.empty()) {
                v.add(copy.top().value);
                e.add(copy.top().error);
                copy.pop();
            }
            total = v.value();
            total_err = e.value();
        }
    }
    CompensatedSum v;
    while (!heap.empty()) {
        v.add(heap.top().value);
        heap.pop();
    }
    return v.value();
}

}  // namespace

void QuadratureSpec::validate() const
{
    if (!(rel_tol > 0.0 && abs_tol > 0.0))
        throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    if (!(semi_infinite_scale > 0.0))
        throw std::invalid_argument("QuadratureSpec: semi_infinite_scale must be positive");
    if (infinity == InfinityPolicy::Truncate && !(truncate_length > 0.0))
        throw std::invalid_argument("QuadratureSpec: truncate policy needs truncate_length > 0");
}

double kronrod15(const RealFunction& f, double a, double b)
{
    return rule15(f, a, b).value;
}

double integrate(const RealFunction& f, double a, double b, const QuadratureSpec& spec)
{
    spec.validate();
    if (std::isnan(a) || std::isnan(b) || a == kInf || b == -kInf)
        throw std::invalid_argument("integrate: invalid bounds");
    if (b < a)
        return -integrate(f, b, a, spec);
    if (a == -kInf)
        throw std::invalid_argument("integrate: lower bound must be finite");
    if (b != kInf)
        return integrate_finite(f, a, b, spec);
    if (spec.infinity == InfinityPolicy::Truncate)
        return integrate_finite(f, a, a + spec.truncate_length, spec);
    const double s = spec.semi_infinite_scale;
    auto g = [&](double t) {
        if (t >= 1.0)
            return 0.0;
        const double om = 1.0 - t;
        const double x = a + s * t / om;
        if (x == kInf)
            return 0.0;
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * s / (om * om);
    };
    return integrate_finite(g, 0.0, 1.0, spec);
}

namespace {

// x^(h-1) e^(-x) on [u, v] with 0 < u < v < inf, in the variable s = ln x.
double gamma_log_space(double h, double u, double v, const QuadratureSpec& spec)
{
    auto g = [h](double s) { return std::exp(h * s - std::exp(s)); };
    const double lu = std::log(u);
    const double lv = std::log(v);
    // split at the mode of the integrand in s (x = h) so the peak sits on a node boundary
    if (h > u && h < v)
        return integrate(g, lu, std::log(h), spec) + integrate(g, std::log(h), lv, spec);
    return integrate(g, lu, lv, spec);
}

// Lower incomplete gamma by its power series, accurate for x <= 1.
double lower_gamma_series(double h, double x)
{
    double term = 1.0 / h;
    double sum = term;
    for (int n = 1; n < 200; ++n) {
        term *= x / (h + n);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return std::exp(h * std::log(x) - x) * sum;
}

}  // namespace

double gen_inc_gamma(double h, double u, double v)
{
    if (std::isnan(h) || std::isnan(u) || std::isnan(v))
        throw std::invalid_argument("gen_inc_gamma: NaN argument");
    if (u < 0.0 || v < 0.0)
        throw std::invalid_argument("gen_inc_gamma: bounds must be nonnegative");
    if (u == v)
        return 0.0;
    if (u > v)
        return -gen_inc_gamma(h, v, u);
    if (u == 0.0 && !(h > 0.0))
        throw std::invalid_argument("gen_inc_gamma: h must be positive when the lower bound is 0");

    QuadratureSpec spec;
    spec.rel_tol = 1e-13;
    spec.abs_tol = 1e-300;
    spec.max_subdivisions = 4000;

    if (u == 0.0 && v == kInf)
        return std::tgamma(h);

    // effective upper end: past max(u, h) + 60 + 2|h| the remaining mass is
    // below e^-60 of the peak
    const double upper = v == kInf ? std::max(u, std::abs(h)) + 60.0 + 2.0 * std::abs(h) : v;
    if (u == 0.0) {
        const double split = std::min(upper, 1.0);
        double value = lower_gamma_series(h, split);
        if (upper > split)
            value += gamma_log_space(h, split, upper, spec);
        return value;
    }
    if (upper <= u)
        return 0.0;
    return gamma_log_space(h, u, upper, spec);
}

double alzer_constant(int n)
{
    if (n < 1)
        throw std::invalid_argument("alzer_constant: N must be >= 1");
    return n * std::exp(-std::lgamma(n + 1.0) / n);
}

double binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j)
        r = r * (n - k + j) / j;
    return std::round(r);
}

void CompensatedSum::add(double x)
{
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

}  // namespace mmh
