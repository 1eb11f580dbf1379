#include "mmh/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmh {

using std::numbers::pi;

namespace {

struct StateConstants {
    double alpha;
    double intercept;
    int nakagami;
};

StateConstants constants(LinkState state, const SystemParams& p)
{
    if (state == LinkState::Los)
        return {p.alpha_los, p.intercept_los, p.nakagami_los};
    return {p.alpha_nlos, p.intercept_nlos, p.nakagami_nlos};
}

double blockage_weight(LinkState state, double t, double beta)
{
    return state == LinkState::Los ? std::exp(-beta * t) : -std::expm1(-beta * t);
}

// Integrand of the aggregate exponent without the 2 pi lambda prefactor.
struct ExponentIntegrand {
    LinkState state;
    double s;
    StateConstants c;
    double beta;
    const GainDistribution* gains;

    double operator()(double t) const
    {
        const double w = blockage_weight(state, t, beta);
        if (w == 0.0)
            return 0.0;
        const double base = s * c.intercept / (c.nakagami * std::pow(t, c.alpha));
        double acc = 0.0;
        for (int i = 0; i < 5; ++i) {
            const double d = gains->gains[i];
            const double pr = gains->probs[i];
            if (d == 0.0 || pr == 0.0)
                continue;
            acc += pr * one_minus_inverse_power(base * d, c.nakagami);
        }
        return acc * w * t;
    }

    // distance where the largest-gain term reaches z = 1
    double knee() const
    {
        double dmax = 0.0;
        for (int i = 0; i < 5; ++i)
            if (gains->probs[i] > 0.0)
                dmax = std::max(dmax, gains->gains[i]);
        return std::pow(s * dmax * c.intercept / c.nakagami, 1.0 / c.alpha);
    }
};

double exponent_integral(const ExponentIntegrand& f, double lower, double rel_tol = 1e-10)
{
    if (f.s == 0.0)
        return 0.0;
    if (f.s == kInf && f.state == LinkState::Nlos)
        return kInf;
    const double knee = f.knee();
    double scale = f.state == LinkState::Los ? std::min(knee, 1.0 / f.beta) : knee;
    scale = std::max(lower, scale);
    if (!std::isfinite(scale) || scale <= 0.0)
        scale = std::max(lower, 1.0 / f.beta);
    QuadratureSpec spec;
    spec.rel_tol = rel_tol;
    spec.abs_tol = 1e-300;
    spec.max_subdivisions = 5000;
    spec.semi_infinite_scale = scale;
    // split at the knee when it lies inside so both sides are smooth
    if (knee > lower && std::isfinite(knee))
        return integrate(std::cref(f), lower, knee, spec) +
               integrate(std::cref(f), knee, kInf, spec.with_scale(std::max(knee, scale)));
    return integrate(std::cref(f), lower, kInf, spec);
}

// Tail integrals of an exponent integrand tabulated on a geometric grid from
// r_g; evaluation adds one Kronrod panel on the partial segment.
class ExponentTable {
public:
    ExponentTable(const ExponentIntegrand& f, double r_g) : f_(f)
    {
        constexpr double kRatio = 1.04;
        constexpr double kSpan = 1e6;
        for (double x = r_g; x < r_g * kSpan; x *= kRatio)
            grid_.push_back(x);
        grid_.push_back(r_g * kSpan);
        tail_.assign(grid_.size(), 0.0);
        tail_.back() = exponent_integral(f_, grid_.back());
        for (std::size_t j = grid_.size() - 1; j-- > 0;)
            tail_[j] = tail_[j + 1] + kronrod15(std::cref(f_), grid_[j], grid_[j + 1]);
    }

    double operator()(double x) const
    {
        x = std::max(x, grid_.front());
        if (x >= grid_.back())
            return exponent_integral(f_, x);
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
        const std::size_t j = static_cast<std::size_t>(it - grid_.begin());
        return tail_[j] + kronrod15(std::cref(f_), x, grid_[j]);
    }

private:
    ExponentIntegrand f_;
    std::vector<double> grid_;
    std::vector<double> tail_;
};

double inverse_power(double z, int n)
{
    return std::exp(-n * std::log1p(z));
}

}  // namespace

void EnergyCoverageQuery::validate() const
{
    if (!(threshold >= 0.0))
        throw std::invalid_argument("EnergyCoverageQuery: threshold must be nonnegative");
    if (approx_terms < 1)
        throw std::invalid_argument("EnergyCoverageQuery: approx_terms must be >= 1");
}

void SwiptQuery::validate() const
{
    if (!(sinr_threshold > 0.0))
        throw std::invalid_argument("SwiptQuery: sinr_threshold must be positive");
    if (!(energy_threshold >= 0.0))
        throw std::invalid_argument("SwiptQuery: energy_threshold must be nonnegative");
    if (!(split_ratio > 0.0 && split_ratio < 1.0))
        throw std::invalid_argument("SwiptQuery: split_ratio must lie strictly inside (0, 1)");
}

double clamp_probability(double p, const char* what)
{
    if (!std::isfinite(p) || p < -1e-6 || p > 1.0 + 1e-6)
        throw NumericalError(std::string(what) + ": probability outside [0, 1] (" + std::to_string(p) + ")", p, 0.0);
    return std::clamp(p, 0.0, 1.0);
}

double effective_threshold(double psi, const SystemParams& params)
{
    return std::max(psi / params.rectifier_eff, params.activation_threshold);
}

double aggregate_exponent(LinkState state, double s, double x, const SystemParams& params,
                          const GainDistribution& gains)
{
    if (s < 0.0)
        throw std::invalid_argument("aggregate_exponent: negative scale");
    const ExponentIntegrand f{state, s, constants(state, params), params.blockage_beta, &gains};
    const double v = exponent_integral(f, std::max(x, params.min_distance));
    return 2.0 * pi * params.bs_density * v;
}

double interference_exponent_los(int k, double psi_hat, double x, const SystemParams& params,
                                 const GainDistribution& gains, int approx_terms)
{
    if (k < 0 || !(psi_hat > 0.0))
        throw std::invalid_argument("interference_exponent_los: need k >= 0 and psi_hat > 0");
    if (k == 0)
        return 0.0;
    const double s = alzer_constant(approx_terms) * k * params.tx_power / psi_hat;
    return aggregate_exponent(LinkState::Los, s, x, params, gains);
}

double interference_exponent_nlos(int k, double psi_hat, double x, const SystemParams& params,
                                  const GainDistribution& gains, int approx_terms)
{
    if (k < 0 || !(psi_hat > 0.0))
        throw std::invalid_argument("interference_exponent_nlos: need k >= 0 and psi_hat > 0");
    if (k == 0)
        return 0.0;
    const double s = alzer_constant(approx_terms) * k * params.tx_power / psi_hat;
    return aggregate_exponent(LinkState::Nlos, s, x, params, gains);
}

// ---------------------------------------------------------------------------

CoverageModel::CoverageModel(const SystemParams& params, const GainDistribution& gains, int approx_terms)
    : params_(params), gains_(gains), geometry_(params), approx_terms_(approx_terms),
      alzer_(alzer_constant(approx_terms))
{
    gains_.validate();
    if (!(gains_.aligned_gain() > 0.0))
        throw std::invalid_argument("CoverageModel: aligned gain must be positive");
}

double CoverageModel::connected_ccdf(double u, bool serving_factor) const
{
    const SystemParams& p = params_;
    const double r_g = p.min_distance;
    const double lam2pi = 2.0 * pi * p.bs_density;
    const double d1 = gains_.aligned_gain();

    QuadratureSpec outer;
    outer.rel_tol = 1e-9;
    outer.abs_tol = 1e-12;
    outer.semi_infinite_scale = geometry_.distance_scale();

    auto f_los = [&](double r) { return serving_joint_density(LinkState::Los, r, p); };
    auto f_nlos = [&](double r) { return serving_joint_density(LinkState::Nlos, r, p); };
    const double mass = integrate(f_los, r_g, kInf, outer) + integrate(f_nlos, r_g, kInf, outer);

    if (!(u > 0.0))
        return serving_factor ? clamp_probability(mass, "connected_ccdf") : 1.0;

    const StateConstants cl = constants(LinkState::Los, p);
    const StateConstants cn = constants(LinkState::Nlos, p);
    CompensatedSum total;
    total.add(mass);
    for (int k = 1; k <= approx_terms_; ++k) {
        const double s = alzer_ * k * p.tx_power / u;
        const ExponentTable up_l({LinkState::Los, s, cl, p.blockage_beta, &gains_}, r_g);
        const ExponentTable up_n({LinkState::Nlos, s, cn, p.blockage_beta, &gains_}, r_g);
        auto los_integrand = [&](double r) {
            const double f = f_los(r);
            if (f == 0.0)
                return 0.0;
            double zeta = 1.0;
            if (serving_factor)
                zeta = inverse_power(s * d1 * cl.intercept / (cl.nakagami * std::pow(r, cl.alpha)), cl.nakagami);
            if (zeta == 0.0)
                return 0.0;
            return zeta * std::exp(-lam2pi * (up_l(r) + up_n(rho_los_map(r, p)))) * f;
        };
        auto nlos_integrand = [&](double r) {
            const double f = f_nlos(r);
            if (f == 0.0)
                return 0.0;
            double zeta = 1.0;
            if (serving_factor)
                zeta = inverse_power(s * d1 * cn.intercept / (cn.nakagami * std::pow(r, cn.alpha)), cn.nakagami);
            if (zeta == 0.0)
                return 0.0;
            return zeta * std::exp(-lam2pi * (up_l(rho_nlos_map(r, p)) + up_n(r))) * f;
        };
        const double term = integrate(los_integrand, r_g, kInf, outer) + integrate(nlos_integrand, r_g, kInf, outer);
        total.add((k % 2 ? -1.0 : 1.0) * binomial(approx_terms_, k) * term);
    }
    return clamp_probability(total.value(), "connected_ccdf");
}

double CoverageModel::nonconnected_ccdf(double u) const
{
    if (!(u > 0.0))
        return 1.0;
    const SystemParams& p = params_;
    CompensatedSum total;
    total.add(1.0);
    for (int k = 1; k <= approx_terms_; ++k) {
        const double s = alzer_ * k * p.tx_power / u;
        const double e = aggregate_exponent(LinkState::Los, s, p.min_distance, p, gains_) +
                         aggregate_exponent(LinkState::Nlos, s, p.min_distance, p, gains_);
        total.add((k % 2 ? -1.0 : 1.0) * binomial(approx_terms_, k) * std::exp(-e));
    }
    return clamp_probability(total.value(), "nonconnected_ccdf");
}

double CoverageModel::energy_coverage_connected(double psi) const
{
    if (!(psi >= 0.0))
        throw std::invalid_argument("energy_coverage_connected: threshold must be nonnegative");
    return connected_ccdf(effective_threshold(psi, params_), true);
}

double CoverageModel::energy_coverage_nonconnected(double psi) const
{
    if (!(psi >= 0.0))
        throw std::invalid_argument("energy_coverage_nonconnected: threshold must be nonnegative");
    return nonconnected_ccdf(effective_threshold(psi, params_));
}

double CoverageModel::energy_coverage_connected_fast(double psi) const
{
    if (!(psi >= 0.0))
        throw std::invalid_argument("energy_coverage_connected_fast: threshold must be nonnegative");
    const SystemParams& p = params_;
    const double lam = p.bs_density;
    const double rb = geometry_.los_ball();
    const double r_g = p.min_distance;
    if (r_g >= rb)
        return 0.0;
    const double m = lam * pi * rb * rb;
    const double a_tilde = m * std::exp(-m);
    const double alpha = p.alpha_los;
    const double h = -2.0 / alpha;
    const double psi_hat = effective_threshold(psi, p);
    const double d1 = gains_.aligned_gain();
    const int nl = p.nakagami_los;

    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    spec.abs_tol = 1e-13;
    const double t0 = (r_g / rb) * (r_g / rb);

    CompensatedSum total;
    const int kmax = psi_hat > 0.0 ? approx_terms_ : 0;
    for (int k = 0; k <= kmax; ++k) {
        auto integrand = [&](double t) {
            const double x = std::sqrt(t) * rb;
            double expo = 0.0;
            double zeta = 1.0;
            if (k == 0) {
                for (int i = 0; i < 4; ++i)
                    expo += pi * lam * gains_.probs[i] * (rb * rb - x * x);
            } else {
                const double base = alzer_ * k * p.tx_power * p.intercept_los / psi_hat;
                zeta = inverse_power(base * d1 / (nl * std::pow(x, alpha)), nl);
                for (int i = 0; i < 4; ++i) {
                    const double pr = gains_.probs[i];
                    const double w = base * gains_.gains[i];
                    if (pr == 0.0)
                        continue;
                    if (w == 0.0) {
                        expo += pi * lam * pr * (rb * rb - x * x);
                        continue;
                    }
                    const double g = gen_inc_gamma(h, w * std::pow(x, -alpha), w * std::pow(rb, -alpha));
                    expo -= 2.0 * pi * lam / alpha * pr * std::pow(w, 2.0 / alpha) * g;
                }
            }
            return zeta * std::exp(expo);
        };
        const double term = integrate(integrand, t0, 1.0, spec);
        total.add((k % 2 ? -1.0 : 1.0) * binomial(approx_terms_, k) * term);
    }
    return clamp_probability(a_tilde * total.value(), "energy_coverage_connected_fast");
}

double CoverageModel::psi_los(double x) const
{
    const SystemParams& p = params_;
    double mean_gain = 0.0;
    for (int i = 0; i < 4; ++i)
        mean_gain += gains_.gains[i] * gains_.probs[i];
    const double kappa = 2.0 * pi * p.bs_density * p.tx_power;
    const double b = p.blockage_beta;
    const double tail = std::pow(b, p.alpha_los - 2.0) * gen_inc_gamma(2.0 - p.alpha_los, b * x, kInf);
    return kappa * p.intercept_los * mean_gain * tail;
}

double CoverageModel::psi_nlos(double x) const
{
    const SystemParams& p = params_;
    if (!(p.alpha_nlos > 2.0))
        throw std::invalid_argument("psi_nlos: alpha_nlos must exceed 2 for a finite mean");
    double mean_gain = 0.0;
    for (int i = 0; i < 4; ++i)
        mean_gain += gains_.gains[i] * gains_.probs[i];
    const double kappa = 2.0 * pi * p.bs_density * p.tx_power;
    const double b = p.blockage_beta;
    const double an = p.alpha_nlos;
    QuadratureSpec spec;
    spec.rel_tol = 1e-11;
    spec.abs_tol = 1e-300;
    spec.semi_infinite_scale = std::max(x, 1.0 / b);
    // x^-(aN-2)/(aN-2) - int_x^inf t^(1-aN) p(t) dt, written without the cancellation
    auto f = [&](double t) { return std::pow(t, 1.0 - an) * -std::expm1(-b * t); };
    const double v = x < 1.0 / b ? integrate(f, x, 1.0 / b, spec) + integrate(f, 1.0 / b, kInf, spec)
                                 : integrate(f, x, kInf, spec);
    return kappa * p.intercept_nlos * mean_gain * v;
}

double CoverageModel::avg_power_connected_limit() const
{
    const SystemParams& p = params_;
    const double r_g = p.min_distance;
    const double d1 = gains_.aligned_gain();
    QuadratureSpec spec;
    spec.rel_tol = 1e-9;
    spec.abs_tol = 1e-300;
    spec.semi_infinite_scale = geometry_.distance_scale();
    auto los = [&](double r) {
        const double f = serving_joint_density(LinkState::Los, r, p);
        if (f == 0.0)
            return 0.0;
        const double mean = p.tx_power * d1 * p.intercept_los * std::pow(r, -p.alpha_los) + psi_los(r) +
                            psi_nlos(std::max(rho_los_map(r, p), r_g));
        return mean * f;
    };
    auto nlos = [&](double r) {
        const double f = serving_joint_density(LinkState::Nlos, r, p);
        if (f == 0.0)
            return 0.0;
        const double mean = p.tx_power * d1 * p.intercept_nlos * std::pow(r, -p.alpha_nlos) +
                            psi_los(std::max(rho_nlos_map(r, p), r_g)) + psi_nlos(r);
        return mean * f;
    };
    return p.rectifier_eff * (integrate(los, r_g, kInf, spec) + integrate(nlos, r_g, kInf, spec));
}

double CoverageModel::avg_power_connected_approx() const
{
    const SystemParams& p = params_;
    const double rb = geometry_.los_ball();
    if (p.min_distance >= rb)
        return 0.0;
    const double lp = p.bs_density * pi;
    const double kappa = 2.0 * pi * p.bs_density * p.tx_power;
    const double al = p.alpha_los;
    const double g = gen_inc_gamma(1.0 - 0.5 * al, lp * p.min_distance * p.min_distance, lp * rb * rb);
    return p.rectifier_eff * kappa * gains_.aligned_gain() * p.intercept_los * 0.5 * std::pow(lp, 0.5 * al - 1.0) * g;
}

double CoverageModel::avg_power_nonconnected_limit() const
{
    const double r_g = params_.min_distance;
    return params_.rectifier_eff * (psi_los(r_g) + psi_nlos(r_g));
}

namespace {

// Largest mean power one station can deliver: aligned at r_g. The
// coverage curve has decayed like (y_max / x)^N long before 1e3 y_max.
double power_ceiling(const SystemParams& p, const GainDistribution& g)
{
    const double link = std::max(p.intercept_los * std::pow(p.min_distance, -p.alpha_los),
                                 p.intercept_nlos * std::pow(p.min_distance, -p.alpha_nlos));
    return 1e3 * p.tx_power * g.aligned_gain() * link;
}

// psi F(psi) + integral of F over [psi, inf). F spans many decades of
// received power, so the integral runs over ln x one decade at a time. F is
// an alternating sum of order-one terms, so below ~1e-12 it is cancellation
// noise; the sweep stops once F < 1e-11 or x F(x) < 1e-9 of the mean, and
// each decade's absolute tolerance sits above that noise. Past the stop F
// falls like x^-N, so the dropped tail is below x F(x) / (N - 1).
// Below 1e-9 of the mean F is flat to within that fraction.
template <class Ccdf>
double average_above(double psi, double scale, double ceiling, Ccdf ccdf)
{
    constexpr double noise = 1e-12;
    const double f_psi = ccdf(psi);
    double lo = psi, head = 0.0;
    const double floor = 1e-9 * scale;
    if (psi < floor) {
        head = (floor - psi) * f_psi;
        lo = floor;
    }
    const double decade = std::log(10.0);
    CompensatedSum body;
    for (double a = lo; a < ceiling; a *= 10.0) {
        const double end = 10.0 * a;
        QuadratureSpec spec;
        spec.rel_tol = 1e-7;
        spec.abs_tol = std::max(1e-9 * scale, noise * end * decade);
        body.add(integrate(
            [&](double u) {
                const double x = a * std::exp(u);
                return ccdf(x) * x;
            },
            0.0, decade, spec));
        const double f_end = ccdf(end);
        if (f_end < 10.0 * noise || end * f_end < 1e-9 * scale)
            break;
    }
    return psi * f_psi + head + body.value();
}

}  // namespace

double CoverageModel::avg_power_connected(double psi) const
{
    if (!(psi >= params_.activation_threshold))
        throw std::invalid_argument("avg_power_connected: threshold must be >= activation_threshold");
    const double scale = avg_power_connected_limit();
    return average_above(psi, scale, power_ceiling(params_, gains_),
                         [&](double x) { return energy_coverage_connected(x); });
}

double CoverageModel::avg_power_nonconnected(double psi) const
{
    if (!(psi >= params_.activation_threshold))
        throw std::invalid_argument("avg_power_nonconnected: threshold must be >= activation_threshold");
    const double scale = avg_power_nonconnected_limit();
    return average_above(psi, scale, power_ceiling(params_, gains_),
                         [&](double x) { return energy_coverage_nonconnected(x); });
}

double CoverageModel::sinr_coverage_state(LinkState state, double t, double noise) const
{
    const SystemParams& p = params_;
    const StateConstants c = constants(state, p);
    const double cst = alzer_constant(c.nakagami);
    const double d1 = gains_.aligned_gain();
    QuadratureSpec outer;
    outer.rel_tol = 1e-8;
    outer.abs_tol = 1e-12;
    outer.semi_infinite_scale = geometry_.distance_scale();

    CompensatedSum total;
    for (int k = 1; k <= c.nakagami; ++k) {
        auto integrand = [&](double r) {
            const double f = serving_joint_density(state, r, p);
            if (f == 0.0)
                return 0.0;
            const double ra = std::pow(r, c.alpha);
            const double noise_exp = k * cst * ra * t * noise / (p.tx_power * c.intercept * d1);
            if (noise_exp > 745.0)
                return 0.0;
            const double s = cst * k * t * ra / (d1 * c.intercept);
            double e;
            if (state == LinkState::Los)
                e = aggregate_exponent(LinkState::Los, s, r, p, gains_) +
                    aggregate_exponent(LinkState::Nlos, s, rho_los_map(r, p), p, gains_);
            else
                e = aggregate_exponent(LinkState::Los, s, rho_nlos_map(r, p), p, gains_) +
                    aggregate_exponent(LinkState::Nlos, s, r, p, gains_);
            return std::exp(-noise_exp - e) * f;
        };
        const double term = integrate(integrand, p.min_distance, kInf, outer);
        total.add((k % 2 ? 1.0 : -1.0) * binomial(c.nakagami, k) * term);
    }
    return total.value();
}

double CoverageModel::sinr_coverage(const SwiptQuery& q) const
{
    q.validate();
    const double noise = params_.noise_power + params_.conversion_noise / q.split_ratio;
    const double v = sinr_coverage_state(LinkState::Los, q.sinr_threshold, noise) +
                     sinr_coverage_state(LinkState::Nlos, q.sinr_threshold, noise);
    return clamp_probability(v, "sinr_coverage");
}

double CoverageModel::interference_ccdf(double mu) const
{
    if (!(mu > 0.0))
        return 1.0;
    return connected_ccdf(mu, false);
}

SwiptTerms CoverageModel::swipt_terms(const SwiptQuery& q) const
{
    q.validate();
    const SystemParams& p = params_;
    const double nu = q.split_ratio;
    const double t = q.sinr_threshold;
    const double psi_hat = effective_threshold(q.energy_threshold, p);
    SwiptTerms out;
    out.mu = psi_hat / ((1.0 - nu) * (1.0 + t)) - p.noise_power - p.conversion_noise / (nu * (1.0 + 1.0 / t));
    out.phi = psi_hat / (1.0 - nu);
    out.sinr_coverage = sinr_coverage(q);
    out.interference_ccdf = interference_ccdf(out.mu);
    out.energy_coverage = connected_ccdf(out.phi - p.noise_power, true);
    out.success = clamp_probability(
        out.sinr_coverage * out.interference_ccdf + out.energy_coverage * (1.0 - out.interference_ccdf),
        "swipt_success");
    return out;
}

// ---------------------------------------------------------------------------

double energy_coverage_connected(const EnergyCoverageQuery& q, const SystemParams& params, const GainDistribution& gains)
{
    q.validate();
    return CoverageModel(params, gains, q.approx_terms).energy_coverage_connected(q.threshold);
}

double energy_coverage_connected_fast(const EnergyCoverageQuery& q, const SystemParams& params,
                                      const GainDistribution& gains)
{
    q.validate();
    return CoverageModel(params, gains, q.approx_terms).energy_coverage_connected_fast(q.threshold);
}

double energy_coverage_nonconnected(const EnergyCoverageQuery& q, const SystemParams& params,
                                    const GainDistribution& gains)
{
    q.validate();
    return CoverageModel(params, gains, q.approx_terms).energy_coverage_nonconnected(q.threshold);
}

double energy_coverage(const EnergyCoverageQuery& q, const SystemParams& params, const GainDistribution& gains)
{
    return q.mode == CoverageMode::Connected ? energy_coverage_connected(q, params, gains)
                                             : energy_coverage_nonconnected(q, params, gains);
}

double mix_coverage(double eps, double p_con, double p_ncon)
{
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("overall_energy_coverage: eps must lie in [0, 1]");
    if (eps == 0.0)
        return p_ncon;
    if (eps == 1.0)
        return p_con;
    return p_ncon + eps * (p_con - p_ncon);
}

double overall_energy_coverage(double eps, double psi_con, double psi_ncon, const SystemParams& params,
                               const GainDistribution& gains, int approx_terms)
{
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("overall_energy_coverage: eps must lie in [0, 1]");
    const CoverageModel m(params, gains, approx_terms);
    const double pc = eps > 0.0 ? m.energy_coverage_connected(psi_con) : 0.0;
    const double pn = eps < 1.0 ? m.energy_coverage_nonconnected(psi_ncon) : 0.0;
    return mix_coverage(eps, pc, pn);
}

double avg_power_connected(double psi, const SystemParams& params, const GainDistribution& gains)
{
    return CoverageModel(params, gains).avg_power_connected(psi);
}

double avg_power_connected_limit(const SystemParams& params, const GainDistribution& gains)
{
    return CoverageModel(params, gains).avg_power_connected_limit();
}

double avg_power_connected_approx(const SystemParams& params, const GainDistribution& gains)
{
    return CoverageModel(params, gains).avg_power_connected_approx();
}

double avg_power_nonconnected(double psi, const SystemParams& params, const GainDistribution& gains)
{
    return CoverageModel(params, gains).avg_power_nonconnected(psi);
}

double avg_power_nonconnected_limit(const SystemParams& params, const GainDistribution& gains)
{
    return CoverageModel(params, gains).avg_power_nonconnected_limit();
}

double sinr_coverage(const SwiptQuery& q, const SystemParams& params, const GainDistribution& gains)
{
    return CoverageModel(params, gains).sinr_coverage(q);
}

double interference_ccdf(double mu, const SystemParams& params, const GainDistribution& gains)
{
    return CoverageModel(params, gains).interference_ccdf(mu);
}

double swipt_success(const SwiptQuery& q, const SystemParams& params, const GainDistribution& gains)
{
    return CoverageModel(params, gains).swipt_success(q);
}

}  // namespace mmh
