#pragma once

// Closed-form coverage and harvested-power expressions, evaluated by
// quadrature.

#include "mmh/core_model.hpp"
#include "mmh/geometry.hpp"
#include "mmh/numerics.hpp"

namespace mmh {

enum class CoverageMode { Connected, Nonconnected };

struct EnergyCoverageQuery {
    double threshold = 0.0;  // psi, watts of harvested energy
    int approx_terms = 5;    // N
    CoverageMode mode = CoverageMode::Connected;

    void validate() const;
};

struct SwiptQuery {
    double sinr_threshold = 1.0;    // T, linear
    double energy_threshold = 0.0;  // psi, watts
    double split_ratio = 0.5;       // nu

    void validate() const;
};

/// psi_hat = max(psi / xi, psi_min).
double effective_threshold(double psi, const SystemParams& params);

/// 2 pi lambda sum_i p_i int_{max(x, r_g)}^inf (1 - [1 + s D_i C / (N t^alpha)]^-N) w(t) t dt
/// with the constants of `state` and w = p for LOS, 1 - p for NLOS.
double aggregate_exponent(LinkState state, double s, double x, const SystemParams& params, const GainDistribution& gains);

/// LOS and NLOS interference exponents at order-N scale a k P_t / psi_hat.
double interference_exponent_los(int k, double psi_hat, double x, const SystemParams& params,
                                 const GainDistribution& gains, int approx_terms = 5);
double interference_exponent_nlos(int k, double psi_hat, double x, const SystemParams& params,
                                  const GainDistribution& gains, int approx_terms = 5);

/// Breakdown of a SWIPT success evaluation.
struct SwiptTerms {
    double mu = 0.0;
    double phi = 0.0;
    double sinr_coverage = 0.0;         // P_cov
    double interference_ccdf = 0.0;     // Pr[I > mu]
    double energy_coverage = 0.0;       // Pr[S + I > phi - sigma^2]
    double success = 0.0;
};

/// Evaluates every expression for one (params, gains) pair, caching the
/// association law. Thread-compatible: const methods are safe to call
/// concurrently.
class CoverageModel {
public:
    CoverageModel(const SystemParams& params, const GainDistribution& gains, int approx_terms = 5);

    const SystemParams& params() const { return params_; }
    const GainDistribution& gains() const { return gains_; }
    const NetworkGeometry& geometry() const { return geometry_; }
    int approx_terms() const { return approx_terms_; }

    /// Pr[S + I > u] at a connected user (serving factor on) or Pr[I > u]
    /// (serving factor off), u in received watts.
    double connected_ccdf(double u, bool serving_factor = true) const;
    /// Pr[Y > u] at a nonconnected user.
    double nonconnected_ccdf(double u) const;

    double energy_coverage_connected(double psi) const;
    double energy_coverage_connected_fast(double psi) const;
    double energy_coverage_nonconnected(double psi) const;

    double avg_power_connected(double psi) const;
    double avg_power_nonconnected(double psi) const;
    double avg_power_connected_limit() const;
    double avg_power_connected_approx() const;
    double avg_power_nonconnected_limit() const;

    double sinr_coverage(const SwiptQuery& q) const;
    double interference_ccdf(double mu) const;
    SwiptTerms swipt_terms(const SwiptQuery& q) const;
    double swipt_success(const SwiptQuery& q) const { return swipt_terms(q).success; }

    /// Mean interferer power term Psi_L(x), Psi_N(x) (watts before xi).
    double psi_los(double x) const;
    double psi_nlos(double x) const;

private:
    double sinr_coverage_state(LinkState state, double t, double noise) const;

    SystemParams params_;
    GainDistribution gains_;
    NetworkGeometry geometry_;
    int approx_terms_;
    double alzer_;
};

double energy_coverage_connected(const EnergyCoverageQuery& q, const SystemParams& params, const GainDistribution& gains);
double energy_coverage_connected_fast(const EnergyCoverageQuery& q, const SystemParams& params,
                                      const GainDistribution& gains);
double energy_coverage_nonconnected(const EnergyCoverageQuery& q, const SystemParams& params,
                                    const GainDistribution& gains);
/// Dispatches on q.mode.
double energy_coverage(const EnergyCoverageQuery& q, const SystemParams& params, const GainDistribution& gains);

/// eps P_con(psi_con) + (1 - eps) P_ncon(psi_ncon).
double overall_energy_coverage(double eps, double psi_con, double psi_ncon, const SystemParams& params,
                               const GainDistribution& gains, int approx_terms = 5);
/// Mixture of precomputed coverage values; exact at eps = 0 and eps = 1.
double mix_coverage(double eps, double p_con, double p_ncon);

double avg_power_connected(double psi, const SystemParams& params, const GainDistribution& gains);
double avg_power_connected_limit(const SystemParams& params, const GainDistribution& gains);
double avg_power_connected_approx(const SystemParams& params, const GainDistribution& gains);
double avg_power_nonconnected(double psi, const SystemParams& params, const GainDistribution& gains);
double avg_power_nonconnected_limit(const SystemParams& params, const GainDistribution& gains);

double sinr_coverage(const SwiptQuery& q, const SystemParams& params, const GainDistribution& gains);
double interference_ccdf(double mu, const SystemParams& params, const GainDistribution& gains);
double swipt_success(const SwiptQuery& q, const SystemParams& params, const GainDistribution& gains);

/// Clamps quadrature noise up to 1e-6 outside [0, 1]; larger excursions throw
/// NumericalError.
double clamp_probability(double p, const char* what);

}  // namespace mmh
