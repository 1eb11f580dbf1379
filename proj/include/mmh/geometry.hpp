#pragma once

// Blockage, nearest-BS distance laws, association probabilities and the
// LOS-ball reduction.

#include "mmh/core_model.hpp"

namespace mmh {

struct AssociationLaw {
    double rho_los = 0.0;   // probability the serving BS is LOS
    double rho_nlos = 0.0;  // 1 - rho_los
    double b_los = 0.0;     // probability at least one LOS BS exists
    double b_nlos = 1.0;
};

/// p(r) = e^(-beta r).
double los_probability(double r, double beta);

/// Integral of v p(v) over [0, x]: (1 - e^(-beta x)(1 + beta x)) / beta^2.
double los_mass(double x, double beta);

/// Integral of v (1 - p(v)) over [0, x].
double nlos_mass(double x, double beta);

/// Distance of the NLOS BS giving the same mean power as a LOS BS at x.
double rho_los_map(double x, const SystemParams& params);
/// Distance of the LOS BS giving the same mean power as an NLOS BS at x.
double rho_nlos_map(double x, const SystemParams& params);

struct NearestPdf {
    double density;     // per metre
    double normalizer;  // B_L or B_N
};

/// Density of the distance to the nearest LOS (or NLOS) BS, conditioned on
/// such a BS existing.
NearestPdf nearest_pdf(LinkState state, double x, const SystemParams& params);

/// rho_state * serving-distance density: the joint density that the serving
/// BS is in `state` at distance x.
double serving_joint_density(LinkState state, double x, const SystemParams& params);

AssociationLaw association_probability(const SystemParams& params);

/// Density of the serving distance given the serving state.
double serving_distance_pdf(LinkState state, double x, const SystemParams& params, const AssociationLaw& law);
double serving_distance_pdf(LinkState state, double x, const SystemParams& params);

/// R_B = sqrt(-ln(1 - rho_los) / (lambda pi)).
double los_ball_radius(double rho_los, double lambda);

/// Serving-distance density of the LOS-ball model (everything inside R_B is
/// LOS, everything outside blocked): 2 pi lambda x e^(-lambda pi x^2) / rho_los
/// on [0, R_B], zero beyond.
double los_ball_serving_pdf(double x, double rho_los, double lambda);

/// Caches the association law of one parameter set.
class NetworkGeometry {
public:
    explicit NetworkGeometry(const SystemParams& params);

    const SystemParams& params() const { return params_; }
    const AssociationLaw& law() const { return law_; }
    double serving_pdf(LinkState state, double x) const { return serving_distance_pdf(state, x, params_, law_); }
    double joint_density(LinkState state, double x) const { return serving_joint_density(state, x, params_); }
    double los_ball() const { return los_ball_radius(law_.rho_los, params_.bs_density); }
    /// Length scale for semi-infinite distance integrals, 1 / sqrt(pi lambda).
    double distance_scale() const;

private:
    SystemParams params_;
    AssociationLaw law_;
};

}  // namespace mmh
