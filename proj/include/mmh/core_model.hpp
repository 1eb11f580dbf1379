#pragma once

// Physical constants and link primitives shared by the analytic and the
// simulation engines: system parameters, sectored antenna patterns, the
// directivity-gain distribution and the LOS/NLOS path-loss law.

#include <array>
#include <string_view>

#include "mmh/units.hpp"

namespace mmh {

enum class LinkState { Los, Nlos };

std::string_view to_string(LinkState s);

/// All physical and network constants. Powers in watts, distances in metres,
/// densities per square metre, gains linear.
struct SystemParams {
    double bs_density = per_km2(100.0);             // lambda
    double tx_power = dbm_to_watts(43.0);           // P_t
    double blockage_beta = 0.0071;                  // beta, 1/m
    double alpha_los = 2.0;
    double alpha_nlos = 4.0;
    double intercept_los = free_space_intercept(28e9);   // C_L
    double intercept_nlos = free_space_intercept(28e9);  // C_N
    int nakagami_los = 2;                           // N_L
    int nakagami_nlos = 3;                          // N_N
    double rectifier_eff = 1.0;                     // xi
    double activation_threshold = 0.0;              // psi_min
    double min_distance = 1.0;                      // r_g
    double noise_power = thermal_noise_watts(100e6, 10.0);  // sigma^2
    double conversion_noise = 0.0;                  // sigma_c^2
    double bandwidth = 100e6;
    double carrier_freq = 28e9;
    double user_density = per_km2(1000.0);
    double connected_fraction = 1.0;                // epsilon

    /// Throws std::invalid_argument naming the first violated field.
    void validate() const;
};

/// Sectored beam: gain `main_gain` over `main_beamwidth` radians, `side_gain`
/// over `side_beamwidth`, zero elsewhere.
struct AntennaPattern {
    double main_gain = 1.0;
    double side_gain = 1.0;
    double main_beamwidth = kTwoPi;
    double side_beamwidth = 0.0;

    static AntennaPattern omni() { return {}; }
    /// Caption notation [M dB, m dB, theta deg, thetabar deg].
    static AntennaPattern from_db(double main_db, double side_db, double main_deg, double side_deg);

    void validate() const;
};

/// Five-point law of the link directivity gain. Index 4 is the zero-gain
/// outcome (no lobe alignment on either side).
struct GainDistribution {
    std::array<double, 5> gains{};
    std::array<double, 5> probs{};

    /// Gain of an aligned link, M_t * M_r.
    double aligned_gain() const { return gains[0]; }
    void validate() const;
};

/// gamma = xi * Y when Y exceeds the activation threshold (strictly), else 0.
double harvested_energy(double received_power, double rectifier_eff, double activation_threshold);

/// C r^-alpha for the given state. Rejects r below the minimum link distance.
double path_loss(double r, LinkState state, const SystemParams& params);

GainDistribution gain_distribution(const AntennaPattern& tx, const AntennaPattern& rx);

// ---------------------------------------------------------------------------
// Uniform linear array beam approximations.

struct UlaBeamwidths {
    double main;  // radians
    double side;  // radians, raw formula value (may make main + side exceed 2 pi at N = 2)
};

/// theta = 2 asin(0.892/N), thetabar = 4 |asin(2/N)|, in radians.
UlaBeamwidths ula_beamwidths(int num_antennas);

enum class UlaGainConvention {
    /// Main lobe gain proportional to N (10 log10 N dB), side lobe 12 dB lower;
    /// the common scale V enforces unit radiated power.
    DecibelSidelobe,
    /// M = 10 V log10(N), m = V (M - 12), solved for V. Only valid where the
    /// result keeps M >= m >= 0 (roughly 4 <= N <= 40).
    AsPrinted,
};

struct UlaSolution {
    AntennaPattern pattern;
    double scale;     // V
    double residual;  // q M + qbar m - 1
};

/// Sectored approximation of an N-element ULA with unit radiated power.
/// Side beamwidth is clamped to 2 pi - main before normalizing.
UlaSolution solve_ula_pattern(int num_antennas, UlaGainConvention convention = UlaGainConvention::DecibelSidelobe);

inline AntennaPattern ula_pattern(int num_antennas, UlaGainConvention convention = UlaGainConvention::DecibelSidelobe)
{
    return solve_ula_pattern(num_antennas, convention).pattern;
}

}  // namespace mmh
