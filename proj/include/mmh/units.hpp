#pragma once

#include <cmath>
#include <numbers>

namespace mmh {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Thermal noise density at 290 K, dBm per Hz.
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double dbw_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Densities are carried per square metre.
inline double per_km2(double n) { return n * 1e-6; }

/// Free-space power gain at 1 m, (c / (4 pi f))^2.
inline double free_space_intercept(double carrier_hz)
{
    const double k = kSpeedOfLight / (4.0 * std::numbers::pi * carrier_hz);
    return k * k;
}

/// Thermal noise power in watts over `bandwidth_hz` with the given noise figure.
inline double thermal_noise_watts(double bandwidth_hz, double noise_figure_db)
{
    return dbm_to_watts(kThermalNoiseDbmPerHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db);
}

}  // namespace mmh
