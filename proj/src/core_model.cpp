#include "mmh/core_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmh {

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw std::invalid_argument(what);
}

}  // namespace

std::string_view to_string(LinkState s)
{
    return s == LinkState::Los ? "LOS" : "NLOS";
}

void SystemParams::validate() const
{
    require(bs_density > 0.0 && std::isfinite(bs_density), "bs_density must be positive");
    require(tx_power >= 0.0, "tx_power must be nonnegative");
    require(blockage_beta > 0.0, "blockage_beta must be positive");
    require(alpha_los >= 2.0, "alpha_los must be >= 2");
    require(alpha_nlos > 2.0, "alpha_nlos must be > 2");
    require(intercept_los > 0.0 && intercept_nlos > 0.0, "path-loss intercepts must be positive");
    require(nakagami_los >= 1, "nakagami_los must be an integer >= 1");
    require(nakagami_nlos >= 1, "nakagami_nlos must be an integer >= 1");
    require(rectifier_eff > 0.0 && rectifier_eff <= 1.0, "rectifier_eff must lie in (0, 1]");
    require(activation_threshold >= 0.0, "activation_threshold must be nonnegative");
    require(min_distance > 0.0, "min_distance must be positive");
    require(noise_power >= 0.0 && conversion_noise >= 0.0, "noise powers must be nonnegative");
    require(bandwidth > 0.0 && carrier_freq > 0.0, "bandwidth and carrier_freq must be positive");
    require(user_density >= 0.0, "user_density must be nonnegative");
    require(connected_fraction >= 0.0 && connected_fraction <= 1.0, "connected_fraction must lie in [0, 1]");
}

AntennaPattern AntennaPattern::from_db(double main_db, double side_db, double main_deg, double side_deg)
{
    AntennaPattern p{db_to_linear(main_db), db_to_linear(side_db), deg_to_rad(main_deg), deg_to_rad(side_deg)};
    p.validate();
    return p;
}

void AntennaPattern::validate() const
{
    require(side_gain >= 0.0, "antenna side_gain must be nonnegative");
    require(main_gain >= side_gain, "antenna main_gain must be >= side_gain");
    require(main_beamwidth > 0.0, "antenna main_beamwidth must be positive");
    require(side_beamwidth >= 0.0, "antenna side_beamwidth must be nonnegative");
    // a few ulp of slack so that 2 pi - theta round-trips
    require(main_beamwidth + side_beamwidth <= kTwoPi * (1.0 + 1e-12), "antenna beamwidths exceed 2 pi");
}

void GainDistribution::validate() const
{
    double total = 0.0;
    for (double p : probs) {
        require(p >= 0.0, "gain probabilities must be nonnegative");
        total += p;
    }
    require(std::abs(total - 1.0) <= 1e-12, "gain probabilities must sum to 1");
    require(gains[4] == 0.0, "the fifth gain outcome must be zero");
}

double harvested_energy(double received_power, double rectifier_eff, double activation_threshold)
{
    if (received_power < 0.0 || activation_threshold < 0.0)
        throw std::invalid_argument("harvested_energy: negative power or threshold");
    if (!(rectifier_eff > 0.0 && rectifier_eff <= 1.0))
        throw std::invalid_argument("harvested_energy: rectifier efficiency outside (0, 1]");
    return received_power > activation_threshold ? rectifier_eff * received_power : 0.0;
}

double path_loss(double r, LinkState state, const SystemParams& params)
{
    if (!(r >= params.min_distance))
        throw std::invalid_argument("path_loss: distance below min_distance (" + std::to_string(r) + " m)");
    if (state == LinkState::Los)
        return params.intercept_los * std::pow(r, -params.alpha_los);
    return params.intercept_nlos * std::pow(r, -params.alpha_nlos);
}

GainDistribution gain_distribution(const AntennaPattern& tx, const AntennaPattern& rx)
{
    tx.validate();
    rx.validate();
    const double qt = tx.main_beamwidth / kTwoPi;
    const double qt_bar = tx.side_beamwidth / kTwoPi;
    const double qr = rx.main_beamwidth / kTwoPi;
    const double qr_bar = rx.side_beamwidth / kTwoPi;

    GainDistribution g;
    g.gains = {tx.main_gain * rx.main_gain, tx.main_gain * rx.side_gain, tx.side_gain * rx.main_gain,
               tx.side_gain * rx.side_gain, 0.0};
    g.probs = {qt * qr, qt * qr_bar, qt_bar * qr, qt_bar * qr_bar, 0.0};
    // p5 as the complement, not 2 - qt - qt_bar - qr - qr_bar: the latter is
    // only a probability when one side covers the full circle.
    const double covered = (qt + qt_bar) * (qr + qr_bar);
    g.probs[4] = std::max(0.0, 1.0 - covered);
    // absorb the rounding residue so the mass is exactly one
    double total = 0.0;
    for (double p : g.probs)
        total += p;
    if (g.probs[4] > 0.0)
        g.probs[4] += 1.0 - total;
    else
        g.probs[0] += 1.0 - total;
    return g;
}

UlaBeamwidths ula_beamwidths(int num_antennas)
{
    if (num_antennas < 2)
        throw std::invalid_argument("ula_beamwidths: need at least 2 elements");
    const double n = num_antennas;
    return {2.0 * std::asin(0.892 / n), 4.0 * std::abs(std::asin(2.0 / n))};
}

namespace {

struct UlaGains {
    double main;
    double side;
};

UlaGains ula_gains(double v, double n, UlaGainConvention convention)
{
    if (convention == UlaGainConvention::AsPrinted) {
        const double m = 10.0 * v * std::log10(n);
        return {m, v * (m - 12.0)};
    }
    const double m = v * n;
    return {m, m * db_to_linear(-12.0)};
}

}  // namespace

UlaSolution solve_ula_pattern(int num_antennas, UlaGainConvention convention)
{
    const UlaBeamwidths raw = ula_beamwidths(num_antennas);
    const double main_bw = raw.main;
    const double side_bw = std::min(raw.side, kTwoPi - raw.main);
    const double q = main_bw / kTwoPi;
    const double q_bar = side_bw / kTwoPi;
    const double n = num_antennas;

    auto residual = [&](double v) {
        const UlaGains g = ula_gains(v, n, convention);
        return q * g.main + q_bar * g.side - 1.0;
    };

    // Residual is increasing for V > 0 once the side gain is positive; bracket
    // from above the side-gain zero crossing and bisect.
    double lo = convention == UlaGainConvention::AsPrinted ? 12.0 / (10.0 * std::log10(n)) : 0.0;
    double hi = std::max(1.0, 2.0 * lo);
    while (residual(hi) < 0.0)
        hi *= 2.0;
    if (residual(lo) > 0.0) {
        // side gain would have to be negative to normalize; search the full range
        lo = 0.0;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-15 * hi)
            break;
    }
    const double v = 0.5 * (lo + hi);
    const UlaGains g = ula_gains(v, n, convention);
    UlaSolution sol{{g.main, g.side, main_bw, side_bw}, v, residual(v)};
    if (std::abs(sol.residual) > 1e-10)
        throw std::runtime_error("solve_ula_pattern: normalization residual above 1e-10");
    if (!(g.side >= 0.0 && g.main >= g.side))
        throw std::invalid_argument("solve_ula_pattern: N = " + std::to_string(num_antennas) +
                                    " gives an invalid pattern under the as-printed gain convention");
    return sol;
}

}  // namespace mmh
