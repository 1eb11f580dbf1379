#include "test_util.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "mmh/core_model.hpp"

using namespace mmh;


TEST_CASE("harvested energy applies the strict activation threshold")
{
    CHECK(harvested_energy(10e-6, 0.3, 1e-6) == Rel(3e-6).epsilon(1e-14));
    CHECK(harvested_energy(0.5e-6, 1.0, 1e-6) == 0.0);
    CHECK(harvested_energy(1e-6, 1.0, 1e-6) == 0.0);
    CHECK_THROWS_AS(harvested_energy(-1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(harvested_energy(1.0, 1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(harvested_energy(1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(harvested_energy(1.0, 1.5, 0.0), std::invalid_argument);
}

TEST_CASE("harvested energy is monotone and homogeneous above threshold")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1e-3);
    for (int i = 0; i < 1000; ++i) {
        const double y1 = u(rng), y2 = u(rng), psi_min = 0.2 * u(rng), xi = 0.1 + 0.9 * u(rng) / 1e-3;
        const double lo = std::min(y1, y2), hi = std::max(y1, y2);
        CHECK(harvested_energy(lo, xi, psi_min) <= harvested_energy(hi, xi, psi_min));
        if (hi > psi_min) {
            const double c = 1.0 + 3.0 * u(rng) / 1e-3;
            CHECK(harvested_energy(c * hi, xi, psi_min) == Rel(c * harvested_energy(hi, xi, psi_min)).epsilon(1e-14));
        }
    }
}

TEST_CASE("path loss power law and minimum distance guard")
{
    SystemParams p;
    p.intercept_los = 1.0;
    p.intercept_nlos = 1.0;
    CHECK(path_loss(1.0, LinkState::Los, p) == 1.0);
    CHECK(path_loss(10.0, LinkState::Nlos, p) == Rel(1e-4).epsilon(1e-14));
    CHECK_THROWS_AS(path_loss(0.5, LinkState::Los, p), std::invalid_argument);

    double prev_l = 1e300, prev_n = 1e300;
    for (double r = 1.0; r < 5000.0; r *= 1.37) {
        const double l = path_loss(r, LinkState::Los, p), n = path_loss(r, LinkState::Nlos, p);
        CHECK(l < prev_l);
        CHECK(n < prev_n);
        prev_l = l;
        prev_n = n;
    }
}

TEST_CASE("free-space intercept at 28 GHz")
{
    // Friis at 1 m: (c / (4 pi f))^2
    const double lambda_c = 299792458.0 / 28e9;
    const double friis = std::pow(lambda_c / (4.0 * std::numbers::pi), 2);
    CHECK(free_space_intercept(28e9) == Rel(friis).epsilon(1e-13));
    CHECK(friis == Rel(7.26e-7).epsilon(2e-3));
    CHECK(linear_to_db(friis) == Rel(-61.4).epsilon(1e-3));
}

TEST_CASE("unit conversions")
{
    CHECK(dbm_to_watts(30.0) == Rel(1.0));
    CHECK(dbm_to_watts(43.0) == Rel(19.952623149688797));
    CHECK(dbw_to_watts(13.0) == Rel(dbm_to_watts(43.0)));
    CHECK(std::abs(watts_to_dbm(1e-3)) <= 1e-12);
    CHECK(per_km2(100.0) == Rel(1e-4));
    // -174 dBm/Hz + 80 dB (100 MHz) + 10 dB noise figure
    CHECK(watts_to_dbm(thermal_noise_watts(100e6, 10.0)) == Rel(-84.0).epsilon(1e-9));
}

TEST_CASE("system parameter validation names the field")
{
    SystemParams p;
    CHECK_NOTHROW(p.validate());
    auto expect_field = [](SystemParams q, const char* field) {
        try {
            q.validate();
            FAIL("accepted invalid ", field);
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };
    SystemParams q = p;
    q.alpha_nlos = 2.0;
    expect_field(q, "alpha_nlos");
    q = p;
    q.alpha_los = 1.9;
    expect_field(q, "alpha_los");
    q = p;
    q.bs_density = 0.0;
    expect_field(q, "bs_density");
    q = p;
    q.blockage_beta = 0.0;
    expect_field(q, "blockage_beta");
    q = p;
    q.min_distance = 0.0;
    expect_field(q, "min_distance");
    q = p;
    q.nakagami_los = 0;
    expect_field(q, "nakagami_los");
    q = p;
    q.rectifier_eff = 1.2;
    expect_field(q, "rectifier_eff");
    q = p;
    q.connected_fraction = -0.1;
    expect_field(q, "connected_fraction");
}

TEST_CASE("gain distribution of a sectored transmitter and omni receiver")
{
    const auto tx = AntennaPattern::from_db(10, -10, 30, 330);
    CHECK(tx.main_gain == Rel(10.0));
    CHECK(tx.side_gain == Rel(0.1));
    const auto g = gain_distribution(tx, AntennaPattern::omni());

    // enumerate the four sector products directly
    const double qt = 30.0 / 360.0, qbt = 330.0 / 360.0;
    const double oracle_gain[4] = {10.0 * 1.0, 10.0 * 1.0, 0.1 * 1.0, 0.1 * 1.0};
    const double oracle_prob[4] = {qt * 1.0, qt * 0.0, qbt * 1.0, qbt * 0.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(g.gains[i] == Rel(oracle_gain[i]));
        CHECK(g.probs[i] == Rel(oracle_prob[i]).epsilon(1e-14));
    }
    CHECK(g.gains[4] == 0.0);
    CHECK(std::abs(g.probs[4]) <= 1e-15);
    CHECK(g.probs[0] == Rel(1.0 / 12.0));
    CHECK(g.probs[2] == Rel(11.0 / 12.0));
    CHECK(g.aligned_gain() == Rel(10.0));
}

TEST_CASE("omni on both sides gives a point mass at unit gain")
{
    const auto g = gain_distribution(AntennaPattern::omni(), AntennaPattern::omni());
    CHECK(g.gains[0] == 1.0);
    CHECK(g.probs[0] == 1.0);
    for (int i = 1; i < 5; ++i)
        CHECK(g.probs[i] == 0.0);
}

TEST_CASE("lobes that leave a gap put mass on the zero gain")
{
    AntennaPattern tx;
    tx.main_gain = 8.0;
    tx.side_gain = 0.5;
    tx.main_beamwidth = deg_to_rad(40);
    tx.side_beamwidth = deg_to_rad(200);
    const auto g = gain_distribution(tx, AntennaPattern::omni());
    const double covered = (40.0 + 200.0) / 360.0;
    CHECK(g.probs[4] == Rel(1.0 - covered).epsilon(1e-13));
}

TEST_CASE("gain distribution mass is one for random patterns")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        auto random_pattern = [&] {
            AntennaPattern p;
            p.main_gain = 1.0 + 100.0 * u(rng);
            p.side_gain = p.main_gain * u(rng);
            p.main_beamwidth = 1e-3 + (kTwoPi - 1e-3) * u(rng);
            p.side_beamwidth = (kTwoPi - p.main_beamwidth) * u(rng);
            return p;
        };
        const auto g = gain_distribution(random_pattern(), random_pattern());
        double sum = 0.0;
        for (double p : g.probs) {
            CHECK(p >= 0.0);
            sum += p;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        CHECK_NOTHROW(g.validate());
    }
}

TEST_CASE("antenna pattern invariants")
{
    AntennaPattern p;
    p.main_gain = 1.0;
    p.side_gain = 2.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = AntennaPattern::omni();
    p.main_beamwidth = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_THROWS_AS(AntennaPattern::from_db(10, -10, 200, 200), std::invalid_argument);
}

TEST_CASE("ULA beamwidth formulas")
{
    const auto b8 = ula_beamwidths(8);
    CHECK(rad_to_deg(b8.main) == Rel(360.0 / std::numbers::pi * std::asin(0.892 / 8.0)));
    CHECK(rad_to_deg(b8.main) == Rel(12.80).epsilon(5e-4));
    CHECK(rad_to_deg(b8.side) == Rel(720.0 / std::numbers::pi * std::asin(2.0 / 8.0)));
    CHECK(rad_to_deg(b8.side) == Rel(57.91).epsilon(5e-4));
    CHECK(rad_to_deg(ula_beamwidths(2).side) == Rel(360.0).epsilon(1e-14));
    CHECK_THROWS_AS(ula_beamwidths(1), std::invalid_argument);
    CHECK_THROWS_AS(ula_pattern(1), std::invalid_argument);
}

TEST_CASE("ULA patterns radiate unit power and narrow with size")
{
    double prev = 1e300;
    for (int n = 2; n <= 256; ++n) {
        const auto sol = solve_ula_pattern(n);
        const auto& p = sol.pattern;
        const double residual = p.main_beamwidth / kTwoPi * p.main_gain + p.side_beamwidth / kTwoPi * p.side_gain - 1.0;
        CHECK(std::abs(residual) <= 1e-9);
        CHECK(p.main_gain >= p.side_gain);
        CHECK(p.side_gain >= 0.0);
        CHECK(p.main_beamwidth + p.side_beamwidth <= kTwoPi + 1e-12);
        CHECK(p.main_beamwidth < prev);
        prev = p.main_beamwidth;
        // side lobe 12 dB below the main lobe
        CHECK(linear_to_db(p.main_gain / p.side_gain) == Rel(12.0).epsilon(1e-9));
    }
}

TEST_CASE("literal ULA gain formulas where they are valid")
{
    for (int n = 4; n <= 40; ++n) {
        const auto sol = solve_ula_pattern(n, UlaGainConvention::AsPrinted);
        const auto& p = sol.pattern;
        const double q = p.main_beamwidth / kTwoPi, qb = p.side_beamwidth / kTwoPi;
        CHECK(std::abs(q * p.main_gain + qb * p.side_gain - 1.0) <= 1e-9);
        CHECK(p.main_gain == Rel(10.0 * sol.scale * std::log10(static_cast<double>(n))).epsilon(1e-12));
        CHECK(p.side_gain == Rel(sol.scale * (p.main_gain - 12.0)).epsilon(1e-12));
    }
    // m_t = V (M_t - 12) is negative for tiny arrays
    CHECK_THROWS_AS(solve_ula_pattern(2, UlaGainConvention::AsPrinted), std::invalid_argument);
}

TEST_CASE("link state names")
{
    CHECK(to_string(LinkState::Los) == "LOS");
    CHECK(to_string(LinkState::Nlos) == "NLOS");
}
