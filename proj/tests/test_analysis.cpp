#include "test_util.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "mmh/analysis.hpp"

using namespace mmh;

using std::numbers::pi;

namespace {

GainDistribution pattern_gains(double m_db, double s_db, double main_deg, double side_deg)
{
    return gain_distribution(AntennaPattern::from_db(m_db, s_db, main_deg, side_deg), AntennaPattern::omni());
}

GainDistribution mid_gains() { return pattern_gains(10, -10, 30, 330); }

// Fixed-grid trapezoid in u = ln t of the aggregate exponent, plus the
// first-order tail of an alpha > 2 power law beyond the last node.
double trapezoid_exponent(LinkState st, double s, double x, const SystemParams& p, const GainDistribution& g)
{
    const bool los = st == LinkState::Los;
    const double alpha = los ? p.alpha_los : p.alpha_nlos;
    const double c = los ? p.intercept_los : p.intercept_nlos;
    const int n = los ? p.nakagami_los : p.nakagami_nlos;
    const double lo = std::max(x, p.min_distance), hi = 1e7;
    const int steps = 400000;
    const double h = std::log(hi / lo) / steps;
    double total = 0.0;
    for (int i = 0; i < 4; ++i) {
        if (g.probs[i] == 0.0)
            continue;
        auto f = [&](double u) {
            const double t = lo * std::exp(u);
            const double w = los ? std::exp(-p.blockage_beta * t) : 1.0 - std::exp(-p.blockage_beta * t);
            return (1.0 - std::pow(1.0 + s * g.gains[i] * c / (n * std::pow(t, alpha)), -n)) * w * t * t;
        };
        double acc = 0.5 * (f(0.0) + f(steps * h));
        for (int k = 1; k < steps; ++k)
            acc += f(k * h);
        acc *= h;
        if (!los)
            acc += s * g.gains[i] * c * std::pow(hi, 2.0 - alpha) / (alpha - 2.0);
        total += g.probs[i] * acc;
    }
    return 2.0 * pi * p.bs_density * total;
}

std::vector<double> dbm_grid(double lo, double hi, double step)
{
    std::vector<double> out;
    for (double v = lo; v <= hi + 1e-9; v += step)
        out.push_back(dbm_to_watts(v));
    return out;
}

}  // namespace

TEST_CASE("interference exponents agree with a trapezoid oracle")
{
    const SystemParams p;
    const auto g = mid_gains();
    const double psi_hat = dbm_to_watts(-30.0);
    const double s = alzer_constant(5) * p.tx_power / psi_hat;
    const double los = interference_exponent_los(1, psi_hat, p.min_distance, p, g);
    const double nlos = interference_exponent_nlos(1, psi_hat, p.min_distance, p, g);
    CHECK(los == Rel(trapezoid_exponent(LinkState::Los, s, p.min_distance, p, g)).epsilon(1e-6));
    CHECK(nlos == Rel(trapezoid_exponent(LinkState::Nlos, s, p.min_distance, p, g)).epsilon(1e-6));
    // an interior lower limit as well
    CHECK(interference_exponent_los(3, psi_hat, 40.0, p, g) ==
          Rel(trapezoid_exponent(LinkState::Los, 3.0 * s, 40.0, p, g)).epsilon(1e-6));
}

TEST_CASE("interference exponents vanish at k = 0 and in an empty network")
{
    SystemParams p;
    const auto g = mid_gains();
    CHECK(interference_exponent_los(0, 1e-6, 1.0, p, g) == 0.0);
    CHECK(interference_exponent_nlos(0, 1e-6, 1.0, p, g) == 0.0);
    p.bs_density = 1e-14;
    CHECK(interference_exponent_los(2, 1e-6, 1.0, p, g) < 1e-8);
    CHECK(interference_exponent_nlos(2, 1e-6, 1.0, p, g) < 1e-8);
    CHECK_THROWS_AS(interference_exponent_los(-1, 1e-6, 1.0, p, g), std::invalid_argument);
    CHECK_THROWS_AS(interference_exponent_nlos(1, 0.0, 1.0, p, g), std::invalid_argument);
}

TEST_CASE("connected energy coverage is a CCDF")
{
    SystemParams p;
    p.tx_power = dbw_to_watts(13.0);
    const CoverageModel m(p, mid_gains());
    double prev = 2.0;
    for (double psi : dbm_grid(-80, -10, 2.5)) {
        const double v = m.energy_coverage_connected(psi);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v <= prev + 1e-9);
        prev = v;
    }
    CHECK(m.energy_coverage_connected(10.0) < 1e-6);
    // at zero threshold only a serving station inside r_g is missed
    CHECK(m.energy_coverage_connected(0.0) == Rel(std::exp(-p.bs_density * pi)).epsilon(1e-8));
    CHECK_THROWS_AS(m.energy_coverage_connected(-1.0), std::invalid_argument);
}

TEST_CASE("nonconnected energy coverage is a CCDF")
{
    SystemParams p;
    p.tx_power = dbw_to_watts(13.0);
    const CoverageModel m(p, mid_gains());
    double prev = 2.0;
    for (double psi : dbm_grid(-90, -20, 2.5)) {
        const double v = m.energy_coverage_nonconnected(psi);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        CHECK(v <= prev + 1e-9);
        prev = v;
    }
    CHECK(m.energy_coverage_nonconnected(10.0) < 1e-6);
}

TEST_CASE("coverage flattens below the activation threshold")
{
    SystemParams p;
    p.rectifier_eff = 0.5;
    p.activation_threshold = dbm_to_watts(-50.0);
    const CoverageModel m(p, mid_gains());
    const double edge = p.rectifier_eff * p.activation_threshold;
    const double at_edge = m.energy_coverage_connected(edge);
    const double at_edge_n = m.energy_coverage_nonconnected(edge);
    for (double f : {0.0, 1e-3, 0.3, 0.999}) {
        CHECK(m.energy_coverage_connected(f * edge) == at_edge);
        CHECK(m.energy_coverage_nonconnected(f * edge) == at_edge_n);
    }
    CHECK(m.energy_coverage_connected(3.0 * edge) < at_edge);
}

TEST_CASE("coverage grows with transmit power and link gain")
{
    SystemParams p;
    const double psi = dbm_to_watts(-45.0);
    double prev = -1.0;
    for (double dbm : {30.0, 35.0, 40.0, 43.0, 50.0}) {
        p.tx_power = dbm_to_watts(dbm);
        const double v = CoverageModel(p, mid_gains()).energy_coverage_connected(psi);
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
    p = SystemParams{};
    prev = -1.0;
    for (double main_db : {3.0, 6.0, 10.0, 14.0}) {
        const double v = CoverageModel(p, pattern_gains(main_db, -10, 30, 330)).energy_coverage_connected(psi);
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
}

TEST_CASE("LOS-ball approximation stays close and vanishes in the tail")
{
    SystemParams p;
    p.tx_power = dbw_to_watts(13.0);
    const CoverageModel m(p, mid_gains());
    for (double psi : dbm_grid(-60, -22, 6))
        CHECK(std::abs(m.energy_coverage_connected_fast(psi) - m.energy_coverage_connected(psi)) <= 0.1);
    CHECK(m.energy_coverage_connected_fast(10.0) < 1e-6);
    // spot value within 0.05 at a denser deployment
    p.bs_density = per_km2(500.0);
    const CoverageModel dense(p, mid_gains());
    const double psi = dbm_to_watts(-40.0);
    CHECK(std::abs(dense.energy_coverage_connected_fast(psi) - dense.energy_coverage_connected(psi)) <= 0.05);
}

TEST_CASE("wider beams favour nonconnected users")
{
    SystemParams p;
    p.tx_power = dbw_to_watts(13.0);
    const double psi = dbm_to_watts(-50.0);
    const double narrow = CoverageModel(p, pattern_gains(15, -15, 10, 350)).energy_coverage_nonconnected(psi);
    const double wide = CoverageModel(p, pattern_gains(5, -5, 90, 270)).energy_coverage_nonconnected(psi);
    CHECK(wide >= narrow);
}

TEST_CASE("user mixture is exact at the ends and affine in between")
{
    SystemParams p;
    const auto g = mid_gains();
    const double pc = dbm_to_watts(-40.0), pn = dbm_to_watts(-55.0);
    const CoverageModel m(p, g);
    const double con = m.energy_coverage_connected(pc), ncon = m.energy_coverage_nonconnected(pn);
    CHECK(overall_energy_coverage(1.0, pc, pn, p, g) == con);
    CHECK(overall_energy_coverage(0.0, pc, pn, p, g) == ncon);
    const double l0 = mix_coverage(0.0, con, ncon), l1 = mix_coverage(1.0, con, ncon);
    for (double eps : {0.1, 0.25, 0.5, 0.8})
        CHECK(mix_coverage(eps, con, ncon) - l0 == Rel(eps * (l1 - l0)).epsilon(1e-14));
    CHECK_THROWS_AS(mix_coverage(1.5, con, ncon), std::invalid_argument);
}

TEST_CASE("average harvested power dominates the threshold mass")
{
    SystemParams p;
    const CoverageModel m(p, mid_gains());
    for (double psi : dbm_grid(-60, -20, 10)) {
        CHECK(m.avg_power_connected(psi) >= psi * m.energy_coverage_connected(psi));
        CHECK(m.avg_power_nonconnected(psi) >= psi * m.energy_coverage_nonconnected(psi));
    }
    // far in the tail both the coverage and the average vanish together
    const double huge = 1e3;
    CHECK(m.avg_power_connected(huge) <= 1e-6 * m.avg_power_connected_limit());
}

namespace {

// Integrating the order-N coverage expression over all thresholds gives
// E[Y] times J_N = int_0^inf (1 - e^(-a / s))^N ds instead of E[Y].
double smoothing_factor(int n)
{
    const double a = alzer_constant(n);
    return integrate([&](double s) { return s > 0.0 ? std::pow(-std::expm1(-a / s), n) : 1.0; }, 0.0, kInf,
                     QuadratureSpec{}.with_tolerance(1e-11, 1e-14));
}

}  // namespace

TEST_CASE("zero-threshold average power is the mean power times the order-N smoothing factor")
{
    const double j5 = smoothing_factor(5);
    CHECK(j5 == Rel(1.1195).epsilon(1e-4));

    const SystemParams p;
    const CoverageModel m(p, mid_gains());
    CHECK(m.avg_power_connected(1e-15) == Rel(j5 * m.avg_power_connected_limit()).epsilon(1e-4));
    CHECK(m.avg_power_nonconnected(1e-15) == Rel(j5 * m.avg_power_nonconnected_limit()).epsilon(1e-4));

    SystemParams steep;
    steep.alpha_los = 3.0;
    steep.bs_density = per_km2(20.0);
    const CoverageModel m3(steep, mid_gains(), 3);
    CHECK(m3.avg_power_connected(1e-15) == Rel(smoothing_factor(3) * m3.avg_power_connected_limit()).epsilon(1e-4));
}

TEST_CASE("average-power limits do not depend on the fading order")
{
    SystemParams p;
    const auto g = mid_gains();
    const double ref = CoverageModel(p, g).avg_power_connected_limit();
    const double ref_n = CoverageModel(p, g).avg_power_nonconnected_limit();
    for (int nl : {1, 2, 3})
        for (int nn : {1, 2, 3}) {
            p.nakagami_los = nl;
            p.nakagami_nlos = nn;
            const CoverageModel m(p, g);
            CHECK(m.avg_power_connected_limit() == ref);
            CHECK(m.avg_power_nonconnected_limit() == ref_n);
        }
}

TEST_CASE("average power is linear in transmit power")
{
    SystemParams p;
    const auto g = mid_gains();
    const double a = CoverageModel(p, g).avg_power_connected_limit();
    const double an = CoverageModel(p, g).avg_power_nonconnected_limit();
    const double ap = CoverageModel(p, g).avg_power_connected_approx();
    p.tx_power *= 2.0;
    CHECK(CoverageModel(p, g).avg_power_connected_limit() == Rel(2.0 * a).epsilon(1e-9));
    CHECK(CoverageModel(p, g).avg_power_nonconnected_limit() == Rel(2.0 * an).epsilon(1e-12));
    CHECK(CoverageModel(p, g).avg_power_connected_approx() == Rel(2.0 * ap).epsilon(1e-12));
}

TEST_CASE("nonconnected average-power limit is exactly linear in density")
{
    SystemParams p;
    const auto g = mid_gains();
    for (double lam_km : {10.0, 100.0, 300.0}) {
        p.bs_density = per_km2(lam_km);
        const double a = CoverageModel(p, g).avg_power_nonconnected_limit();
        p.bs_density *= 2.0;
        const double b = CoverageModel(p, g).avg_power_nonconnected_limit();
        CHECK(std::abs(b / a - 2.0) <= 1e-12 * 2.0);
    }
}

TEST_CASE("LOS-ball average power drops interference and matches direct quadrature")
{
    for (double alpha : {2.0, 3.0}) {
        for (double lam_km : {20.0, 100.0, 500.0}) {
            SystemParams p;
            p.alpha_los = alpha;
            p.bs_density = per_km2(lam_km);
            p.rectifier_eff = 0.7;
            const auto g = mid_gains();
            const CoverageModel m(p, g);
            const double approx = m.avg_power_connected_approx();

            const double lam = p.bs_density;
            const double rb = m.geometry().los_ball();
            const double direct = p.rectifier_eff * 2.0 * pi * lam * p.tx_power * g.aligned_gain() * p.intercept_los *
                                  integrate([&](double t) { return std::exp(-lam * pi * t * t) * std::pow(t, 1.0 - alpha); },
                                            p.min_distance, rb, QuadratureSpec{}.with_tolerance(1e-12, 1e-300));
            CHECK(approx == Rel(direct).epsilon(1e-8));
        }
    }
}

TEST_CASE("density scaling of the LOS-ball average power is closer to linear for steeper path loss")
{
    auto ratio = [](double alpha) {
        SystemParams p;
        p.alpha_los = alpha;
        p.bs_density = per_km2(100.0);
        const auto g = mid_gains();
        const double a = CoverageModel(p, g).avg_power_connected_approx();
        p.bs_density *= 2.0;
        return CoverageModel(p, g).avg_power_connected_approx() / a;
    };
    CHECK(std::abs(ratio(3.0) - 2.0) < std::abs(ratio(2.0) - 2.0));
}

TEST_CASE("SINR coverage")
{
    SystemParams p;
    p.conversion_noise = dbw_to_watts(-80.0);
    const CoverageModel m(p, pattern_gains(15, -15, 10, 350));
    double prev = 2.0;
    for (double t_db = -20.0; t_db <= 40.0; t_db += 2.5) {
        const double v = m.sinr_coverage({db_to_linear(t_db), 0.0, 0.5});
        CHECK(v <= prev + 1e-9);
        CHECK(v >= 0.0);
        prev = v;
    }
    CHECK(m.sinr_coverage({1e12, 0.0, 0.5}) < 1e-6);
    const double half = m.sinr_coverage({db_to_linear(10.0), 0.0, 0.5});
    const double most = m.sinr_coverage({db_to_linear(10.0), 0.0, 0.95});
    CHECK(most > half);
}

TEST_CASE("interference CCDF")
{
    SystemParams p;
    const CoverageModel m(p, mid_gains());
    CHECK(m.interference_ccdf(0.0) == 1.0);
    CHECK(m.interference_ccdf(-1.0) == 1.0);
    CHECK(m.interference_ccdf(10.0) < 1e-6);
    double prev = 1.0;
    for (double mu : dbm_grid(-90, -20, 5)) {
        const double v = m.interference_ccdf(mu);
        CHECK(v <= prev + 1e-9);
        prev = v;
    }
}

TEST_CASE("SWIPT success limits and bounds")
{
    SystemParams p;
    p.bs_density = per_km2(200.0);
    p.conversion_noise = dbw_to_watts(-80.0);
    const CoverageModel m(p, pattern_gains(15, -15, 10, 350));

    // no energy constraint: pure SINR coverage
    for (double t_db : {-5.0, 5.0, 15.0}) {
        const SwiptQuery q{db_to_linear(t_db), 0.0, 0.4};
        CHECK(m.swipt_success(q) == m.sinr_coverage(q));
        CHECK(m.swipt_success({db_to_linear(t_db), 1e-18, 0.4}) == Rel(m.sinr_coverage(q)).epsilon(1e-3));
    }
    // vanishing SINR constraint: at least the energy-only term
    for (double psi_dbw : {-90.0, -70.0, -50.0}) {
        const auto terms = m.swipt_terms({1e-6, dbw_to_watts(psi_dbw), 0.5});
        CHECK(terms.sinr_coverage == Rel(std::exp(-p.bs_density * pi)).epsilon(1e-5));
        CHECK(terms.success >= terms.energy_coverage - 1e-12);
    }
    // lower envelope of the formula holds on a grid
    for (double t_db = -10.0; t_db <= 20.0; t_db += 5.0)
        for (double nu : {0.1, 0.5, 0.9}) {
            const auto t = m.swipt_terms({db_to_linear(t_db), dbw_to_watts(-70.0), nu});
            CHECK(t.success >= t.energy_coverage * (1.0 - t.interference_ccdf) - 1e-12);
            CHECK(t.success <= 1.0);
        }
    CHECK_THROWS_AS(m.swipt_success({1.0, 0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(m.swipt_success({0.0, 0.0, 0.5}), std::invalid_argument);
}

TEST_CASE("best splitting ratio moves up with the SINR threshold")
{
    SystemParams p;
    p.bs_density = per_km2(200.0);
    p.conversion_noise = dbw_to_watts(-80.0);
    const CoverageModel m(p, pattern_gains(15, -15, 10, 350));
    auto best_nu = [&](double t_db) {
        double best = -1.0, arg = 0.0;
        for (double nu = 0.05; nu < 0.96; nu += 0.05) {
            const double v = m.swipt_success({db_to_linear(t_db), dbw_to_watts(-70.0), nu});
            if (v > best) {
                best = v;
                arg = nu;
            }
        }
        return arg;
    };
    double prev = 0.0;
    std::vector<double> args;
    for (double t_db : {-10.0, 0.0, 10.0, 20.0}) {
        const double a = best_nu(t_db);
        CHECK(a >= prev - 1e-12);
        prev = a;
        args.push_back(a);
    }
    CHECK(args.back() > args.front());
}

TEST_CASE("repeated evaluation is bit-identical")
{
    const SystemParams p;
    const CoverageModel m(p, mid_gains());
    const double psi = dbm_to_watts(-40.0);
    const double a = m.energy_coverage_connected(psi);
    CHECK(CoverageModel(p, mid_gains()).energy_coverage_connected(psi) == a);
    CHECK(m.energy_coverage_connected(psi) == a);
}

TEST_CASE("probability clamping tolerates only quadrature noise")
{
    CHECK(clamp_probability(1.0 + 5e-7, "x") == 1.0);
    CHECK(clamp_probability(-5e-7, "x") == 0.0);
    CHECK_THROWS_AS(clamp_probability(1.01, "x"), NumericalError);
    CHECK_THROWS_AS(clamp_probability(std::nan(""), "x"), NumericalError);
}
