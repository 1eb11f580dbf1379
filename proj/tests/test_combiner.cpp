#include "test_util.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "mmh/combiner.hpp"

using namespace mmh;
using std::numbers::pi;

namespace {

ReceiverSpec ula(int n, Combiner c = Combiner::SwitchGreedy)
{
    ReceiverSpec s;
    s.num_antennas = n;
    s.combiner = c;
    return s;
}

// Brute force written out independently of the library.
double best_switch_gain(int n, double d, double phi)
{
    double best = 0.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::complex<double> sum = 0.0;
        int on = 0;
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) {
                sum += std::polar(1.0, 2.0 * pi * d * i * std::cos(phi));
                ++on;
            }
        best = std::max(best, std::norm(sum) / on);
    }
    return best;
}

}  // namespace

TEST_CASE("array response")
{
    const auto a = array_response(ula(4), pi / 2.0);
    for (const auto& e : a)
        CHECK(std::abs(e - std::complex<double>(1.0, 0.0)) < 1e-15);
    const auto b = array_response(ula(3), 0.0);  // half-wavelength endfire: phase pi per element
    CHECK(std::abs(b[1] + 1.0) < 1e-15);
    CHECK(std::abs(b[2] - 1.0) < 1e-14);
}

TEST_CASE("single antenna")
{
    const auto s = ula(1);
    CHECK(greedy_switch_combiner(s, 0.3) == SwitchWeights{1});
    CHECK(exhaustive_switch_combiner(s, 0.3) == SwitchWeights{1});
    CHECK(combining_gain({1}, s, 0.3) == Rel(1.0));
}

TEST_CASE("broadside turns every antenna on")
{
    for (int n : {2, 4, 7}) {
        const auto s = ula(n);
        const SwitchWeights all(n, 1);
        CHECK(greedy_switch_combiner(s, pi / 2.0) == all);
        CHECK(exhaustive_switch_combiner(s, pi / 2.0) == all);
        CHECK(combining_gain(all, s, pi / 2.0) == Rel(n).epsilon(1e-12));
    }
}

TEST_CASE("endfire pair keeps one antenna")
{
    const auto s = ula(2);
    CHECK(greedy_switch_combiner(s, 0.0) == SwitchWeights{1, 0});
    CHECK(combining_gain({1, 0}, s, 0.0) == Rel(1.0));
    CHECK(combining_gain(exhaustive_switch_combiner(s, 0.0), s, 0.0) == Rel(1.0));
    CHECK(best_switch_gain(2, 0.5, 0.0) == Rel(1.0).epsilon(1e-12));
}

TEST_CASE("combining gain edge cases")
{
    const auto s = ula(2);
    CHECK(std::abs(combining_gain({1, 1}, s, 0.0)) < 1e-15);
    CHECK(combining_gain({0, 1}, s, 1.1) == Rel(1.0));
    CHECK_THROWS_AS(combining_gain({0, 0}, s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(combining_gain({1}, s, 0.0), std::invalid_argument);
}

TEST_CASE("greedy never beats exhaustive and both stay in range")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    std::uniform_int_distribution<int> size(1, 12);
    for (int i = 0; i < 500; ++i) {
        const int n = size(rng);
        const double phi = angle(rng);
        const auto s = ula(n);
        const auto g = greedy_switch_combiner(s, phi);
        const auto e = exhaustive_switch_combiner(s, phi);
        CHECK(g.front() == 1);
        const double gg = combining_gain(g, s, phi), ge = combining_gain(e, s, phi);
        CHECK(gg <= ge + 1e-12);
        CHECK(gg >= 1.0 - 1e-12);
        CHECK(ge <= n + 1e-12);
        CHECK(ge == Rel(best_switch_gain(n, 0.5, phi)).epsilon(1e-12));
    }
}

TEST_CASE("exhaustive ties go to fewer antennas then the smallest vector")
{
    // endfire, half-wavelength: {1,0,1} (phases 0 and 2 pi) reaches 2 and is unique
    CHECK(exhaustive_switch_combiner(ula(3), 0.0) == SwitchWeights{1, 0, 1});
    // two antennas: either one alone gives 1, the pair cancels; {0,1} < {1,0}
    CHECK(exhaustive_switch_combiner(ula(2), 0.0) == SwitchWeights{0, 1});
    // broadside: all on beats any subset, no tie
    CHECK(exhaustive_switch_combiner(ula(3), pi / 2.0) == SwitchWeights{1, 1, 1});
}

TEST_CASE("receiver gain per combiner")
{
    CHECK(receiver_gain(ula(1, Combiner::Single), 0.7) == 1.0);
    for (int n : {1, 2, 5, 12})
        CHECK(receiver_gain(ula(n, Combiner::Mrc), 0.7) == n);
    CHECK(receiver_gain(ula(4, Combiner::SwitchGreedy), pi / 2.0) == Rel(4.0).epsilon(1e-12));
    CHECK(receiver_gain(ula(4, Combiner::SwitchExhaustive), 0.0) ==
          Rel(best_switch_gain(4, 0.5, 0.0)).epsilon(1e-12));
}

TEST_CASE("receiver validation")
{
    ReceiverSpec s;
    s.num_antennas = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    CHECK_THROWS_AS(exhaustive_switch_combiner(ula(21, Combiner::SwitchExhaustive), 0.0), std::invalid_argument);
    s = ula(2);
    s.element_spacing = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
