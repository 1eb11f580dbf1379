#include "mmh/combiner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmh {

void ReceiverSpec::validate() const
{
    if (num_antennas < 1)
        throw std::invalid_argument("ReceiverSpec: num_antennas must be >= 1");
    if (!(element_spacing > 0.0))
        throw std::invalid_argument("ReceiverSpec: element_spacing must be positive");
}

std::vector<std::complex<double>> array_response(const ReceiverSpec& spec, double phi)
{
    spec.validate();
    const double step = 2.0 * std::numbers::pi * spec.element_spacing * std::cos(phi);
    std::vector<std::complex<double>> a(static_cast<std::size_t>(spec.num_antennas));
    for (int i = 0; i < spec.num_antennas; ++i)
        a[static_cast<std::size_t>(i)] = std::polar(1.0, step * i);
    return a;
}

namespace {

double gain_of(const SwitchWeights& w, const std::vector<std::complex<double>>& a)
{
    std::complex<double> sum = 0.0;
    int active = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i]) {
            sum += a[i];
            ++active;
        }
    }
    if (active == 0)
        throw std::invalid_argument("combining_gain: all weights are zero");
    return std::norm(sum) / active;
}

}  // namespace

double combining_gain(const SwitchWeights& w, const ReceiverSpec& spec, double phi)
{
    if (w.size() != static_cast<std::size_t>(spec.num_antennas))
        throw std::invalid_argument("combining_gain: weight length differs from num_antennas");
    return gain_of(w, array_response(spec, phi));
}

SwitchWeights greedy_switch_combiner(const ReceiverSpec& spec, double phi)
{
    const auto a = array_response(spec, phi);
    SwitchWeights w(a.size(), 0);
    w[0] = 1;
    std::complex<double> partial = a[0];
    int active = 1;
    for (std::size_t i = 1; i < a.size(); ++i) {
        const std::complex<double> candidate = partial + a[i];
        if (std::norm(candidate) / (active + 1) > std::norm(partial) / active) {
            w[i] = 1;
            partial = candidate;
            ++active;
        }
    }
    return w;
}

SwitchWeights exhaustive_switch_combiner(const ReceiverSpec& spec, double phi)
{
    spec.validate();
    if (spec.num_antennas > 20)
        throw std::invalid_argument("exhaustive_switch_combiner: num_antennas above 20");
    const auto a = array_response(spec, phi);
    const std::size_t n = a.size();
    SwitchWeights best;
    double best_gain = -1.0;
    int best_active = 0;
    SwitchWeights w(n, 0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        int active = 0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = static_cast<std::uint8_t>((mask >> i) & 1u);
            active += w[i];
        }
        const double g = gain_of(w, a);
        bool take = g > best_gain;
        if (!take && g == best_gain) {
            // lexicographic order compares w_1 first
            take = active < best_active || (active == best_active && w < best);
        }
        if (take) {
            best = w;
            best_gain = g;
            best_active = active;
        }
    }
    return best;
}

double receiver_gain(const ReceiverSpec& spec, double phi)
{
    switch (spec.combiner) {
    case Combiner::Single:
        return 1.0;
    case Combiner::Mrc:
        return spec.num_antennas;
    case Combiner::SwitchGreedy:
        return combining_gain(greedy_switch_combiner(spec, phi), spec, phi);
    case Combiner::SwitchExhaustive:
        return combining_gain(exhaustive_switch_combiner(spec, phi), spec, phi);
    }
    throw std::invalid_argument("receiver_gain: unknown combiner");
}

}  // namespace mmh
