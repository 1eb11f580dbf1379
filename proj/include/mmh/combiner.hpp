#pragma once

// Receive combining for the switch-based SWIPT receiver.

#include <complex>
#include <cstdint>
#include <vector>

namespace mmh {

enum class Combiner { SwitchGreedy, SwitchExhaustive, Mrc, Single };

struct ReceiverSpec {
    int num_antennas = 1;         // N_r
    double element_spacing = 0.5; // d, in carrier wavelengths
    Combiner combiner = Combiner::Single;

    void validate() const;
};

/// Binary switch states, one per antenna (0 or 1).
using SwitchWeights = std::vector<std::uint8_t>;

/// ULA response e^(j 2 pi d (i - 1) cos phi), i = 1..N_r.
std::vector<std::complex<double>> array_response(const ReceiverSpec& spec, double phi);

/// |sum_i w_i a_i|^2 / |w|^2. Throws on all-zero weights.
double combining_gain(const SwitchWeights& w, const ReceiverSpec& spec, double phi);

/// Greedy activation: w_1 = 1, then antenna i is switched on iff it strictly
/// raises the normalized gain of the antennas already on.
SwitchWeights greedy_switch_combiner(const ReceiverSpec& spec, double phi);

/// Best nonzero switch vector by enumeration (N_r <= 20). Ties go to fewer
/// active antennas, then to the lexicographically smallest vector.
SwitchWeights exhaustive_switch_combiner(const ReceiverSpec& spec, double phi);

/// Serving-link combining gain of the receiver: 1 for a single antenna, N_r for
/// MRC, the switch gain otherwise.
double receiver_gain(const ReceiverSpec& spec, double phi);

}  // namespace mmh
