#pragma once

// Monte Carlo ground truth: Poisson deployments with blockage, Nakagami
// fading and random beam alignment.
//
// Every trial draws from its own generator seeded by (seed, trial index), and
// per-trial results are reduced in a fixed order, so estimates do not depend
// on the worker count. HARVEST_THREADS caps the number of workers.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "mmh/analysis.hpp"
#include "mmh/combiner.hpp"
#include "mmh/core_model.hpp"

namespace mmh {

struct BsRecord {
    double distance;  // m
    double azimuth;   // rad
    LinkState state;
    double fading;    // power, unit mean
    double gain;      // directivity delta
};

struct NetworkRealization {
    std::vector<BsRecord> stations;
    std::optional<std::size_t> serving;  // connected mode only

    /// P_t delta H g summed over all stations.
    double received_power(const SystemParams& params) const;
    /// Received power of the serving station alone (0 without one).
    double serving_power(const SystemParams& params) const;
};

struct CoverageEstimate {
    double estimate = 0.0;
    std::int64_t trials = 0;
    double ci_halfwidth = 0.0;  // 95 % normal approximation
    std::uint64_t seed = 0;
};

/// Generator for one trial, derived from (seed, trial).
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial);

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform on (0, 1].
    double uniform_pos() { return 1.0 - uniform(); }
    /// Gamma(n, 1/n) for integer n: normalized sum of n unit exponentials.
    double nakagami_power(int n);
    /// Sum of n unit exponentials.
    double gamma_int(int n);
    std::int64_t poisson(double mean);

private:
    std::mt19937_64 engine_;
};

struct McOptions {
    /// Worker cap; 0 reads HARVEST_THREADS, falling back to the hardware count.
    int threads = 0;
    /// Deployment radius; 0 picks it from the mean-power tail bound.
    double r_max = 0.0;
};

int resolve_threads(int requested);

/// Smallest radius whose far-field mean power is below
/// max(1e-6 of the in-disc mean, 1e-3 psi_min), capped at 20 km.
double truncation_radius(const SystemParams& params, const GainDistribution& gains);

void sample_network(NetworkRealization& out, const SystemParams& params, const GainDistribution& gains,
                    CoverageMode mode, TrialRng& rng, double r_max);
NetworkRealization sample_network(const SystemParams& params, const GainDistribution& gains, CoverageMode mode,
                                  TrialRng& rng, double r_max);

/// Harvested-energy coverage at each threshold from one set of trials.
std::vector<CoverageEstimate> simulate_energy_coverage(CoverageMode mode, const std::vector<double>& thresholds,
                                                       std::int64_t trials, std::uint64_t seed,
                                                       const SystemParams& params, const GainDistribution& gains,
                                                       const McOptions& opts = {});
CoverageEstimate simulate_energy_coverage(CoverageMode mode, double psi, std::int64_t trials, std::uint64_t seed,
                                          const SystemParams& params, const GainDistribution& gains,
                                          const McOptions& opts = {});

/// Mean of gamma 1{gamma > psi}, gamma the harvested energy.
CoverageEstimate simulate_avg_power(CoverageMode mode, double psi, std::int64_t trials, std::uint64_t seed,
                                    const SystemParams& params, const GainDistribution& gains,
                                    const McOptions& opts = {});

/// Pr[I > mu] for the interference at a connected user.
std::vector<CoverageEstimate> simulate_interference_ccdf(const std::vector<double>& mus, std::int64_t trials,
                                                         std::uint64_t seed, const SystemParams& params,
                                                         const GainDistribution& gains, const McOptions& opts = {});

struct ServingSample {
    bool present = false;
    LinkState state = LinkState::Los;
    double distance = 0.0;
};

/// Serving-link state and distance per trial (connected association rule).
std::vector<ServingSample> simulate_serving(std::int64_t trials, std::uint64_t seed, const SystemParams& params,
                                            const GainDistribution& gains, const McOptions& opts = {});

/// Joint SINR and energy success for each query, from one set of trials.
std::vector<CoverageEstimate> simulate_swipt(const std::vector<SwiptQuery>& queries, const ReceiverSpec& spec,
                                             std::int64_t trials, std::uint64_t seed, const SystemParams& params,
                                             const GainDistribution& gains, const McOptions& opts = {});
CoverageEstimate simulate_swipt(const SwiptQuery& q, const ReceiverSpec& spec, std::int64_t trials,
                                std::uint64_t seed, const SystemParams& params, const GainDistribution& gains,
                                const McOptions& opts = {});

/// Sub-6 GHz comparison network: no blockage, one path-loss law, nearest-BS
/// association, MRT serving gain (sum of N_t unit exponentials), Rayleigh
/// interferers.
struct UhfParams {
    double bs_density = per_km2(25.0);
    double tx_power = dbm_to_watts(43.0);
    double alpha = 3.6;
    double intercept = free_space_intercept(2.1e9);
    int tx_antennas = 8;
    double min_distance = 1.0;
    double rectifier_eff = 1.0;
    double activation_threshold = 0.0;
    double noise_power = thermal_noise_watts(20e6, 10.0);
    double conversion_noise = 0.0;

    void validate() const;
};

double uhf_truncation_radius(const UhfParams& params);

std::vector<CoverageEstimate> simulate_uhf_baseline(const std::vector<double>& thresholds, std::int64_t trials,
                                                    std::uint64_t seed, const UhfParams& params,
                                                    const McOptions& opts = {});
CoverageEstimate simulate_uhf_baseline(double psi, std::int64_t trials, std::uint64_t seed, const UhfParams& params,
                                       const McOptions& opts = {});
CoverageEstimate simulate_uhf_baseline(const SwiptQuery& q, std::int64_t trials, std::uint64_t seed,
                                       const UhfParams& params, const McOptions& opts = {});
/// Mean serving-link fading power of the baseline (MRT gain check).
CoverageEstimate simulate_uhf_serving_fading(std::int64_t trials, std::uint64_t seed, const UhfParams& params,
                                             const McOptions& opts = {});

/// Exact-order pairwise sum; the tree shape depends only on the length.
double pairwise_sum(const double* x, std::size_t n);

CoverageEstimate proportion_estimate(std::int64_t hits, std::int64_t trials, std::uint64_t seed);
CoverageEstimate mean_estimate(const std::vector<double>& samples, std::uint64_t seed);

}  // namespace mmh
