#pragma once

// Scenario files: sectioned key = value text with unit suffixes.
//
//   [system]
//   bs_density = 100 /km2
//   tx_power   = 43 dBm
//
// Keys are addressed as "section.key". Later assignments win, so command-line
// overrides are applied by calling RawConfig::set after parsing.

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmh/analysis.hpp"
#include "mmh/combiner.hpp"
#include "mmh/core_model.hpp"
#include "mmh/montecarlo.hpp"

namespace mmh {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConfigEntry {
    std::string value;
    std::string origin;  // "file:line" or "--set"
};

/// Ordered assignments plus the [series] block, which keeps file order.
class RawConfig {
public:
    static RawConfig parse(const std::string& text, const std::string& source = "<string>");
    static RawConfig load(const std::filesystem::path& path);

    /// Applies "section.key=value".
    void set_assignment(const std::string& assignment, const std::string& origin = "--set");
    void set(const std::string& key, const std::string& value, const std::string& origin = "--set");

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    const std::string& get(const std::string& key) const;
    const ConfigEntry& entry(const std::string& key) const;
    const std::map<std::string, ConfigEntry>& entries() const { return entries_; }

    struct Series {
        std::string label;
        std::vector<std::string> assignments;  // "section.key=value"
    };
    const std::vector<Series>& series() const { return series_; }

private:
    std::map<std::string, ConfigEntry> entries_;
    std::vector<Series> series_;
};

// ---------------------------------------------------------------------------
// Value parsing. Every parser throws ConfigError naming `key`.

double parse_number(const std::string& text, const std::string& key);
/// W, mW, uW, nW, dBm, dBW; bare "dB" means dBm; no suffix means watts.
double parse_power(const std::string& text, const std::string& key);
/// "dB" or linear.
double parse_gain(const std::string& text, const std::string& key);
/// "deg" or "rad" (default rad).
double parse_angle(const std::string& text, const std::string& key);
/// "/km2" or "/m2" (default /m2).
double parse_density(const std::string& text, const std::string& key);
/// "m" or "km" (default m).
double parse_length(const std::string& text, const std::string& key);
/// Hz, kHz, MHz, GHz.
double parse_frequency(const std::string& text, const std::string& key);
/// "/m" or "/km" (default /m).
double parse_inverse_length(const std::string& text, const std::string& key);
std::int64_t parse_integer(const std::string& text, const std::string& key);
/// "M, m, theta, thetabar" with per-field units, or "omni".
AntennaPattern parse_pattern(const std::string& text, const std::string& key);
Combiner parse_combiner(const std::string& text, const std::string& key);
std::string to_string(Combiner c);

/// Numeric value of `text` under a named unit ("dBm", "dB", "W", "/km2", ...,
/// or empty for plain numbers). Used for sweep grids, where the CSV keeps the
/// number as written.
double convert_unit(double value, const std::string& unit, const std::string& key);

// ---------------------------------------------------------------------------

enum class ExperimentMode {
    EnergyConnected,
    EnergyNonconnected,
    Overall,
    AvgPower,
    Swipt,
    CombinerStudy,
    UhfCompare,
};

enum class Engine { Analytic, Simulate, Both };

enum class AvgPowerFormula { Exact, Limit, Approx };

std::string to_string(ExperimentMode m);
std::string to_string(Engine e);

struct QuerySettings {
    double threshold = 0.0;               // psi (connected or only mode)
    double threshold_nonconnected = 0.0;  // psi for nonconnected users in overall mode
    double sinr_threshold = 1.0;          // T, linear
    double split_ratio = 0.5;             // nu
    int approx_terms = 5;
    CoverageMode user = CoverageMode::Connected;
    AvgPowerFormula formula = AvgPowerFormula::Exact;
};

struct RunSettings {
    Engine engine = Engine::Both;
    std::int64_t trials = 10000;
    std::uint64_t seed = 1;
    int threads = 0;
    double r_max = 0.0;
    bool timing = true;
};

/// Everything needed to evaluate one grid point.
struct ResolvedConfig {
    std::string name;
    std::string figure;
    std::string description;
    ExperimentMode mode = ExperimentMode::EnergyConnected;
    SystemParams params;
    AntennaPattern tx;
    AntennaPattern rx;
    GainDistribution gains;
    ReceiverSpec receiver;
    QuerySettings query;
    RunSettings run;
    UhfParams uhf;
};

/// Builds and validates the full configuration. Conflicting fields raise
/// ConfigError naming both of them.
ResolvedConfig resolve(const RawConfig& raw);

/// Checks that every key belongs to a known section and name.
void check_known_keys(const RawConfig& raw);

struct SweepSpec {
    std::string variable;      // "section.key"
    std::string unit;          // applied to every grid value
    std::vector<double> values;  // as written, before unit conversion
};

SweepSpec parse_sweep(const RawConfig& raw);

}  // namespace mmh
