#include "mmh/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace mmh {

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s)
{
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

// Splits "12.5 dBm" into (12.5, "dbm").
std::pair<double, std::string> number_and_unit(const std::string& text, const std::string& key)
{
    const std::string t = trim(text);
    if (t.empty())
        throw ConfigError(key + ": empty value");
    const char* first = t.data();
    const char* last = t.data() + t.size();
    // from_chars does not accept a leading '+'
    if (*first == '+')
        ++first;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr == first)
        throw ConfigError(key + ": expected a number, got '" + t + "'");
    if (!std::isfinite(v))
        throw ConfigError(key + ": value must be finite, got '" + t + "'");
    return {v, lower(trim(std::string(ptr, last)))};
}

[[noreturn]] void bad_unit(const std::string& key, const std::string& unit, const char* allowed)
{
    throw ConfigError(key + ": unknown unit '" + unit + "' (expected " + allowed + ")");
}

std::string join_key(const std::string& section, const std::string& name) { return section + "." + name; }

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys = {
        {"scenario", {"name", "figure", "description", "mode"}},
        {"system",
         {"bs_density", "tx_power", "blockage_beta", "alpha_los", "alpha_nlos", "intercept_los", "intercept_nlos",
          "nakagami_los", "nakagami_nlos", "rectifier_eff", "activation_threshold", "min_distance", "noise_power",
          "noise_figure", "conversion_noise", "bandwidth", "carrier_freq", "user_density", "connected_fraction"}},
        {"antenna", {"tx_pattern", "tx_ula", "ula_convention", "rx_pattern"}},
        {"receiver", {"num_antennas", "element_spacing", "combiner"}},
        {"query",
         {"threshold", "threshold_nonconnected", "sinr_threshold", "split_ratio", "approx_terms", "user", "formula"}},
        {"sweep", {"variable", "unit", "values", "range"}},
        {"run", {"engine", "trials", "seed", "threads", "r_max", "timing"}},
        {"uhf",
         {"bs_density", "tx_power", "alpha", "carrier_freq", "intercept", "tx_antennas", "min_distance",
          "rectifier_eff", "activation_threshold", "noise_power", "bandwidth", "noise_figure", "conversion_noise"}},
    };
    return keys;
}

}  // namespace

// ---------------------------------------------------------------------------

RawConfig RawConfig::parse(const std::string& text, const std::string& source)
{
    RawConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno);
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';')
            continue;
        if (const auto hash = t.find(" #"); hash != std::string::npos)
            t = trim(t.substr(0, hash));
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(where + ": malformed section header '" + t + "'");
            section = lower(trim(t.substr(1, t.size() - 2)));
            if (section != "series" && !known_keys().count(section))
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected key = value, got '" + t + "'");
        if (section.empty())
            throw ConfigError(where + ": assignment outside any section");
        const std::string name = lower(trim(t.substr(0, eq)));
        const std::string value = trim(t.substr(eq + 1));
        if (name.empty())
            throw ConfigError(where + ": empty key");
        if (section == "series") {
            Series s;
            s.label = name;
            for (const std::string& a : split(value, ';')) {
                if (a.empty())
                    continue;
                if (a.find('=') == std::string::npos)
                    throw ConfigError(where + ": series '" + name + "' expects key=value assignments, got '" + a + "'");
                s.assignments.push_back(a);
            }
            for (const Series& other : cfg.series_)
                if (other.label == s.label)
                    throw ConfigError(where + ": duplicate series label '" + name + "'");
            cfg.series_.push_back(std::move(s));
            continue;
        }
        cfg.set(join_key(section, name), value, where);
    }
    check_known_keys(cfg);
    return cfg;
}

RawConfig RawConfig::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open scenario file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("error reading scenario file '" + path.string() + "'");
    return parse(buf.str(), path.string());
}

void RawConfig::set_assignment(const std::string& assignment, const std::string& origin)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError(origin + ": expected section.key=value, got '" + assignment + "'");
    const std::string key = lower(trim(assignment.substr(0, eq)));
    if (key.find('.') == std::string::npos)
        throw ConfigError(origin + ": key '" + key + "' must be written as section.key");
    set(key, trim(assignment.substr(eq + 1)), origin);
    check_known_keys(*this);
}

void RawConfig::set(const std::string& key, const std::string& value, const std::string& origin)
{
    entries_[key] = ConfigEntry{value, origin};
}

const std::string& RawConfig::get(const std::string& key) const { return entry(key).value; }

const ConfigEntry& RawConfig::entry(const std::string& key) const
{
    auto it = entries_.find(key);
    if (it == entries_.end())
        throw ConfigError("missing required key " + key);
    return it->second;
}

void check_known_keys(const RawConfig& raw)
{
    for (const auto& [key, e] : raw.entries()) {
        const auto dot = key.find('.');
        const std::string section = key.substr(0, dot);
        const std::string name = dot == std::string::npos ? "" : key.substr(dot + 1);
        auto it = known_keys().find(section);
        if (it == known_keys().end())
            throw ConfigError(e.origin + ": unknown section in key " + key);
        if (!it->second.count(name))
            throw ConfigError(e.origin + ": unknown key " + key);
    }
}

// ---------------------------------------------------------------------------

double parse_number(const std::string& text, const std::string& key)
{
    auto [v, unit] = number_and_unit(text, key);
    if (!unit.empty())
        throw ConfigError(key + ": unexpected unit '" + unit + "'");
    return v;
}

double convert_unit(double v, const std::string& unit_in, const std::string& key)
{
    const std::string unit = lower(unit_in);
    if (unit.empty())
        return v;
    if (unit == "w")
        return v;
    if (unit == "mw")
        return v * 1e-3;
    if (unit == "uw")
        return v * 1e-6;
    if (unit == "nw")
        return v * 1e-9;
    if (unit == "dbm")
        return dbm_to_watts(v);
    if (unit == "dbw")
        return dbw_to_watts(v);
    if (unit == "db")
        return db_to_linear(v);
    if (unit == "deg")
        return deg_to_rad(v);
    if (unit == "rad")
        return v;
    if (unit == "/km2")
        return per_km2(v);
    if (unit == "/m2")
        return v;
    if (unit == "m")
        return v;
    if (unit == "km")
        return v * 1e3;
    if (unit == "/m")
        return v;
    if (unit == "/km")
        return v * 1e-3;
    if (unit == "hz")
        return v;
    if (unit == "khz")
        return v * 1e3;
    if (unit == "mhz")
        return v * 1e6;
    if (unit == "ghz")
        return v * 1e9;
    bad_unit(key, unit, "a known unit");
}

double parse_power(const std::string& text, const std::string& key)
{
    auto [v, unit] = number_and_unit(text, key);
    if (unit.empty() || unit == "w" || unit == "mw" || unit == "uw" || unit == "nw" || unit == "dbw" || unit == "dbm") {
        if (v < 0.0 && unit.rfind("db", 0) != 0)
            throw ConfigError(key + ": linear power must be >= 0, got '" + text + "'");
        return convert_unit(v, unit, key);
    }
    if (unit == "db")
        return dbm_to_watts(v);
    bad_unit(key, unit, "W, mW, uW, nW, dBm, dBW or dB");
}

double parse_gain(const std::string& text, const std::string& key)
{
    auto [v, unit] = number_and_unit(text, key);
    if (unit.empty())
        return v;
    if (unit == "db")
        return db_to_linear(v);
    bad_unit(key, unit, "dB or none");
}

double parse_angle(const std::string& text, const std::string& key)
{
    auto [v, unit] = number_and_unit(text, key);
    if (unit.empty() || unit == "rad")
        return v;
    if (unit == "deg")
        return deg_to_rad(v);
    bad_unit(key, unit, "deg or rad");
}

double parse_density(const std::string& text, const std::string& key)
{
    auto [v, unit] = number_and_unit(text, key);
    if (unit.empty() || unit == "/m2")
        return v;
    if (unit == "/km2")
        return per_km2(v);
    bad_unit(key, unit, "/km2 or /m2");
}

double parse_length(const std::string& text, const std::string& key)
{
    auto [v, unit] = number_and_unit(text, key);
    if (unit.empty() || unit == "m" || unit == "km")
        return convert_unit(v, unit, key);
    bad_unit(key, unit, "m or km");
}

double parse_frequency(const std::string& text, const std::string& key)
{
    auto [v, unit] = number_and_unit(text, key);
    if (unit.empty() || unit == "hz" || unit == "khz" || unit == "mhz" || unit == "ghz")
        return convert_unit(v, unit, key);
    bad_unit(key, unit, "Hz, kHz, MHz or GHz");
}

double parse_inverse_length(const std::string& text, const std::string& key)
{
    auto [v, unit] = number_and_unit(text, key);
    if (unit.empty() || unit == "/m" || unit == "/km")
        return convert_unit(v, unit, key);
    bad_unit(key, unit, "/m or /km");
}

std::int64_t parse_integer(const std::string& text, const std::string& key)
{
    const std::string t = trim(text);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw ConfigError(key + ": expected an integer, got '" + t + "'");
    return v;
}

AntennaPattern parse_pattern(const std::string& text, const std::string& key)
{
    if (lower(trim(text)) == "omni")
        return AntennaPattern::omni();
    const auto parts = split(text, ',');
    if (parts.size() != 4)
        throw ConfigError(key + ": expected 'M, m, theta, thetabar', got '" + trim(text) + "'");
    AntennaPattern p;
    p.main_gain = parse_gain(parts[0], key + " (main gain)");
    p.side_gain = parse_gain(parts[1], key + " (side gain)");
    p.main_beamwidth = parse_angle(parts[2], key + " (main beamwidth)");
    p.side_beamwidth = parse_angle(parts[3], key + " (side beamwidth)");
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(key + ": " + e.what());
    }
    return p;
}

Combiner parse_combiner(const std::string& text, const std::string& key)
{
    const std::string t = lower(trim(text));
    if (t == "switch-greedy")
        return Combiner::SwitchGreedy;
    if (t == "switch-exhaustive")
        return Combiner::SwitchExhaustive;
    if (t == "mrc")
        return Combiner::Mrc;
    if (t == "single")
        return Combiner::Single;
    throw ConfigError(key + ": unknown combiner '" + t + "' (switch-greedy, switch-exhaustive, mrc, single)");
}

std::string to_string(Combiner c)
{
    switch (c) {
    case Combiner::SwitchGreedy:
        return "switch-greedy";
    case Combiner::SwitchExhaustive:
        return "switch-exhaustive";
    case Combiner::Mrc:
        return "mrc";
    case Combiner::Single:
        return "single";
    }
    return "?";
}

std::string to_string(ExperimentMode m)
{
    switch (m) {
    case ExperimentMode::EnergyConnected:
        return "energy-connected";
    case ExperimentMode::EnergyNonconnected:
        return "energy-nonconnected";
    case ExperimentMode::Overall:
        return "overall";
    case ExperimentMode::AvgPower:
        return "avg-power";
    case ExperimentMode::Swipt:
        return "swipt";
    case ExperimentMode::CombinerStudy:
        return "combiner-study";
    case ExperimentMode::UhfCompare:
        return "uhf-compare";
    }
    return "?";
}

std::string to_string(Engine e)
{
    switch (e) {
    case Engine::Analytic:
        return "analytic";
    case Engine::Simulate:
        return "sim";
    case Engine::Both:
        return "both";
    }
    return "?";
}

// ---------------------------------------------------------------------------

namespace {

ExperimentMode parse_mode(const std::string& text)
{
    const std::string t = lower(trim(text));
    for (ExperimentMode m : {ExperimentMode::EnergyConnected, ExperimentMode::EnergyNonconnected,
                             ExperimentMode::Overall, ExperimentMode::AvgPower, ExperimentMode::Swipt,
                             ExperimentMode::CombinerStudy, ExperimentMode::UhfCompare})
        if (to_string(m) == t)
            return m;
    throw ConfigError("scenario.mode: unknown mode '" + t + "'");
}

Engine parse_engine(const std::string& text, const std::string& key)
{
    const std::string t = lower(trim(text));
    if (t == "analytic")
        return Engine::Analytic;
    if (t == "sim" || t == "simulate")
        return Engine::Simulate;
    if (t == "both")
        return Engine::Both;
    throw ConfigError(key + ": unknown engine '" + t + "' (analytic, sim, both)");
}

bool parse_bool(const std::string& text, const std::string& key)
{
    const std::string t = lower(trim(text));
    if (t == "on" || t == "true" || t == "yes" || t == "1")
        return true;
    if (t == "off" || t == "false" || t == "no" || t == "0")
        return false;
    throw ConfigError(key + ": expected on/off, got '" + t + "'");
}

int to_int(std::int64_t v, const std::string& key)
{
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw ConfigError(key + ": integer out of range");
    return static_cast<int>(v);
}

// Reads an optional key through `parse` into `out`.
template <class T, class Parser>
void read(const RawConfig& raw, const std::string& key, T& out, Parser parse)
{
    if (raw.has(key))
        out = static_cast<T>(parse(raw.get(key), key));
}

void conflict(const std::string& a, const std::string& va, const std::string& b, const std::string& vb,
              const std::string& why)
{
    throw ConfigError("conflicting settings: " + a + "=" + va + " and " + b + "=" + vb + " (" + why + ")");
}

}  // namespace

ResolvedConfig resolve(const RawConfig& raw)
{
    check_known_keys(raw);
    ResolvedConfig c;
    read(raw, "scenario.name", c.name, [](const std::string& s, const std::string&) { return trim(s); });
    read(raw, "scenario.figure", c.figure, [](const std::string& s, const std::string&) { return trim(s); });
    read(raw, "scenario.description", c.description, [](const std::string& s, const std::string&) { return trim(s); });
    if (raw.has("scenario.mode"))
        c.mode = parse_mode(raw.get("scenario.mode"));

    SystemParams& p = c.params;
    read(raw, "system.bs_density", p.bs_density, parse_density);
    read(raw, "system.tx_power", p.tx_power, parse_power);
    read(raw, "system.blockage_beta", p.blockage_beta, parse_inverse_length);
    read(raw, "system.alpha_los", p.alpha_los, parse_number);
    read(raw, "system.alpha_nlos", p.alpha_nlos, parse_number);
    read(raw, "system.carrier_freq", p.carrier_freq, parse_frequency);
    p.intercept_los = free_space_intercept(p.carrier_freq);
    p.intercept_nlos = p.intercept_los;
    read(raw, "system.intercept_los", p.intercept_los, parse_gain);
    read(raw, "system.intercept_nlos", p.intercept_nlos, parse_gain);
    auto read_int = [&](const std::string& key, int& out) {
        if (raw.has(key))
            out = to_int(parse_integer(raw.get(key), key), key);
    };
    read_int("system.nakagami_los", p.nakagami_los);
    read_int("system.nakagami_nlos", p.nakagami_nlos);
    read(raw, "system.rectifier_eff", p.rectifier_eff, parse_number);
    read(raw, "system.activation_threshold", p.activation_threshold, parse_power);
    read(raw, "system.min_distance", p.min_distance, parse_length);
    read(raw, "system.bandwidth", p.bandwidth, parse_frequency);
    double nf_db = 10.0;
    if (raw.has("system.noise_figure"))
        nf_db = linear_to_db(parse_gain(raw.get("system.noise_figure"), "system.noise_figure"));
    if (raw.has("system.noise_power") && raw.has("system.noise_figure"))
        conflict("system.noise_power", raw.get("system.noise_power"), "system.noise_figure",
                 raw.get("system.noise_figure"), "give either the noise power or the noise figure");
    p.noise_power = thermal_noise_watts(p.bandwidth, nf_db);
    read(raw, "system.noise_power", p.noise_power, parse_power);
    read(raw, "system.conversion_noise", p.conversion_noise, parse_power);
    read(raw, "system.user_density", p.user_density, parse_density);
    read(raw, "system.connected_fraction", p.connected_fraction, parse_number);
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[system] ") + e.what());
    }

    // antenna
    if (raw.has("antenna.tx_pattern") && raw.has("antenna.tx_ula"))
        conflict("antenna.tx_pattern", raw.get("antenna.tx_pattern"), "antenna.tx_ula", raw.get("antenna.tx_ula"),
                 "choose one transmit pattern");
    UlaGainConvention conv = UlaGainConvention::DecibelSidelobe;
    if (raw.has("antenna.ula_convention")) {
        const std::string t = lower(trim(raw.get("antenna.ula_convention")));
        if (t == "db-sidelobe")
            conv = UlaGainConvention::DecibelSidelobe;
        else if (t == "as-printed")
            conv = UlaGainConvention::AsPrinted;
        else
            throw ConfigError("antenna.ula_convention: unknown value '" + t + "' (db-sidelobe, as-printed)");
    }
    c.tx = AntennaPattern::omni();
    read(raw, "antenna.tx_pattern", c.tx, parse_pattern);
    if (raw.has("antenna.tx_ula")) {
        const int n = to_int(parse_integer(raw.get("antenna.tx_ula"), "antenna.tx_ula"), "antenna.tx_ula");
        try {
            c.tx = ula_pattern(n, conv);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("antenna.tx_ula: ") + e.what());
        }
    }
    c.rx = AntennaPattern::omni();
    read(raw, "antenna.rx_pattern", c.rx, parse_pattern);
    c.gains = gain_distribution(c.tx, c.rx);

    // receiver
    read_int("receiver.num_antennas", c.receiver.num_antennas);
    read(raw, "receiver.element_spacing", c.receiver.element_spacing, parse_number);
    read(raw, "receiver.combiner", c.receiver.combiner, parse_combiner);
    try {
        c.receiver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[receiver] ") + e.what());
    }
    if (c.receiver.combiner == Combiner::SwitchExhaustive && c.receiver.num_antennas > 20)
        conflict("receiver.combiner", "switch-exhaustive", "receiver.num_antennas",
                 std::to_string(c.receiver.num_antennas), "exhaustive search is limited to 20 antennas");
    if (c.receiver.combiner == Combiner::Single && c.receiver.num_antennas != 1)
        conflict("receiver.combiner", "single", "receiver.num_antennas", std::to_string(c.receiver.num_antennas),
                 "a single-antenna receiver has num_antennas=1");

    // query
    QuerySettings& q = c.query;
    read(raw, "query.threshold", q.threshold, parse_power);
    q.threshold_nonconnected = q.threshold;
    read(raw, "query.threshold_nonconnected", q.threshold_nonconnected, parse_power);
    read(raw, "query.sinr_threshold", q.sinr_threshold, parse_gain);
    read(raw, "query.split_ratio", q.split_ratio, parse_number);
    read_int("query.approx_terms", q.approx_terms);
    if (q.approx_terms < 1)
        throw ConfigError("query.approx_terms: must be >= 1");
    if (!(q.threshold >= 0.0) || !(q.threshold_nonconnected >= 0.0))
        throw ConfigError("query.threshold: must be >= 0");
    if (!(q.sinr_threshold > 0.0))
        throw ConfigError("query.sinr_threshold: must be positive");
    if (!(q.split_ratio > 0.0 && q.split_ratio < 1.0))
        throw ConfigError("query.split_ratio: must lie in (0, 1)");

    bool user_given = false;
    if (raw.has("query.user")) {
        user_given = true;
        const std::string t = lower(trim(raw.get("query.user")));
        if (t == "connected")
            q.user = CoverageMode::Connected;
        else if (t == "nonconnected")
            q.user = CoverageMode::Nonconnected;
        else
            throw ConfigError("query.user: unknown value '" + t + "' (connected, nonconnected)");
    }
    if (raw.has("query.formula")) {
        const std::string t = lower(trim(raw.get("query.formula")));
        if (t == "exact")
            q.formula = AvgPowerFormula::Exact;
        else if (t == "limit")
            q.formula = AvgPowerFormula::Limit;
        else if (t == "approx")
            q.formula = AvgPowerFormula::Approx;
        else
            throw ConfigError("query.formula: unknown value '" + t + "' (exact, limit, approx)");
    }

    const std::string mode_text = to_string(c.mode);
    switch (c.mode) {
    case ExperimentMode::EnergyConnected:
    case ExperimentMode::UhfCompare:
        if (user_given && q.user != CoverageMode::Connected)
            conflict("scenario.mode", mode_text, "query.user", raw.get("query.user"), "this mode models connected users");
        q.user = CoverageMode::Connected;
        break;
    case ExperimentMode::EnergyNonconnected:
        if (user_given && q.user != CoverageMode::Nonconnected)
            conflict("scenario.mode", mode_text, "query.user", raw.get("query.user"),
                     "this mode models nonconnected users");
        q.user = CoverageMode::Nonconnected;
        break;
    case ExperimentMode::Swipt:
    case ExperimentMode::CombinerStudy:
        if (q.user != CoverageMode::Connected)
            conflict("scenario.mode", mode_text, "query.user", raw.get("query.user"),
                     "SWIPT users are aligned with their serving station");
        if (raw.has("system.connected_fraction") && p.connected_fraction != 1.0)
            conflict("scenario.mode", mode_text, "system.connected_fraction", raw.get("system.connected_fraction"),
                     "SWIPT assumes every user is connected");
        break;
    case ExperimentMode::Overall:
        if (user_given)
            conflict("scenario.mode", mode_text, "query.user", raw.get("query.user"),
                     "the user mix comes from system.connected_fraction");
        break;
    case ExperimentMode::AvgPower:
        break;
    }
    if (c.mode != ExperimentMode::Swipt && c.mode != ExperimentMode::CombinerStudy && c.receiver.num_antennas != 1)
        conflict("scenario.mode", mode_text, "receiver.num_antennas", std::to_string(c.receiver.num_antennas),
                 "multi-antenna receivers are modelled only in swipt and combiner-study");
    if (c.mode == ExperimentMode::AvgPower && q.formula == AvgPowerFormula::Approx &&
        q.user != CoverageMode::Connected)
        conflict("query.formula", "approx", "query.user", "nonconnected",
                 "the LOS-ball closed form is derived for connected users");
    if (c.mode == ExperimentMode::AvgPower && q.threshold < p.activation_threshold)
        conflict("query.threshold", raw.has("query.threshold") ? raw.get("query.threshold") : "0",
                 "system.activation_threshold", raw.get("system.activation_threshold"),
                 "the average-power threshold must be >= psi_min");

    // run
    RunSettings& r = c.run;
    if (raw.has("run.engine"))
        r.engine = parse_engine(raw.get("run.engine"), "run.engine");
    if (raw.has("run.trials"))
        r.trials = parse_integer(raw.get("run.trials"), "run.trials");
    if (raw.has("run.seed")) {
        const std::int64_t s = parse_integer(raw.get("run.seed"), "run.seed");
        if (s < 0)
            throw ConfigError("run.seed: must be >= 0");
        r.seed = static_cast<std::uint64_t>(s);
    }
    read_int("run.threads", r.threads);
    read(raw, "run.r_max", r.r_max, parse_length);
    read(raw, "run.timing", r.timing, parse_bool);
    if (r.engine != Engine::Analytic && r.trials < 1)
        conflict("run.engine", to_string(r.engine), "run.trials", std::to_string(r.trials),
                 "simulation needs at least one trial");
    if (r.threads < 0)
        throw ConfigError("run.threads: must be >= 0");
    if (r.r_max < 0.0 || (r.r_max > 0.0 && r.r_max <= p.min_distance))
        throw ConfigError("run.r_max: must exceed system.min_distance");

    // comparison network
    UhfParams& u = c.uhf;
    read(raw, "uhf.bs_density", u.bs_density, parse_density);
    read(raw, "uhf.tx_power", u.tx_power, parse_power);
    read(raw, "uhf.alpha", u.alpha, parse_number);
    double uhf_freq = 2.1e9;
    read(raw, "uhf.carrier_freq", uhf_freq, parse_frequency);
    u.intercept = free_space_intercept(uhf_freq);
    read(raw, "uhf.intercept", u.intercept, parse_gain);
    read_int("uhf.tx_antennas", u.tx_antennas);
    read(raw, "uhf.min_distance", u.min_distance, parse_length);
    read(raw, "uhf.rectifier_eff", u.rectifier_eff, parse_number);
    read(raw, "uhf.activation_threshold", u.activation_threshold, parse_power);
    double uhf_bw = 20e6;
    read(raw, "uhf.bandwidth", uhf_bw, parse_frequency);
    double uhf_nf = 10.0;
    if (raw.has("uhf.noise_figure"))
        uhf_nf = linear_to_db(parse_gain(raw.get("uhf.noise_figure"), "uhf.noise_figure"));
    u.noise_power = thermal_noise_watts(uhf_bw, uhf_nf);
    read(raw, "uhf.noise_power", u.noise_power, parse_power);
    read(raw, "uhf.conversion_noise", u.conversion_noise, parse_power);
    try {
        u.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("[uhf] ") + e.what());
    }
    return c;
}

SweepSpec parse_sweep(const RawConfig& raw)
{
    SweepSpec s;
    if (!raw.has("sweep.variable"))
        throw ConfigError("missing required key sweep.variable");
    s.variable = lower(trim(raw.get("sweep.variable")));
    {
        const auto dot = s.variable.find('.');
        const auto it = known_keys().find(s.variable.substr(0, dot));
        if (dot == std::string::npos || it == known_keys().end() || !it->second.count(s.variable.substr(dot + 1)) ||
            s.variable.rfind("sweep.", 0) == 0 || s.variable.rfind("run.", 0) == 0 ||
            s.variable.rfind("scenario.", 0) == 0)
            throw ConfigError("sweep.variable: '" + s.variable + "' is not a sweepable key");
    }
    if (raw.has("sweep.unit"))
        s.unit = trim(raw.get("sweep.unit"));
    const bool has_values = raw.has("sweep.values");
    const bool has_range = raw.has("sweep.range");
    if (has_values == has_range) {
        if (has_values)
            conflict("sweep.values", raw.get("sweep.values"), "sweep.range", raw.get("sweep.range"),
                     "give the grid one way");
        throw ConfigError("sweep: give either sweep.values or sweep.range");
    }
    if (has_values) {
        for (const std::string& v : split(raw.get("sweep.values"), ','))
            s.values.push_back(parse_number(v, "sweep.values"));
    } else {
        const auto parts = split(raw.get("sweep.range"), ',');
        if (parts.size() != 3)
            throw ConfigError("sweep.range: expected 'start, stop, step'");
        const double a = parse_number(parts[0], "sweep.range");
        const double b = parse_number(parts[1], "sweep.range");
        const double h = parse_number(parts[2], "sweep.range");
        if (!(h > 0.0) || b < a)
            throw ConfigError("sweep.range: need step > 0 and stop >= start");
        const auto n = static_cast<std::int64_t>(std::floor((b - a) / h + 1e-9));
        if (n > 100000)
            throw ConfigError("sweep.range: grid too large");
        for (std::int64_t i = 0; i <= n; ++i)
            s.values.push_back(a + static_cast<double>(i) * h);
    }
    if (s.values.empty())
        throw ConfigError("sweep: grid is empty");
    for (std::size_t i = 1; i < s.values.size(); ++i)
        if (!(s.values[i] > s.values[i - 1]))
            throw ConfigError("sweep: grid must be strictly increasing");
    // the unit has to be one the target key understands
    (void)convert_unit(1.0, s.unit, "sweep.unit");
    return s;
}

}  // namespace mmh
