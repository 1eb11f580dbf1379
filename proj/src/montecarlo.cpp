#include "mmh/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace mmh {

using std::numbers::pi;

namespace {

constexpr double kMaxRadius = 20000.0;

// Runs body(trial, scratch) for every trial on up to `threads` workers. Each
// worker owns one Scratch object; results must be written per trial.
template <class Scratch, class Body>
void for_each_trial(std::int64_t trials, int threads, Body body)
{
    const int workers = static_cast<int>(std::min<std::int64_t>(std::max(1, threads), std::max<std::int64_t>(1, trials)));
    if (workers <= 1) {
        Scratch scratch;
        for (std::int64_t t = 0; t < trials; ++t)
            body(t, scratch);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            Scratch scratch;
            for (std::int64_t t = w; t < trials; t += workers)
                body(t, scratch);
        });
    }
    for (auto& th : pool)
        th.join();
}

void check_trials(std::int64_t trials)
{
    if (trials < 1)
        throw std::invalid_argument("simulation needs at least one trial");
}

double link_gain(LinkState s, double r, const SystemParams& p)
{
    return s == LinkState::Los ? p.intercept_los * std::pow(r, -p.alpha_los)
                               : p.intercept_nlos * std::pow(r, -p.alpha_nlos);
}

double resolved_radius(const McOptions& opts, const SystemParams& p, const GainDistribution& g)
{
    if (opts.r_max > 0.0) {
        if (opts.r_max <= p.min_distance)
            throw std::invalid_argument("McOptions: r_max must exceed min_distance");
        return opts.r_max;
    }
    return truncation_radius(p, g);
}

struct ConnectedPowers {
    bool empty = true;
    double serving = 0.0;       // S
    double interference = 0.0;  // I
};

ConnectedPowers connected_powers(const NetworkRealization& net, const SystemParams& p)
{
    ConnectedPowers out;
    if (!net.serving)
        return out;
    out.empty = false;
    const std::size_t s = *net.serving;
    for (std::size_t i = 0; i < net.stations.size(); ++i) {
        const BsRecord& b = net.stations[i];
        const double v = p.tx_power * b.gain * b.fading * link_gain(b.state, b.distance, p);
        if (i == s)
            out.serving = v;
        else
            out.interference += v;
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    engine_.seed(seq);
}

double TrialRng::gamma_int(int n)
{
    double prod = 1.0;
    double logsum = 0.0;
    for (int j = 0; j < n; ++j) {
        prod *= uniform_pos();
        if (prod < 1e-280) {
            logsum += std::log(prod);
            prod = 1.0;
        }
    }
    return -(logsum + std::log(prod));
}

double TrialRng::nakagami_power(int n)
{
    return gamma_int(n) / n;
}

std::int64_t TrialRng::poisson(double mean)
{
    if (!(mean > 0.0))
        return 0;
    std::poisson_distribution<std::int64_t> dist(mean);
    return dist(engine_);
}

int resolve_threads(int requested)
{
    if (requested > 0)
        return requested;
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0)
        hw = 1;
    if (const char* env = std::getenv("HARVEST_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0)
            return cap;
    }
    return hw;
}

double truncation_radius(const SystemParams& params, const GainDistribution& gains)
{
    params.validate();
    const CoverageModel model(params, gains);
    const double r_g = params.min_distance;
    const double in_disc = model.psi_los(r_g) + model.psi_nlos(r_g);
    if (!(in_disc > 0.0))
        return std::min(kMaxRadius, std::max(10.0 * r_g, 1000.0));
    const double tol = std::max(1e-6 * in_disc, 1e-3 * params.activation_threshold);
    auto tail = [&](double r) { return model.psi_los(r) + model.psi_nlos(r); };
    if (tail(kMaxRadius) > tol)
        return kMaxRadius;
    double lo = r_g;
    double hi = kMaxRadius;
    for (int it = 0; it < 60 && hi - lo > 1e-3 * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (tail(mid) > tol)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

void sample_network(NetworkRealization& out, const SystemParams& p, const GainDistribution& g, CoverageMode mode,
                    TrialRng& rng, double r_max)
{
    out.stations.clear();
    out.serving.reset();
    const double r_g = p.min_distance;
    const double r2lo = r_g * r_g;
    const double r2hi = r_max * r_max;
    const std::int64_t count = rng.poisson(p.bs_density * pi * (r2hi - r2lo));
    out.stations.reserve(static_cast<std::size_t>(count));

    std::array<double, 5> cdf{};
    double acc = 0.0;
    for (int i = 0; i < 5; ++i) {
        acc += g.probs[i];
        cdf[i] = acc;
    }

    std::size_t near_los = 0, near_nlos = 0;
    double d_los = kInf, d_nlos = kInf;
    for (std::int64_t n = 0; n < count; ++n) {
        BsRecord b;
        b.distance = std::sqrt(r2lo + (r2hi - r2lo) * rng.uniform());
        b.azimuth = 2.0 * pi * rng.uniform();
        b.state = rng.uniform() < std::exp(-p.blockage_beta * b.distance) ? LinkState::Los : LinkState::Nlos;
        b.fading = rng.nakagami_power(b.state == LinkState::Los ? p.nakagami_los : p.nakagami_nlos);
        const double u = rng.uniform() * acc;
        int idx = 0;
        while (idx < 4 && u >= cdf[idx])
            ++idx;
        b.gain = g.gains[idx];
        const std::size_t pos = out.stations.size();
        if (b.state == LinkState::Los && b.distance < d_los) {
            d_los = b.distance;
            near_los = pos;
        }
        if (b.state == LinkState::Nlos && b.distance < d_nlos) {
            d_nlos = b.distance;
            near_nlos = pos;
        }
        out.stations.push_back(b);
    }
    if (mode == CoverageMode::Connected && !out.stations.empty()) {
        std::size_t s;
        if (d_los == kInf)
            s = near_nlos;
        else if (d_nlos == kInf)
            s = near_los;
        else
            s = link_gain(LinkState::Los, d_los, p) >= link_gain(LinkState::Nlos, d_nlos, p) ? near_los : near_nlos;
        out.serving = s;
        out.stations[s].gain = g.aligned_gain();
    }
}

NetworkRealization sample_network(const SystemParams& params, const GainDistribution& gains, CoverageMode mode,
                                  TrialRng& rng, double r_max)
{
    NetworkRealization out;
    sample_network(out, params, gains, mode, rng, r_max);
    return out;
}

double NetworkRealization::received_power(const SystemParams& p) const
{
    double y = 0.0;
    for (const BsRecord& b : stations)
        y += p.tx_power * b.gain * b.fading * link_gain(b.state, b.distance, p);
    return y;
}

double NetworkRealization::serving_power(const SystemParams& p) const
{
    if (!serving)
        return 0.0;
    const BsRecord& b = stations[*serving];
    return p.tx_power * b.gain * b.fading * link_gain(b.state, b.distance, p);
}

// ---------------------------------------------------------------------------

double pairwise_sum(const double* x, std::size_t n)
{
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

CoverageEstimate proportion_estimate(std::int64_t hits, std::int64_t trials, std::uint64_t seed)
{
    CoverageEstimate e;
    e.trials = trials;
    e.seed = seed;
    e.estimate = static_cast<double>(hits) / static_cast<double>(trials);
    e.ci_halfwidth = 1.96 * std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(trials));
    return e;
}

CoverageEstimate mean_estimate(const std::vector<double>& samples, std::uint64_t seed)
{
    CoverageEstimate e;
    e.trials = static_cast<std::int64_t>(samples.size());
    e.seed = seed;
    if (samples.empty())
        return e;
    const double n = static_cast<double>(samples.size());
    e.estimate = pairwise_sum(samples.data(), samples.size()) / n;
    std::vector<double> dev(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        dev[i] = (samples[i] - e.estimate) * (samples[i] - e.estimate);
    const double var = samples.size() > 1 ? pairwise_sum(dev.data(), dev.size()) / (n - 1.0) : 0.0;
    e.ci_halfwidth = 1.96 * std::sqrt(var / n);
    return e;
}

namespace {

std::vector<CoverageEstimate> count_exceedances(const std::vector<double>& values, const std::vector<double>& thresholds,
                                                std::uint64_t seed)
{
    std::vector<CoverageEstimate> out;
    out.reserve(thresholds.size());
    for (double th : thresholds) {
        std::int64_t hits = 0;
        for (double v : values)
            hits += v > th;
        out.push_back(proportion_estimate(hits, static_cast<std::int64_t>(values.size()), seed));
    }
    return out;
}

// Received power Y per trial; empty networks give 0.
std::vector<double> received_power_samples(CoverageMode mode, std::int64_t trials, std::uint64_t seed,
                                           const SystemParams& params, const GainDistribution& gains,
                                           const McOptions& opts)
{
    check_trials(trials);
    params.validate();
    gains.validate();
    const double r_max = resolved_radius(opts, params, gains);
    std::vector<double> y(static_cast<std::size_t>(trials));
    for_each_trial<NetworkRealization>(trials, resolve_threads(opts.threads), [&](std::int64_t t, NetworkRealization& net) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        sample_network(net, params, gains, mode, rng, r_max);
        y[static_cast<std::size_t>(t)] = net.received_power(params);
    });
    return y;
}

}  // namespace

std::vector<CoverageEstimate> simulate_energy_coverage(CoverageMode mode, const std::vector<double>& thresholds,
                                                       std::int64_t trials, std::uint64_t seed,
                                                       const SystemParams& params, const GainDistribution& gains,
                                                       const McOptions& opts)
{
    std::vector<double> y = received_power_samples(mode, trials, seed, params, gains, opts);
    for (double& v : y)
        v = harvested_energy(v, params.rectifier_eff, params.activation_threshold);
    return count_exceedances(y, thresholds, seed);
}

CoverageEstimate simulate_energy_coverage(CoverageMode mode, double psi, std::int64_t trials, std::uint64_t seed,
                                          const SystemParams& params, const GainDistribution& gains,
                                          const McOptions& opts)
{
    return simulate_energy_coverage(mode, std::vector<double>{psi}, trials, seed, params, gains, opts).front();
}

CoverageEstimate simulate_avg_power(CoverageMode mode, double psi, std::int64_t trials, std::uint64_t seed,
                                    const SystemParams& params, const GainDistribution& gains, const McOptions& opts)
{
    std::vector<double> y = received_power_samples(mode, trials, seed, params, gains, opts);
    for (double& v : y) {
        const double h = harvested_energy(v, params.rectifier_eff, params.activation_threshold);
        v = h > psi ? h : 0.0;
    }
    return mean_estimate(y, seed);
}

std::vector<CoverageEstimate> simulate_interference_ccdf(const std::vector<double>& mus, std::int64_t trials,
                                                         std::uint64_t seed, const SystemParams& params,
                                                         const GainDistribution& gains, const McOptions& opts)
{
    check_trials(trials);
    params.validate();
    gains.validate();
    const double r_max = resolved_radius(opts, params, gains);
    std::vector<double> inter(static_cast<std::size_t>(trials));
    for_each_trial<NetworkRealization>(trials, resolve_threads(opts.threads), [&](std::int64_t t, NetworkRealization& net) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        sample_network(net, params, gains, CoverageMode::Connected, rng, r_max);
        inter[static_cast<std::size_t>(t)] = connected_powers(net, params).interference;
    });
    return count_exceedances(inter, mus, seed);
}

std::vector<ServingSample> simulate_serving(std::int64_t trials, std::uint64_t seed, const SystemParams& params,
                                            const GainDistribution& gains, const McOptions& opts)
{
    check_trials(trials);
    const double r_max = resolved_radius(opts, params, gains);
    std::vector<ServingSample> out(static_cast<std::size_t>(trials));
    for_each_trial<NetworkRealization>(trials, resolve_threads(opts.threads), [&](std::int64_t t, NetworkRealization& net) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        sample_network(net, params, gains, CoverageMode::Connected, rng, r_max);
        ServingSample& s = out[static_cast<std::size_t>(t)];
        if (net.serving) {
            s.present = true;
            s.state = net.stations[*net.serving].state;
            s.distance = net.stations[*net.serving].distance;
        }
    });
    return out;
}

std::vector<CoverageEstimate> simulate_swipt(const std::vector<SwiptQuery>& queries, const ReceiverSpec& spec,
                                             std::int64_t trials, std::uint64_t seed, const SystemParams& params,
                                             const GainDistribution& gains, const McOptions& opts)
{
    check_trials(trials);
    params.validate();
    gains.validate();
    spec.validate();
    for (const SwiptQuery& q : queries)
        q.validate();
    const double r_max = resolved_radius(opts, params, gains);
    const double branches = spec.combiner == Combiner::Single ? 1.0 : spec.num_antennas;

    struct TrialPowers {
        bool empty;
        double serving, interference, combining;
    };
    std::vector<TrialPowers> rows(static_cast<std::size_t>(trials));
    for_each_trial<NetworkRealization>(trials, resolve_threads(opts.threads), [&](std::int64_t t, NetworkRealization& net) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        // angle of arrival first, so the network draw is the same for every receiver
        const double phi = 2.0 * pi * rng.uniform();
        sample_network(net, params, gains, CoverageMode::Connected, rng, r_max);
        const ConnectedPowers cp = connected_powers(net, params);
        rows[static_cast<std::size_t>(t)] = {cp.empty, cp.serving, cp.interference, receiver_gain(spec, phi)};
    });

    std::vector<CoverageEstimate> out;
    out.reserve(queries.size());
    const double s2 = params.noise_power;
    const double sc2 = params.conversion_noise;
    for (const SwiptQuery& q : queries) {
        const double nu = q.split_ratio;
        std::int64_t hits = 0;
        for (const TrialPowers& r : rows) {
            if (r.empty)
                continue;
            const double sinr = nu * r.combining * r.serving / (nu * (r.interference + s2) + sc2);
            const double incident = r.serving + r.interference + s2;
            const double gamma =
                incident > params.activation_threshold ? branches * (1.0 - nu) * params.rectifier_eff * incident : 0.0;
            hits += sinr > q.sinr_threshold && gamma > q.energy_threshold;
        }
        out.push_back(proportion_estimate(hits, trials, seed));
    }
    return out;
}

CoverageEstimate simulate_swipt(const SwiptQuery& q, const ReceiverSpec& spec, std::int64_t trials,
                                std::uint64_t seed, const SystemParams& params, const GainDistribution& gains,
                                const McOptions& opts)
{
    return simulate_swipt(std::vector<SwiptQuery>{q}, spec, trials, seed, params, gains, opts).front();
}

// ---------------------------------------------------------------------------

void UhfParams::validate() const
{
    if (!(bs_density > 0.0) || !(tx_power >= 0.0) || !(alpha > 2.0) || !(intercept > 0.0) || tx_antennas < 1 ||
        !(min_distance > 0.0) || !(rectifier_eff > 0.0 && rectifier_eff <= 1.0) || activation_threshold < 0.0 ||
        noise_power < 0.0 || conversion_noise < 0.0)
        throw std::invalid_argument("UhfParams: invalid baseline parameters");
}

double uhf_truncation_radius(const UhfParams& p)
{
    p.validate();
    // far-field mean relative to the in-disc mean is (R / r_g)^(2 - alpha)
    const double r = p.min_distance * std::pow(1e-6, 1.0 / (2.0 - p.alpha));
    return std::min(kMaxRadius, r);
}

namespace {

struct UhfTrial {
    bool empty = true;
    double serving = 0.0;
    double interference = 0.0;
    double serving_fading = 0.0;
};

std::vector<UhfTrial> uhf_trials(std::int64_t trials, std::uint64_t seed, const UhfParams& p, const McOptions& opts)
{
    check_trials(trials);
    p.validate();
    const double r_max = opts.r_max > 0.0 ? opts.r_max : uhf_truncation_radius(p);
    std::vector<UhfTrial> out(static_cast<std::size_t>(trials));
    struct Scratch {
        std::vector<double> dist, fade;
    };
    for_each_trial<Scratch>(trials, resolve_threads(opts.threads), [&](std::int64_t t, Scratch& sc) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        const double r2lo = p.min_distance * p.min_distance;
        const double r2hi = r_max * r_max;
        const std::int64_t count = rng.poisson(p.bs_density * pi * (r2hi - r2lo));
        sc.dist.clear();
        sc.fade.clear();
        std::size_t nearest = 0;
        for (std::int64_t n = 0; n < count; ++n) {
            sc.dist.push_back(std::sqrt(r2lo + (r2hi - r2lo) * rng.uniform()));
            sc.fade.push_back(rng.gamma_int(1));
            if (sc.dist.back() < sc.dist[nearest])
                nearest = sc.dist.size() - 1;
        }
        UhfTrial& row = out[static_cast<std::size_t>(t)];
        if (count == 0)
            return;
        row.empty = false;
        // the serving link gets an MRT gain: sum of N_t unit exponentials
        sc.fade[nearest] = rng.gamma_int(p.tx_antennas);
        row.serving_fading = sc.fade[nearest];
        for (std::size_t i = 0; i < sc.dist.size(); ++i) {
            const double v = p.tx_power * sc.fade[i] * p.intercept * std::pow(sc.dist[i], -p.alpha);
            if (i == nearest)
                row.serving = v;
            else
                row.interference += v;
        }
    });
    return out;
}

}  // namespace

std::vector<CoverageEstimate> simulate_uhf_baseline(const std::vector<double>& thresholds, std::int64_t trials,
                                                    std::uint64_t seed, const UhfParams& params, const McOptions& opts)
{
    const auto rows = uhf_trials(trials, seed, params, opts);
    std::vector<double> h(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        h[i] = rows[i].empty ? 0.0
                             : harvested_energy(rows[i].serving + rows[i].interference, params.rectifier_eff,
                                                params.activation_threshold);
    return count_exceedances(h, thresholds, seed);
}

CoverageEstimate simulate_uhf_baseline(double psi, std::int64_t trials, std::uint64_t seed, const UhfParams& params,
                                       const McOptions& opts)
{
    return simulate_uhf_baseline(std::vector<double>{psi}, trials, seed, params, opts).front();
}

CoverageEstimate simulate_uhf_baseline(const SwiptQuery& q, std::int64_t trials, std::uint64_t seed,
                                       const UhfParams& params, const McOptions& opts)
{
    q.validate();
    const auto rows = uhf_trials(trials, seed, params, opts);
    const double nu = q.split_ratio;
    std::int64_t hits = 0;
    for (const UhfTrial& r : rows) {
        if (r.empty)
            continue;
        const double sinr = nu * r.serving / (nu * (r.interference + params.noise_power) + params.conversion_noise);
        const double incident = r.serving + r.interference + params.noise_power;
        const double gamma =
            incident > params.activation_threshold ? (1.0 - nu) * params.rectifier_eff * incident : 0.0;
        hits += sinr > q.sinr_threshold && gamma > q.energy_threshold;
    }
    return proportion_estimate(hits, trials, seed);
}

CoverageEstimate simulate_uhf_serving_fading(std::int64_t trials, std::uint64_t seed, const UhfParams& params,
                                             const McOptions& opts)
{
    const auto rows = uhf_trials(trials, seed, params, opts);
    std::vector<double> f;
    f.reserve(rows.size());
    for (const UhfTrial& r : rows)
        if (!r.empty)
            f.push_back(r.serving_fading);
    return mean_estimate(f, seed);
}

}  // namespace mmh
