#include "mmh/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <optional>

namespace mmh {

namespace {

using Clock = std::chrono::steady_clock;

struct Point {
    double x;  // grid value as written
    ResolvedConfig cfg;
};

struct SeriesPlan {
    std::string label;
    std::vector<Point> points;
    // only query settings change along the grid, so one model and one set of
    // trials serve every point
    bool shared_network = false;
};

std::string grid_assignment_value(double x, const std::string& unit)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return unit.empty() ? std::string(buf) : std::string(buf) + " " + unit;
}

std::vector<SeriesPlan> plan_series(const RawConfig& raw, const SweepSpec& sweep)
{
    std::vector<RawConfig::Series> series = raw.series();
    if (series.empty())
        series.push_back({"default", {}});
    std::vector<SeriesPlan> plans;
    for (const auto& s : series) {
        RawConfig r = raw;
        for (const std::string& a : s.assignments)
            r.set_assignment(a, "[series] " + s.label);
        SeriesPlan plan;
        plan.label = s.label;
        plan.shared_network = sweep.variable.rfind("query.", 0) == 0;
        for (double x : sweep.values) {
            RawConfig point = r;
            point.set(sweep.variable, grid_assignment_value(x, sweep.unit), "sweep grid");
            try {
                plan.points.push_back({x, resolve(point)});
            } catch (const ConfigError& e) {
                throw ConfigError("series '" + s.label + "', " + sweep.variable + " = " +
                                  grid_assignment_value(x, sweep.unit) + ": " + e.what());
            }
        }
        plans.push_back(std::move(plan));
    }
    return plans;
}

bool wants_analytic(Engine e) { return e != Engine::Simulate; }
bool wants_sim(Engine e) { return e != Engine::Analytic; }

std::optional<double> analytic_value(const ResolvedConfig& c, const CoverageModel& m)
{
    const QuerySettings& q = c.query;
    switch (c.mode) {
    case ExperimentMode::EnergyConnected:
    case ExperimentMode::UhfCompare:
        return m.energy_coverage_connected(q.threshold);
    case ExperimentMode::EnergyNonconnected:
        return m.energy_coverage_nonconnected(q.threshold);
    case ExperimentMode::Overall: {
        const double eps = c.params.connected_fraction;
        const double pc = eps > 0.0 ? m.energy_coverage_connected(q.threshold) : 0.0;
        const double pn = eps < 1.0 ? m.energy_coverage_nonconnected(q.threshold_nonconnected) : 0.0;
        return mix_coverage(eps, pc, pn);
    }
    case ExperimentMode::AvgPower:
        if (q.user == CoverageMode::Connected) {
            switch (q.formula) {
            case AvgPowerFormula::Exact:
                return m.avg_power_connected(q.threshold);
            case AvgPowerFormula::Limit:
                return m.avg_power_connected_limit();
            case AvgPowerFormula::Approx:
                return m.avg_power_connected_approx();
            }
        }
        return q.formula == AvgPowerFormula::Exact ? m.avg_power_nonconnected(q.threshold)
                                                   : m.avg_power_nonconnected_limit();
    case ExperimentMode::Swipt:
    case ExperimentMode::CombinerStudy:
        // the closed form describes the single-antenna receiver only
        if (c.receiver.num_antennas != 1)
            return std::nullopt;
        return m.swipt_success({q.sinr_threshold, q.threshold, q.split_ratio});
    }
    return std::nullopt;
}

CoverageEstimate mix_estimates(double eps, const CoverageEstimate& con, const CoverageEstimate& ncon)
{
    CoverageEstimate e;
    e.estimate = mix_coverage(eps, con.estimate, ncon.estimate);
    e.ci_halfwidth = std::hypot(eps * con.ci_halfwidth, (1.0 - eps) * ncon.ci_halfwidth);
    e.trials = con.trials;
    e.seed = con.seed;
    return e;
}

// Simulates points that share one network configuration.
std::vector<CoverageEstimate> simulate_group(const std::vector<const Point*>& pts, bool uhf)
{
    const ResolvedConfig& c = pts.front()->cfg;
    const McOptions opts{c.run.threads, c.run.r_max};
    const auto trials = c.run.trials;
    const auto seed = c.run.seed;
    std::vector<double> th, th_n;
    std::vector<SwiptQuery> qs;
    for (const Point* p : pts) {
        th.push_back(p->cfg.query.threshold);
        th_n.push_back(p->cfg.query.threshold_nonconnected);
        qs.push_back({p->cfg.query.sinr_threshold, p->cfg.query.threshold, p->cfg.query.split_ratio});
    }
    if (uhf)
        return simulate_uhf_baseline(th, trials, seed, c.uhf, McOptions{c.run.threads, 0.0});
    switch (c.mode) {
    case ExperimentMode::EnergyConnected:
    case ExperimentMode::UhfCompare:
        return simulate_energy_coverage(CoverageMode::Connected, th, trials, seed, c.params, c.gains, opts);
    case ExperimentMode::EnergyNonconnected:
        return simulate_energy_coverage(CoverageMode::Nonconnected, th, trials, seed, c.params, c.gains, opts);
    case ExperimentMode::Overall: {
        const double eps = c.params.connected_fraction;
        const auto con = simulate_energy_coverage(CoverageMode::Connected, th, trials, seed, c.params, c.gains, opts);
        const auto ncon =
            simulate_energy_coverage(CoverageMode::Nonconnected, th_n, trials, seed + 1, c.params, c.gains, opts);
        std::vector<CoverageEstimate> out;
        for (std::size_t i = 0; i < con.size(); ++i)
            out.push_back(mix_estimates(eps, con[i], ncon[i]));
        return out;
    }
    case ExperimentMode::AvgPower: {
        std::vector<CoverageEstimate> out;
        for (const Point* p : pts)
            out.push_back(simulate_avg_power(c.query.user, p->cfg.query.threshold, trials, seed, c.params, c.gains, opts));
        return out;
    }
    case ExperimentMode::Swipt:
    case ExperimentMode::CombinerStudy:
        return simulate_swipt(qs, c.receiver, trials, seed, c.params, c.gains, opts);
    }
    return {};
}

void evaluate_series(const SeriesPlan& plan, const std::string& label, bool uhf, ResultTable& table)
{
    const std::size_t n = plan.points.size();
    const Engine engine = plan.points.front().cfg.run.engine;
    const bool timing = plan.points.front().cfg.run.timing;
    std::vector<std::optional<double>> analytic(n);
    std::vector<CoverageEstimate> sim(n);
    std::vector<double> seconds(n, 0.0);

    if (wants_analytic(engine) && !uhf) {
        std::optional<CoverageModel> shared;
        for (std::size_t i = 0; i < n; ++i) {
            const ResolvedConfig& c = plan.points[i].cfg;
            const auto t0 = Clock::now();
            if (!plan.shared_network || !shared)
                shared.emplace(c.params, c.gains, c.query.approx_terms);
            analytic[i] = analytic_value(c, *shared);
            seconds[i] += std::chrono::duration<double>(Clock::now() - t0).count();
        }
    }
    if (wants_sim(engine)) {
        std::vector<std::vector<const Point*>> groups;
        if (plan.shared_network || uhf) {
            groups.emplace_back();
            for (const Point& p : plan.points)
                groups.back().push_back(&p);
        } else {
            for (const Point& p : plan.points)
                groups.push_back({&p});
        }
        std::size_t row = 0;
        for (const auto& g : groups) {
            const auto t0 = Clock::now();
            const auto est = simulate_group(g, uhf);
            const double dt = std::chrono::duration<double>(Clock::now() - t0).count() / static_cast<double>(g.size());
            for (const CoverageEstimate& e : est) {
                sim[row] = e;
                seconds[row] += dt;
                ++row;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Cell> cells{label, plan.points[i].x};
        if (wants_analytic(engine)) {
            if (analytic[i])
                cells.emplace_back(*analytic[i]);
            else
                cells.emplace_back(std::monostate{});
        }
        if (wants_sim(engine)) {
            cells.emplace_back(sim[i].estimate);
            cells.emplace_back(sim[i].ci_halfwidth);
            cells.emplace_back(sim[i].trials);
        }
        if (timing)
            cells.emplace_back(seconds[i]);
        table.add_row(std::move(cells));
    }
}

}  // namespace

Scenario make_scenario(const RawConfig& raw)
{
    Scenario s;
    s.raw = raw;
    s.base = resolve(raw);
    s.sweep = parse_sweep(raw);
    (void)plan_series(raw, s.sweep);
    return s;
}

ResultTable run_experiment(const Scenario& scenario, const ProgressFn& progress)
{
    const auto plans = plan_series(scenario.raw, scenario.sweep);
    const ResolvedConfig& base = scenario.base;

    ResultTable table;
    std::string x_name = scenario.sweep.variable;
    if (!scenario.sweep.unit.empty())
        x_name += " (" + scenario.sweep.unit + ")";
    table.columns = {"series", x_name};
    if (wants_analytic(base.run.engine))
        table.columns.push_back("analytic");
    if (wants_sim(base.run.engine)) {
        table.columns.push_back("simulated");
        table.columns.push_back("ci_halfwidth");
        table.columns.push_back("trials");
    }
    if (base.run.timing)
        table.columns.push_back("wall_time_s");

    for (const SeriesPlan& plan : plans) {
        // engine and timing decide the column set, so they may not vary by series
        const RunSettings& r = plan.points.front().cfg.run;
        if (r.engine != base.run.engine || r.timing != base.run.timing)
            throw ConfigError("series '" + plan.label + "': run.engine and run.timing cannot be set per series");
        if (progress)
            progress(plan.label);
        evaluate_series(plan, plan.label, false, table);
    }
    if (base.mode == ExperimentMode::UhfCompare && wants_sim(base.run.engine)) {
        if (progress)
            progress("uhf");
        evaluate_series(plans.front(), "uhf", true, table);
    }
    return table;
}

std::filesystem::path bundled_scenario_dir()
{
#ifdef MMH_SCENARIO_DIR
    return std::filesystem::path(MMH_SCENARIO_DIR);
#else
    return std::filesystem::path("scenarios");
#endif
}

std::filesystem::path find_scenario(const std::string& name_or_path)
{
    const std::filesystem::path p(name_or_path);
    if (std::filesystem::exists(p))
        return p;
    if (!p.has_parent_path()) {
        auto candidate = bundled_scenario_dir() / p;
        if (!candidate.has_extension())
            candidate += ".ini";
        if (std::filesystem::exists(candidate))
            return candidate;
    }
    return p;
}

std::vector<BundledScenario> list_bundled(const std::filesystem::path& dir)
{
    std::vector<BundledScenario> out;
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
        throw IoError("scenario directory '" + dir.string() + "' not found");
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".ini")
            continue;
        const RawConfig raw = RawConfig::load(entry.path());
        auto value = [&](const char* key) { return raw.has(key) ? raw.get(key) : std::string(); };
        BundledScenario b;
        b.name = raw.has("scenario.name") ? raw.get("scenario.name") : entry.path().stem().string();
        b.figure = value("scenario.figure");
        b.mode = value("scenario.mode");
        b.description = value("scenario.description");
        b.path = entry.path();
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

}  // namespace mmh
