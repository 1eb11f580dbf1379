// mmharvest: runs energy-harvesting experiments and writes CSV.
//
//   mmharvest list
//   mmharvest run <scenario> [--set section.key=value]... [--seed S]
//                 [--trials N] [--out PATH] [--engine analytic|sim|both]
//
// Exit codes: 0 success, 1 usage or unexpected error, 2 configuration error,
// 3 numerical failure, 4 I/O failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "mmh/experiment.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

int list_scenarios()
{
    const auto all = mmh::list_bundled();
    for (const auto& s : all)
        std::printf("%-8s %-20s %-24s %s\n", s.name.c_str(), s.mode.c_str(), s.figure.c_str(), s.description.c_str());
    return kOk;
}

struct RunArgs {
    std::string scenario;
    std::vector<std::string> sets;
    std::string seed;
    std::string trials;
    std::string out;
    std::string engine;
    bool quiet = false;
};

int run_scenario(const RunArgs& a)
{
    mmh::RawConfig raw = mmh::RawConfig::load(mmh::find_scenario(a.scenario));
    for (const auto& s : a.sets)
        raw.set_assignment(s);
    if (!a.seed.empty())
        raw.set("run.seed", a.seed, "--seed");
    if (!a.trials.empty())
        raw.set("run.trials", a.trials, "--trials");
    if (!a.engine.empty())
        raw.set("run.engine", a.engine, "--engine");

    const mmh::Scenario scenario = mmh::make_scenario(raw);
    mmh::ProgressFn progress;
    if (!a.quiet)
        progress = [&](const std::string& label) {
            std::fprintf(stderr, "%s: series %s\n", scenario.base.name.c_str(), label.c_str());
        };
    const mmh::ResultTable table = mmh::run_experiment(scenario, progress);
    if (a.out.empty() || a.out == "-")
        mmh::emit_csv(table, std::cout);
    else
        mmh::emit_csv(table, std::filesystem::path(a.out));
    std::cout.flush();
    if (!std::cout)
        throw mmh::IoError("error writing to standard output");
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"mmWave energy harvesting and SWIPT coverage: analytic and Monte Carlo engines"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List bundled scenarios");

    RunArgs args;
    auto* run = app.add_subcommand("run", "Run a scenario file or bundled scenario name");
    run->add_option("scenario", args.scenario, "Scenario file or bundled name")->required();
    run->add_option("--set", args.sets, "Override a key, section.key=value (repeatable)");
    run->add_option("--seed", args.seed, "Base random seed");
    run->add_option("--trials", args.trials, "Monte Carlo trials per grid point");
    run->add_option("--out", args.out, "CSV destination (default stdout)");
    run->add_option("--engine", args.engine, "analytic, sim or both");
    run->add_flag("--quiet,-q", args.quiet, "No progress on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*list)
            return list_scenarios();
        return run_scenario(args);
    } catch (const mmh::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kConfig;
    } catch (const mmh::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return kIo;
    } catch (const mmh::NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s (partial %.6g, error estimate %.3g)\n", e.what(), e.partial(),
                     e.error_estimate());
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
}
