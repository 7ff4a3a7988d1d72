#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levygap/cli.hpp"
#include "levygap/errors.hpp"

namespace {

using namespace levygap;

int run(int argc, char** argv) {
    CLI::App app{"ergodic convergence-rate bounds for time-changed symmetric Levy processes"};
    app.require_subcommand(1);

    std::string config_path, preset, out_dir = ".";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::vector<std::string> inputs;

    CLI::App* analyze = app.add_subcommand(
        "analyze", "compute rate bounds; writes report.json and curves.csv");
    CLI::App* simulate = app.add_subcommand(
        "simulate", "sample the process and fit its decay rate; writes ensemble.json");
    CLI::App* report = app.add_subcommand(
        "report", "merge analysis reports; writes bounds.csv and curves.csv");

    for (CLI::App* sub : {analyze, simulate}) {
        sub->add_option("--config", config_path, "JSON run configuration file");
        sub->add_option("--preset", preset,
                        "shipped configuration: stable, brownian-exp, stable-mixture, "
                        "cauchy-brownian");
        sub->add_option("--out", out_dir, "output directory")->capture_default_str();
        sub->add_option("--seed", seed, "override sim.seed");
        sub->add_option("--threads", threads, "worker threads (0 = hardware)");
    }
    report->add_option("inputs", inputs, "report.json files to merge");
    report->add_option("--out", out_dir, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitUsage;
    }

    CLI::App* active = app.get_subcommands().front();
    if (active == report) return cli::cmd_report(inputs, out_dir);

    if (config_path.empty() == preset.empty()) {
        std::fprintf(stderr, "need exactly one of --config or --preset\n");
        return cli::kExitUsage;
    }
    cli::RunConfig rc = preset.empty() ? cli::load_config_file(config_path)
                                       : cli::parse_config(cli::preset_config(preset));
    if (active->count("--seed") && rc.has_sim) {
        rc.sim.seed = seed;
        rc.raw["sim"]["seed"] = seed;  // the hash must reflect the run that happened
    }
    if (active->count("--threads")) rc.sim.threads = threads;

    if (active == analyze) return cli::cmd_analyze(rc, out_dir);
    return cli::cmd_simulate(rc, out_dir);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return cli::kExitUsage;
    } catch (const UnsupportedFamilyError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return cli::kExitUnsupported;
    } catch (const NoSignalError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return cli::kExitError;
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return cli::kExitSchema;
    } catch (const InfiniteMassError& e) {
        std::fprintf(stderr, "hypothesis check failed: %s\n", e.what());
        return cli::kExitNoBound;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return cli::kExitError;
    }
}
