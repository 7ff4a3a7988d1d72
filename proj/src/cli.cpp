#include "levygap/cli.hpp"

#include <cstdio>
#include <filesystem>

#include "levygap/errors.hpp"
#include "levygap/report_io.hpp"

namespace levygap::cli {

namespace {

using nlohmann::ordered_json;

std::string join(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory \"" + dir + "\"");
}

}  // namespace

int cmd_analyze(const RunConfig& rc, const std::string& out_dir) {
    ensure_dir(out_dir);
    bounds::AnalyzeOptions opts;
    opts.grid = rc.grid;
    opts.fit_scaling = rc.fit_scaling;
    opts.use_closed_form = rc.use_closed_form;
    const bounds::ErgodicityReport rep = bounds::analyze(rc.psi, rc.speed, rc.quad, opts);

    const ordered_json doc = report::report_to_json(rc, rep);
    report::write_json_file(join(out_dir, "report.json"), doc);
    report::write_text_file(join(out_dir, "curves.csv"), report::curves_csv(doc));

    if (rep.status == "ok") return kExitOk;
    std::fprintf(stderr, "%s: no bound certified (status: %s)\n", rc.name.c_str(),
                 rep.status.c_str());
    if (!rep.hypotheses_ok) {
        std::fprintf(stderr, "hypothesis check failed: %s\n",
                     rep.mu_finite ? "a structural condition on the symbol does not hold"
                                   : "the stationary measure is infinite");
    }
    return kExitNoBound;
}

int cmd_simulate(const RunConfig& rc, const std::string& out_dir) {
    if (!rc.has_sim) throw ConfigError("config: simulate needs a \"sim\" block");
    if (!rc.psi.simulable()) {
        std::fprintf(stderr, "%s: symbol family \"%s\" has no exact sampler\n",
                     rc.name.c_str(), symbol::family_name(rc.psi.family()).c_str());
        return kExitUnsupported;
    }
    if (!rc.speed.finite_mass()) {
        std::fprintf(stderr,
                     "%s: hypothesis check failed: the stationary measure is infinite, "
                     "so there is no equilibrium to relax to\n",
                     rc.name.c_str());
        return kExitNoBound;
    }
    ensure_dir(out_dir);

    const sim::PathEnsemble ens = sim::sample_ensemble(rc.psi, rc.speed, rc.sim);
    const sim::Observable obs = sim::make_observable(rc.observable);
    const double mu_f =
        rc.speed.integrate(obs.f, {-1.0, 0.0, 1.0}, rc.quad).value / rc.speed.total_mass();

    // reference lower bound for the comparison record
    double lambda1 = 0.0;
    bool have_lambda1 = false;
    try {
        const harmonic::HarmonicEvaluator ev(rc.psi, rc.quad, rc.use_closed_form);
        const auto deltas = bounds::compute_delta(ev, rc.speed, rc.grid);
        if (!deltas.delta.at_boundary && std::isfinite(deltas.delta.value) &&
            deltas.delta.value > 0.0) {
            lambda1 = bounds::lambda1_lower(deltas.delta.value);
            have_lambda1 = true;
        }
    } catch (const std::exception&) {
        // comparison record stays "not-computed"; the simulation itself proceeds
    }

    sim::DecayEstimate decay;
    try {
        decay = sim::estimate_decay_rate(ens, obs, mu_f);
    } catch (const NoSignalError& e) {
        std::fprintf(stderr, "%s: no signal: %s\n", rc.name.c_str(), e.what());
        const ordered_json doc = report::ensemble_to_json(
            rc, ens, nullptr, nullptr,
            ordered_json{{"verdict", "no-signal"}, {"detail", e.what()}});
        report::write_json_file(join(out_dir, "ensemble.json"), doc);
        return kExitError;
    }

    const sim::ReturnTimeEstimate ret =
        sim::estimate_return_time(rc.psi, rc.speed, rc.sim, rc.return_eps, rc.return_x0);

    ordered_json comparison;
    if (have_lambda1) {
        comparison = {{"lambda1_lower", lambda1},
                      {"fitted_rate", decay.rate},
                      {"verdict", decay.rate >= 0.9 * lambda1 ? "consistent" : "inconsistent"}};
    } else {
        comparison = {{"verdict", "not-computed"}};
    }

    const ordered_json doc = report::ensemble_to_json(rc, ens, &decay, &ret, comparison);
    report::write_json_file(join(out_dir, "ensemble.json"), doc);
    if (rc.dump_paths)
        report::write_text_file(join(out_dir, "paths.csv"), report::paths_csv(ens));
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& report_paths, const std::string& out_dir) {
    if (report_paths.empty()) {
        std::fprintf(stderr, "report: no input files\n");
        return kExitUsage;
    }
    std::vector<ordered_json> docs;
    docs.reserve(report_paths.size());
    try {
        for (const auto& p : report_paths) docs.push_back(report::read_json_file(p));
        ensure_dir(out_dir);
        report::write_text_file(join(out_dir, "bounds.csv"),
                                report::merged_bounds_csv(docs));
        report::write_text_file(join(out_dir, "curves.csv"),
                                report::merged_curves_csv(docs));
    } catch (const SchemaError& e) {
        std::fprintf(stderr, "report: %s\n", e.what());
        return kExitSchema;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "report: %s\n", e.what());
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace levygap::cli
