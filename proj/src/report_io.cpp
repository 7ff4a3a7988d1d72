#include "levygap/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "levygap/errors.hpp"

namespace levygap::report {

namespace {

using nlohmann::ordered_json;

ordered_json num_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;  // JSON has no inf/nan
}

std::string fmt(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void csv_row(std::string& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    out += "\r\n";
}

ordered_json sup_json(const bounds::SupResult& s) {
    return {{"value", num_or_null(s.value)},
            {"at_x", s.at_x},
            {"at_scan_boundary", s.at_boundary}};
}

ordered_json conditions_json(const symbol::ConditionReport& c) {
    auto one = [](symbol::Verdict v, const std::string& diag) {
        return ordered_json{{"verdict", symbol::verdict_name(v)}, {"diagnostic", diag}};
    };
    return {{"resolvent_integrable", one(c.a1, c.a1_diagnostic)},
            {"origin_integral_diverges", one(c.a2, c.a2_diagnostic)},
            {"superlinear_growth", one(c.a3, c.a3_diagnostic)},
            {"tail_exponent_estimate", c.tail_exponent_estimate},
            {"origin_exponent_estimate", c.origin_exponent_estimate},
            {"all_hold", c.all_hold()}};
}

// pull a numeric field that may be null/missing; empty string for the CSV
std::string get_csv_num(const ordered_json& j, std::initializer_list<const char*> path) {
    const ordered_json* cur = &j;
    for (const char* key : path) {
        if (!cur->is_object() || !cur->contains(key)) return "";
        cur = &cur->at(key);
    }
    if (cur->is_number()) return fmt(cur->get<double>());
    return "";
}

void require_report_schema(const ordered_json& doc) {
    if (!doc.is_object() || !doc.contains("schema") || !doc.at("schema").is_string() ||
        doc.at("schema").get<std::string>() != kReportSchema) {
        throw SchemaError(std::string("expected a ") + kReportSchema + " document");
    }
    for (const char* key : {"name", "status", "config_hash", "tolerances", "curve"}) {
        if (!doc.contains(key))
            throw SchemaError(std::string("report document missing \"") + key + "\"");
    }
}

}  // namespace

ordered_json report_to_json(const cli::RunConfig& rc, const bounds::ErgodicityReport& rep) {
    ordered_json doc;
    doc["schema"] = kReportSchema;
    doc["name"] = rc.name;
    doc["config_hash"] = cli::config_hash(rc.raw);
    doc["symbol_family"] = symbol::family_name(rc.psi.family());
    doc["symbol_params"] = rc.psi.params();
    doc["speed_family"] = speed::family_name(rc.speed.family());
    doc["speed_params"] = rc.speed.params();
    doc["tolerances"] = {{"quad_atol", rc.quad.atol},
                         {"quad_rtol", rc.quad.rtol},
                         {"max_half_periods", rc.quad.max_half_periods},
                         {"accel_depth", rc.quad.accel_depth},
                         {"grid_lo", rc.grid.lo},
                         {"grid_hi", rc.grid.hi},
                         {"grid_points", rc.grid.points}};
    doc["conditions"] = conditions_json(rep.conditions);
    doc["measure"] = {{"finite", rep.mu_finite},
                      {"total_mass", rep.mu_finite ? ordered_json(rep.mu_total)
                                                   : ordered_json(nullptr)}};
    doc["status"] = rep.status;

    if (rep.hypotheses_ok) {
        doc["functionals"] = {
            {"delta", sup_json(rep.deltas.delta)},
            {"delta_plus", sup_json(rep.deltas.delta_plus)},
            {"delta_minus", sup_json(rep.deltas.delta_minus)},
            {"I", num_or_null(rep.kappa.I)},
            {"I_error", num_or_null(rep.kappa.I_error)},
            {"I_finite", rep.kappa.finite},
            {"I_diagnostic", rep.kappa.diagnostic}};
        doc["bounds"] = {
            {"lambda1_lower",
             rep.lambda1_valid ? ordered_json(rep.lambda1) : ordered_json(nullptr)},
            {"lambda1_valid", rep.lambda1_valid},
            {"kappa_lower",
             rep.kappa.finite ? ordered_json(rep.kappa.kappa_lower) : ordered_json(nullptr)},
            {"M0_upper",
             rep.kappa.finite ? ordered_json(rep.kappa.M0_upper) : ordered_json(nullptr)},
            {"lambda0_lower", rep.lambda0.lower_valid ? ordered_json(rep.lambda0.lower)
                                                      : ordered_json(nullptr)},
            {"lambda0_upper", rep.lambda0.upper_valid ? ordered_json(rep.lambda0.upper)
                                                      : ordered_json(nullptr)}};
    } else {
        doc["functionals"] = nullptr;
        doc["bounds"] = nullptr;
    }

    if (rep.wlsc_params) {
        ordered_json w;
        w["delta_s"] = rep.wlsc_params->delta_s;
        w["beta"] = rep.wlsc_params->beta;
        if (rep.wlsc) {
            w["valid"] = rep.wlsc->valid;
            w["diagnostic"] = rep.wlsc->diagnostic;
            w["lambda1_lower"] =
                rep.wlsc->valid ? num_or_null(rep.wlsc->lambda1_lower) : ordered_json(nullptr);
            w["kappa_lower"] =
                rep.wlsc->valid ? num_or_null(rep.wlsc->kappa_lower) : ordered_json(nullptr);
            w["inf_scan"] = sup_json(rep.wlsc->inf_scan);
            w["kappa_integral"] = num_or_null(rep.wlsc->kappa_integral);
        }
        doc["wlsc"] = w;
    } else {
        doc["wlsc"] = nullptr;
    }

    if (rep.stable_path) {
        doc["stable_path"] = {{"omega_alpha", rep.stable_path->omega_alpha},
                              {"delta1", rep.stable_path->delta1},
                              {"I1", rep.stable_path->I1},
                              {"lambda1_lower", rep.stable_path->lambda1_lower},
                              {"kappa_lower", rep.stable_path->kappa_lower}};
    } else {
        doc["stable_path"] = nullptr;
    }

    if (rep.log_envelope_path) {
        doc["log_envelope_path"] = {
            {"delta2", rep.log_envelope_path->delta2},
            {"I2", num_or_null(rep.log_envelope_path->I2)},
            {"lambda1_lower", rep.log_envelope_path->lambda1_lower},
            {"kappa_lower", num_or_null(rep.log_envelope_path->kappa_lower)},
            {"sup_scan", sup_json(rep.log_envelope_path->sup_scan)}};
    } else {
        doc["log_envelope_path"] = nullptr;
    }

    ordered_json curve = ordered_json::array();
    for (const auto& p : rep.deltas.curve) {
        curve.push_back({{"x", p.x},
                         {"H", p.H},
                         {"mu_tail", p.mu_tail},
                         {"objective", p.objective}});
    }
    doc["curve"] = curve;
    return doc;
}

ordered_json ensemble_to_json(const cli::RunConfig& rc, const sim::PathEnsemble& ens,
                              const sim::DecayEstimate* decay,
                              const sim::ReturnTimeEstimate* ret,
                              const ordered_json& comparison) {
    ordered_json doc;
    doc["schema"] = kEnsembleSchema;
    doc["name"] = rc.name;
    doc["config_hash"] = cli::config_hash(rc.raw);
    doc["symbol_family"] = symbol::family_name(rc.psi.family());
    doc["symbol_params"] = rc.psi.params();
    doc["speed_family"] = speed::family_name(rc.speed.family());
    doc["speed_params"] = rc.speed.params();
    // everything that determines the sampled values; worker count is absent
    // on purpose (the bytes must not depend on it)
    doc["sim"] = {{"seed", ens.cfg.seed},
                  {"n_paths", ens.cfg.n_paths},
                  {"T", ens.cfg.T},
                  {"dt", ens.cfg.step()},
                  {"output_points", ens.times.size()},
                  {"init", ens.cfg.init == sim::InitialLaw::Point ? "point" : "stationary"},
                  {"x0", ens.cfg.x0},
                  {"base_cap_factor", ens.cfg.base_cap_factor},
                  {"observable", rc.observable}};
    doc["truncated_paths"] = ens.truncated_count();

    if (decay) {
        doc["decay"] = {{"observable", decay->observable},
                        {"mu_f", decay->mu_f},
                        {"rate", num_or_null(decay->rate)},
                        {"ci_low", num_or_null(decay->ci_low)},
                        {"ci_high", num_or_null(decay->ci_high)},
                        {"window_t1", decay->window_t1},
                        {"window_t2", decay->window_t2},
                        {"window_points", decay->window_points},
                        {"residual_rms", num_or_null(decay->residual_rms)}};
        ordered_json series = ordered_json::array();
        for (const auto& row : decay->mean_series)
            series.push_back({{"t", row[0]}, {"mean", row[1]}, {"se", row[2]}});
        doc["mean_series"] = series;
    } else {
        doc["decay"] = nullptr;
        doc["mean_series"] = nullptr;
    }

    if (ret) {
        doc["return_time"] = {{"eps", ret->eps},
                              {"x0", ret->x0},
                              {"mean", num_or_null(ret->mean)},
                              {"ci_low", num_or_null(ret->ci_low)},
                              {"ci_high", num_or_null(ret->ci_high)},
                              {"n_paths", ret->n_paths},
                              {"n_censored", ret->n_censored}};
    } else {
        doc["return_time"] = nullptr;
    }

    doc["comparison"] = comparison;
    return doc;
}

std::string curves_csv(const ordered_json& doc) {
    require_report_schema(doc);
    std::string out;
    csv_row(out, {"x", "H", "mu_tail", "objective"});
    for (const auto& p : doc.at("curve")) {
        csv_row(out, {fmt(p.at("x").get<double>()), fmt(p.at("H").get<double>()),
                      fmt(p.at("mu_tail").get<double>()),
                      fmt(p.at("objective").get<double>())});
    }
    return out;
}

std::string merged_bounds_csv(const std::vector<ordered_json>& reports) {
    std::string out;
    csv_row(out, {"name",          "config_hash",  "status",
                  "quad_atol",     "quad_rtol",    "mu_total",
                  "delta",         "delta_plus",   "delta_minus",
                  "lambda1_lower", "I",            "kappa_lower",
                  "M0_upper",      "lambda0_lower", "lambda0_upper",
                  "wlsc_delta_s",  "wlsc_beta",    "wlsc_lambda1_lower",
                  "wlsc_kappa_lower"});
    for (const auto& doc : reports) {
        require_report_schema(doc);
        csv_row(out,
                {doc.at("name").get<std::string>(),
                 doc.at("config_hash").get<std::string>(),
                 doc.at("status").get<std::string>(),
                 get_csv_num(doc, {"tolerances", "quad_atol"}),
                 get_csv_num(doc, {"tolerances", "quad_rtol"}),
                 get_csv_num(doc, {"measure", "total_mass"}),
                 get_csv_num(doc, {"functionals", "delta", "value"}),
                 get_csv_num(doc, {"functionals", "delta_plus", "value"}),
                 get_csv_num(doc, {"functionals", "delta_minus", "value"}),
                 get_csv_num(doc, {"bounds", "lambda1_lower"}),
                 get_csv_num(doc, {"functionals", "I"}),
                 get_csv_num(doc, {"bounds", "kappa_lower"}),
                 get_csv_num(doc, {"bounds", "M0_upper"}),
                 get_csv_num(doc, {"bounds", "lambda0_lower"}),
                 get_csv_num(doc, {"bounds", "lambda0_upper"}),
                 get_csv_num(doc, {"wlsc", "delta_s"}),
                 get_csv_num(doc, {"wlsc", "beta"}),
                 get_csv_num(doc, {"wlsc", "lambda1_lower"}),
                 get_csv_num(doc, {"wlsc", "kappa_lower"})});
    }
    return out;
}

std::string merged_curves_csv(const std::vector<ordered_json>& reports) {
    std::string out;
    csv_row(out, {"name", "x", "H", "mu_tail", "objective"});
    for (const auto& doc : reports) {
        require_report_schema(doc);
        const std::string name = doc.at("name").get<std::string>();
        for (const auto& p : doc.at("curve")) {
            csv_row(out, {name, fmt(p.at("x").get<double>()), fmt(p.at("H").get<double>()),
                          fmt(p.at("mu_tail").get<double>()),
                          fmt(p.at("objective").get<double>())});
        }
    }
    return out;
}

std::string paths_csv(const sim::PathEnsemble& ens) {
    std::string out;
    csv_row(out, {"path", "t", "y"});
    const std::size_t n_t = ens.times.size();
    for (std::size_t p = 0; p < ens.truncated.size(); ++p) {
        for (std::size_t k = 0; k < n_t; ++k) {
            csv_row(out, {std::to_string(p), fmt(ens.times[k]), fmt(ens.value(p, k))});
        }
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
    out << contents;
    if (!out) throw std::runtime_error("short write to \"" + path + "\"");
}

void write_json_file(const std::string& path, const ordered_json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open \"" + path + "\"");
    try {
        return ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("\"" + path + "\" is not valid JSON: " + std::string(e.what()));
    }
}

}  // namespace levygap::report
