#include "levygap/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "levygap/errors.hpp"

namespace levygap::cli {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError("config: " + where + ": " + what);
}

void require_object(const ordered_json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "expected an object");
}

void reject_unknown_keys(const ordered_json& j, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) fail(where, "unknown key \"" + item.key() + "\"");
    }
}

double get_number(const ordered_json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key)) fail(where, "missing \"" + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_number()) fail(where, "\"" + key + "\" must be a number");
    return v.get<double>();
}

double get_number_or(const ordered_json& j, const std::string& where, const std::string& key,
                     double fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) fail(where, "\"" + key + "\" must be a number");
    return v.get<double>();
}

std::string get_string(const ordered_json& j, const std::string& where, const std::string& key) {
    if (!j.contains(key)) fail(where, "missing \"" + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_string()) fail(where, "\"" + key + "\" must be a string");
    return v.get<std::string>();
}

bool get_bool_or(const ordered_json& j, const std::string& where, const std::string& key,
                 bool fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean()) fail(where, "\"" + key + "\" must be a boolean");
    return v.get<bool>();
}

std::vector<double> get_array(const ordered_json& j, const std::string& where,
                              const std::string& key) {
    if (!j.contains(key)) fail(where, "missing \"" + key + "\"");
    const auto& v = j.at(key);
    if (!v.is_array() || v.empty()) fail(where, "\"" + key + "\" must be a nonempty array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) fail(where, "\"" + key + "\" entries must be numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

// two-column CSV (optionally with a non-numeric header row)
void read_table_csv(const std::string& path, const std::string& where, std::vector<double>& c0,
                    std::vector<double>& c1) {
    std::ifstream in(path);
    if (!in) fail(where, "cannot open table file \"" + path + "\"");
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string f0, f1;
        if (!std::getline(row, f0, ',') || !std::getline(row, f1, ',')) {
            fail(where, "table row \"" + line + "\" needs two comma-separated columns");
        }
        try {
            const double a = std::stod(f0);
            const double b = std::stod(f1);
            c0.push_back(a);
            c1.push_back(b);
        } catch (const std::exception&) {
            if (first) {  // tolerate a header row
                first = false;
                continue;
            }
            fail(where, "table row \"" + line + "\" is not numeric");
        }
        first = false;
    }
    if (c0.size() < 2) fail(where, "table \"" + path + "\" needs at least two rows");
}

symbol::CharacteristicExponent parse_symbol(const ordered_json& j) {
    const std::string where = "symbol";
    require_object(j, where);
    reject_unknown_keys(j, where, {"family", "params", "table", "tail_power"});
    const std::string fam = get_string(j, where, "family");

    ordered_json params = j.contains("params") ? j.at("params") : ordered_json::object();
    require_object(params, where + ".params");

    auto only = [&](const std::set<std::string>& allowed) {
        reject_unknown_keys(params, where + ".params", allowed);
        if (fam != "tabulated" && (j.contains("table") || j.contains("tail_power")))
            fail(where, "\"table\"/\"tail_power\" only apply to the tabulated family");
    };

    try {
        if (fam == "stable") {
            only({"alpha"});
            return symbol::CharacteristicExponent::stable(get_number(params, where, "alpha"));
        }
        if (fam == "brownian") {
            only({"sigma2"});
            return symbol::CharacteristicExponent::brownian(
                get_number_or(params, where, "sigma2", 1.0));
        }
        if (fam == "stable_mixture") {
            only({"c1", "c2", "alpha"});
            return symbol::CharacteristicExponent::stable_mixture(
                get_number(params, where, "c1"), get_number(params, where, "c2"),
                get_number(params, where, "alpha"));
        }
        if (fam == "cauchy_plus_brownian") {
            only({});
            return symbol::CharacteristicExponent::cauchy_plus_brownian();
        }
        if (fam == "tabulated") {
            only({"xi", "psi"});
            if (!j.contains("tail_power")) fail(where, "tabulated symbols need \"tail_power\"");
            const double q = get_number(j, where, "tail_power");
            std::vector<double> xi, ps;
            if (j.contains("table")) {
                read_table_csv(get_string(j, where, "table"), where, xi, ps);
            } else {
                xi = get_array(params, where + ".params", "xi");
                ps = get_array(params, where + ".params", "psi");
            }
            return symbol::CharacteristicExponent::tabulated(std::move(xi), std::move(ps), q);
        }
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where, "unknown family \"" + fam +
                    "\" (expected stable, brownian, stable_mixture, "
                    "cauchy_plus_brownian, or tabulated)");
}

speed::SpeedFunction parse_speed(const ordered_json& j) {
    const std::string where = "speed";
    require_object(j, where);
    reject_unknown_keys(j, where, {"family", "params", "table", "tail_power"});
    const std::string fam = get_string(j, where, "family");

    ordered_json params = j.contains("params") ? j.at("params") : ordered_json::object();
    require_object(params, where + ".params");
    auto only = [&](const std::set<std::string>& allowed) {
        reject_unknown_keys(params, where + ".params", allowed);
        if (fam != "tabulated" && (j.contains("table") || j.contains("tail_power")))
            fail(where, "\"table\"/\"tail_power\" only apply to the tabulated family");
    };

    try {
        if (fam == "exp_growth") {
            only({"b", "scale"});
            return speed::SpeedFunction::exp_growth(get_number(params, where, "b"),
                                                    get_number_or(params, where, "scale", 1.0));
        }
        if (fam == "poly_growth") {
            only({"p", "c"});
            return speed::SpeedFunction::poly_growth(get_number(params, where, "p"),
                                                     get_number_or(params, where, "c", 1.0));
        }
        if (fam == "tabulated") {
            only({"x", "a"});
            if (!j.contains("tail_power")) fail(where, "tabulated speeds need \"tail_power\"");
            const double q = get_number(j, where, "tail_power");
            std::vector<double> x, a;
            if (j.contains("table")) {
                read_table_csv(get_string(j, where, "table"), where, x, a);
            } else {
                x = get_array(params, where + ".params", "x");
                a = get_array(params, where + ".params", "a");
            }
            return speed::SpeedFunction::tabulated(std::move(x), std::move(a), q);
        }
    } catch (const std::invalid_argument& e) {
        fail(where, e.what());
    }
    fail(where, "unknown family \"" + fam +
                    "\" (expected exp_growth, poly_growth, or tabulated)");
}

}  // namespace

RunConfig parse_config(const ordered_json& doc) {
    const std::string where = "document";
    require_object(doc, where);
    reject_unknown_keys(doc, where, {"name", "symbol", "speed", "quad", "bounds", "sim"});
    if (!doc.contains("symbol")) fail(where, "missing \"symbol\" block");
    if (!doc.contains("speed")) fail(where, "missing \"speed\" block");

    RunConfig rc(parse_symbol(doc.at("symbol")), parse_speed(doc.at("speed")));
    rc.raw = doc;
    if (doc.contains("name")) rc.name = get_string(doc, where, "name");

    if (doc.contains("quad")) {
        const auto& q = doc.at("quad");
        require_object(q, "quad");
        reject_unknown_keys(q, "quad", {"atol", "rtol", "max_half_periods", "accel_depth"});
        rc.quad.atol = get_number_or(q, "quad", "atol", rc.quad.atol);
        rc.quad.rtol = get_number_or(q, "quad", "rtol", rc.quad.rtol);
        rc.quad.max_half_periods = static_cast<int>(
            get_number_or(q, "quad", "max_half_periods", rc.quad.max_half_periods));
        rc.quad.accel_depth =
            static_cast<int>(get_number_or(q, "quad", "accel_depth", rc.quad.accel_depth));
        if (!(rc.quad.atol > 0.0) || !(rc.quad.rtol > 0.0))
            fail("quad", "tolerances must be positive");
        if (rc.quad.max_half_periods < 4) fail("quad", "max_half_periods must be at least 4");
    }

    if (doc.contains("bounds")) {
        const auto& b = doc.at("bounds");
        require_object(b, "bounds");
        reject_unknown_keys(b, "bounds",
                            {"grid_lo", "grid_hi", "grid_points", "fit_scaling",
                             "use_closed_form"});
        rc.grid.lo = get_number_or(b, "bounds", "grid_lo", rc.grid.lo);
        rc.grid.hi = get_number_or(b, "bounds", "grid_hi", rc.grid.hi);
        rc.grid.points = static_cast<int>(get_number_or(b, "bounds", "grid_points",
                                                        rc.grid.points));
        rc.fit_scaling = get_bool_or(b, "bounds", "fit_scaling", rc.fit_scaling);
        rc.use_closed_form = get_bool_or(b, "bounds", "use_closed_form", rc.use_closed_form);
        if (!(rc.grid.lo > 0.0) || !(rc.grid.hi > rc.grid.lo) || rc.grid.points < 8)
            fail("bounds", "need 0 < grid_lo < grid_hi and at least 8 grid points");
    }

    if (doc.contains("sim")) {
        const auto& s = doc.at("sim");
        require_object(s, "sim");
        reject_unknown_keys(s, "sim",
                            {"n_paths", "T", "dt", "seed", "observable", "init", "x0",
                             "output_points", "base_cap_factor", "threads", "return_eps",
                             "return_x0", "dump_paths"});
        rc.has_sim = true;
        rc.sim.n_paths = static_cast<std::size_t>(
            get_number_or(s, "sim", "n_paths", static_cast<double>(rc.sim.n_paths)));
        rc.sim.T = get_number_or(s, "sim", "T", rc.sim.T);
        rc.sim.dt = get_number_or(s, "sim", "dt", rc.sim.dt);
        rc.sim.seed = static_cast<std::uint64_t>(
            get_number_or(s, "sim", "seed", static_cast<double>(rc.sim.seed)));
        rc.sim.x0 = get_number_or(s, "sim", "x0", rc.sim.x0);
        rc.sim.output_points = static_cast<std::size_t>(get_number_or(
            s, "sim", "output_points", static_cast<double>(rc.sim.output_points)));
        rc.sim.base_cap_factor =
            get_number_or(s, "sim", "base_cap_factor", rc.sim.base_cap_factor);
        rc.sim.threads = static_cast<unsigned>(get_number_or(s, "sim", "threads", 0.0));
        rc.observable = s.contains("observable") ? get_string(s, "sim", "observable")
                                                 : rc.observable;
        if (s.contains("init")) {
            const std::string init = get_string(s, "sim", "init");
            if (init == "point") {
                rc.sim.init = sim::InitialLaw::Point;
            } else if (init == "stationary") {
                rc.sim.init = sim::InitialLaw::Stationary;
            } else {
                fail("sim", "init must be \"point\" or \"stationary\"");
            }
        }
        rc.return_eps = get_number_or(s, "sim", "return_eps", rc.return_eps);
        rc.return_x0 = get_number_or(s, "sim", "return_x0", rc.return_x0);
        rc.dump_paths = get_bool_or(s, "sim", "dump_paths", rc.dump_paths);
        if (rc.sim.n_paths < 2) fail("sim", "n_paths must be at least 2");
        if (!(rc.sim.T > 0.0)) fail("sim", "T must be positive");
        if (!(rc.sim.base_cap_factor >= 1.0)) fail("sim", "base_cap_factor must be >= 1");
        if (rc.sim.output_points < 4) fail("sim", "output_points must be at least 4");
        if (!(rc.return_eps > 0.0)) fail("sim", "return_eps must be positive");
        // resolve the observable now so a typo fails at parse time
        try {
            (void)sim::make_observable(rc.observable);
        } catch (const std::invalid_argument& e) {
            fail("sim", e.what());
        }
    }
    return rc;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: \"" + path + "\" is not valid JSON: " + e.what());
    }
    try {
        return parse_config(doc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

std::vector<std::string> preset_names() {
    return {"stable", "brownian-exp", "stable-mixture", "cauchy-brownian"};
}

nlohmann::ordered_json preset_config(const std::string& name) {
    ordered_json doc;
    doc["name"] = name;
    if (name == "stable") {
        doc["symbol"] = {{"family", "stable"}, {"params", {{"alpha", 1.5}}}};
    } else if (name == "brownian-exp") {
        doc["symbol"] = {{"family", "brownian"}, {"params", {{"sigma2", 1.0}}}};
    } else if (name == "stable-mixture") {
        doc["symbol"] = {{"family", "stable_mixture"},
                         {"params", {{"c1", 1.0}, {"c2", 1.0}, {"alpha", 1.5}}}};
    } else if (name == "cauchy-brownian") {
        doc["symbol"] = {{"family", "cauchy_plus_brownian"}, {"params", ordered_json::object()}};
    } else {
        throw ConfigError("config: unknown preset \"" + name +
                          "\" (expected stable, brownian-exp, stable-mixture, cauchy-brownian)");
    }
    doc["speed"] = {{"family", "exp_growth"}, {"params", {{"b", 1.0}, {"scale", 1.0}}}};
    doc["sim"] = {{"n_paths", 10000}, {"T", 20.0},           {"dt", 0.0},
                  {"seed", 12345},    {"observable", "sgn_min1"}, {"init", "point"},
                  {"x0", 2.0},        {"return_eps", 0.05},   {"return_x0", 1.0}};
    return doc;
}

std::string config_hash(const nlohmann::ordered_json& doc) {
    const std::string s = doc.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace levygap::cli
