#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "levygap/cli.hpp"
#include "levygap/config.hpp"
#include "levygap/errors.hpp"
#include "levygap/report_io.hpp"
#include "oracles.hpp"

using namespace levygap;
using nlohmann::ordered_json;

namespace {

// unique scratch directory per test case, removed on scope exit
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("levygap-test-" + tag + "-" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string str() const { return path.string(); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

ordered_json minimal_doc() {
    ordered_json doc;
    doc["symbol"] = {{"family", "brownian"}, {"params", {{"sigma2", 1.0}}}};
    doc["speed"] = {{"family", "exp_growth"}, {"params", {{"b", 1.0}}}};
    return doc;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::size_t count_lines(const std::string& text) {
    std::size_t n = 0;
    for (std::size_t i = 0; i + 1 < text.size(); ++i)
        if (text[i] == '\r' && text[i + 1] == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("config parsing: minimal document and defaults") {
    const auto rc = cli::parse_config(minimal_doc());
    CHECK(rc.name == "custom");
    CHECK(rc.psi.family() == symbol::Family::Brownian);
    CHECK(rc.speed.family() == speed::Family::ExpGrowth);
    CHECK(rc.quad.atol == doctest::Approx(1e-10));
    CHECK(rc.grid.points == 200);
    CHECK(rc.fit_scaling);
    CHECK(rc.use_closed_form);
    CHECK_FALSE(rc.has_sim);
    CHECK(rc.observable == "sgn_min1");
}

TEST_CASE("config parsing: unknown keys are rejected at every level") {
    auto doc = minimal_doc();
    doc["surprise"] = 1;
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

    doc = minimal_doc();
    doc["symbol"]["params"]["beta"] = 0.5;
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

    doc = minimal_doc();
    doc["speed"]["tail_power"] = 2.0;  // only meaningful for tabulated speeds
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

    doc = minimal_doc();
    doc["quad"] = {{"xtol", 1e-8}};
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

    doc = minimal_doc();
    doc["sim"] = {{"n_paths", 100}, {"warp", 9}};
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);
}

TEST_CASE("config parsing: value validation") {
    auto doc = minimal_doc();
    doc["sim"] = {{"n_paths", 1}};
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

    doc = minimal_doc();
    doc["sim"] = {{"observable", "mystery"}};
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

    doc = minimal_doc();
    doc["sim"] = {{"init", "warm"}};
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

    doc = minimal_doc();
    doc["symbol"] = {{"family", "stable"}, {"params", {{"alpha", 2.5}}}};
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);

    doc = minimal_doc();
    doc["bounds"] = {{"grid_lo", 1.0}, {"grid_hi", 0.5}};
    CHECK_THROWS_AS(cli::parse_config(doc), ConfigError);
}

TEST_CASE("presets: all four parse and share the simulation defaults") {
    for (const auto& name : cli::preset_names()) {
        const auto rc = cli::parse_config(cli::preset_config(name));
        CHECK(rc.name == name);
        CHECK(rc.has_sim);
        CHECK(rc.sim.n_paths == 10000);
        CHECK(rc.sim.T == 20.0);
        CHECK(rc.sim.seed == 12345);
        CHECK(rc.observable == "sgn_min1");
    }
    CHECK_THROWS_AS(cli::preset_config("mystery"), ConfigError);
}

TEST_CASE("config hashing is stable and key-sensitive") {
    const auto doc = minimal_doc();
    const auto h = cli::config_hash(doc);
    CHECK(h.size() == 16);
    CHECK(h == cli::config_hash(minimal_doc()));
    auto doc2 = minimal_doc();
    doc2["speed"]["params"]["b"] = 1.5;
    CHECK(h != cli::config_hash(doc2));
}

TEST_CASE("analyze command writes a report and curve samples") {
    TempDir dir("analyze");
    auto rc = cli::parse_config(minimal_doc());
    REQUIRE(cli::cmd_analyze(rc, dir.str()) == cli::kExitOk);

    const auto rep = report::read_json_file(dir.file("report.json"));
    CHECK(rep.at("schema") == "levygap-report/1");
    CHECK(rep.at("status") == "ok");
    CHECK(rep.at("name") == "custom");
    CHECK(rep.at("config_hash") == cli::config_hash(rc.raw));
    CHECK(rep.at("functionals").at("delta").at("value").get<double>() ==
          doctest::Approx(oracle::kBEDelta).epsilon(1e-8));
    CHECK(rep.at("bounds").at("lambda1_lower").get<double>() ==
          doctest::Approx(oracle::kBELambda1).epsilon(1e-8));
    CHECK(rep.at("conditions").at("all_hold") == true);

    const auto csv = slurp(dir.file("curves.csv"));
    CHECK(count_lines(csv) == 201);  // header + one row per grid point
    CHECK(csv.rfind("x,H,mu_tail,objective\r\n", 0) == 0);
}

TEST_CASE("analyze command flags infinite measures with the no-bound code") {
    TempDir dir("nobound");
    auto doc = minimal_doc();
    doc["speed"]["params"]["b"] = 0.0;
    auto rc = cli::parse_config(doc);
    CHECK(cli::cmd_analyze(rc, dir.str()) == cli::kExitNoBound);
    const auto rep = report::read_json_file(dir.file("report.json"));
    CHECK(rep.at("status") == "hypotheses-fail");
    CHECK(rep.at("bounds").is_null());
}

TEST_CASE("report command merges reports and polices its inputs") {
    TempDir dir("report");

    // two analyses of the same model at different tolerance settings
    auto rc1 = cli::parse_config(minimal_doc());
    auto doc2 = minimal_doc();
    doc2["name"] = "tighter";
    doc2["quad"] = {{"atol", 1e-12}, {"rtol", 1e-10}};
    auto rc2 = cli::parse_config(doc2);
    const auto d1 = dir.path / "a";
    const auto d2 = dir.path / "b";
    REQUIRE(cli::cmd_analyze(rc1, d1.string()) == cli::kExitOk);
    REQUIRE(cli::cmd_analyze(rc2, d2.string()) == cli::kExitOk);

    const auto out = dir.path / "merged";
    REQUIRE(cli::cmd_report({(d1 / "report.json").string(), (d2 / "report.json").string()},
                            out.string()) == cli::kExitOk);

    const auto bounds_csv = slurp((out / "bounds.csv").string());
    CHECK(count_lines(bounds_csv) == 3);  // header + one row per report
    CHECK(bounds_csv.find("custom") != std::string::npos);
    CHECK(bounds_csv.find("tighter") != std::string::npos);

    SUBCASE("no inputs is a usage error") {
        CHECK(cli::cmd_report({}, out.string()) == cli::kExitUsage);
    }

    SUBCASE("a JSON file that is not a report is a schema error") {
        const auto stray = dir.file("stray.json");
        std::ofstream(stray) << "{\"hello\": 1}\n";
        CHECK(cli::cmd_report({stray}, out.string()) == cli::kExitSchema);
    }

    SUBCASE("a missing file is a usage error") {
        CHECK(cli::cmd_report({dir.file("absent.json")}, out.string()) == cli::kExitUsage);
    }
}

TEST_CASE("simulate command produces an ensemble with a comparison record") {
    TempDir dir("simulate");
    auto doc = minimal_doc();
    doc["sim"] = {{"n_paths", 500}, {"T", 4.0},   {"dt", 0.01},
                  {"output_points", 40}, {"seed", 99}, {"x0", 2.0}};
    auto rc = cli::parse_config(doc);
    REQUIRE(cli::cmd_simulate(rc, dir.str()) == cli::kExitOk);

    const auto ens = report::read_json_file(dir.file("ensemble.json"));
    CHECK(ens.at("schema") == "levygap-ensemble/1");
    CHECK(ens.at("sim").at("n_paths") == 500);
    CHECK_FALSE(ens.at("sim").contains("threads"));  // runtime knob, not provenance
    CHECK(ens.at("decay").at("rate").get<double>() > 0.0);
    CHECK(ens.at("comparison").at("verdict") == "consistent");
    CHECK(ens.at("return_time").at("n_paths") == 500);

    SUBCASE("a constant observable leaves nothing to fit") {
        auto doc2 = doc;
        doc2["sim"]["observable"] = "constant";
        TempDir dir2("simulate-const");
        CHECK(cli::cmd_simulate(cli::parse_config(doc2), dir2.str()) == cli::kExitError);
        const auto e2 = report::read_json_file(dir2.file("ensemble.json"));
        CHECK(e2.at("comparison").at("verdict") == "no-signal");
        CHECK(e2.at("decay").is_null());
    }
}

TEST_CASE("simulate command refuses what it cannot do faithfully") {
    TempDir dir("simulate-refuse");

    SUBCASE("tabulated symbols have no exact sampler") {
        auto doc = minimal_doc();
        doc["symbol"] = {{"family", "tabulated"},
                         {"params", {{"xi", {0.5, 1.0, 2.0}}, {"psi", {0.25, 1.0, 4.0}}}},
                         {"tail_power", 2.0}};
        doc["sim"] = {{"n_paths", 10}};
        CHECK(cli::cmd_simulate(cli::parse_config(doc), dir.str()) ==
              cli::kExitUnsupported);
    }

    SUBCASE("infinite stationary measure") {
        auto doc = minimal_doc();
        doc["speed"]["params"]["b"] = 0.0;
        doc["sim"] = {{"n_paths", 10}};
        CHECK(cli::cmd_simulate(cli::parse_config(doc), dir.str()) == cli::kExitNoBound);
    }

    SUBCASE("a config without a sim block cannot simulate") {
        CHECK_THROWS_AS(cli::cmd_simulate(cli::parse_config(minimal_doc()), dir.str()),
                        ConfigError);
    }
}

TEST_CASE("config files round-trip through the loader") {
    TempDir dir("loader");
    const auto path = dir.file("run.json");
    {
        auto doc = minimal_doc();
        doc["name"] = "from-file";
        std::ofstream out(path);
        out << doc.dump(2);
    }
    const auto rc = cli::load_config_file(path);
    CHECK(rc.name == "from-file");
    CHECK_THROWS_AS(cli::load_config_file(dir.file("missing.json")), ConfigError);

    const auto bad = dir.file("bad.json");
    std::ofstream(bad) << "{not json";
    CHECK_THROWS_AS(cli::load_config_file(bad), ConfigError);
}
