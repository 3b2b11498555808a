#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "rpsim/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kScratch = fs::temp_directory_path() / "rpsim_cli_tests";

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::create_directories(kScratch);
    const fs::path out = kScratch / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err = kScratch / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string("\"") + RPSIM_CLI_PATH + "\" " + args + " > \"" +
                            out.string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::size_t count_lines_starting(const std::string& text, const std::string& prefix) {
    std::size_t n = 0, pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = text.find('\n', pos);
        if (text.compare(pos, prefix.size(), prefix) == 0) ++n;
        if (eol == std::string::npos) break;
        pos = eol + 1;
    }
    return n;
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

}  // namespace

TEST_CASE("list prints every builtin preset") {
    const auto r = run_cli("list");
    CHECK(r.code == 0);
    for (const auto& s : rpsim::experiments::builtin_experiments())
        CHECK(r.out.find(s.name) != std::string::npos);
}

TEST_CASE("list --json is machine readable") {
    const auto r = run_cli("list --json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() == 10);
    for (const auto& e : j) {
        CHECK(e.contains("name"));
        CHECK(e.contains("observable"));
        CHECK(e.contains("description"));
    }
}

TEST_CASE("run writes csv plus metadata sidecar with pinned formatting") {
    const fs::path dir = kScratch / "csv_run";
    fs::remove_all(dir);
    const fs::path cfg = kScratch / "cfg_fig4.json";
    spit(cfg, json{{"experiments", {"fig4_angle_yield"}},
                   {"output_dir", dir.string()},
                   {"format", "csv"}}
                  .dump());

    const auto r = run_cli("run \"" + cfg.string() + "\"");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("fig4_angle_yield -> ") != std::string::npos);

    const std::string csv = slurp(dir / "fig4_angle_yield.csv");
    REQUIRE(!csv.empty());
    CHECK(first_line(csv) == "theta_deg,phi_T");
    const std::size_t second = csv.find('\n') + 1;
    CHECK(csv.substr(second, csv.find('\n', second) - second) ==
          "0.00000000000e+00,5.62538976140e-01");

    const json meta = json::parse(slurp(dir / "fig4_angle_yield.meta.json"));
    CHECK(meta["experiment"] == "fig4_angle_yield");
    REQUIRE(meta["series"].size() == 1);
    CHECK(meta["series"][0]["label"] == "phi_T");
    CHECK(meta["series"][0]["meta"]["code_version"] == "rpsim/1.0");
    CHECK(meta["series"][0]["meta"]["sweep"]["name"] == "fig4_angle_yield");
}

TEST_CASE("repeat runs and parallel runs are byte-identical") {
    const fs::path d1 = kScratch / "det_a", d2 = kScratch / "det_b", d3 = kScratch / "det_c";
    for (const auto& d : {d1, d2, d3}) fs::remove_all(d);

    const fs::path cfg1 = kScratch / "cfg_det1.json";
    spit(cfg1, json{{"experiments", {"fig4_angle_yield"}}, {"output_dir", d1.string()}}.dump());
    const fs::path cfg2 = kScratch / "cfg_det2.json";
    spit(cfg2, json{{"experiments", {"fig4_angle_yield"}}, {"output_dir", d2.string()}}.dump());
    const fs::path cfg3 = kScratch / "cfg_det3.json";
    spit(cfg3, json{{"experiments", {"fig4_angle_yield"}},
                    {"output_dir", d3.string()},
                    {"workers", 4}}
                   .dump());

    REQUIRE(run_cli("run \"" + cfg1.string() + "\"").code == 0);
    REQUIRE(run_cli("run \"" + cfg2.string() + "\"").code == 0);
    REQUIRE(run_cli("run \"" + cfg3.string() + "\"").code == 0);

    const std::string base_csv = slurp(d1 / "fig4_angle_yield.csv");
    REQUIRE(!base_csv.empty());
    CHECK(base_csv == slurp(d2 / "fig4_angle_yield.csv"));
    CHECK(base_csv == slurp(d3 / "fig4_angle_yield.csv"));
    const std::string base_meta = slurp(d1 / "fig4_angle_yield.meta.json");
    CHECK(base_meta == slurp(d2 / "fig4_angle_yield.meta.json"));
    CHECK(base_meta == slurp(d3 / "fig4_angle_yield.meta.json"));
}

TEST_CASE("json output format mirrors the series structure") {
    const fs::path dir = kScratch / "json_run";
    fs::remove_all(dir);
    const fs::path cfg = kScratch / "cfg_json.json";
    spit(cfg, json{{"experiments", {"fig4_angle_yield"}},
                   {"output_dir", dir.string()},
                   {"format", "json"}}
                  .dump());
    REQUIRE(run_cli("run \"" + cfg.string() + "\"").code == 0);

    const json j = json::parse(slurp(dir / "fig4_angle_yield.json"));
    CHECK(j["experiment"] == "fig4_angle_yield");
    CHECK(j["format_version"] == 1);
    REQUIRE(j["series"].size() == 1);
    const json& s = j["series"][0];
    CHECK(s["label"] == "phi_T");
    CHECK(s["abscissa"]["name"] == "theta");
    CHECK(s["abscissa"]["unit"] == "deg");
    REQUIRE(s["x"].size() == 181);
    REQUIRE(s["y"].size() == 181);
    CHECK(!s.contains("missing"));  // nothing was missing in this sweep
    CHECK(s["meta"]["sweep"]["model"]["kind"] == "hyperfine");
    CHECK(s["y"][0].get<double>() == doctest::Approx(0.562538976140161).epsilon(1e-11));
}

TEST_CASE("inline experiment objects and output overrides work end to end") {
    json inline_spec =
        json::parse(rpsim::experiments::to_json(
            rpsim::experiments::builtin_experiment("fig4_angle_yield")));
    inline_spec["name"] = "my_copy";
    inline_spec["output"] = "custom_name.csv";

    const fs::path dir = kScratch / "inline_run";
    fs::remove_all(dir);
    const fs::path cfg = kScratch / "cfg_inline.json";
    spit(cfg, json{{"experiments", json::array({inline_spec})},
                   {"output_dir", dir.string()}}
                  .dump());
    const auto r = run_cli("run \"" + cfg.string() + "\"");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "custom_name.csv"));
    CHECK(fs::exists(dir / "custom_name.meta.json"));
    const json meta = json::parse(slurp(dir / "custom_name.meta.json"));
    CHECK(meta["experiment"] == "my_copy");
}

TEST_CASE("command-line overrides reach the experiment definition") {
    const fs::path dir = kScratch / "override_run";
    fs::remove_all(dir);
    const fs::path cfg = kScratch / "cfg_override.json";
    spit(cfg, json{{"experiments", {"fig4_angle_yield"}}, {"output_dir", dir.string()}}.dump());
    REQUIRE(run_cli("run \"" + cfg.string() + "\" --set k=2").code == 0);
    const json meta = json::parse(slurp(dir / "fig4_angle_yield.meta.json"));
    CHECK(meta["series"][0]["meta"]["sweep"]["model"]["k_S"] == 2.0);
    CHECK(meta["series"][0]["meta"]["sweep"]["model"]["k_T"] == 2.0);
}

TEST_CASE("usage and configuration errors exit with status 2") {
    CHECK(run_cli("").code == 2);                      // missing subcommand
    CHECK(run_cli("orbit").code == 2);                 // unknown subcommand
    CHECK(run_cli("run").code == 2);                   // missing config argument
    CHECK(run_cli("run /no/such/config.json").code == 2);
    CHECK(run_cli("--help").code == 0);

    const fs::path bad = kScratch / "bad.json";
    spit(bad, "{ not json");
    CHECK(run_cli("run \"" + bad.string() + "\"").code == 2);

    const fs::path unknown_key = kScratch / "unknown_key.json";
    spit(unknown_key, json{{"experiments", {"fig4_angle_yield"}}, {"bogus", 1}}.dump());
    CHECK(run_cli("run \"" + unknown_key.string() + "\"").code == 2);

    const fs::path unknown_exp = kScratch / "unknown_exp.json";
    spit(unknown_exp, json{{"experiments", {"fig99"}}}.dump());
    CHECK(run_cli("run \"" + unknown_exp.string() + "\"").code == 2);

    const fs::path ok = kScratch / "ok.json";
    spit(ok, json{{"experiments", {"fig4_angle_yield"}},
                  {"output_dir", (kScratch / "never").string()}}
                 .dump());
    CHECK(run_cli("run \"" + ok.string() + "\" --set nonsense").code == 2);
    CHECK(run_cli("run \"" + ok.string() + "\" --set no.such.path=1").code == 2);
}

TEST_CASE("an unwritable output directory is a runtime failure, not a usage error") {
    const fs::path blocker = kScratch / "blocker";
    spit(blocker, "plain file\n");
    const fs::path cfg = kScratch / "cfg_blocked.json";
    spit(cfg, json{{"experiments", {"fig4_angle_yield"}},
                   {"output_dir", (blocker / "sub").string()}}
                  .dump());
    CHECK(run_cli("run \"" + cfg.string() + "\"").code == 1);
}

TEST_CASE("self-check suite passes on this build") {
    const auto r = run_cli("check");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("ok: gamma invariant") != std::string::npos);
    CHECK(r.out.find("ok: kernel equivalence") != std::string::npos);
    CHECK(r.out.find("ok: trace-decay law") != std::string::npos);
    CHECK(r.out.find("ok: propagator cross-validation") != std::string::npos);
    CHECK(r.out.find("ok: yield conservation") != std::string::npos);
    CHECK(r.out.find("ok: negativity bounds") != std::string::npos);
    CHECK(r.out.find("ok: chsh boundary") != std::string::npos);
    CHECK(count_lines_starting(r.out, "FAIL:") == 0);
}

TEST_CASE("self-check reports broken invariants and exits 1") {
    const auto r = run_cli("check --set gamma=-1");
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL: gamma invariant") != std::string::npos);
    CHECK(r.out.find("gamma") != std::string::npos);

    CHECK(run_cli("check --set gamma=banana").code == 2);  // config, not numerical
}
