// Command-line front end: runs declarative parameter sweeps from a JSON
// config, lists builtin presets, and self-checks the numerical core.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rpsim/dynamics.hpp"
#include "rpsim/experiments.hpp"
#include "rpsim/kernels.hpp"
#include "rpsim/model.hpp"
#include "rpsim/observables.hpp"
#include "rpsim/spin.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using rpsim::CMat;
using rpsim::CurveSeries;
namespace experiments = rpsim::experiments;
namespace model = rpsim::model;
namespace obs = rpsim::obs;
namespace dynamics = rpsim::dynamics;

namespace {

// 12 significant digits everywhere in data output: keeps the determinism
// guarantee byte-testable.
std::string fmt12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

std::string fmt_full(double v) {  // lossless, for override round-trips
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- output writers ---------------------------------------------------------

std::string csv_text(const std::vector<CurveSeries>& series) {
    const CurveSeries& first = series.front();
    for (const auto& s : series)
        if (s.x != first.x)
            throw std::runtime_error("internal: series of one sweep must share the grid");
    std::string out = first.abscissa_name;
    if (!first.abscissa_unit.empty()) out += "_" + first.abscissa_unit;
    for (const auto& s : series) {
        out += ",";
        out += s.label;
    }
    out += "\n";
    for (std::size_t i = 0; i < first.x.size(); ++i) {
        out += fmt12(first.x[i]);
        for (const auto& s : series) {
            out += ",";
            if (!s.is_missing(i)) out += fmt12(s.y[i]);
        }
        out += "\n";
    }
    return out;
}

std::string sidecar_text(const std::string& name, const std::vector<CurveSeries>& series) {
    std::string out = "{\"experiment\": " + json(name).dump() + ", \"series\": [";
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i) out += ", ";
        out += "{\"label\": " + json(series[i].label).dump() + ", \"meta\": " +
               series[i].meta_json + "}";
    }
    out += "]}\n";
    return out;
}

std::string json_text(const std::string& name, const std::vector<CurveSeries>& series) {
    std::string out = "{\n\"experiment\": " + json(name).dump() + ",\n\"format_version\": 1,\n\"series\": [\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const CurveSeries& s = series[i];
        out += "{\"label\": " + json(s.label).dump();
        out += ", \"abscissa\": {\"name\": " + json(s.abscissa_name).dump() +
               ", \"unit\": " + json(s.abscissa_unit).dump() + "}";
        out += ", \"x\": [";
        for (std::size_t p = 0; p < s.x.size(); ++p) {
            if (p) out += ",";
            out += fmt12(s.x[p]);
        }
        out += "], \"y\": [";
        for (std::size_t p = 0; p < s.y.size(); ++p) {
            if (p) out += ",";
            out += fmt12(s.y[p]);
        }
        out += "]";
        bool any_missing = false;
        for (std::size_t p = 0; p < s.x.size(); ++p) any_missing |= s.is_missing(p);
        if (any_missing) {
            out += ", \"missing\": [";
            for (std::size_t p = 0; p < s.x.size(); ++p) {
                if (p) out += ",";
                out += s.is_missing(p) ? "1" : "0";
            }
            out += "]";
        }
        out += ", \"meta\": " + s.meta_json + "}";
        if (i + 1 < series.size()) out += ",";
        out += "\n";
    }
    out += "]\n}\n";
    return out;
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

// ---- run config ---------------------------------------------------------------

struct RunOptions {
    std::vector<experiments::SweepSpec> sweeps;
    std::string output_dir = ".";
    std::string format = "csv";
    int workers = 1;
    std::vector<std::pair<std::string, std::string>> overrides;
};

std::string override_text(const json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return fmt_full(v.get<double>());
    if (v.is_array() && v.size() == 3) {
        std::string out;
        for (int i = 0; i < 3; ++i) {
            if (i) out += ",";
            out += fmt_full(v[i].get<double>());
        }
        return out;
    }
    throw std::invalid_argument("override " + key + ": unsupported value type");
}

int parse_workers(const std::string& text) {
    if (text == "auto") {
        const unsigned n = std::thread::hardware_concurrency();
        return n ? static_cast<int>(n) : 1;
    }
    std::size_t used = 0;
    int n = 0;
    try {
        n = std::stoi(text, &used);
    } catch (...) {
        throw std::invalid_argument("workers: expected a positive integer or 'auto'");
    }
    if (used != text.size() || n < 1)
        throw std::invalid_argument("workers: expected a positive integer or 'auto'");
    return n;
}

RunOptions parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config parse failure: " + std::string(e.what()));
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        if (k != "experiments" && k != "output_dir" && k != "format" && k != "workers" &&
            k != "overrides")
            throw std::invalid_argument("config: unknown key: " + k);
    }
    RunOptions opt;
    if (!j.contains("experiments") || !j["experiments"].is_array() || j["experiments"].empty())
        throw std::invalid_argument("config: 'experiments' must be a nonempty list");
    for (const json& e : j["experiments"]) {
        if (e.is_string())
            opt.sweeps.push_back(experiments::builtin_experiment(e.get<std::string>()));
        else if (e.is_object())
            opt.sweeps.push_back(experiments::sweep_from_json(e.dump()));
        else
            throw std::invalid_argument("config: experiment entries are names or objects");
    }
    if (j.contains("output_dir")) opt.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("format")) {
        opt.format = j["format"].get<std::string>();
        if (opt.format != "csv" && opt.format != "json")
            throw std::invalid_argument("config: format must be csv or json");
    }
    if (j.contains("workers")) {
        const json& w = j["workers"];
        opt.workers = w.is_string() ? parse_workers(w.get<std::string>())
                                    : parse_workers(std::to_string(w.get<long long>()));
    }
    if (j.contains("overrides")) {
        if (!j["overrides"].is_object())
            throw std::invalid_argument("config: overrides must be an object");
        for (const auto& item : j["overrides"].items())
            opt.overrides.emplace_back(item.key(), override_text(item.value(), item.key()));
    }
    return opt;
}

int cmd_run(const std::string& config_path, const std::string& flag_output_dir,
            const std::string& flag_format, const std::string& flag_workers,
            const std::vector<std::string>& flag_sets) {
    RunOptions opt;
    try {
        opt = parse_config(config_path);
        if (!flag_output_dir.empty()) opt.output_dir = flag_output_dir;
        if (!flag_format.empty()) {
            if (flag_format != "csv" && flag_format != "json")
                throw std::invalid_argument("--format must be csv or json");
            opt.format = flag_format;
        }
        if (!flag_workers.empty()) opt.workers = parse_workers(flag_workers);
        for (const std::string& kv : flag_sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("--set expects key.path=value, got '" + kv + "'");
            opt.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
        }
        // every override validated against the full schema before any run starts
        for (auto& sweep : opt.sweeps)
            for (const auto& kv : opt.overrides)
                experiments::apply_override(sweep, kv.first, kv.second);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    int rc = 0;
    try {
        fs::create_directories(opt.output_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "output directory error: %s\n", e.what());
        return 1;
    }
    for (const auto& sweep : opt.sweeps) {
        try {
            const auto series = experiments::run_sweep(sweep, opt.workers);
            std::string filename = sweep.output;
            if (filename.empty()) filename = sweep.name + "." + opt.format;
            const fs::path out_path = fs::path(opt.output_dir) / filename;
            if (opt.format == "csv") {
                write_file(out_path, csv_text(series));
                fs::path meta_path = out_path;
                meta_path.replace_extension();
                meta_path += ".meta.json";
                write_file(meta_path, sidecar_text(sweep.name, series));
            } else {
                write_file(out_path, json_text(sweep.name, series));
            }
            std::printf("%s -> %s\n", sweep.name.c_str(), out_path.string().c_str());
        } catch (const std::exception& e) {
            std::fprintf(stderr, "experiment %s failed: %s\n", sweep.name.c_str(), e.what());
            rc = 1;  // keep attempting the rest
        }
    }
    return rc;
}

int cmd_list(bool as_json) {
    const auto all = experiments::builtin_experiments();
    if (as_json) {
        json out = json::array();
        for (const auto& s : all)
            out.push_back({{"name", s.name},
                           {"observable", experiments::observable_name(s.observable)},
                           {"description", s.description}});
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        for (const auto& s : all)
            std::printf("%-36s %s\n", s.name.c_str(), s.description.c_str());
    }
    return 0;
}

// ---- self-check ----------------------------------------------------------------

struct Check {
    std::string name;
    std::function<void()> fn;  // throws std::runtime_error on failure
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw std::runtime_error(what);
}

int cmd_check(const std::vector<std::string>& flag_sets) {
    experiments::SweepSpec base;
    base.name = "check";
    base.observable = experiments::Observable::negativity_curve;
    base.vary = {"external.theta", {68.0}};
    base.fixed.kind = model::ModelKind::hyperfine;
    {
        const auto pair = model::tensor_preset("A_default");
        base.fixed.A1 = pair.first;
        base.fixed.A2 = pair.second;
    }
    base.fixed.external = {0.5, 68.0, 0.0};
    try {
        for (const std::string& kv : flag_sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("--set expects key.path=value, got '" + kv + "'");
            experiments::apply_override(base, kv.substr(0, eq), kv.substr(eq + 1));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }

    std::vector<Check> checks;

    checks.push_back({"gamma invariant", [&] {
        expect(std::isfinite(base.fixed.gamma) && base.fixed.gamma > 0.0,
               "gamma must be positive and finite (got " + fmt_full(base.fixed.gamma) + ")");
    }});

    checks.push_back({"kernel equivalence", [&] {
        const auto& scalar = rpsim::kernels::scalar_table();
        const auto* avx2 = rpsim::kernels::avx2_table();
        if (!avx2) return;  // nothing to compare on this host
        std::mt19937_64 rng(7);
        std::normal_distribution<double> dist;
        const int n = 16;
        std::vector<rpsim::cplx> A(n * n), B(n * n), C1(n * n), C2(n * n);
        for (auto* buf : {&A, &B})
            for (auto& v : *buf) v = rpsim::cplx(dist(rng), dist(rng));
        scalar.matmul(n, A.data(), B.data(), C1.data());
        avx2->matmul(n, A.data(), B.data(), C2.data());
        double worst = 0.0;
        for (int i = 0; i < n * n; ++i) worst = std::max(worst, std::abs(C1[i] - C2[i]));
        const rpsim::cplx d1 = scalar.dotc(A.size(), A.data(), B.data());
        const rpsim::cplx d2 = avx2->dotc(A.size(), A.data(), B.data());
        worst = std::max(worst, std::abs(d1 - d2) / std::abs(d1));
        expect(worst < 1e-12, "scalar and avx2 kernels disagree by " + fmt_full(worst));
    }});

    checks.push_back({"trace-decay law", [&] {
        auto spec = base.fixed;
        const auto built = model::build_hamiltonian(spec);
        const CMat rho0 = model::initial_state(spec.kind);
        const auto times = dynamics::time_grid(0.0, 1.0, 201);
        const auto traj = dynamics::propagate_exact_equal_rates(built.H, rho0, spec.k_S, times);
        for (std::size_t i = 0; i < times.size(); ++i) {
            const double tr = std::real(rpsim::trace(traj.states[i]));
            expect(std::abs(tr - std::exp(-spec.k_S * times[i])) < 1e-8,
                   "trace(rho(t)) deviates from e^{-kt} at t=" + fmt_full(times[i]));
        }
    }});

    checks.push_back({"propagator cross-validation", [&] {
        for (const char* which : {"hyperfine", "local"}) {
            auto spec = base.fixed;
            if (std::string(which) == "local") {
                spec.kind = model::ModelKind::local_field;
                const auto pair = model::local_preset("local_4_5");
                spec.B1 = pair.first;
                spec.B2 = pair.second;
            }
            const auto built = model::build_hamiltonian(spec);
            const CMat rho0 = model::initial_state(spec.kind);
            const auto times = dynamics::time_grid(0.0, 0.1, 21);
            const auto exact =
                dynamics::propagate_exact_equal_rates(built.H, rho0, spec.k_S, times);
            const auto rk4 =
                dynamics::propagate_general(built.H, rho0, spec.k_S, spec.k_T, times);
            for (std::size_t i = 0; i < times.size(); ++i)
                expect(rpsim::max_abs_diff(exact.states[i], rk4.states[i]) < 1e-8,
                       std::string(which) + ": exact and RK4 paths disagree at t=" +
                           fmt_full(times[i]));
        }
    }});

    checks.push_back({"yield conservation", [&] {
        std::mt19937_64 rng(42);
        std::normal_distribution<double> dist;
        for (int trial = 0; trial < 10; ++trial) {
            CMat H(16);
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j <= i; ++j) {
                    const rpsim::cplx v(dist(rng), i == j ? 0.0 : dist(rng));
                    H(i, j) = 2.0 * v;
                    H(j, i) = 2.0 * std::conj(v);
                }
            const CMat rho0 = model::initial_state(model::ModelKind::hyperfine);
            const auto y = obs::triplet_yield(H, rho0, 1.0);
            expect(std::abs(y.phi_T + y.phi_S - 1.0) < 1e-6,
                   "phi_T + phi_S != 1 on a random Hamiltonian");
        }
        auto spec = base.fixed;
        const auto built = model::build_hamiltonian(spec);
        const CMat rho0 = model::initial_state(spec.kind);
        const auto closed = obs::triplet_yield(built.H, rho0, spec.k_S);
        const auto quad =
            obs::triplet_yield(built.H, rho0, spec.k_S, obs::YieldMethod::quadrature);
        expect(std::abs(closed.phi_T - quad.phi_T) < 1e-6,
               "closed-form and quadrature yields disagree");
    }});

    checks.push_back({"negativity bounds", [&] {
        auto spec = base.fixed;
        const auto built = model::build_hamiltonian(spec);
        const CMat rho0 = model::initial_state(spec.kind);
        const auto times = dynamics::time_grid(0.0, 1.0, 101);
        const auto traj = dynamics::propagate_exact_equal_rates(built.H, rho0, spec.k_S, times);
        const auto curve = obs::negativity_trajectory(traj, true);
        for (std::size_t i = 0; i < curve.y.size(); ++i)
            expect(curve.is_missing(i) || (curve.y[i] >= 0.0 && curve.y[i] <= 0.5),
                   "negativity out of [0, 0.5] at t=" + fmt_full(curve.x[i]));
        // Werner family against the closed-form value
        const auto S = rpsim::spin::singlet_state();
        for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0, 1.0}) {
            CMat w(4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) w(i, j) = p * S[i] * std::conj(S[j]);
            for (int i = 0; i < 4; ++i) w(i, i) += (1.0 - p) * 0.25;
            const double expected = std::max(0.0, (3.0 * p - 1.0) / 4.0);
            expect(std::abs(obs::negativity(w) - expected) < 1e-10,
                   "Werner-state negativity mismatch at p=" + fmt_full(p));
        }
    }});

    checks.push_back({"chsh boundary", [&] {
        auto spec = base.fixed;
        spec.kind = model::ModelKind::local_field;
        const auto pair = model::local_preset("local_4_5");
        spec.B1 = pair.first;
        spec.B2 = pair.second;
        const auto built = model::build_hamiltonian(spec);
        obs::CHSHConfig cfg = base.chsh;
        cfg.apply_decay = false;
        expect(std::abs(obs::chsh_witness(built.H, cfg, 0.0) - 2.0) < 1e-10,
               "|E(0)| != 2 for parallel detectors");
        cfg.a = {1.0, 0.0, 0.0};  // perpendicular to b = z
        expect(std::abs(obs::chsh_witness(built.H, cfg, 0.0)) < 1e-10,
               "|E(0)| != 0 for perpendicular detectors");
    }});

    int rc = 0;
    for (const auto& check : checks) {
        try {
            check.fn();
            std::printf("ok: %s\n", check.name.c_str());
        } catch (const std::exception& e) {
            std::printf("FAIL: %s — %s\n", check.name.c_str(), e.what());
            rc = 1;
        }
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radical-pair spin dynamics: sweeps, presets, and self-checks"};
    app.require_subcommand(1);

    std::string config_path, flag_output_dir, flag_format, flag_workers;
    std::vector<std::string> run_sets, check_sets;
    bool list_json = false;

    auto* run = app.add_subcommand("run", "execute experiments from a JSON config file");
    run->add_option("config", config_path, "config file path")->required();
    run->add_option("--output-dir", flag_output_dir, "directory for output files");
    run->add_option("--format", flag_format, "output format: csv or json");
    run->add_option("--workers", flag_workers, "worker count or 'auto'");
    run->add_option("--set", run_sets, "override, key.path=value (repeatable)");

    auto* list = app.add_subcommand("list", "list builtin experiment presets");
    list->add_flag("--json", list_json, "machine-readable listing");

    auto* check = app.add_subcommand("check", "run the cross-module invariant suite");
    check->add_option("--set", check_sets, "override, key.path=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage/config errors exit 2
    }

    if (run->parsed()) return cmd_run(config_path, flag_output_dir, flag_format, flag_workers, run_sets);
    if (list->parsed()) return cmd_list(list_json);
    return cmd_check(check_sets);
}
