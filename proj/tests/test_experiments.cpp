#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "rpsim/experiments.hpp"
#include "rpsim/observables.hpp"

using namespace rpsim;
namespace ex = experiments;
using nlohmann::json;

namespace {

double duration_ns(const CurveSeries& s) {
    return obs::entanglement_duration(s.x, s.y, 2.0).t * 1e3;
}

}  // namespace

TEST_CASE("builtin catalog is complete and self-describing") {
    const auto all = ex::builtin_experiments();
    REQUIRE(all.size() == 10);
    std::set<std::string> names;
    for (const auto& s : all) {
        names.insert(s.name);
        CHECK(!s.description.empty());
        CHECK(!s.vary.path.empty());
        CHECK(!s.vary.values.empty());
    }
    const std::set<std::string> expected{
        "fig2_decay_rates",
        "fig3_field_magnitudes",
        "fig4_angle_yield",
        "fig5_angle_negativity_default",
        "fig6a_angle_negativity_Ab",
        "fig6b_angle_negativity_Ac",
        "fig7_chsh_orientation_polar_4_5",
        "fig7_chsh_orientation_azimuth_4_5",
        "fig7_chsh_orientation_polar_5_5",
        "fig7_chsh_orientation_azimuth_5_5",
    };
    CHECK(names == expected);
    CHECK_THROWS_AS(ex::builtin_experiment("fig1_sketch"), std::invalid_argument);
    CHECK(ex::builtin_experiment("fig4_angle_yield").name == "fig4_angle_yield");
}

TEST_CASE("angle-yield sweep: values, symmetry and the 68-degree maximum") {
    const auto series = ex::run_sweep(ex::builtin_experiment("fig4_angle_yield"));
    REQUIRE(series.size() == 1);
    const auto& s = series[0];
    CHECK(s.label == "phi_T");
    CHECK(s.abscissa_name == "theta");
    CHECK(s.abscissa_unit == "deg");
    REQUIRE(s.x.size() == 181);
    CHECK(s.y[0] == doctest::Approx(0.562538976140161).epsilon(1e-12));
    CHECK(s.y[68] == doctest::Approx(0.714795470966967).epsilon(1e-12));
    const auto it = std::max_element(s.y.begin(), s.y.end());
    const long arg = it - s.y.begin();
    CHECK((arg == 68 || arg == 112));
    for (int th = 0; th <= 180; ++th)
        CHECK(std::abs(s.y[th] - s.y[180 - th]) < 1e-9);

    const json meta = json::parse(s.meta_json);
    CHECK(meta["code_version"] == ex::kCodeVersion);
    CHECK(meta["integrator"] == "closed_form");
    CHECK(meta["series_label"] == "phi_T");
    CHECK(meta["sweep"]["name"] == "fig4_angle_yield");
}

TEST_CASE("decay-rate sweep fans out one series per rate") {
    const auto series = ex::run_sweep(ex::builtin_experiment("fig2_decay_rates"));
    REQUIRE(series.size() == 3);
    CHECK(series[0].label == "k=0.1");
    CHECK(series[1].label == "k=1");
    CHECK(series[2].label == "k=10");
    for (const auto& s : series) {
        CHECK(s.abscissa_name == "B0");
        CHECK(s.abscissa_unit == "G");
        REQUIRE(s.x.size() == 200);
        CHECK(s.x.front() == doctest::Approx(0.01).epsilon(1e-12));
        CHECK(s.x.back() == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(std::is_sorted(s.x.begin(), s.x.end()));
        for (double y : s.y) {
            CHECK(y >= -1e-9);
            CHECK(y <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("orientation sweep: polar panel durations") {
    auto spec = ex::builtin_experiment("fig7_chsh_orientation_polar_4_5");
    CHECK(spec.chsh.two_time == obs::TwoTimeMode::amplitude);
    CHECK(spec.chsh.apply_decay);
    const auto series = ex::run_sweep(spec, 2);
    REQUIRE(series.size() == 7);
    CHECK(series[0].label == "theta=0deg");
    CHECK(series[6].label == "theta=180deg");
    REQUIRE(series[0].x.size() == 1500);
    CHECK(series[0].x.back() == 0.150);

    // the witness starts at 2|a.b| for these detectors, then rises past 2
    CHECK(series[0].y[0] == doctest::Approx(1.925058892350843).epsilon(1e-10));
    CHECK(series[0].y[1] == doctest::Approx(1.925078389847116).epsilon(1e-10));

    const double expected_ns[7] = {71.126139290983048, 71.483733081537792, 72.469904888098839,
                                   73.585540980584710, 74.606731284289253, 75.509591691814578,
                                   76.263431572009395};
    double prev = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double d = duration_ns(series[i]);
        CHECK(d == doctest::Approx(expected_ns[i]).epsilon(5e-9));
        CHECK(d >= prev);
        prev = d;
    }
}

TEST_CASE("orientation sweep: azimuth panel matches the polar panel where they meet") {
    const auto az = ex::run_sweep(ex::builtin_experiment("fig7_chsh_orientation_azimuth_4_5"));
    REQUIRE(az.size() == 6);
    CHECK(az[0].label == "phi=0deg");
    CHECK(az[5].label == "phi=150deg");

    // azimuth panel holds theta at 90: its phi=0 point is the polar panel's theta=90 point
    CHECK(duration_ns(az[0]) == doctest::Approx(73.585540980584710).epsilon(5e-9));

    double lo = 1e9, hi = 0.0;
    for (const auto& s : az) {
        const double d = duration_ns(s);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    CHECK(hi - lo < 15.0);  // ns
    CHECK(hi - lo == doctest::Approx(5.424651).epsilon(1e-3));
}

TEST_CASE("sweep definitions survive a JSON round trip byte-identically") {
    for (const auto& s : ex::builtin_experiments()) {
        const std::string text = ex::to_json(s);
        const auto back = ex::sweep_from_json(text);
        CHECK(ex::to_json(back) == text);
    }
}

TEST_CASE("sweeps parse from compact grid descriptions") {
    const std::string text = R"({
        "name": "mini",
        "observable": "yield_vs_angle",
        "vary": {"path": "external.theta", "start": 0, "stop": 180, "count": 7},
        "model": {"kind": "hyperfine", "external": {"B0": 0.5, "theta_deg": 0, "phi_deg": 0}}
    })";
    const auto spec = ex::sweep_from_json(text);
    CHECK(spec.name == "mini");
    REQUIRE(spec.vary.values.size() == 7);
    CHECK(spec.vary.values.front() == 0.0);
    CHECK(spec.vary.values.back() == 180.0);
    CHECK(spec.vary.values[1] == doctest::Approx(30.0).epsilon(1e-12));

    CHECK_THROWS_AS(ex::sweep_from_json(R"({"observable": "yield_vs_angle", "bogus": 1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(ex::sweep_from_json(R"({"name": "x"})"), std::invalid_argument);
}

TEST_CASE("parameter paths reach the intended fields") {
    auto spec = ex::builtin_experiment("fig4_angle_yield");
    ex::apply_param(spec, "k", 2.5);
    CHECK(spec.fixed.k_S == 2.5);
    CHECK(spec.fixed.k_T == 2.5);
    CHECK(spec.chsh.k == 2.5);
    ex::apply_param(spec, "k_T", 0.5);
    CHECK(spec.fixed.k_T == 0.5);
    CHECK(spec.fixed.k_S == 2.5);
    ex::apply_param(spec, "external.B0", 1.25);
    CHECK(spec.fixed.external.B0 == 1.25);

    CHECK_THROWS_AS(ex::apply_param(spec, "external.B9", 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ex::apply_param(spec, "time.points", 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ex::apply_param(spec, "time.points", 2.5), std::invalid_argument);
    CHECK_THROWS_AS(ex::apply_param(spec, "k", std::nan("")), std::invalid_argument);
}

TEST_CASE("text overrides parse, normalize and validate") {
    auto spec = ex::builtin_experiment("fig7_chsh_orientation_polar_4_5");
    ex::apply_override(spec, "chsh.a", "0,0,2");  // normalized on entry
    CHECK(spec.chsh.a[2] == doctest::Approx(1.0).epsilon(1e-15));
    ex::apply_override(spec, "chsh.apply_decay", "false");
    CHECK(!spec.chsh.apply_decay);
    ex::apply_override(spec, "chsh.two_time", "heisenberg");
    CHECK(spec.chsh.two_time == obs::TwoTimeMode::heisenberg);
    ex::apply_override(spec, "renormalize", "false");
    CHECK(!spec.renormalize);
    ex::apply_override(spec, "local", "local_5_5");
    CHECK(spec.fixed.B1[2] == 5.0);
    ex::apply_override(spec, "k", "0.25");  // numeric fallthrough
    CHECK(spec.fixed.k_S == 0.25);

    CHECK_THROWS_AS(ex::apply_override(spec, "chsh.two_time", "banana"), std::invalid_argument);
    CHECK_THROWS_AS(ex::apply_override(spec, "chsh.a", "1,2"), std::invalid_argument);
    CHECK_THROWS_AS(ex::apply_override(spec, "chsh.a", "0,0,0"), std::invalid_argument);
    CHECK_THROWS_AS(ex::apply_override(spec, "k", "fast"), std::invalid_argument);
    CHECK_THROWS_AS(ex::apply_override(spec, "nonsense", "1"), std::invalid_argument);
}

TEST_CASE("sweep output does not depend on worker count or repetition") {
    auto spec = ex::builtin_experiment("fig3_field_magnitudes");
    ex::apply_param(spec, "time.points", 200);  // keep the check quick
    const auto once = ex::run_sweep(spec, 1);
    const auto again = ex::run_sweep(spec, 1);
    const auto parallel = ex::run_sweep(spec, 4);
    REQUIRE(once.size() == 5);
    REQUIRE(again.size() == 5);
    REQUIRE(parallel.size() == 5);
    for (std::size_t i = 0; i < once.size(); ++i) {
        CHECK(once[i].y == again[i].y);       // bitwise equality demanded
        CHECK(once[i].y == parallel[i].y);
        CHECK(once[i].x == parallel[i].x);
        CHECK(once[i].label == parallel[i].label);
        CHECK(once[i].meta_json == parallel[i].meta_json);
    }
}

TEST_CASE("malformed sweeps are rejected before any work runs") {
    auto spec = ex::builtin_experiment("fig3_field_magnitudes");
    spec.vary.path.clear();
    CHECK_THROWS_AS(ex::run_sweep(spec), std::invalid_argument);

    auto spec2 = ex::builtin_experiment("fig3_field_magnitudes");
    spec2.series = {"k", {0.1, 1.0}};  // fan-out is for scalar observables
    CHECK_THROWS_AS(ex::run_sweep(spec2), std::invalid_argument);

    auto spec3 = ex::builtin_experiment("fig4_angle_yield");
    ex::apply_param(spec3, "k_S", 2.0);  // yield needs equal rates
    CHECK_THROWS(ex::run_sweep(spec3));
}

TEST_CASE("observable names round-trip") {
    for (auto o : {ex::Observable::triplet_yield, ex::Observable::negativity_curve,
                   ex::Observable::chsh_curve, ex::Observable::yield_vs_angle})
        CHECK(ex::observable_from_name(ex::observable_name(o)) == o);
    CHECK_THROWS_AS(ex::observable_from_name("entropy"), std::invalid_argument);
}
