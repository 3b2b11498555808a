#pragma once
#include <string>
#include <vector>

#include "rpsim/model.hpp"
#include "rpsim/observables.hpp"
#include "rpsim/series.hpp"

namespace rpsim::experiments {

inline constexpr const char* kCodeVersion = "rpsim/1.0";

enum class Observable { triplet_yield, negativity_curve, chsh_curve, yield_vs_angle };

std::string observable_name(Observable o);
Observable observable_from_name(const std::string& name);

// The varied parameter: dotted path into the sweep (e.g. "external.theta")
// plus the explicit grid it takes.
struct GridSpec {
    std::string path;
    std::vector<double> values;
};

struct TimeGridSpec {
    double t_max = 1.0;  // us
    int points = 2000;
};

// A declarative sweep: one observable evaluated across `vary`, optionally
// fanned out over a second `series` parameter (one output curve per value).
struct SweepSpec {
    std::string name;
    Observable observable = Observable::negativity_curve;
    GridSpec vary;
    GridSpec series;  // empty path = single series
    model::ModelSpec fixed;
    obs::CHSHConfig chsh;
    TimeGridSpec time;
    bool renormalize = true;     // negativity reading
    bool rank1_triplet = false;  // yield operator variant
    std::string output;          // output file name; derived from `name` if empty
    std::string description;
};

// Set a numeric parameter through its dotted path; throws std::invalid_argument
// on unknown paths.  Shared by sweep execution and CLI overrides.
void apply_param(SweepSpec& spec, const std::string& path, double value);

// Typed override from key=value text (numbers, booleans, names, comma vectors),
// validated before any run starts.
void apply_override(SweepSpec& spec, const std::string& path, const std::string& value);

// Executes the sweep: one CurveSeries per grid point for time-curve
// observables, one per `series` value (or a single curve) for scalar
// observables.  Results are deterministic and independent of `workers`.
std::vector<CurveSeries> run_sweep(const SweepSpec& spec, int workers = 1);

// The presets behind the published figures.
std::vector<SweepSpec> builtin_experiments();

// Find a builtin by name; throws std::invalid_argument if absent.
SweepSpec builtin_experiment(const std::string& name);

// Lossless JSON round-trip for sweep definitions; to_json output is stable
// (sorted keys, exact doubles) and is what run metadata embeds.
std::string to_json(const SweepSpec& spec);
SweepSpec sweep_from_json(const std::string& json_text);

// Metadata blob attached to every emitted series; contains the full resolved
// sweep ("sweep" key), the series label, the integrator record, and the code
// version — enough to re-run the curve.
std::string series_meta(const SweepSpec& spec, const std::string& label,
                        const std::string& integrator);

}  // namespace rpsim::experiments
