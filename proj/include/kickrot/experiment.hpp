#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kickrot/classical.hpp"
#include "kickrot/quantum.hpp"

namespace kickrot {

enum class Mode { QuantumTrace, ClassicalTrace, Density, Squeeze, Validate };

std::string to_string(Mode m);
Mode parse_mode(const std::string& text);

/// Fully resolved description of one run. `gamma` and `arrangement` are shared:
/// in classical mode gamma is gamma_cl.
struct ExperimentSpec {
    Mode mode = Mode::QuantumTrace;
    RotorPairConfig quantum;
    ClassicalConfig classical;
    int n_pulses = 7;
    double t_max = long_window;
    double dt = long_window_dt;
    std::filesystem::path out = "out";
    bool svg = false;
    int density_size = 128;
    std::string preset;  ///< empty when not a preset

    bool operator==(const ExperimentSpec& other) const;
};

using Setting = std::pair<std::string, std::string>;

/// Flat `key = value` text; `#` starts a comment. `overrides` are applied after
/// the file, in order. Unknown keys, malformed values and out-of-range values
/// raise ConfigError naming the key (and the line for file input).
ExperimentSpec parse_config(const std::string& text, const std::vector<Setting>& overrides = {});

/// `key = value` lines that parse back to the same spec.
std::string echo_config(const ExperimentSpec& spec);

/// Keys accepted by parse_config with their defaults, one per line.
std::string describe_keys();

struct Job {
    std::string name;
    ExperimentSpec spec;
};

inline constexpr const char* preset_names[] = {"fig2a", "fig2b", "fig3", "fig4", "fig5"};

/// A preset expands into its parameter sweep; a plain spec is a single job.
std::vector<Job> expand_jobs(const ExperimentSpec& spec);

struct JobReport {
    std::string name;
    std::string summary;  ///< one line, e.g. "t_c=0.0922 O_min=0.8363"
    std::vector<std::filesystem::path> files;
};

/// Runs one job, writing its artifacts below spec.out.
JobReport run_job(const Job& job);

/// Runs every job of the spec, concurrently where possible; reports are in job order.
std::vector<JobReport> run(const ExperimentSpec& spec);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Fast self-check of the core invariants (basis, kick, unitarity, parity,
/// isolated-rotor trace, classical symmetry).
std::vector<CheckResult> validation_checks();

enum ExitCode : int { exit_ok = 0, exit_config = 1, exit_invariant = 2, exit_io = 3 };

}  // namespace kickrot
