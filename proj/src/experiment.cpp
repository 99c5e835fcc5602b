#include "kickrot/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "kickrot/io.hpp"
#include "kickrot/squeeze.hpp"

namespace kickrot {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    double x = 0.0;
    const char* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end || value.empty())
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    return x;
}

int to_int(const std::string& key, const std::string& value) {
    int x = 0;
    const char* end = value.data() + value.size();
    const auto res = std::from_chars(value.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end || value.empty())
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    return x;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

bool is_preset(const std::string& name) {
    return std::find_if(std::begin(preset_names), std::end(preset_names),
                        [&](const char* p) { return name == p; }) != std::end(preset_names);
}

void apply_setting(ExperimentSpec& s, const std::string& key, const std::string& value) {
    if (key == "mode") {
        s.mode = parse_mode(value);
    } else if (key == "arrangement") {
        try {
            s.quantum.arrangement = parse_arrangement(value);
        } catch (const ConfigError&) {
            throw ConfigError("arrangement: expected A or B, got '" + value + "'");
        }
        s.classical.arrangement = s.quantum.arrangement;
    } else if (key == "gamma") {
        s.quantum.gamma = to_double(key, value);
        s.classical.gamma_cl = s.quantum.gamma;
    } else if (key == "kick_strength") {
        s.quantum.kick_strength = to_double(key, value);
    } else if (key == "n_pulses") {
        s.n_pulses = to_int(key, value);
    } else if (key == "fourier_truncation") {
        s.quantum.fourier_truncation = to_int(key, value);
    } else if (key == "levels") {
        s.quantum.level_count = to_int(key, value);
    } else if (key == "bessel_cutoff") {
        s.quantum.bessel_cutoff = to_int(key, value);
    } else if (key == "grid_size") {
        s.quantum.grid_size = to_int(key, value);
    } else if (key == "t_max") {
        s.t_max = to_double(key, value);
    } else if (key == "dt") {
        s.dt = to_double(key, value);
    } else if (key == "ensemble_size") {
        s.classical.ensemble_size = to_int(key, value);
    } else if (key == "step") {
        s.classical.step = to_double(key, value);
    } else if (key == "density_size") {
        s.density_size = to_int(key, value);
    } else if (key == "svg") {
        s.svg = to_bool(key, value);
    } else if (key == "out") {
        if (value.empty()) throw ConfigError("out: must not be empty");
        s.out = value;
    } else if (key == "preset") {
        if (!value.empty() && !is_preset(value)) throw ConfigError("preset: unknown preset '" + value + "'");
        s.preset = value;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
}

void finalize(ExperimentSpec& s, const std::set<std::string>& given) {
    if (!std::isfinite(s.quantum.gamma) || s.quantum.gamma < 0.0)
        throw ConfigError("gamma: must be finite and >= 0");
    if (s.n_pulses < 1) throw ConfigError("n_pulses: must be >= 1");
    if (s.density_size < 8) throw ConfigError("density_size: must be >= 8");

    const bool basis_given = given.count("fourier_truncation") || given.count("levels") || given.count("grid_size");
    if (s.mode == Mode::Squeeze && !basis_given) s.quantum = multi_pulse_config(s.quantum);

    double t_default = long_window, dt_default = long_window_dt;
    switch (s.mode) {
        case Mode::ClassicalTrace: t_default = 3.0; dt_default = 5e-3; break;
        case Mode::Squeeze: t_default = two_pi; dt_default = short_window_dt; break;
        case Mode::Density: t_default = short_window; dt_default = short_window_dt; break;
        default: break;
    }
    if (!given.count("t_max")) s.t_max = t_default;
    if (!given.count("dt")) s.dt = dt_default;
    if (!(s.dt > 0.0) || !std::isfinite(s.dt)) throw ConfigError("dt: must be > 0");
    if (!(s.t_max >= 0.0) || !std::isfinite(s.t_max)) throw ConfigError("t_max: must be >= 0");
    s.classical.t_max = s.t_max;
    s.classical.dt = s.dt;

    if (s.mode == Mode::ClassicalTrace)
        s.classical.validate();
    else if (s.mode != Mode::Validate)
        s.quantum.validate();
}

std::string job_stem(const ExperimentSpec& s) {
    std::string stem = to_string(s.mode) + "_" + to_string(s.quantum.arrangement) + "_gamma" +
                       format_double(s.quantum.gamma);
    return stem;
}

CsvHeader header_for(const ExperimentSpec& spec) {
    CsvHeader h;
    std::istringstream lines(echo_config(spec));
    for (std::string line; std::getline(lines, line);) {
        const auto eq = line.find('=');
        h.add(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return h;
}

void check_bounds(const OrientationTrace& trace) {
    for (std::size_t i = 0; i < trace.size(); ++i)
        if (!(trace.values[i] >= -1e-9 && trace.values[i] <= 4.0 + 1e-9))
            throw InvariantViolation("orientation factor " + format_double(trace.values[i]) + " at t=" +
                                     format_double(trace.times[i]) + " outside [0, 4]");
}

std::string focal_summary(const FocalPoint& f) {
    std::ostringstream s;
    s.precision(6);
    s << "t_c=" << f.time << " O_min=" << f.value;
    return s.str();
}

template <class Fn>
void write_file(JobReport& report, const std::filesystem::path& path, Fn&& writer) {
    auto out = open_output(path);
    writer(out);
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
    report.files.push_back(path);
}

JobReport run_quantum(const Job& job) {
    const auto& spec = job.spec;
    JobReport report{job.name, {}, {}};
    const PairSystem system(spec.quantum);
    const ModeCoefficients kicked =
        expand(apply_kick_grid(ground_state(system), spec.quantum.kick_strength), system);
    const OrientationTrace trace = orientation_trace(kicked, system, spec.t_max, spec.dt);
    check_bounds(trace);
    write_file(report, spec.out / (job.name + ".csv"),
               [&](std::ostream& o) { write_trace_csv(o, trace, header_for(spec), "O"); });
    FocalPoint f = find_focal_time(trace);
    f = polish_minimum(kicked, system, std::max(0.0, f.time - spec.dt), f.time + spec.dt);
    report.summary = focal_summary(f);
    return report;
}

JobReport run_classical(const Job& job) {
    const auto& spec = job.spec;
    JobReport report{job.name, {}, {}};
    const OrientationTrace trace = classical_orientation(spec.classical);
    check_bounds(trace);
    write_file(report, spec.out / (job.name + ".csv"),
               [&](std::ostream& o) { write_trace_csv(o, trace, header_for(spec), "O_classical"); });
    report.summary = focal_summary(find_focal_time(trace));
    return report;
}

JobReport run_density(const Job& job) {
    const auto& spec = job.spec;
    JobReport report{job.name, {}, {}};
    const PairSystem system(spec.quantum);
    const QuantumState ground = ground_state(system);
    const ModeCoefficients kicked = expand(apply_kick_grid(ground, spec.quantum.kick_strength), system);
    FocalPoint f = find_focal_time(orientation_trace(kicked, system, spec.t_max, spec.dt));
    f = polish_minimum(kicked, system, std::max(0.0, f.time - spec.dt), f.time + spec.dt);

    const std::pair<std::string, QuantumState> snapshots[] = {
        {"t0", ground}, {"tc", synthesize(evolve(kicked, system, f.time), system)}};
    for (const auto& [tag, state] : snapshots) {
        CsvHeader header = header_for(spec);
        header.add("time", tag == "t0" ? 0.0 : f.time);
        header.add("layout", "rows theta1, columns theta2, uniform on [-pi, pi)");
        const DensityGrid density = density_grid(state, spec.density_size);
        write_file(report, spec.out / (job.name + "_density_" + tag + ".csv"),
                   [&](std::ostream& o) { write_matrix_csv(o, density.values, header); });
        CsvHeader state_header = header_for(spec);
        state_header.add("time", tag == "t0" ? 0.0 : f.time);
        state_header.add("layout", "|psi|^2, rows xi, columns eta, uniform on [-pi, pi)");
        write_file(report, spec.out / (job.name + "_state_" + tag + ".csv"),
                   [&](std::ostream& o) { write_state_density_csv(o, state, state_header); });
        if (spec.svg)
            write_file(report, spec.out / (job.name + "_density_" + tag + ".svg"), [&](std::ostream& o) {
                write_heatmap_svg(o, density.values, job.name + " " + tag);
            });
    }
    report.summary = focal_summary(f);
    return report;
}

JobReport run_squeeze(const Job& job) {
    const auto& spec = job.spec;
    JobReport report{job.name, {}, {}};
    const PairSystem system(spec.quantum);
    SqueezeOptions options;
    options.dt = spec.dt;
    options.search_window = spec.t_max;
    const SqueezeResult result = accumulative_squeeze(system, spec.n_pulses, spec.quantum.kick_strength, options);
    check_bounds(result.trace);
    write_file(report, spec.out / (job.name + ".csv"),
               [&](std::ostream& o) { write_trace_csv(o, result.trace, header_for(spec), "O"); });
    write_file(report, spec.out / (job.name + "_schedule.csv"), [&](std::ostream& o) {
        header_for(spec).write(o);
        write_schedule_csv(result.schedule, o);
    });
    const auto& last = result.schedule.pulses.back();
    std::ostringstream s;
    s.precision(6);
    s << "pulses=" << result.schedule.pulses.size() << " final t_c=" << last.focal_time
      << " O_min=" << last.focal_value
      << (result.schedule.minima_non_increasing() ? "" : " (per-pulse minima not monotone)");
    report.summary = s.str();
    return report;
}

JobReport run_validate(const Job& job) {
    JobReport report{job.name, {}, {}};
    const auto checks = validation_checks();
    std::ostringstream s;
    int failed = 0;
    for (const auto& c : checks) {
        s << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        if (!c.passed) ++failed;
    }
    s << (checks.size() - failed) << '/' << checks.size() << " checks passed";
    if (failed) throw InvariantViolation(s.str());
    report.summary = s.str();
    return report;
}

ExperimentSpec with(const ExperimentSpec& base, Mode mode, Arrangement a, double gamma) {
    ExperimentSpec s = base;
    s.preset.clear();
    s.mode = mode;
    s.quantum.arrangement = a;
    s.classical.arrangement = a;
    s.quantum.gamma = gamma;
    s.classical.gamma_cl = gamma;
    return s;
}

}  // namespace

std::string to_string(Mode m) {
    switch (m) {
        case Mode::QuantumTrace: return "quantum-trace";
        case Mode::ClassicalTrace: return "classical-trace";
        case Mode::Density: return "density";
        case Mode::Squeeze: return "squeeze";
        case Mode::Validate: return "validate";
    }
    return "?";
}

Mode parse_mode(const std::string& text) {
    if (text == "quantum-trace" || text == "quantum") return Mode::QuantumTrace;
    if (text == "classical-trace" || text == "classical") return Mode::ClassicalTrace;
    if (text == "density") return Mode::Density;
    if (text == "squeeze") return Mode::Squeeze;
    if (text == "validate") return Mode::Validate;
    throw ConfigError("mode: unknown mode '" + text + "'");
}

bool ExperimentSpec::operator==(const ExperimentSpec& other) const {
    return echo_config(*this) == echo_config(other);
}

ExperimentSpec parse_config(const std::string& text, const std::vector<Setting>& overrides) {
    ExperimentSpec spec;
    std::set<std::string> given;
    std::istringstream in(text);
    int line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        try {
            apply_setting(spec, key, trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
        given.insert(key);
    }
    for (const auto& [key, value] : overrides) {
        apply_setting(spec, key, trim(value));
        given.insert(key);
    }
    finalize(spec, given);
    return spec;
}

std::string echo_config(const ExperimentSpec& s) {
    std::ostringstream o;
    o << "mode = " << to_string(s.mode) << '\n'
      << "arrangement = " << to_string(s.quantum.arrangement) << '\n'
      << "gamma = " << format_double(s.quantum.gamma) << '\n'
      << "kick_strength = " << format_double(s.quantum.kick_strength) << '\n'
      << "n_pulses = " << s.n_pulses << '\n'
      << "fourier_truncation = " << s.quantum.fourier_truncation << '\n'
      << "levels = " << s.quantum.level_count << '\n'
      << "bessel_cutoff = " << s.quantum.bessel_cutoff << '\n'
      << "grid_size = " << s.quantum.grid_size << '\n'
      << "t_max = " << format_double(s.t_max) << '\n'
      << "dt = " << format_double(s.dt) << '\n'
      << "ensemble_size = " << s.classical.ensemble_size << '\n'
      << "step = " << format_double(s.classical.step) << '\n'
      << "density_size = " << s.density_size << '\n'
      << "svg = " << (s.svg ? "true" : "false") << '\n'
      << "out = " << s.out.string() << '\n';
    if (!s.preset.empty()) o << "preset = " << s.preset << '\n';
    return o.str();
}

std::string describe_keys() {
    return "  mode               quantum-trace | classical-trace | density | squeeze | validate (quantum-trace)\n"
           "  arrangement        A (coplanar) | B (coaxial) (A)\n"
           "  gamma              dipolar coupling; Gamma = E_D/E_K, or Gamma_cl in classical mode (0)\n"
           "  kick_strength      pulse strength P in units of hbar (10)\n"
           "  n_pulses           pulses in squeeze mode (7)\n"
           "  fourier_truncation K, Fourier coefficients per Mathieu class minus one (48; 120 in squeeze mode)\n"
           "  levels             Mathieu levels kept per coordinate (96; 240 in squeeze mode)\n"
           "  bessel_cutoff      Bessel-sum cutoff n_c, 0 = ceil(2P)+20 (0)\n"
           "  grid_size          grid points per coordinate, power of two (256; 512 in squeeze mode)\n"
           "  t_max              trace length (7 quantum, 3 classical, 0.15 density search, 2*pi squeeze search)\n"
           "  dt                 sampling step (2e-3 quantum, 5e-3 classical, 5e-4 density/squeeze)\n"
           "  ensemble_size      classical quadrature points per angle (256)\n"
           "  step               classical RK4 step, must divide dt (5e-4)\n"
           "  density_size       (theta1, theta2) resampling grid (128)\n"
           "  svg                also write SVG heatmaps for densities (false)\n"
           "  out                output directory (out, or $KICKROT_OUT_DIR)\n"
           "  preset             fig2a | fig2b | fig3 | fig4 | fig5 (none)\n";
}

std::vector<Job> expand_jobs(const ExperimentSpec& spec) {
    std::vector<Job> jobs;
    auto add = [&](std::string name, ExperimentSpec s) { jobs.push_back({std::move(name), std::move(s)}); };
    const std::string& p = spec.preset;
    if (p.empty()) {
        jobs.push_back({job_stem(spec), spec});
        return jobs;
    }
    if (p == "fig2a" || p == "fig2b") {
        const Arrangement a = p == "fig2a" ? Arrangement::A : Arrangement::B;
        for (double g : {0.0, 1.0, 3.0, 30.0})
            for (const bool longw : {true, false}) {
                ExperimentSpec s = with(spec, Mode::QuantumTrace, a, g);
                s.quantum.kick_strength = 10.0;
                s.t_max = longw ? long_window : short_window;
                s.dt = longw ? long_window_dt : short_window_dt;
                add(p + (longw ? "_long" : "_short") + "_gamma" + format_double(g), s);
            }
    } else if (p == "fig3") {
        for (const Arrangement a : {Arrangement::A, Arrangement::B})
            for (double g : {0.0, 15.0, 30.0, 45.0}) {
                ExperimentSpec s = with(spec, Mode::ClassicalTrace, a, g);
                s.t_max = s.classical.t_max = 3.0;
                s.dt = s.classical.dt = 5e-3;
                add(p + "_" + to_string(a) + "_gamma_cl" + format_double(g), s);
            }
    } else if (p == "fig4") {
        for (double g : {30.0, 1.0}) {
            ExperimentSpec s = with(spec, Mode::Density, Arrangement::A, g);
            s.quantum.kick_strength = 10.0;
            s.t_max = short_window;
            s.dt = short_window_dt;
            add(p + "_gamma" + format_double(g), s);
        }
    } else if (p == "fig5") {
        for (double g : {0.0, 1.0, 3.0, 5.0, 10.0, 30.0}) {
            ExperimentSpec s = with(spec, Mode::Squeeze, spec.quantum.arrangement, g);
            s.quantum = multi_pulse_config(s.quantum);
            s.quantum.kick_strength = 10.0;
            s.n_pulses = 7;
            s.t_max = two_pi;
            s.dt = short_window_dt;
            add(p + "_" + to_string(s.quantum.arrangement) + "_gamma" + format_double(g), s);
        }
    }
    return jobs;
}

JobReport run_job(const Job& job) {
    switch (job.spec.mode) {
        case Mode::QuantumTrace: return run_quantum(job);
        case Mode::ClassicalTrace: return run_classical(job);
        case Mode::Density: return run_density(job);
        case Mode::Squeeze: return run_squeeze(job);
        case Mode::Validate: return run_validate(job);
    }
    throw ConfigError("mode: unsupported");
}

std::vector<JobReport> run(const ExperimentSpec& spec) {
    const std::vector<Job> jobs = expand_jobs(spec);
    const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
    std::vector<JobReport> reports;
    reports.reserve(jobs.size());
    for (std::size_t begin = 0; begin < jobs.size(); begin += width) {
        const std::size_t end = std::min(jobs.size(), begin + width);
        std::vector<std::future<JobReport>> batch;
        for (std::size_t i = begin; i < end; ++i)
            batch.push_back(std::async(std::launch::async, run_job, std::cref(jobs[i])));
        for (auto& f : batch) reports.push_back(f.get());
    }
    return reports;
}

}  // namespace kickrot
