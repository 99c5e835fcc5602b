#include "kickrot/squeeze.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace kickrot {

namespace {

constexpr double parity_tolerance = 1e-10;

void check_parity(const ModeCoefficients& d, const PairSystem& system, int pulse) {
    const double leak = forbidden_amplitude(d, system);
    if (leak > parity_tolerance) {
        std::ostringstream msg;
        msg << "pulse " << pulse << " populated parity-forbidden coefficients (|D| up to " << leak << ")";
        throw InvariantViolation(msg.str());
    }
}

}  // namespace

bool PulseSchedule::minima_non_increasing() const {
    for (std::size_t k = 1; k < pulses.size(); ++k)
        if (pulses[k].focal_value > pulses[k - 1].focal_value) return false;
    return true;
}

RotorPairConfig multi_pulse_config(RotorPairConfig base) {
    base.fourier_truncation = 120;
    base.level_count = 240;
    base.grid_size = 512;
    return base;
}

SqueezeResult accumulative_squeeze(const PairSystem& system, const std::vector<double>& strengths,
                                   const SqueezeOptions& options) {
    if (strengths.empty()) throw std::invalid_argument("accumulative_squeeze: need at least one pulse");
    if (!(options.dt > 0.0)) throw std::invalid_argument("accumulative_squeeze: dt must be > 0");

    SqueezeResult result;
    result.trace.config_echo = describe(system.config());

    ModeCoefficients d = expand(apply_kick_grid(ground_state(system), strengths[0]), system);
    check_parity(d, system, 1);
    double t_kick = 0.0;
    const int max_steps = static_cast<int>(std::ceil(options.search_window / options.dt));

    for (std::size_t k = 0; k < strengths.size(); ++k) {
        // Scan forward until the first sample that is followed by a rise.
        OrientationTrace segment;
        segment.times = {0.0, options.dt};
        segment.values = {orientation_at(d, system, 0.0), orientation_at(d, system, options.dt)};
        bool found = false;
        for (int j = 2; j <= max_steps; ++j) {
            const double t = j * options.dt;
            segment.times.push_back(t);
            segment.values.push_back(orientation_at(d, system, t));
            const auto& v = segment.values;
            if (v[j - 1] <= v[j - 2] && v[j - 1] < v[j]) {
                found = true;
                break;
            }
        }
        if (!found) {
            std::ostringstream msg;
            msg << "accumulative_squeeze: no local minimum of O within " << options.search_window
                << " after pulse " << (k + 1) << " at t=" << t_kick;
            throw InvariantViolation(msg.str());
        }
        const FocalPoint rough = find_focal_time(segment);
        const double lo = std::max(0.0, rough.time - options.dt);
        const FocalPoint focal = polish_minimum(d, system, lo, rough.time + options.dt);

        // Interval trace: samples before the focal point, then the focal point itself.
        const std::size_t first = (k == 0) ? 0 : 1;
        for (std::size_t j = first; j < segment.times.size() && segment.times[j] < focal.time; ++j) {
            result.trace.times.push_back(t_kick + segment.times[j]);
            result.trace.values.push_back(segment.values[j]);
        }
        result.trace.times.push_back(t_kick + focal.time);
        result.trace.values.push_back(focal.value);

        result.schedule.pulses.push_back(
            {static_cast<int>(k) + 1, t_kick, strengths[k], t_kick + focal.time, focal.value});

        if (k + 1 < strengths.size()) {
            const QuantumState at_focus = synthesize(evolve(d, system, focal.time), system);
            d = expand(apply_kick_grid(at_focus, strengths[k + 1]), system);
            check_parity(d, system, static_cast<int>(k) + 2);
            t_kick += focal.time;
        } else {
            const double tail = options.tail_fraction * focal.time;
            for (int j = 1;; ++j) {
                const double t = focal.time + j * options.dt;
                if (t > focal.time + tail) break;
                result.trace.times.push_back(t_kick + t);
                result.trace.values.push_back(orientation_at(d, system, t));
            }
        }
    }
    return result;
}

SqueezeResult accumulative_squeeze(const PairSystem& system, int n_pulses, double kick_strength,
                                   const SqueezeOptions& options) {
    if (n_pulses < 1) throw std::invalid_argument("accumulative_squeeze: n_pulses must be >= 1");
    return accumulative_squeeze(system, std::vector<double>(static_cast<std::size_t>(n_pulses), kick_strength),
                                options);
}

void write_schedule_csv(const PulseSchedule& schedule, std::ostream& out) {
    out << "k,t_k,P_k,t_c_k,O_min_k\n";
    out.precision(12);
    for (const auto& p : schedule.pulses)
        out << p.index << ',' << p.time << ',' << p.strength << ',' << p.focal_time << ',' << p.focal_value << '\n';
}

}  // namespace kickrot
