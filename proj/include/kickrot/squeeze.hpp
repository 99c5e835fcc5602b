#pragma once

#include <iosfwd>
#include <vector>

#include "kickrot/observables.hpp"
#include "kickrot/quantum.hpp"

namespace kickrot {

struct PulseRecord {
    int index = 0;              ///< 1-based pulse number
    double time = 0.0;          ///< kick time
    double strength = 0.0;      ///< P of this kick
    double focal_time = 0.0;    ///< absolute time of the next local minimum of O
    double focal_value = 0.0;   ///< O at that minimum
};

/// Kick times are strictly increasing and the first kick is at t = 0.
struct PulseSchedule {
    std::vector<PulseRecord> pulses;

    bool minima_non_increasing() const;
};

struct SqueezeResult {
    PulseSchedule schedule;
    OrientationTrace trace;  ///< concatenated over all intervals
};

struct SqueezeOptions {
    double dt = short_window_dt;  ///< scan granularity
    double search_window = two_pi;  ///< free-rotor revival period
    /// Trace kept after the last focal point, as a multiple of the last interval.
    double tail_fraction = 1.0;
};

/// Greedy accumulative squeezing: from each post-kick state, scan O(t) forward
/// to its next local minimum, propagate exactly there and kick again.
/// `strengths` holds one P per pulse.
SqueezeResult accumulative_squeeze(const PairSystem& system, const std::vector<double>& strengths,
                                   const SqueezeOptions& options = {});

SqueezeResult accumulative_squeeze(const PairSystem& system, int n_pulses, double kick_strength,
                                   const SqueezeOptions& options = {});

/// Basis large enough for seven P = 10 kicks: each kick adds about P units of
/// angular momentum per rotor.
RotorPairConfig multi_pulse_config(RotorPairConfig base);

/// CSV columns: k,t_k,P_k,t_c_k,O_min_k
void write_schedule_csv(const PulseSchedule& schedule, std::ostream& out);

}  // namespace kickrot
