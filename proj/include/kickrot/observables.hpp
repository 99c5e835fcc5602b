#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kickrot/quantum.hpp"

namespace kickrot {

/// O(t) = <2 - cos t1 - cos t2> sampled at ascending times.
struct OrientationTrace {
    std::vector<double> times;
    std::vector<double> values;
    std::string config_echo;

    std::size_t size() const { return times.size(); }
};

/// Grid quadrature of 2 - 2 <cos xi cos eta>.
double orientation_factor(const QuantumState& state);

/// Same quantity from expansion coefficients, via the cos matrix elements of
/// the retained levels.
double orientation_factor(const ModeCoefficients& coeffs, const PairSystem& system);

/// O at time t after the state described by `coeffs`.
double orientation_at(const ModeCoefficients& coeffs, const PairSystem& system, double t);

/// Kick the ground state at t = 0 and sample O at t = k*dt up to t_max.
OrientationTrace orientation_trace(const PairSystem& system, double t_max, double dt);

/// Sample O for an already-kicked state at offsets 0, dt, ... up to `duration`;
/// reported times are shifted by `t_origin`.
OrientationTrace orientation_trace(const ModeCoefficients& kicked, const PairSystem& system,
                                   double duration, double dt, double t_origin = 0.0);

inline constexpr double long_window = 7.0;
inline constexpr double long_window_dt = 2e-3;
inline constexpr double short_window = 0.15;
inline constexpr double short_window_dt = 5e-4;

struct FocalPoint {
    double time;
    double value;
};

/// Lowest interior local minimum of the samples, refined by a parabola through
/// the neighbouring samples. Throws InvariantViolation when none exists.
FocalPoint find_focal_time(const OrientationTrace& trace);

/// Short-window trace of the kicked ground state, discrete minimum, parabolic
/// refinement, then polished on the exact O(t).
FocalPoint find_focal_time(const PairSystem& system);

/// Minimize O(t) after `coeffs` on [lo, hi] to the given absolute time tolerance.
FocalPoint polish_minimum(const ModeCoefficients& coeffs, const PairSystem& system, double lo,
                          double hi);

/// Isolated kicked rotors: 2 - 2 J_1(2 P sin t).
double analytic_isolated(double kick_strength, double t);

/// |Psi(t1, t2)|^2 on an m x m uniform (t1, t2) grid over [-pi, pi)^2.
struct DensityGrid {
    std::vector<double> axis;
    Eigen::MatrixXd values;  ///< values(i, j) at (t1 = axis[i], t2 = axis[j])
};

/// Resamples the (xi, eta) field onto (t1, t2) by bilinear interpolation.
/// The density integrates to one over the (t1, t2) torus.
DensityGrid density_grid(const QuantumState& state, int m);

/// Bilinear |psi|^2 at a (xi, eta) point with periodic wrap.
double interpolate_density(const QuantumState& state, double xi, double eta);

/// Probability inside the union of discs of given radius around the centers,
/// distances measured on the (t1, t2) torus.
double probability_within(const DensityGrid& density, std::span<const std::pair<double, double>> centers,
                          double radius);

}  // namespace kickrot
