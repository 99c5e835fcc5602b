#pragma once

#include <array>
#include <string>
#include <vector>

#include "kickrot/common.hpp"
#include "kickrot/observables.hpp"

namespace kickrot {

// Classical rotors use I/P as the time unit and (P/I)^2 for gamma_cl = E_D/(2I).

struct ClassicalConfig {
    Arrangement arrangement = Arrangement::A;
    double gamma_cl = 0.0;
    int ensemble_size = 256;      ///< M quadrature points per angle
    double step = 5e-4;           ///< integrator step
    double t_max = 3.0;
    double dt = 5e-3;             ///< sampling interval, a multiple of `step`
    double energy_tolerance = 1e-9;
    /// Optional weight exp(-beta * gamma_cl * F(t1, t2)) on the initial angles; 0 = uniform.
    double boltzmann_beta = 0.0;

    void validate() const;
};

struct RotorSample {
    double theta1, theta2, omega1, omega2;
    double weight;
};

/// Initial angles on the M x M tensor grid at rest, weights summing to one.
struct ClassicalEnsemble {
    std::vector<RotorSample> samples;
};

ClassicalEnsemble initial_ensemble(const ClassicalConfig& config);

/// The same ensemble folded under exchange (t1 <-> t2) and reflection (t -> -t);
/// each orbit keeps one representative carrying the orbit's total weight.
/// Both maps leave the equations of motion and O invariant.
ClassicalEnsemble reduced_initial_ensemble(const ClassicalConfig& config);

/// Angular velocity imparted by a delta pulse to a rotor at rest at theta.
double kick_impulse(double theta);

/// Pendulum strengths (k1, k2) of q1'' = k1 sin q1, q2'' = k2 sin q2 with
/// q1 = t1 + t2, q2 = t1 - t2.
std::array<double, 2> pendulum_strengths(Arrangement arrangement, double gamma_cl);

/// Time series of one pendulum q'' = k sin q.
struct PendulumTrajectory {
    double k = 0.0;
    std::vector<double> t, q, p;
};

PendulumTrajectory integrate_pendulum(double q0, double p0, double k, double t_end, double step,
                                      double sample_dt);

struct EnergyAudit {
    double max_relative_drift = 0.0;
    bool flagged = false;
};

/// Drift of 1/2 p^2 + k cos q relative to the scale |k| + 1/2 p0^2.
EnergyAudit energy_audit(const PendulumTrajectory& trajectory, double tolerance = 1e-9);

/// (t1(t), t2(t)) for a field-free pair, integrated with fixed-step RK4.
/// Throws SolverError when the energy drift of either pendulum exceeds the tolerance.
std::array<double, 2> evolve_pair(std::array<double, 2> theta0, std::array<double, 2> omega0, double t,
                                  Arrangement arrangement, double gamma_cl, double step = 5e-4,
                                  double tolerance = 1e-9);

/// Kick the ensemble at t = 0, evolve, and average 2 - cos t1 - cos t2.
OrientationTrace classical_orientation(const ClassicalConfig& config);

}  // namespace kickrot
