#include "kickrot/classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pendulum_kernel.hpp"

namespace kickrot {

namespace {

double interaction_shape(Arrangement a, double t1, double t2) {
    if (a == Arrangement::A) return std::cos(t1) * std::cos(t2) - 2.0 * std::sin(t1) * std::sin(t2);
    return std::cos(t1 - t2);
}

double pendulum_energy(double q, double p, double k) { return 0.5 * p * p + k * std::cos(q); }

int substeps_per_sample(double dt, double step) {
    const double ratio = dt / step;
    const int n = static_cast<int>(std::lround(ratio));
    if (n < 1 || std::abs(ratio - n) > 1e-9 * ratio)
        throw ConfigError("dt: must be an integer multiple of the integrator step");
    return n;
}

std::string echo(const ClassicalConfig& c) {
    std::ostringstream s;
    s.precision(17);
    s << "arrangement=" << to_string(c.arrangement) << " gamma_cl=" << c.gamma_cl
      << " ensemble_size=" << c.ensemble_size << " step=" << c.step << " dt=" << c.dt
      << " boltzmann_beta=" << c.boltzmann_beta;
    return s.str();
}

}  // namespace

void ClassicalConfig::validate() const {
    if (!std::isfinite(gamma_cl) || gamma_cl < 0.0) throw ConfigError("gamma: must be finite and >= 0");
    if (ensemble_size < 64) throw ConfigError("ensemble_size: must be >= 64");
    if (!(step > 0.0)) throw ConfigError("step: must be > 0");
    if (!(dt > 0.0)) throw ConfigError("dt: must be > 0");
    if (!(t_max >= 0.0)) throw ConfigError("t_max: must be >= 0");
    if (!(energy_tolerance > 0.0)) throw ConfigError("energy_tolerance: must be > 0");
    if (!std::isfinite(boltzmann_beta)) throw ConfigError("boltzmann_beta: must be finite");
    substeps_per_sample(dt, step);
}

ClassicalEnsemble initial_ensemble(const ClassicalConfig& config) {
    const int m = config.ensemble_size;
    const auto grid = periodic_grid(m);
    ClassicalEnsemble e;
    e.samples.reserve(static_cast<std::size_t>(m) * m);
    double total = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double w =
                std::exp(-config.boltzmann_beta * config.gamma_cl * interaction_shape(config.arrangement, grid[i], grid[j]));
            e.samples.push_back({grid[i], grid[j], 0.0, 0.0, w});
            total += w;
        }
    for (auto& s : e.samples) s.weight /= total;
    return e;
}

ClassicalEnsemble reduced_initial_ensemble(const ClassicalConfig& config) {
    const int m = config.ensemble_size;
    const auto grid = periodic_grid(m);
    auto neg = [m](int i) { return (m - i) % m; };
    ClassicalEnsemble e;
    double total = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            std::array<std::pair<int, int>, 4> orbit = {
                {{i, j}, {j, i}, {neg(i), neg(j)}, {neg(j), neg(i)}}};
            std::sort(orbit.begin(), orbit.end());
            if (orbit[0] != std::make_pair(i, j)) continue;
            const auto distinct = std::unique(orbit.begin(), orbit.end()) - orbit.begin();
            const double w =
                std::exp(-config.boltzmann_beta * config.gamma_cl * interaction_shape(config.arrangement, grid[i], grid[j]));
            e.samples.push_back({grid[i], grid[j], 0.0, 0.0, w * static_cast<double>(distinct)});
            total += w * static_cast<double>(distinct);
        }
    for (auto& s : e.samples) s.weight /= total;
    return e;
}

double kick_impulse(double theta) { return -std::sin(theta); }

std::array<double, 2> pendulum_strengths(Arrangement arrangement, double gamma_cl) {
    if (arrangement == Arrangement::A) return {6.0 * gamma_cl, -2.0 * gamma_cl};
    return {0.0, 4.0 * gamma_cl};
}

PendulumTrajectory integrate_pendulum(double q0, double p0, double k, double t_end, double step,
                                      double sample_dt) {
    const int sub = substeps_per_sample(sample_dt, step);
    const int samples = static_cast<int>(std::floor(t_end / sample_dt + 1e-9));
    PendulumTrajectory tr;
    tr.k = k;
    double q = q0, p = p0;
    tr.t.push_back(0.0);
    tr.q.push_back(q);
    tr.p.push_back(p);
    for (int s = 1; s <= samples; ++s) {
        detail::rk4_pendulum_steps({&q, 1}, {&p, 1}, k, step, sub);
        tr.t.push_back(s * sample_dt);
        tr.q.push_back(q);
        tr.p.push_back(p);
    }
    return tr;
}

EnergyAudit energy_audit(const PendulumTrajectory& trajectory, double tolerance) {
    EnergyAudit audit;
    if (trajectory.q.empty()) return audit;
    const double e0 = pendulum_energy(trajectory.q[0], trajectory.p[0], trajectory.k);
    const double scale = std::abs(trajectory.k) + 0.5 * trajectory.p[0] * trajectory.p[0];
    if (scale == 0.0) return audit;
    for (std::size_t i = 1; i < trajectory.q.size(); ++i) {
        const double e = pendulum_energy(trajectory.q[i], trajectory.p[i], trajectory.k);
        audit.max_relative_drift = std::max(audit.max_relative_drift, std::abs(e - e0) / scale);
    }
    audit.flagged = audit.max_relative_drift > tolerance;
    return audit;
}

std::array<double, 2> evolve_pair(std::array<double, 2> theta0, std::array<double, 2> omega0, double t,
                                  Arrangement arrangement, double gamma_cl, double step, double tolerance) {
    if (t < 0.0) throw std::invalid_argument("evolve_pair: t must be >= 0");
    const auto k = pendulum_strengths(arrangement, gamma_cl);
    std::array<double, 2> q = {theta0[0] + theta0[1], theta0[0] - theta0[1]};
    std::array<double, 2> p = {omega0[0] + omega0[1], omega0[0] - omega0[1]};
    const int steps = std::max(1, static_cast<int>(std::ceil(t / step - 1e-12)));
    const double h = t / steps;
    for (int c = 0; c < 2; ++c) {
        const double e0 = pendulum_energy(q[c], p[c], k[c]);
        const double scale = std::abs(k[c]) + 0.5 * p[c] * p[c];
        if (t > 0.0) detail::rk4_pendulum_steps({&q[c], 1}, {&p[c], 1}, k[c], h, steps);
        if (scale > 0.0) {
            const double drift = std::abs(pendulum_energy(q[c], p[c], k[c]) - e0) / scale;
            if (drift > tolerance) {
                std::ostringstream msg;
                msg << "evolve_pair: energy drift " << drift << " exceeds " << tolerance << " for q" << (c + 1)
                    << " (step " << h << ", k " << k[c] << ")";
                throw SolverError(msg.str());
            }
        }
    }
    return {0.5 * (q[0] + q[1]), 0.5 * (q[0] - q[1])};
}

OrientationTrace classical_orientation(const ClassicalConfig& config) {
    config.validate();
    const ClassicalEnsemble ensemble = reduced_initial_ensemble(config);
    const std::size_t n = ensemble.samples.size();
    const auto k = pendulum_strengths(config.arrangement, config.gamma_cl);
    const int sub = substeps_per_sample(config.dt, config.step);
    const int samples = static_cast<int>(std::floor(config.t_max / config.dt + 1e-9)) + 1;

    std::vector<double> q1(n), p1(n), q2(n), p2(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = ensemble.samples[i];
        const double w1 = s.omega1 + kick_impulse(s.theta1);
        const double w2 = s.omega2 + kick_impulse(s.theta2);
        q1[i] = s.theta1 + s.theta2;
        p1[i] = w1 + w2;
        q2[i] = s.theta1 - s.theta2;
        p2[i] = w1 - w2;
        w[i] = s.weight;
    }
    std::vector<double> e1(n), e2(n), scale1(n), scale2(n);
    for (std::size_t i = 0; i < n; ++i) {
        e1[i] = pendulum_energy(q1[i], p1[i], k[0]);
        e2[i] = pendulum_energy(q2[i], p2[i], k[1]);
        scale1[i] = std::abs(k[0]) + 0.5 * p1[i] * p1[i];
        scale2[i] = std::abs(k[1]) + 0.5 * p2[i] * p2[i];
    }

    OrientationTrace trace;
    trace.config_echo = echo(config);
    for (int s = 0; s < samples; ++s) {
        if (s > 0) {
            detail::rk4_pendulum_steps(q1, p1, k[0], config.step, sub);
            detail::rk4_pendulum_steps(q2, p2, k[1], config.step, sub);
        }
        double o = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t1 = 0.5 * (q1[i] + q2[i]);
            const double t2 = 0.5 * (q1[i] - q2[i]);
            o += w[i] * (2.0 - std::cos(t1) - std::cos(t2));
            if (s > 0) {
                const double d1 = scale1[i] > 0 ? std::abs(pendulum_energy(q1[i], p1[i], k[0]) - e1[i]) / scale1[i] : 0;
                const double d2 = scale2[i] > 0 ? std::abs(pendulum_energy(q2[i], p2[i], k[1]) - e2[i]) / scale2[i] : 0;
                if (std::max(d1, d2) > config.energy_tolerance) {
                    const auto& bad = ensemble.samples[i];
                    std::ostringstream msg;
                    msg << "classical integrator: energy drift " << std::max(d1, d2) << " exceeds "
                        << config.energy_tolerance << " for sample (theta1=" << bad.theta1
                        << ", theta2=" << bad.theta2 << ") at t=" << s * config.dt;
                    throw SolverError(msg.str());
                }
            }
        }
        trace.times.push_back(s * config.dt);
        trace.values.push_back(o);
    }
    return trace;
}

}  // namespace kickrot
