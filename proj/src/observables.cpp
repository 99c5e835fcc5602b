#include "kickrot/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/tools/minima.hpp>

namespace kickrot {

namespace {

int sample_count(double t_max, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("orientation trace: dt must be > 0");
    if (t_max < 0.0) throw std::invalid_argument("orientation trace: t_max must be >= 0");
    return static_cast<int>(std::floor(t_max / dt + 1e-9)) + 1;
}

double wrap_angle(double a) {
    double w = std::fmod(a + pi, two_pi);
    if (w < 0.0) w += two_pi;
    return w - pi;
}

}  // namespace

double orientation_factor(const QuantumState& state) {
    const int n = state.grid_size();
    const auto grid = periodic_grid(n);
    std::vector<double> c(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) c[i] = std::cos(grid[i]);
    double weighted = 0.0, total = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double p = std::norm(state.amplitudes(i, j));
            weighted += p * c[i] * c[j];
            total += p;
        }
    return 2.0 - 2.0 * weighted / total;
}

double orientation_factor(const ModeCoefficients& coeffs, const PairSystem& system) {
    const Eigen::MatrixXd re = coeffs.real();
    const Eigen::MatrixXd im = coeffs.imag();
    const auto& xc = system.xi_cos_elements();
    const auto& ec = system.eta_cos_elements();
    const Eigen::MatrixXd a = xc * re * ec.transpose();
    const Eigen::MatrixXd b = xc * im * ec.transpose();
    const double cc = (re.array() * a.array()).sum() + (im.array() * b.array()).sum();
    return 2.0 - 2.0 * cc / coeffs.squaredNorm();
}

double orientation_at(const ModeCoefficients& coeffs, const PairSystem& system, double t) {
    return orientation_factor(evolve(coeffs, system, t), system);
}

OrientationTrace orientation_trace(const ModeCoefficients& kicked, const PairSystem& system, double duration,
                                   double dt, double t_origin) {
    const int n = sample_count(duration, dt);
    OrientationTrace trace;
    trace.config_echo = describe(system.config());
    trace.times.resize(n);
    trace.values.resize(n);
    for (int k = 0; k < n; ++k) {
        const double t = k * dt;
        trace.times[k] = t_origin + t;
        trace.values[k] = orientation_at(kicked, system, t);
    }
    return trace;
}

OrientationTrace orientation_trace(const PairSystem& system, double t_max, double dt) {
    const QuantumState kicked = apply_kick_grid(ground_state(system), system.config().kick_strength);
    return orientation_trace(expand(kicked, system), system, t_max, dt);
}

FocalPoint find_focal_time(const OrientationTrace& trace) {
    const auto& t = trace.times;
    const auto& v = trace.values;
    int best = -1;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const bool local_min = v[i] <= v[i - 1] && v[i] <= v[i + 1] && (v[i] < v[i - 1] || v[i] < v[i + 1]);
        if (local_min && (best < 0 || v[i] < v[best])) best = static_cast<int>(i);
    }
    if (best < 0) throw InvariantViolation("find_focal_time: no interior minimum in the sampled window");

    // Vertex of the parabola through three (possibly non-uniform) samples.
    const double x0 = t[best - 1], x1 = t[best], x2 = t[best + 1];
    const double y0 = v[best - 1], y1 = v[best], y2 = v[best + 1];
    const double d0 = (y1 - y0) / (x1 - x0);
    const double d1 = (y2 - y1) / (x2 - x1);
    const double curvature = (d1 - d0) / (x2 - x0);
    if (curvature <= 0.0) return {x1, y1};
    const double slope_mid = d0 + curvature * (x1 - x0);  // derivative of the fit at x1
    const double shift = -slope_mid / (2.0 * curvature);
    const double tv = x1 + shift;
    const double yv = y1 + slope_mid * shift + curvature * shift * shift;
    return {tv, yv};
}

FocalPoint polish_minimum(const ModeCoefficients& coeffs, const PairSystem& system, double lo, double hi) {
    auto f = [&](double t) { return orientation_at(coeffs, system, t); };
    const auto [tm, vm] = boost::math::tools::brent_find_minima(f, lo, hi, 40);
    return {tm, vm};
}

FocalPoint find_focal_time(const PairSystem& system) {
    const QuantumState kicked = apply_kick_grid(ground_state(system), system.config().kick_strength);
    const ModeCoefficients d = expand(kicked, system);
    const OrientationTrace trace = orientation_trace(d, system, short_window, short_window_dt);
    const FocalPoint rough = find_focal_time(trace);
    return polish_minimum(d, system, rough.time - short_window_dt, rough.time + short_window_dt);
}

double analytic_isolated(double kick_strength, double t) {
    return 2.0 - 2.0 * bessel_j(1, 2.0 * kick_strength * std::sin(t));
}

double interpolate_density(const QuantumState& state, double xi, double eta) {
    const int n = state.grid_size();
    const double h = two_pi / n;
    const double x = (wrap_angle(xi) + pi) / h;
    const double y = (wrap_angle(eta) + pi) / h;
    const int i0 = static_cast<int>(std::floor(x));
    const int j0 = static_cast<int>(std::floor(y));
    const double fx = x - i0, fy = y - j0;
    auto at = [&](int i, int j) { return std::norm(state.amplitudes(((i % n) + n) % n, ((j % n) + n) % n)); };
    return (1 - fx) * (1 - fy) * at(i0, j0) + fx * (1 - fy) * at(i0 + 1, j0) + (1 - fx) * fy * at(i0, j0 + 1) +
           fx * fy * at(i0 + 1, j0 + 1);
}

DensityGrid density_grid(const QuantumState& state, int m) {
    if (m < 2) throw std::invalid_argument("density_grid: m must be >= 2");
    DensityGrid out;
    out.axis = periodic_grid(m);
    out.values.resize(m, m);
    double peak = 0.0, mismatch = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double xi = 0.5 * (out.axis[i] + out.axis[j]);
            const double eta = 0.5 * (out.axis[i] - out.axis[j]);
            const double a = interpolate_density(state, xi, eta);
            const double b = interpolate_density(state, xi + pi, eta + pi);
            mismatch = std::max(mismatch, std::abs(a - b));
            peak = std::max(peak, a);
            out.values(i, j) = 0.5 * (a + b);
        }
    if (mismatch > 1e-8 * std::max(peak, 1e-300))
        throw InvariantViolation("density_grid: preimages (xi, eta) and (xi+pi, eta+pi) disagree by " +
                                 std::to_string(mismatch));
    return out;
}

double probability_within(const DensityGrid& density, std::span<const std::pair<double, double>> centers,
                          double radius) {
    const int m = static_cast<int>(density.axis.size());
    const double cell = (two_pi / m) * (two_pi / m);
    double mass = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            bool inside = false;
            for (const auto& [c1, c2] : centers) {
                const double d1 = wrap_angle(density.axis[i] - c1);
                const double d2 = wrap_angle(density.axis[j] - c2);
                if (d1 * d1 + d2 * d2 <= radius * radius) {
                    inside = true;
                    break;
                }
            }
            if (inside) mass += density.values(i, j) * cell;
        }
    return mass;
}

}  // namespace kickrot
