// End-to-end acceptance checks. One PASS/FAIL line per criterion; the exit
// status is the number of failures. `acceptance N` runs criterion N only.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "../oracles.hpp"
#include "kickrot/classical.hpp"
#include "kickrot/mathieu.hpp"
#include "kickrot/observables.hpp"
#include "kickrot/squeeze.hpp"

using namespace kickrot;

namespace {

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            passed = false;
            detail << "[violated] ";
        }
        detail << what << "; ";
    }
};

std::string num(double x, int digits = 6) {
    std::ostringstream s;
    s.precision(digits);
    s << x;
    return s.str();
}

RotorPairConfig pair_config(Arrangement a, double gamma) {
    RotorPairConfig c;
    c.arrangement = a;
    c.gamma = gamma;
    c.kick_strength = 10.0;
    return c;
}

int failures = 0;
int selected = 0;  // 0 runs every criterion

void criterion(int id, const char* title, double time_limit_s, const std::function<void(Outcome&)>& body) {
    if (selected != 0 && selected != id) return;
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.passed = false;
        o.detail << "exception: " << e.what() << "; ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit_s > 0.0) o.require(secs < time_limit_s, "runtime " + num(secs, 3) + " s < " + num(time_limit_s) + " s");
    else o.detail << "runtime " << num(secs, 3) << " s";
    std::printf("%s criterion %d (%s): %s\n", o.passed ? "PASS" : "FAIL", id, title, o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.passed) ++failures;
}

double quantum_minimum(Arrangement a, double gamma) { return find_focal_time(PairSystem(pair_config(a, gamma))).value; }

double classical_minimum(Arrangement a, double gamma_cl) {
    ClassicalConfig c;
    c.arrangement = a;
    c.gamma_cl = gamma_cl;
    return find_focal_time(classical_orientation(c)).value;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) selected = std::atoi(argv[1]);
    criterion(1, "isolated-rotor analytic check", 30.0, [](Outcome& o) {
        const PairSystem s(pair_config(Arrangement::A, 0.0));
        const OrientationTrace tr = orientation_trace(s, long_window, long_window_dt);
        double worst = 0.0;
        for (std::size_t i = 0; i < tr.size(); ++i)
            worst = std::max(worst, std::abs(tr.values[i] - analytic_isolated(10.0, tr.times[i])));
        o.require(tr.times.back() >= 7.0 - 1e-9, "trace covers [0, 7]");
        o.require(worst < 1e-6, "max |O - (2 - 2 J1(2P sin t))| = " + num(worst, 3) + " < 1e-6");
        const FocalPoint f = find_focal_time(s);
        o.require(std::abs(f.time - 9.2e-2) <= 5e-4, "t_c = " + num(f.time) + " within 9.2e-2 +- 5e-4");
        o.require(std::abs(f.value - 0.836) <= 1e-3, "O_min = " + num(f.value) + " within 0.836 +- 1e-3");
    });

    criterion(2, "enhanced orientation, Gamma = 30, A", 120.0, [&](Outcome& o) {
        const RotorPairConfig base = pair_config(Arrangement::A, 30.0);
        const FocalPoint f = find_focal_time(PairSystem(base));
        o.require(std::abs(f.value - 0.156) <= 0.01, "O_min = " + num(f.value) + " within 0.156 +- 0.01");
        o.require(std::abs(f.time - 9.1e-2) <= 2e-3, "t_c = " + num(f.time) + " within 9.1e-2 +- 2e-3");
        RotorPairConfig fine = base;
        fine.fourier_truncation *= 2;
        fine.level_count *= 2;
        fine.grid_size *= 2;
        fine.bessel_cutoff = 2 * base.effective_bessel_cutoff();
        const FocalPoint g = find_focal_time(PairSystem(fine));
        const double change = std::abs(g.value - f.value);
        o.require(change < 1e-3, "doubling K, L, N, n_c moves O_min by " + num(change, 3) + " < 1e-3");
    });

    criterion(3, "monotone enhancement, A", 0.0, [](Outcome& o) {
        double previous = 4.0;
        std::string values;
        bool strict = true;
        for (double g : {0.0, 1.0, 3.0, 30.0}) {
            const double v = quantum_minimum(Arrangement::A, g);
            values += "Gamma=" + num(g) + ":" + num(v) + " ";
            strict = strict && v < previous;
            previous = v;
        }
        o.require(strict, "O_min strictly decreasing (" + values + ")");
    });

    criterion(4, "insensitivity, B", 0.0, [](Outcome& o) {
        const double v0 = quantum_minimum(Arrangement::B, 0.0);
        const double v30 = quantum_minimum(Arrangement::B, 30.0);
        o.require(std::abs(v30 - v0) < 0.1, "|O_min(30) - O_min(0)| = " + num(std::abs(v30 - v0)) + " < 0.1");
    });

    criterion(5, "classical contrast", 60.0, [](Outcome& o) {
        for (auto a : {Arrangement::A, Arrangement::B}) {
            double previous = -1.0;
            std::string values;
            bool strict = true;
            for (double g : {0.0, 15.0, 30.0, 45.0}) {
                const double v = classical_minimum(a, g);
                values += num(v) + " ";
                strict = strict && v > previous;
                previous = v;
            }
            o.require(strict, "arrangement " + to_string(a) + " classical O_min strictly increasing (" + values + ")");
        }
        ClassicalConfig c;
        const OrientationTrace tr = classical_orientation(c);
        double worst = 0.0;
        for (std::size_t i = 0; i < tr.size(); ++i)
            worst = std::max(worst, std::abs(tr.values[i] - (2.0 - 2.0 * boost::math::cyl_bessel_j(1, tr.times[i]))));
        o.require(worst < 2e-3, "Gamma_cl = 0 vs 2 - 2 J1(t): " + num(worst, 3) + " < 2e-3");
    });

    criterion(6, "basis correctness", 0.0, [](Outcome& o) {
        double worst_eig = 0.0, worst_gram = 0.0;
        for (double v : {0.0, 0.5, 1.5, 15.0, 30.0, 45.0})
            for (double a0 : {0.0, pi / 2}) {
                const MathieuProblem p{v, a0, 48};
                const auto b = solve_basis(p, 96);
                const auto grid = fourier_grid_oracle(p, 256);
                for (int l = 0; l < b.level_count(); ++l)
                    worst_eig = std::max(worst_eig, std::abs(b.eigenvalues[l] - grid.eigenvalues[l]));
                const Eigen::MatrixXd g =
                    b.cos_coeffs.transpose() * b.cos_coeffs + b.sin_coeffs.transpose() * b.sin_coeffs;
                worst_gram = std::max(worst_gram, (g - Eigen::MatrixXd::Identity(96, 96)).cwiseAbs().maxCoeff());
            }
        o.require(worst_eig < 1e-8, "max |eps - eps_grid| over 96 levels = " + num(worst_eig, 3) + " < 1e-8");
        o.require(worst_gram < 1e-10, "orthonormality deviation " + num(worst_gram, 3) + " < 1e-10");
        const double e0 = solve_basis({1.0, 0.0, 48}, 1).eigenvalues[0];
        const double cf = oracle::mathieu_a0(1.0);
        o.require(std::abs(e0 + 0.4551) <= 1e-4, "v = 1 ground value " + num(e0, 10) + " within -0.4551 +- 1e-4");
        o.require(std::abs(e0 - cf) < 1e-10, "continued-fraction value " + num(cf, 12));
    });

    criterion(7, "kick-operator equivalence", 0.0, [](Outcome& o) {
        double worst = 0.0;
        for (auto a : {Arrangement::A, Arrangement::B})
            for (double g : {0.0, 30.0}) {
                const PairSystem s(pair_config(a, g));
                const QuantumState ground = ground_state(s);
                const BesselKick b = apply_kick_bessel(ground, 10.0, 40);
                worst = std::max(worst, (b.state.amplitudes - apply_kick_grid(ground, 10.0).amplitudes).cwiseAbs().maxCoeff());
            }
        o.require(worst < 1e-8, "max |psi_bessel - psi_grid| = " + num(worst, 3) + " < 1e-8");
    });

    criterion(8, "unitarity and parity", 0.0, [](Outcome& o) {
        double drift = 0.0, leak = 0.0;
        for (auto a : {Arrangement::A, Arrangement::B})
            for (double g : {0.0, 1.0, 3.0, 30.0}) {
                const PairSystem s(pair_config(a, g));
                const QuantumState k = apply_kick_grid(ground_state(s), 10.0);
                drift = std::max(drift, std::abs(k.norm_squared() - 1.0));
                const ModeCoefficients d = expand(k, s);
                leak = std::max(leak, forbidden_amplitude(d, s));
                for (double t = 0.0; t <= 7.0; t += 0.35) {
                    const ModeCoefficients dt = evolve(d, s, t);
                    drift = std::max(drift, std::abs(dt.squaredNorm() - d.squaredNorm()));
                    leak = std::max(leak, forbidden_amplitude(dt, s));
                }
                drift = std::max(drift, std::abs(propagate(d, s, 0.09).norm_squared() - d.squaredNorm()));
            }
        o.require(drift < 1e-10, "norm drift " + num(drift, 3) + " < 1e-10");
        o.require(leak < 1e-12, "parity-forbidden amplitude " + num(leak, 3) + " (numerically zero)");
    });

    criterion(9, "accumulative squeezing", 600.0, [&](Outcome& o) {
        const PairSystem free_pair(multi_pulse_config(pair_config(Arrangement::A, 0.0)));
        const SqueezeResult r0 = accumulative_squeeze(free_pair, 7, 10.0);
        std::string m0;
        for (const auto& p : r0.schedule.pulses) m0 += num(p.focal_value, 4) + " ";
        o.require(r0.schedule.minima_non_increasing(), "Gamma = 0 per-pulse minima non-increasing (" + m0 + ")");
        double best0 = 4.0;
        for (const auto& p : r0.schedule.pulses) best0 = std::min(best0, p.focal_value);

        const PairSystem coupled(multi_pulse_config(pair_config(Arrangement::A, 30.0)));
        const SqueezeResult r30 = accumulative_squeeze(coupled, 7, 10.0);
        const double final30 = r30.schedule.pulses.back().focal_value;
        const double single = quantum_minimum(Arrangement::A, 30.0);
        o.require(final30 < 0.156 && final30 < single,
                  "Gamma = 30 final minimum " + num(final30) + " below single-kick " + num(single));
        o.require(final30 < best0, "Gamma = 30 final minimum below Gamma = 0 seven-pulse minimum " + num(best0));
    });

    criterion(10, "density snapshots, Gamma = 30, A", 0.0, [](Outcome& o) {
        const PairSystem s(pair_config(Arrangement::A, 30.0));
        const QuantumState ground = ground_state(s);
        const std::pair<double, double> aligned[] = {{pi / 2, pi / 2}, {-pi / 2, -pi / 2}};
        const double p_ground = probability_within(density_grid(ground, 256), aligned, pi / 4);
        o.require(p_ground > 0.95, "ground-state mass within distance pi/4 of (pi/2, pi/2), (-pi/2, -pi/2): " +
                                       num(p_ground) + " > 0.95");
        // For reference only: both angles separately within pi/4.
        const DensityGrid dg = density_grid(ground, 256);
        double boxed = 0.0;
        const double cell = (two_pi / 256) * (two_pi / 256);
        for (int i = 0; i < 256; ++i)
            for (int j = 0; j < 256; ++j)
                for (const auto& [c1, c2] : aligned)
                    if (std::abs(dg.axis[i] - c1) <= pi / 4 && std::abs(dg.axis[j] - c2) <= pi / 4) boxed += dg.values(i, j) * cell;
        o.detail << "(info: per-angle box mass " << num(boxed) << ") ";
        const FocalPoint f = find_focal_time(s);
        const ModeCoefficients d = expand(apply_kick_grid(ground, 10.0), s);
        const std::pair<double, double> origin[] = {{0.0, 0.0}};
        const double p_focus = probability_within(density_grid(propagate(d, s, f.time), 256), origin, pi / 4);
        o.require(p_focus > 0.5, "mass near the origin at t_c = " + num(f.time) + ": " + num(p_focus) + " > 0.5");
    });

    std::printf("%d criteria failed\n", failures);
    return failures;
}
