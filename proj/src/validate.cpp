#include <cmath>
#include <sstream>

#include "kickrot/experiment.hpp"
#include "kickrot/mathieu.hpp"

namespace kickrot {

namespace {

std::string fmt(const char* label, double value, const char* bound, double limit) {
    std::ostringstream s;
    s.precision(3);
    s << label << '=' << std::scientific << value << ' ' << bound << ' ' << limit;
    return s.str();
}

CheckResult below(std::string name, const char* label, double value, double limit) {
    return {std::move(name), value < limit, fmt(label, value, "<", limit)};
}

}  // namespace

std::vector<CheckResult> validation_checks() {
    std::vector<CheckResult> out;

    // Mathieu characteristic value a_0(q = 1).
    {
        const OneCoordinateBasis b = solve_basis({1.0, 0.0, 48}, 8);
        out.push_back(below("mathieu_a0", "|eps0 - a0|", std::abs(b.eigenvalues[0] + 0.455138604107), 1e-10));
    }
    {
        const OneCoordinateBasis b = solve_basis({45.0, pi / 2, 48}, 96);
        const Eigen::MatrixXd gram =
            b.cos_coeffs.transpose() * b.cos_coeffs + b.sin_coeffs.transpose() * b.sin_coeffs;
        const double defect = (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
        out.push_back(below("basis_orthonormal", "max|G - 1|", defect, 1e-12));
    }

    RotorPairConfig config;
    config.gamma = 3.0;
    const PairSystem system(config);
    const QuantumState ground = ground_state(system);
    const QuantumState kicked = apply_kick_grid(ground, config.kick_strength);
    out.push_back(below("kick_norm", "|1 - <psi|psi>|", std::abs(kicked.norm_squared() - 1.0), 1e-12));
    {
        const BesselKick bessel = apply_kick_bessel(ground, config.kick_strength, config.effective_bessel_cutoff());
        const double diff = (bessel.state.amplitudes - kicked.amplitudes).cwiseAbs().maxCoeff();
        out.push_back(below("kick_bessel_vs_grid", "max|dpsi|", diff, 1e-8));
    }
    const ModeCoefficients d = expand(kicked, system);
    out.push_back(below("capture", "1 - sum|D|^2", uncaptured_weight(d), capture_tolerance));
    out.push_back(below("parity", "max|D_forbidden|", forbidden_amplitude(d, system), 1e-10));
    {
        const ModeCoefficients later = evolve(d, system, 2.5);
        const double drift = std::abs(later.squaredNorm() - d.squaredNorm());
        out.push_back(below("unitarity", "|d norm|", drift, 1e-13));
        const double e_drift = std::abs(mean_energy(later, system) - mean_energy(d, system));
        out.push_back(below("energy_constant", "|d <H>|", e_drift, 1e-9));
    }
    {
        RotorPairConfig free = config;
        free.gamma = 0.0;
        const PairSystem isolated(free);
        const ModeCoefficients d0 = expand(apply_kick_grid(ground_state(isolated), free.kick_strength), isolated);
        double worst = 0.0;
        for (double t : {0.01, 0.05, 0.0921, 0.3, 1.0, 2.7})
            worst = std::max(worst, std::abs(orientation_at(d0, isolated, t) - analytic_isolated(free.kick_strength, t)));
        out.push_back(below("isolated_rotor_trace", "max|O - O_exact|", worst, 1e-8));
    }
    {
        ClassicalConfig cc;
        cc.t_max = 2.0;
        cc.dt = 0.25;
        const OrientationTrace trace = classical_orientation(cc);
        double worst = 0.0;
        for (std::size_t i = 0; i < trace.size(); ++i)
            worst = std::max(worst, std::abs(trace.values[i] - (2.0 - 2.0 * bessel_j(1, trace.times[i]))));
        out.push_back(below("classical_free_limit", "max|O - (2 - 2 J1)|", worst, 1e-10));
    }
    {
        ClassicalConfig cc;
        cc.gamma_cl = 30.0;
        cc.ensemble_size = 64;
        cc.t_max = 0.5;
        cc.dt = 0.1;
        // Direct average over the full ensemble against the folded one.
        const ClassicalEnsemble full = initial_ensemble(cc);
        const OrientationTrace folded = classical_orientation(cc);
        double worst = 0.0;
        for (std::size_t i = 0; i < folded.size(); ++i) {
            double o = 0.0;
            for (const auto& s : full.samples) {
                const auto th = evolve_pair({s.theta1, s.theta2},
                                            {s.omega1 + kick_impulse(s.theta1), s.omega2 + kick_impulse(s.theta2)},
                                            folded.times[i], cc.arrangement, cc.gamma_cl, cc.step);
                o += s.weight * (2.0 - std::cos(th[0]) - std::cos(th[1]));
            }
            worst = std::max(worst, std::abs(o - folded.values[i]));
        }
        out.push_back(below("classical_symmetry_fold", "max|O_full - O_folded|", worst, 1e-10));
    }
    return out;
}

}  // namespace kickrot
