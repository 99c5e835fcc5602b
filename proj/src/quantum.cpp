#include "kickrot/quantum.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace kickrot {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

[[noreturn]] void config_fail(const std::string& key, const std::string& what) {
    throw ConfigError(key + ": " + what);
}

}  // namespace

int RotorPairConfig::effective_bessel_cutoff() const {
    if (bessel_cutoff > 0) return bessel_cutoff;
    return static_cast<int>(std::ceil(2.0 * kick_strength)) + 20;
}

void RotorPairConfig::validate() const {
    if (!std::isfinite(gamma) || gamma < 0.0) config_fail("gamma", "must be finite and >= 0");
    if (!std::isfinite(kick_strength) || kick_strength < 0.0)
        config_fail("kick_strength", "must be finite and >= 0");
    if (fourier_truncation < 8) config_fail("fourier_truncation", "must be >= 8");
    if (level_count < 1 || level_count > 2 * fourier_truncation)
        config_fail("levels", "must lie in [1, 2*fourier_truncation]");
    if (!is_power_of_two(grid_size) || grid_size < 128)
        config_fail("grid_size", "must be a power of two >= 128");
    // Products of two basis functions times cos must be resolved exactly.
    if (grid_size < 2 * (2 * fourier_truncation + 2) + 2)
        config_fail("grid_size", "too small for fourier_truncation " + std::to_string(fourier_truncation));
    const int min_cutoff = static_cast<int>(std::ceil(2.0 * kick_strength)) + 20;
    if (bessel_cutoff != 0 && bessel_cutoff < min_cutoff)
        config_fail("bessel_cutoff", "must be >= ceil(2P) + 20 = " + std::to_string(min_cutoff));
}

std::string describe(const RotorPairConfig& c) {
    std::ostringstream s;
    s.precision(17);
    s << "arrangement=" << to_string(c.arrangement) << " gamma=" << c.gamma << " kick_strength=" << c.kick_strength
      << " fourier_truncation=" << c.fourier_truncation << " levels=" << c.level_count
      << " bessel_cutoff=" << c.effective_bessel_cutoff() << " grid_size=" << c.grid_size;
    return s.str();
}

double QuantumState::cell_area() const {
    const double h = two_pi / grid_size();
    return h * h;
}

double QuantumState::norm_squared() const { return amplitudes.squaredNorm() * cell_area(); }

double QuantumState::periodicity_defect() const {
    const int n = grid_size();
    const int half = n / 2;
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(amplitudes((i + half) % n, (j + half) % n) - amplitudes(i, j)));
    return worst;
}

PairSystem::PairSystem(const RotorPairConfig& config)
    : config_(config), coupling_(coupling_constants(config.arrangement)) {
    config_.validate();
    const int k = config_.fourier_truncation;
    const int levels = config_.level_count;
    xi_basis_ = solve_basis({coupling_.c_xi * config_.gamma, coupling_.xi0, k}, levels);
    eta_basis_ = solve_basis({coupling_.c_eta * config_.gamma, coupling_.eta0, k}, levels);
    grid_ = periodic_grid(config_.grid_size);
    xi_table_ = tabulate_basis(xi_basis_, grid_);
    eta_table_ = tabulate_basis(eta_basis_, grid_);

    const double h = two_pi / config_.grid_size;
    Eigen::VectorXd cos_grid(config_.grid_size);
    for (int i = 0; i < config_.grid_size; ++i) cos_grid(i) = std::cos(grid_[i]);
    xi_cos_ = h * xi_table_.transpose() * cos_grid.asDiagonal() * xi_table_;
    eta_cos_ = h * eta_table_.transpose() * cos_grid.asDiagonal() * eta_table_;

    pair_energy_.resize(levels, levels);
    for (int l = 0; l < levels; ++l)
        for (int lp = 0; lp < levels; ++lp)
            pair_energy_(l, lp) = 0.5 * (xi_basis_.eigenvalues[l] + eta_basis_.eigenvalues[lp]);
}

ModeCoefficients ground_coefficients(const PairSystem& system) {
    const int levels = system.levels();
    int best_l = -1, best_lp = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int l = 0; l < levels; ++l)
        for (int lp = 0; lp < levels; ++lp) {
            if (system.forbidden(l, lp)) continue;
            const double e = system.pair_energies()(l, lp);
            if (e < best) {
                best = e;
                best_l = l;
                best_lp = lp;
            }
        }
    ModeCoefficients d = ModeCoefficients::Zero(levels, levels);
    d(best_l, best_lp) = 1.0;
    return d;
}

QuantumState ground_state(const PairSystem& system) {
    return synthesize(ground_coefficients(system), system);
}

QuantumState apply_kick_grid(const QuantumState& state, double kick_strength) {
    const int n = state.grid_size();
    const auto grid = periodic_grid(n);
    QuantumState out = state;
    for (int i = 0; i < n; ++i) {
        const double cx = std::cos(grid[i]);
        for (int j = 0; j < n; ++j) {
            const double phase = 2.0 * kick_strength * cx * std::cos(grid[j]);
            out.amplitudes(i, j) *= cplx(std::cos(phase), std::sin(phase));
        }
    }
    return out;
}

BesselKick apply_kick_bessel(const QuantumState& state, double kick_strength, int cutoff) {
    if (cutoff < 1) throw std::invalid_argument("apply_kick_bessel: cutoff must be >= 1");
    const int n = state.grid_size();
    const auto grid = periodic_grid(n);
    BesselKick out{state, 0.0, false};

    // i^n for n = 0..3
    const cplx ipow[4] = {1.0, imag_unit, -1.0, -imag_unit};
    std::vector<double> jn(static_cast<std::size_t>(cutoff) + 1);
    for (int i = 0; i < n; ++i) {
        const double z = 2.0 * kick_strength * std::cos(grid[i]);
        for (int k = 0; k <= cutoff; ++k) jn[k] = bessel_j(k, z);

        // Tail beyond the cutoff, summed until the terms are negligible.
        double tail = 0.0;
        for (int k = cutoff + 1;; ++k) {
            const double t = bessel_j(k, z);
            tail += 2.0 * t * t;
            if (k > std::abs(z) && t * t < 1e-32) break;
        }
        out.tail_mass = std::max(out.tail_mass, tail);

        for (int j = 0; j < n; ++j) {
            cplx factor = jn[0];
            for (int k = 1; k <= cutoff; ++k) factor += 2.0 * ipow[k % 4] * jn[k] * std::cos(k * grid[j]);
            out.state.amplitudes(i, j) *= factor;
        }
    }
    out.tail_warning = out.tail_mass > bessel_tail_warning_threshold;
    return out;
}

ModeCoefficients expand(const QuantumState& state, const PairSystem& system) {
    if (state.grid_size() != system.grid_size())
        throw std::invalid_argument("expand: state grid does not match the system grid");
    const ModeCoefficients d =
        state.cell_area() * (system.xi_table().transpose() * state.amplitudes * system.eta_table());
    const double total = state.norm_squared();
    const double captured = d.squaredNorm();
    if (captured < total * (1.0 - capture_tolerance)) {
        std::ostringstream msg;
        msg << "basis truncation captures only " << captured << " of norm " << total
            << " (levels=" << system.levels() << ", gamma=" << system.config().gamma
            << ", P=" << system.config().kick_strength << ")";
        throw TruncationError(msg.str());
    }
    return d;
}

ModeCoefficients evolve(const ModeCoefficients& coeffs, const PairSystem& system, double t) {
    // exp[-i (eps_l + eps_l') t / 2] factorizes into one phase per coordinate.
    auto phases = [t](const std::vector<double>& eps, Eigen::Index n) {
        Eigen::VectorXcd out(n);
        for (Eigen::Index l = 0; l < n; ++l) {
            const double phase = -0.5 * eps[l] * t;
            out(l) = cplx(std::cos(phase), std::sin(phase));
        }
        return out;
    };
    const Eigen::VectorXcd a = phases(system.xi_basis().eigenvalues, coeffs.rows());
    const Eigen::VectorXcd b = phases(system.eta_basis().eigenvalues, coeffs.cols());
    return a.asDiagonal() * coeffs * b.asDiagonal();
}

QuantumState synthesize(const ModeCoefficients& coeffs, const PairSystem& system) {
    QuantumState s;
    s.amplitudes = system.xi_table() * coeffs * system.eta_table().transpose();
    return s;
}

QuantumState propagate(const ModeCoefficients& coeffs, const PairSystem& system, double t) {
    return synthesize(evolve(coeffs, system, t), system);
}

double mean_energy(const ModeCoefficients& coeffs, const PairSystem& system) {
    return (coeffs.cwiseAbs2().array() * system.pair_energies().array()).sum() / coeffs.squaredNorm();
}

double forbidden_amplitude(const ModeCoefficients& coeffs, const PairSystem& system) {
    double worst = 0.0;
    for (Eigen::Index l = 0; l < coeffs.rows(); ++l)
        for (Eigen::Index lp = 0; lp < coeffs.cols(); ++lp)
            if (system.forbidden(static_cast<int>(l), static_cast<int>(lp)))
                worst = std::max(worst, std::abs(coeffs(l, lp)));
    return worst;
}

double uncaptured_weight(const ModeCoefficients& coeffs) { return 1.0 - coeffs.squaredNorm(); }

}  // namespace kickrot
