#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kickrot/common.hpp"
#include "kickrot/mathieu.hpp"

namespace kickrot {

/// Everything needed to simulate one rotor pair. Energies are in units of
/// E_K = hbar^2/(2I), times in hbar/E_K, the kick strength P in units of hbar.
struct RotorPairConfig {
    Arrangement arrangement = Arrangement::A;
    double gamma = 0.0;          ///< E_D / E_K
    double kick_strength = 10.0;  ///< P
    int fourier_truncation = 48;  ///< K
    int level_count = 96;         ///< L, levels kept per coordinate
    int bessel_cutoff = 0;        ///< n_c; 0 selects ceil(2P) + 20
    int grid_size = 256;          ///< N points per coordinate

    int effective_bessel_cutoff() const;
    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// One-line "key=value ..." summary of a configuration.
std::string describe(const RotorPairConfig& config);

/// Two-rotor wavefunction sampled on the uniform (xi, eta) grid over [-pi, pi)^2,
/// xi = (t1 + t2)/2, eta = (t1 - t2)/2. amplitudes(i, j) = psi(xi_i, eta_j).
///
/// The (xi, eta) torus covers the (t1, t2) torus twice; physical states obey
/// psi(xi + pi, eta + pi) = psi(xi, eta) and are normalized on the full
/// (xi, eta) torus.
struct QuantumState {
    Eigen::MatrixXcd amplitudes;

    int grid_size() const { return static_cast<int>(amplitudes.rows()); }
    double cell_area() const;
    double norm_squared() const;
    /// max |psi(xi + pi, eta + pi) - psi(xi, eta)|
    double periodicity_defect() const;
};

/// Expansion coefficients D(l, l') against f_l(xi) g_l'(eta).
using ModeCoefficients = Eigen::MatrixXcd;

/// Tensor Mathieu basis and grid tables for one configuration. Immutable once
/// built; safe to share between threads.
class PairSystem {
public:
    explicit PairSystem(const RotorPairConfig& config);

    const RotorPairConfig& config() const { return config_; }
    const CouplingConstants& coupling() const { return coupling_; }
    const OneCoordinateBasis& xi_basis() const { return xi_basis_; }
    const OneCoordinateBasis& eta_basis() const { return eta_basis_; }
    const std::vector<double>& grid() const { return grid_; }
    int levels() const { return config_.level_count; }
    int grid_size() const { return config_.grid_size; }

    /// f_l(xi_i) and g_l(eta_i), N x L.
    const Eigen::MatrixXd& xi_table() const { return xi_table_; }
    const Eigen::MatrixXd& eta_table() const { return eta_table_; }
    /// <f_l | cos xi | f_k> and <g_l | cos eta | g_k>.
    const Eigen::MatrixXd& xi_cos_elements() const { return xi_cos_; }
    const Eigen::MatrixXd& eta_cos_elements() const { return eta_cos_; }
    /// (eps_l + eps_l') / 2, the pair energy in units of E_K.
    const Eigen::MatrixXd& pair_energies() const { return pair_energy_; }
    /// true where p_l * p_l' = -1 (coefficients that must vanish).
    bool forbidden(int l, int lp) const {
        return xi_basis_.translation_parity[l] * eta_basis_.translation_parity[lp] < 0;
    }

private:
    RotorPairConfig config_;
    CouplingConstants coupling_;
    OneCoordinateBasis xi_basis_;
    OneCoordinateBasis eta_basis_;
    std::vector<double> grid_;
    Eigen::MatrixXd xi_table_, eta_table_;
    Eigen::MatrixXd xi_cos_, eta_cos_;
    Eigen::MatrixXd pair_energy_;
};

/// Lowest parity-allowed product state, in coefficient form.
ModeCoefficients ground_coefficients(const PairSystem& system);
QuantumState ground_state(const PairSystem& system);

/// psi -> exp[i P (cos t1 + cos t2)] psi = exp[2 i P cos xi cos eta] psi.
QuantumState apply_kick_grid(const QuantumState& state, double kick_strength);

struct BesselKick {
    QuantumState state;
    double tail_mass = 0.0;  ///< max over grid xi of sum_{|n| > n_c} J_n(2P cos xi)^2
    bool tail_warning = false;
};

/// Same kick through the truncated Jacobi-Anger sum
/// J_0(z) + 2 sum_{n=1}^{n_c} i^n J_n(z) cos(n eta), z = 2P cos xi.
BesselKick apply_kick_bessel(const QuantumState& state, double kick_strength, int cutoff);

inline constexpr double bessel_tail_warning_threshold = 1e-12;
inline constexpr double capture_tolerance = 1e-6;

/// D(l, l') = integral f_l(xi) g_l'(eta) psi(xi, eta) by grid quadrature.
/// Throws TruncationError if less than (1 - capture_tolerance) of the norm is captured.
ModeCoefficients expand(const QuantumState& state, const PairSystem& system);

/// D(l, l') exp[-i (eps_l + eps_l') t / 2]
ModeCoefficients evolve(const ModeCoefficients& coeffs, const PairSystem& system, double t);

QuantumState synthesize(const ModeCoefficients& coeffs, const PairSystem& system);

/// Spectral propagation by t followed by grid synthesis.
QuantumState propagate(const ModeCoefficients& coeffs, const PairSystem& system, double t);

/// <H> in units of E_K.
double mean_energy(const ModeCoefficients& coeffs, const PairSystem& system);

/// Largest |D(l, l')| over parity-forbidden entries.
double forbidden_amplitude(const ModeCoefficients& coeffs, const PairSystem& system);

/// Lower bound on the weight above the retained levels: 1 - sum |D|^2.
double uncaptured_weight(const ModeCoefficients& coeffs);

}  // namespace kickrot
