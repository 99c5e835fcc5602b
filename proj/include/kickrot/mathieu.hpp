#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kickrot/common.hpp"

namespace kickrot {

/// The four periodic Mathieu families, labelled by the harmonics they contain:
/// ce-even {cos 2j}, se-odd {sin 2j+1}, ce-odd {cos 2j+1}, se-even {sin 2j+2}.
enum class MathieuClass { CeEven, SeOdd, CeOdd, SeEven };

inline constexpr MathieuClass all_mathieu_classes[] = {
    MathieuClass::CeEven, MathieuClass::SeOdd, MathieuClass::CeOdd, MathieuClass::SeEven};

std::string to_string(MathieuClass c);

/// Harmonic number carried by the j-th coefficient of a class.
int class_harmonic(MathieuClass c, int j);

/// One separated coordinate: f'' + [eps - 2 v cos 2(alpha + alpha0)] f = 0.
struct MathieuProblem {
    double v = 0.0;
    double alpha0 = 0.0;
    int K = 48;  ///< each class keeps K+1 Fourier coefficients
};

/// Orthonormal periodic eigenfunctions of one separated coordinate.
///
/// Level l is stored as coefficients against the orthonormal Fourier set
/// {1/sqrt(2 pi), cos(m a)/sqrt(pi), sin(m a)/sqrt(pi)}, so row m of
/// `cos_coeffs` / `sin_coeffs` holds the m-th harmonic (row 0 of `sin_coeffs`
/// is always zero). Functions are normalized to unit L2 norm on [-pi, pi);
/// the classical ce/se normalization (integral = pi) differs by sqrt(pi).
struct OneCoordinateBasis {
    MathieuProblem problem;
    int max_harmonic = 0;
    std::vector<double> eigenvalues;  ///< ascending
    Eigen::MatrixXd cos_coeffs;       ///< (max_harmonic+1) x levels
    Eigen::MatrixXd sin_coeffs;       ///< (max_harmonic+1) x levels
    /// Family of the unshifted solution each level was obtained from.
    std::vector<MathieuClass> class_labels;
    /// f_l(a + pi) = parity[l] * f_l(a).
    std::vector<int> translation_parity;

    int level_count() const { return static_cast<int>(eigenvalues.size()); }
};

/// Symmetric (K+1)x(K+1) matrix of the three-term recurrence for one class at
/// alpha0 = 0. The m = 0 row and column of ce-even are rescaled by sqrt(2) so
/// that unit eigenvectors are directly the orthonormal-basis coefficients.
Eigen::MatrixXd assemble_recurrence_matrix(const MathieuProblem& problem, MathieuClass cls);

/// The `levels` lowest eigenpairs over all four classes, sorted by eigenvalue,
/// with the shift alpha0 applied by exact re-expansion of f(a + alpha0).
OneCoordinateBasis solve_basis(const MathieuProblem& problem, int levels);

std::vector<double> evaluate_basis(const OneCoordinateBasis& basis, int level,
                                   std::span<const double> alphas);

/// f_l'' at the sample points, from the same Fourier coefficients.
std::vector<double> evaluate_basis_second_derivative(const OneCoordinateBasis& basis, int level,
                                                     std::span<const double> alphas);

/// All levels sampled on the given points: result(i, l) = f_l(alphas[i]).
Eigen::MatrixXd tabulate_basis(const OneCoordinateBasis& basis, std::span<const double> alphas);

/// Eigenpairs of -1/2 d^2/da^2 + v cos 2(a + alpha0) on an n-point periodic
/// grid with the plane-wave (Fourier grid Hamiltonian) kinetic matrix.
/// Eigenvalues are reported as 2E so they compare directly with eps.
struct GridEigenpairs {
    std::vector<double> grid;
    std::vector<double> eigenvalues;
    Eigen::MatrixXd vectors;  ///< column l holds f_l at grid points, unit L2 norm
};

GridEigenpairs fourier_grid_oracle(const MathieuProblem& problem, int n);

/// CSV columns: class,level,epsilon,m,cos_coeff,sin_coeff
void write_basis_csv(const OneCoordinateBasis& basis, std::ostream& out);

}  // namespace kickrot
