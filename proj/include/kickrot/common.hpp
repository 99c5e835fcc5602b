#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace kickrot {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr cplx imag_unit{0.0, 1.0};

/// Geometry of the rotor pair. A: both dipoles rotate in one plane.
/// B: both rotors share one rotation axis.
enum class Arrangement { A, B };

std::string to_string(Arrangement a);
Arrangement parse_arrangement(const std::string& text);

/// Coefficients of the separated potential c_xi*cos 2(xi+xi0) + c_eta*cos 2(eta+eta0),
/// in units of the dipolar energy.
struct CouplingConstants {
    double c_xi;
    double c_eta;
    double xi0;
    double eta0;
};

CouplingConstants coupling_constants(Arrangement a);

// Error hierarchy. The CLI maps each family onto its exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Basis truncation could not represent the state to the required accuracy.
class TruncationError : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
};

class SolverError : public InvariantViolation {
public:
    using InvariantViolation::InvariantViolation;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Uniform periodic grid -pi + 2*pi*i/n, i = 0..n-1.
std::vector<double> periodic_grid(int n);

/// Integer-order Bessel function J_n(x) for any real x.
double bessel_j(int n, double x);

}  // namespace kickrot
