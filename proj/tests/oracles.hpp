#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of these share code with the library.

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <boost/math/tools/roots.hpp>

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

// a_0(q) from the continued fraction
//   a = -2 q^2 / (4 - a - q^2 / (16 - a - q^2 / (36 - a - ...))).
inline double mathieu_a0_residual(double a, double q, int depth = 60) {
    double tail = 0.0;
    for (int n = depth; n >= 2; --n) tail = q * q / (4.0 * n * n - a - tail);
    return a + 2.0 * q * q / (4.0 - a - tail);
}

inline double mathieu_a0(double q) {
    // Scan up from the lower bound -2q. The residual crosses zero upwards at a
    // root and downwards at a pole, so the first upward crossing is a_0.
    auto f = [q](double a) { return mathieu_a0_residual(a, q); };
    const double h = 1e-3;
    double a = -2.0 * q - h;
    while (!(f(a) < 0.0 && f(a + h) > 0.0)) a += h;
    boost::math::tools::eps_tolerance<double> tol(50);
    auto [lo, hi] = boost::math::tools::bisect(f, a, a + h, tol);
    return 0.5 * (lo + hi);
}

// Pendulum phi'' = -w^2 sin phi librating through phi = 0 with phi(0) = phi0,
// phi'(0) = p0 >= 0: sin(phi/2) = kappa sn(u0 + w t | kappa).
struct LibratingPendulum {
    double w, kappa, u0;

    LibratingPendulum(double omega_sq, double phi0, double p0) : w(std::sqrt(omega_sq)) {
        const double s = std::sin(phi0 / 2.0);
        kappa = std::sqrt(s * s + p0 * p0 / (4.0 * omega_sq));
        u0 = boost::math::ellint_1(kappa, std::asin(s / kappa));
    }

    double phi(double t) const {
        return 2.0 * std::asin(kappa * boost::math::jacobi_sn(kappa, u0 + w * t));
    }
};

// One free planar rotor in the momentum basis m = -M..M, energies m^2,
// kicked by exp(i P cos theta). Amplitudes are stored at index m + M.
class SingleRotor {
public:
    explicit SingleRotor(int M) : M_(M), c_(2 * M + 1) { c_[M_] = 1.0; }

    void kick(double P) {
        std::vector<std::complex<double>> out(c_.size());
        const std::complex<double> i(0.0, 1.0);
        for (int m = -M_; m <= M_; ++m) {
            std::complex<double> acc = 0.0;
            for (int n = -M_; n <= M_; ++n) {
                const int d = m - n;
                acc += std::pow(i, (d % 4 + 4) % 4) * bessel(d, P) * c_[n + M_];
            }
            out[m + M_] = acc;
        }
        c_ = std::move(out);
    }

    void evolve(double t) {
        for (int m = -M_; m <= M_; ++m) c_[m + M_] *= std::polar(1.0, -double(m) * m * t);
    }

    // <cos theta> at time t after the current state.
    double mean_cos(double t) const {
        std::complex<double> acc = 0.0;
        for (int m = -M_; m < M_; ++m)
            acc += std::conj(c_[m + M_]) * c_[m + 1 + M_] * std::polar(1.0, -double(2 * m + 1) * t);
        return acc.real();
    }

    double norm() const {
        double s = 0.0;
        for (const auto& z : c_) s += std::norm(z);
        return s;
    }

private:
    static double bessel(int n, double x) {
        const double j = boost::math::cyl_bessel_j(std::abs(n), x);
        return (n < 0 && (n % 2)) ? -j : j;
    }

    int M_;
    std::vector<std::complex<double>> c_;
};

}  // namespace oracle
