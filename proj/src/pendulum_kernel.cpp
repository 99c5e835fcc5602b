#include "pendulum_kernel.hpp"

#include <cmath>
#include <cstddef>

namespace kickrot::detail {

void rk4_pendulum_steps(std::span<double> q, std::span<double> p, double k, double h, int steps) {
    const std::size_t n = q.size();
    double* __restrict qd = q.data();
    double* __restrict pd = p.data();
    if (k == 0.0) {
        for (std::size_t i = 0; i < n; ++i) qd[i] += (h * steps) * pd[i];
        return;
    }
    const double half = 0.5 * h;
    const double h2_4 = 0.25 * h * h;
    const double h2_2 = 0.5 * h * h;
    const double h2_6 = h * h / 6.0;
    const double h_6 = h / 6.0;
    for (int s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < n; ++i) {
            const double q0 = qd[i], p0 = pd[i];
            const double a1 = k * std::sin(q0);
            const double a2 = k * std::sin(q0 + half * p0);
            const double a3 = k * std::sin(q0 + half * p0 + h2_4 * a1);
            const double a4 = k * std::sin(q0 + h * p0 + h2_2 * a2);
            qd[i] = q0 + h * p0 + h2_6 * (a1 + a2 + a3);
            pd[i] = p0 + h_6 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        }
    }
}

}  // namespace kickrot::detail
