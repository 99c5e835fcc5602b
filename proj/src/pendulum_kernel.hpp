#pragma once

#include <span>

namespace kickrot::detail {

// Advances every pendulum q'' = k sin q by `steps` classical RK4 steps of size h.
// Built with vectorized math in its own translation unit.
void rk4_pendulum_steps(std::span<double> q, std::span<double> p, double k, double h, int steps);

}  // namespace kickrot::detail
