#include "kickrot/common.hpp"

#include <cmath>
#include <cstdlib>

namespace kickrot {

std::string to_string(Arrangement a) {
    return a == Arrangement::A ? "A" : "B";
}

Arrangement parse_arrangement(const std::string& text) {
    if (text == "A" || text == "a" || text == "coplanar") return Arrangement::A;
    if (text == "B" || text == "b" || text == "coaxial") return Arrangement::B;
    throw ConfigError("arrangement: expected A or B, got '" + text + "'");
}

CouplingConstants coupling_constants(Arrangement a) {
    // F = cos t1 cos t2 - 2 sin t1 sin t2 = 3/2 cos 2xi - 1/2 cos 2eta  (A)
    // F = cos(t1 - t2) = cos 2eta                                      (B)
    if (a == Arrangement::A) return {1.5, 0.5, 0.0, pi / 2.0};
    return {0.0, 1.0, 0.0, 0.0};
}

std::vector<double> periodic_grid(int n) {
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) g[i] = -pi + two_pi * i / n;
    return g;
}

double bessel_j(int n, double x) {
    // J_{-n}(x) = (-1)^n J_n(x),  J_n(-x) = (-1)^n J_n(x)
    const int order = std::abs(n);
    const bool odd_order = (order % 2) == 1;
    double sign = 1.0;
    if (n < 0 && odd_order) sign = -sign;
    if (x < 0.0 && odd_order) sign = -sign;
    return sign * std::cyl_bessel_j(static_cast<double>(order), std::abs(x));
}

}  // namespace kickrot
