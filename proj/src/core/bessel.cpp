#include "core/bessel.hpp"

#include <boost/math/special_functions/bessel.hpp>

namespace rsw {

namespace {

// Hankel phase-amplitude expansion, accurate to ~1e-15 for nu <= 12 once
// z >= 150 (the first neglected term is far below 1e-15 there).
double bessel_asymptotic(int nu, double z) {
    const double mu = 4.0 * nu * nu;
    const double inv8z = 1.0 / (8.0 * z);
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = 1e300;
    // T_i = prod_{j<=i} (mu - (2j-1)^2) / (i! (8z)^i);
    // P = T0 - T2 + T4 - ..., Q = T1 - T3 + T5 - ...
    for (int i = 1; i <= 16; ++i) {
        term *= (mu - (2.0 * i - 1.0) * (2.0 * i - 1.0)) * inv8z / i;
        double mag = std::abs(term);
        if (mag > prev) break;  // asymptotic series started diverging
        prev = mag;
        if (i % 4 == 1)
            q += term;
        else if (i % 4 == 2)
            p -= term;
        else if (i % 4 == 3)
            q -= term;
        else
            p += term;
        if (mag < 1e-17) break;
    }
    double omega = z - (2.0 * nu + 1.0) * 0.25 * 3.141592653589793238462643;
    return std::sqrt(2.0 / (3.141592653589793238462643 * z)) *
           (p * std::cos(omega) - q * std::sin(omega));
}

}  // namespace

double bessel_j(int order, double x) {
    if (order < 0 || order > 64)
        throw std::invalid_argument(format("bessel_j: order %d out of [0,64]", order));
    if (!(x >= 0.0) || x > 1e6)
        throw std::invalid_argument(format("bessel_j: x=%g out of [0,1e6]", x));
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (order <= 12 && x >= 150.0) return bessel_asymptotic(order, x);
    return boost::math::cyl_bessel_j(order, x);
}

}  // namespace rsw
