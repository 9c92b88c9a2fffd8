#pragma once

// Integer-order J-Bessel evaluation and the Voronoi kernel for holomorphic
// forms, J_plus(x) = 2 pi i^k J_{k-1}(x); the minus kernel vanishes
// identically for holomorphic forms.

#include "core/util.hpp"

namespace rsw {

// order in [0, 64], x in [0, 1e6]
double bessel_j(int order, double x);

struct BesselKernel {
    int weight;  // even, >= 2

    explicit BesselKernel(int k) : weight(k) {
        if (k < 2 || k % 2 != 0)
            throw std::invalid_argument("BesselKernel: weight must be even and >= 2");
    }

    // i^k is +-1 for even k
    double sign() const { return (weight % 4 == 0) ? 1.0 : -1.0; }

    double operator()(double x) const {
        return sign() * kTau * bessel_j(weight - 1, x);
    }
};

}  // namespace rsw
