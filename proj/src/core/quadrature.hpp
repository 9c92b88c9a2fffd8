#pragma once

// Adaptive Gauss-Kronrod (G7/K15) quadrature for smooth and mildly
// oscillatory integrands on finite intervals.  Callers with oscillatory
// kernels pass an initial panel count resolving the phase.

#include "core/util.hpp"

namespace rsw {

struct QuadratureConfig {
    double abs_tol = 1e-11;
    double rel_tol = 1e-11;
    int max_depth = 22;       // max bisection depth per panel
    int max_panels = 200000;  // global subdivision budget
    QuadratureConfig() = default;
    QuadratureConfig(double atol, double rtol) : abs_tol(atol), rel_tol(rtol) {
        if (!(atol > 0) || !(rtol > 0))
            throw std::invalid_argument("quadrature tolerances must be > 0");
    }
};

struct QuadResult {
    cplx value{0.0, 0.0};
    double error = 0.0;  // estimated absolute error
    bool converged = false;
    int panels = 0;
};

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     const QuadratureConfig& cfg = {}, int initial_panels = 1);

QuadResult integrate_real(const std::function<double(double)>& f, double a,
                          double b, const QuadratureConfig& cfg = {},
                          int initial_panels = 1);

}  // namespace rsw
