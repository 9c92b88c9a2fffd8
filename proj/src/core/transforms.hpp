#pragma once

// Integral transforms of smooth windows: Mellin and Fourier transforms with
// adaptive quadrature, and the Voronoi kernel transform
//   W+(xi) = int W(x) Jplus(4 pi sqrt(xi x)) dx
// with oscillation-resolving panel placement.

#include "core/bessel.hpp"
#include "core/quadrature.hpp"
#include "core/window.hpp"

namespace rsw {

struct TransformResult {
    cplx value{0.0, 0.0};
    double error = 0.0;
    bool converged = false;
};

enum class TransformKind { mellin, fourier };

// mellin: int W(x) x^{s-1} dx, |Im s| <= 1e3.
// fourier: int W(x) e(-t x) dx (point taken as the real frequency t).
TransformResult transform(const SmoothWindow& w, TransformKind kind, cplx point,
                          const QuadratureConfig& cfg = {});

// Voronoi transform against the holomorphic kernel; support of w must stay
// away from 0.
TransformResult voronoi_kernel_transform(const SmoothWindow& w,
                                         const BesselKernel& kernel, double xi,
                                         const QuadratureConfig& cfg = {});

}  // namespace rsw
