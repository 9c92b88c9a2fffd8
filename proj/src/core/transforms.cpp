#include "core/transforms.hpp"

namespace rsw {

namespace {

// panels so that each holds at most ~ a quarter period of the oscillation
int panels_for_phase(double phase_span_radians) {
    double p = std::ceil(std::abs(phase_span_radians) / 3.14159265358979);
    return static_cast<int>(std::clamp(p, 1.0, 65536.0));
}

}  // namespace

TransformResult transform(const SmoothWindow& w, TransformKind kind, cplx point,
                          const QuadratureConfig& cfg) {
    double a = w.support_lo();
    double b = w.support_hi();
    QuadResult q;
    if (kind == TransformKind::mellin) {
        if (std::abs(point.imag()) > 1e3)
            throw std::invalid_argument("mellin: |Im s| must be <= 1e3");
        cplx sm1 = point - cplx(1.0, 0.0);
        int panels = panels_for_phase(point.imag() * std::log(b / a));
        q = integrate(
            [&](double x) { return cplx(w(x), 0.0) * std::exp(sm1 * std::log(x)); },
            a, b, cfg, panels);
    } else {
        double t = point.real();
        int panels = panels_for_phase(kTau * t * (b - a));
        q = integrate([&](double x) { return w(x) * unit_phase(-t * x); }, a, b,
                      cfg, panels);
    }
    return {q.value, q.error, q.converged};
}

TransformResult voronoi_kernel_transform(const SmoothWindow& w,
                                         const BesselKernel& kernel, double xi,
                                         const QuadratureConfig& cfg) {
    double a = w.support_lo();
    double b = w.support_hi();
    if (!(xi > 0)) throw std::invalid_argument("voronoi_kernel_transform: xi must be > 0");
    if (!(a > 0)) throw std::invalid_argument("window support must be bounded away from 0");
    // phase of J(4 pi sqrt(xi x)) across [a,b]
    double span = 2.0 * kTau * std::sqrt(xi) * (std::sqrt(b) - std::sqrt(a));
    QuadResult q = integrate_real(
        [&](double x) { return w(x) * kernel(2.0 * kTau * std::sqrt(xi * x)); }, a,
        b, cfg, panels_for_phase(span));
    return {q.value, q.error, q.converged};
}

}  // namespace rsw
