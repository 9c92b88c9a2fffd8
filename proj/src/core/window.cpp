#include "core/window.hpp"

namespace rsw {

namespace {
inline double phi_exp(double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; }
}

double smoothstep(double u) {
    if (u <= 0) return 0.0;
    if (u >= 1) return 1.0;
    double a = phi_exp(u);
    double b = phi_exp(1.0 - u);
    return a / (a + b);
}

SmoothWindow SmoothWindow::bump(double a, double b, double scale) {
    if (!(0 < a && a < b)) throw std::invalid_argument("bump: need 0 < a < b");
    if (scale < 1.0) throw std::invalid_argument("bump: scale must be >= 1");
    SmoothWindow w;
    w.family_ = WindowFamily::bump;
    w.lo_ = a;
    w.hi_ = b;
    w.scale_ = scale;
    return w;
}

SmoothWindow SmoothWindow::plateau(double a, double b, double c, double d,
                                   double scale) {
    if (!(0 < a && a <= c && c < d && d <= b))
        throw std::invalid_argument("plateau: need 0 < a <= c < d <= b");
    if (a == c || d == b)
        throw std::invalid_argument("plateau: ramps must have positive width");
    if (scale < 1.0) throw std::invalid_argument("plateau: scale must be >= 1");
    SmoothWindow w;
    w.family_ = WindowFamily::plateau;
    w.lo_ = a;
    w.hi_ = b;
    w.plo_ = c;
    w.phi_ = d;
    w.scale_ = scale;
    w.ramp_lo_ = c - (c - a) / scale;
    w.ramp_hi_ = d + (b - d) / scale;
    return w;
}

double SmoothWindow::operator()(double x) const {
    if (x <= lo_ || x >= hi_) return 0.0;
    if (family_ == WindowFamily::bump) {
        double t = scale_ * (2.0 * x - (lo_ + hi_)) / (hi_ - lo_);
        if (t <= -1.0 || t >= 1.0) return 0.0;
        return amp_ * std::exp(-1.0 / (1.0 - t * t));
    }
    if (x >= plo_ && x <= phi_) return amp_;
    if (x < plo_) {
        if (x <= ramp_lo_) return 0.0;
        return amp_ * smoothstep((x - ramp_lo_) / (plo_ - ramp_lo_));
    }
    if (x >= ramp_hi_) return 0.0;
    return amp_ * smoothstep((ramp_hi_ - x) / (ramp_hi_ - phi_));
}

SmoothWindow make_window(WindowFamily family, double a, double b,
                         double plateau_lo, double plateau_hi, double scale) {
    if (family == WindowFamily::bump) return SmoothWindow::bump(a, b, scale);
    return SmoothWindow::plateau(a, b, plateau_lo, plateau_hi, scale);
}

}  // namespace rsw
