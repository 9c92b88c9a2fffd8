#pragma once

// Compactly supported C^infinity windows: the scaled bump exp(-1/(1-t^2)) and
// a plateau variant that is identically 1 on an inner interval.  The scale K
// compresses the transition regions, so j-th derivatives grow like K^j with
// constants fixed by the K = 1 family.

#include "core/util.hpp"

namespace rsw {

enum class WindowFamily { bump, plateau };

class SmoothWindow {
public:
    // Bump supported on [a,b]; for scale > 1 the bump narrows to the middle
    // (b-a)/scale of the interval.
    static SmoothWindow bump(double a, double b, double scale = 1.0);

    // Identically amp on [c,d] inside [a,b]; ramp widths shrink by 1/scale.
    static SmoothWindow plateau(double a, double b, double c, double d,
                                double scale = 1.0);

    double operator()(double x) const;

    WindowFamily family() const { return family_; }
    double support_lo() const { return lo_; }
    double support_hi() const { return hi_; }
    double plateau_lo() const { return plo_; }
    double plateau_hi() const { return phi_; }
    double scale() const { return scale_; }
    double amplitude() const { return amp_; }

    SmoothWindow scaled_by(double factor) const {
        SmoothWindow w = *this;
        w.amp_ *= factor;
        return w;
    }

    SmoothWindow() = default;  // placeholder bump on [1,2]

private:
    WindowFamily family_ = WindowFamily::bump;
    double lo_ = 1, hi_ = 2;
    double plo_ = 0, phi_ = 0;    // effective ramp endpoints for plateau
    double ramp_lo_ = 0, ramp_hi_ = 0;  // ramp start (left) / end (right)
    double scale_ = 1.0;
    double amp_ = 1.0;
};

// C^infinity step: 0 for u <= 0, 1 for u >= 1.
double smoothstep(double u);

SmoothWindow make_window(WindowFamily family, double a, double b,
                         double plateau_lo = 0, double plateau_hi = 0,
                         double scale = 1.0);

}  // namespace rsw
