#pragma once

// The Duke-Friedlander-Iwaniec / Heath-Brown delta symbol: the h(x,y) kernel
// built from a unit-mass bump omega on [1/2,1], the c0 calibration making
// delta(0) = 1 exact, and the indicator reconstruction
//   delta(n) = (c0/Q) sum_q (1/q) sum_{gamma mod q}* e(gamma n / q)
//              h(q/Q, n/Q^2).
//
// Two h normalizations circulate for this construction, differing by a factor
// of x; this module uses the one with summand (1/j), which is the unique
// choice under which the display above reconstructs the indicator exactly,
// c0 = Q / sum_q (phi(q)/q) h(q/Q,0) sits at 1 + O(Q^{-A}), and
// int |h(x,y)| dy << x holds.

#include "core/window.hpp"

namespace rsw {

struct DeltaConfig {
    u64 Q = 0;
    SmoothWindow omega;   // supported in [1/2,1], unit integral
    double c0 = 0.0;      // 0 until calibrated

    bool calibrated() const { return c0 > 0.0; }
};

// Default omega (normalized bump on [1/2,1]) with the unit-integral invariant
// checked to 1e-10; c0 left uncalibrated.
DeltaConfig make_delta_config(u64 Q);

// h(x,y) = sum_{j>=1} (1/j) (omega(x j) - omega(|y|/(x j))); exact finite sum,
// the two j-windows are (1/(2x), 1/x) and (|y|/x, 2|y|/x).
double h_eval(double x, double y, const DeltaConfig& cfg);

// c0 = Q / sum_q (phi(q)/q) h(q/Q, 0); throws if the denominator vanishes.
double calibrate_c0(u64 Q, const SmoothWindow& omega);

// Requires |n| <= Q^2/3 and a calibrated config.
double delta_eval(i64 n, const DeltaConfig& cfg);

}  // namespace rsw
