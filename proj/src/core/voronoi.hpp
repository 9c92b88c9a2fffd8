#pragma once

// Two-sided numerical verification of Voronoi summation for holomorphic
// newforms with trivial nebentypus:
//   sum_n lambda(n) e(an/c) F(n)
//     = eta_g(D2)/(c sqrt(D2)) sum_n lambda(n) e(-n inv(a D2)/c)
//       int F(x) Jplus((4pi/c) sqrt(nx/D2)) dx,
// D1 = (c, level), D2 = level/D1, Jminus = 0.  Both sides are computed by
// independent code paths; the dual sum is truncated with an explicit,
// reported tail bound.

#include <memory>

#include "core/newform.hpp"
#include "core/transforms.hpp"

namespace rsw {

// Atkin-Lehner pseudo-eigenvalue for trivial nebentypus:
// mu(D2) / (lambda_g(D2) sqrt(D2)); unit modulus is enforced to 1e-9.
double pseudo_eigenvalue(const EigenvalueTable& table, u64 d2);

// Sign convention of the dual additive twist; minus_inverse is the one the
// identity holds with (pinned numerically, see the convention test).
enum class DualTwist { minus_inverse, plus_inverse };

struct VoronoiReport {
    cplx lhs{0, 0}, rhs{0, 0};
    double abs_error = 0, rel_error = 0;
    u64 lhs_terms = 0, rhs_terms = 0;
    double tail_bound = 0;      // analytic bound on the truncated dual tail
    double error_budget = 0;    // rel_tol * max(|lhs|, 1e-12)
    double quad_error = 0;      // accumulated quadrature error estimates
    double envelope_c8 = 0;     // fitted xi^{-4} envelope constant
    std::string form;
    i64 a = 0;
    u64 c = 1, d2 = 1;
    double window_lo = 0, window_hi = 0;
    DualTwist twist = DualTwist::minus_inverse;
    bool pass = false;
};

// Shares dual-side kernel transforms across residues a for a fixed modulus.
class VoronoiChecker {
public:
    VoronoiChecker(std::shared_ptr<const EigenvalueTable> table, u64 c,
                   SmoothWindow window, QuadratureConfig qcfg, double rel_tol);

    VoronoiReport check(i64 a, DualTwist twist = DualTwist::minus_inverse);

private:
    double dual_transform(u64 n);  // int F(x) Jplus((4pi/c) sqrt(nx/D2)) dx

    std::shared_ptr<const EigenvalueTable> table_;
    u64 c_;
    u64 d1_ = 1, d2_ = 1;
    SmoothWindow window_;
    QuadratureConfig qcfg_;
    double rel_tol_;
    BesselKernel kernel_;
    std::vector<double> transforms_;  // [n] -> T(n), grown on demand
    std::vector<double> quad_errors_;
};

VoronoiReport voronoi_check(std::shared_ptr<const EigenvalueTable> table, i64 a,
                            u64 c, const SmoothWindow& window,
                            const QuadratureConfig& qcfg, double rel_tol = 1e-6,
                            DualTwist twist = DualTwist::minus_inverse);

}  // namespace rsw
