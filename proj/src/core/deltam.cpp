#include "core/deltam.hpp"

#include "core/expsum.hpp"
#include "core/quadrature.hpp"

namespace rsw {

DeltaConfig make_delta_config(u64 Q) {
    if (Q < 2) throw std::invalid_argument("make_delta_config: Q must be >= 2");
    DeltaConfig cfg;
    cfg.Q = Q;
    SmoothWindow raw = SmoothWindow::bump(0.5, 1.0);
    auto mass = integrate_real([&](double x) { return raw(x); }, 0.5, 1.0,
                               QuadratureConfig(1e-14, 1e-14));
    if (!mass.converged || mass.value.real() <= 0)
        throw std::runtime_error("make_delta_config: omega mass quadrature failed");
    cfg.omega = raw.scaled_by(1.0 / mass.value.real());
    auto unit = integrate_real([&](double x) { return cfg.omega(x); }, 0.5, 1.0,
                               QuadratureConfig(1e-14, 1e-14));
    if (std::abs(unit.value.real() - 1.0) > 1e-10)
        throw std::runtime_error("make_delta_config: omega does not have unit mass");
    return cfg;
}

double h_eval(double x, double y, const DeltaConfig& cfg) {
    if (!(x > 0)) throw std::invalid_argument("h_eval: x must be > 0");
    const SmoothWindow& w = cfg.omega;
    KahanSum sum;
    // omega(x j) != 0 needs x j in (1/2, 1)
    {
        u64 jlo = static_cast<u64>(std::floor(0.5 / x)) + 1;
        u64 jhi = static_cast<u64>(std::ceil(1.0 / x));
        for (u64 j = std::max<u64>(jlo, 1); j <= jhi; ++j) {
            double v = w(x * static_cast<double>(j));
            if (v != 0.0) sum.add(v / static_cast<double>(j));
        }
    }
    // omega(|y|/(x j)) != 0 needs x j in (|y|, 2|y|)
    double ay = std::abs(y);
    if (ay > 0) {
        u64 jlo = static_cast<u64>(std::floor(ay / x)) + 1;
        u64 jhi = static_cast<u64>(std::ceil(2.0 * ay / x));
        for (u64 j = std::max<u64>(jlo, 1); j <= jhi; ++j) {
            double v = w(ay / (x * static_cast<double>(j)));
            if (v != 0.0) sum.add(-v / static_cast<double>(j));
        }
    }
    return sum.value();
}

double calibrate_c0(u64 Q, const SmoothWindow& omega) {
    if (Q < 2) throw std::invalid_argument("calibrate_c0: Q must be >= 2");
    DeltaConfig probe;
    probe.Q = Q;
    probe.omega = omega;
    KahanSum denom;
    for (u64 q = 1; q <= Q; ++q) {
        double h = h_eval(static_cast<double>(q) / static_cast<double>(Q), 0.0, probe);
        denom.add(static_cast<double>(euler_phi(q)) / static_cast<double>(q) * h);
    }
    double d = denom.value();
    if (std::abs(d) < 1e-12)
        throw std::runtime_error("calibrate_c0: vanishing denominator (omega misconfigured)");
    return static_cast<double>(Q) / d;
}

double delta_eval(i64 n, const DeltaConfig& cfg) {
    if (!cfg.calibrated()) throw std::invalid_argument("delta_eval: config not calibrated");
    double q2 = static_cast<double>(cfg.Q) * static_cast<double>(cfg.Q);
    if (std::abs(static_cast<double>(n)) > q2 / 3.0)
        throw std::invalid_argument(
            format("delta_eval: |n|=%lld outside designed range Q^2/3=%g",
                   (long long)std::llabs(n), q2 / 3.0));
    double y = static_cast<double>(n) / q2;
    KahanSum sum;
    for (u64 q = 1; q <= cfg.Q; ++q) {
        double h = h_eval(static_cast<double>(q) / static_cast<double>(cfg.Q), y, cfg);
        if (h == 0.0) continue;
        i64 rq = ramanujan_sum(q, n);
        sum.add(static_cast<double>(rq) / static_cast<double>(q) * h);
    }
    return cfg.c0 / static_cast<double>(cfg.Q) * sum.value();
}

}  // namespace rsw
