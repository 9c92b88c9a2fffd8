#include "core/voronoi.hpp"
#include <limits>

#include <numeric>

namespace rsw {

double pseudo_eigenvalue(const EigenvalueTable& table, u64 d2) {
    if (d2 == 0 || table.level() % d2 != 0)
        throw std::invalid_argument("pseudo_eigenvalue: D2 must divide the level");
    if (std::gcd(d2, table.level() / d2) != 1)
        throw std::invalid_argument("pseudo_eigenvalue: need (D2, level/D2) = 1");
    if (d2 == 1) return 1.0;
    double lam = table.lambda(d2);
    if (lam == 0.0)
        throw std::domain_error("pseudo_eigenvalue: lambda(D2) = 0, eta undefined");
    // Gauss sum of the trivial character mod D2 is the Ramanujan sum at 1,
    // i.e. mu(D2)
    double eta = static_cast<double>(mobius(d2)) / (lam * std::sqrt(static_cast<double>(d2)));
    if (std::abs(std::abs(eta) - 1.0) > 1e-9)
        throw std::runtime_error(format("pseudo_eigenvalue: |eta| = %.12f != 1", std::abs(eta)));
    return eta;
}

VoronoiChecker::VoronoiChecker(std::shared_ptr<const EigenvalueTable> table, u64 c,
                               SmoothWindow window, QuadratureConfig qcfg,
                               double rel_tol)
    : table_(std::move(table)),
      c_(c),
      window_(std::move(window)),
      qcfg_(qcfg),
      rel_tol_(rel_tol),
      kernel_(table_->weight()) {
    if (c_ == 0) throw std::invalid_argument("voronoi: c must be positive");
    u64 level = table_->level();
    d1_ = std::gcd(c_, level);
    d2_ = level / d1_;
    if (std::gcd(d1_, d2_) != 1)
        throw std::invalid_argument("voronoi: lemma requires (D1, D2) = 1");
}

double VoronoiChecker::dual_transform(u64 n) {
    if (transforms_.size() <= n) {
        size_t old = transforms_.size();
        transforms_.resize(n + 1, 0.0);
        quad_errors_.resize(n + 1, 0.0);
        double denom = static_cast<double>(c_) * static_cast<double>(c_) *
                       static_cast<double>(d2_);
        // the tail certification reads |T| down to ~1e-14, so the transform
        // tolerance is tightened beyond the caller's config
        QuadratureConfig tight = qcfg_;
        tight.abs_tol = std::min(tight.abs_tol, 3e-16);
        tight.rel_tol = std::min(tight.rel_tol, 1e-12);
        for (size_t m = std::max<size_t>(old, 1); m <= n; ++m) {
            double xi = static_cast<double>(m) / denom;
            auto t = voronoi_kernel_transform(window_, kernel_, xi, tight);
            if (!t.converged)
                throw std::runtime_error(
                    format("voronoi: kernel transform did not converge at n=%zu "
                           "(error %.3e)",
                           m, t.error));
            transforms_[m] = t.value.real();
            quad_errors_[m] = t.error;
        }
    }
    return transforms_[n];
}

VoronoiReport VoronoiChecker::check(i64 a, DualTwist twist) {
    const EigenvalueTable& tab = *table_;
    i64 ci = static_cast<i64>(c_);
    if (std::gcd(static_cast<u64>(((a % ci) + ci) % ci), c_) != 1)
        throw std::invalid_argument("voronoi: need (a, c) = 1");

    VoronoiReport rep;
    rep.form = tab.spec().label;
    rep.a = a;
    rep.c = c_;
    rep.d2 = d2_;
    rep.window_lo = window_.support_lo();
    rep.window_hi = window_.support_hi();
    rep.twist = twist;

    double x0 = window_.support_lo();
    double x1 = window_.support_hi();
    u64 lhs_hi = static_cast<u64>(std::floor(x1));
    if (lhs_hi > tab.size())
        throw std::invalid_argument(
            format("voronoi: table covers N=%llu but the window needs %llu",
                   (unsigned long long)tab.size(), (unsigned long long)lhs_hi));

    // left side: finite sum over the window support
    {
        KahanCSum lhs;
        u64 ar = static_cast<u64>(((a % ci) + ci) % ci);
        for (u64 n = static_cast<u64>(std::max(1.0, std::ceil(x0))); n <= lhs_hi; ++n) {
            double w = window_(static_cast<double>(n));
            if (w == 0.0) continue;
            ++rep.lhs_terms;
            lhs.add(tab.lambda(n) * w *
                    unit_phase(static_cast<double>(mulmod_u64(ar, n % c_, c_)) /
                               static_cast<double>(c_)));
        }
        rep.lhs = lhs.value();
    }
    rep.error_budget = rel_tol_ * std::max(std::abs(rep.lhs), 1e-12);

    // right side: eta/(c sqrt(D2)) sum_n lambda(n) e(-+ n inv(aD2)/c) T(n)
    double eta = pseudo_eigenvalue(tab, d2_);
    double factor = eta / (static_cast<double>(c_) * std::sqrt(static_cast<double>(d2_)));
    u64 ad2 = mulmod_u64(static_cast<u64>(((a % ci) + ci) % ci), d2_ % c_ == 0 ? 0 : d2_ % c_, c_);
    if (c_ == 1) ad2 = 0;
    u64 inv = (c_ == 1) ? 0 : mod_inverse(ad2, c_);
    double twist_sign = (twist == DualTwist::minus_inverse) ? -1.0 : 1.0;

    double scale_k = std::max(1.0, window_.scale());
    u64 n_cut = std::max<u64>(
        64, static_cast<u64>(std::ceil(16.0 * scale_k * scale_k *
                                       static_cast<double>(c_) * static_cast<double>(c_) *
                                       static_cast<double>(d2_) / x0)));

    // The dual tail is certified from a measured dyadic envelope of |T(n)|:
    // once a block pair shows per-octave decay at least 2^{-2.5} (the design
    // envelope is xi^{-4}, and for these bump windows the log-log slope only
    // steepens), anchor env/slope there and extrapolate.  With
    // |lambda(n)| <= d(n) <= 2 sqrt(n),
    //   tail(m) <= |factor| env_a 2 (m_a)^{-s} m^{s+3/2} / (-s - 3/2).
    KahanCSum rhs;
    KahanSum quad_err;
    u64 summed = 0;
    double anchor_env = 0, anchor_m = 0, anchor_slope = 0;
    bool anchored = false;
    for (int rounds = 0;; ++rounds) {
        if (n_cut > tab.size())
            throw std::invalid_argument(
                format("voronoi: dual tail needs table N >= %llu (have %llu)",
                       (unsigned long long)n_cut, (unsigned long long)tab.size()));
        for (u64 n = summed + 1; n <= n_cut; ++n) {
            double t = dual_transform(n);
            quad_err.add(quad_errors_[n]);
            if (t == 0.0) continue;
            double ph = twist_sign * static_cast<double>(mulmod_u64(n % c_, inv, c_)) /
                        static_cast<double>(c_);
            rhs.add(factor * tab.lambda(n) * t * unit_phase(ph));
        }
        summed = n_cut;

        auto block_env = [&](u64 lo, u64 hi) {
            double e = 0.0;
            for (u64 n = lo + 1; n <= hi; ++n)
                e = std::max(e, std::abs(transforms_[n]));
            return e;
        };
        double env_hi = block_env(n_cut / 2, n_cut);
        double env_lo = block_env(n_cut / 4, n_cut / 2);
        double qnoise = 0.0;
        for (u64 n = n_cut / 2 + 1; n <= n_cut; ++n)
            qnoise = std::max(qnoise, quad_errors_[n]);
        if (env_hi > 0 && env_lo > 0) {
            double slope = std::log2(env_hi / env_lo);
            if (slope <= -2.5) {
                anchored = true;
                anchor_m = static_cast<double>(n_cut);
                anchor_slope = std::max(slope, -12.0);
                // pad by the evaluation noise so the envelope covers the
                // measurement error of |T|
                anchor_env = env_hi + 4.0 * qnoise + 2e-15;
            }
        }
        if (anchored) {
            double m = static_cast<double>(n_cut);
            rep.envelope_c8 = anchor_env;
            rep.tail_bound = std::abs(factor) * anchor_env * 2.0 *
                             std::pow(anchor_m, -anchor_slope) *
                             std::pow(m, anchor_slope + 1.5) /
                             (-anchor_slope - 1.5);
        } else {
            rep.tail_bound = std::numeric_limits<double>::infinity();
        }
        if (std::getenv("RSW_VORONOI_DEBUG"))
            std::fprintf(stderr,
                         "  round=%d n_cut=%llu env_hi=%.3e env_lo=%.3e "
                         "anchored=%d a_slope=%.2f tail=%.3e budget=%.3e\n",
                         rounds, (unsigned long long)n_cut, env_hi, env_lo,
                         (int)anchored, anchor_slope, rep.tail_bound,
                         rep.error_budget);
        if (rep.tail_bound <= 0.01 * rep.error_budget || rounds > 16) break;
        n_cut *= 2;
    }
    rep.rhs_terms = summed;
    rep.rhs = rhs.value();
    rep.quad_error = quad_err.value();

    rep.abs_error = std::abs(rep.lhs - rep.rhs);
    rep.rel_error = rep.abs_error / std::max(std::abs(rep.lhs), 1e-30);
    rep.pass = rep.rel_error <= rel_tol_ && rep.tail_bound <= 0.01 * rep.error_budget;
    return rep;
}

VoronoiReport voronoi_check(std::shared_ptr<const EigenvalueTable> table, i64 a,
                            u64 c, const SmoothWindow& window,
                            const QuadratureConfig& qcfg, double rel_tol,
                            DualTwist twist) {
    VoronoiChecker checker(std::move(table), c, window, qcfg, rel_tol);
    return checker.check(a, twist);
}

}  // namespace rsw
