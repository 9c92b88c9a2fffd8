#pragma once

// Exact Fourier coefficients and normalized Hecke eigenvalues
// lambda(n) = a(n)/n^{(k-1)/2} for concrete holomorphic newforms with trivial
// nebentypus.  Two independent coefficient sources: eta-product power series
// (exact integer arithmetic) and elliptic-curve point counts for weight 2.

#include <array>
#include <memory>
#include <optional>

#include "core/expsum.hpp"

namespace rsw {

enum class CoeffSource { eta_product, elliptic_curve };

struct NewformSpec {
    std::string label;
    u64 level = 1;
    int weight = 12;
    CoeffSource source = CoeffSource::eta_product;
    std::vector<std::pair<u64, int>> eta;  // (scale m_i, exponent e_i), e_i > 0
    std::array<i64, 5> curve{};            // a1,a2,a3,a4,a6 (elliptic source)
    std::optional<std::array<i64, 5>> crosscheck_curve;  // dual oracle, if any

    void validate() const;  // weight/level arithmetic for the declared source
};

// a(1..N) by pentagonal-number expansion of each eta factor and truncated
// integer power-series multiplication; overflow-checked int128 internally,
// arbitrary-size integers out.  N above the cap (1e6) is rejected.
std::vector<Bigint> eta_product_coeffs(const NewformSpec& spec, u64 n_max);

// Trace of Frobenius.  Good reduction: exhaustive point count over F_p.
// Multiplicative reduction (node): +1 if the tangent slopes at the node lie
// in F_p, -1 otherwise.  Additive reduction is rejected.
i64 ellcurve_ap(const std::array<i64, 5>& curve, u64 p);

class EigenvalueTable {
public:
    EigenvalueTable(NewformSpec spec, u64 n_max, std::vector<Bigint> coeffs);

    const NewformSpec& spec() const { return spec_; }
    u64 size() const { return n_max_; }
    u64 level() const { return spec_.level; }
    int weight() const { return spec_.weight; }

    const Bigint& coeff(u64 n) const;  // a(n), 1 <= n <= N
    double lambda(u64 n) const;        // a(n)/n^{(k-1)/2}

    // Hecke consistency at prime powers plus a(1) = 1; throws on failure.
    void check_invariants() const;
    // Exact-integer Deligne bound a(n)^2 <= d(n)^2 n^{k-1} for n <= cap.
    void check_deligne(u64 cap) const;

private:
    NewformSpec spec_;
    u64 n_max_;
    std::vector<Bigint> a_;        // 1-based, a_[0] unused
    std::vector<double> lambda_;
};

// Builds from the declared source, validates Hecke relations, and (when a
// crosscheck curve is present) compares a(p) against point counts for
// p <= min(N, 500); disagreement aborts with a diagnostic.
EigenvalueTable build_table(const NewformSpec& spec, u64 n_max);

// (1/N) sum_{n<=N} lambda(n)^2
double rankin_average(const EigenvalueTable& table, u64 n_max);

struct AmplifierConfig {
    u64 L = 0;
    u64 p = 1, q = 1;
    std::vector<u64> prime_set;               // script-L: primes in [L/2, L], coprime to pq
    std::vector<std::pair<u64, double>> alpha;  // (r, alpha_r), r ascending
    double alpha_at(u64 r) const;
};

// alpha_l = lambda_g(l), alpha_{l^2} = -1 for l in script-L, 0 otherwise;
// checks sum_r alpha_r lambda_g(r) = |script-L| to 1e-9.
AmplifierConfig amplifier_coeffs(const EigenvalueTable& g_table, u64 L, u64 p, u64 q);

// Text cache: "# label,level,weight,N" then "n,a_n" lines.
void save_table(const EigenvalueTable& table, const std::string& path);
EigenvalueTable load_table(const std::string& path);  // re-validates invariants

}  // namespace rsw
