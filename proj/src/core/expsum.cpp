#include "core/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rsw {

namespace {

constexpr u64 kTrialBound = 1000000;  // trial division cutoff
constexpr u64 kMaxN = (u64(1) << 63);

const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        std::vector<bool> comp(kTrialBound + 1, false);
        std::vector<u64> p;
        for (u64 i = 2; i <= kTrialBound; ++i) {
            if (comp[i]) continue;
            p.push_back(i);
            for (u64 j = i * i; j <= kTrialBound; j += i) comp[j] = true;
        }
        return p;
    }();
    return primes;
}

bool miller_rabin(u64 n, u64 a) {
    if (a % n == 0) return true;
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) d >>= 1, ++r;
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Brent's cycle-finding variant; deterministic for a fixed offset c.
u64 pollard_brent(u64 n, u64 c) {
    auto step = [&](u64 x) { return (mulmod_u64(x, x, n) + c) % n; };
    u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
    const u64 m = 128;
    u64 r = 1;
    while (d == 1) {
        x = y;
        for (u64 i = 0; i < r; ++i) y = step(y);
        for (u64 k = 0; k < r && d == 1; k += m) {
            ys = y;
            for (u64 i = 0; i < std::min(m, r - k); ++i) {
                y = step(y);
                q = mulmod_u64(q, x > y ? x - y : y - x, n);
            }
            d = std::gcd(q, n);
        }
        r *= 2;
    }
    if (d == n) {
        do {
            ys = step(ys);
            d = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (d == 1);
    }
    return d;
}

void factor_large(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = n;
    for (u64 c = 1; d == n; ++c) d = pollard_brent(n, c);
    factor_large(d, out);
    factor_large(n / d, out);
}

}  // namespace

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        if (!miller_rabin(n, a)) return false;
    return true;
}

Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    if (n > kMaxN) throw std::invalid_argument("factorize: n exceeds 2^63");
    Factorization f;
    f.n = n;
    u64 m = n;
    for (u64 p : small_primes()) {
        if (p * p > m) break;
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) m /= p, ++e;
        f.factors.emplace_back(p, e);
    }
    if (m > 1) {
        std::vector<u64> large;
        factor_large(m, large);
        std::sort(large.begin(), large.end());
        for (size_t i = 0; i < large.size();) {
            size_t j = i;
            while (j < large.size() && large[j] == large[i]) ++j;
            f.factors.emplace_back(large[i], static_cast<int>(j - i));
            i = j;
        }
    }
    std::sort(f.factors.begin(), f.factors.end());
    return f;
}

int mobius(u64 n) {
    Factorization f = factorize(n);
    for (auto& [p, e] : f.factors)
        if (e > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

u64 euler_phi(u64 n) {
    Factorization f = factorize(n);
    u64 r = n;
    for (auto& [p, e] : f.factors) r -= r / p;
    return r;
}

u64 divisor_count(u64 n) {
    Factorization f = factorize(n);
    u64 d = 1;
    for (auto& [p, e] : f.factors) d *= static_cast<u64>(e + 1);
    return d;
}

Bigint sigma_k(u64 n, unsigned k) {
    Factorization f = factorize(n);
    Bigint total = 1;
    for (auto& [p, e] : f.factors) {
        Bigint pk, term = 1, pw = 1;
        mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
        for (int i = 0; i < e; ++i) {
            pw *= pk;
            term += pw;
        }
        total *= term;
    }
    return total;
}

std::vector<u64> divisors(u64 n) {
    Factorization f = factorize(n);
    std::vector<u64> d{1};
    for (auto& [p, e] : f.factors) {
        size_t base = d.size();
        u64 pw = 1;
        for (int i = 0; i < e; ++i) {
            pw *= p;
            for (size_t j = 0; j < base; ++j) d.push_back(d[j] * pw);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

Bigint mult_fn(MultFn kind, u64 n, unsigned k) {
    switch (kind) {
        case MultFn::mobius: return Bigint(mobius(n));
        case MultFn::euler_phi: return Bigint(static_cast<unsigned long>(euler_phi(n)));
        case MultFn::divisor_count: return Bigint(static_cast<unsigned long>(divisor_count(n)));
        case MultFn::sigma_k: return sigma_k(n, k);
    }
    throw std::invalid_argument("mult_fn: unknown kind");
}

i64 ramanujan_sum(u64 q, i64 n, RamanujanMode mode) {
    if (q == 0) throw std::invalid_argument("ramanujan_sum: q must be positive");
    if (mode == RamanujanMode::formula) {
        u64 nn = static_cast<u64>(std::llabs(n)) % q;  // r_q(n) = r_q(n mod q), r_q(-n) = r_q(n)
        u64 g = (nn == 0) ? q : std::gcd(nn, q);
        i64 total = 0;
        for (u64 d : divisors(g)) total += mobius(q / d) * static_cast<i64>(d);
        return total;
    }
    // brute: sum e(an/q) over reduced residues
    KahanSum re, im;
    i64 nr = n % static_cast<i64>(q);
    if (nr < 0) nr += static_cast<i64>(q);
    for (u64 a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        u64 arg = mulmod_u64(a, static_cast<u64>(nr), q);
        cplx z = unit_phase(static_cast<double>(arg) / static_cast<double>(q));
        re.add(z.real());
        im.add(z.imag());
        if (q == 1) break;
    }
    double rv = re.value();
    double rounded = std::nearbyint(rv);
    double resid = std::max(std::abs(rv - rounded), std::abs(im.value()));
    if (resid > 1e-6)
        throw std::runtime_error(format(
            "ramanujan_sum brute residual %.3e for q=%llu n=%lld", resid,
            (unsigned long long)q, (long long)n));
    return static_cast<i64>(rounded);
}

KloostermanValue kloosterman_sum(i64 m, i64 n, u64 c) {
    if (c == 0) throw std::invalid_argument("kloosterman_sum: c must be positive");
    u64 mr = static_cast<u64>(((m % static_cast<i64>(c)) + static_cast<i64>(c)) % static_cast<i64>(c));
    u64 nr = static_cast<u64>(((n % static_cast<i64>(c)) + static_cast<i64>(c)) % static_cast<i64>(c));
    if (c == 1) return {1.0, 0.0};
    KahanSum re, im;
    for (u64 a = 1; a < c; ++a) {
        if (std::gcd(a, c) != 1) continue;
        u64 ainv = mod_inverse(a, c);
        u64 arg = (mulmod_u64(a, mr, c) + mulmod_u64(ainv, nr, c)) % c;
        cplx z = unit_phase(static_cast<double>(arg) / static_cast<double>(c));
        re.add(z.real());
        im.add(z.imag());
    }
    return {re.value(), im.value()};
}

double weil_margin(i64 m, i64 n, u64 c) {
    if (c == 0) throw std::invalid_argument("weil_margin: c must be positive");
    Factorization f = factorize(c);
    for (auto& [p, e] : f.factors)
        if (e > 1)
            throw std::invalid_argument(
                format("weil_margin: c=%llu is not squarefree", (unsigned long long)c));
    u64 g = std::gcd(std::gcd(static_cast<u64>(std::llabs(m)), static_cast<u64>(std::llabs(n))), c);
    double s = std::abs(kloosterman_sum(m, n, c).value);
    double bound = static_cast<double>(divisor_count(c)) * std::sqrt(static_cast<double>(g)) *
                   std::sqrt(static_cast<double>(c));
    return s / bound;
}

}  // namespace rsw
