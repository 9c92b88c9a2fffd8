#pragma once

// Exact integer arithmetic and complete exponential sums: factorization,
// multiplicative functions, Ramanujan sums r_q(n), Kloosterman sums S(m,n,c),
// and Weil-bound margins.

#include <gmpxx.h>

#include <utility>

#include "core/util.hpp"

namespace rsw {

using Bigint = mpz_class;

struct Factorization {
    u64 n = 1;
    std::vector<std::pair<u64, int>> factors;  // (prime, exponent), primes ascending
};

// Deterministic: trial division by primes up to 1e6, then Brent-Pollard rho
// with a fixed parameter sequence.  Accepts 1 <= n <= 2^63.
Factorization factorize(u64 n);

bool is_prime(u64 n);

int mobius(u64 n);
u64 euler_phi(u64 n);
u64 divisor_count(u64 n);
Bigint sigma_k(u64 n, unsigned k);
std::vector<u64> divisors(u64 n);  // ascending

enum class MultFn { mobius, euler_phi, divisor_count, sigma_k };
Bigint mult_fn(MultFn kind, u64 n, unsigned k = 0);

enum class RamanujanMode { formula, brute };

// r_q(n) = sum over reduced residues a mod q of e(an/q) = sum_{d|(q,n)} mu(q/d) d.
// Brute mode accumulates unit-circle phases and asserts the result is integral;
// a rounding residual above 1e-6 throws (it would mean the accumulation is broken).
i64 ramanujan_sum(u64 q, i64 n, RamanujanMode mode = RamanujanMode::formula);

struct KloostermanValue {
    double value = 0.0;          // the (real) sum
    double imag_residual = 0.0;  // leftover imaginary part, should be ~0
};

// S(m,n,c) = sum over a mod c, (a,c)=1 of e((am + a^{-1} n)/c).  Real by the
// a <-> -a pairing; the imaginary residual is returned as a diagnostic.
KloostermanValue kloosterman_sum(i64 m, i64 n, u64 c);

// |S(m,n,c)| / (d(c) (m,n,c)^{1/2} c^{1/2}) for squarefree c; <= 1 by the
// Weil bound in its sharp squarefree normalization.
double weil_margin(i64 m, i64 n, u64 c);

}  // namespace rsw
