#pragma once

#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsw {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using i128 = __int128;
using cplx = std::complex<double>;

inline constexpr double kTau = 6.283185307179586476925286766559;

// Neumaier-compensated accumulator.  All long reductions in the workbench go
// through this so that reordering noise stays at the few-ulp level.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanCSum {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    KahanSum re_, im_;
};

// e(x) = exp(2*pi*i*x)
inline cplx unit_phase(double x) {
    return {std::cos(kTau * x), std::sin(kTau * x)};
}

i128 checked_add(i128 a, i128 b);
i128 checked_sub(i128 a, i128 b);
i128 checked_mul(i128 a, i128 b);

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 base, u64 exp, u64 m);
u64 mod_inverse(u64 a, u64 m);  // throws std::domain_error if gcd(a,m) != 1

std::string format(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Partition [lo, hi) into fixed-size chunks and evaluate `term` over each,
// reducing chunk sums in ascending chunk order.  The result is independent of
// the thread count for a given chunk size, which the experiment reports pin.
double chunked_sum(i64 lo, i64 hi, i64 chunk, int threads,
                   const std::function<double(i64)>& term);

}  // namespace rsw
