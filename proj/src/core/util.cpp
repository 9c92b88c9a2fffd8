#include "core/util.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <thread>

namespace rsw {

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("int128 overflow in add");
    return r;
}

i128 checked_sub(i128 a, i128 b) {
    i128 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("int128 overflow in sub");
    return r;
}

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("int128 overflow in mul");
    return r;
}

u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod_u64(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 mod_inverse(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw std::domain_error(format("no inverse of %llu mod %llu",
                                               (unsigned long long)a,
                                               (unsigned long long)m));
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

std::string format(const char* fmt, ...) {
    va_list args;
    va_start(args, fmt);
    va_list copy;
    va_copy(copy, args);
    int n = std::vsnprintf(nullptr, 0, fmt, copy);
    va_end(copy);
    std::string out(n > 0 ? static_cast<size_t>(n) : 0, '\0');
    std::vsnprintf(out.data(), out.size() + 1, fmt, args);
    va_end(args);
    return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope needs >= 2 matched points");
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissas");
    return (n * sxy - sx * sy) / denom;
}

double chunked_sum(i64 lo, i64 hi, i64 chunk, int threads,
                   const std::function<double(i64)>& term) {
    if (hi <= lo) return 0.0;
    if (chunk < 1) chunk = 1;
    i64 nchunks = (hi - lo + chunk - 1) / chunk;
    std::vector<double> partial(static_cast<size_t>(nchunks), 0.0);

    auto run_chunk = [&](i64 ci) {
        i64 b = lo + ci * chunk;
        i64 e = std::min(hi, b + chunk);
        KahanSum s;
        for (i64 m = b; m < e; ++m) s.add(term(m));
        partial[static_cast<size_t>(ci)] = s.value();
    };

    if (threads <= 1 || nchunks == 1) {
        for (i64 ci = 0; ci < nchunks; ++ci) run_chunk(ci);
    } else {
        std::vector<std::thread> pool;
        std::atomic<i64> next{0};
        int nt = std::min<i64>(threads, nchunks);
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (i64 ci; (ci = next.fetch_add(1)) < nchunks;) run_chunk(ci);
            });
        for (auto& th : pool) th.join();
    }

    KahanSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

}  // namespace rsw
