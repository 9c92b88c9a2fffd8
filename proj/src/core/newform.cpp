#include "core/newform.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace rsw {

namespace {

constexpr u64 kCoeffCap = 1000000;

i64 imod(i64 v, u64 p) {
    i64 m = v % static_cast<i64>(p);
    return m < 0 ? m + static_cast<i64>(p) : m;
}

// Legendre symbol via Euler's criterion; 0 for v == 0 mod p.
int legendre(i64 v, u64 p) {
    u64 r = powmod_u64(static_cast<u64>(imod(v, p)), (p - 1) / 2, p);
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

Bigint bigint_from_i128(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v)
                              : static_cast<unsigned __int128>(v);
    Bigint hi(static_cast<unsigned long>(u >> 64));
    Bigint out = (hi << 64) + Bigint(static_cast<unsigned long>(u & ~0ull));
    return neg ? Bigint(-out) : out;
}

struct TableInvariantError : std::runtime_error {
    u64 n;
    TableInvariantError(u64 n_, const std::string& msg)
        : std::runtime_error(msg), n(n_) {}
};

}  // namespace

void NewformSpec::validate() const {
    if (level == 0) throw std::invalid_argument("NewformSpec: level must be positive");
    if (weight < 2 || weight % 2 != 0)
        throw std::invalid_argument("NewformSpec: weight must be even and >= 2");
    if (source == CoeffSource::eta_product) {
        if (eta.empty()) throw std::invalid_argument("NewformSpec: empty eta product");
        i64 half_weight_sum = 0;
        i64 scaled_sum = 0;
        for (auto& [m, e] : eta) {
            if (e <= 0)
                throw std::invalid_argument("NewformSpec: eta exponents must be positive");
            if (m == 0 || level % m != 0)
                throw std::invalid_argument("NewformSpec: eta scales must divide the level");
            half_weight_sum += e;
            scaled_sum += static_cast<i64>(m) * e;
        }
        if (half_weight_sum != 2 * weight)
            throw std::invalid_argument("NewformSpec: weight != (sum of exponents)/2");
        if (scaled_sum != 24)
            throw std::invalid_argument(
                "NewformSpec: sum m_i e_i must be 24 (leading coefficient a(1)=1)");
    } else {
        if (weight != 2)
            throw std::invalid_argument("NewformSpec: elliptic source implies weight 2");
    }
}

std::vector<Bigint> eta_product_coeffs(const NewformSpec& spec, u64 n_max) {
    spec.validate();
    if (spec.source != CoeffSource::eta_product)
        throw std::invalid_argument("eta_product_coeffs: spec has no eta source");
    if (n_max == 0) throw std::invalid_argument("eta_product_coeffs: N must be positive");
    if (n_max > kCoeffCap)
        throw std::invalid_argument(format("eta_product_coeffs: N=%llu exceeds cap %llu",
                                           (unsigned long long)n_max,
                                           (unsigned long long)kCoeffCap));

    // coefficients of P(q) = prod_i prod_{n>=1} (1-q^{m_i n})^{e_i}; the form
    // itself is q * P(q), so a(n) = P[n-1]
    const u64 len = n_max;  // indices 0 .. len-1
    std::vector<i128> c(len, 0);
    c[0] = 1;

    for (auto& [m, e] : spec.eta) {
        // pentagonal expansion of prod (1-x^n) at x = q^m
        std::vector<std::pair<u64, int>> terms;  // (exponent, sign), exponent > 0
        for (u64 k = 1;; ++k) {
            u64 g1 = m * (k * (3 * k - 1) / 2);
            u64 g2 = m * (k * (3 * k + 1) / 2);
            int sign = (k % 2 == 1) ? -1 : 1;
            if (g1 >= len && g2 >= len) break;
            if (g1 < len) terms.emplace_back(g1, sign);
            if (g2 < len) terms.emplace_back(g2, sign);
        }
        for (int rep = 0; rep < e; ++rep) {
            for (i64 idx = static_cast<i64>(len) - 1; idx >= 0; --idx) {
                i128 acc = c[idx];
                for (auto& [g, sign] : terms) {
                    if (static_cast<i64>(g) > idx) break;
                    i128 t = c[idx - static_cast<i64>(g)];
                    acc = checked_add(acc, sign > 0 ? t : -t);
                }
                c[idx] = acc;
            }
        }
    }

    std::vector<Bigint> a(n_max + 1);
    a[0] = 0;
    for (u64 n = 1; n <= n_max; ++n) a[n] = bigint_from_i128(c[n - 1]);
    return {a.begin() + 1, a.end()};
}

i64 ellcurve_ap(const std::array<i64, 5>& curve, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("ellcurve_ap: p must be prime");
    const i64 a1 = curve[0], a2 = curve[1], a3 = curve[2], a4 = curve[3], a6 = curve[4];

    Bigint A1 = a1, A2 = a2, A3 = a3, A4 = a4, A6 = a6;
    Bigint b2 = A1 * A1 + 4 * A2;
    Bigint b4 = 2 * A4 + A1 * A3;
    Bigint b6 = A3 * A3 + 4 * A6;
    Bigint b8 = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
    Bigint disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;

    bool good = mpz_divisible_ui_p(disc.get_mpz_t(), static_cast<unsigned long>(p)) == 0;

    auto curve_eq = [&](i64 x, i64 y) {  // F(x,y) mod p
        i64 lhs = imod(y * y + a1 * x * y + a3 * y, p);
        i64 rhs = imod(((x * x) % static_cast<i64>(p)) * x + a2 * x * x + a4 * x + a6, p);
        return imod(lhs - rhs, p);
    };

    if (good) {
        if (p == 2) {
            int count = 0;
            for (i64 x = 0; x < 2; ++x)
                for (i64 y = 0; y < 2; ++y)
                    if (curve_eq(x, y) == 0) ++count;
            return 2 - count;
        }
        // complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2b4 x + b6
        i64 c2 = imod(a1 * a1 + 4 * a2, p);
        i64 c1 = imod(4 * a4 + 2 * a1 * a3, p);
        i64 c0 = imod(a3 * a3 + 4 * a6, p);
        i64 total = 0;
        for (u64 x = 0; x < p; ++x) {
            u64 fx = (mulmod_u64(mulmod_u64(mulmod_u64(4, x, p), x, p), x, p) +
                      mulmod_u64(mulmod_u64(static_cast<u64>(c2), x, p), x, p) +
                      mulmod_u64(static_cast<u64>(c1), x, p) + static_cast<u64>(c0)) % p;
            total += legendre(static_cast<i64>(fx), p);
        }
        return -total;
    }

    // singular reduction: locate the node/cusp
    i64 x0 = -1, y0 = -1;
    if (p == 2) {
        for (i64 x = 0; x < 2 && x0 < 0; ++x)
            for (i64 y = 0; y < 2; ++y) {
                bool on = curve_eq(x, y) == 0;
                bool fx = imod(a1 * y + x * x + a4, 2) == 0;  // dF/dx mod 2
                bool fy = imod(a1 * x + a3, 2) == 0;          // dF/dy mod 2
                if (on && fx && fy) {
                    x0 = x;
                    y0 = y;
                    break;
                }
            }
    } else {
        u64 inv2 = mod_inverse(2, p);
        for (i64 x = 0; x < static_cast<i64>(p); ++x) {
            i64 y = static_cast<i64>(
                mulmod_u64(static_cast<u64>(imod(-(a1 * x + a3), p)), inv2, p));
            if (curve_eq(x, y) != 0) continue;
            i64 fx = imod(a1 * y - 3 * x * x - 2 * a2 * x - a4, p);
            if (fx == 0) {
                x0 = x;
                y0 = y;
                break;
            }
        }
    }
    if (x0 < 0)
        throw std::runtime_error(format("ellcurve_ap: no rational singular point at p=%llu",
                                        (unsigned long long)p));
    (void)y0;

    // tangent cone v^2 + a1 u v - (3 x0 + a2) u^2; slopes solve
    // t^2 + a1 t - (3 x0 + a2) = 0
    if (p == 2) {
        if (imod(a1, 2) == 0)
            throw std::invalid_argument("ellcurve_ap: additive reduction rejected");
        return imod(x0 + a2, 2) == 0 ? 1 : -1;
    }
    i64 disc_t = imod(a1 * a1 + 4 * (3 * x0 + a2), p);
    int chi = legendre(disc_t, p);
    if (chi == 0)
        throw std::invalid_argument("ellcurve_ap: additive reduction rejected");
    return chi;
}

EigenvalueTable::EigenvalueTable(NewformSpec spec, u64 n_max, std::vector<Bigint> coeffs)
    : spec_(std::move(spec)), n_max_(n_max) {
    if (coeffs.size() != n_max)
        throw std::invalid_argument("EigenvalueTable: coefficient count mismatch");
    a_.resize(n_max + 1);
    a_[0] = 0;
    std::move(coeffs.begin(), coeffs.end(), a_.begin() + 1);
    lambda_.resize(n_max + 1, 0.0);
    double half = (spec_.weight - 1) * 0.5;
    for (u64 n = 1; n <= n_max; ++n)
        lambda_[n] = a_[n].get_d() / std::pow(static_cast<double>(n), half);
}

const Bigint& EigenvalueTable::coeff(u64 n) const {
    if (n < 1 || n > n_max_)
        throw std::out_of_range(format("coeff(%llu): table covers 1..%llu",
                                       (unsigned long long)n, (unsigned long long)n_max_));
    return a_[n];
}

double EigenvalueTable::lambda(u64 n) const {
    if (n < 1 || n > n_max_)
        throw std::out_of_range(format("lambda(%llu): table covers 1..%llu",
                                       (unsigned long long)n, (unsigned long long)n_max_));
    return lambda_[n];
}

void EigenvalueTable::check_invariants() const {
    if (a_[1] != 1) throw TableInvariantError(1, "a(1) != 1");

    // multiplicativity a(mn) = a(m) a(n) for coprime m, n <= sqrt(N)
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(n_max_)));
    while ((root + 1) * (root + 1) <= n_max_) ++root;
    for (u64 m = 2; m <= root; ++m)
        for (u64 n = m + 1; n <= root; ++n) {
            if (std::gcd(m, n) != 1) continue;
            if (a_[m * n] != a_[m] * a_[n])
                throw TableInvariantError(
                    m * n, format("a(%llu) != a(%llu)*a(%llu)", (unsigned long long)(m * n),
                                  (unsigned long long)m, (unsigned long long)n));
        }

    // Hecke recursion at prime powers, in the lambda normalization
    for (u64 p = 2; p * p <= n_max_; ++p) {
        if (!is_prime(p)) continue;
        bool divides_level = spec_.level % p == 0;
        for (u64 pj = p; pj * p <= n_max_; pj *= p) {
            double next = lambda_[pj * p];
            double expect = divides_level
                                ? lambda_[p] * lambda_[pj]
                                : lambda_[p] * lambda_[pj] - (pj == p ? 1.0 : lambda_[pj / p]);
            if (std::abs(next - expect) > 1e-10)
                throw TableInvariantError(
                    pj * p, format("Hecke relation fails at %llu^? (n=%llu): %.3e",
                                   (unsigned long long)p, (unsigned long long)(pj * p),
                                   std::abs(next - expect)));
        }
    }

    check_deligne(n_max_);
}

void EigenvalueTable::check_deligne(u64 cap) const {
    cap = std::min(cap, n_max_);
    // exact integer form: a(n)^2 <= d(n)^2 n^{k-1}
    std::vector<u64> dcount(cap + 1, 0);
    for (u64 d = 1; d <= cap; ++d)
        for (u64 n = d; n <= cap; n += d) ++dcount[n];
    for (u64 n = 1; n <= cap; ++n) {
        Bigint lhs = a_[n] * a_[n];
        Bigint npow;
        mpz_ui_pow_ui(npow.get_mpz_t(), n, static_cast<unsigned long>(spec_.weight - 1));
        Bigint rhs = Bigint(static_cast<unsigned long>(dcount[n] * dcount[n])) * npow;
        if (lhs > rhs)
            throw TableInvariantError(
                n, format("Deligne bound fails at n=%llu", (unsigned long long)n));
    }
}

EigenvalueTable build_table(const NewformSpec& spec, u64 n_max) {
    spec.validate();
    if (n_max == 0) throw std::invalid_argument("build_table: N must be positive");

    std::vector<Bigint> a;
    if (spec.source == CoeffSource::eta_product) {
        a = eta_product_coeffs(spec, n_max);
    } else {
        // multiplicative build from traces of Frobenius
        if (n_max > kCoeffCap)
            throw std::invalid_argument("build_table: N exceeds cap");
        std::vector<u64> spf(n_max + 1, 0);
        for (u64 i = 2; i <= n_max; ++i) {
            if (spf[i]) continue;
            for (u64 j = i; j <= n_max; j += i)
                if (!spf[j]) spf[j] = i;
        }
        std::vector<Bigint> coeff(n_max + 1);
        coeff[1] = 1;
        for (u64 p = 2; p <= n_max; ++p) {
            if (spf[p] != p) continue;
            i64 ap = ellcurve_ap(spec.curve, p);
            coeff[p] = ap;
            bool divides_level = spec.level % p == 0;
            for (u64 pj = p; ; pj *= p) {
                if (pj > n_max / p) break;
                u64 next = pj * p;
                if (divides_level)
                    coeff[next] = coeff[pj] * ap;
                else
                    coeff[next] = Bigint(ap) * coeff[pj] -
                                  Bigint(static_cast<unsigned long>(p)) * (pj == p ? Bigint(1) : coeff[pj / p]);
            }
        }
        for (u64 n = 2; n <= n_max; ++n) {
            u64 p = spf[n];
            u64 v = 1, m = n;
            while (m % p == 0) m /= p, v *= p;
            if (m != 1) coeff[n] = coeff[v] * coeff[m];  // prime powers already set
        }
        a.assign(coeff.begin() + 1, coeff.end());
    }

    EigenvalueTable table(spec, n_max, std::move(a));

    if (spec.crosscheck_curve) {
        u64 pcap = std::min<u64>(n_max, 500);
        for (u64 p = 2; p <= pcap; ++p) {
            if (!is_prime(p)) continue;
            i64 ap = ellcurve_ap(*spec.crosscheck_curve, p);
            if (table.coeff(p) != ap)
                throw std::runtime_error(format(
                    "build_table(%s): source disagreement at p=%llu (eta=%s, curve=%lld)",
                    spec.label.c_str(), (unsigned long long)p,
                    table.coeff(p).get_str().c_str(), (long long)ap));
        }
    }

    table.check_invariants();
    return table;
}

double rankin_average(const EigenvalueTable& table, u64 n_max) {
    if (n_max > table.size())
        throw std::invalid_argument("rankin_average: N exceeds table size");
    if (n_max == 0) throw std::invalid_argument("rankin_average: N must be positive");
    KahanSum s;
    for (u64 n = 1; n <= n_max; ++n) {
        double l = table.lambda(n);
        s.add(l * l);
    }
    return s.value() / static_cast<double>(n_max);
}

double AmplifierConfig::alpha_at(u64 r) const {
    auto it = std::lower_bound(alpha.begin(), alpha.end(), r,
                               [](const auto& pr, u64 v) { return pr.first < v; });
    if (it != alpha.end() && it->first == r) return it->second;
    return 0.0;
}

AmplifierConfig amplifier_coeffs(const EigenvalueTable& g_table, u64 L, u64 p, u64 q) {
    if (L < 4) throw std::invalid_argument("amplifier_coeffs: L must be >= 4");
    if (g_table.size() < L * L)
        throw std::invalid_argument(
            format("amplifier_coeffs: table covers %llu < L^2 = %llu",
                   (unsigned long long)g_table.size(), (unsigned long long)(L * L)));
    AmplifierConfig cfg;
    cfg.L = L;
    cfg.p = p;
    cfg.q = q;
    for (u64 l = (L + 1) / 2; l <= L; ++l) {
        if (!is_prime(l)) continue;
        if (std::gcd(l, p * q) != 1) continue;
        cfg.prime_set.push_back(l);
    }
    if (cfg.prime_set.empty())
        throw std::invalid_argument(
            format("amplifier_coeffs: no admissible primes in [%llu,%llu]",
                   (unsigned long long)((L + 1) / 2), (unsigned long long)L));
    for (u64 l : cfg.prime_set) cfg.alpha.emplace_back(l, g_table.lambda(l));
    for (u64 l : cfg.prime_set) cfg.alpha.emplace_back(l * l, -1.0);
    std::sort(cfg.alpha.begin(), cfg.alpha.end());

    KahanSum ident;
    for (auto& [r, ar] : cfg.alpha) ident.add(ar * g_table.lambda(r));
    double target = static_cast<double>(cfg.prime_set.size());
    if (std::abs(ident.value() - target) > 1e-9)
        throw std::runtime_error(format("amplifier identity off by %.3e",
                                        std::abs(ident.value() - target)));
    return cfg;
}

void save_table(const EigenvalueTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_table: cannot open " + path);
    out << "# " << table.spec().label << "," << table.level() << ","
        << table.weight() << "," << table.size() << "\n";
    for (u64 n = 1; n <= table.size(); ++n)
        out << n << "," << table.coeff(n).get_str() << "\n";
    if (!out) throw std::runtime_error("save_table: write failure on " + path);
}

EigenvalueTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_table: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.size() < 2 || line[0] != '#')
        throw std::runtime_error("load_table: missing header (line 1)");
    std::string header = line.substr(1);
    // header fields: label,level,weight,N
    std::vector<std::string> fields;
    size_t start = 0;
    while (start <= header.size()) {
        size_t comma = header.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(header.substr(start));
            break;
        }
        fields.push_back(header.substr(start, comma - start));
        start = comma + 1;
    }
    if (fields.size() != 4) throw std::runtime_error("load_table: malformed header (line 1)");
    auto trim = [](std::string s) {
        size_t b = s.find_first_not_of(" \t");
        size_t e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    NewformSpec spec;
    spec.label = trim(fields[0]);
    try {
        spec.level = std::stoull(trim(fields[1]));
        spec.weight = std::stoi(trim(fields[2]));
    } catch (const std::exception&) {
        throw std::runtime_error("load_table: malformed header numbers (line 1)");
    }
    u64 n_max = 0;
    try {
        n_max = std::stoull(trim(fields[3]));
    } catch (const std::exception&) {
        throw std::runtime_error("load_table: malformed header N (line 1)");
    }
    if (n_max == 0 || n_max > kCoeffCap)
        throw std::runtime_error("load_table: header N out of range (line 1)");

    std::vector<Bigint> coeffs(n_max);
    for (u64 n = 1; n <= n_max; ++n) {
        u64 lineno = n + 1;
        if (!std::getline(in, line))
            throw std::runtime_error(format("load_table: truncated file (line %llu)",
                                            (unsigned long long)lineno));
        size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(format("load_table: missing comma (line %llu)",
                                            (unsigned long long)lineno));
        u64 idx = 0;
        try {
            idx = std::stoull(trim(line.substr(0, comma)));
        } catch (const std::exception&) {
            throw std::runtime_error(format("load_table: bad index (line %llu)",
                                            (unsigned long long)lineno));
        }
        if (idx != n)
            throw std::runtime_error(format("load_table: index %llu out of order (line %llu)",
                                            (unsigned long long)idx,
                                            (unsigned long long)lineno));
        std::string digits = trim(line.substr(comma + 1));
        if (digits.empty() ||
            mpz_set_str(coeffs[n - 1].get_mpz_t(), digits.c_str(), 10) != 0)
            throw std::runtime_error(format("load_table: bad coefficient (line %llu)",
                                            (unsigned long long)lineno));
    }

    EigenvalueTable table(spec, n_max, std::move(coeffs));
    try {
        table.check_invariants();
    } catch (const TableInvariantError& e) {
        throw std::runtime_error(format("load_table: %s (line %llu)", e.what(),
                                        (unsigned long long)(e.n + 1)));
    }
    return table;
}

}  // namespace rsw
