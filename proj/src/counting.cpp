#include "manin/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace manin {

FactorTable::FactorTable(u64 limit_) : limit(limit_) {
    if (limit < 2) limit = 2;
    if (limit > (1u << 28))
        throw std::invalid_argument("factor table limit above 2^28; use a smaller sieve");
    spf.assign(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            for (u64 j = i; j <= limit; j += i) {
                if (spf[j] == 0) spf[j] = (std::uint32_t)i;
            }
        }
    }
}

std::vector<std::pair<u64, unsigned>> FactorTable::factor(u64 n) const {
    std::vector<std::pair<u64, unsigned>> out;
    if (n == 0) throw std::invalid_argument("cannot factor 0");
    while (n > 1 && n <= limit) {
        u64 p = spf[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) {
        // trial-division fallback for n above the sieve
        for (u64 p = 2; p * p <= n; p == 2 ? p = 3 : p += 2) {
            if (n % p) continue;
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
        if (n > 1) out.emplace_back(n, 1);
        std::sort(out.begin(), out.end());
    }
    return out;
}

u64 r2(u64 n, const FactorTable& ft) {
    if (n == 0) throw std::invalid_argument("r2(0) is not defined here; handle the origin separately");
    u64 result = 4;
    for (auto [p, e] : ft.factor(n)) {
        if (p == 2) continue;
        if (p % 4 == 3) {
            if (e % 2 == 1) return 0;
        } else {
            result *= (e + 1);
        }
    }
    return result;
}

namespace {

struct PrimePower {
    u64 p;
    unsigned e;
};

// One Moebius-corrected r2 term for a divisor a of e^3, evaluated prime by
// prime.  For each prime q of e write m_q = 3 f_q - a_q; the inner sum
//   sum_{d | gcd(a,e), d^2 | m} mu(d) r2(m / d^2)
// factors over primes: a prime with a_q >= 1 and m_q >= 2 contributes
//   (both d-choices)   q = 2        -> 1 - 1 = 0          (r2 ignores 2-powers)
//                      q = 3 mod 4  -> [m_q even] - [m_q even] = 0
//                      q = 1 mod 4  -> (m_q + 1) - (m_q - 1) = 2
// and a prime without the d-choice contributes its plain r2 factor.
u64 corrected_r2_term(const std::vector<PrimePower>& fac, const std::vector<unsigned>& a_exp) {
    u64 term = 4;
    for (std::size_t i = 0; i < fac.size(); ++i) {
        const u64 q = fac[i].p;
        const unsigned m = 3 * fac[i].e - a_exp[i];
        const bool movable = a_exp[i] >= 1 && m >= 2;
        if (q == 2) {
            if (movable) return 0;
        } else if (q % 4 == 3) {
            if (movable || m % 2 == 1) return 0;
        } else {
            term *= movable ? 2 : (m + 1);
        }
    }
    return term;
}

// sum over divisors a of e^3 with lo <= a <= B of the corrected r2 terms
u64 divisor_sum_for_e(u64 B, u64 lo, const std::vector<PrimePower>& fac) {
    u64 total = 0;
    std::vector<unsigned> a_exp(fac.size(), 0);
    // depth-first over exponent vectors of divisors of e^3, pruned at B
    auto rec = [&](auto&& self, std::size_t i, u64 a) -> void {
        if (i == fac.size()) {
            if (a >= lo) total += corrected_r2_term(fac, a_exp);
            return;
        }
        u64 pw = 1;
        for (unsigned ex = 0; ex <= 3 * fac[i].e; ++ex) {
            if (ex > 0) {
                if (pw > B / fac[i].p) break;  // a * pw would exceed B
                pw *= fac[i].p;
                if (a > B / pw) break;
            }
            a_exp[i] = ex;
            self(self, i + 1, a * pw);
        }
        a_exp[i] = 0;
    };
    rec(rec, 0, 1);
    return total;
}

u64 fast_count_range(u64 B, u64 e_lo, u64 e_hi, const FactorTable& ft) {
    const u128 B2 = (u128)B * B;
    u64 total = 0;
    std::vector<PrimePower> fac;
    for (u64 e = e_lo; e <= e_hi; ++e) {
        fac.clear();
        for (auto [p, ex] : ft.factor(e)) fac.push_back(PrimePower{p, ex});
        const u128 cube = (u128)e * e * e;
        u64 lo = (u64)((cube + B2 - 1) / B2);  // need e^3/a <= B^2
        if (lo > B) continue;
        total += divisor_sum_for_e(B, lo, fac);
    }
    return total;
}

}  // namespace

CountRecord fast_count(u64 B, const FactorTable& ft, unsigned workers) {
    if (B == 0) throw std::invalid_argument("height bound must be positive");
    if (ft.limit < B) throw std::invalid_argument("factor table limit below B");
    auto t0 = std::chrono::steady_clock::now();
    u64 total = 0;
    if (workers <= 1 || B < 1024) {
        total = fast_count_range(B, 1, B, ft);
    } else {
        std::vector<u64> partial(workers, 0);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                partial[w] = fast_count_range(B, 1 + (B * w) / workers, (B * (w + 1)) / workers, ft);
            });
        }
        for (auto& t : pool) t.join();
        for (unsigned w = 0; w < workers; ++w) total += partial[w];
    }
    auto t1 = std::chrono::steady_clock::now();
    return CountRecord{B, total, "fast", std::chrono::duration<double>(t1 - t0).count()};
}

namespace {

bool squarefree(u64 n, const FactorTable& ft) {
    for (auto [p, e] : ft.factor(n)) {
        (void)p;
        if (e >= 2) return false;
    }
    return true;
}

// exponent map of n1 * n2^2 * n3^3 over its primes
std::vector<PrimePower> m_exponents(u64 n1, u64 n2, u64 n3, const FactorTable& ft) {
    std::vector<PrimePower> out;
    auto add = [&](u64 n, unsigned mult) {
        for (auto [p, e] : ft.factor(n)) {
            auto it = std::find_if(out.begin(), out.end(), [&](const PrimePower& q) { return q.p == p; });
            if (it == out.end()) out.push_back(PrimePower{p, e * mult});
            else it->e += e * mult;
        }
    };
    add(n1, 1);
    add(n2, 2);
    add(n3, 3);
    std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.p < b.p; });
    return out;
}

// #{(y1,y2): y1^2+y2^2 = m, gcd(y1,y2,K) = 1} via the same per-prime Moebius
// collapse as in fast_count; `movable` primes are those of K with m_q >= 2.
u64 primitive_r2(const std::vector<PrimePower>& m_fac, u64 K, const FactorTable& ft) {
    u64 term = 4;
    std::vector<std::pair<u64, unsigned>> kfac = ft.factor(K);
    for (const auto& q : m_fac) {
        bool in_k = std::any_of(kfac.begin(), kfac.end(),
                                [&](const auto& f) { return f.first == q.p; });
        const bool movable = in_k && q.e >= 2;
        if (q.p == 2) {
            if (movable) return 0;
        } else if (q.p % 4 == 3) {
            if (movable || q.e % 2 == 1) return 0;
        } else {
            term *= movable ? 2 : (q.e + 1);
        }
    }
    return term;
}

u64 descent_count_range(u64 B, u64 n0_lo, u64 n0_hi, const FactorTable& ft) {
    const u128 B2 = (u128)B * B;
    u64 total = 0;
    for (u64 n0 = n0_lo; n0 <= n0_hi; ++n0) {
        const u64 n0cube = n0 * n0 * n0;
        if (n0cube > B) break;
        for (u64 n1 = 1; n0cube * n1 * n1 <= B; ++n1) {
            const u64 x0_base = n0cube * n1 * n1;
            for (u64 n2 = 1; x0_base * n2 <= B; ++n2) {
                if (!squarefree(n2, ft)) continue;
                if (std::gcd(n0, n2) != 1) continue;
                const u64 x3_base = n0 * n1 * n2;       // x3 = x3_base * n3
                const u128 m_base = (u128)n1 * n2 * n2; // m = m_base * n3^3
                const u64 K = n0 * n1 * n2;
                for (u64 n3 = 1; x3_base * n3 <= B; ++n3) {
                    if (m_base * n3 * n3 * n3 > B2) break;
                    if (std::gcd(n0, n3) != 1) continue;
                    auto m_fac = m_exponents(n1, n2, n3, ft);
                    total += primitive_r2(m_fac, K, ft);
                }
            }
        }
    }
    return total;
}

}  // namespace

CountRecord descent_count(u64 B, const FactorTable& ft, unsigned workers) {
    if (B == 0) throw std::invalid_argument("height bound must be positive");
    if (ft.limit < B) throw std::invalid_argument("factor table limit below B");
    auto t0 = std::chrono::steady_clock::now();
    u64 total = 0;
    u64 n0_max = 1;
    while ((n0_max + 1) * (n0_max + 1) * (n0_max + 1) <= B) ++n0_max;
    if (workers <= 1 || n0_max < 4) {
        total = descent_count_range(B, 1, n0_max, ft);
    } else {
        std::vector<u64> partial(workers, 0);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                partial[w] =
                    descent_count_range(B, 1 + (n0_max * w) / workers, (n0_max * (w + 1)) / workers, ft);
            });
        }
        for (auto& t : pool) t.join();
        for (unsigned w = 0; w < workers; ++w) total += partial[w];
    }
    auto t1 = std::chrono::steady_clock::now();
    return CountRecord{B, total, "descent", std::chrono::duration<double>(t1 - t0).count()};
}

std::optional<DescentTuple> descent_tuple_for_point(const SurfacePoint& p, const FactorTable& ft) {
    if (p.x3 <= 0 || p.x0 <= 0) return std::nullopt;
    const u64 x0 = (u64)p.x0;
    const u64 m = (u64)(p.x1 * p.x1 + p.x2 * p.x2);
    DescentTuple t;
    t.y1 = p.x1;
    t.y2 = p.x2;

    auto x0_fac = ft.factor(x0);
    auto m_fac = ft.factor(m == 0 ? 1 : m);
    std::vector<u64> primes;
    for (auto [q, e] : x0_fac) { (void)e; primes.push_back(q); }
    for (auto [q, e] : m_fac) {
        (void)e;
        if (std::find(primes.begin(), primes.end(), q) == primes.end()) primes.push_back(q);
    }
    for (u64 q : primes) {
        unsigned alpha = 0, mu = 0;
        for (auto [qq, e] : x0_fac)
            if (qq == q) alpha = e;
        for (auto [qq, e] : m_fac)
            if (qq == q) mu = e;
        // minimal A with the residual (alpha', mu) solvable; threshold is
        // alpha'/2 for even alpha' and (alpha'+3)/2 for odd
        unsigned A = 0;
        auto feasible = [&](unsigned alpha_r) {
            unsigned th = (alpha_r % 2 == 0) ? alpha_r / 2 : (alpha_r + 3) / 2;
            return mu >= th;
        };
        while (!feasible(alpha - 3 * A)) ++A;
        unsigned alpha_r = alpha - 3 * A;
        unsigned Bexp = alpha_r / 2;
        unsigned Cexp = alpha_r - 2 * Bexp;
        unsigned Dexp = (mu - Bexp - 2 * Cexp) / 3;
        for (unsigned i = 0; i < A; ++i) t.n0 *= q;
        for (unsigned i = 0; i < Bexp; ++i) t.n1 *= q;
        for (unsigned i = 0; i < Cexp; ++i) t.n2 *= q;
        for (unsigned i = 0; i < Dexp; ++i) t.n3 *= q;
    }
    return t;
}

QFit fit_q(const std::vector<std::pair<u64, u64>>& samples) {
    if (samples.size() < 8) throw std::invalid_argument("fit_q needs at least 8 samples");
    u64 bmin = samples[0].first, bmax = samples[0].first;
    for (const auto& s : samples) {
        bmin = std::min(bmin, s.first);
        bmax = std::max(bmax, s.first);
    }
    if (bmax < 100 * bmin) throw std::invalid_argument("fit_q samples must span two decades");

    // fit N/B against powers of (log B - mean) for conditioning, then expand
    const std::size_t n = samples.size();
    std::vector<long double> L(n), y(n);
    long double mean = 0;
    for (std::size_t i = 0; i < n; ++i) {
        L[i] = std::log((long double)samples[i].first);
        y[i] = (long double)samples[i].second / (long double)samples[i].first;
        mean += L[i];
    }
    mean /= (long double)n;

    long double ata[4][4] = {};
    long double atb[4] = {};
    for (std::size_t i = 0; i < n; ++i) {
        long double t = L[i] - mean;
        long double row[4] = {1.0L, t, t * t, t * t * t};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) ata[r][c] += row[r] * row[c];
            atb[r] += row[r] * y[i];
        }
    }
    // gaussian elimination with partial pivoting
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r) {
            if (std::fabs((double)ata[r][col]) > std::fabs((double)ata[piv][col])) piv = r;
        }
        if (ata[piv][col] == 0.0L) throw std::invalid_argument("fit_q: degenerate sample matrix");
        std::swap(ata[piv], ata[col]);
        std::swap(atb[piv], atb[col]);
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            long double f = ata[r][col] / ata[col][col];
            for (int c = col; c < 4; ++c) ata[r][c] -= f * ata[col][c];
            atb[r] -= f * atb[col];
        }
    }
    long double g[4];
    for (int i = 0; i < 4; ++i) g[i] = atb[i] / ata[i][i];

    // expand sum g_j (L - mean)^j into raw powers of L
    long double c[4] = {};
    const long double mm = -mean;
    c[0] = g[0] + g[1] * mm + g[2] * mm * mm + g[3] * mm * mm * mm;
    c[1] = g[1] + 2.0L * g[2] * mm + 3.0L * g[3] * mm * mm;
    c[2] = g[2] + 3.0L * g[3] * mm;
    c[3] = g[3];

    QFit fit;
    fit.c0 = (double)c[0];
    fit.c1 = (double)c[1];
    fit.c2 = (double)c[2];
    fit.c3 = (double)c[3];
    fit.b_min = bmin;
    fit.b_max = bmax;
    long double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long double fitted = ((c[3] * L[i] + c[2]) * L[i] + c[1]) * L[i] + c[0];
        long double resid = fitted * (long double)samples[i].first - (long double)samples[i].second;
        worst = std::max(worst, std::fabs((double)resid) + 0.0L);
    }
    fit.residual = (double)worst;
    return fit;
}

double qfit_eval(const QFit& fit, u64 B) {
    double L = std::log((double)B);
    return (((fit.c3 * L + fit.c2) * L + fit.c1) * L + fit.c0) * (double)B;
}

} // namespace manin
