#pragma once

// Fast counting of N_U(B) by multiplicative sums-of-two-squares arithmetic
// and by the torsor parametrization, plus the empirical fit of the cubic
// polynomial in log B.

#include <optional>
#include <utility>
#include <vector>

#include "manin/arith.hpp"
#include "manin/surface.hpp"

namespace manin {

// smallest-prime-factor sieve
struct FactorTable {
    u64 limit = 0;
    std::vector<std::uint32_t> spf;

    explicit FactorTable(u64 limit);
    // (prime, exponent) pairs; trial-division fallback above the sieve limit
    std::vector<std::pair<u64, unsigned>> factor(u64 n) const;
};

// #{(x1,x2) in Z^2 : x1^2 + x2^2 = n}: 0 if some prime 3 mod 4 divides n to
// an odd power, otherwise 4 * prod over p = 1 mod 4 of (e_p + 1).
u64 r2(u64 n, const FactorTable& ft);

// N_U(B) as the exact divisor sum
//   sum_{e<=B} sum_{a | e^3, a<=B, e^3/a<=B^2}
//     sum_{d | gcd(a,e), d^2 | e^3/a} mu(d) r2(e^3/(a d^2)).
CountRecord fast_count(u64 B, const FactorTable& ft, unsigned workers = 1);

// Torsor enumeration.  Points correspond one-to-one to tuples
// (n0, n1, n2, n3, y1, y2) with
//   x0 = n0^3 n1^2 n2,  x3 = n0 n1 n2 n3,  y1^2 + y2^2 = n1 n2^2 n3^3,
//   n2 squarefree,  gcd(n0, n2 n3) = 1,  gcd(y1, y2, n0 n1 n2) = 1.
CountRecord descent_count(u64 B, const FactorTable& ft, unsigned workers = 1);

struct DescentTuple {
    u64 n0 = 1, n1 = 1, n2 = 1, n3 = 1;
    i64 y1 = 0, y2 = 0;
};

// The unique tuple representing a counted point (prime-by-prime normal form:
// minimal n0, then maximal n1).  Empty for points off the open torus.
std::optional<DescentTuple> descent_tuple_for_point(const SurfacePoint& p, const FactorTable& ft);

struct QFit {
    double c3 = 0, c2 = 0, c1 = 0, c0 = 0;  // N(B)/B fitted against log(B)^j
    double residual = 0;                     // max |fit*B - N| over the samples
    u64 b_min = 0, b_max = 0;
};

// Least-squares cubic in log B through (B, N_U(B)) samples.  Needs at least
// 8 samples spanning two decades.
QFit fit_q(const std::vector<std::pair<u64, u64>>& samples);

double qfit_eval(const QFit& fit, u64 B);  // fitted N(B)

} // namespace manin
