#pragma once

// Test-side oracles, kept independent of the library's computation paths:
//  - exact univariate polynomial integration for iterated-integral values
//  - Ehrhart interpolation (lattice-point counts at dilations) for volumes

#include <stdexcept>
#include <vector>

#include "manin/arith.hpp"
#include "manin/polytope.hpp"

namespace oracles {

using manin::Int;
using manin::Rat;

// polynomial sum c[i] t^i
using Poly = std::vector<Rat>;

inline Rat poly_eval(const Poly& p, const Rat& t) {
    Rat v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
    return v;
}

inline Rat integrate(const Poly& p, const Rat& lo, const Rat& hi) {
    Poly prim(p.size() + 1, Rat(0));
    for (std::size_t i = 0; i < p.size(); ++i) prim[i + 1] = p[i] / Rat((int)i + 1);
    return poly_eval(prim, hi) - poly_eval(prim, lo);
}

// Volume of {A y <= b} in R^k from lattice-point counts: counts at dilations
// t = D, 2D, ..., (k+1)D determine a degree-k polynomial whose leading
// coefficient is the volume; one extra dilation cross-checks the period D.
inline Rat ehrhart_volume(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                          int k, long D) {
    if (k < 1 || k > 3) throw std::invalid_argument("ehrhart oracle supports dims 1..3");

    // integerize each row so membership tests are pure integer arithmetic
    std::vector<std::vector<long long>> Ai;
    std::vector<long long> bi;
    for (std::size_t r = 0; r < A.size(); ++r) {
        Int lcm = 1;
        auto accum = [&](const Rat& q) {
            Int den = boost::multiprecision::denominator(q);
            lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
        };
        for (const auto& q : A[r]) accum(q);
        accum(b[r]);
        std::vector<long long> row;
        for (const auto& q : A[r])
            row.push_back((long long)Rat(q * lcm).convert_to<Int>());
        Ai.push_back(row);
        bi.push_back((long long)Rat(b[r] * lcm).convert_to<Int>());
    }

    auto count_points = [&](long t) -> long long {
        const long R = 4 * t;  // the tested polytopes all live inside |y_i| <= 4
        long long count = 0;
        std::vector<long long> y(k);
        auto rec = [&](auto&& self, int depth) -> void {
            if (depth == k) {
                for (std::size_t r = 0; r < Ai.size(); ++r) {
                    long long lhs = 0;
                    for (int c = 0; c < k; ++c) lhs += Ai[r][c] * y[c];
                    if (lhs > bi[r] * t) return;
                }
                ++count;
                return;
            }
            for (long v = -R; v <= R; ++v) {
                y[depth] = v;
                self(self, depth + 1);
            }
        };
        rec(rec, 0);
        return count;
    };

    std::vector<Rat> ts, cs;
    for (int i = 1; i <= k + 2; ++i) {
        ts.push_back(Rat((long long)D * i));
        cs.push_back(Rat(count_points(D * i)));
    }
    // Lagrange interpolation through the first k+1 samples
    auto fit_eval = [&](const Rat& x) {
        Rat total = 0;
        for (int i = 0; i <= k; ++i) {
            Rat term = cs[i];
            for (int j = 0; j <= k; ++j) {
                if (i == j) continue;
                term *= (x - ts[j]) / (ts[i] - ts[j]);
            }
            total += term;
        }
        return total;
    };
    if (fit_eval(ts[k + 1]) != cs[k + 1])
        throw std::runtime_error("ehrhart oracle: dilation period mismatch");

    // leading coefficient via k-th finite difference: delta^k = vol * k! * D^k
    Rat diff = 0;
    for (int i = 0; i <= k; ++i) {
        Rat binom = 1;
        for (int j = 1; j <= i; ++j) binom = binom * Rat(k - j + 1) / Rat(j);
        diff += ((k - i) % 2 == 0 ? binom : -binom) * cs[i];
    }
    Rat fact_dk = 1;
    for (int j = 2; j <= k; ++j) fact_dk *= j;
    for (int j = 0; j < k; ++j) fact_dk *= Rat((long long)D);
    return diff / fact_dk;
}

// Same hyperplane substitution rule as the library (solve the highest-index
// variable, divide by |its coefficient|), reimplemented here so the oracle
// shares no code with the vertex/triangulation path.
inline Rat ehrhart_volume_of(const manin::SlicedPolytope& poly, long D) {
    const int d = poly.dim;
    int j = -1;
    for (int i = d - 1; i >= 0; --i) {
        if (poly.hyperplane.c[i] != 0) { j = i; break; }
    }
    if (j < 0) throw std::invalid_argument("hyperplane has no variable");
    Rat cj = poly.hyperplane.c[j];
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    for (const auto& q : poly.ineqs) {
        std::vector<Rat> row;
        for (int i = 0; i < d; ++i) {
            if (i == j) continue;
            row.push_back(q.a[i] - q.a[j] * poly.hyperplane.c[i] / cj);
        }
        A.push_back(row);
        b.push_back(q.b - q.a[j] * poly.hyperplane.e / cj);
    }
    return ehrhart_volume(A, b, d - 1, D) / abs(cj);
}

} // namespace oracles
