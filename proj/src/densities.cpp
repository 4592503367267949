#include "manin/densities.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace manin {

int chi4(i64 n) {
    i64 r = ((n % 4) + 4) % 4;
    if (r == 0 || r == 2) return 0;
    return r == 1 ? 1 : -1;
}

Rat sigma_local(u64 p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("sigma_local: p is not prime");
    const int c = chi4((i64)p);
    return 1 + Rat(2 + 3 * c + 2 * c * c, (i64)p) + Rat(c * c, (i64)p * (i64)p);
}

Rat omega_p_good(u64 p) {
    if (p == 2) throw std::invalid_argument("bad reduction at 2; use the density oracle");
    if (!is_prime_u64(p)) throw std::invalid_argument("omega_p_good: p is not prime");
    const int c = chi4((i64)p);
    return 1 + Rat(4 + 3 * c, (i64)p) + Rat(1, (i64)p * (i64)p);
}

LocalDensityReport local_density_oracle(u64 p, unsigned k) {
    if (!is_prime_u64(p)) throw std::invalid_argument("local_density_oracle: p is not prime");
    if (k == 0) throw std::invalid_argument("local_density_oracle: k must be positive");
    // p^(2k) <= 1e9 means p^k <= 31622
    u64 q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > 31622) {
            unsigned kmax = 0;
            for (u64 t = p; t <= 31622; t *= p) ++kmax;
            throw std::invalid_argument(
                "local_density_oracle: p^(2k) exceeds the 1e9 budget; max k is " +
                std::to_string(kmax));
        }
    }

    const bool pow2 = (p == 2);
    const u64 mask = q - 1;
    auto reduce = [&](u64 v) { return pow2 ? (v & mask) : (v % q); };

    // R(c) = #{(x1,x2) mod q : x1^2 + x2^2 = c}
    std::vector<std::uint32_t> R(q, 0);
    for (u64 x1 = 0; x1 < q; ++x1) {
        u64 s1 = reduce(x1 * x1);
        for (u64 x2 = 0; x2 < q; ++x2) {
            ++R[reduce(s1 + reduce(x2 * x2))];
        }
    }
    // cube counts, then S(c) = sum_x0 K[x0 * c]
    std::vector<std::uint32_t> K(q, 0);
    for (u64 x3 = 0; x3 < q; ++x3) ++K[reduce(reduce(x3 * x3) * x3)];

    u64 total = 0;
    for (u64 c = 0; c < q; ++c) {
        if (R[c] == 0) continue;
        u64 s = 0;
        for (u64 x0 = 0; x0 < q; ++x0) s += K[reduce(x0 * c)];
        total += (u64)R[c] * s;
    }

    LocalDensityReport rep;
    rep.p = p;
    rep.k = k;
    rep.count = total;
    rep.oracle = Rat(Int(total), int_pow(Int(p), 3 * k));
    rep.closed_form = sigma_local(p);
    rep.deviation = abs(rep.oracle - rep.closed_form);
    return rep;
}

double omega_infty_closed() { return 3.0 * M_PI; }

namespace {

inline double integrand(double x, double y) {
    double r2 = x * x + y * y;
    if (r2 <= 1.0) return 1.0;
    return 1.0 / (r2 * std::sqrt(r2));
}

struct Box {
    double x0, y0, x1, y1;
    double coarse, fine, err;
};

double simpson_box(double x0, double y0, double x1, double y1, std::size_t& evals) {
    const double hx = (x1 - x0) / 2, hy = (y1 - y0) / 2;
    static const double w[3] = {1.0, 4.0, 1.0};
    double s = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            s += w[i] * w[j] * integrand(x0 + i * hx, y0 + j * hy);
            ++evals;
        }
    }
    return s * hx * hy / 9.0;
}

Box make_box(double x0, double y0, double x1, double y1, std::size_t& evals) {
    Box b{x0, y0, x1, y1, 0, 0, 0};
    b.coarse = simpson_box(x0, y0, x1, y1, evals);
    const double mx = (x0 + x1) / 2, my = (y0 + y1) / 2;
    b.fine = simpson_box(x0, y0, mx, my, evals) + simpson_box(mx, y0, x1, my, evals) +
             simpson_box(x0, my, mx, y1, evals) + simpson_box(mx, my, x1, y1, evals);
    b.err = std::fabs(b.fine - b.coarse);
    return b;
}

}  // namespace

QuadratureResult omega_infty_quadrature(double tol) {
    if (tol < 1e-10) throw std::invalid_argument("quadrature budget: tolerance below 1e-10");

    // truncation: outside [-T,T]^2 the integrand is (z1^2+z2^2)^(-3/2), and
    // each strip {|z_i| > T} integrates to at most 4/T, so the tail is <= 8/T
    const double trunc_budget = 0.4 * tol;
    const double quad_budget = 0.5 * tol;
    const double T = 8.0 / trunc_budget;

    // integrate the first quadrant and use the four-fold symmetry
    const double quarter_budget = quad_budget / 4.0;
    std::size_t evals = 0;
    auto cmp = [](const Box& a, const Box& b) { return a.err < b.err; };
    std::priority_queue<Box, std::vector<Box>, decltype(cmp)> heap(cmp);

    double total = 0, total_err = 0;
    auto push = [&](double x0, double y0, double x1, double y1) {
        Box b = make_box(x0, y0, x1, y1, evals);
        total += b.fine;
        total_err += b.err;
        heap.push(b);
    };
    push(0, 0, 2, 2);
    push(2, 0, T, 2);
    push(0, 2, 2, T);
    push(2, 2, T, T);

    const std::size_t max_boxes = 4000000;
    std::size_t boxes = 4;
    while (total_err > quarter_budget) {
        if (boxes > max_boxes || heap.empty())
            throw std::runtime_error("quadrature budget: refinement limit reached");
        Box b = heap.top();
        heap.pop();
        total -= b.fine;
        total_err -= b.err;
        const double mx = (b.x0 + b.x1) / 2, my = (b.y0 + b.y1) / 2;
        push(b.x0, b.y0, mx, my);
        push(mx, b.y0, b.x1, my);
        push(b.x0, my, mx, b.y1);
        push(mx, my, b.x1, b.y1);
        boxes += 4;
    }

    QuadratureResult res;
    res.value = 4.0 * total;
    res.error_bound = 4.0 * total_err + 8.0 / T;
    res.evaluations = evals;
    return res;
}

// Tail constant for the Euler product.  With x = 1/p and chi = chi(p), the
// factor expands to
//   chi = +1: (1-x)^7 (1+7x+x^2)      = 1 - 27x^2 + 105x^3 - 189x^4 + ...
//   chi = -1: (1-x^2)^3 (1-x^3)       = 1 -  3x^2 -   x^3 +   3x^4 + ...
// (no 1/p term in either branch; chi = 0 happens only at p = 2, which is
// never in the tail).  For x <= 1/100 the worst branch gives
// |F - 1| <= 28.1 x^2 and |log F| <= 28.2 x^2; summing 1/p^2 < 1/P over
// p > P bounds the log-tail by 28.2 / P.
const double TAU_TAIL_CONSTANT = 28.2;

EulerProduct tau_product(u64 cutoff, double tol) {
    if (cutoff < 100) throw std::invalid_argument("tau_product: cutoff must be at least 100");

    std::vector<bool> sieve(cutoff + 1, true);
    long double prod = 1.0L;
    u64 nfactors = 0;
    for (u64 p = 2; p <= cutoff; ++p) {
        if (!sieve[p]) continue;
        for (u64 j = p * p; j <= cutoff; j += p) sieve[j] = false;
        const long double x = 1.0L / (long double)p;
        const int c = chi4((i64)p);
        long double f = 1.0L - x;
        f = f * f;
        f = f * f;                           // (1 - 1/p)^4
        long double g = 1.0L - c * x;
        f *= g * g * g;                      // (1 - chi/p)^3
        f *= 1.0L + (2 + 3 * c + 2 * c * c) * x + (c * c) * x * x;
        prod *= f;
        ++nfactors;
    }

    const long double tail_log = (long double)TAU_TAIL_CONSTANT / (long double)cutoff;
    // long double keeps the rounding error of ~6e5 factors far below 1e-12
    const long double fp_margin = 4e-12L;
    const long double lo = prod * std::exp(-(double)tail_log) * (1.0L - fp_margin);
    const long double hi = prod * std::exp((double)tail_log) * (1.0L + fp_margin);

    EulerProduct ep;
    ep.partial_product = (double)prod;
    ep.cutoff = cutoff;
    ep.lo = (double)lo;
    ep.hi = (double)hi;
    ep.tail_bound = (ep.hi - ep.lo) / (2.0 * ep.partial_product);
    ep.requested_tol = tol;
    ep.certified = (ep.hi - ep.lo) <= tol;
    (void)nfactors;
    return ep;
}

PeyreBreakdown peyre_constant(const EulerProduct& tau, const Rat& alpha) {
    double pi4 = M_PI / 4.0;
    return peyre_constant(tau, alpha, 3.0 * M_PI, pi4 * pi4 * pi4);
}

PeyreBreakdown peyre_constant(const EulerProduct& tau, const Rat& alpha, double omega_inf,
                              double lfun_cubed) {
    PeyreBreakdown pb;
    pb.alpha = alpha;
    pb.beta = 1;
    pb.omega_inf = omega_inf;
    pb.omega_2 = 2;
    pb.lfun_limit = lfun_cubed / 16.0;
    pb.tau = tau;
    const double a = alpha.convert_to<double>();
    const double factor = a * omega_inf * lfun_cubed;
    pb.c_lo = factor * tau.lo;
    pb.c_hi = factor * tau.hi;
    return pb;
}

} // namespace manin
