#pragma once

// Local factors of the predicted leading constant: the character chi mod 4,
// closed-form Euler factors, p-adic counting oracles, the archimedean
// density, the Euler product with a certified tail bound, and the assembled
// constant.

#include <cstdint>
#include <vector>

#include "manin/arith.hpp"

namespace manin {

// non-principal character mod 4; totally multiplicative
int chi4(i64 n);

// Euler factor bracket 1 + (2 + 3 chi(p) + 2 chi(p)^2)/p + chi(p)^2/p^2.
Rat sigma_local(u64 p);

// Good-reduction density 1 + (4 + 3 chi(p))/p + 1/p^2 for odd p; equals
// sigma_local there and #X(F_p)/p^2 for the resolved surface.
Rat omega_p_good(u64 p);

struct LocalDensityReport {
    u64 p = 0;
    unsigned k = 0;
    u64 count = 0;       // N(p^k)
    Rat oracle;          // N(p^k) / p^(3k)
    Rat closed_form;     // sigma_local(p)
    Rat deviation;       // |oracle - closed_form|
};

// Exact N(p^k) = #{x mod p^k : x0(x1^2+x2^2) = x3^3} via the convolution
// N = sum_c R(c) S(c) with R(c) = #{x1^2+x2^2 = c} and S(c) = #{x0 c = x3^3},
// two O(p^2k) passes.  Guarded by p^2k <= 10^9.
LocalDensityReport local_density_oracle(u64 p, unsigned k);

// archimedean density: closed form 3*pi
double omega_infty_closed();

struct QuadratureResult {
    double value = 0;
    double error_bound = 0;
    std::size_t evaluations = 0;
};

// Adaptive 2D quadrature of 1/max{1, (z1^2+z2^2)^(3/2)} over a truncated
// plane with an explicit strip bound for the tail; total certified error at
// most tol.  Tolerances below 1e-10 are rejected.
QuadratureResult omega_infty_quadrature(double tol);

struct EulerProduct {
    double partial_product = 0;
    u64 cutoff = 0;
    double tail_bound = 0;  // half-width / partial_product
    double lo = 0, hi = 0;
    bool certified = false;  // width <= requested tolerance
    double requested_tol = 0;
};

// Certified interval for tau = prod_p (1-1/p)^4 (1-chi(p)/p)^3 sigma_p.
// The log of each odd factor is O(1/p^2) (the 1/p terms cancel identically);
// the tail past the cutoff is bounded by TAU_TAIL_CONSTANT / cutoff.
EulerProduct tau_product(u64 cutoff, double tol);

extern const double TAU_TAIL_CONSTANT;

struct PeyreBreakdown {
    Rat alpha;
    Rat beta;            // 1 (the surface is rational)
    double omega_inf;    // 3*pi
    Rat omega_2;         // 2
    double lfun_limit;   // (pi/4)^3 / 2^4
    EulerProduct tau;
    double c_lo = 0, c_hi = 0;  // alpha * (3 pi) * (pi/4)^3 * tau
};

PeyreBreakdown peyre_constant(const EulerProduct& tau, const Rat& alpha);
// overridable archimedean/L-value factors (identity assembly in tests)
PeyreBreakdown peyre_constant(const EulerProduct& tau, const Rat& alpha, double omega_inf,
                              double lfun_cubed);

} // namespace manin
