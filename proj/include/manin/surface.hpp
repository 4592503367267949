#pragma once

// Rational points on the cubic surface x0(x1^2+x2^2) = x3^3: validation,
// canonical projective normalization, classification against the three lines
// and the singular points, and exhaustive counting of bounded-height points
// on the open torus.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "manin/arith.hpp"

namespace manin {

enum class PointClass {
    generic_u,
    on_line_l1,           // x3 = x1 - i x2 = 0: rational only at xi1
    on_line_l2,           // x3 = x1 + i x2 = 0: rational only at xi1
    on_line_l3,           // x3 = x0 = 0
    singular_xi1,         // [1:0:0:0]
    singular_xi2_or_xi3,  // [0:1:+-i:0]: never rational
};

std::string to_string(PointClass c);

// Canonical primitive representative of a projective point on the surface.
// The sign is fixed by x3 > 0, then x0 > 0, then (x1,x2) lexicographically
// positive.  Construction validates all invariants exactly (wide arithmetic,
// no overflow for any int64 coordinates).
struct SurfacePoint {
    i64 x0 = 0, x1 = 0, x2 = 0, x3 = 0;

    SurfacePoint(i64 x0_, i64 x1_, i64 x2_, i64 x3_);
    friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
    friend bool operator<(const SurfacePoint& a, const SurfacePoint& b) {
        return std::array<i64, 4>{a.x0, a.x1, a.x2, a.x3} <
               std::array<i64, 4>{b.x0, b.x1, b.x2, b.x3};
    }
};

// Exact test of x0(x1^2+x2^2) = x3^3; throws on the zero tuple.
bool is_on_surface(i64 x0, i64 x1, i64 x2, i64 x3);

// gcd division plus canonical sign; idempotent.  Throws on the zero tuple or
// off-surface input.
SurfacePoint normalize_point(i64 x0, i64 x1, i64 x2, i64 x3);

PointClass classify_point(const SurfacePoint& p);

// Exact height comparison: |x0| <= B, |x3| <= B and x1^2+x2^2 <= B^2.
bool height_leq(const SurfacePoint& p, u64 B);

// Display-only real height max(|x0|, sqrt(x1^2+x2^2), |x3|); never used in
// counting.
double height_real(const SurfacePoint& p);

struct CountRecord {
    u64 B = 0;
    u64 count = 0;
    std::string method;
    double elapsed = 0.0;  // seconds
};

// Exact N_U(B) by exhaustive enumeration: x3 = 1..B, x0 over divisors of
// x3^3 with x0 <= B and x3^3/x0 <= B^2, all lattice points on the circle
// x1^2 + x2^2 = x3^3/x0, primitive tuples only.  Line points never enter
// because every counted point has x3 >= 1.
CountRecord brute_force_count(u64 B, unsigned workers = 1);

// The counted points themselves (small B; single-threaded).
std::vector<SurfacePoint> enumerate_points(u64 B);

} // namespace manin
