#pragma once

// Rank-2 lattice fans with a Galois involution.
//
// All geometry is exact: ray generators are primitive vectors of N = Z^2,
// cones are consecutive ray pairs in counterclockwise order, and a fan's
// canonical representation is its angularly sorted ray list (two fans are
// equal iff those lists are equal).  Point counts over F_p are derived from
// the combinatorics twice, by torus orbits and by the Lefschetz trace on the
// geometric Picard lattice; the two routes are independent checks of each
// other.

#include <cstdint>
#include <vector>

namespace manin {

struct LatticeVec {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend bool operator==(const LatticeVec&, const LatticeVec&) = default;
};

// u.a*v.b - u.b*v.a, widened so no pair of int64 coordinates can overflow.
__int128_t cross(const LatticeVec& u, const LatticeVec& v);

// v divided by gcd(|a|,|b|); throws on the zero vector.
LatticeVec primitive_vector(std::int64_t a, std::int64_t b);
LatticeVec primitive_vector(const LatticeVec& v);

// Strict counterclockwise order of directions, starting at the positive
// x-axis.  Exact (no floating point).
bool angular_less(const LatticeVec& u, const LatticeVec& v);

// Strictly convex 2D cone spanned by two primitive rays.  The constructor
// orients the pair counterclockwise and rejects parallel rays.
struct Cone2D {
    LatticeVec u, v;
    Cone2D(LatticeVec u_, LatticeVec v_);
};

// |det(u,v)| >= 1; the cone is smooth iff this is 1.
std::int64_t cone_index(const Cone2D& c);

class Fan2D {
public:
    // Rays must be primitive and pairwise distinct; stored sorted by angle.
    explicit Fan2D(std::vector<LatticeVec> rays);

    const std::vector<LatticeVec>& rays() const { return rays_; }
    std::size_t size() const { return rays_.size(); }
    bool contains_ray(const LatticeVec& r) const;
    // i-th maximal cone: rays i and i+1 (cyclically).
    Cone2D cone(std::size_t i) const;
    std::vector<std::int64_t> cone_indices() const;

    friend bool operator==(const Fan2D&, const Fan2D&) = default;

private:
    std::vector<LatticeVec> rays_;
};

// True iff the consecutive cones cover R^2 (every angular gap < pi).
// Throws if the fan has fewer than 3 rays.
bool fan_is_complete(const Fan2D& f);

// True iff every maximal cone has index 1.  Requires a complete fan.
bool fan_is_smooth(const Fan2D& f);

// Minimal smooth refinement by Hirzebruch-Jung insertion: each singular cone
// gets the lattice points on the bounded part of the hull of its nonzero
// lattice points.  Smooth cones are left untouched; the result is smooth,
// complete and contains the input rays.  Throws on non-complete input.
Fan2D hj_resolve(const Fan2D& f);

struct GaloisInvolution {
    std::int64_t m[2][2];

    GaloisInvolution(std::int64_t m00, std::int64_t m01, std::int64_t m10, std::int64_t m11);

    LatticeVec apply(const LatticeVec& v) const;
    // action on the dual lattice M
    LatticeVec apply_dual(const LatticeVec& m_vec) const;
    std::int64_t trace() const { return m[0][0] + m[1][1]; }
    std::int64_t det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    bool is_identity() const;
    GaloisInvolution power(unsigned k) const;

    static GaloisInvolution identity();
    static GaloisInvolution coordinate_swap();

    friend bool operator==(const GaloisInvolution&, const GaloisInvolution&) = default;
};

// True iff g permutes the ray set of f.
bool galois_check_invariance(const Fan2D& f, const GaloisInvolution& g);

// Partition of the rays into g-orbits, ordered by the smallest angular
// position among the orbit's members.  Throws if f is not g-invariant.
std::vector<std::vector<LatticeVec>> ray_orbits(const Fan2D& f, const GaloisInvolution& g);

// rank Pic over the ground field: #ray-orbits - rank(M^g).
// Requires f complete, smooth and g-invariant.
int picard_rank_invariant(const Fan2D& f, const GaloisInvolution& g);

// rank Pic over the algebraic closure: #rays - 2.
int picard_rank_geometric(const Fan2D& f);

// Trace of g on the geometric Picard lattice: (#g-fixed rays) - trace(g|M).
int frobenius_trace_pic(const Fan2D& f, const GaloisInvolution& g);

enum class CountMethod { orbit, trace };

// Frobenius acts trivially on the splitting field Q(i) iff p = 1 mod 4.
GaloisInvolution frobenius_involution(std::uint64_t p);

// #X(F_p) for the toric surface of f at an odd prime of good reduction.
//
// method=trace:  p^2 + Tr(Frob|Pic)p + 1.
// method=orbit:  sum over Frobenius orbits of torus orbits: the dense torus
//   contributes det(p*I - F) on the character lattice, a Frobenius-fixed ray
//   contributes p - eps with eps the action of F on the ray's orbit-character
//   line (+1 trivial, -1 negation), a fixed maximal cone contributes 1, and
//   swapped pairs of rays or cones contribute 0.
std::uint64_t point_count_fp(const Fan2D& f, std::uint64_t p, CountMethod method);

// The fans of the cubic surface x0(x1^2+x2^2) = x3^3: the three-ray fan of
// the singular model and its nine-ray minimal resolution.
Fan2D delta();
Fan2D delta_tilde();

} // namespace manin
