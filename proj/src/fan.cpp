#include "manin/fan.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "manin/arith.hpp"

namespace manin {

__int128_t cross(const LatticeVec& u, const LatticeVec& v) {
    return (__int128_t)u.a * v.b - (__int128_t)u.b * v.a;
}

LatticeVec primitive_vector(std::int64_t a, std::int64_t b) {
    if (a == 0 && b == 0) throw std::invalid_argument("zero vector has no direction");
    u64 g = gcd_u64(abs_u64(a), abs_u64(b));
    return LatticeVec{a / (i64)g, b / (i64)g};
}

LatticeVec primitive_vector(const LatticeVec& v) { return primitive_vector(v.a, v.b); }

static bool is_primitive(const LatticeVec& v) {
    if (v.a == 0 && v.b == 0) return false;
    return gcd_u64(abs_u64(v.a), abs_u64(v.b)) == 1;
}

// 0 for the closed upper half plane minus the negative x-axis, 1 otherwise
static int angular_half(const LatticeVec& v) {
    return (v.b > 0 || (v.b == 0 && v.a > 0)) ? 0 : 1;
}

bool angular_less(const LatticeVec& u, const LatticeVec& v) {
    int hu = angular_half(u), hv = angular_half(v);
    if (hu != hv) return hu < hv;
    return cross(u, v) > 0;
}

Cone2D::Cone2D(LatticeVec u_, LatticeVec v_) : u(u_), v(v_) {
    if (!is_primitive(u) || !is_primitive(v))
        throw std::invalid_argument("cone rays must be primitive");
    __int128_t d = cross(u, v);
    if (d == 0) throw std::invalid_argument("cone rays are parallel");
    if (d < 0) std::swap(u, v);
}

std::int64_t cone_index(const Cone2D& c) {
    __int128_t d = cross(c.u, c.v);
    return (std::int64_t)(d < 0 ? -d : d);
}

Fan2D::Fan2D(std::vector<LatticeVec> rays) : rays_(std::move(rays)) {
    if (rays_.empty()) throw std::invalid_argument("fan needs at least one ray");
    for (const auto& r : rays_) {
        if (!is_primitive(r)) throw std::invalid_argument("fan rays must be primitive");
    }
    std::sort(rays_.begin(), rays_.end(), angular_less);
    for (std::size_t i = 0; i + 1 < rays_.size(); ++i) {
        if (rays_[i] == rays_[i + 1]) throw std::invalid_argument("fan rays must be distinct");
    }
}

bool Fan2D::contains_ray(const LatticeVec& r) const {
    return std::find(rays_.begin(), rays_.end(), r) != rays_.end();
}

Cone2D Fan2D::cone(std::size_t i) const {
    return Cone2D(rays_[i % rays_.size()], rays_[(i + 1) % rays_.size()]);
}

std::vector<std::int64_t> Fan2D::cone_indices() const {
    std::vector<std::int64_t> out;
    out.reserve(rays_.size());
    for (std::size_t i = 0; i < rays_.size(); ++i) out.push_back(cone_index(cone(i)));
    return out;
}

bool fan_is_complete(const Fan2D& f) {
    if (f.size() < 3) throw std::invalid_argument("completeness needs at least 3 rays");
    // rays are sorted, so the angular gaps already sum to 2*pi; the cones
    // cover the plane iff every gap is strictly below pi, i.e. every
    // consecutive cross product is positive.
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& u = f.rays()[i];
        const auto& v = f.rays()[(i + 1) % f.size()];
        if (cross(u, v) <= 0) return false;
    }
    return true;
}

bool fan_is_smooth(const Fan2D& f) {
    if (!fan_is_complete(f)) throw std::invalid_argument("smoothness check expects a complete fan");
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (cone_index(f.cone(i)) != 1) return false;
    }
    return true;
}

// Extended gcd: returns g and x,y with a*x + b*y = g.
static i64 extgcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = extgcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Rays of the minimal resolution strictly between u and v (ccw, cross(u,v)>=1).
// Each step picks the unique w with cross(u,w)=1 and 1 <= cross(w,v) minimal:
// the hull point adjacent to u.  cross(w,v) < cross(u,v) always (v/d is not a
// lattice point), so this terminates with the Hirzebruch-Jung chain.
static std::vector<LatticeVec> hj_insertions(LatticeVec u, const LatticeVec& v) {
    std::vector<LatticeVec> out;
    while (cross(u, v) > 1) {
        i64 s, t;
        extgcd(u.a, u.b, s, t);  // s*u.a + t*u.b = 1
        LatticeVec w0{-t, s};    // cross(u, w0) = 1
        i64 d = (i64)cross(u, v);
        i64 c0 = (i64)cross(w0, v);
        i64 k = ceil_div_i64(1 - c0, d);
        LatticeVec w{w0.a + k * u.a, w0.b + k * u.b};
        out.push_back(w);
        u = w;
    }
    return out;
}

Fan2D hj_resolve(const Fan2D& f) {
    if (!fan_is_complete(f)) throw std::invalid_argument("hj_resolve expects a complete fan");
    std::vector<LatticeVec> rays = f.rays();
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto& u = f.rays()[i];
        const auto& v = f.rays()[(i + 1) % f.size()];
        for (const auto& w : hj_insertions(u, v)) rays.push_back(w);
    }
    return Fan2D(rays);
}

GaloisInvolution::GaloisInvolution(std::int64_t m00, std::int64_t m01, std::int64_t m10,
                                   std::int64_t m11)
    : m{{m00, m01}, {m10, m11}} {
    i64 d = det();
    if (d != 1 && d != -1) throw std::invalid_argument("involution matrix must be unimodular");
    // matrix^2 = identity
    i64 s00 = m00 * m00 + m01 * m10;
    i64 s01 = m00 * m01 + m01 * m11;
    i64 s10 = m10 * m00 + m11 * m10;
    i64 s11 = m10 * m01 + m11 * m11;
    if (s00 != 1 || s01 != 0 || s10 != 0 || s11 != 1)
        throw std::invalid_argument("matrix is not an involution");
}

LatticeVec GaloisInvolution::apply(const LatticeVec& v) const {
    return LatticeVec{m[0][0] * v.a + m[0][1] * v.b, m[1][0] * v.a + m[1][1] * v.b};
}

LatticeVec GaloisInvolution::apply_dual(const LatticeVec& mv) const {
    return LatticeVec{m[0][0] * mv.a + m[1][0] * mv.b, m[0][1] * mv.a + m[1][1] * mv.b};
}

bool GaloisInvolution::is_identity() const {
    return m[0][0] == 1 && m[0][1] == 0 && m[1][0] == 0 && m[1][1] == 1;
}

GaloisInvolution GaloisInvolution::power(unsigned k) const {
    return (k % 2 == 0) ? identity() : *this;
}

GaloisInvolution GaloisInvolution::identity() { return GaloisInvolution(1, 0, 0, 1); }

GaloisInvolution GaloisInvolution::coordinate_swap() { return GaloisInvolution(0, 1, 1, 0); }

bool galois_check_invariance(const Fan2D& f, const GaloisInvolution& g) {
    for (const auto& r : f.rays()) {
        if (!f.contains_ray(g.apply(r))) return false;
    }
    return true;
}

std::vector<std::vector<LatticeVec>> ray_orbits(const Fan2D& f, const GaloisInvolution& g) {
    if (!galois_check_invariance(f, g))
        throw std::invalid_argument("fan is not invariant under the involution");
    std::vector<std::vector<LatticeVec>> orbits;
    std::vector<bool> seen(f.size(), false);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (seen[i]) continue;
        seen[i] = true;
        std::vector<LatticeVec> orbit{f.rays()[i]};
        LatticeVec im = g.apply(f.rays()[i]);
        if (!(im == f.rays()[i])) {
            for (std::size_t j = 0; j < f.size(); ++j) {
                if (f.rays()[j] == im) {
                    seen[j] = true;
                    orbit.push_back(im);
                    break;
                }
            }
        }
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

// rank of the g-fixed sublattice of M, i.e. 2 - rank(g^T - I)
static int fixed_char_rank(const GaloisInvolution& g) {
    i64 k00 = g.m[0][0] - 1, k01 = g.m[1][0];
    i64 k10 = g.m[0][1], k11 = g.m[1][1] - 1;
    i64 det = k00 * k11 - k01 * k10;
    if (det != 0) return 0;
    if (k00 != 0 || k01 != 0 || k10 != 0 || k11 != 0) return 1;
    return 2;
}

static void require_resolved_invariant(const Fan2D& f, const GaloisInvolution& g,
                                       const char* who) {
    if (!fan_is_complete(f)) throw std::invalid_argument(std::string(who) + ": fan not complete");
    if (!fan_is_smooth(f)) throw std::invalid_argument(std::string(who) + ": fan not smooth");
    if (!galois_check_invariance(f, g))
        throw std::invalid_argument(std::string(who) + ": fan not invariant");
}

int picard_rank_invariant(const Fan2D& f, const GaloisInvolution& g) {
    require_resolved_invariant(f, g, "picard_rank_invariant");
    return (int)ray_orbits(f, g).size() - fixed_char_rank(g);
}

int picard_rank_geometric(const Fan2D& f) {
    if (!fan_is_complete(f) || !fan_is_smooth(f))
        throw std::invalid_argument("picard_rank_geometric: fan must be complete and smooth");
    return (int)f.size() - 2;
}

int frobenius_trace_pic(const Fan2D& f, const GaloisInvolution& g) {
    require_resolved_invariant(f, g, "frobenius_trace_pic");
    int fixed = 0;
    for (const auto& r : f.rays()) {
        if (g.apply(r) == r) ++fixed;
    }
    return fixed - (int)g.trace();
}

GaloisInvolution frobenius_involution(std::uint64_t p) {
    if (p == 2) throw std::invalid_argument("bad reduction; use densities module");
    return (p % 4 == 1) ? GaloisInvolution::identity() : GaloisInvolution::coordinate_swap();
}

std::uint64_t point_count_fp(const Fan2D& f, std::uint64_t p, CountMethod method) {
    if (p == 2) throw std::invalid_argument("bad reduction; use densities module");
    if (!is_prime_u64(p)) throw std::invalid_argument("point_count_fp: p is not prime");
    GaloisInvolution frob = frobenius_involution(p);
    require_resolved_invariant(f, frob, "point_count_fp");

    if (method == CountMethod::trace) {
        i64 tr = frobenius_trace_pic(f, frob);
        return p * p + (u64)((i64)p * tr) + 1;
    }

    // dense torus: det(p*I - F) on the rank-2 character lattice
    i64 torus = (i64)(p * p) - frob.trace() * (i64)p + frob.det();
    u64 total = (u64)torus;

    const auto& rays = f.rays();
    for (const auto& r : rays) {
        if (!(frob.apply(r) == r)) continue;  // swapped pair of 1-orbits: no rational points
        // orbit-character line of a fixed ray: the primitive m with <m,r> = 0
        LatticeVec m0 = primitive_vector(-r.b, r.a);
        LatticeVec im = frob.apply_dual(m0);
        i64 eps;
        if (im == m0)
            eps = 1;
        else if (im.a == -m0.a && im.b == -m0.b)
            eps = -1;
        else
            throw std::logic_error("fixed ray with non-stable character line");
        total += (u64)((i64)p - eps);
    }

    for (std::size_t i = 0; i < rays.size(); ++i) {
        const auto& u = rays[i];
        const auto& v = rays[(i + 1) % rays.size()];
        LatticeVec gu = frob.apply(u), gv = frob.apply(v);
        if ((gu == u && gv == v) || (gu == v && gv == u)) total += 1;  // fixed torus-fixed point
    }
    return total;
}

Fan2D delta() {
    return Fan2D({{-1, -1}, {-1, 2}, {2, -1}});
}

Fan2D delta_tilde() {
    return Fan2D({{-1, -1}, {-1, 2}, {2, -1}, {-1, 0}, {-1, 1}, {0, 1}, {0, -1}, {1, -1}, {1, 0}});
}

} // namespace manin
