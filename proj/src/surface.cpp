#include "manin/surface.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

namespace manin {

std::string to_string(PointClass c) {
    switch (c) {
        case PointClass::generic_u: return "generic_U";
        case PointClass::on_line_l1: return "on_line_l1";
        case PointClass::on_line_l2: return "on_line_l2";
        case PointClass::on_line_l3: return "on_line_l3";
        case PointClass::singular_xi1: return "singular_xi1";
        case PointClass::singular_xi2_or_xi3: return "singular_xi2_or_xi3";
    }
    return "?";
}

bool is_on_surface(i64 x0, i64 x1, i64 x2, i64 x3) {
    if (x0 == 0 && x1 == 0 && x2 == 0 && x3 == 0)
        throw std::invalid_argument("zero tuple is not a projective point");
    Int lhs = Int(x0) * (Int(x1) * x1 + Int(x2) * x2);
    Int rhs = Int(x3) * x3 * x3;
    return lhs == rhs;
}

SurfacePoint::SurfacePoint(i64 x0_, i64 x1_, i64 x2_, i64 x3_)
    : x0(x0_), x1(x1_), x2(x2_), x3(x3_) {
    if (!is_on_surface(x0, x1, x2, x3))
        throw std::invalid_argument("tuple does not satisfy the surface equation");
    u64 g = gcd_u64(gcd_u64(abs_u64(x0), abs_u64(x1)), gcd_u64(abs_u64(x2), abs_u64(x3)));
    if (g != 1) throw std::invalid_argument("tuple is not primitive");
    bool canonical;
    if (x3 != 0) canonical = x3 > 0;
    else if (x0 != 0) canonical = x0 > 0;
    else if (x1 != 0) canonical = x1 > 0;
    else canonical = x2 > 0;
    if (!canonical) throw std::invalid_argument("tuple is not in canonical sign form");
}

SurfacePoint normalize_point(i64 x0, i64 x1, i64 x2, i64 x3) {
    if (x0 == 0 && x1 == 0 && x2 == 0 && x3 == 0)
        throw std::invalid_argument("zero tuple is not a projective point");
    u64 g = gcd_u64(gcd_u64(abs_u64(x0), abs_u64(x1)), gcd_u64(abs_u64(x2), abs_u64(x3)));
    x0 /= (i64)g;
    x1 /= (i64)g;
    x2 /= (i64)g;
    x3 /= (i64)g;
    bool flip;
    if (x3 != 0) flip = x3 < 0;
    else if (x0 != 0) flip = x0 < 0;
    else if (x1 != 0) flip = x1 < 0;
    else flip = x2 < 0;
    if (flip) {
        x0 = -x0;
        x1 = -x1;
        x2 = -x2;
        x3 = -x3;
    }
    return SurfacePoint(x0, x1, x2, x3);
}

PointClass classify_point(const SurfacePoint& p) {
    if (p.x3 == 0 && p.x1 == 0 && p.x2 == 0) return PointClass::singular_xi1;
    if (p.x3 == 0 && p.x0 == 0) return PointClass::on_line_l3;
    // x3 = 0 with x0 != 0 forces x1^2 + x2^2 = 0 over Q, i.e. xi1; the l1/l2
    // and xi2/xi3 tags are unreachable on rational points and kept only for
    // completeness of the classification.
    return PointClass::generic_u;
}

bool height_leq(const SurfacePoint& p, u64 B) {
    if (B == 0) throw std::invalid_argument("height bound must be positive");
    if (abs_u64(p.x0) > B || abs_u64(p.x3) > B) return false;
    Int norm = Int(p.x1) * p.x1 + Int(p.x2) * p.x2;
    return norm <= Int(B) * B;
}

double height_real(const SurfacePoint& p) {
    double n = std::sqrt((double)p.x1 * p.x1 + (double)p.x2 * p.x2);
    double h = std::max((double)abs_u64(p.x0), n);
    return std::max(h, (double)abs_u64(p.x3));
}

namespace {

// visit every counted tuple with x3 in [lo, hi]
template <typename F>
void scan_range(u64 B, u64 lo, u64 hi, F&& visit) {
    const u128 B2 = (u128)B * B;
    for (u64 x3 = lo; x3 <= hi; ++x3) {
        const u128 cube = (u128)x3 * x3 * x3;
        for (u64 x0 = 1; x0 <= B; ++x0) {
            if (cube % x0 != 0) continue;
            u128 m_wide = cube / x0;
            if (m_wide > B2) continue;
            u64 m = (u64)m_wide;
            u64 s = isqrt_u64(m);
            for (i64 x1 = -(i64)s; x1 <= (i64)s; ++x1) {
                u64 rest = m - (u64)(x1 * x1);
                u64 x2 = isqrt_u64(rest);
                if (x2 * x2 != rest) continue;
                u64 g0 = gcd_u64(gcd_u64(x0, x3), gcd_u64(abs_u64(x1), x2));
                if (g0 != 1) continue;
                visit(x0, x1, (i64)x2, x3);
                if (x2 != 0) visit(x0, x1, -(i64)x2, x3);
            }
        }
    }
}

}  // namespace

CountRecord brute_force_count(u64 B, unsigned workers) {
    if (B == 0) throw std::invalid_argument("height bound must be positive");
    auto t0 = std::chrono::steady_clock::now();
    u64 total = 0;
    if (workers <= 1 || B < 16) {
        scan_range(B, 1, B, [&](u64, i64, i64, u64) { ++total; });
    } else {
        std::vector<u64> partial(workers, 0);
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                u64 lo = 1 + (B * w) / workers;
                u64 hi = (B * (w + 1)) / workers;
                u64 c = 0;
                scan_range(B, lo, hi, [&](u64, i64, i64, u64) { ++c; });
                partial[w] = c;
            });
        }
        for (auto& t : pool) t.join();
        for (unsigned w = 0; w < workers; ++w) total += partial[w];  // fixed order
    }
    auto t1 = std::chrono::steady_clock::now();
    return CountRecord{B, total, "brute",
                       std::chrono::duration<double>(t1 - t0).count()};
}

std::vector<SurfacePoint> enumerate_points(u64 B) {
    std::vector<SurfacePoint> out;
    scan_range(B, 1, B, [&](u64 x0, i64 x1, i64 x2, u64 x3) {
        out.emplace_back((i64)x0, x1, x2, (i64)x3);
    });
    return out;
}

} // namespace manin
