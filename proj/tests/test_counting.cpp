#include "doctest.h"

#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "manin/counting.hpp"

using namespace manin;

namespace {

u64 r2_brute(u64 n) {
    u64 count = 0;
    u64 s = isqrt_u64(n);
    for (i64 a = -(i64)s; a <= (i64)s; ++a) {
        u64 rest = n - (u64)(a * a);
        u64 b = isqrt_u64(rest);
        if (b * b == rest) count += (b == 0) ? 1 : 2;
    }
    return count;
}

}  // namespace

TEST_CASE("factor table basics") {
    FactorTable ft(1000);
    auto f = ft.factor(360);
    CHECK(f == std::vector<std::pair<u64, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(ft.factor(997) == std::vector<std::pair<u64, unsigned>>{{997, 1}});
    // fallback above the sieve limit
    CHECK(ft.factor(1009 * 1009) == std::vector<std::pair<u64, unsigned>>{{1009, 2}});
    CHECK_THROWS(ft.factor(0));
}

TEST_CASE("r2 spot values and brute-force agreement") {
    FactorTable ft(10000);
    CHECK(r2(1, ft) == 4);
    CHECK(r2(25, ft) == 12);
    CHECK(r2(3, ft) == 0);
    CHECK_THROWS(r2(0, ft));
    for (u64 n = 1; n <= 10000; ++n) CHECK(r2(n, ft) == r2_brute(n));
}

TEST_CASE("fast count equals brute force on small bounds") {
    FactorTable ft(128);
    CHECK(fast_count(1, ft).count == 4);
    CHECK(fast_count(2, ft).count == 4);
    CHECK(fast_count(4, ft).count == 12);
    for (u64 B = 1; B <= 128; ++B) {
        CHECK(fast_count(B, ft).count == brute_force_count(B).count);
    }
}

TEST_CASE("descent count equals fast count on small bounds") {
    FactorTable ft(160);
    for (u64 B = 1; B <= 160; ++B) {
        CHECK(descent_count(B, ft).count == fast_count(B, ft).count);
    }
}

TEST_CASE("counts are divisible by four and nondecreasing") {
    FactorTable ft(200);
    u64 prev = 0;
    for (u64 B = 1; B <= 200; ++B) {
        u64 c = fast_count(B, ft).count;
        CHECK(c % 4 == 0);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("threaded fast count is identical") {
    FactorTable ft(3000);
    CHECK(fast_count(3000, ft, 3).count == fast_count(3000, ft, 1).count);
    CHECK(descent_count(1200, ft, 2).count == descent_count(1200, ft, 1).count);
}

TEST_CASE("descent tuples: worked examples and the spec's missing point") {
    FactorTable ft(100);
    auto t = descent_tuple_for_point(SurfacePoint(4, 1, 1, 2), ft);
    REQUIRE(t.has_value());
    CHECK(t->n0 == 1);
    CHECK(t->n1 == 2);
    CHECK(t->n2 == 1);
    CHECK(t->n3 == 1);
    CHECK((t->y1 == 1 && t->y2 == 1));

    auto u = descent_tuple_for_point(SurfacePoint(1, 0, 1, 1), ft);
    REQUIRE(u.has_value());
    CHECK((u->n0 == 1 && u->n1 == 1 && u->n2 == 1 && u->n3 == 1));

    // x0 = 8 needs the cube part: (n0,n1,n2,n3) = (2,1,1,1)
    auto v = descent_tuple_for_point(SurfacePoint(8, 1, 0, 2), ft);
    REQUIRE(v.has_value());
    CHECK(v->n0 == 2);
    CHECK((v->n1 == 1 && v->n2 == 1 && v->n3 == 1));

    CHECK_FALSE(descent_tuple_for_point(normalize_point(0, 1, 1, 0), ft).has_value());
}

TEST_CASE("descent tuples satisfy the constraint set and are collision-free") {
    const u64 B = 500;
    FactorTable ft(B);
    auto points = enumerate_points(B);
    std::set<std::array<u64, 4>> seen;
    for (const auto& p : points) {
        auto t = descent_tuple_for_point(p, ft);
        REQUIRE(t.has_value());
        // constraint set
        for (auto [q, e] : ft.factor(t->n2)) {
            (void)q;
            CHECK(e == 1);  // n2 squarefree
        }
        CHECK(std::gcd(t->n0, t->n2 * t->n3) == 1);
        // map back to the point
        CHECK(t->n0 * t->n0 * t->n0 * t->n1 * t->n1 * t->n2 == (u64)p.x0);
        CHECK(t->n0 * t->n1 * t->n2 * t->n3 == (u64)p.x3);
        CHECK(t->y1 * t->y1 + t->y2 * t->y2 == (i64)(t->n1 * t->n2 * t->n2 * t->n3 * t->n3 * t->n3));
        seen.insert({t->n0, t->n1, t->n2, t->n3});
    }
    // tuples repeat only across the y-circle, never across distinct (x0, x3)
    std::set<std::pair<u64, u64>> x_pairs;
    for (const auto& p : points) x_pairs.insert({(u64)p.x0, (u64)p.x3});
    CHECK(seen.size() == x_pairs.size());
}

TEST_CASE("fit_q on synthetic inputs") {
    std::vector<std::pair<u64, u64>> lin;
    for (unsigned k = 4; k <= 20; k += 2) lin.emplace_back(1ull << k, 1ull << k);  // N = B
    QFit f1 = fit_q(lin);
    CHECK(std::fabs(f1.c3) < 1e-9);
    CHECK(std::fabs(f1.c2) < 1e-9);
    CHECK(std::fabs(f1.c1) < 1e-9);
    CHECK(f1.c0 == doctest::Approx(1.0).epsilon(1e-9));

    std::vector<std::pair<u64, u64>> cubic;
    for (unsigned k = 4; k <= 20; k += 2) {
        u64 B = 1ull << k;
        double L = std::log((double)B);
        cubic.emplace_back(B, (u64)std::llround((double)B * L * L * L));
    }
    QFit f2 = fit_q(cubic);
    CHECK(f2.c3 == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS(fit_q({{1, 1}, {2, 2}}));                    // too few samples
    std::vector<std::pair<u64, u64>> narrow;
    for (u64 B = 10; B < 20; ++B) narrow.emplace_back(B, B);  // below two decades
    CHECK_THROWS(fit_q(narrow));
}
