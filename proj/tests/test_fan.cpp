#include "doctest.h"

#include <algorithm>
#include <set>

#include "manin/arith.hpp"
#include "manin/fan.hpp"

using namespace manin;

TEST_CASE("primitive_vector divides out the gcd") {
    CHECK(primitive_vector(2, -4) == LatticeVec{1, -2});
    CHECK(primitive_vector(-1, -1) == LatticeVec{-1, -1});
    CHECK(primitive_vector(6, 9) == LatticeVec{2, 3});
    CHECK_THROWS_WITH(primitive_vector(0, 0), "zero vector has no direction");
}

TEST_CASE("cone_index is the determinant obstruction") {
    CHECK(cone_index(Cone2D({-1, -1}, {-1, 2})) == 3);
    CHECK(cone_index(Cone2D({1, 0}, {0, 1})) == 1);
    CHECK(cone_index(Cone2D({2, -1}, {-1, -1})) == 3);
    CHECK_THROWS(Cone2D({1, 0}, {-1, 0}));  // parallel
    CHECK_THROWS(Cone2D({2, 0}, {0, 1}));   // non-primitive
}

TEST_CASE("completeness of the two surface fans") {
    CHECK(fan_is_complete(delta()));
    CHECK(fan_is_complete(delta_tilde()));
    CHECK(fan_is_complete(Fan2D({{1, 0}, {0, 1}, {-1, -1}, {1, 1}})));
    CHECK_THROWS(fan_is_complete(Fan2D({{1, 0}, {0, 1}})));
    // a genuine half-plane gap
    CHECK_FALSE(fan_is_complete(Fan2D({{1, 0}, {0, 1}, {1, 1}})));
}

TEST_CASE("smoothness: delta is singular, delta_tilde and the quadrant fan are smooth") {
    CHECK_FALSE(fan_is_smooth(delta()));
    auto idx = delta().cone_indices();
    CHECK(idx == std::vector<std::int64_t>{3, 3, 3});
    CHECK(fan_is_smooth(delta_tilde()));
    CHECK(fan_is_smooth(Fan2D({{1, 0}, {0, 1}, {-1, 0}, {0, -1}})));
}

TEST_CASE("hj_resolve turns delta into delta_tilde and fixes smooth fans") {
    Fan2D resolved = hj_resolve(delta());
    CHECK(resolved == delta_tilde());
    // exactly the six extra rays
    std::set<std::pair<i64, i64>> inserted;
    for (const auto& r : resolved.rays()) {
        if (!delta().contains_ray(r)) inserted.insert({r.a, r.b});
    }
    std::set<std::pair<i64, i64>> expected = {{-1, 0}, {-1, 1}, {0, 1}, {0, -1}, {1, -1}, {1, 0}};
    CHECK(inserted == expected);

    CHECK(hj_resolve(delta_tilde()) == delta_tilde());
    CHECK_THROWS(hj_resolve(Fan2D({{1, 0}, {0, 1}})));
}

TEST_CASE("hj_resolve output is smooth, complete, minimal on assorted singular fans") {
    std::vector<Fan2D> fans = {
        delta(),
        Fan2D({{1, 0}, {-1, 2}, {-1, -2}}),
        Fan2D({{1, 0}, {-2, 5}, {0, -1}}),
        Fan2D({{2, 1}, {-1, 1}, {-1, -3}}),
        Fan2D({{1, 2}, {-3, -1}, {2, -3}}),
    };
    for (const auto& f : fans) {
        Fan2D res = hj_resolve(f);
        CHECK(fan_is_complete(res));
        CHECK(fan_is_smooth(res));
        for (const auto& r : f.rays()) CHECK(res.contains_ray(r));
        // minimality: dropping any inserted ray breaks smoothness
        for (const auto& r : res.rays()) {
            if (f.contains_ray(r)) continue;
            std::vector<LatticeVec> fewer;
            for (const auto& s : res.rays())
                if (!(s == r)) fewer.push_back(s);
            Fan2D sub(fewer);
            CHECK((!fan_is_complete(sub) || !fan_is_smooth(sub)));
        }
    }
}

TEST_CASE("no proper subset of the inserted rays smooths delta") {
    auto all = delta_tilde().rays();
    std::vector<LatticeVec> inserted;
    for (const auto& r : all)
        if (!delta().contains_ray(r)) inserted.push_back(r);
    REQUIRE(inserted.size() == 6);
    for (unsigned mask = 0; mask + 1 < (1u << 6); ++mask) {
        std::vector<LatticeVec> rays = delta().rays();
        for (unsigned b = 0; b < 6; ++b)
            if (mask & (1u << b)) rays.push_back(inserted[b]);
        Fan2D sub((rays));
        CHECK((!fan_is_complete(sub) || !fan_is_smooth(sub)));
    }
}

TEST_CASE("galois invariance of the surface fans under the swap") {
    auto swap = GaloisInvolution::coordinate_swap();
    CHECK(galois_check_invariance(delta(), swap));
    CHECK(galois_check_invariance(delta_tilde(), swap));
    // breaking an orbit breaks invariance
    Fan2D broken({{1, 0}, {-1, 2}, {-1, -1}});
    CHECK_FALSE(galois_check_invariance(broken, swap));
    CHECK_THROWS(ray_orbits(broken, swap));
    CHECK_THROWS(GaloisInvolution(1, 1, 0, 1));  // shear is not an involution
}

TEST_CASE("ray orbits of the surface fans") {
    auto swap = GaloisInvolution::coordinate_swap();
    auto id = GaloisInvolution::identity();
    CHECK(ray_orbits(delta(), swap).size() == 2);
    CHECK(ray_orbits(delta_tilde(), swap).size() == 5);
    CHECK(ray_orbits(delta_tilde(), id).size() == 9);
    // orbit sizes over delta: {rho1} and {rho2, rho2'}
    auto orbits = ray_orbits(delta(), swap);
    std::multiset<std::size_t> sizes;
    for (const auto& o : orbits) sizes.insert(o.size());
    CHECK(sizes == std::multiset<std::size_t>{1, 2});
}

TEST_CASE("picard ranks") {
    auto swap = GaloisInvolution::coordinate_swap();
    auto id = GaloisInvolution::identity();
    CHECK(picard_rank_invariant(delta_tilde(), swap) == 4);
    CHECK(picard_rank_invariant(delta_tilde(), id) == 7);
    Fan2D quadric({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
    CHECK(picard_rank_invariant(quadric, id) == 2);
    CHECK(picard_rank_geometric(delta_tilde()) == 7);
    // identity rank always #rays - 2 on smooth complete invariant fans
    for (const auto& f : {delta_tilde(), quadric, Fan2D({{1, 0}, {0, 1}, {-1, -1}})}) {
        CHECK(picard_rank_invariant(f, id) == (int)f.size() - 2);
    }
}

TEST_CASE("frobenius trace on the geometric picard lattice") {
    auto swap = GaloisInvolution::coordinate_swap();
    auto id = GaloisInvolution::identity();
    CHECK(frobenius_trace_pic(delta_tilde(), id) == 7);   // 4 + 3*chi, chi = +1
    CHECK(frobenius_trace_pic(delta_tilde(), swap) == 1); // 4 + 3*chi, chi = -1
    CHECK(frobenius_trace_pic(Fan2D({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}), id) == 2);
    // periodicity in the power of the involution
    for (unsigned k = 0; k <= 6; ++k) {
        CHECK(frobenius_trace_pic(delta_tilde(), swap.power(k)) ==
              frobenius_trace_pic(delta_tilde(), swap.power(k % 2)));
    }
}

TEST_CASE("point counts over F_p: orbit and trace methods") {
    CHECK(point_count_fp(delta_tilde(), 5, CountMethod::trace) == 61);
    CHECK(point_count_fp(delta_tilde(), 5, CountMethod::orbit) == 61);
    CHECK(point_count_fp(delta_tilde(), 3, CountMethod::trace) == 13);
    CHECK(point_count_fp(delta_tilde(), 3, CountMethod::orbit) == 13);
    CHECK_THROWS_WITH(point_count_fp(delta_tilde(), 2, CountMethod::trace),
                      "bad reduction; use densities module");
    CHECK_THROWS(point_count_fp(delta_tilde(), 9, CountMethod::trace));

    for (u64 p = 3; p <= 97; p += 2) {
        if (!is_prime_u64(p)) continue;
        u64 orbit = point_count_fp(delta_tilde(), p, CountMethod::orbit);
        u64 trace = point_count_fp(delta_tilde(), p, CountMethod::trace);
        CHECK(orbit == trace);
        i64 chi = (p % 4 == 1) ? 1 : -1;
        CHECK(orbit == p * p + (u64)((i64)p * (4 + 3 * chi)) + 1);
    }
}

TEST_CASE("fan text round trip keeps the canonical ray order") {
    Fan2D f = delta_tilde();
    Fan2D g(std::vector<LatticeVec>(f.rays().rbegin(), f.rays().rend()));
    CHECK(f == g);
}
