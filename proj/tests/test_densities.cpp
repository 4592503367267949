#include "doctest.h"

#include <cmath>

#include "manin/densities.hpp"
#include "manin/fan.hpp"

using namespace manin;

TEST_CASE("chi4 values and total multiplicativity") {
    CHECK(chi4(5) == 1);
    CHECK(chi4(3) == -1);
    CHECK(chi4(2) == 0);
    CHECK(chi4(-1) == -1);
    CHECK(chi4(-3) == 1);
    for (i64 m = -1000; m <= 1000; ++m) {
        for (i64 n : {-997ll, -64ll, -3ll, -1ll, 0ll, 1ll, 2ll, 9ll, 35ll, 999ll}) {
            CHECK(chi4(m * n) == chi4(m) * chi4(n));
        }
    }
}

TEST_CASE("sigma_local closed forms") {
    CHECK(sigma_local(2) == Rat(2));
    CHECK(sigma_local(3) == Rat(13, 9));
    CHECK(sigma_local(5) == Rat(61, 25));
    CHECK_THROWS(sigma_local(4));
}

TEST_CASE("omega_p_good matches sigma_local and the fan count for odd p <= 97") {
    CHECK(omega_p_good(3) == Rat(13, 9));
    CHECK(omega_p_good(5) == Rat(61, 25));
    CHECK(omega_p_good(13) == Rat(261, 169));
    CHECK_THROWS(omega_p_good(2));
    Fan2D resolved = delta_tilde();
    for (u64 p = 3; p <= 97; p += 2) {
        if (!is_prime_u64(p)) continue;
        Rat viaweil = omega_p_good(p);
        CHECK(viaweil == sigma_local(p));
        u64 pts = point_count_fp(resolved, p, CountMethod::orbit);
        CHECK(viaweil == Rat(Int(pts), Int(p) * Int(p)));
    }
}

TEST_CASE("local density oracle: exact N(2) and mod-81 convergence") {
    auto rep2 = local_density_oracle(2, 1);
    CHECK(rep2.count == 8);
    CHECK(rep2.oracle == Rat(1));
    CHECK(rep2.closed_form == Rat(2));
    CHECK(rep2.deviation == Rat(1));

    auto rep3 = local_density_oracle(3, 4);
    CHECK(rep3.deviation <= Rat(1, 20));  // within 0.05 of 13/9
    CHECK(rep3.closed_form == Rat(13, 9));

    CHECK_THROWS(local_density_oracle(4, 1));
    CHECK_THROWS(local_density_oracle(2, 16));  // budget: 2^32 > 1e9
}

TEST_CASE("oracle deviations decrease in k for small primes") {
    for (u64 p : {2ull, 3ull, 5ull, 13ull}) {
        std::vector<unsigned> ks;
        if (p == 2) ks = {2, 4, 6, 8};
        if (p == 3) ks = {1, 2, 3, 4};
        if (p == 5) ks = {1, 2, 3};
        if (p == 13) ks = {1, 2, 3};
        Rat prev = -1;
        for (unsigned k : ks) {
            Rat dev = local_density_oracle(p, k).deviation;
            if (prev >= 0) CHECK(dev < prev);
            prev = dev;
        }
    }
}

TEST_CASE("archimedean density: closed form and quadrature") {
    CHECK(omega_infty_closed() == doctest::Approx(3 * M_PI).epsilon(1e-15));
    auto q = omega_infty_quadrature(1e-3);
    CHECK(std::fabs(q.value - 3 * M_PI) <= 1e-3);
    CHECK(std::fabs(q.value - 3 * M_PI) <= q.error_bound);
    CHECK_THROWS(omega_infty_quadrature(1e-11));
}

TEST_CASE("euler factor spot values") {
    // p = 2: (1 - 1/2)^4 * 1 * 2 = 1/8
    Rat f2 = Rat(1, 16) * sigma_local(2);
    CHECK(f2 == Rat(1, 8));
    // p = 3: (2/3)^4 (4/3)^3 (13/9)
    Rat f3 = Rat(16, 81) * Rat(64, 27) * sigma_local(3);
    CHECK(f3 == Rat(16 * 64 * 13, 81 * 27 * 9));
}

TEST_CASE("the 1/p coefficient of the euler factor vanishes for odd p") {
    // expand (1-x)^4 (1-cx)^3 (1 + (2+3c+2c^2)x + c^2 x^2) symbolically
    for (int c : {-1, 1}) {
        std::vector<Rat> poly = {1};
        auto mul = [&](std::vector<Rat> q) {
            std::vector<Rat> out(poly.size() + q.size() - 1, Rat(0));
            for (std::size_t i = 0; i < poly.size(); ++i)
                for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += poly[i] * q[j];
            poly = out;
        };
        for (int i = 0; i < 4; ++i) mul({1, -1});
        for (int i = 0; i < 3; ++i) mul({1, -c});
        mul({1, Rat(2 + 3 * c + 2 * c * c), Rat(c * c)});
        CHECK(poly[0] == Rat(1));
        CHECK(poly[1] == Rat(0));  // no 1/p term
        // and per prime, the exact factor matches the polynomial evaluation
        for (u64 p : {3ull, 7ull, 11ull, 13ull, 97ull}) {
            if (chi4((i64)p) != c) continue;
            Rat x(1, (i64)p);
            Rat direct = 0;
            Rat pw = 1;
            for (const auto& coef : poly) {
                direct += coef * pw;
                pw *= x;
            }
            Rat viafactors = Rat(Int((i64)p - 1), Int((i64)p));
            viafactors = viafactors * viafactors * viafactors * viafactors;
            Rat g = Rat(Int((i64)p - c), Int((i64)p));
            viafactors *= g * g * g * sigma_local(p);
            CHECK(direct == viafactors);
        }
    }
}

TEST_CASE("tau intervals: certification and nesting") {
    EulerProduct a = tau_product(1000, 1e-1);
    EulerProduct b = tau_product(2000, 1e-1);
    CHECK(a.lo <= b.lo);
    CHECK(b.hi <= a.hi);
    CHECK(a.lo > 0);
    CHECK(a.hi - a.lo <= 2 * a.tail_bound * a.partial_product * (1 + 1e-12));
    CHECK_THROWS(tau_product(50, 1e-3));

    EulerProduct big = tau_product(200000, 1e-4);
    CHECK(big.certified);
    CHECK(big.lo <= b.hi);
    CHECK(b.lo <= big.hi);  // the intervals overlap around tau
}

TEST_CASE("peyre assembly") {
    EulerProduct unit;
    unit.partial_product = 1;
    unit.cutoff = 100;
    unit.lo = 1;
    unit.hi = 1;
    unit.certified = true;
    // identity assembly: everything forced to 1
    PeyreBreakdown triv = peyre_constant(unit, Rat(1), 1.0, 1.0);
    CHECK(triv.c_lo == doctest::Approx(1.0));
    CHECK(triv.c_hi == doctest::Approx(1.0));
    CHECK(triv.omega_2 == Rat(2));
    CHECK(triv.beta == Rat(1));

    PeyreBreakdown pb = peyre_constant(unit, Rat(7, 216));
    double expected = (7.0 / 216.0) * 3 * M_PI * std::pow(M_PI / 4, 3);
    CHECK(pb.c_lo == doctest::Approx(expected).epsilon(1e-12));
    CHECK(pb.lfun_limit == doctest::Approx(std::pow(M_PI / 4, 3) / 16).epsilon(1e-12));
}
