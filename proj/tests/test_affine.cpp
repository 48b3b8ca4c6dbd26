// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "oracle.hpp"
#include "pam/affine.hpp"

using namespace pam;

namespace {
Rational iterate_map(const AffineMap& g, Rational x, long long n) {
    for (long long i = 0; i < n; ++i) x = g(x);
    return x;
}
}  // namespace

TEST_CASE("closed form equals iterated evaluation") {
    CHECK(closed_form(AffineMap(Rational(1, 2), Rational(1, 2)), Rational(0), 3) ==
          Rational(7, 8));
    CHECK(closed_form(AffineMap(Rational(1), Rational(1, 3)), Rational(0), 3) == Rational(1));
    CHECK(closed_form(AffineMap(Rational(-5, 7), Rational(2)), Rational(1, 3), 0) ==
          Rational(1, 3));

    testing::Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        AffineMap g(rng.rational(-40, 40, 13), rng.rational(-40, 40, 13));
        Rational x = rng.rational(-20, 20, 13);
        long long n = rng.integer(0, 30);
        CHECK(closed_form(g, x, n) == iterate_map(g, x, n));
    }
}

TEST_CASE("fixed points cover the three regimes") {
    FixedPointResult r = fixed_point(AffineMap(Rational(1, 2), Rational(1, 2)));
    CHECK(r.kind == FixedPointResult::Kind::one);
    CHECK(r.value == Rational(1));
    CHECK(fixed_point(AffineMap(Rational(1), Rational(1, 3))).kind ==
          FixedPointResult::Kind::none);
    CHECK(fixed_point(AffineMap(Rational(1), Rational(0))).kind == FixedPointResult::Kind::all);
    r = fixed_point(AffineMap(Rational(0), Rational(1, 4)));
    CHECK(r.kind == FixedPointResult::Kind::one);
    CHECK(r.value == Rational(1, 4));
}

TEST_CASE("hits_point on the worked examples") {
    AffineMap g(Rational(1, 2), Rational(1, 2));
    auto a = hits_point(g, Rational(0), Rational(7, 8));
    CHECK(a.outcome == AffineOrbitAnswer::Outcome::hit);
    CHECK(a.index == 3);
    a = hits_point(g, Rational(0), Rational(1, 3));
    CHECK(a.outcome == AffineOrbitAnswer::Outcome::never);
    a = hits_point(AffineMap(Rational(1), Rational(-1, 4)), Rational(1), Rational(0));
    CHECK(a.outcome == AffineOrbitAnswer::Outcome::hit);
    CHECK(a.index == 4);
}

TEST_CASE("every hit verifies and every never survives brute force") {
    testing::Rng rng(12);
    for (int i = 0; i < 300; ++i) {
        AffineMap g(rng.rational(-30, 30, 11), rng.rational(-30, 30, 11));
        Rational x0 = rng.rational(-10, 10, 11);
        Rational t = rng.flip() ? iterate_map(g, x0, rng.integer(0, 12))
                                : rng.rational(-10, 10, 11);
        auto a = hits_point(g, x0, t);
        if (a.outcome == AffineOrbitAnswer::Outcome::hit) {
            CHECK(iterate_map(g, x0, a.index) == t);
            // minimality
            Rational x = x0;
            for (long long n = 0; n < a.index; ++n) {
                CHECK(x != t);
                x = g(x);
            }
        } else {
            Rational x = x0;
            for (int n = 0; n <= 2000; ++n) {
                CHECK(x != t);
                x = g(x);
            }
        }
    }
}

TEST_CASE("hits_interval distinguishes entry, escape and trapping") {
    auto a = hits_interval(AffineMap(Rational(4, 3), Rational(0)), Rational(1, 5),
                           Interval::closed_open(Rational(1, 2), Rational(1)));
    CHECK(a.outcome == AffineOrbitAnswer::Outcome::hit);
    CHECK(a.index == 4);

    a = hits_interval(AffineMap(Rational(1, 2), Rational(1, 2)), Rational(0),
                      Interval::closed_open(Rational(0), Rational(1)));
    CHECK(a.outcome == AffineOrbitAnswer::Outcome::always_in);

    a = hits_interval(AffineMap(Rational(1), Rational(1, 3)), Rational(0),
                      Interval::closed_open(Rational(0), Rational(1)));
    CHECK(a.outcome == AffineOrbitAnswer::Outcome::escapes);
    CHECK(a.index == 3);
}

TEST_CASE("interval answers agree with brute force") {
    testing::Rng rng(13);
    for (int i = 0; i < 300; ++i) {
        AffineMap g(rng.rational(-30, 30, 9), rng.rational(-30, 30, 9));
        Rational x0 = rng.rational(-6, 6, 9);
        Rational lo = rng.rational(-6, 6, 9);
        Rational hi = lo + rng.rational(1, 12, 9).abs() + Rational(1, 100);
        Interval I(lo, hi, rng.flip(), rng.flip());
        auto a = hits_interval(g, x0, I);

        auto simulate_first = [&](bool inside) {
            Rational x = x0;
            for (long long n = 0; n <= 3000; ++n) {
                if (I.contains(x) != inside) return n;  // first flip
                x = g(x);
            }
            return -1ll;
        };
        if (I.contains(x0)) {
            long long exit = simulate_first(true);
            if (a.outcome == AffineOrbitAnswer::Outcome::always_in) {
                CHECK(exit == -1);
            } else {
                REQUIRE(a.outcome == AffineOrbitAnswer::Outcome::escapes);
                CHECK(a.index == exit);
            }
        } else {
            long long entry = simulate_first(false);
            if (a.outcome == AffineOrbitAnswer::Outcome::never) {
                CHECK(entry == -1);
            } else {
                REQUIRE(a.outcome == AffineOrbitAnswer::Outcome::hit);
                CHECK(a.index == entry);
            }
        }
    }
}

TEST_CASE("monotone distance certificates hold along contracting orbits") {
    testing::Rng rng(14);
    for (int i = 0; i < 100; ++i) {
        Rational a = rng.unit_rational(31);
        if (a.is_zero()) continue;
        if (rng.flip()) a = -a;
        AffineMap g(a, rng.rational(-8, 8, 9));
        Rational fp = g.b / (Rational(1) - g.a);
        Rational x = rng.rational(-4, 4, 9);
        if (x == fp) continue;
        Rational dist = (x - fp).abs();
        for (int n = 0; n < 50; ++n) {
            x = g(x);
            Rational next = (x - fp).abs();
            CHECK(next < dist);
            dist = next;
        }
    }
}

TEST_CASE("affine_set_first_meet agrees with interval marching") {
    testing::Rng rng(15);
    for (int i = 0; i < 200; ++i) {
        AffineMap g(rng.rational(-20, 20, 7), rng.rational(-20, 20, 7));
        Rational u = rng.rational(-5, 5, 7);
        Interval K(u, u + rng.rational(1, 10, 7).abs() + Rational(1, 50), true, false);
        Rational v = rng.rational(-5, 5, 7);
        Interval T(v, v + rng.rational(1, 10, 7).abs() + Rational(1, 50), true, false);
        auto m = affine_set_first_meet(g, K, T);

        Interval cur = K;
        std::optional<long long> expect;
        for (long long n = 0; n <= 500; ++n) {
            if (intervals_intersect(cur, T)) {
                expect = n;
                break;
            }
            cur = cur.affine_image(g.a, g.b);
        }
        if (expect) {
            REQUIRE(m.has_value());
            CHECK(*m == *expect);
        } else if (m) {
            CHECK(*m > 500);
        }
    }
}
