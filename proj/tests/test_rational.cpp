// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "pam/rational.hpp"

using namespace pam;

TEST_CASE("rationals stay reduced with positive denominators") {
    Rational r(Integer(4), Integer(-6));
    CHECK(r.num() == -2);
    CHECK(r.den() == 3);
    CHECK(Rational(0, 5).to_string() == "0");
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), Error);
}

TEST_CASE("parsing accepts integers, fractions and finite decimals") {
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational::parse("0.5") == Rational(1, 2));
    CHECK(Rational::parse("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse(".5") == Rational(1, 2));
    CHECK(Rational::parse("+2/4") == Rational(1, 2));
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("a"), Error);
    CHECK_THROWS_AS(Rational::parse("1e3"), Error);
}

TEST_CASE("arithmetic and comparisons are exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(a > b);
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(5, 2).frac() == Rational(1, 2));
    CHECK(Rational(-1, 4).frac() == Rational(3, 4));
}

TEST_CASE("serialization round-trips through the shared grammar") {
    for (const char* s : {"0", "1", "-1", "2/3", "-7/9", "355/113"}) {
        CHECK(Rational::parse(s).to_string() == s);
    }
}

TEST_CASE("decimal rendering is correctly rounded") {
    CHECK(Rational(1, 3).to_decimal(6) == "0.333333");
    CHECK(Rational(2, 3).to_decimal(6) == "0.666667");
    CHECK(Rational(1, 2).to_decimal(0) == "1");  // ties away from zero
    CHECK(Rational(-1, 8).to_decimal(3) == "-0.125");
    CHECK(Rational(3, 4).to_decimal(2) == "0.75");
    CHECK(Rational(0).to_decimal(4) == "0.0000");
}
