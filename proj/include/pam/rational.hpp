// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

#include "pam/errors.hpp"

namespace pam {

using Integer = mpz_class;

// Arbitrary-precision rational, always stored reduced with positive
// denominator. This is the universal scalar of the library: every map
// coefficient, orbit point and interval endpoint is a Rational.
class Rational {
  public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}                  // NOLINT(google-explicit-constructor)
    Rational(long n) : v_(n) {}                 // NOLINT(google-explicit-constructor)
    Rational(long long n) : v_(Integer(std::to_string(n))) {}  // NOLINT
    Rational(int n, int d) : Rational(Integer(n), Integer(d)) {}
    Rational(long n, long d) : Rational(Integer(n), Integer(d)) {}
    Rational(const Integer& n, const Integer& d);
    explicit Rational(const Integer& n) : v_(n) {}
    explicit Rational(mpq_class q);

    // Accepts "p", "p/q" and finite decimals like "0.25", with an optional
    // leading sign. The same grammar is shared by the PAM file format, the
    // loop DSL and the CLI.
    static Rational parse(const std::string& text);

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    Rational reciprocal() const;

    // Integer power; negative exponents require a nonzero base.
    Rational pow(long e) const;

    Integer floor() const;
    Integer ceil() const;

    // Fractional part in [0, 1).
    Rational frac() const { return *this - Rational(floor()); }

    // "p/q", or just "p" when the denominator is 1.
    std::string to_string() const;

    // Correctly rounded (nearest, ties away from zero) fixed-point decimal
    // rendering with `digits` places after the point.
    std::string to_decimal(int digits) const;

    double to_double() const { return v_.get_d(); }

  private:
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace pam
