// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "pam/rational.hpp"

namespace pam {

// A dyadic rational mant * 2^exp with arbitrary-precision mantissa.
struct Dyadic {
    Integer mant;
    long exp = 0;

    Rational to_rational() const;
    std::string to_string() const;

    // Largest multiple of 2^-prec that is <= x (resp. smallest >= x).
    static Dyadic floor_of(const Rational& x, long prec);
    static Dyadic ceil_of(const Rational& x, long prec);
};

// A closed interval [lo, hi] with dyadic endpoints. Every operation rounds
// outward, so an enclosure of the inputs always yields an enclosure of the
// exact result. The precision argument is absolute: endpoints land on the
// grid of multiples of 2^-prec.
class DyadicInterval {
  public:
    DyadicInterval() : DyadicInterval(Rational(0), Rational(0), 0) {}
    DyadicInterval(const Rational& lo, const Rational& hi, long prec);

    static DyadicInterval enclose(const Rational& x, long prec) {
        return DyadicInterval(x, x, prec);
    }

    Rational lo() const { return lo_.to_rational(); }
    Rational hi() const { return hi_.to_rational(); }
    const Dyadic& lo_dyadic() const { return lo_; }
    const Dyadic& hi_dyadic() const { return hi_; }
    Rational width() const { return hi() - lo(); }

    bool contains(const Rational& x) const { return lo() <= x && x <= hi(); }
    bool overlaps(const DyadicInterval& o) const { return lo() <= o.hi() && o.lo() <= hi(); }
    bool certainly_less_than(const Rational& r) const { return hi() < r; }
    bool certainly_greater_than(const Rational& r) const { return lo() > r; }

    friend DyadicInterval add(const DyadicInterval& a, const DyadicInterval& b, long prec);
    friend DyadicInterval sub(const DyadicInterval& a, const DyadicInterval& b, long prec);
    friend DyadicInterval mul(const DyadicInterval& a, const DyadicInterval& b, long prec);
    // Throws Error when the divisor interval contains 0.
    friend DyadicInterval div(const DyadicInterval& a, const DyadicInterval& b, long prec);
    friend DyadicInterval scale(const DyadicInterval& a, const Rational& c, long prec);
    friend DyadicInterval shift(const DyadicInterval& a, const Rational& c, long prec);

    std::string to_string() const;

  private:
    Dyadic lo_, hi_;
};

// Rigorous enclosure of ln(x) for x > 0 with width <= 2^-precision.
DyadicInterval log_enclosure(const Rational& x, long precision);

}  // namespace pam
