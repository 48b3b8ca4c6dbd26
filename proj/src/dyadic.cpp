// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/dyadic.hpp"

#include <algorithm>

namespace pam {

Rational Dyadic::to_rational() const {
    if (exp >= 0) {
        Integer m = mant;
        mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(exp));
        return Rational(m);
    }
    Integer d(1);
    mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(-exp));
    return Rational(mant, d);
}

std::string Dyadic::to_string() const {
    return mant.get_str() + "*2^" + std::to_string(exp);
}

Dyadic Dyadic::floor_of(const Rational& x, long prec) {
    // floor(x * 2^prec) / 2^prec
    Integer n = x.num();
    Integer d = x.den();
    if (prec >= 0)
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(prec));
    else
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(-prec));
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return Dyadic{q, -prec};
}

Dyadic Dyadic::ceil_of(const Rational& x, long prec) {
    Integer n = x.num();
    Integer d = x.den();
    if (prec >= 0)
        mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(prec));
    else
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), static_cast<unsigned long>(-prec));
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return Dyadic{q, -prec};
}

DyadicInterval::DyadicInterval(const Rational& lo, const Rational& hi, long prec) {
    if (hi < lo) throw Error("dyadic interval with hi < lo");
    lo_ = Dyadic::floor_of(lo, prec);
    hi_ = Dyadic::ceil_of(hi, prec);
}

DyadicInterval add(const DyadicInterval& a, const DyadicInterval& b, long prec) {
    return DyadicInterval(a.lo() + b.lo(), a.hi() + b.hi(), prec);
}

DyadicInterval sub(const DyadicInterval& a, const DyadicInterval& b, long prec) {
    return DyadicInterval(a.lo() - b.hi(), a.hi() - b.lo(), prec);
}

DyadicInterval mul(const DyadicInterval& a, const DyadicInterval& b, long prec) {
    Rational c1 = a.lo() * b.lo(), c2 = a.lo() * b.hi(), c3 = a.hi() * b.lo(),
             c4 = a.hi() * b.hi();
    Rational lo = min(min(c1, c2), min(c3, c4));
    Rational hi = max(max(c1, c2), max(c3, c4));
    return DyadicInterval(lo, hi, prec);
}

DyadicInterval div(const DyadicInterval& a, const DyadicInterval& b, long prec) {
    if (b.lo() <= Rational(0) && Rational(0) <= b.hi())
        throw Error("dyadic interval division by an interval containing zero");
    Rational c1 = a.lo() / b.lo(), c2 = a.lo() / b.hi(), c3 = a.hi() / b.lo(),
             c4 = a.hi() / b.hi();
    Rational lo = min(min(c1, c2), min(c3, c4));
    Rational hi = max(max(c1, c2), max(c3, c4));
    return DyadicInterval(lo, hi, prec);
}

DyadicInterval scale(const DyadicInterval& a, const Rational& c, long prec) {
    if (c >= Rational(0)) return DyadicInterval(a.lo() * c, a.hi() * c, prec);
    return DyadicInterval(a.hi() * c, a.lo() * c, prec);
}

DyadicInterval shift(const DyadicInterval& a, const Rational& c, long prec) {
    return DyadicInterval(a.lo() + c, a.hi() + c, prec);
}

std::string DyadicInterval::to_string() const {
    return "[" + lo().to_string() + ", " + hi().to_string() + "]";
}

namespace {

// Exact partial sum of atanh(z) = sum z^(2i+1)/(2i+1) together with a
// rigorous tail bound T <= eps, so atanh(z) lies in [S - T, S + T].
// Requires |z| <= 1/3 (always true after argument reduction).
std::pair<Rational, Rational> atanh_with_tail(const Rational& z, const Rational& eps) {
    Rational z2 = z * z;
    Rational term = z;  // z^(2i+1)
    Rational sum(0);
    Rational one(1);
    long i = 0;
    while (true) {
        sum += term / Rational(2 * i + 1);
        term *= z2;
        ++i;
        // Tail after i terms: sum_{j>=i} |z|^(2j+1)/(2j+1)
        //   <= |z|^(2i+1) / ((2i+1)(1 - z^2)).
        Rational tail = term.abs() / (Rational(2 * i + 1) * (one - z2));
        if (tail <= eps) return {sum, tail};
        if (i > 100000) throw ResourceLimit("atanh series did not converge");
    }
}

// ln 2 = 2*atanh(1/3).
std::pair<Rational, Rational> ln2_with_tail(const Rational& eps) {
    auto [s, t] = atanh_with_tail(Rational(1, 3), eps / 2);
    return {s * 2, t * 2};
}

}  // namespace

DyadicInterval log_enclosure(const Rational& x, long precision) {
    if (x <= Rational(0)) throw Error("log of a nonpositive rational");
    if (precision < 1) precision = 1;

    // Reduce x = 2^k * y with y in [3/4, 3/2), so z = (y-1)/(y+1) in [-1/7, 1/5].
    Rational y = x;
    long k = 0;
    const Rational hi_cut(3, 2), lo_cut(3, 4);
    while (y >= hi_cut) {
        y /= 2;
        ++k;
    }
    while (y < lo_cut) {
        y *= 2;
        --k;
    }

    long kb = 1;
    for (long a = std::abs(k); a > 0; a >>= 1) ++kb;
    Rational eps_y = Rational(1, 2).pow(precision + 4);
    Rational eps_ln2 = Rational(1, 2).pow(precision + 4 + kb);

    auto [sy, ty] = atanh_with_tail((y - 1) / (y + 1), eps_y);
    Rational lo = sy * 2 - ty * 2, hi = sy * 2 + ty * 2;
    if (k != 0) {
        auto [s2, t2] = ln2_with_tail(eps_ln2);
        Rational l2lo = (s2 - t2) * k, l2hi = (s2 + t2) * k;
        if (k < 0) std::swap(l2lo, l2hi);
        lo += l2lo;
        hi += l2hi;
    }
    return DyadicInterval(lo, hi, precision + 2);
}

}  // namespace pam
