// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/affine.hpp"

#include <algorithm>

namespace pam {

namespace {
constexpr long long kIterationCap = 1000000;

[[noreturn]] void cap_exceeded(const char* where) {
    throw ResourceLimit(std::string("iteration cap exceeded in ") + where);
}
}  // namespace

Rational closed_form(const AffineMap& g, const Rational& x, long long n) {
    if (n < 0) throw Error("closed_form requires n >= 0");
    if (g.a == Rational(1)) return x + Rational(n) * g.b;
    Rational an = g.a.pow(n);
    return an * x + (an - 1) / (g.a - 1) * g.b;
}

FixedPointResult fixed_point(const AffineMap& g) {
    if (g.a == Rational(1)) {
        if (g.b.is_zero()) return {FixedPointResult::Kind::all, Rational(0)};
        return {FixedPointResult::Kind::none, Rational(0)};
    }
    return {FixedPointResult::Kind::one, g.b / (Rational(1) - g.a)};
}

AffineOrbitAnswer hits_point(const AffineMap& g, const Rational& x0, const Rational& t) {
    if (t == x0) return AffineOrbitAnswer::hit(0, "t equals x0");
    if (g.a.is_zero())
        return t == g.b ? AffineOrbitAnswer::hit(1, "constant map value")
                        : AffineOrbitAnswer::never("constant orbit x0, b, b, ...");
    if (g.a == Rational(1)) {
        if (g.b.is_zero()) return AffineOrbitAnswer::never("identity map");
        Rational q = (t - x0) / g.b;
        if (q.is_integer() && q > Rational(0)) {
            if (!q.num().fits_slong_p())
                throw ResourceLimit("arithmetic-progression witness does not fit a machine word");
            return AffineOrbitAnswer::hit(q.num().get_si(), "arithmetic progression");
        }
        return AffineOrbitAnswer::never("arithmetic progression misses t");
    }
    if (g.a == Rational(-1)) {
        if (t == g.b - x0) return AffineOrbitAnswer::hit(1, "period-2 orbit");
        return AffineOrbitAnswer::never("period-2 orbit {x0, b-x0} misses t");
    }

    Rational fp = g.b / (Rational(1) - g.a);
    if (x0 == fp) return AffineOrbitAnswer::never("x0 is the fixed point, t differs");
    if (t == fp) return AffineOrbitAnswer::never("t is the fixed point, never attained");

    Rational dist_t = (t - fp).abs();
    bool contracting = g.a.abs() < Rational(1);
    Rational x = x0;
    Rational d = (x0 - fp).abs();
    if (contracting && d <= dist_t)
        return AffineOrbitAnswer::never("|x0 - fp| already <= |t - fp|, distances shrink");
    if (!contracting && d >= dist_t)
        return AffineOrbitAnswer::never("|x0 - fp| already >= |t - fp|, distances grow");
    for (long long n = 1; n <= kIterationCap; ++n) {
        x = g(x);
        if (x == t) return AffineOrbitAnswer::hit(n, "exact iterate");
        d = (x - fp).abs();
        if (contracting && d < dist_t)
            return AffineOrbitAnswer::never("distance to fp dropped below |t - fp|");
        if (!contracting && d > dist_t)
            return AffineOrbitAnswer::never("distance to fp grew past |t - fp|");
    }
    cap_exceeded("hits_point");
}

namespace {

// Membership helpers that treat I's flags exactly.
bool above_interval(const Rational& x, const Interval& I) {
    return x > I.hi || (x == I.hi && !I.hi_closed);
}
bool below_interval(const Rational& x, const Interval& I) {
    return x < I.lo || (x == I.lo && !I.lo_closed);
}

// first_exit for a == 1, b != 0 via exact division plus a small local scan.
AffineOrbitAnswer exit_translation(const AffineMap& g, const Rational& x0, const Interval& I) {
    Rational bound = g.b > Rational(0) ? I.hi : I.lo;
    Rational steps = (bound - x0) / g.b;  // >= 0
    if (!steps.floor().fits_slong_p())
        throw ResourceLimit("escape index does not fit a machine word");
    long long n = std::max(1l, steps.floor().get_si());
    while (n > 1 && !I.contains(closed_form(g, x0, n - 1))) --n;
    while (I.contains(closed_form(g, x0, n))) ++n;
    return AffineOrbitAnswer::escapes(n, "arithmetic progression crosses the boundary");
}

AffineOrbitAnswer exit_positive_slope(const AffineMap& g, const Rational& x0, const Interval& I) {
    // 0 < a, a != 1; x0 in I.
    Rational fp = g.b / (Rational(1) - g.a);
    if (x0 == fp) return AffineOrbitAnswer::always_in("x0 is the fixed point");
    bool increasing = g(x0) > x0;  // strictly monotone toward/away from fp
    if (g.a < Rational(1)) {
        // Converges monotonically to fp; the value range is [x0, fp) or (fp, x0].
        if (increasing && fp <= I.hi)
            return AffineOrbitAnswer::always_in("orbit increases toward fp inside I");
        if (!increasing && fp >= I.lo)
            return AffineOrbitAnswer::always_in("orbit decreases toward fp inside I");
    }
    Rational x = x0;
    for (long long n = 1; n <= kIterationCap; ++n) {
        x = g(x);
        if (!I.contains(x)) return AffineOrbitAnswer::escapes(n, "first exact exit");
    }
    cap_exceeded("first_exit");
}

AffineOrbitAnswer entry_translation(const AffineMap& g, const Rational& x0, const Interval& I) {
    // a == 1, b != 0, x0 outside I.
    bool inc = g.b > Rational(0);
    if (inc && above_interval(x0, I)) return AffineOrbitAnswer::never("moving up, already past I");
    if (!inc && below_interval(x0, I))
        return AffineOrbitAnswer::never("moving down, already past I");
    Rational target = inc ? I.lo : I.hi;
    Rational steps = (target - x0) / g.b;
    if (!steps.floor().fits_slong_p())
        throw ResourceLimit("entry index does not fit a machine word");
    long long n = std::max(0l, steps.floor().get_si() - 1);
    for (long long k = n; k <= n + 3; ++k) {
        if (k >= 1 && I.contains(closed_form(g, x0, k)))
            return AffineOrbitAnswer::hit(k, "arithmetic progression lands in I");
    }
    // The progression stepped over I entirely.
    return AffineOrbitAnswer::never("progression jumps over I");
}

AffineOrbitAnswer entry_positive_slope(const AffineMap& g, const Rational& x0, const Interval& I) {
    // 0 < a, a != 1; x0 outside I.
    Rational fp = g.b / (Rational(1) - g.a);
    if (x0 == fp) return AffineOrbitAnswer::never("x0 is the fixed point outside I");
    bool increasing = g(x0) > x0;
    if (g.a < Rational(1)) {
        // Value range [x0 -> fp), exclusive at fp. If it misses I, done;
        // otherwise iterate, re-certifying with the shrinking range.
        Rational x = x0;
        for (long long n = 0; n <= kIterationCap; ++n) {
            if (n > 0 && I.contains(x)) return AffineOrbitAnswer::hit(n, "first exact entry");
            Interval range = increasing ? Interval(x, fp, true, false)
                                        : Interval(fp, x, false, true);
            if (!intervals_intersect(range, I))
                return AffineOrbitAnswer::never("remaining orbit range misses I");
            x = g(x);
        }
        cap_exceeded("first_entry");
    }
    // a > 1: diverges monotonically.
    if (increasing && above_interval(x0, I))
        return AffineOrbitAnswer::never("diverging upward, already past I");
    if (!increasing && below_interval(x0, I))
        return AffineOrbitAnswer::never("diverging downward, already past I");
    Rational x = x0;
    for (long long n = 1; n <= kIterationCap; ++n) {
        x = g(x);
        if (I.contains(x)) return AffineOrbitAnswer::hit(n, "first exact entry");
        if (increasing && above_interval(x, I))
            return AffineOrbitAnswer::never("diverging orbit jumped over I");
        if (!increasing && below_interval(x, I))
            return AffineOrbitAnswer::never("diverging orbit jumped over I");
    }
    cap_exceeded("first_entry");
}

}  // namespace

AffineOrbitAnswer first_exit(const AffineMap& g, const Rational& x0, const Interval& I) {
    if (!I.contains(x0)) throw PreconditionViolated("first_exit: x0 not in I");
    if (g.a.is_zero()) {
        return I.contains(g.b) ? AffineOrbitAnswer::always_in("constant value stays in I")
                               : AffineOrbitAnswer::escapes(1, "constant value outside I");
    }
    if (g.a == Rational(1)) {
        if (g.b.is_zero()) return AffineOrbitAnswer::always_in("identity map");
        return exit_translation(g, x0, I);
    }
    if (g.a == Rational(-1)) {
        return I.contains(g(x0)) ? AffineOrbitAnswer::always_in("period-2 orbit inside I")
                                 : AffineOrbitAnswer::escapes(1, "second phase point outside I");
    }
    if (g.a > Rational(0)) return exit_positive_slope(g, x0, I);

    // a < 0, a != -1: split into the two phases of g^2 (positive slope).
    AffineMap g2 = g.compose(g);
    Rational x1 = g(x0);
    AffineOrbitAnswer even = first_exit(g2, x0, I);
    if (!I.contains(x1)) return AffineOrbitAnswer::escapes(1, "second phase point outside I");
    AffineOrbitAnswer odd = first_exit(g2, x1, I);
    bool even_in = even.outcome == AffineOrbitAnswer::Outcome::always_in;
    bool odd_in = odd.outcome == AffineOrbitAnswer::Outcome::always_in;
    if (even_in && odd_in) return AffineOrbitAnswer::always_in("both g^2 phases stay in I");
    long long e = kIterationCap * 4;
    if (!even_in) e = std::min(e, 2 * even.index);
    if (!odd_in) e = std::min(e, 2 * odd.index + 1);
    return AffineOrbitAnswer::escapes(e, "phase analysis of g^2");
}

AffineOrbitAnswer first_entry(const AffineMap& g, const Rational& x0, const Interval& I) {
    if (I.contains(x0)) throw PreconditionViolated("first_entry: x0 already in I");
    if (g.a.is_zero()) {
        return I.contains(g.b) ? AffineOrbitAnswer::hit(1, "constant value in I")
                               : AffineOrbitAnswer::never("constant value outside I");
    }
    if (g.a == Rational(1)) {
        if (g.b.is_zero()) return AffineOrbitAnswer::never("identity map, x0 outside I");
        return entry_translation(g, x0, I);
    }
    if (g.a == Rational(-1)) {
        return I.contains(g(x0)) ? AffineOrbitAnswer::hit(1, "period-2 orbit")
                                 : AffineOrbitAnswer::never("period-2 orbit misses I");
    }
    if (g.a > Rational(0)) return entry_positive_slope(g, x0, I);

    AffineMap g2 = g.compose(g);
    Rational x1 = g(x0);
    AffineOrbitAnswer even = first_entry(g2, x0, I);
    AffineOrbitAnswer odd = I.contains(x1) ? AffineOrbitAnswer::hit(0, "phase point in I")
                                           : first_entry(g2, x1, I);
    bool even_hit = even.outcome == AffineOrbitAnswer::Outcome::hit;
    bool odd_hit = odd.outcome == AffineOrbitAnswer::Outcome::hit;
    if (!even_hit && !odd_hit) return AffineOrbitAnswer::never("both g^2 phases miss I");
    long long n = -1;
    if (even_hit) n = 2 * even.index;
    if (odd_hit) {
        long long no = 2 * odd.index + 1;
        n = n < 0 ? no : std::min(n, no);
    }
    return AffineOrbitAnswer::hit(n, "phase analysis of g^2");
}

AffineOrbitAnswer hits_interval(const AffineMap& g, const Rational& x0, const Interval& I) {
    return I.contains(x0) ? first_exit(g, x0, I) : first_entry(g, x0, I);
}

bool affine_orbit_finite(const AffineMap& g, const Rational& x0) {
    if (g.a.is_zero()) return true;                       // x0, b, b, ...
    if (g.a == Rational(1)) return g.b.is_zero();         // translation
    if (g.a == Rational(-1)) return true;                 // period 2
    return x0 == g.b / (Rational(1) - g.a);               // only the fixed point
}

namespace {

// Hull of g^n(K) union the fixed point, open at fp when K sits strictly on
// one side of it (those orbit intervals never attain fp).
Interval contracting_hull(const Interval& cur, const Rational& fp) {
    if (cur.contains(fp)) {
        Rational lo = min(cur.lo, fp), hi = max(cur.hi, fp);
        return Interval(lo, hi, cur.lo_closed || lo == fp, cur.hi_closed || hi == fp);
    }
    if (cur.hi <= fp) {
        bool at = cur.hi == fp && cur.hi_closed;
        return Interval(cur.lo, fp, cur.lo_closed, at);
    }
    bool at = cur.lo == fp && cur.lo_closed;
    return Interval(fp, cur.hi, at, cur.hi_closed);
}

}  // namespace

std::optional<long long> affine_set_first_meet(const AffineMap& g, const Interval& K,
                                               const Interval& T) {
    if (intervals_intersect(K, T)) return 0;
    if (g.a.is_zero())
        return T.contains(g.b) ? std::optional<long long>(1) : std::nullopt;
    if (g.a == Rational(1)) {
        if (g.b.is_zero()) return std::nullopt;
        bool inc = g.b > Rational(0);
        Interval cur = K;
        for (long long n = 1; n <= kIterationCap; ++n) {
            cur = cur.affine_image(g.a, g.b);
            if (intervals_intersect(cur, T)) return n;
            if (inc && cur.lo >= T.hi) return std::nullopt;
            if (!inc && cur.hi <= T.lo) return std::nullopt;
        }
        cap_exceeded("affine_set_first_meet");
    }
    if (g.a == Rational(-1)) {
        Interval flipped = K.affine_image(g.a, g.b);
        return intervals_intersect(flipped, T) ? std::optional<long long>(1) : std::nullopt;
    }
    if (g.a < Rational(0)) {
        AffineMap g2 = g.compose(g);
        auto even = affine_set_first_meet(g2, K, T);
        auto odd = affine_set_first_meet(g2, K.affine_image(g.a, g.b), T);
        std::optional<long long> best;
        if (even) best = 2 * *even;
        if (odd) {
            long long v = 2 * *odd + 1;
            best = best ? std::min(*best, v) : v;
        }
        return best;
    }

    Rational fp = g.b / (Rational(1) - g.a);
    Interval cur = K;
    if (g.a < Rational(1)) {
        for (long long n = 1; n <= kIterationCap; ++n) {
            cur = cur.affine_image(g.a, g.b);
            if (intervals_intersect(cur, T)) return n;
            if (!intervals_intersect(contracting_hull(cur, fp), T)) return std::nullopt;
        }
        cap_exceeded("affine_set_first_meet");
    }
    // a > 1: expanding away from fp.
    for (long long n = 1; n <= kIterationCap; ++n) {
        cur = cur.affine_image(g.a, g.b);
        if (intervals_intersect(cur, T)) return n;
        if (cur.lo > T.hi && cur.lo >= fp) return std::nullopt;
        if (cur.hi < T.lo && cur.hi <= fp) return std::nullopt;
    }
    cap_exceeded("affine_set_first_meet");
}

}  // namespace pam
