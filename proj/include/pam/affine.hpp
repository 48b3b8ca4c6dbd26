// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "pam/interval.hpp"

namespace pam {

struct AffineMap {
    Rational a, b;  // x -> a*x + b

    AffineMap() : a(1), b(0) {}
    AffineMap(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}

    Rational operator()(const Rational& x) const { return a * x + b; }

    bool is_identity() const { return a == Rational(1) && b.is_zero(); }

    // (f.compose(g))(x) = f(g(x)).
    AffineMap compose(const AffineMap& inner) const {
        return AffineMap(a * inner.a, a * inner.b + b);
    }
    AffineMap inverse() const {
        if (a.is_zero()) throw Error("constant affine map has no inverse");
        return AffineMap(a.reciprocal(), -b / a);
    }

    std::string to_string() const { return a.to_string() + "*x + " + b.to_string(); }

    friend bool operator==(const AffineMap& f, const AffineMap& g) {
        return f.a == g.a && f.b == g.b;
    }
};

// g^n(x) in closed form: a^n x + (a^n - 1)/(a - 1) b, or x + n b when a = 1.
Rational closed_form(const AffineMap& g, const Rational& x, long long n);

struct FixedPointResult {
    enum class Kind { none, one, all };
    Kind kind = Kind::none;
    Rational value;  // meaningful for kind == one
};

FixedPointResult fixed_point(const AffineMap& g);

// Outcome of an orbit question for a single affine map.
//  - hit(n): g^n(x0) satisfies the query (equals t, or enters I), minimal n
//  - never: certified non-occurrence
//  - always_in: the orbit stays in I forever (only for hits_interval with
//    x0 in I)
//  - escapes(n): first index leaving I (only for hits_interval with x0 in I)
struct AffineOrbitAnswer {
    enum class Outcome { hit, never, always_in, escapes };
    Outcome outcome;
    long long index = 0;
    std::string certificate;

    static AffineOrbitAnswer hit(long long n, std::string why) {
        return {Outcome::hit, n, std::move(why)};
    }
    static AffineOrbitAnswer never(std::string why) { return {Outcome::never, 0, std::move(why)}; }
    static AffineOrbitAnswer always_in(std::string why) {
        return {Outcome::always_in, 0, std::move(why)};
    }
    static AffineOrbitAnswer escapes(long long n, std::string why) {
        return {Outcome::escapes, n, std::move(why)};
    }
};

// Is there n >= 0 with g^n(x0) = t? Returns hit(n) with minimal n, or never.
AffineOrbitAnswer hits_point(const AffineMap& g, const Rational& x0, const Rational& t);

// Orbit-versus-interval query. For x0 outside I: hit(n) with the first entry
// index, or never. For x0 inside I: escapes(n) with the first exit index, or
// always_in.
AffineOrbitAnswer hits_interval(const AffineMap& g, const Rational& x0, const Interval& I);

// First n >= 1 with g^n(x0) outside I (requires x0 in I), or always_in.
AffineOrbitAnswer first_exit(const AffineMap& g, const Rational& x0, const Interval& I);
// First n >= 1 with g^n(x0) in I (requires x0 outside I), or never.
AffineOrbitAnswer first_entry(const AffineMap& g, const Rational& x0, const Interval& I);

// Is the orbit of x0 under g a finite set?
bool affine_orbit_finite(const AffineMap& g, const Rational& x0);

// First n >= 0 such that the interval g^n(K) meets T, or nullopt if that
// never happens (certified). Exact over endpoint flags.
std::optional<long long> affine_set_first_meet(const AffineMap& g, const Interval& K,
                                               const Interval& T);

}  // namespace pam
