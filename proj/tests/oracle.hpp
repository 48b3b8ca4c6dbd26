// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Test-only helpers: the brute-force simulation oracle and deterministic
// random instance generators. The oracle only uses exact evaluation, never
// the decision machinery it cross-checks.
#pragma once

#include <optional>
#include <random>

#include "pam/pam.hpp"
#include "pam/pam_io.hpp"

namespace pam::testing {

inline std::optional<long long> brute_force_reach(const Pam& f, const Rational& x0,
                                                  const Rational& t, long long depth) {
    Rational x = x0;
    for (long long n = 0; n <= depth; ++n) {
        if (x == t) return n;
        x = f.eval(x).value;
    }
    return std::nullopt;
}

inline std::optional<long long> brute_force_enters(const Pam& f, const Rational& x0,
                                                   const Interval& I, long long depth) {
    Rational x = x0;
    for (long long n = 0; n <= depth; ++n) {
        if (I.contains(x)) return n;
        x = f.eval(x).value;
    }
    return std::nullopt;
}

// Deterministic RNG so failures replay exactly.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}

    long integer(long lo, long hi) {
        std::uniform_int_distribution<long> d(lo, hi);
        return d(gen);
    }
    // Random rational with denominator <= max_den, in [0, 1).
    Rational unit_rational(long max_den) {
        long den = integer(1, max_den);
        long num = integer(0, den - 1);
        return Rational(num, den);
    }
    Rational rational(long num_lo, long num_hi, long max_den) {
        long den = integer(1, max_den);
        long num = integer(num_lo, num_hi);
        return Rational(num, den);
    }
    bool flip() { return integer(0, 1) == 1; }
};

// The worked instances used throughout the suite.
inline Pam intro_map() {
    return parse_pam_text("carrier 0 1\n"
                          "piece 0 1/2 2/3 2/3\n"
                          "piece 1/2 1 4/3 -2/3\n");
}

inline Pam expanding_map() {  // both slopes 4/3, not injective
    return parse_pam_text("carrier 0 1\n"
                          "piece 0 1/2 4/3 0\n"
                          "piece 1/2 1 4/3 -1/3\n");
}

// Bijection with parameters (c, d), pieces ((1-d)/c)x + d and
// (d/(1-c))x - cd/(1-c).
inline Pam bijection_map(const Rational& c, const Rational& d) {
    Rational one(1);
    std::vector<Piece> pieces;
    pieces.push_back({Interval::closed_open(Rational(0), c), AffineMap((one - d) / c, d)});
    pieces.push_back(
        {Interval::closed_open(c, one), AffineMap(d / (one - c), -c * d / (one - c))});
    return Pam(Interval::closed_open(Rational(0), one), std::move(pieces));
}

// Gap-family map f(x) = lambda x + delta on [0, c), mu(lambda x + delta - 1)
// on [c, 1), with c = (1 - delta)/lambda.
inline Pam gap_map(const Rational& lambda, const Rational& mu, const Rational& delta) {
    Rational c = (Rational(1) - delta) / lambda;
    std::vector<Piece> pieces;
    pieces.push_back({Interval::closed_open(Rational(0), c), AffineMap(lambda, delta)});
    pieces.push_back({Interval::closed_open(c, Rational(1)),
                      AffineMap(lambda * mu, mu * (delta - Rational(1)))});
    return Pam(Interval::closed_open(Rational(0), Rational(1)), std::move(pieces));
}

// The negative-slope instance used by the lemma tests:
// x/4 + 11/16 on [0, 1/2), -3x/4 + 1 on [1/2, 1).
inline Pam neg1_map() {
    return parse_pam_text("carrier 0 1\n"
                          "piece 0 1/2 1/4 11/16\n"
                          "piece 1/2 1 -3/4 1\n");
}

// Twist-satisfying instance for the iterated reduction:
// x/2 + 1/3 on [0, 1/2), -x/3 + 5/12 on [1/2, 1); two levels deep.
inline Pam neg2_map() {
    return parse_pam_text("carrier 0 1\n"
                          "piece 0 1/2 1/2 1/3\n"
                          "piece 1/2 1 -1/3 5/12\n");
}

// Random member of the gap family: lambda in (0, 1), mu > 0, and delta
// strictly between 1 - lambda and d_{lambda,mu}. Mirrored variants come from
// reflecting the construction.
inline Pam random_gap_map(Rng& rng, long max_den = 12) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        long ld = rng.integer(2, max_den);
        Rational lambda(rng.integer(1, ld - 1), ld);
        Rational mu(rng.integer(1, 2 * max_den), rng.integer(1, max_den));
        Rational d_bound = lambda * mu < Rational(1)
                               ? Rational(1)
                               : (mu - lambda * mu) / (mu - Rational(1));
        Rational lo = Rational(1) - lambda;
        if (d_bound <= lo) continue;
        long steps = rng.integer(1, 15);
        Rational delta = lo + (d_bound - lo) * Rational(steps, 16l);
        try {
            Pam f = gap_map(lambda, mu, delta);
            if (classify(f).shape != Shape::middle_gap) continue;
            return f;
        } catch (const Error&) {
            continue;
        }
    }
    throw Error("random gap instance generation failed");
}

// Random injective two-piece map with coefficient denominators <= max_den.
// Produced by rejection sampling over the coefficient grid: slopes in
// [-2, 2] \ {0}, offsets in [0, 1), then exact validation.
inline Pam random_injective_two_piece(Rng& rng, long max_den = 32) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        long cd = rng.integer(2, max_den);
        long cn = rng.integer(1, cd - 1);
        Rational c(cn, cd);
        auto slope = [&]() {
            long den = rng.integer(1, max_den);
            long num = rng.integer(1, 2 * den);
            Rational a(num, den);
            return rng.flip() ? a : -a;
        };
        Rational a1 = slope(), a2 = slope();
        Rational b1 = rng.unit_rational(max_den), b2 = rng.unit_rational(max_den);
        try {
            std::vector<Piece> pieces;
            pieces.push_back({Interval::closed_open(Rational(0), c), AffineMap(a1, b1)});
            pieces.push_back({Interval::closed_open(c, Rational(1)), AffineMap(a2, b2)});
            Pam f(Interval::closed_open(Rational(0), Rational(1)), std::move(pieces));
            if (!classify(f).injective) continue;
            return f;
        } catch (const InvalidPam&) {
            continue;
        }
    }
    throw Error("random instance generation failed");
}

}  // namespace pam::testing
