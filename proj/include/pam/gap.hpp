// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pam/decision.hpp"
#include "pam/dyadic.hpp"
#include "pam/reduction.hpp"

namespace pam {

// Canonical data of an injective, positive-slope, non-surjective two-piece
// map whose images touch both carrier ends (gap strictly in the middle):
//      f(x) = lambda x + delta          on the lower piece,
//      f(x) = mu (lambda x + delta - 1) on the upper piece,
// with 0 < lambda < 1, mu > 0 and 1 - lambda < delta < d_{lambda,mu}.
// `canon` is the map the solver iterates (the input, or its reflection when
// the contracting piece was the second one).
struct GapParams {
    Pam canon;
    Transport transport;
    bool reflected = false;
    Rational lambda, mu, delta;
    Rational cut;      // (1 - delta)/lambda, the common piece boundary
    Rational d_bound;  // d_{lambda,mu}

    explicit GapParams(Pam canon_) : canon(std::move(canon_)) {}

    Rational transported(const Rational& x) const { return reflected ? transport(x) : x; }
    Interval transported(const Interval& iv) const;
    IntervalSet transported(const IntervalSet& s) const;

    // rho = p/q <= r_{lambda,mu}, decided exactly as lambda^q mu^p <= 1
    // (log is monotone, so no enclosures are needed).
    bool rho_le_bound(long p, long q) const;
};

GapParams to_gap_params(const Pam& f);

// Side-gap handling: when the cutpoint misses the span of the two images the
// map is graph-easy; otherwise restrict f to that span and rescale it onto
// the unit interval. piece_cost stays 1 (restriction keeps the clock).
ReductionStep side_gap_restrict(const Pam& f);

// The unique attracting cycle with its rotation number.
struct CycleInfo {
    long p = 0;                    // points in the upper piece
    long q = 1;                    // cycle length; rho = p/q, gcd(p, q) = 1
    std::vector<Rational> points;  // in orbit order, starting at the minimum
    std::vector<int> word;         // branch (1 or 2) taken at each point
    Rational contraction;          // lambda^q mu^p < 1

    long index_of(const Rational& x) const;  // -1 when x is not on the cycle
};

CycleInfo rotation_and_cycle(const GapParams& params, long long depth_cap = 10000);

// Rigorous enclosure of the Hecke-Mahler series value Phi(x) of width
// <= 2^-precision, truncated blockwise with an exact geometric tail bound.
DyadicInterval hecke_mahler_phi(const GapParams& params, long p, long q, const Rational& x,
                                long precision);

// After N, the target t (not on the cycle) is outside f^n(U): every
// component of f^n(U) clings to a cycle point and is shorter than d_min.
struct ThresholdCert {
    Rational t;
    Rational d_min;
    long long N = 0;
};

ThresholdCert threshold(const GapParams& params, const CycleInfo& cycle, const Rational& t);

// Point-to-point reachability on a middle-gap map.
Decision decide_gap(const Pam& f, const Rational& x0, const Rational& t);

// Does some point of S reach the set T under the middle-gap map f?
// S components must be carrier subsets; a degenerate S asks about a single
// starting point. This is the engine behind the interval query variants.
Decision gap_set_reach(const Pam& f, const IntervalSet& S, const IntervalSet& T);

}  // namespace pam
