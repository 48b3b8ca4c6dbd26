// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pam/decision.hpp"
#include "pam/dyadic.hpp"
#include "pam/number_theory.hpp"

namespace pam {

// Canonical data of a surjective injective two-piece map with positive
// slopes. `canon` is the map the solver actually iterates: the input itself,
// or its reflection when c + d > 1 (then the carrier flags are mirrored and
// points transport through h(x) = 1 - x).
struct BijectionParams {
    Pam canon;
    Transport transport;
    bool reflected = false;
    bool pure_rotation = false;  // c + d = 1: the map is the rotation by d
    Rational c, d;               // canonical parameters, c + d <= 1
    Rational alpha, q1, q2;      // alpha = (1-c-d)/(cd), q1 = alpha+1, q2 = alpha*d+1

    explicit BijectionParams(Pam canon_) : canon(std::move(canon_)) {}

    Rational transported(const Rational& x) const { return reflected ? transport(x) : x; }
};

BijectionParams to_canonical(const Pam& f);

// Rotation angle tau = log(q2)/log(q1): either an exact rational p/q or the
// irrational marker (decided through the prime factorizations of q1, q2).
struct RotationRep {
    bool rational = false;
    long p = 0, q = 1;  // tau = p/q in lowest terms when rational
    Rational q1, q2;
};

RotationRep tau_rationality(const BijectionParams& params);

// x0 and t must already live on params.canon (transport applied).
Decision decide_pure_rotation(const BijectionParams& params, const Rational& x0,
                              const Rational& t);
Decision decide_bijection(const BijectionParams& params, const Rational& x0, const Rational& t);

// Convenience wrapper: canonicalize f, transport the points, dispatch.
Decision bijection_reach(const Pam& f, const Rational& x0, const Rational& t);

// Diagnostic check of the conjugacy to a circle rotation through rigorous
// enclosures of h(x) = log(alpha*x+1)/log(alpha+1); never used on the
// decision path.
struct ConjugacyReport {
    int samples = 0;
    int failures = 0;
    Rational max_width;
};

ConjugacyReport verify_conjugacy(const BijectionParams& params, int sample_count, long precision);

}  // namespace pam
