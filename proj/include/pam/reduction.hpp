// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "pam/decision.hpp"

namespace pam {

// Reachability when the interval reachability graph has no cycles beyond
// self-loops: walk the trajectory interval by interval, deciding each phase
// with a single affine map. Works for any piece count, injective or not.
Decision decide_dag(const Pam& f, const Rational& x0, const Rational& t);

// Reachability when every vertex has a unique outgoing edge: the orbit
// follows a fixed vertex path into a cycle of length p, and f^p is affine on
// each interval along it.
Decision decide_functional_graph(const Pam& f, const Rational& x0, const Rational& t);

// One structural reduction step: a map on a sub-carrier whose orbits are the
// original orbits watched only inside that sub-carrier. piece_cost[i] tells
// how many original steps one application of produced piece i represents.
struct ReductionStep {
    std::string kind;
    Pam produced;
    std::optional<Rational> cutpoint;  // c' (neg1) or c_k (neg2 level)
    std::vector<int> piece_cost;
    Transport transport;  // nontrivial for reflect/rescale steps
    std::string note;
};

// First-return acceleration onto the domain of piece `keep` of a two-piece
// map: points whose image stays there apply the piece once, the rest compose
// with the other piece and come back. Only valid when the images cooperate
// (the produced map's constructor checks); both negative-slope lemmas are
// instances of it.
ReductionStep accelerate_first_return(const Pam& f, size_t keep, const std::string& kind);

// Lemma-style acceleration for a2 < 0 with the cutpoint inside the second
// image: g lives on I2, applying f once or twice per step. The boundary case
// f2(c) = c is not accepted here (the caller handles the fixed point).
ReductionStep reduce_neg1(const Pam& f);

// Iterated first-piece acceleration for a2 < 0 < a1 with the cutpoint inside
// the first image: the full level sequence g1, ..., gK, ending when the new
// cutpoint leaves the image of the first map.
std::vector<ReductionStep> reduce_neg2(const Pam& f);

// Complete dispatcher for injective two-piece maps with a negative slope.
Decision decide_negative(const Pam& f, const Rational& x0, const Rational& t);

// Shared internal entry point: decides reachability for any map whose
// reduction closure stays within the graph-easy and negative-slope cases.
// The query engine uses it for easy shapes, the negative path recurses on it.
Decision reach_easy_or_negative(const Pam& f, const Rational& x0, const Rational& t,
                                ReductionTrace& trace, int depth);

}  // namespace pam
