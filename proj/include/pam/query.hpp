// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tuple>

#include "pam/bijection.hpp"
#include "pam/gap.hpp"
#include "pam/reduction.hpp"

namespace pam {

struct QueryOptions {
    long long simulation_depth = 10000;  // fallback depth for unsupported shapes
    long long set_walk_horizon = 512;    // image-set iteration budget for set sources
};

// Point-to-point reachability. Injective two-piece maps are decided exactly
// by the structural case analysis; anything else falls back to bounded
// simulation (yes-with-witness or unknown).
Decision reach(const Pam& f, const Rational& x0, const Rational& t,
               const QueryOptions& opts = {});

// The general reduction from point-to-interval to point-to-point: carve the
// target interval out, send it to a fresh fixed value above the carrier and
// rescale; returns the new map with the transported start and target points.
std::tuple<Pam, Rational, Rational> point_to_interval_general(const Pam& f, const Rational& x0,
                                                              const Interval& I);

// Direct point-to-interval decision for injective two-piece maps.
Decision point_to_interval(const Pam& f, const Rational& x0, const Interval& I,
                           const QueryOptions& opts = {});

// Interval-to-interval: is some point of J0 mapped into J1 after some number
// of steps? Decided exactly for bijection and gap shapes; graph-easy shapes
// use an exact image-set walk that reports unknown if the components fail to
// settle within the configured horizon.
Decision interval_to_interval(const Pam& f, const Interval& J0, const Interval& J1,
                              const QueryOptions& opts = {});

// Is the orbit of x0 eventually periodic?
Decision periodic(const Pam& f, const Rational& x0, const QueryOptions& opts = {});

// The inverse of a two-piece bijection, itself a two-piece bijection.
Pam inverse_bijection(const Pam& f);

}  // namespace pam
