// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pam/rational.hpp"

namespace pam {

// An interval with explicit endpoint flags. The default is the half-open
// [lo, hi) convention, but reflection through 1-x and images under negative
// slopes produce every other combination, so both flags are carried exactly.
// Degenerate single-point intervals are allowed (lo == hi, both closed).
struct Interval {
    Rational lo, hi;
    bool lo_closed = true;
    bool hi_closed = false;

    Interval() : lo(0), hi(0), lo_closed(true), hi_closed(true) {}
    Interval(Rational lo, Rational hi, bool lo_closed, bool hi_closed);

    static Interval closed_open(const Rational& lo, const Rational& hi) {
        return Interval(lo, hi, true, false);
    }
    static Interval open_closed(const Rational& lo, const Rational& hi) {
        return Interval(lo, hi, false, true);
    }
    static Interval closed(const Rational& lo, const Rational& hi) {
        return Interval(lo, hi, true, true);
    }
    static Interval open(const Rational& lo, const Rational& hi) {
        return Interval(lo, hi, false, false);
    }
    static Interval point(const Rational& x) { return Interval(x, x, true, true); }

    bool is_point() const { return lo == hi; }
    Rational length() const { return hi - lo; }
    bool contains(const Rational& x) const;
    // True when every point of `other` lies in *this.
    bool contains(const Interval& other) const;
    bool is_nonempty_interior() const { return lo < hi; }

    // Image under x -> a*x + b, with flags flipped for a < 0 and collapsed
    // to a point for a == 0.
    Interval affine_image(const Rational& a, const Rational& b) const;
    // Preimage under x -> a*x + b; requires a != 0.
    Interval affine_preimage(const Rational& a, const Rational& b) const;

    std::string to_string() const;

    friend bool operator==(const Interval& x, const Interval& y) {
        return x.lo == y.lo && x.hi == y.hi && x.lo_closed == y.lo_closed &&
               x.hi_closed == y.hi_closed;
    }
};

bool intervals_intersect(const Interval& a, const Interval& b);
std::optional<Interval> interval_intersection(const Interval& a, const Interval& b);

// True when a and b are disjoint but their union is an interval
// (they share the boundary point with complementary flags).
bool intervals_adjacent(const Interval& a, const Interval& b);

// Finite union of pairwise-disjoint intervals, kept sorted and maximally
// merged.
class IntervalSet {
  public:
    IntervalSet() = default;
    explicit IntervalSet(const Interval& iv) { parts_.push_back(iv); }
    explicit IntervalSet(std::vector<Interval> parts);

    static IntervalSet empty() { return IntervalSet(); }

    bool is_empty() const { return parts_.empty(); }
    const std::vector<Interval>& components() const { return parts_; }
    size_t component_count() const { return parts_.size(); }

    bool contains(const Rational& x) const;
    bool intersects(const Interval& iv) const;
    bool intersects(const IntervalSet& o) const;
    IntervalSet intersect(const Interval& iv) const;
    IntervalSet unite(const IntervalSet& o) const;
    Rational measure() const;

    bool operator==(const IntervalSet& o) const { return parts_ == o.parts_; }

    std::string to_string() const;

  private:
    std::vector<Interval> parts_;
};

}  // namespace pam
