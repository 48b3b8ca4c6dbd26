// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/interval.hpp"

#include <algorithm>

namespace pam {

Interval::Interval(Rational lo_, Rational hi_, bool lc, bool hc)
    : lo(std::move(lo_)), hi(std::move(hi_)), lo_closed(lc), hi_closed(hc) {
    if (lo > hi || (lo == hi && !(lo_closed && hi_closed)))
        throw Error("empty or inverted interval " + to_string());
}

bool Interval::contains(const Rational& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
}

bool Interval::contains(const Interval& o) const {
    bool lo_ok = lo < o.lo || (lo == o.lo && (lo_closed || !o.lo_closed));
    bool hi_ok = hi > o.hi || (hi == o.hi && (hi_closed || !o.hi_closed));
    return lo_ok && hi_ok;
}

Interval Interval::affine_image(const Rational& a, const Rational& b) const {
    if (a.is_zero()) return Interval::point(b);
    if (a > Rational(0)) return Interval(a * lo + b, a * hi + b, lo_closed, hi_closed);
    return Interval(a * hi + b, a * lo + b, hi_closed, lo_closed);
}

Interval Interval::affine_preimage(const Rational& a, const Rational& b) const {
    if (a.is_zero()) throw Error("preimage under a constant map is not an interval");
    return affine_image(a.reciprocal(), -b / a);
}

std::string Interval::to_string() const {
    return std::string(lo_closed ? "[" : "(") + lo.to_string() + ", " + hi.to_string() +
           (hi_closed ? "]" : ")");
}

bool intervals_intersect(const Interval& a, const Interval& b) {
    bool left_ok = a.lo < b.hi || (a.lo == b.hi && a.lo_closed && b.hi_closed);
    bool right_ok = b.lo < a.hi || (b.lo == a.hi && b.lo_closed && a.hi_closed);
    return left_ok && right_ok;
}

std::optional<Interval> interval_intersection(const Interval& a, const Interval& b) {
    if (!intervals_intersect(a, b)) return std::nullopt;
    Rational lo;
    bool lc;
    if (a.lo > b.lo) {
        lo = a.lo;
        lc = a.lo_closed;
    } else if (b.lo > a.lo) {
        lo = b.lo;
        lc = b.lo_closed;
    } else {
        lo = a.lo;
        lc = a.lo_closed && b.lo_closed;
    }
    Rational hi;
    bool hc;
    if (a.hi < b.hi) {
        hi = a.hi;
        hc = a.hi_closed;
    } else if (b.hi < a.hi) {
        hi = b.hi;
        hc = b.hi_closed;
    } else {
        hi = a.hi;
        hc = a.hi_closed && b.hi_closed;
    }
    return Interval(lo, hi, lc, hc);
}

bool intervals_adjacent(const Interval& a, const Interval& b) {
    if (a.hi == b.lo) return a.hi_closed != b.lo_closed;
    if (b.hi == a.lo) return b.hi_closed != a.lo_closed;
    return false;
}

IntervalSet::IntervalSet(std::vector<Interval> parts) {
    std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) {
        if (x.lo != y.lo) return x.lo < y.lo;
        return x.lo_closed && !y.lo_closed;
    });
    for (const Interval& iv : parts) {
        if (!parts_.empty()) {
            Interval& last = parts_.back();
            bool touches = iv.lo < last.hi ||
                           (iv.lo == last.hi && (iv.lo_closed || last.hi_closed));
            if (touches) {
                if (iv.hi > last.hi) {
                    last.hi = iv.hi;
                    last.hi_closed = iv.hi_closed;
                } else if (iv.hi == last.hi) {
                    last.hi_closed = last.hi_closed || iv.hi_closed;
                }
                continue;
            }
        }
        parts_.push_back(iv);
    }
}

bool IntervalSet::contains(const Rational& x) const {
    for (const Interval& iv : parts_) {
        if (iv.lo > x) break;
        if (iv.contains(x)) return true;
    }
    return false;
}

bool IntervalSet::intersects(const Interval& iv) const {
    for (const Interval& p : parts_)
        if (intervals_intersect(p, iv)) return true;
    return false;
}

bool IntervalSet::intersects(const IntervalSet& o) const {
    for (const Interval& p : o.parts_)
        if (intersects(p)) return true;
    return false;
}

IntervalSet IntervalSet::intersect(const Interval& iv) const {
    std::vector<Interval> out;
    for (const Interval& p : parts_)
        if (auto x = interval_intersection(p, iv)) out.push_back(*x);
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), o.parts_.begin(), o.parts_.end());
    return IntervalSet(std::move(all));
}

Rational IntervalSet::measure() const {
    Rational total(0);
    for (const Interval& p : parts_) total += p.length();
    return total;
}

std::string IntervalSet::to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += " u ";
        s += parts_[i].to_string();
    }
    return s;
}

}  // namespace pam
