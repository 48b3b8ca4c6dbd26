// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/pam.hpp"

#include <algorithm>

namespace pam {

Pam::Pam(Interval carrier, std::vector<Piece> pieces)
    : carrier_(std::move(carrier)), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw InvalidPam("a map needs at least one piece");
    std::sort(pieces_.begin(), pieces_.end(), [](const Piece& p, const Piece& q) {
        if (p.domain.lo != q.domain.lo) return p.domain.lo < q.domain.lo;
        return p.domain.lo_closed && !q.domain.lo_closed;
    });
    const Interval& first = pieces_.front().domain;
    if (first.lo != carrier_.lo || first.lo_closed != carrier_.lo_closed)
        throw InvalidPam("piece domains do not start at the carrier's lower end");
    const Interval& last = pieces_.back().domain;
    if (last.hi != carrier_.hi || last.hi_closed != carrier_.hi_closed)
        throw InvalidPam("piece domains do not end at the carrier's upper end");
    for (size_t i = 0; i + 1 < pieces_.size(); ++i) {
        const Interval& a = pieces_[i].domain;
        const Interval& b = pieces_[i + 1].domain;
        if (a.hi != b.lo || a.hi_closed == b.lo_closed)
            throw InvalidPam("piece domains " + a.to_string() + " and " + b.to_string() +
                             " do not meet with complementary flags");
    }
    for (const Piece& p : pieces_) {
        Interval img = p.domain.affine_image(p.map.a, p.map.b);
        if (!carrier_.contains(img))
            throw InvalidPam("piece image " + img.to_string() + " escapes the carrier " +
                             carrier_.to_string());
    }
}

size_t Pam::piece_index(const Rational& x) const {
    if (!carrier_.contains(x))
        throw OutOfCarrier(x.to_string() + " is outside the carrier " + carrier_.to_string());
    // Binary search on lower endpoints, then settle flags locally.
    size_t lo = 0, hi = pieces_.size() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (pieces_[mid].domain.lo <= x)
            lo = mid;
        else
            hi = mid - 1;
    }
    for (size_t i = lo; i < pieces_.size() && i <= lo + 1; ++i)
        if (pieces_[i].domain.contains(x)) return i;
    if (lo > 0 && pieces_[lo - 1].domain.contains(x)) return lo - 1;
    throw InvalidPam("piece partition does not cover " + x.to_string());
}

Pam::EvalResult Pam::eval(const Rational& x) const {
    size_t k = piece_index(x);
    return {pieces_[k].map(x), static_cast<int>(k) + 1};
}

std::string Pam::to_string() const {
    std::string s = "carrier " + carrier_.to_string();
    for (const Piece& p : pieces_)
        s += "; " + p.map.to_string() + " on " + p.domain.to_string();
    return s;
}

std::vector<OrbitPoint> iterate(const Pam& f, const Rational& x0, long long n) {
    std::vector<OrbitPoint> orbit;
    orbit.reserve(static_cast<size_t>(n) + 1);
    Rational x = x0;
    for (long long i = 0;; ++i) {
        size_t k = f.piece_index(x);
        orbit.push_back({x, static_cast<int>(k) + 1});
        if (i == n) break;
        x = f.pieces()[k].map(x);
    }
    return orbit;
}

Pam compose_power(const Pam& f, long k, size_t piece_bound) {
    if (k < 1) throw PreconditionViolated("compose_power requires k >= 1");
    std::vector<Piece> cur = f.pieces();
    for (long step = 2; step <= k; ++step) {
        std::vector<Piece> next;
        for (const Piece& p : cur) {
            for (const Piece& q : f.pieces()) {
                if (p.map.a.is_zero()) {
                    if (q.domain.contains(p.map.b))
                        next.push_back({p.domain, q.map.compose(p.map)});
                    continue;
                }
                Interval pre = q.domain.affine_preimage(p.map.a, p.map.b);
                if (auto dom = interval_intersection(p.domain, pre))
                    next.push_back({*dom, q.map.compose(p.map)});
            }
        }
        if (next.size() > piece_bound)
            throw ResourceLimit("compose_power exceeded the piece bound");
        cur = std::move(next);
    }
    return Pam(f.carrier(), std::move(cur));
}

std::pair<Pam, Transport> rescale_to_unit(const Pam& f) {
    const Interval& c = f.carrier();
    Rational w = c.length();
    if (w.is_zero()) throw PreconditionViolated("cannot rescale a degenerate carrier");
    AffineMap h(w.reciprocal(), -c.lo / w);  // h(x) = (x - lo)/w
    AffineMap hinv = h.inverse();
    std::vector<Piece> pieces;
    pieces.reserve(f.piece_count());
    for (const Piece& p : f.pieces())
        pieces.push_back({p.domain.affine_image(h.a, h.b), h.compose(p.map).compose(hinv)});
    Interval unit(0, 1, c.lo_closed, c.hi_closed);
    return {Pam(unit, std::move(pieces)), Transport{h, hinv}};
}

std::pair<Pam, Transport> reflect(const Pam& f) {
    const Interval& c = f.carrier();
    Rational s = c.lo + c.hi;
    AffineMap h(Rational(-1), s);  // involution of the carrier span
    std::vector<Piece> pieces;
    pieces.reserve(f.piece_count());
    for (const Piece& p : f.pieces())
        pieces.push_back({p.domain.affine_image(h.a, h.b), h.compose(p.map).compose(h)});
    Interval carrier(c.lo, c.hi, c.hi_closed, c.lo_closed);
    return {Pam(carrier, std::move(pieces)), Transport{h, h}};
}

IntervalSet image_set(const Pam& f, const IntervalSet& s) {
    std::vector<Interval> out;
    for (const Interval& part : s.components()) {
        if (!f.carrier().contains(part))
            throw PreconditionViolated("image_set: input escapes the carrier");
        for (const Piece& p : f.pieces())
            if (auto d = interval_intersection(part, p.domain))
                out.push_back(d->affine_image(p.map.a, p.map.b));
    }
    return IntervalSet(std::move(out));
}

IntervalSet image_set(const Pam& f, const Interval& s) { return image_set(f, IntervalSet(s)); }

size_t ReachGraph::out_degree(size_t from1) const {
    size_t d = 0;
    for (bool e : edge_[from1 - 1]) d += e;
    return d;
}

bool ReachGraph::only_self_loop_cycles() const {
    // Ignore self-loops and look for a directed cycle among the rest.
    std::vector<int> state(n_, 0);
    auto dfs = [&](auto&& self, size_t v) -> bool {
        state[v] = 1;
        for (size_t w = 0; w < n_; ++w) {
            if (w == v || !edge_[v][w]) continue;
            if (state[w] == 1) return false;
            if (state[w] == 0 && !self(self, w)) return false;
        }
        state[v] = 2;
        return true;
    };
    for (size_t v = 0; v < n_; ++v)
        if (state[v] == 0 && !dfs(dfs, v)) return false;
    return true;
}

bool ReachGraph::functional() const {
    for (size_t v = 1; v <= n_; ++v)
        if (out_degree(v) != 1) return false;
    return true;
}

ReachGraph reach_graph(const Pam& f) {
    size_t n = f.piece_count();
    ReachGraph g(n);
    for (size_t k = 0; k < n; ++k) {
        Interval img = f.pieces()[k].domain.affine_image(f.pieces()[k].map.a, f.pieces()[k].map.b);
        for (size_t j = 0; j < n; ++j)
            if (intervals_intersect(img, f.pieces()[j].domain)) g.add_edge(k, j);
    }
    return g;
}

std::string shape_name(Shape s) {
    switch (s) {
        case Shape::easy_dag: return "easy-dag";
        case Shape::easy_functional: return "easy-functional";
        case Shape::negative_slope: return "negative-slope";
        case Shape::bijection: return "bijection";
        case Shape::side_gap: return "side-gap";
        case Shape::middle_gap: return "middle-gap";
        case Shape::unsupported: return "unsupported";
    }
    return "?";
}

namespace {

// Does the union of piece images cover the carrier end that `low` selects?
bool covers_end(const IntervalSet& images, const Interval& carrier, bool low) {
    if (images.is_empty()) return false;
    if (low) {
        const Interval& first = images.components().front();
        return first.lo == carrier.lo && (first.lo_closed || !carrier.lo_closed);
    }
    const Interval& last = images.components().back();
    return last.hi == carrier.hi && (last.hi_closed || !carrier.hi_closed);
}

}  // namespace

Classification classify(const Pam& f) {
    Classification c;
    c.piece_count = f.piece_count();

    std::vector<Interval> images;
    for (const Piece& p : f.pieces()) {
        c.slope_signs.push_back(p.map.a.sign());
        images.push_back(p.domain.affine_image(p.map.a, p.map.b));
    }

    bool nonzero_slopes = true;
    for (int s : c.slope_signs) nonzero_slopes &= s != 0;
    bool disjoint_images = true;
    for (size_t i = 0; i < images.size() && disjoint_images; ++i)
        for (size_t j = i + 1; j < images.size(); ++j)
            if (intervals_intersect(images[i], images[j])) {
                disjoint_images = false;
                break;
            }
    c.injective = nonzero_slopes && disjoint_images;

    IntervalSet image_union(images);
    c.surjective = image_union == IntervalSet(f.carrier());

    if (c.piece_count == 2 && c.injective) {
        const Interval& im1 = images[0];
        const Interval& im2 = images[1];
        c.twist = im2.hi < im1.lo || (im2.hi == im1.lo && !(im2.hi_closed && im1.lo_closed));
    }

    ReachGraph g = reach_graph(f);
    if (g.only_self_loop_cycles()) {
        c.shape = Shape::easy_dag;
        return c;
    }
    if (!(c.injective && c.piece_count == 2)) {
        c.shape = g.functional() ? Shape::easy_functional : Shape::unsupported;
        return c;
    }
    for (int s : c.slope_signs)
        if (s < 0) {
            c.shape = Shape::negative_slope;
            return c;
        }
    if (c.surjective) {
        c.shape = Shape::bijection;
        return c;
    }
    bool bottom = covers_end(image_union, f.carrier(), true);
    bool top = covers_end(image_union, f.carrier(), false);
    c.shape = (bottom && top) ? Shape::middle_gap : Shape::side_gap;
    return c;
}

}  // namespace pam
