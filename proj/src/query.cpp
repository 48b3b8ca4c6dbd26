// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/query.hpp"

#include <algorithm>
#include <set>

namespace pam {

namespace {

constexpr int kMaxDepth = 64;

Decision simulate_fallback(const Pam& f, const Rational& x0, const Rational& t,
                           long long depth) {
    Decision d;
    d.trace.add("simulation", "depth " + std::to_string(depth),
                "unsupported shape: bounded exact search");
    Rational x = x0;
    for (long long n = 0; n <= depth; ++n) {
        if (x == t) {
            d.answer = Answer::yes;
            d.witness = n;
            return d;
        }
        x = f.eval(x).value;
    }
    d.answer = Answer::unknown;
    d.diagnostics.push_back("no hit within " + std::to_string(depth) + " exact iterations");
    return d;
}

// Complement of P inside the carrier, as up to two intervals.
std::vector<Interval> carrier_complement(const Interval& carrier, const Interval& P) {
    std::vector<Interval> out;
    if (carrier.lo < P.lo || (carrier.lo == P.lo && carrier.lo_closed && !P.lo_closed))
        out.push_back(Interval(carrier.lo, P.lo, carrier.lo_closed, !P.lo_closed));
    if (P.hi < carrier.hi || (P.hi == carrier.hi && !P.hi_closed && carrier.hi_closed))
        out.push_back(Interval(P.hi, carrier.hi, !P.hi_closed, carrier.hi_closed));
    return out;
}

IntervalSet mirror_set(const IntervalSet& s, const Transport& h) {
    std::vector<Interval> parts;
    for (const Interval& comp : s.components())
        parts.push_back(comp.affine_image(h.fwd.a, h.fwd.b));
    return IntervalSet(std::move(parts));
}

// ---------------------------------------------------------------------------
// Point-source, set-target deciders for the graph-easy and negative shapes.
// Yes answers report an upper bound on the first entry time; the public
// wrappers turn bounds into exact minimal witnesses by re-simulation.
// ---------------------------------------------------------------------------

Decision decide_dag_set(const Pam& f, const Rational& x0, const IntervalSet& T) {
    Decision d;
    d.trace.add("dag-walk", "interval target", "phase-by-phase affine analysis");
    if (T.contains(x0)) {
        d.answer = Answer::yes;
        d.witness = 0;
        return d;
    }
    Rational x = x0;
    long long total = 0;
    for (size_t phase = 0; phase <= f.piece_count(); ++phase) {
        size_t k = f.piece_index(x);
        const AffineMap& g = f.pieces()[k].map;
        const Interval& Ik = f.pieces()[k].domain;
        AffineOrbitAnswer exit = first_exit(g, x, Ik);

        std::optional<long long> h;
        for (const Interval& comp : T.components()) {
            AffineOrbitAnswer a = first_entry(g, x, comp);
            if (a.outcome == AffineOrbitAnswer::Outcome::hit)
                h = h ? std::min(*h, a.index) : a.index;
        }
        if (exit.outcome == AffineOrbitAnswer::Outcome::always_in) {
            if (h) {
                d.answer = Answer::yes;
                d.witness = total + *h;
            } else {
                d.answer = Answer::no;
                d.diagnostics.push_back("terminal phase never meets the target set");
            }
            return d;
        }
        long long e = exit.index;
        if (h && *h < e) {
            d.answer = Answer::yes;
            d.witness = total + *h;
            return d;
        }
        x = closed_form(g, x, e);
        total += e;
        if (T.contains(x)) {
            d.answer = Answer::yes;
            d.witness = total;
            return d;
        }
    }
    throw Error("dag set walk revisited a piece");
}

Decision decide_functional_set(const Pam& f, const Rational& x0, const IntervalSet& T) {
    Decision d;
    if (T.contains(x0)) {
        d.answer = Answer::yes;
        d.witness = 0;
        return d;
    }
    size_t n = f.piece_count();
    ReachGraph g = reach_graph(f);
    std::vector<size_t> succ(n, 0);
    for (size_t v = 1; v <= n; ++v)
        for (size_t w = 1; w <= n; ++w)
            if (g.has_edge(v, w)) succ[v - 1] = w - 1;

    std::vector<long long> seen(n, -1);
    std::vector<size_t> path;
    size_t v = f.piece_index(x0);
    while (seen[v] < 0) {
        seen[v] = static_cast<long long>(path.size());
        path.push_back(v);
        v = succ[v];
    }
    long long entry = seen[v];
    long long p = static_cast<long long>(path.size()) - entry;
    d.trace.add("functional-cycle", "cycle length " + std::to_string(p), "interval target");

    long long prefix = entry + 2 * p;
    Rational x = x0;
    std::vector<std::optional<long long>> first_visit(n);
    std::vector<Rational> visit_value(n, Rational(0));
    for (long long i = 0; i <= prefix; ++i) {
        if (i > 0 && T.contains(x)) {
            d.answer = Answer::yes;
            d.witness = i;
            return d;
        }
        size_t cur = f.piece_index(x);
        if (i >= entry && !first_visit[cur]) {
            first_visit[cur] = i;
            visit_value[cur] = x;
        }
        x = f.pieces()[cur].map(x);
    }

    std::optional<long long> best;
    for (size_t j = 0; j < n; ++j) {
        if (!first_visit[j]) continue;
        IntervalSet local = T.intersect(f.pieces()[j].domain);
        if (local.is_empty()) continue;
        AffineMap G(Rational(1), Rational(0));
        size_t w = j;
        for (long long i = 0; i < p; ++i) {
            G = f.pieces()[w].map.compose(G);
            w = succ[w];
        }
        for (const Interval& comp : local.components()) {
            AffineOrbitAnswer a = hits_interval(G, visit_value[j], comp);
            if (a.outcome == AffineOrbitAnswer::Outcome::hit) {
                long long cand = *first_visit[j] + p * a.index;
                best = best ? std::min(*best, cand) : cand;
            }
        }
    }
    if (best) {
        d.answer = Answer::yes;
        d.witness = *best;
    } else {
        d.answer = Answer::no;
        d.diagnostics.push_back("no cycle interval's affine orbit meets the target set");
    }
    return d;
}

// Pull the target set through a first-return acceleration: parts inside the
// kept domain stay; parts reached as intermediates of composed steps pull
// back through the kept map into the composed pieces.
IntervalSet transport_target(const ReductionStep& step, const AffineMap& kept_map,
                             const IntervalSet& T, const Interval& kept_domain) {
    std::vector<Interval> parts;
    for (const Interval& comp : T.components()) {
        if (auto inside = interval_intersection(comp, kept_domain)) parts.push_back(*inside);
        Interval pre = comp.affine_preimage(kept_map.a, kept_map.b);
        for (size_t i = 0; i < step.produced.piece_count(); ++i) {
            if (step.piece_cost[i] != 2) continue;
            if (auto hit = interval_intersection(pre, step.produced.pieces()[i].domain))
                parts.push_back(*hit);
        }
    }
    return IntervalSet(std::move(parts));
}

Decision reach_set_easy_or_negative(const Pam& f, const Rational& x0, const IntervalSet& T,
                                    ReductionTrace& trace, int depth) {
    if (depth > 100000) throw ResourceLimit("set reduction recursion exceeded the depth cap");
    if (T.contains(x0)) return Decision::yes(0);
    if (T.is_empty()) return Decision::no();

    ReachGraph g = reach_graph(f);
    if (g.only_self_loop_cycles()) {
        Decision d = decide_dag_set(f, x0, T);
        trace.absorb(d.trace);
        d.trace = trace;
        return d;
    }
    if (g.functional()) {
        Decision d = decide_functional_set(f, x0, T);
        trace.absorb(d.trace);
        d.trace = trace;
        return d;
    }

    if (f.piece_count() != 2)
        throw PreconditionViolated("set reductions need a two-piece map");
    const Piece& p1 = f.pieces()[0];
    const Piece& p2 = f.pieces()[1];
    Rational cut = p2.domain.lo;
    Interval im1 = p1.domain.affine_image(p1.map.a, p1.map.b);
    Interval im2 = p2.domain.affine_image(p2.map.a, p2.map.b);

    auto recurse_accel = [&](size_t keep, const char* kind) {
        const Piece& kept = f.pieces()[keep];
        ReductionStep step = accelerate_first_return(f, keep, kind);
        trace.add(step.kind, "cutpoint " + step.cutpoint->to_string(), "interval target");
        long long push = 0;
        Rational y0 = x0;
        if (!kept.domain.contains(y0)) {
            y0 = f.eval(y0).value;
            push = 1;
        }
        IntervalSet T2 = transport_target(step, kept.map, T, kept.domain);
        Decision inner = reach_set_easy_or_negative(step.produced, y0, T2, trace, depth + 1);
        if (inner.answer != Answer::yes) return inner;
        long long gsteps = *inner.witness;
        long long bound = push + 1;  // +1 covers a hit at a composed-step intermediate
        Rational y = y0;
        for (long long i = 0; i < gsteps; ++i) {
            size_t idx = step.produced.piece_index(y);
            bound += step.piece_cost[idx];
            y = step.produced.pieces()[idx].map(y);
        }
        Decision d = inner;
        d.witness = bound;
        return d;
    };

    if (p2.map.a < Rational(0) && im2.contains(cut)) {
        if (p2.map(cut) != cut) return recurse_accel(1, "neg1");
        // Fixed-point boundary f2(c) = c: away from c the two-step maps are
        // affine on each side of the cutpoint.
        trace.add("neg1", "fixed-point boundary, interval target", "two-step affine analysis");
        Decision d;
        if (x0 == cut) {
            d.answer = T.contains(cut) ? Answer::yes : Answer::no;
            if (d.answer == Answer::yes) d.witness = 0;
            d.trace = trace;
            return d;
        }
        const AffineMap two_from_1 = p2.map.compose(p1.map);
        const AffineMap two_from_2 = p1.map.compose(p2.map);
        std::optional<long long> best;
        for (int phase = 0; phase < 2; ++phase) {
            Rational x = phase == 0 ? x0 : f.eval(x0).value;
            if (phase == 1 && T.contains(x)) {
                best = best ? std::min<long long>(*best, 1) : 1;
                continue;
            }
            bool low = f.piece_index(x) == 0;
            const AffineMap& G = low ? two_from_1 : two_from_2;
            for (const Interval& comp : T.components()) {
                AffineOrbitAnswer a = first_entry(G, x, comp);
                if (a.outcome == AffineOrbitAnswer::Outcome::hit) {
                    long long cand = phase + 2 * a.index;
                    best = best ? std::min(*best, cand) : cand;
                }
            }
        }
        if (best) {
            d.answer = Answer::yes;
            d.witness = *best;
        } else {
            d.answer = Answer::no;
        }
        d.trace = trace;
        return d;
    }
    if (p2.map.a < Rational(0) && p1.map.a > Rational(0) && im1.contains(cut))
        return recurse_accel(0, "neg2-iteration");
    if (p1.map.a < Rational(0)) {
        auto [rf, h] = reflect(f);
        trace.add("reflect", "", "interval target mirrored");
        return reach_set_easy_or_negative(rf, h(x0), mirror_set(T, h), trace, depth + 1);
    }
    throw PreconditionViolated("set reduction: positive structured shape does not belong here");
}

// Exact minimal witness for a yes answer given only an upper bound.
Decision exact_witness_from_bound(const Pam& f, const Rational& x0, const IntervalSet& T,
                                  Decision d) {
    if (d.answer != Answer::yes || !d.witness) return d;
    Rational x = x0;
    for (long long n = 0; n <= *d.witness; ++n) {
        if (T.contains(x)) {
            d.witness = n;
            return d;
        }
        x = f.eval(x).value;
    }
    throw Error("certified entry bound produced no exact witness");
}

Decision point_to_set(const Pam& f, const Rational& x0, const IntervalSet& T,
                      const QueryOptions& opts, int depth);

// The side-gap restriction shared by point queries: push once into the image
// span, intersect the target with it, then recurse on the restricted map.
Decision point_to_set_side_gap(const Pam& f, const Rational& x0, const IntervalSet& T,
                               const QueryOptions& opts, int depth) {
    ReductionStep step = side_gap_restrict(f);
    if (step.kind == "functional-cycle") {
        Decision d = decide_functional_set(f, x0, T);
        return exact_witness_from_bound(f, x0, T, d);
    }
    const Transport& h = step.transport;
    Interval span = step.produced.carrier().affine_image(h.inv.a, h.inv.b);
    long long push = 0;
    Rational y0 = x0;
    if (!span.contains(y0)) {
        y0 = f.eval(y0).value;
        push = 1;
        if (T.contains(y0)) return Decision::yes(1);
    }
    std::vector<Interval> parts;
    for (const Interval& comp : T.components())
        if (auto inside = interval_intersection(comp, span))
            parts.push_back(inside->affine_image(h.fwd.a, h.fwd.b));
    Decision inner = point_to_set(step.produced, h(y0), IntervalSet(std::move(parts)), opts,
                                  depth + 1);
    Decision d = inner;
    ReductionTrace trace;
    trace.add("restrict", step.note, "");
    trace.add("rescale", "onto the unit interval", "");
    trace.absorb(inner.trace);
    d.trace = trace;
    if (d.answer == Answer::yes && d.witness) d.witness = push + *d.witness;
    return d;
}

Decision point_to_set(const Pam& f, const Rational& x0, const IntervalSet& T,
                      const QueryOptions& opts, int depth) {
    if (depth > kMaxDepth) throw ResourceLimit("query recursion exceeded its depth cap");
    if (T.is_empty()) return Decision::no();
    if (T.contains(x0)) return Decision::yes(0);

    Classification cls = classify(f);
    switch (cls.shape) {
        case Shape::easy_dag:
        case Shape::easy_functional:
        case Shape::negative_slope: {
            ReductionTrace trace;
            Decision d = reach_set_easy_or_negative(f, x0, T, trace, 0);
            return exact_witness_from_bound(f, x0, T, d);
        }
        case Shape::bijection: {
            BijectionParams params = to_canonical(f);
            Rational y0 = params.transported(x0);
            IntervalSet T2 = params.reflected ? mirror_set(T, params.transport) : T;
            Decision d;
            if (params.reflected) d.trace.add("reflect", "h(x) = 1 - x", "");
            long long period = 0;
            if (params.pure_rotation) {
                if (!params.d.den().fits_slong_p())
                    throw ResourceLimit("rotation period exceeds the iteration budget");
                period = params.d.den().get_si();
                d.trace.add("pure-rotation", "period " + std::to_string(period), "");
            } else {
                RotationRep rot = tau_rationality(params);
                if (!rot.rational) {
                    bool nondegenerate = false;
                    for (const Interval& comp : T2.components())
                        nondegenerate |= comp.is_nonempty_interior();
                    if (nondegenerate) {
                        d = Decision::yes_unbounded();
                        d.trace.add("bijection", "irrational tau",
                                    "orbits are dense, so every interval is reached");
                        d.diagnostics.push_back(
                            "witness exists; run simulation to produce a concrete index");
                        return d;
                    }
                    // Degenerate components: finitely many exact point queries.
                    std::optional<long long> best;
                    for (const Interval& comp : T2.components()) {
                        Decision sub = decide_bijection(params, y0, comp.lo);
                        if (sub.answer == Answer::yes)
                            best = best ? std::min(*best, *sub.witness) : *sub.witness;
                    }
                    if (best) {
                        d.answer = Answer::yes;
                        d.witness = *best;
                    } else {
                        d.answer = Answer::no;
                    }
                    return d;
                }
                period = rot.q;
                d.trace.add("bijection",
                            "rational tau, f^" + std::to_string(period) + " = identity", "");
            }
            Rational x = y0;
            for (long long n = 0; n < period; ++n) {
                if (T2.contains(x)) {
                    d.answer = Answer::yes;
                    d.witness = n;
                    return d;
                }
                x = params.canon.eval(x).value;
            }
            d.answer = Answer::no;
            d.diagnostics.push_back("periodic orbit misses the target set");
            return d;
        }
        case Shape::side_gap:
            return point_to_set_side_gap(f, x0, T, opts, depth);
        case Shape::middle_gap:
            return exact_witness_from_bound(
                f, x0, T, gap_set_reach(f, IntervalSet(Interval::point(x0)), T));
        case Shape::unsupported: {
            Decision d;
            Rational x = x0;
            for (long long n = 0; n <= opts.simulation_depth; ++n) {
                if (T.contains(x)) {
                    d.answer = Answer::yes;
                    d.witness = n;
                    return d;
                }
                x = f.eval(x).value;
            }
            d.answer = Answer::unknown;
            d.diagnostics.push_back("unsupported shape; no entry within the simulation depth");
            return d;
        }
    }
    throw Error("unreachable shape dispatch");
}

}  // namespace

Pam inverse_bijection(const Pam& f) {
    Classification cls = classify(f);
    if (cls.shape != Shape::bijection)
        throw PreconditionViolated("inverse_bijection requires a bijection");
    std::vector<Piece> pieces;
    for (const Piece& p : f.pieces()) {
        Interval img = p.domain.affine_image(p.map.a, p.map.b);
        pieces.push_back({img, p.map.inverse()});
    }
    return Pam(f.carrier(), std::move(pieces));
}

Decision reach(const Pam& f, const Rational& x0, const Rational& t, const QueryOptions& opts) {
    if (!f.carrier().contains(x0))
        throw OutOfCarrier("start point " + x0.to_string() + " outside the carrier");
    if (!f.carrier().contains(t))
        throw OutOfCarrier("target point " + t.to_string() + " outside the carrier");
    if (t == x0) return Decision::yes(0);

    Classification cls = classify(f);
    switch (cls.shape) {
        case Shape::easy_dag:
        case Shape::easy_functional:
        case Shape::negative_slope: {
            ReductionTrace trace;
            return reach_easy_or_negative(f, x0, t, trace, 0);
        }
        case Shape::bijection:
            return bijection_reach(f, x0, t);
        case Shape::middle_gap:
            return decide_gap(f, x0, t);
        case Shape::side_gap: {
            ReductionStep step = side_gap_restrict(f);
            if (step.kind == "functional-cycle") return decide_functional_graph(f, x0, t);
            const Transport& h = step.transport;
            Interval span = step.produced.carrier().affine_image(h.inv.a, h.inv.b);
            long long push = 0;
            Rational y0 = x0;
            if (!span.contains(y0)) {
                y0 = f.eval(y0).value;
                push = 1;
                if (y0 == t) return Decision::yes(1);
            }
            ReductionTrace trace;
            trace.add("restrict", step.note, "");
            trace.add("rescale", "onto the unit interval", "");
            if (!span.contains(t)) {
                Decision d = Decision::no();
                d.trace = trace;
                d.diagnostics.push_back("target lies outside the image span");
                return d;
            }
            Decision inner = reach(step.produced, h(y0), h(t), opts);
            Decision d = inner;
            trace.absorb(inner.trace);
            d.trace = trace;
            if (inner.answer == Answer::yes && inner.witness) d.witness = push + *inner.witness;
            return d;
        }
        case Shape::unsupported:
            return simulate_fallback(f, x0, t, opts.simulation_depth);
    }
    throw Error("unreachable shape dispatch");
}

std::tuple<Pam, Rational, Rational> point_to_interval_general(const Pam& f, const Rational& x0,
                                                              const Interval& I) {
    if (!f.carrier().contains(I))
        throw PreconditionViolated("target interval escapes the carrier");
    const Interval& c = f.carrier();
    const Rational t_fresh = c.hi + 1;
    const Rational top = c.hi + 2;

    std::vector<Piece> pieces;
    for (const Piece& p : f.pieces())
        for (const Interval& part : carrier_complement(c, I))
            if (auto dom = interval_intersection(p.domain, part)) pieces.push_back({*dom, p.map});
    pieces.push_back({I, AffineMap(Rational(0), t_fresh)});
    // Filler region above the old carrier: it holds the fresh fixed value and
    // absorbs it, so reaching t_fresh is exactly entering I.
    pieces.push_back({Interval(c.hi, top, !c.hi_closed, false), AffineMap(Rational(0), t_fresh)});
    Pam extended(Interval(c.lo, top, c.lo_closed, false), std::move(pieces));
    auto [unit, h] = rescale_to_unit(extended);
    return {unit, h.fwd(x0), h.fwd(t_fresh)};
}

Decision point_to_interval(const Pam& f, const Rational& x0, const Interval& I,
                           const QueryOptions& opts) {
    if (!f.carrier().contains(x0)) throw OutOfCarrier("start point outside the carrier");
    if (I.is_point()) return reach(f, x0, I.lo, opts);
    IntervalSet T = IntervalSet(f.carrier()).intersect(I);
    return point_to_set(f, x0, T, opts, 0);
}

// ---------------------------------------------------------------------------
// Interval-to-interval.
// ---------------------------------------------------------------------------

namespace {

// Subset of I from which the g-orbit never leaves I.
IntervalSet stay_region(const AffineMap& g, const Interval& I) {
    if (g.a.is_zero())
        return I.contains(g.b) ? IntervalSet(I) : IntervalSet();
    if (g.a == Rational(1)) return g.b.is_zero() ? IntervalSet(I) : IntervalSet();
    if (g.a == Rational(-1)) return IntervalSet(I).intersect(I.affine_preimage(g.a, g.b));
    Rational fp = g.b / (Rational(1) - g.a);
    if (g.a.abs() > Rational(1)) {
        if (I.contains(fp)) return IntervalSet(Interval::point(fp));
        return IntervalSet();
    }
    // |a| < 1: monotone (or two-phase) convergence to fp.
    if (fp < I.lo || fp > I.hi) return IntervalSet();
    if (g.a > Rational(0)) return IntervalSet(I);
    return IntervalSet(I).intersect(I.affine_preimage(g.a, g.b));
}

// Exact image-set walk for maps whose graph has only self-loop cycles: march
// the set, and once every component is inside a provably invariant region of
// a single piece, finish each component with an exact affine set query.
Decision settle_walk_dag(const Pam& f, const IntervalSet& S0, const IntervalSet& T,
                         const QueryOptions& opts) {
    Decision d;
    d.trace.add("dag-walk", "set source", "image-set march with settling certificates");
    IntervalSet S = S0;
    for (long long n = 0; n <= opts.set_walk_horizon; ++n) {
        if (S.intersects(T)) {
            d.answer = Answer::yes;
            d.witness = n;
            return d;
        }
        bool settled = true;
        std::vector<std::pair<Interval, size_t>> placed;
        for (const Interval& K : S.components()) {
            bool ok = false;
            for (size_t k = 0; k < f.piece_count() && !ok; ++k) {
                const Piece& piece = f.pieces()[k];
                if (!piece.domain.contains(K)) continue;
                IntervalSet stay = stay_region(piece.map, piece.domain);
                for (const Interval& si : stay.components())
                    if (si.contains(K)) {
                        placed.push_back({K, k});
                        ok = true;
                        break;
                    }
                break;  // K fits in exactly one piece
            }
            if (!ok) {
                settled = false;
                break;
            }
        }
        if (settled) {
            std::optional<long long> best;
            for (const auto& [K, k] : placed) {
                for (const Interval& comp : T.components()) {
                    auto m = affine_set_first_meet(f.pieces()[k].map, K, comp);
                    if (m) best = best ? std::min(*best, n + *m) : n + *m;
                }
            }
            if (best) {
                d.answer = Answer::yes;
                d.witness = *best;
            } else {
                d.answer = Answer::no;
                d.diagnostics.push_back("all components settled; affine set orbits miss the "
                                        "target");
            }
            return d;
        }
        S = image_set(f, S);
    }
    d.answer = Answer::unknown;
    d.diagnostics.push_back("components did not settle within the image-set walk horizon");
    return d;
}

Decision set_to_set(const Pam& f, const IntervalSet& S, const IntervalSet& T,
                    const QueryOptions& opts, int depth);

// Functional graphs: after absorbing the transient prefix, f^p has a
// self-loop-only graph, so each residue class runs through the dag walker.
Decision set_to_set_functional(const Pam& f, const IntervalSet& S, const IntervalSet& T,
                               const QueryOptions& opts) {
    ReachGraph g = reach_graph(f);
    size_t n = f.piece_count();
    std::vector<size_t> succ(n, 0);
    for (size_t v = 1; v <= n; ++v)
        for (size_t w = 1; w <= n; ++w)
            if (g.has_edge(v, w)) succ[v - 1] = w - 1;
    // Cycle length of the unique terminal loop.
    std::vector<long long> seen(n, -1);
    size_t v = 0;
    std::vector<size_t> path;
    while (seen[v] < 0) {
        seen[v] = static_cast<long long>(path.size());
        path.push_back(v);
        v = succ[v];
    }
    long p = static_cast<long>(path.size() - seen[v]);
    Pam fp = compose_power(f, p);

    Decision d;
    d.trace.add("functional-cycle", "set source, cycle length " + std::to_string(p), "");
    std::optional<long long> best;
    bool any_unknown = false;
    IntervalSet Sr = S;
    for (long r = 0; r < p; ++r) {
        if (r > 0) Sr = image_set(f, Sr);
        Decision sub = settle_walk_dag(fp, Sr, T, opts);
        if (sub.answer == Answer::yes) {
            long long cand = r + p * *sub.witness;
            best = best ? std::min(*best, cand) : cand;
        } else if (sub.answer == Answer::unknown) {
            any_unknown = true;
        }
    }
    if (best) {
        d.answer = Answer::yes;
        d.witness = *best;
    } else if (any_unknown) {
        d.answer = Answer::unknown;
        d.diagnostics.push_back("a residue class did not settle within the walk horizon");
    } else {
        d.answer = Answer::no;
    }
    return d;
}

Decision set_to_set_easy_or_negative(const Pam& f, const IntervalSet& S, const IntervalSet& T,
                                     const QueryOptions& opts, int depth, ReductionTrace& trace) {
    if (depth > kMaxDepth) throw ResourceLimit("set-to-set recursion exceeded its depth cap");
    if (S.intersects(T)) return Decision::yes(0);
    if (S.is_empty() || T.is_empty()) return Decision::no();

    ReachGraph g = reach_graph(f);
    if (g.only_self_loop_cycles()) {
        Decision d = settle_walk_dag(f, S, T, opts);
        trace.absorb(d.trace);
        d.trace = trace;
        return d;
    }
    if (g.functional()) {
        Decision d = set_to_set_functional(f, S, T, opts);
        trace.absorb(d.trace);
        d.trace = trace;
        return d;
    }
    if (f.piece_count() != 2)
        throw PreconditionViolated("set-to-set reductions need a two-piece map");

    const Piece& p1 = f.pieces()[0];
    const Piece& p2 = f.pieces()[1];
    Rational cut = p2.domain.lo;
    Interval im1 = p1.domain.affine_image(p1.map.a, p1.map.b);
    Interval im2 = p2.domain.affine_image(p2.map.a, p2.map.b);

    auto recurse_accel = [&](size_t keep, const char* kind) {
        const Piece& kept = f.pieces()[keep];
        ReductionStep step = accelerate_first_return(f, keep, kind);
        trace.add(step.kind, "cutpoint " + step.cutpoint->to_string(), "set source and target");
        // Sources outside the kept domain take one step in.
        IntervalSet inside = S.intersect(kept.domain);
        IntervalSet outside;
        for (const Interval& part : carrier_complement(f.carrier(), kept.domain))
            outside = outside.unite(S.intersect(part));
        IntervalSet S2 = inside;
        if (!outside.is_empty()) S2 = S2.unite(image_set(f, outside));
        IntervalSet T2 = transport_target(step, kept.map, T, kept.domain);
        Decision inner = set_to_set_easy_or_negative(step.produced, S2, T2, opts, depth + 1,
                                                     trace);
        if (inner.answer != Answer::yes) return inner;
        // Conservative bound: each produced step is at most two original
        // steps, plus one push in and one intermediate.
        inner.witness = 2 * *inner.witness + 2;
        return inner;
    };

    if (p2.map.a < Rational(0) && im2.contains(cut)) {
        if (p2.map(cut) != cut) return recurse_accel(1, "neg1");
        // Fixed-point boundary: f^2 has a self-loop-only graph.
        trace.add("neg1", "fixed-point boundary, set source", "walk under f^2");
        Pam f2 = compose_power(f, 2);
        Decision even = settle_walk_dag(f2, S, T, opts);
        Decision odd = settle_walk_dag(f2, image_set(f, S), T, opts);
        Decision d;
        std::optional<long long> best;
        if (even.answer == Answer::yes) best = 2 * *even.witness;
        if (odd.answer == Answer::yes) {
            long long cand = 2 * *odd.witness + 1;
            best = best ? std::min(*best, cand) : cand;
        }
        if (best) {
            d.answer = Answer::yes;
            d.witness = *best;
        } else if (even.answer == Answer::unknown || odd.answer == Answer::unknown) {
            d.answer = Answer::unknown;
            d.diagnostics.push_back("f^2 walk did not settle");
        } else {
            d.answer = Answer::no;
        }
        d.trace = trace;
        return d;
    }
    if (p2.map.a < Rational(0) && p1.map.a > Rational(0) && im1.contains(cut))
        return recurse_accel(0, "neg2-iteration");
    if (p1.map.a < Rational(0)) {
        auto [rf, h] = reflect(f);
        trace.add("reflect", "", "sets mirrored");
        return set_to_set_easy_or_negative(rf, mirror_set(S, h), mirror_set(T, h), opts,
                                           depth + 1, trace);
    }
    throw PreconditionViolated("set-to-set: positive structured shape does not belong here");
}

// Exact minimal witness for a set-source yes answer given an upper bound.
Decision exact_set_witness_from_bound(const Pam& f, const IntervalSet& S, const IntervalSet& T,
                                      Decision d) {
    if (d.answer != Answer::yes || !d.witness || d.witness_unbounded) return d;
    IntervalSet cur = S;
    for (long long n = 0; n <= *d.witness; ++n) {
        if (cur.intersects(T)) {
            d.witness = n;
            return d;
        }
        cur = image_set(f, cur);
    }
    throw Error("certified set bound produced no exact witness");
}

Decision set_to_set(const Pam& f, const IntervalSet& S, const IntervalSet& T,
                    const QueryOptions& opts, int depth) {
    if (depth > kMaxDepth) throw ResourceLimit("set-to-set recursion exceeded its depth cap");
    if (S.is_empty() || T.is_empty()) return Decision::no();
    if (S.intersects(T)) return Decision::yes(0);

    Classification cls = classify(f);
    switch (cls.shape) {
        case Shape::easy_dag:
        case Shape::easy_functional:
        case Shape::negative_slope: {
            ReductionTrace trace;
            Decision d = set_to_set_easy_or_negative(f, S, T, opts, depth, trace);
            return exact_set_witness_from_bound(f, S, T, d);
        }
        case Shape::bijection: {
            BijectionParams params = to_canonical(f);
            IntervalSet S2 = params.reflected ? mirror_set(S, params.transport) : S;
            IntervalSet T2 = params.reflected ? mirror_set(T, params.transport) : T;
            Decision d;
            if (params.reflected) d.trace.add("reflect", "h(x) = 1 - x", "");
            long long period = 0;
            if (params.pure_rotation) {
                if (!params.d.den().fits_slong_p())
                    throw ResourceLimit("rotation period exceeds the iteration budget");
                period = params.d.den().get_si();
            } else {
                RotationRep rot = tau_rationality(params);
                if (!rot.rational) {
                    bool src_wide = false, tgt_wide = false;
                    for (const Interval& c : S2.components()) src_wide |= c.is_nonempty_interior();
                    for (const Interval& c : T2.components()) tgt_wide |= c.is_nonempty_interior();
                    if (src_wide && tgt_wide) {
                        d = Decision::yes_unbounded();
                        d.trace.add("bijection", "irrational tau", "dense orbits");
                        return d;
                    }
                    // Degenerate source or target: finitely many point cases.
                    std::optional<long long> best;
                    if (!src_wide) {
                        for (const Interval& c : S2.components()) {
                            Decision sub =
                                point_to_set(params.canon, c.lo, T2, opts, depth + 1);
                            if (sub.answer == Answer::yes) {
                                if (sub.witness_unbounded) return sub;
                                best = best ? std::min(*best, *sub.witness) : *sub.witness;
                            }
                        }
                    } else {
                        // Source wide, target degenerate: follow the target
                        // backwards with the inverse bijection.
                        Pam finv = inverse_bijection(params.canon);
                        for (const Interval& c : T2.components()) {
                            Decision sub = point_to_set(finv, c.lo, S2, opts, depth + 1);
                            if (sub.answer == Answer::yes) {
                                if (sub.witness_unbounded) return sub;
                                best = best ? std::min(*best, *sub.witness) : *sub.witness;
                            }
                        }
                    }
                    if (best) {
                        d.answer = Answer::yes;
                        d.witness = *best;
                    } else {
                        d.answer = Answer::no;
                    }
                    return d;
                }
                period = rot.q;
                d.trace.add("bijection", "rational tau, period " + std::to_string(period), "");
            }
            IntervalSet cur = S2;
            for (long long i = 0; i < period; ++i) {
                if (cur.intersects(T2)) {
                    d.answer = Answer::yes;
                    d.witness = i;
                    return d;
                }
                cur = image_set(params.canon, cur);
            }
            d.answer = Answer::no;
            d.diagnostics.push_back("f is periodic and no iterate of the source meets the "
                                    "target");
            return d;
        }
        case Shape::side_gap: {
            ReductionStep step = side_gap_restrict(f);
            if (step.kind == "functional-cycle") {
                Decision d = set_to_set_functional(f, S, T, opts);
                return exact_set_witness_from_bound(f, S, T, d);
            }
            const Transport& h = step.transport;
            Interval span = step.produced.carrier().affine_image(h.inv.a, h.inv.b);
            IntervalSet inside = S.intersect(span);
            IntervalSet outside;
            for (const Interval& part : carrier_complement(f.carrier(), span))
                outside = outside.unite(S.intersect(part));
            IntervalSet S2 = inside;
            if (!outside.is_empty()) S2 = S2.unite(image_set(f, outside));
            std::vector<Interval> tparts;
            for (const Interval& comp : T.components())
                if (auto x = interval_intersection(comp, span))
                    tparts.push_back(x->affine_image(h.fwd.a, h.fwd.b));
            std::vector<Interval> sparts;
            for (const Interval& comp : S2.components())
                sparts.push_back(comp.affine_image(h.fwd.a, h.fwd.b));
            Decision inner = set_to_set(step.produced, IntervalSet(std::move(sparts)),
                                        IntervalSet(std::move(tparts)), opts, depth + 1);
            if (inner.answer != Answer::yes || inner.witness_unbounded) return inner;
            inner.witness = *inner.witness + 1;
            return exact_set_witness_from_bound(f, S, T, inner);
        }
        case Shape::middle_gap:
            return gap_set_reach(f, S, T);
        case Shape::unsupported: {
            Decision d;
            IntervalSet cur = S;
            for (long long n = 0; n <= opts.set_walk_horizon; ++n) {
                if (cur.intersects(T)) {
                    d.answer = Answer::yes;
                    d.witness = n;
                    return d;
                }
                cur = image_set(f, cur);
            }
            d.answer = Answer::unknown;
            d.diagnostics.push_back("unsupported shape; no certified set walk");
            return d;
        }
    }
    throw Error("unreachable shape dispatch");
}

}  // namespace

Decision interval_to_interval(const Pam& f, const Interval& J0, const Interval& J1,
                              const QueryOptions& opts) {
    IntervalSet S = IntervalSet(f.carrier()).intersect(J0);
    IntervalSet T = IntervalSet(f.carrier()).intersect(J1);
    if (S.is_empty()) return Decision::no();
    if (S.intersects(T)) return Decision::yes(0);
    if (J0.is_point()) return point_to_set(f, J0.lo, T, opts, 0);
    if (J1.is_point()) {
        Classification cls = classify(f);
        if (cls.shape == Shape::bijection) {
            // Follow the target point backwards: the inverse is again a
            // two-piece bijection.
            Decision d = point_to_interval(inverse_bijection(f), J1.lo, J0, opts);
            d.trace.add("bijection", "inverse-map query", "J1 degenerate");
            return d;
        }
    }
    return set_to_set(f, S, T, opts, 0);
}

// ---------------------------------------------------------------------------
// Periodicity.
// ---------------------------------------------------------------------------

namespace {

Decision periodic_result(bool yes, std::optional<long long> period, std::string why) {
    Decision d;
    d.answer = yes ? Answer::yes : Answer::no;
    if (yes && period) d.witness = period;
    d.diagnostics.push_back(std::move(why));
    return d;
}

Decision periodic_easy_or_negative(const Pam& f, const Rational& x0, int depth) {
    if (depth > kMaxDepth) throw ResourceLimit("periodicity recursion exceeded its depth cap");
    ReachGraph g = reach_graph(f);
    if (g.only_self_loop_cycles()) {
        // Walk the dag; the orbit is eventually periodic iff its terminal
        // affine tail is.
        Rational x = x0;
        for (size_t phase = 0; phase <= f.piece_count(); ++phase) {
            size_t k = f.piece_index(x);
            const AffineMap& gk = f.pieces()[k].map;
            const Interval& Ik = f.pieces()[k].domain;
            AffineOrbitAnswer exit = first_exit(gk, x, Ik);
            if (exit.outcome == AffineOrbitAnswer::Outcome::always_in) {
                bool fin = affine_orbit_finite(gk, x);
                return periodic_result(fin, std::nullopt,
                                       fin ? "terminal affine orbit is finite"
                                           : "terminal affine orbit never revisits a value");
            }
            x = closed_form(gk, x, exit.index);
        }
        throw Error("periodicity dag walk revisited a piece");
    }
    if (g.functional()) {
        size_t n = f.piece_count();
        std::vector<size_t> succ(n, 0);
        for (size_t v = 1; v <= n; ++v)
            for (size_t w = 1; w <= n; ++w)
                if (g.has_edge(v, w)) succ[v - 1] = w - 1;
        std::vector<long long> seen(n, -1);
        size_t v = f.piece_index(x0);
        long long steps = 0;
        while (seen[v] < 0) {
            seen[v] = steps++;
            v = succ[v];
        }
        long long entry = seen[v];
        long long p = steps - entry;
        Rational x = x0;
        for (long long i = 0; i < entry; ++i) x = f.eval(x).value;
        AffineMap G(Rational(1), Rational(0));
        size_t w = f.piece_index(x);
        for (long long i = 0; i < p; ++i) {
            G = f.pieces()[w].map.compose(G);
            w = succ[w];
        }
        bool fin = affine_orbit_finite(G, x);
        return periodic_result(fin, fin ? std::optional<long long>(p) : std::nullopt,
                               "f^p analysis on the graph cycle");
    }

    if (f.piece_count() != 2)
        throw PreconditionViolated("periodicity reductions need a two-piece map");
    const Piece& p1 = f.pieces()[0];
    const Piece& p2 = f.pieces()[1];
    Rational cut = p2.domain.lo;
    Interval im1 = p1.domain.affine_image(p1.map.a, p1.map.b);
    Interval im2 = p2.domain.affine_image(p2.map.a, p2.map.b);

    if (p2.map.a < Rational(0) && im2.contains(cut)) {
        if (p2.map(cut) == cut) {
            if (x0 == cut) return periodic_result(true, 1, "x0 is the boundary fixed point");
            Rational x = x0;
            bool low = f.piece_index(x) == 0;
            AffineMap G = low ? p2.map.compose(p1.map) : p1.map.compose(p2.map);
            bool fin = affine_orbit_finite(G, x);
            return periodic_result(fin, fin ? std::optional<long long>(2) : std::nullopt,
                                   "two-step affine analysis at the boundary fixed point");
        }
        ReductionStep step = accelerate_first_return(f, 1, "neg1");
        Rational y0 = step.produced.carrier().contains(x0) ? x0 : f.eval(x0).value;
        return periodic_easy_or_negative(step.produced, y0, depth + 1);
    }
    if (p2.map.a < Rational(0) && p1.map.a > Rational(0) && im1.contains(cut)) {
        ReductionStep step = accelerate_first_return(f, 0, "neg2-iteration");
        Rational y0 = step.produced.carrier().contains(x0) ? x0 : f.eval(x0).value;
        return periodic_easy_or_negative(step.produced, y0, depth + 1);
    }
    if (p1.map.a < Rational(0)) {
        auto [rf, h] = reflect(f);
        return periodic_easy_or_negative(rf, h(x0), depth + 1);
    }
    throw PreconditionViolated("periodicity: positive structured shape does not belong here");
}

}  // namespace

Decision periodic(const Pam& f, const Rational& x0, const QueryOptions& opts) {
    if (!f.carrier().contains(x0)) throw OutOfCarrier("start point outside the carrier");
    Classification cls = classify(f);
    switch (cls.shape) {
        case Shape::easy_dag:
        case Shape::easy_functional:
        case Shape::negative_slope:
            return periodic_easy_or_negative(f, x0, 0);
        case Shape::bijection: {
            BijectionParams params = to_canonical(f);
            if (params.pure_rotation) {
                if (!params.d.den().fits_slong_p())
                    throw ResourceLimit("rotation period exceeds the budget");
                return periodic_result(true, params.d.den().get_si(),
                                       "rational rotation: every orbit is periodic");
            }
            RotationRep rot = tau_rationality(params);
            if (rot.rational)
                return periodic_result(true, rot.q,
                                       "rational tau: f^q is the identity");
            return periodic_result(false, std::nullopt,
                                   "irrational tau: every orbit is infinite");
        }
        case Shape::side_gap: {
            ReductionStep step = side_gap_restrict(f);
            if (step.kind == "functional-cycle") return periodic_easy_or_negative(f, x0, 0);
            const Transport& h = step.transport;
            Interval span = step.produced.carrier().affine_image(h.inv.a, h.inv.b);
            Rational y0 = span.contains(x0) ? x0 : f.eval(x0).value;
            return periodic(step.produced, h.fwd(y0), opts);
        }
        case Shape::middle_gap: {
            GapParams gp = to_gap_params(f);
            CycleInfo cycle = rotation_and_cycle(gp);
            Rational y0 = gp.transported(x0);
            bool on = cycle.index_of(y0) >= 0;
            return periodic_result(on, on ? std::optional<long long>(cycle.q) : std::nullopt,
                                   on ? "x0 lies on the unique attracting cycle"
                                      : "off-cycle orbits of gap maps are infinite");
        }
        case Shape::unsupported: {
            std::set<std::string> seen;
            Rational x = x0;
            for (long long n = 0; n <= opts.simulation_depth; ++n) {
                if (!seen.insert(x.to_string()).second)
                    return periodic_result(true, std::nullopt, "value repeated in simulation");
                x = f.eval(x).value;
            }
            Decision d;
            d.answer = Answer::unknown;
            d.diagnostics.push_back("unsupported shape; no repeat within the simulation depth");
            return d;
        }
    }
    throw Error("unreachable shape dispatch");
}

}  // namespace pam
