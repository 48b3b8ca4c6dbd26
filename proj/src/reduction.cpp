// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/reduction.hpp"

#include <algorithm>

namespace pam {

namespace {
constexpr int kMaxReductionDepth = 100000;
}

Decision decide_dag(const Pam& f, const Rational& x0, const Rational& t) {
    ReachGraph g = reach_graph(f);
    if (!g.only_self_loop_cycles())
        throw PreconditionViolated("decide_dag: graph has a cycle beyond self-loops");
    Decision d;
    d.trace.add("dag-walk", "", "phase-by-phase affine analysis");
    if (t == x0) {
        d.answer = Answer::yes;
        d.witness = 0;
        return d;
    }
    Rational x = x0;
    long long total = 0;
    for (size_t phase = 0; phase <= f.piece_count(); ++phase) {
        size_t k = f.piece_index(x);
        const AffineMap& gk = f.pieces()[k].map;
        const Interval& Ik = f.pieces()[k].domain;
        AffineOrbitAnswer exit = first_exit(gk, x, Ik);
        AffineOrbitAnswer hp = hits_point(gk, x, t);
        if (exit.outcome == AffineOrbitAnswer::Outcome::always_in) {
            d.trace.add("dag-walk", "terminal interval " + Ik.to_string(), exit.certificate);
            if (hp.outcome == AffineOrbitAnswer::Outcome::hit) {
                d.answer = Answer::yes;
                d.witness = total + hp.index;
            } else {
                d.answer = Answer::no;
                d.diagnostics.push_back("tail in " + Ik.to_string() + ": " + hp.certificate);
            }
            return d;
        }
        long long e = exit.index;
        if (hp.outcome == AffineOrbitAnswer::Outcome::hit && hp.index < e) {
            d.answer = Answer::yes;
            d.witness = total + hp.index;
            return d;
        }
        x = closed_form(gk, x, e);
        total += e;
        d.trace.add("dag-walk",
                    "leave " + Ik.to_string() + " after " + std::to_string(e) + " steps", "");
        if (x == t) {
            d.answer = Answer::yes;
            d.witness = total;
            return d;
        }
    }
    throw Error("dag walk revisited a piece; graph analysis is inconsistent");
}

Decision decide_functional_graph(const Pam& f, const Rational& x0, const Rational& t) {
    ReachGraph g = reach_graph(f);
    if (!g.functional())
        throw PreconditionViolated("decide_functional_graph: some out-degree differs from 1");
    Decision d;
    if (t == x0) {
        d.answer = Answer::yes;
        d.witness = 0;
        return d;
    }

    // Unique successor of each vertex.
    size_t n = f.piece_count();
    std::vector<size_t> succ(n, 0);
    for (size_t v = 1; v <= n; ++v)
        for (size_t w = 1; w <= n; ++w)
            if (g.has_edge(v, w)) succ[v - 1] = w - 1;

    // Vertex path from x0's piece: pre-cycle prefix + cycle of length p.
    std::vector<size_t> path;
    std::vector<long long> seen(n, -1);
    size_t v = f.piece_index(x0);
    while (seen[v] < 0) {
        seen[v] = static_cast<long long>(path.size());
        path.push_back(v);
        v = succ[v];
    }
    long long entry = seen[v];
    long long p = static_cast<long long>(path.size()) - entry;
    d.trace.add("functional-cycle",
                "cycle length " + std::to_string(p) + " entered after " + std::to_string(entry),
                "reduce to f^p on the target's interval");

    // Exact prefix covering the pre-cycle part and two full laps.
    long long prefix = entry + 2 * p;
    Rational x = x0;
    std::optional<long long> first_cycle_visit;
    Rational value_at_visit(0);
    size_t j = f.piece_index(t);
    for (long long i = 0; i <= prefix; ++i) {
        if (i > 0 && x == t) {
            d.answer = Answer::yes;
            d.witness = i;
            return d;
        }
        size_t cur = f.piece_index(x);
        if (cur == j && i >= entry && !first_cycle_visit) {
            first_cycle_visit = i;
            value_at_visit = x;
        }
        x = f.pieces()[cur].map(x);
    }
    if (!first_cycle_visit) {
        d.answer = Answer::no;
        d.diagnostics.push_back("target interval is never visited by the orbit");
        return d;
    }

    // f^p restricted to I_j is a single affine map.
    AffineMap G(Rational(1), Rational(0));
    size_t w = j;
    for (long long i = 0; i < p; ++i) {
        G = f.pieces()[w].map.compose(G);
        w = succ[w];
    }
    if (w != j) throw Error("functional cycle composition did not return to the start vertex");
    AffineOrbitAnswer hp = hits_point(G, value_at_visit, t);
    if (hp.outcome == AffineOrbitAnswer::Outcome::hit) {
        d.answer = Answer::yes;
        d.witness = *first_cycle_visit + p * hp.index;
    } else {
        d.answer = Answer::no;
        d.diagnostics.push_back("f^p orbit in the target interval: " + hp.certificate);
    }
    return d;
}

// Points of the kept domain whose image stays there apply that piece once;
// the rest compose with the other piece and come back. The produced object
// is only a valid Pam when the corresponding lemma's preconditions hold; the
// constructor checks that.
ReductionStep accelerate_first_return(const Pam& f, size_t keep, const std::string& kind) {
    if (f.piece_count() != 2) throw PreconditionViolated("acceleration needs two pieces");
    const Piece& kept = f.pieces()[keep];
    const Piece& other = f.pieces()[1 - keep];
    if (kept.map.a.is_zero()) throw PreconditionViolated("acceleration needs a nonzero slope");

    std::vector<Piece> parts;
    std::vector<int> costs;
    Interval stay_pre = kept.domain.affine_preimage(kept.map.a, kept.map.b);
    if (auto stay = interval_intersection(kept.domain, stay_pre)) {
        parts.push_back({*stay, kept.map});
        costs.push_back(1);
    }
    Interval go_pre = other.domain.affine_preimage(kept.map.a, kept.map.b);
    if (auto go = interval_intersection(kept.domain, go_pre)) {
        parts.push_back({*go, other.map.compose(kept.map)});
        costs.push_back(2);
    }
    // Keep costs aligned with the sorted piece order used by the Pam.
    std::vector<std::pair<Piece, int>> paired;
    for (size_t i = 0; i < parts.size(); ++i) paired.push_back({parts[i], costs[i]});
    std::sort(paired.begin(), paired.end(), [](const auto& a, const auto& b) {
        return a.first.domain.lo < b.first.domain.lo;
    });
    parts.clear();
    costs.clear();
    for (auto& [piece, cost] : paired) {
        parts.push_back(piece);
        costs.push_back(cost);
    }

    ReductionStep step;
    step.kind = kind;
    step.produced = Pam(kept.domain, parts);
    step.piece_cost = costs;
    // The split point between the two behaviours is the preimage of the
    // cutpoint under the kept map.
    Rational cut = f.pieces()[1].domain.lo;
    step.cutpoint = kept.map.inverse()(cut);
    step.transport = Transport{AffineMap(), AffineMap()};
    return step;
}

ReductionStep reduce_neg1(const Pam& f) {
    Classification c = classify(f);
    if (!(c.piece_count == 2 && c.injective && c.twist))
        throw PreconditionViolated("reduce_neg1 needs an injective twisted two-piece map");
    const Piece& p2 = f.pieces()[1];
    if (p2.map.a >= Rational(0)) throw PreconditionViolated("reduce_neg1 needs a2 < 0");
    Rational cut = p2.domain.lo;
    Interval im2 = p2.domain.affine_image(p2.map.a, p2.map.b);
    if (!im2.contains(cut)) throw PreconditionViolated("reduce_neg1 needs c in f2(I2)");
    if (p2.map(cut) == cut)
        throw PreconditionViolated("reduce_neg1: f2(c) = c is the fixed-point boundary case");
    ReductionStep step = accelerate_first_return(f, 1, "neg1");
    step.note = "restrict to the second interval; one map application per piece-1 step, two per "
                "composed step";
    return step;
}

std::vector<ReductionStep> reduce_neg2(const Pam& f) {
    Classification c = classify(f);
    if (!(c.piece_count == 2 && c.injective && c.twist))
        throw PreconditionViolated("reduce_neg2 needs an injective twisted two-piece map");
    const Piece *p1 = &f.pieces()[0], *p2 = &f.pieces()[1];
    if (!(p2->map.a < Rational(0) && p1->map.a > Rational(0)))
        throw PreconditionViolated("reduce_neg2 needs a2 < 0 < a1");
    {
        Rational cut = p2->domain.lo;
        Interval im1 = p1->domain.affine_image(p1->map.a, p1->map.b);
        if (!im1.contains(cut)) throw PreconditionViolated("reduce_neg2 needs c in f1(I1)");
    }

    std::vector<ReductionStep> levels;
    Pam cur = f;
    for (int k = 0; k < kMaxReductionDepth; ++k) {
        ReductionStep step = accelerate_first_return(cur, 0, "neg2-iteration");
        step.note = "level " + std::to_string(k + 1) + ", cutpoint " + step.cutpoint->to_string();
        Pam produced = step.produced;
        levels.push_back(std::move(step));
        // Stop when the new cutpoint is no longer in the image of the first
        // map of the produced level: the produced map is then functional,
        // dag-like, or a neg1 instance.
        if (produced.piece_count() < 2) return levels;
        const Piece& q1 = produced.pieces()[0];
        Rational cut = produced.pieces()[1].domain.lo;
        Interval im = q1.domain.affine_image(q1.map.a, q1.map.b);
        if (q1.map.a < Rational(0) || !im.contains(cut)) return levels;
        cur = produced;
    }
    throw ResourceLimit("neg2 iteration did not terminate within the depth cap");
}

namespace {

// Transport a point query through one acceleration step and recurse.
Decision reach_via_acceleration(const Pam& f, size_t keep, const std::string& kind,
                                const Rational& x0, const Rational& t, ReductionTrace& trace,
                                int depth) {
    const Piece& kept = f.pieces()[keep];
    const Interval& P = kept.domain;
    ReductionStep step = accelerate_first_return(f, keep, kind);
    trace.add(step.kind, "cutpoint " + step.cutpoint->to_string(),
              "watch the orbit inside " + P.to_string());

    long long push = 0;
    Rational y0 = x0;
    if (!P.contains(y0)) {
        y0 = f.eval(y0).value;
        push = 1;
        if (!P.contains(y0))
            throw Error("accelerated carrier does not absorb the pushed start point");
        if (y0 == t) return Decision::yes(1);
    }

    Rational target = t;
    long long extra = 0;
    if (!P.contains(t)) {
        // Outside P the orbit only passes through intermediates f_kept(y)
        // of composed steps; pull the target back one application.
        Rational y = kept.map.inverse()(t);
        bool is_intermediate = false;
        for (size_t i = 0; i < step.produced.piece_count(); ++i)
            if (step.piece_cost[i] == 2 && step.produced.pieces()[i].domain.contains(y))
                is_intermediate = true;
        if (!is_intermediate) {
            Decision d = Decision::no();
            d.diagnostics.push_back("target is neither in " + P.to_string() +
                                    " nor an intermediate of a composed step");
            return d;
        }
        target = y;
        extra = 1;
    }

    Decision inner = reach_easy_or_negative(step.produced, y0, target, trace, depth + 1);
    if (inner.answer != Answer::yes) return inner;

    // Translate the found hit into original-map steps by replaying the
    // accelerated orbit and summing per-piece costs.
    long long gsteps = *inner.witness;
    long long ftime = push + extra;
    Rational y = y0;
    for (long long i = 0; i < gsteps; ++i) {
        size_t idx = step.produced.piece_index(y);
        ftime += step.piece_cost[idx];
        y = step.produced.pieces()[idx].map(y);
    }
    Decision d = Decision::yes(ftime);
    d.trace = inner.trace;
    return d;
}

// The fixed-point boundary case of the first negative-slope lemma:
// f2(c) = c. The point c is fixed and no other orbit meets it, so away from
// c the map alternates I1 -> (c,1)-side -> I1 and two-step affine maps
// decide everything.
Decision decide_neg1_boundary(const Pam& f, const Rational& x0, const Rational& t,
                              ReductionTrace& trace) {
    const Piece& p1 = f.pieces()[0];
    const Piece& p2 = f.pieces()[1];
    Rational cut = p2.domain.lo;
    trace.add("neg1", "fixed-point boundary f2(c) = c at c = " + cut.to_string(),
              "orbit of any x != c avoids c; two-step affine analysis");
    if (x0 == cut) return t == cut ? Decision::yes(0) : Decision::no();
    if (t == cut) return Decision::no();  // only preimage of c is c itself
    if (t == x0) return Decision::yes(0);

    // Both pieces swap sides of c (minus the fixed point), so f^2 restricted
    // to each side is a single affine map.
    AffineMap two_from_1 = p2.map.compose(p1.map);
    AffineMap two_from_2 = p1.map.compose(p2.map);
    bool x_low = f.piece_index(x0) == 0;
    bool t_low = f.piece_index(t) == 0;
    Rational x = x0;
    long long shift = 0;
    if (x_low != t_low) {
        x = f.eval(x).value;
        shift = 1;
        if (x == t) return Decision::yes(1);
    }
    AffineMap G = t_low ? two_from_1 : two_from_2;
    AffineOrbitAnswer hp = hits_point(G, x, t);
    if (hp.outcome == AffineOrbitAnswer::Outcome::hit)
        return Decision::yes(shift + 2 * hp.index);
    Decision d = Decision::no();
    d.diagnostics.push_back("two-step affine orbit: " + hp.certificate);
    return d;
}

}  // namespace

Decision reach_easy_or_negative(const Pam& f, const Rational& x0, const Rational& t,
                                ReductionTrace& trace, int depth) {
    if (depth > kMaxReductionDepth)
        throw ResourceLimit("reduction recursion exceeded the depth cap");
    if (t == x0) return Decision::yes(0);

    ReachGraph g = reach_graph(f);
    if (g.only_self_loop_cycles()) {
        Decision d = decide_dag(f, x0, t);
        trace.absorb(d.trace);
        d.trace = trace;
        return d;
    }
    if (g.functional()) {
        Decision d = decide_functional_graph(f, x0, t);
        trace.absorb(d.trace);
        d.trace = trace;
        return d;
    }

    if (f.piece_count() != 2)
        throw PreconditionViolated("structured reductions need a two-piece map");
    const Piece& p1 = f.pieces()[0];
    const Piece& p2 = f.pieces()[1];
    Rational cut = p2.domain.lo;
    Interval im1 = p1.domain.affine_image(p1.map.a, p1.map.b);
    Interval im2 = p2.domain.affine_image(p2.map.a, p2.map.b);

    if (p2.map.a < Rational(0) && im2.contains(cut)) {
        if (p2.map(cut) == cut) return decide_neg1_boundary(f, x0, t, trace);
        return reach_via_acceleration(f, 1, "neg1", x0, t, trace, depth);
    }
    if (p2.map.a < Rational(0) && p1.map.a > Rational(0) && im1.contains(cut))
        return reach_via_acceleration(f, 0, "neg2-iteration", x0, t, trace, depth);
    if (p1.map.a < Rational(0)) {
        // Turn the picture around and try again.
        auto [rf, h] = reflect(f);
        trace.add("reflect", "h(x) = " + (f.carrier().lo + f.carrier().hi).to_string() + " - x",
                  "conjugate queries through h");
        return reach_easy_or_negative(rf, h(x0), h(t), trace, depth + 1);
    }
    throw PreconditionViolated(
        "reach_easy_or_negative: positive-slope structured map does not belong here");
}

Decision decide_negative(const Pam& f, const Rational& x0, const Rational& t) {
    Classification c = classify(f);
    bool has_negative = false;
    for (int s : c.slope_signs) has_negative |= s < 0;
    if (!(c.piece_count == 2 && c.injective && has_negative))
        throw PreconditionViolated("decide_negative needs an injective two-piece map with a "
                                   "negative slope");
    ReductionTrace trace;
    return reach_easy_or_negative(f, x0, t, trace, 0);
}

}  // namespace pam
