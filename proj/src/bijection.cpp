// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/bijection.hpp"

#include <algorithm>

namespace pam {

BijectionParams to_canonical(const Pam& f) {
    Classification cls = classify(f);
    if (cls.shape != Shape::bijection)
        throw PreconditionViolated("to_canonical requires a surjective injective two-piece map "
                                   "with positive slopes");
    const Piece& p1 = f.pieces()[0];
    const Piece& p2 = f.pieces()[1];
    Rational c = p2.domain.lo;
    // The images partition the carrier as [0-side, d) u [d, 1-side).
    Rational d = p1.domain.affine_image(p1.map.a, p1.map.b).lo;

    if (c + d > Rational(1)) {
        auto [rf, h] = reflect(f);
        BijectionParams params(rf);
        params.transport = h;
        params.reflected = true;
        params.c = Rational(1) - c;
        params.d = Rational(1) - d;
        params.pure_rotation = false;  // c' + d' = 2 - (c + d) < 1
        params.alpha = (Rational(1) - params.c - params.d) / (params.c * params.d);
        params.q1 = params.alpha + 1;
        params.q2 = params.alpha * params.d + 1;
        return params;
    }

    BijectionParams params(f);
    params.transport = Transport{AffineMap(), AffineMap()};
    params.c = c;
    params.d = d;
    if (c + d == Rational(1)) {
        params.pure_rotation = true;
        return params;
    }
    params.alpha = (Rational(1) - c - d) / (c * d);
    params.q1 = params.alpha + 1;
    params.q2 = params.alpha * d + 1;
    return params;
}

RotationRep tau_rationality(const BijectionParams& params) {
    if (params.pure_rotation)
        throw PreconditionViolated("tau_rationality requires c + d < 1");
    RotationRep rep;
    rep.q1 = params.q1;
    rep.q2 = params.q2;
    if (params.q1 == params.q2) throw PreconditionViolated("degenerate parameters q1 = q2");
    // tau = log(q2)/log(q1) is rational iff q1, q2 are multiplicatively
    // dependent; the minimal pair gives tau in lowest terms.
    if (auto ab = mult_dependent(params.q2, params.q1)) {
        rep.rational = true;
        rep.q = ab->first;
        rep.p = ab->second;
    }
    return rep;
}

Decision decide_pure_rotation(const BijectionParams& params, const Rational& x0,
                              const Rational& t) {
    if (!params.pure_rotation)
        throw PreconditionViolated("decide_pure_rotation requires c + d = 1");
    Decision dec;
    dec.trace.add("pure-rotation", "d = " + params.d.to_string(),
                  "solve x0 + n d = t (mod 1) by modular arithmetic");
    if (t == x0) {
        dec.answer = Answer::yes;
        dec.witness = 0;
        return dec;
    }
    Integer Q = params.d.den();
    Integer P = params.d.num();
    Rational k = (t - x0) * Rational(Q);
    if (!k.is_integer()) {
        dec.answer = Answer::no;
        dec.diagnostics.push_back("t - x0 is not a multiple of 1/" + Q.get_str());
        return dec;
    }
    Integer pinv;
    if (mpz_invert(pinv.get_mpz_t(), P.get_mpz_t(), Q.get_mpz_t()) == 0)
        throw Error("reduced rotation numerator not invertible; d was not in lowest terms");
    Integer n = (k.num() % Q) * pinv % Q;
    if (n < 0) n += Q;
    if (!n.fits_slong_p()) throw ResourceLimit("rotation witness does not fit a machine word");
    dec.answer = Answer::yes;
    dec.witness = n.get_si();
    return dec;
}

namespace {

// Cached exact iteration on the canonical map.
std::optional<long long> verify_hits(const Pam& f, const Rational& x0, const Rational& t,
                                     long long n) {
    Rational x = x0;
    for (long long i = 0; i < n; ++i) x = f.eval(x).value;
    return x == t ? std::optional<long long>(n) : std::nullopt;
}

}  // namespace

Decision decide_bijection(const BijectionParams& params, const Rational& x0, const Rational& t) {
    if (params.pure_rotation)
        throw PreconditionViolated("decide_bijection requires c + d < 1");
    Decision dec;
    dec.trace.add("bijection",
                  "c = " + params.c.to_string() + ", d = " + params.d.to_string() +
                      ", alpha = " + params.alpha.to_string() + ", q1 = " + params.q1.to_string() +
                      ", q2 = " + params.q2.to_string(),
                  "multiplicative equation q1^m = q0 * q2^n");
    dec.trace.add("bijection", "note: only alpha > 0 is needed for injectivity of x -> q1^x", "");
    if (t == x0) {
        dec.answer = Answer::yes;
        dec.witness = 0;
        return dec;
    }

    RotationRep rot = tau_rationality(params);
    if (rot.rational) {
        // f^q is the identity, so the whole orbit is x0, f(x0), ..., f^{q-1}(x0).
        dec.trace.add("bijection", "rational tau = " + std::to_string(rot.p) + "/" +
                                       std::to_string(rot.q),
                      "orbit is periodic with period dividing " + std::to_string(rot.q));
        Rational x = x0;
        for (long n = 1; n < rot.q; ++n) {
            x = params.canon.eval(x).value;
            if (x == t) {
                dec.answer = Answer::yes;
                dec.witness = n;
                return dec;
            }
        }
        dec.answer = Answer::no;
        dec.diagnostics.push_back("finite orbit of period dividing " + std::to_string(rot.q) +
                                  " misses t");
        return dec;
    }

    Rational q0 = (params.alpha * x0 + 1) / (params.alpha * t + 1);
    MultSolutionSet sols = solve_mult_relation(q0, params.q1, params.q2);
    dec.trace.add("bijection", "q0 = " + q0.to_string(),
                  "exponent system solved over the primes of q0, q1, q2");
    if (sols.kind != MultSolutionSet::Kind::finite)
        throw Error("irrational rotation produced an infinite multiplicative solution family");
    for (const ExponentPair& cand : sols.points) {
        if (auto n = verify_hits(params.canon, x0, t, cand.n)) {
            dec.answer = Answer::yes;
            dec.witness = *n;
            dec.trace.add("bijection",
                          "solution (n, m) = (" + std::to_string(cand.n) + ", " +
                              std::to_string(cand.m) + ")",
                          "verified by exact iteration");
            return dec;
        }
        dec.diagnostics.push_back("algebraic candidate n = " + std::to_string(cand.n) +
                                  " failed exact verification");
    }
    dec.answer = Answer::no;
    if (sols.points.empty())
        dec.diagnostics.push_back("multiplicative equation has no nonnegative solutions");
    return dec;
}

Decision bijection_reach(const Pam& f, const Rational& x0, const Rational& t) {
    BijectionParams params = to_canonical(f);
    Rational y0 = params.transported(x0);
    Rational ty = params.transported(t);
    ReductionTrace pre;
    if (params.reflected)
        pre.add("reflect", "h(x) = 1 - x", "canonical parameters need c + d <= 1");
    Decision d = params.pure_rotation ? decide_pure_rotation(params, y0, ty)
                                      : decide_bijection(params, y0, ty);
    pre.absorb(d.trace);
    d.trace = pre;
    return d;
}

ConjugacyReport verify_conjugacy(const BijectionParams& params, int sample_count, long precision) {
    if (params.pure_rotation)
        throw PreconditionViolated("verify_conjugacy requires c + d < 1");
    ConjugacyReport report;
    report.max_width = Rational(0);
    const Rational& alpha = params.alpha;

    auto h_enclosure = [&](const Rational& x, long prec) {
        DyadicInterval num = log_enclosure(alpha * x + 1, prec);
        DyadicInterval den = log_enclosure(alpha + 1, prec);
        return div(num, den, prec);
    };

    // Deterministic pseudo-random rationals in [0, 1).
    unsigned long long state = 0x9e3779b97f4a7c15ull;
    auto next_sample = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        long num = static_cast<long>(state >> 40);
        long den = (1l << 24);
        return Rational(num % den, den);
    };

    for (int i = 0; i < sample_count; ++i) {
        Rational x = i == 0 ? Rational(0) : next_sample();
        if (!params.canon.carrier().contains(x)) x = x / 2 + Rational(1, 4);
        auto ev = params.canon.eval(x);
        bool wrap = ev.branch == 2;  // upper piece wraps around the circle

        bool ok = false;
        for (long prec = precision; prec <= precision + 64; prec *= 2) {
            DyadicInterval lhs = h_enclosure(ev.value, prec);
            DyadicInterval hx = h_enclosure(x, prec);
            DyadicInterval tau = div(log_enclosure(alpha * params.d + 1, prec),
                                     log_enclosure(alpha + 1, prec), prec);
            DyadicInterval rhs = add(hx, tau, prec);
            if (wrap) rhs = shift(rhs, Rational(-1), prec);
            Rational width = max(lhs.width(), rhs.width());
            report.max_width = max(report.max_width, width);
            if (lhs.overlaps(rhs)) {
                ok = true;
                break;
            }
            if (width <= Rational(1, 2).pow(precision)) break;  // separated at full precision
        }
        ++report.samples;
        if (!ok) ++report.failures;
    }
    return report;
}

}  // namespace pam
