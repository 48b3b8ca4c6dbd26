// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/orbit_lab.hpp"

#include <algorithm>

namespace pam {

void simulate(const Pam& f, const Rational& x0, long long n,
              const std::function<void(const OrbitRecord&)>& emit, int decimal_digits) {
    Rational x = x0;
    for (long long i = 0;; ++i) {
        auto ev = f.eval(x);
        emit({i, x, x.to_decimal(decimal_digits), ev.branch});
        if (i == n) break;
        x = ev.value;
    }
}

std::optional<ValuationCertificate> valuation_certificate(const Pam& f, const Rational& x0,
                                                          const Integer& p, long long horizon) {
    ValuationCertificate cert;
    cert.prime = p;
    for (const Piece& piece : f.pieces()) {
        if (piece.map.a.is_zero()) return std::nullopt;
        Valuation va = padic_valuation(piece.map.a, p);
        if (!(va < Valuation::of(0))) return std::nullopt;  // need v_p(slope) <= -1
        cert.slope_valuations.push_back(va.value());
        cert.offset_valuations.push_back(padic_valuation(piece.map.b, p));
    }

    // Search for the entry step: a value whose valuation v satisfies
    // v + v_p(a_i) < v_p(b_i) for every piece i. From there on the valuation
    // of f(x) = a_i x + b_i is exactly v + v_p(a_i) < v, and the condition
    // sustains itself because valuations only decrease.
    Rational x = x0;
    for (long long n = 0; n <= horizon; ++n) {
        if (!x.is_zero()) {
            long v = padic_valuation(x, p).value();
            bool ok = true;
            for (size_t i = 0; i < f.piece_count(); ++i) {
                Valuation sum = Valuation::of(v + cert.slope_valuations[i]);
                if (!(sum < cert.offset_valuations[i])) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                cert.entry_index = n;
                cert.entry_valuation = v;
                return cert;
            }
        }
        x = f.eval(x).value;
    }
    return std::nullopt;
}

AccumulationStats accumulation_stats(const Pam& f, const Rational& x0, long long n,
                                     int grid_bits) {
    if (grid_bits < 0 || grid_bits > 30) throw Error("grid_bits out of range");
    AccumulationStats stats;
    stats.grid_bits = grid_bits;
    size_t cells = static_cast<size_t>(1) << grid_bits;
    stats.counts.assign(cells, 0);
    std::vector<long long> last_hit(cells, -1);

    Rational span = f.carrier().length();
    Rational lo = f.carrier().lo;
    size_t distinct = 0;
    long long next_checkpoint = 1;
    Rational x = x0;
    for (long long i = 0; i < n; ++i) {
        // Exact cell assignment relative to the carrier span.
        Rational rel = (x - lo) / span;
        Integer cell_idx = (rel * Rational(static_cast<long>(cells))).floor();
        size_t cell = std::min(cells - 1, static_cast<size_t>(cell_idx.get_ui()));
        if (stats.counts[cell] == 0) ++distinct;
        ++stats.counts[cell];
        last_hit[cell] = i;
        if (i + 1 == next_checkpoint || i + 1 == n) {
            stats.visited_growth.push_back({i + 1, distinct});
            next_checkpoint *= 2;
        }
        x = f.eval(x).value;
    }
    for (size_t c = 0; c < cells; ++c)
        if (last_hit[c] >= n / 2) stats.persistent_cells.push_back(c);
    return stats;
}

Pam bijection_from_parameters(const Rational& c, const Rational& d) {
    if (!(Rational(0) < c && c < Rational(1) && Rational(0) < d && d < Rational(1)))
        throw PreconditionViolated("bijection parameters must lie in (0, 1)");
    std::vector<Piece> pieces;
    pieces.push_back({Interval::closed_open(Rational(0), c),
                      AffineMap((Rational(1) - d) / c, d)});
    pieces.push_back({Interval::closed_open(c, Rational(1)),
                      AffineMap(d / (Rational(1) - c), -c * d / (Rational(1) - c))});
    return Pam(Interval::closed_open(Rational(0), Rational(1)), std::move(pieces));
}

ProbeResult lagrange_probe(const Rational& c, const Rational& d, const Rational& gamma,
                           long long horizon) {
    if (!(Rational(0) < c && c < Rational(1) && Rational(0) < d && d < Rational(1) &&
          c + d < Rational(1)))
        throw PreconditionViolated("probe needs c, d in (0,1) with c + d < 1");
    ProbeResult res;
    res.gamma = gamma;
    res.horizon = horizon;
    Rational alpha = (Rational(1) - c - d) / (c * d);
    res.sandwich_lo = alpha * gamma / 2;
    res.sandwich_hi = alpha * gamma * 2;
    res.note = "a yes at gamma stays yes for every larger gamma; no conclusion from a miss";

    Pam f = bijection_from_parameters(c, d);
    Rational x(0);
    for (long long n = 1; n <= horizon; ++n) {
        x = f.eval(x).value;
        if (Rational(n) * x < gamma) {
            res.witness = {n, Rational(n) * x};
            res.lagrange_upper = res.sandwich_hi;
            break;
        }
    }
    return res;
}

}  // namespace pam
