// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>

#include "pam/number_theory.hpp"
#include "pam/pam.hpp"

namespace pam {

struct OrbitRecord {
    long long index;
    Rational value;
    std::string decimal;  // fixed-precision rendering of value
    int branch;           // 1-based piece containing value
};

// Streams the exact orbit prefix x0, f(x0), ..., f^n(x0) to `emit`.
void simulate(const Pam& f, const Rational& x0, long long n,
              const std::function<void(const OrbitRecord&)>& emit, int decimal_digits = 12);

// A p-adic proof that an orbit is infinite: every piece slope has
// v_p(slope) <= -1 and from step n0 on the valuation of the orbit value
// drops below every offset's valuation, so it strictly decreases forever.
struct ValuationCertificate {
    Integer prime;
    std::vector<long> slope_valuations;          // per piece, all <= -1
    std::vector<Valuation> offset_valuations;    // per piece
    long long entry_index = 0;                   // n0
    long entry_valuation = 0;                    // v0 = v_p(f^{n0}(x0))
};

std::optional<ValuationCertificate> valuation_certificate(const Pam& f, const Rational& x0,
                                                          const Integer& p, long long horizon);

// Histogram of the first n orbit points over 2^grid_bits dyadic cells of the
// unit interval, with the visited-cell growth curve and the cells still
// receiving mass in the second half of the run.
struct AccumulationStats {
    int grid_bits = 0;
    std::vector<unsigned long long> counts;                  // 2^grid_bits cells
    std::vector<std::pair<long long, size_t>> visited_growth;  // (steps, distinct cells)
    std::vector<size_t> persistent_cells;                    // visited in the second half
};

AccumulationStats accumulation_stats(const Pam& f, const Rational& x0, long long n,
                                     int grid_bits);

// Bounded probe of the shrinking-interval question n * f^n(0) < gamma on the
// bijection defined by (c, d). A missing witness is only "none found up to
// the horizon", never a decision.
struct ProbeResult {
    Rational gamma;
    long long horizon = 0;
    std::optional<std::pair<long long, Rational>> witness;  // (n, n*f^n(0))
    std::optional<Rational> lagrange_upper;                 // 2*alpha*gamma on success
    Rational sandwich_lo, sandwich_hi;                      // alpha*gamma/2, 2*alpha*gamma
    std::string note;
};

ProbeResult lagrange_probe(const Rational& c, const Rational& d, const Rational& gamma,
                           long long horizon);

// The canonical bijection map for parameters (c, d) with c + d < 1.
Pam bijection_from_parameters(const Rational& c, const Rational& d);

}  // namespace pam
