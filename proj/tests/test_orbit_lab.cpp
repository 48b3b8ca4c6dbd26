// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "oracle.hpp"
#include "pam/orbit_lab.hpp"

using namespace pam;
using namespace pam::testing;

TEST_CASE("simulate streams the exact orbit with rendered decimals") {
    std::vector<OrbitRecord> rec;
    simulate(expanding_map(), Rational(1, 5), 4,
             [&](const OrbitRecord& r) { rec.push_back(r); });
    REQUIRE(rec.size() == 5);
    CHECK(rec[0].value == Rational(1, 5));
    CHECK(rec[1].value == Rational(4, 15));
    CHECK(rec[2].value == Rational(16, 45));
    CHECK(rec[3].value == Rational(64, 135));
    CHECK(rec[4].value == Rational(256, 405));
    CHECK(rec[1].decimal == Rational(4, 15).to_decimal(12));

    rec.clear();
    simulate(gap_map(Rational(1, 2), Rational(1), Rational(3, 4)), Rational(0), 4,
             [&](const OrbitRecord& r) { rec.push_back(r); });
    CHECK(rec[1].value == Rational(3, 4));
    CHECK(rec[2].value == Rational(1, 8));
    CHECK(rec[3].value == Rational(13, 16));
    CHECK(rec[4].value == Rational(5, 32));

    // A fixed point yields a constant stream.
    Pam fixed = parse_pam_text("carrier 0 1\npiece 0 1 1/2 1/4\n");
    rec.clear();
    simulate(fixed, Rational(1, 2), 3, [&](const OrbitRecord& r) { rec.push_back(r); });
    for (const auto& r : rec) CHECK(r.value == Rational(1, 2));
}

TEST_CASE("valuation certificate on the expanding example") {
    auto cert = valuation_certificate(expanding_map(), Rational(1, 5), 3, 100);
    REQUIRE(cert.has_value());
    CHECK(cert->entry_index == 1);
    CHECK(cert->entry_valuation == -1);
    CHECK(cert->slope_valuations == std::vector<long>{-1, -1});
    CHECK(cert->offset_valuations[0].is_infinite());
    CHECK(cert->offset_valuations[1] == Valuation::of(-1));

    // Soundness: the valuation drops by exactly one every step afterwards,
    // and the values stay distinct.
    Rational x = Rational(4, 15);
    long v = -1;
    std::vector<Rational> seen;
    for (int n = 0; n < 200; ++n) {
        seen.push_back(x);
        x = expanding_map().eval(x).value;
        long w = padic_valuation(x, 3).value();
        CHECK(w == v - 1);
        v = w;
    }
    for (size_t i = 0; i < seen.size(); ++i)
        for (size_t j = i + 1; j < seen.size(); ++j) CHECK(seen[i] != seen[j]);
}

TEST_CASE("no certificate exists for periodic or integer-slope instances") {
    // A cycle point can never carry a sound infinite-orbit proof.
    Pam g = gap_map(Rational(1, 2), Rational(2), Rational(2, 3));
    for (long p : {2l, 3l, 5l}) CHECK(!valuation_certificate(g, Rational(0), p, 500));

    Pam integer_slopes = parse_pam_text("carrier 0 1\n"
                                        "piece 0 1/2 2 0\n"
                                        "piece 1/2 1 2 -1\n");
    CHECK(!valuation_certificate(integer_slopes, Rational(1, 3), 3, 500));
}

TEST_CASE("accumulation statistics are exact and deterministic") {
    AccumulationStats s = accumulation_stats(expanding_map(), Rational(1, 5), 10000, 6);
    CHECK(s.counts[0] == 0);  // the orbit misses [0, 1/64) entirely
    unsigned long long total = 0;
    for (auto c : s.counts) total += c;
    CHECK(total == 10000);
    AccumulationStats again = accumulation_stats(expanding_map(), Rational(1, 5), 10000, 6);
    CHECK(s.counts == again.counts);
    CHECK(s.persistent_cells == again.persistent_cells);

    // Gap map: the mass concentrates on the two cells holding 1/6 and 5/6.
    AccumulationStats g =
        accumulation_stats(gap_map(Rational(1, 2), Rational(1), Rational(3, 4)), Rational(0),
                           10000, 6);
    size_t cell_16 = static_cast<size_t>((Rational(1, 6) * Rational(64)).floor().get_ui());
    size_t cell_56 = static_cast<size_t>((Rational(5, 6) * Rational(64)).floor().get_ui());
    REQUIRE(g.persistent_cells.size() == 2);
    CHECK(g.persistent_cells[0] == std::min(cell_16, cell_56));
    CHECK(g.persistent_cells[1] == std::max(cell_16, cell_56));
}

TEST_CASE("probe finds the first-step witness at gamma = 1") {
    ProbeResult r = lagrange_probe(Rational(1, 2), Rational(1, 3), Rational(1), 1000);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->first == 1);
    CHECK(r.witness->second == Rational(1, 3));
    REQUIRE(r.lagrange_upper.has_value());
    CHECK(*r.lagrange_upper == Rational(2));
    CHECK(r.sandwich_lo == Rational(1, 2));
    CHECK(r.sandwich_hi == Rational(2));
}

TEST_CASE("probe witnesses are exact and monotone in gamma") {
    // Independent oracle scan.
    Pam f = bijection_from_parameters(Rational(1, 2), Rational(1, 3));
    auto oracle = [&](const Rational& gamma, long long horizon) {
        Rational x(0);
        for (long long n = 1; n <= horizon; ++n) {
            x = f.eval(x).value;
            if (Rational(n) * x < gamma) return std::optional<long long>(n);
        }
        return std::optional<long long>();
    };

    bool prev_yes = false;
    for (int k = 1; k <= 10; ++k) {
        Rational gamma(k, 10);
        ProbeResult r = lagrange_probe(Rational(1, 2), Rational(1, 3), gamma, 1000);
        auto expect = oracle(gamma, 1000);
        CHECK(r.witness.has_value() == expect.has_value());
        if (r.witness) {
            CHECK(r.witness->first == *expect);
            CHECK(Rational(r.witness->first) * Rational(0) + r.witness->second < gamma);
        }
        // monotonicity: once yes, larger gamma stays yes
        if (prev_yes) CHECK(r.witness.has_value());
        prev_yes = r.witness.has_value();
    }
}
