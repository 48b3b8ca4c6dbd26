// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "oracle.hpp"
#include "pam/reduction.hpp"

using namespace pam;
using namespace pam::testing;

TEST_CASE("dag walk decides single-piece and layered maps") {
    Pam single = parse_pam_text("carrier 0 1\npiece 0 1 1/2 1/2\n");
    Decision d = decide_dag(single, Rational(0), Rational(7, 8));
    CHECK(d.answer == Answer::yes);
    CHECK(*d.witness == 3);
    d = decide_dag(single, Rational(0), Rational(1, 3));
    CHECK(d.answer == Answer::no);
    d = decide_dag(single, Rational(1, 3), Rational(1, 3));
    CHECK(d.answer == Answer::yes);
    CHECK(*d.witness == 0);

    CHECK_THROWS_AS(decide_dag(intro_map(), Rational(0), Rational(1, 3)),
                    PreconditionViolated);
}

TEST_CASE("functional-graph case reduces to f^p") {
    // Two swapping contracting pieces: x/4 + 1/2 and x/4.
    Pam f = parse_pam_text("carrier 0 1\n"
                           "piece 0 1/2 1/4 1/2\n"
                           "piece 1/2 1 1/4 0\n");
    REQUIRE(reach_graph(f).functional());
    Decision d = decide_functional_graph(f, Rational(0), Rational(1, 8));
    CHECK(d.answer == Answer::yes);
    CHECK(*d.witness == 2);
    d = decide_functional_graph(f, Rational(0), Rational(1, 3));
    CHECK(d.answer == Answer::no);
    CHECK(!brute_force_reach(f, Rational(0), Rational(1, 3), 10000).has_value());
    d = decide_functional_graph(f, Rational(2, 7), Rational(2, 7));
    CHECK(d.answer == Answer::yes);
    CHECK(*d.witness == 0);

    CHECK_THROWS_AS(decide_functional_graph(intro_map(), Rational(0), Rational(1, 3)),
                    PreconditionViolated);
}

TEST_CASE("reduce_neg1 builds the accelerated map with exact flags") {
    Pam f = neg1_map();
    ReductionStep step = reduce_neg1(f);
    CHECK(*step.cutpoint == Rational(2, 3));
    REQUIRE(step.produced.piece_count() == 2);
    // Exact boundary: f2(2/3) = 1/2 stays in I2, so 2/3 belongs to the
    // uncomposed piece and the composed piece is open at 2/3.
    const Piece& g1 = step.produced.pieces()[0];
    const Piece& g2 = step.produced.pieces()[1];
    CHECK(g1.domain == Interval::closed(Rational(1, 2), Rational(2, 3)));
    CHECK(g1.map == AffineMap(Rational(-3, 4), Rational(1)));
    CHECK(g2.domain == Interval::open(Rational(2, 3), Rational(1)));
    CHECK(g2.map == AffineMap(Rational(-3, 16), Rational(15, 16)));
    CHECK(step.piece_cost == std::vector<int>{1, 2});

    // The produced graph has self-loops only.
    CHECK(reach_graph(step.produced).only_self_loop_cycles());

    CHECK_THROWS_AS(reduce_neg1(intro_map()), PreconditionViolated);
}

TEST_CASE("neg1 decisions transport back to the original map") {
    Pam f = neg1_map();
    // 0 -> 11/16 -> 31/64 under f.
    CHECK(brute_force_reach(f, Rational(0), Rational(31, 64), 100) == 2);
    Decision d = decide_negative(f, Rational(0), Rational(31, 64));
    CHECK(d.answer == Answer::yes);
    CHECK(*d.witness == 2);

    d = decide_negative(f, Rational(0), Rational(1, 2));
    CHECK(d.answer == Answer::no);
    CHECK(!brute_force_reach(f, Rational(0), Rational(1, 2), 10000).has_value());

    d = decide_negative(f, Rational(3, 4), Rational(3, 4));
    CHECK(d.answer == Answer::yes);
    CHECK(*d.witness == 0);

    // The inner dag decision on the produced map (g-steps).
    ReductionStep step = reduce_neg1(f);
    Decision inner = decide_dag(step.produced, Rational(11, 16), Rational(207, 256));
    CHECK(inner.answer == Answer::yes);
    CHECK(*inner.witness == 1);
}

TEST_CASE("reduce_neg2 iterates until the cutpoint leaves the first image") {
    Pam f = neg2_map();
    Classification c = classify(f);
    REQUIRE(c.shape == Shape::negative_slope);
    REQUIRE(c.twist);

    auto levels = reduce_neg2(f);
    REQUIRE(levels.size() == 2);
    CHECK(*levels[0].cutpoint == Rational(1, 3));  // c1 = f1^{-1}(1/2)
    CHECK(*levels[1].cutpoint == Rational(0));     // c2 = f1^{-1}(1/3)

    // eq-style invariants along the trace: the first map never changes and
    // its minimum value is constant.
    const Pam& g1 = levels[0].produced;
    REQUIRE(g1.piece_count() == 2);
    CHECK(g1.pieces()[0].map == f.pieces()[0].map);
    CHECK(g1.pieces()[0].map(Rational(0)) == Rational(1, 3));  // m0 = f1(0)
    CHECK(g1.pieces()[1].map == AffineMap(Rational(-1, 6), Rational(11, 36)));

    // Terminal level: single piece (the first part is empty), a dag case.
    const Pam& g2 = levels[1].produced;
    CHECK(g2.piece_count() == 1);
    CHECK(reach_graph(g2).only_self_loop_cycles());
    // Termination: c2 < m0.
    CHECK(*levels[1].cutpoint < Rational(1, 3));
}

TEST_CASE("neg2 transports validate against brute force") {
    Pam f = neg2_map();
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        Rational x0 = rng.unit_rational(24);
        Rational t = rng.flip() ? rng.unit_rational(24) : [&] {
            Rational x = x0;
            for (long n = rng.integer(0, 12); n > 0; --n) x = f.eval(x).value;
            return x;
        }();
        Decision d = decide_negative(f, x0, t);
        auto oracle = brute_force_reach(f, x0, t, 10000);
        if (d.answer == Answer::yes) {
            REQUIRE(oracle.has_value());
            CHECK(*oracle == *d.witness);
        } else {
            CHECK(!oracle.has_value());
        }
    }
}

TEST_CASE("transport soundness across random negative-slope instances") {
    Rng rng(32);
    int tested = 0;
    while (tested < 60) {
        Pam f = random_injective_two_piece(rng, 16);
        Classification c = classify(f);
        if (c.shape != Shape::negative_slope) continue;
        ++tested;
        for (int j = 0; j < 8; ++j) {
            Rational x0 = rng.unit_rational(16);
            Rational t = rng.flip() ? rng.unit_rational(16) : [&] {
                Rational x = x0;
                for (long n = rng.integer(0, 10); n > 0; --n) x = f.eval(x).value;
                return x;
            }();
            Decision d = decide_negative(f, x0, t);
            auto oracle = brute_force_reach(f, x0, t, 10000);
            if (d.answer == Answer::yes) {
                REQUIRE(d.witness.has_value());
                REQUIRE(oracle.has_value());
                CHECK(*oracle == *d.witness);
            } else {
                CHECK(!oracle.has_value());
            }
        }
    }
}

TEST_CASE("fixed-point boundary case of the first lemma") {
    // f2(c) = c with c = 1/2: f2 = -x/2 + 3/4, image (1/4, 1/2].
    Pam f = parse_pam_text("carrier 0 1\n"
                           "piece 0 1/2 1/4 5/8\n"
                           "piece 1/2 1 -1/2 3/4\n");
    Classification c = classify(f);
    REQUIRE(c.shape == Shape::negative_slope);
    CHECK_THROWS_AS(reduce_neg1(f), PreconditionViolated);

    Decision d = decide_negative(f, Rational(1, 2), Rational(1, 2));
    CHECK(d.answer == Answer::yes);
    d = decide_negative(f, Rational(1, 4), Rational(1, 2));
    CHECK(d.answer == Answer::no);  // only c maps to c
    d = decide_negative(f, Rational(1, 2), Rational(1, 4));
    CHECK(d.answer == Answer::no);

    Rng rng(33);
    for (int i = 0; i < 100; ++i) {
        Rational x0 = rng.unit_rational(20);
        Rational t = rng.flip() ? rng.unit_rational(20) : [&] {
            Rational x = x0;
            for (long n = rng.integer(0, 8); n > 0; --n) x = f.eval(x).value;
            return x;
        }();
        Decision dd = decide_negative(f, x0, t);
        auto oracle = brute_force_reach(f, x0, t, 5000);
        CHECK((dd.answer == Answer::yes) == oracle.has_value());
        if (oracle) CHECK(*dd.witness == *oracle);
    }
}
