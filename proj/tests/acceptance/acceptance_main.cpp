// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one criterion per check, one pass/fail line each, exit
// nonzero if anything fails. Expected values are frozen from the worked
// instances; randomized checks cross-validate against the brute-force
// simulation oracle.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "../oracle.hpp"
#include "pam/bijection.hpp"
#include "pam/gap.hpp"
#include "pam/loop_dsl.hpp"
#include "pam/orbit_lab.hpp"
#include "pam/query.hpp"

using namespace pam;
using namespace pam::testing;

namespace {

struct Harness {
    int failures = 0;

    void run(int index, const std::string& label, const std::function<void()>& body) {
        auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        if (error.empty()) {
            std::printf("PASS criterion %d: %s (%lld ms)\n", index, label.c_str(),
                        static_cast<long long>(ms));
        } else {
            ++failures;
            std::printf("FAIL criterion %d: %s (%lld ms): %s\n", index, label.c_str(),
                        static_cast<long long>(ms), error.c_str());
        }
        std::fflush(stdout);
    }
};

void require(bool cond, const std::string& what) {
    if (!cond) throw Error("check failed: " + what);
}

}  // namespace

int main() {
    Harness h;

    h.run(1, "oracle equivalence on 200 random injective two-piece maps", [] {
        Rng rng(1001);
        for (int i = 0; i < 200; ++i) {
            Pam f = random_injective_two_piece(rng, 32);
            Rational x0 = rng.unit_rational(32);
            Rational t = rng.flip() ? rng.unit_rational(32) : [&] {
                Rational x = x0;
                for (long n = rng.integer(0, 16); n > 0; --n) x = f.eval(x).value;
                return x;
            }();
            Decision d = reach(f, x0, t);
            require(d.answer != Answer::unknown, "injective two-piece maps are always decided");
            if (d.answer == Answer::yes) {
                require(d.witness.has_value(), "yes carries a witness");
                Rational x = x0;
                for (long long n = 0; n < *d.witness; ++n) x = f.eval(x).value;
                require(x == t, "witness re-verifies by exact iteration");
            } else {
                require(!brute_force_reach(f, x0, t, 10000).has_value(),
                        "no-answer contradicted by brute force");
            }
        }
    });

    h.run(2, "bijection c=1/2 d=1/3: reach(0,7/9)=yes n=2, reach(0,1/2)=no, tau irrational",
          [] {
              Pam f = bijection_map(Rational(1, 2), Rational(1, 3));
              Decision d = reach(f, Rational(0), Rational(7, 9));
              require(d.answer == Answer::yes && *d.witness == 2, "reach(0, 7/9) = yes n=2");
              d = reach(f, Rational(0), Rational(1, 2));
              require(d.answer == Answer::no, "reach(0, 1/2) = no");
              RotationRep rot = tau_rationality(to_canonical(f));
              require(!rot.rational, "tau is irrational");
          });

    h.run(3, "bijection c=d=1/3: tau=1/2, f^2 identity, periodic everywhere", [] {
        Pam f = bijection_map(Rational(1, 3), Rational(1, 3));
        RotationRep rot = tau_rationality(to_canonical(f));
        require(rot.rational && rot.p == 1 && rot.q == 2, "tau = 1/2");
        Pam f2 = compose_power(f, 2);
        for (const Piece& p : f2.pieces())
            require(p.map.is_identity(), "f^2 is the identity on every piece");
        Rng rng(1003);
        for (int i = 0; i < 20; ++i) {
            Decision d = periodic(f, rng.unit_rational(64));
            require(d.answer == Answer::yes, "random points are periodic");
        }
    });

    h.run(4, "gap lambda=1/2 mu=1 delta=3/4: cycle, Phi enclosures, threshold, measure",
          [] {
              Pam f = gap_map(Rational(1, 2), Rational(1), Rational(3, 4));
              GapParams gp = to_gap_params(f);
              CycleInfo cycle = rotation_and_cycle(gp);
              require(cycle.p == 1 && cycle.q == 2, "(p, q) = (1, 2)");
              require(cycle.points == std::vector<Rational>{Rational(1, 6), Rational(5, 6)},
                      "cycle points {1/6, 5/6}");

              DyadicInterval phi0 = hecke_mahler_phi(gp, 1, 2, Rational(0), 40);
              require(phi0.contains(Rational(1, 6)), "Phi(0) enclosure contains 1/6");
              require(phi0.width() <= Rational(1, 2).pow(40), "Phi(0) width <= 2^-40");
              DyadicInterval phi_half = hecke_mahler_phi(gp, 1, 2, Rational(1, 2), 40);
              require(phi_half.contains(Rational(5, 6)), "Phi(1/2) enclosure contains 5/6");
              require(phi_half.width() <= Rational(1, 2).pow(40), "Phi(1/2) width <= 2^-40");

              ThresholdCert cert = threshold(gp, cycle, Rational(1, 3));
              require(cert.N <= 4, "threshold N <= 4 for t = 1/3");
              Decision d = reach(f, Rational(0), Rational(1, 3));
              require(d.answer == Answer::no, "reach(0, 1/3) = no");

              IntervalSet s(f.carrier());
              for (int n = 1; n <= 30; ++n) {
                  s = image_set(f, s);
                  require(s.measure() <= Rational(1, 4).pow(n / 2),
                          "measure(f^n(U)) <= (1/4)^floor(n/2)");
              }
          });

    h.run(5, "gap lambda=1/2 mu=2 delta=2/3: cycle {0, 2/3}, reach answers", [] {
        Pam f = gap_map(Rational(1, 2), Rational(2), Rational(2, 3));
        GapParams gp = to_gap_params(f);
        CycleInfo cycle = rotation_and_cycle(gp);
        require(cycle.p == 1 && cycle.q == 2, "rho = 1/2");
        require(cycle.points == std::vector<Rational>{Rational(0), Rational(2, 3)},
                "cycle {0, 2/3}");
        Decision d = reach(f, Rational(0), Rational(2, 3));
        require(d.answer == Answer::yes && *d.witness == 1, "reach(0, 2/3) = yes n=1");
        d = reach(f, Rational(1, 2), Rational(0));
        require(d.answer == Answer::no, "reach(1/2, 0) = no by injectivity");
    });

    h.run(6, "expanding map from 1/5: 3-adic certificate, distinct orbit above 1/5", [] {
        Pam f = expanding_map();
        auto cert = valuation_certificate(f, Rational(1, 5), 3, 1000);
        require(cert.has_value(), "certificate exists for p = 3");
        Rational x(1, 5);
        long prev = padic_valuation(x, 3).value();
        x = f.eval(x).value;
        for (int n = 1; n <= 200; ++n) {
            long v = padic_valuation(x, 3).value();
            require(v < prev, "v_3 strictly decreasing for 1 <= n <= 200");
            prev = v;
            x = f.eval(x).value;
        }
        std::set<std::string> seen;
        x = Rational(1, 5);
        for (int n = 0; n < 10000; ++n) {
            require(x >= Rational(1, 5), "orbit stays at or above 1/5");
            require(seen.insert(x.to_string()).second, "orbit values pairwise distinct");
            x = f.eval(x).value;
        }
    });

    h.run(7, "density smoke test: 10^5 orbit points visit all 64 cells", [] {
        AccumulationStats s = accumulation_stats(bijection_map(Rational(1, 2), Rational(1, 3)),
                                                 Rational(0), 100000, 6);
        for (size_t c = 0; c < s.counts.size(); ++c)
            require(s.counts[c] > 0, "cell " + std::to_string(c) + " visited");
    });

    h.run(8, "negative-slope pipeline: c'=2/3, self-loop graph, reach(0,31/64)=yes n=2", [] {
        Pam f = neg1_map();
        ReductionStep step = reduce_neg1(f);
        require(*step.cutpoint == Rational(2, 3), "c' = 2/3");
        require(reach_graph(step.produced).only_self_loop_cycles(),
                "accelerated graph has self-loops only");
        Decision d = reach(f, Rational(0), Rational(31, 64));
        require(d.answer == Answer::yes && *d.witness == 2, "reach(0, 31/64) = yes n=2");
    });

    h.run(9, "loop DSL: intro program halts in 3, bijection program diverges, round-trips",
          [] {
              LoopProgram intro = parse_loop_program(
                  "x := 1/2;\n"
                  "while x != 2/9 {\n"
                  "  if x < 1/2 { x := 2/3 * x + 2/3 } else { x := 4/3 * x - 2/3 }\n"
                  "}\n");
              HaltingAnswer a = decide_halting(intro);
              require(a.kind == HaltingAnswer::Kind::halts && a.steps == 3, "halts with n=3");

              LoopProgram diverging = parse_loop_program(
                  "x := 0;\n"
                  "while x != 1/2 {\n"
                  "  if x < 1/2 { x := 4/3 * x + 1/3 } else { x := 2/3 * x - 1/3 }\n"
                  "}\n");
              a = decide_halting(diverging);
              require(a.kind == HaltingAnswer::Kind::diverges, "diverges");

              Rng rng(1009);
              auto random_map = [&]() {
                  switch (rng.integer(0, 2)) {
                      case 0:
                          return AffineMap(rng.rational(-20, 20, 9), rng.rational(-20, 20, 9));
                      case 1: return AffineMap(Rational(1), rng.rational(-20, 20, 9));
                      default: return AffineMap(Rational(0), rng.rational(-20, 20, 9));
                  }
              };
              for (int i = 0; i < 500; ++i) {
                  LoopProgram p;
                  p.x0 = rng.rational(-30, 30, 11);
                  p.target = rng.rational(-30, 30, 11);
                  p.guard = rng.rational(-30, 30, 11);
                  p.branch_lt = random_map();
                  p.branch_ge = random_map();
                  LoopProgram q = parse_loop_program(pretty_print(p));
                  require(p.x0 == q.x0 && p.target == q.target && p.guard == q.guard &&
                              p.branch_lt == q.branch_lt && p.branch_ge == q.branch_ge,
                          "parse(pretty_print(ast)) == ast");
              }
          });

    h.run(10, "probe (1/2, 1/3, 1): witness n=1, bound 2, monotone in gamma", [] {
        ProbeResult r = lagrange_probe(Rational(1, 2), Rational(1, 3), Rational(1), 1000);
        require(r.witness.has_value() && r.witness->first == 1, "witness n = 1");
        require(r.witness->second == Rational(1, 3), "1 * f(0) = 1/3 < 1");
        require(r.lagrange_upper == Rational(2), "Lagrange upper bound 2*alpha*gamma = 2");
        bool prev = false;
        for (int k = 1; k <= 10; ++k) {
            ProbeResult rk =
                lagrange_probe(Rational(1, 2), Rational(1, 3), Rational(k, 10), 2000);
            if (prev) require(rk.witness.has_value(), "monotone in gamma");
            prev = rk.witness.has_value();
        }
    });

    if (h.failures == 0) {
        std::printf("acceptance: all 10 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", h.failures);
    return 1;
}
