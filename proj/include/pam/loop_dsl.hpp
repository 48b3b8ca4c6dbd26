// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "pam/decision.hpp"

namespace pam {

// AST of the loop language
//   x := <rat>; while x != <rat> { if x < <rat> { <assign> } else { <assign> } }
// where an assignment is "x := a * x +- b", "x := x +- b" or "x := b".
struct LoopProgram {
    Rational x0;
    Rational target;
    Rational guard;
    AffineMap branch_lt;  // taken when x < guard
    AffineMap branch_ge;  // taken otherwise
    int source_line = 1;  // where the program started, for diagnostics
};

// Throws SyntaxError (with line and column) or NonRationalLiteral.
LoopProgram parse_loop_program(const std::string& text);

// Normal form whose reparse yields the identical AST.
std::string pretty_print(const LoopProgram& prog);

// One unguarded update step of the program semantics.
Rational program_step(const LoopProgram& prog, const Rational& x);

// Compiles to a two-piece map on the unit interval together with the
// transported start and target points. The carrier is [0, 1) when the data
// already fit, otherwise the smallest verified invariant interval; throws
// NotSelfMap when none exists and GuardOutsideCarrier when an invariant
// carrier exists only with the guard outside it. The returned target may lie
// outside the unit interval when the carrier could not include it (the loop
// then never halts).
struct CompiledLoop {
    Pam map;
    Rational x0;
    Rational target;
    bool target_in_carrier = true;
    Transport transport;  // original coordinates -> unit coordinates
};

CompiledLoop compile_loop(const LoopProgram& prog);

struct HaltingAnswer {
    enum class Kind { halts, diverges, unsupported };
    Kind kind = Kind::unsupported;
    long long steps = 0;  // for halts
    std::string reason;
    Decision decision;  // the underlying reachability decision
};

HaltingAnswer decide_halting(const LoopProgram& prog);

}  // namespace pam
