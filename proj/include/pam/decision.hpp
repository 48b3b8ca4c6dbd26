// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pam/pam.hpp"

namespace pam {

enum class Answer { yes, no, unknown };

inline std::string answer_name(Answer a) {
    switch (a) {
        case Answer::yes: return "yes";
        case Answer::no: return "no";
        case Answer::unknown: return "unknown";
    }
    return "?";
}

// One step of a structural reduction, kept for replay and trace output.
struct TraceStep {
    std::string kind;       // dag-walk, functional-cycle, neg1, neg2-iteration,
                            // reflect, restrict, rescale, bijection, gap-cycle, ...
    std::string params;     // human-readable parameters (new cutpoint, etc.)
    std::string transport;  // how points and answers map between the levels
};

struct ReductionTrace {
    std::vector<TraceStep> steps;

    void add(std::string kind, std::string params = "", std::string transport = "") {
        steps.push_back({std::move(kind), std::move(params), std::move(transport)});
    }
    void absorb(const ReductionTrace& inner) {
        steps.insert(steps.end(), inner.steps.begin(), inner.steps.end());
    }
    // Indented text rendering, one line per step.
    std::string to_text() const {
        std::string s;
        for (size_t i = 0; i < steps.size(); ++i) {
            s += std::string(2 * (i + 1), ' ') + steps[i].kind;
            if (!steps[i].params.empty()) s += ": " + steps[i].params;
            if (!steps[i].transport.empty()) s += " [" + steps[i].transport + "]";
            s += "\n";
        }
        return s;
    }
};

struct Decision {
    Answer answer = Answer::unknown;
    std::optional<long long> witness;  // steps of the original map, when finite
    bool witness_unbounded = false;    // yes via a density argument, no finite witness computed
    ReductionTrace trace;
    std::vector<std::string> diagnostics;

    static Decision yes(long long n) {
        Decision d;
        d.answer = Answer::yes;
        d.witness = n;
        return d;
    }
    static Decision yes_unbounded() {
        Decision d;
        d.answer = Answer::yes;
        d.witness_unbounded = true;
        return d;
    }
    static Decision no() {
        Decision d;
        d.answer = Answer::no;
        return d;
    }
    static Decision unknown(std::string why) {
        Decision d;
        d.answer = Answer::unknown;
        d.diagnostics.push_back(std::move(why));
        return d;
    }
};

}  // namespace pam
