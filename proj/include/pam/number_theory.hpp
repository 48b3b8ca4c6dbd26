// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pam/rational.hpp"

namespace pam {

// A p-adic valuation: an integer, or +infinity exactly for the input 0.
class Valuation {
  public:
    static Valuation infinity() { return Valuation(true, 0); }
    static Valuation of(long v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    long value() const {
        if (infinite_) throw Error("valuation is +infinity");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
    }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
    // +infinity compares above every finite valuation.
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.v_ < b.v_;
    }

    std::string to_string() const { return infinite_ ? "+inf" : std::to_string(v_); }

  private:
    Valuation(bool inf, long v) : infinite_(inf), v_(v) {}
    bool infinite_;
    long v_;
};

// Deterministic primality test. Miller-Rabin with a fixed base set decides
// every n < 2^64; larger candidates fall back to trial division with a cap.
bool is_prime(const Integer& n);

// v_p(x) = v_p(num) - v_p(den); v_p(0) = +infinity. Throws NotPrime.
Valuation padic_valuation(const Rational& x, const Integer& p);

// Sign and prime exponent vector of a rational; reconstructing
// sign * prod p^e yields the input exactly.
struct FactoredRational {
    int sign = 1;  // +1, -1, or 0
    std::map<Integer, long> exponents;

    Rational reconstruct() const;
};

// Exact factorization by trial division (default bound covers every prime
// factor below 2^20; composites with larger factors raise ResourceLimit
// unless the remaining cofactor is itself prime).
FactoredRational factor(const Rational& x, unsigned long trial_bound = (1ul << 20));

// Minimal positive (a, b) with q1^a == q2^b, when the exponent vectors of
// q1, q2 > 1 are proportional; nullopt otherwise.
std::optional<std::pair<long, long>> mult_dependent(const Rational& q1, const Rational& q2);

// Solution set of q1^m = q0 * q2^n over (n, m) in Z>=0 x Z>=0. The shape is
// always one of: a finite list, a one-parameter affine family
// { base + t*step : t >= 0 }, or (only for q0 = q1 = q2 = 1) all pairs.
struct ExponentPair {
    long n = 0;
    long m = 0;
    friend bool operator==(const ExponentPair& a, const ExponentPair& b) {
        return a.n == b.n && a.m == b.m;
    }
};

struct MultSolutionSet {
    enum class Kind { finite, family, all };
    Kind kind = Kind::finite;
    std::vector<ExponentPair> points;  // finite case, sorted by n then m
    ExponentPair base{};               // family case
    ExponentPair step{};               // family case; step.n, step.m >= 0, not both 0

    bool empty() const { return kind == Kind::finite && points.empty(); }
    bool contains(long n, long m) const;
    // Solution with the smallest n (ties by m), if any.
    std::optional<ExponentPair> minimal() const;
};

MultSolutionSet solve_mult_relation(const Rational& q0, const Rational& q1, const Rational& q2);

}  // namespace pam
