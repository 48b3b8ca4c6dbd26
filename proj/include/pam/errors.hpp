// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace pam {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A point lies outside the carrier interval of a map.
struct OutOfCarrier : Error {
    explicit OutOfCarrier(const std::string& what) : Error(what) {}
};

// A number that was required to be prime is not.
struct NotPrime : Error {
    explicit NotPrime(const std::string& what) : Error(what) {}
};

// A configured bound (iteration cap, precision cap, piece bound, factor
// bound) was exceeded.
struct ResourceLimit : Error {
    explicit ResourceLimit(const std::string& what) : Error(what) {}
};

// An operation was called on an input that violates its stated precondition.
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

// Extracted parameters violate the inequalities of their family.
struct ConstraintViolated : Error {
    explicit ConstraintViolated(const std::string& what) : Error(what) {}
};

// A piecewise map definition is malformed (domains do not partition the
// carrier, or a piece image escapes it).
struct InvalidPam : Error {
    explicit InvalidPam(const std::string& what) : Error(what) {}
};

// Loop-program text is not well formed.
struct SyntaxError : Error {
    SyntaxError(const std::string& what, int line, int column)
        : Error(what + " at line " + std::to_string(line) + ", column " +
                std::to_string(column)),
          line(line),
          column(column) {}
    int line;
    int column;
};

// A numeric literal in a loop program is not an exact rational.
struct NonRationalLiteral : Error {
    explicit NonRationalLiteral(const std::string& what) : Error(what) {}
};

// No invariant carrier interval could be verified for a loop program.
struct NotSelfMap : Error {
    explicit NotSelfMap(const std::string& what) : Error(what) {}
};

// The loop guard constant falls outside the inferred carrier.
struct GuardOutsideCarrier : Error {
    explicit GuardOutsideCarrier(const std::string& what) : Error(what) {}
};

}  // namespace pam
