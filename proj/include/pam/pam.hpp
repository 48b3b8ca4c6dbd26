// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pam/affine.hpp"
#include "pam/interval.hpp"

namespace pam {

struct Piece {
    Interval domain;
    AffineMap map;
};

// A piecewise affine self-map of an interval. Piece domains must partition
// the carrier exactly (adjacent endpoints carry complementary flags) and
// every piece image must stay inside the carrier; the constructor rejects
// anything else.
class Pam {
  public:
    // Identity on the half-open unit interval.
    Pam()
        : Pam(Interval::closed_open(Rational(0), Rational(1)),
              {Piece{Interval::closed_open(Rational(0), Rational(1)), AffineMap()}}) {}
    Pam(Interval carrier, std::vector<Piece> pieces);

    const Interval& carrier() const { return carrier_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    size_t piece_count() const { return pieces_.size(); }

    // 0-based index of the piece containing x; throws OutOfCarrier.
    size_t piece_index(const Rational& x) const;

    struct EvalResult {
        Rational value;
        int branch;  // 1-based piece number, as printed by the CLI
    };
    EvalResult eval(const Rational& x) const;

    std::string to_string() const;

    friend bool operator==(const Pam& f, const Pam& g) {
        return f.carrier_ == g.carrier_ && f.pieces_.size() == g.pieces_.size() &&
               std::equal(f.pieces_.begin(), f.pieces_.end(), g.pieces_.begin(),
                          [](const Piece& p, const Piece& q) {
                              return p.domain == q.domain && p.map == q.map;
                          });
    }

  private:
    Interval carrier_;
    std::vector<Piece> pieces_;
};

struct OrbitPoint {
    Rational value;
    int branch;  // 1-based piece containing value
};

// Exact orbit prefix x0, f(x0), ..., f^n(x0) with the branch itinerary.
std::vector<OrbitPoint> iterate(const Pam& f, const Rational& x0, long long n);

// The k-fold composition f^k as a Pam; pieces are the refinement of the
// k-step itinerary cylinders. Throws ResourceLimit past piece_bound pieces.
Pam compose_power(const Pam& f, long k, size_t piece_bound = (1u << 16));

// Invertible affine change of coordinates carried along with a conjugated
// map, with h(f(x)) = g(h(x)).
struct Transport {
    AffineMap fwd;  // h
    AffineMap inv;  // h^{-1}
    Rational operator()(const Rational& x) const { return fwd(x); }
    Rational back(const Rational& y) const { return inv(y); }
};

// Conjugate f by h(x) = (x - lo)/(hi - lo) so the result acts on the unit
// interval; h(f(x)) = g(h(x)) exactly.
std::pair<Pam, Transport> rescale_to_unit(const Pam& f);

// Conjugate by the orientation-reversing bijection h(x) = lo + hi - x of the
// carrier span. Endpoint flags flip; slopes are preserved.
std::pair<Pam, Transport> reflect(const Pam& f);

// Exact forward image of a subset of the carrier.
IntervalSet image_set(const Pam& f, const IntervalSet& s);
IntervalSet image_set(const Pam& f, const Interval& s);

// Interval reachability graph: edge k -> j iff the image of piece k meets
// the domain of piece j.
class ReachGraph {
  public:
    explicit ReachGraph(size_t n) : n_(n), edge_(n, std::vector<bool>(n, false)) {}

    size_t vertex_count() const { return n_; }
    void add_edge(size_t from0, size_t to0) { edge_[from0][to0] = true; }
    // 1-based accessors, matching the piece numbering in printed output.
    bool has_edge(size_t from1, size_t to1) const { return edge_[from1 - 1][to1 - 1]; }
    size_t out_degree(size_t from1) const;

    // True when every cycle is a self-loop (Lemma-style "easy" case 1).
    bool only_self_loop_cycles() const;
    // True when every vertex has exactly one outgoing edge (case 2).
    bool functional() const;

  private:
    size_t n_;
    std::vector<std::vector<bool>> edge_;
};

ReachGraph reach_graph(const Pam& f);

enum class Shape {
    easy_dag,
    easy_functional,
    negative_slope,
    bijection,
    side_gap,
    middle_gap,
    unsupported,
};

std::string shape_name(Shape s);

struct Classification {
    size_t piece_count = 0;
    bool injective = false;
    std::vector<int> slope_signs;  // -1, 0, +1 per piece
    bool surjective = false;
    bool twist = false;  // f(I2) < f(I1), for injective two-piece maps
    Shape shape = Shape::unsupported;
};

Classification classify(const Pam& f);

}  // namespace pam
