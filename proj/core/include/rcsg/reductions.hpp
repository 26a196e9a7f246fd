#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rcsg/model.hpp"

namespace rcsg {

/// Replaces every genuinely random vertex by concurrent coin-flip play.
/// Half-half choices become the four-transition matching-pennies wiring;
/// general rational distributions p_1/q..p_r/q are first compiled into a
/// ladder of half-half vertices that tracks the flip prefix against the
/// cutoffs, with a restart edge for outcomes >= q. For a k-bit common
/// denominator the ladder adds at most r*k vertices per distribution, and
/// the game value at every original vertex is unchanged.
///
/// Return ports cannot change type, so a return port with a nontrivial
/// distribution keeps a single probability-1 edge into a fresh node that
/// carries the ladder; dead-end probabilistic vertices become play vertices
/// with a self-loop (still value 0). Substochastic mass is first made
/// explicit as an edge to a fresh dead sink. The output has no vertex left
/// whose next step is decided by chance.
Rcsg derandomize(const Rcsg& model);

/// Exact data of one square-root gadget G(a): the termination value at its
/// play vertex u is d + e*sqrt(a) with rational d, e. For a = m^2 - l with
/// 0 <= l < 1: c2 = l/4, g = m - 1 - c2, c1 = g*c3, and the discriminant
/// identity (g+1-c2)^2 + 4*g*c2 = a holds exactly.
struct GadgetSpec {
  std::int64_t a = 0;
  Rational m, l, c1, c2, c3, g;
  Rational d, e;  // value at u equals d + e*sqrt(a), e > 0
  /// Perfect squares have l = 0 and are realized as a direct rational lottery
  /// (the closed form above divides by c2); then d = 0 and e = 1/(sqrt(a)+1).
  bool perfect_square = false;
};

/// Builds G(a) as a finite concurrent game: play vertex u with moves {1,2}
/// for both players, probabilistic v1 (c1 to t, c2 back to u, rest dead) and
/// v2 (c3 to t, rest dead), target t = exit, dead z. Throws for a <= 1.
std::pair<GadgetSpec, Rcsg> sqrt_sum_gadget(std::int64_t a);

/// Combined instance: fresh start s moves to each gadget's u_i with
/// probability p_i = E/e_i, so the value at s is D + E * sum_i sqrt(a_i).
/// Deciding sum_i sqrt(a_i) >= k is the query "value(s) >= D + E*k".
struct SqrtSumInstance {
  std::vector<std::int64_t> a_list;
  std::int64_t k = 0;
  Rational D, E;
  Rational threshold;  // D + E*k, exact
  std::vector<GadgetSpec> gadgets;
  std::vector<Rational> p;  // start distribution, sums to 1 exactly
  Rcsg model;
  std::string start = "s";
};

SqrtSumInstance sqrt_sum_instance(const std::vector<std::int64_t>& a_list, std::int64_t k);

/// Quantitative-CSG to qualitative-1-RCSG reduction. Pipeline: remove the
/// vertices where player 2 forces termination probability 0 (a structural
/// check); make residual probability explicit; shift the threshold to 1/2 by
/// an affine start vertex when p != 1/2; embed the cleaned game into the
/// one-component two-box 1-RCSG, sending "1"-edges to the exit and "0"-edges
/// to the first call port. The CSG value at `start` is >= p iff the 1-RCSG
/// value at `designated` is exactly 1.
struct CsgReduction {
  enum class Kind {
    Model,      // reduction produced a 1-RCSG, see model/designated
    ValueZero,  // start was removed by the cleanup: CSG value is 0 < p
    ValueOne,   // start is the terminal itself: CSG value is 1 >= p
  };
  Kind kind = Kind::Model;
  Rcsg model;
  std::string designated;
};

/// Throws std::invalid_argument unless csg is a one-component, box-free model
/// with a single exit (the terminal), `start` names one of its vertices and
/// 0 < p <= 1.
CsgReduction csg_quant_to_rcsg_qual(const Rcsg& csg, const std::string& start,
                                    const Rational& p);

}  // namespace rcsg
