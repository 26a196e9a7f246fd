#pragma once

#include <string>
#include <vector>

#include "rcsg/model.hpp"
#include "rcsg/solver.hpp"

namespace rcsg {

/// Vertices with termination value exactly 0. Depends only on the transition
/// structure, never on the probability values.
struct ZeroSetResult {
  std::vector<std::string> zero_vertices;  // in global vertex order
  long iterations = 0;                     // removal events processed
};

/// Exact polynomial-time computation of Z = { u : q*_u = 0 }. Starts from all
/// non-exit vertices and removes, to a fixed point: probabilistic vertices
/// with a successor outside Z; call ports whose callee entry and return port
/// are both outside Z; play vertices where for every player-2 move some
/// player-1 move leads outside Z.
ZeroSetResult zero_set(const Rcsg& model);
ZeroSetResult zero_set(const VertexTable& table);

enum class Verdict {
  ValueLessThan1,  // certified: an upper-bound strategy keeps the value below 1
  Numerically1,    // lower bound within tol of 1; evidence, not a proof
  Inconclusive,
};

struct VertexVerdict {
  std::string vertex;
  double lower = 0.0;
  double upper = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

struct AlmostSureReport {
  std::vector<VertexVerdict> rows;
  bool bounds_converged = false;  // both certificate iterations converged
};

/// Numeric semi-decision of "is the value 1?". ValueLessThan1 is sound when
/// the upper-bound iteration converged; Numerically1 is only as strong as a
/// lower bound can be. iter controls the inner value iterations: the critical
/// cases converge sublinearly, so certifying near-1 values needs a much
/// tighter tol than the report threshold.
AlmostSureReport almost_sure_report(const Rcsg& model, double tol,
                                    const IterOptions& iter = {1e-12, 10'000'000});

const char* verdict_name(Verdict v);

}  // namespace rcsg
