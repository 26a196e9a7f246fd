#pragma once

#include "rcsg/equations.hpp"
#include "rcsg/strategy.hpp"

namespace rcsg {

struct IterOptions {
  double tol = 1e-9;
  long max_iter = 1'000'000;
};

/// Result of the Kleene iteration x_{k+1} = P(x_k) from the zero vector.
/// Values are a lower bound on the least fixed point; the iterate sequence is
/// monotonically non-decreasing (this is asserted during the run, violations
/// beyond floating-point slack abort with std::logic_error).
struct SolveResult {
  ValueVector values;
  long iterations = 0;
  double residual = 0.0;
  bool converged = false;  // sup-norm step fell below tol before max_iter
};

/// Monotone value iteration from 0. Stops at the first k with
/// ||x_k - x_{k-1}|| < tol, or after max_iter applications of P.
/// Non-convergence is reported, not thrown: game values can genuinely need
/// very many iterations, and the partial vector is still a valid lower bound.
SolveResult value_iterate(const EquationSystem& sys, const IterOptions& opts = {});

/// Two-sided bounds on q* from near-fixed-point x: player 2's optimal column
/// strategies in the games A_u(x) induce a maximizing 1-RMDP whose LFP bounds
/// q* from above; player 1's row strategies induce a minimizing 1-RMDP whose
/// LFP bounds it from below. Both LFPs are computed by value iteration, so
/// the lower vector is always a sound lower bound while the tightness (and,
/// for the upper vector, soundness of the *computed* iterate) depends on the
/// converged flags.
struct BoundsCertificate {
  ValueVector lower;
  ValueVector upper;
  RsmStrategy witness_sigma;  // player 1, attains lower
  RsmStrategy witness_tau;    // player 2, attains upper
  bool lower_converged = false;
  bool upper_converged = false;
};

BoundsCertificate certify_bounds(const EquationSystem& sys, const ValueVector& x,
                                 const IterOptions& opts = {});

}  // namespace rcsg
