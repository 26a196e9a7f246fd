#include "rcsg/solver.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace rcsg {

namespace {
// Exact arithmetic would make the Kleene sequence monotone; in doubles a
// violation beyond this slack means an implementation bug, not rounding.
constexpr double kMonotoneSlack = 1e-12;
}  // namespace

SolveResult value_iterate(const EquationSystem& sys, const IterOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("value_iterate: tol must be > 0");
  SolveResult res;
  ValueVector x(static_cast<std::size_t>(sys.size()), 0.0);
  ValueVector next(x.size(), 0.0);
  for (long k = 0; k < opts.max_iter; ++k) {
    apply_P_into(sys, x, next);
    double diff = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double step = next[i] - x[i];
      if (step < -kMonotoneSlack)
        throw std::logic_error("value iteration lost monotonicity at '" +
                               sys.vertex_ids[i] + "' (step " + std::to_string(step) +
                               " in iteration " + std::to_string(k + 1) + ")");
      if (next[i] > 1.0 + kMonotoneSlack)
        throw std::logic_error("value iteration left [0,1] at '" + sys.vertex_ids[i] + "'");
      diff = std::max(diff, step);
    }
    std::swap(x, next);
    ++res.iterations;
    if (diff < opts.tol) {
      res.converged = true;
      break;
    }
  }
  res.residual = residual(sys, x);
  res.values = std::move(x);
  return res;
}

BoundsCertificate certify_bounds(const EquationSystem& sys, const ValueVector& x,
                                 const IterOptions& opts) {
  BoundsCertificate cert;
  for (int v : sys.play_vertices()) {
    GameSolution sol = solve_matrix_game(game_matrix_at(sys, v, x));
    const std::string& id = sys.vertex_ids[static_cast<std::size_t>(v)];
    cert.witness_sigma.at[id] = sol.row_strategy;
    cert.witness_tau.at[id] = sol.col_strategy;
  }
  SolveResult lower = value_iterate(induce_min_system(sys, cert.witness_sigma), opts);
  SolveResult upper = value_iterate(induce_max_system(sys, cert.witness_tau), opts);
  cert.lower = std::move(lower.values);
  cert.upper = std::move(upper.values);
  cert.lower_converged = lower.converged;
  cert.upper_converged = upper.converged;
  return cert;
}

}  // namespace rcsg
