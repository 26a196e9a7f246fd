#pragma once

#include <string>
#include <vector>

#include "rcsg/solver.hpp"

namespace rcsg {

/// One local improvement: player 1 switches the mixed move at a single play
/// vertex to the optimal minimax strategy of the game A_u(q) at the current
/// induced values q. The full old/new value vectors are retained so audits
/// (monotone improvement, fairness of the selection rule) can replay a run.
struct TraceStep {
  long round = 0;
  std::string vertex;
  double old_value = 0.0;   // q at the improved vertex before the switch
  double game_value = 0.0;  // Val(A_u(q)) the switch was based on
  double new_value = 0.0;   // induced value at the vertex after the switch
  std::vector<std::string> candidates;  // improvable vertices this round
  ValueVector old_values;
  ValueVector new_values;
};

struct ImprovementTrace {
  std::vector<TraceStep> steps;
};

struct ImproveOptions {
  double eps = 1e-6;       // improvability threshold and certificate accuracy
  long max_rounds = 10'000;
  /// Inner value-iteration tolerance for solving each induced 1-RMDP;
  /// 0 means eps/10.
  double inner_tol = 0.0;
  long inner_max_iter = 1'000'000;
};

struct ImproveResult {
  RsmStrategy sigma;
  ImprovementTrace trace;
  SolveResult values;  // induced values of the final strategy
  bool converged = false;  // no vertex improvable within eps
  long rounds = 0;
};

/// Play vertices u with Val(A_u(q_sigma)) > q_sigma[u] + delta, i.e. where a
/// local switch provably raises player 1's value.
std::vector<std::string> improvable_vertices(const EquationSystem& sys,
                                             const ValueVector& q_sigma, double delta);

/// One improvement step at `vertex`; throws std::invalid_argument if the
/// vertex is not improvable within delta.
RsmStrategy improve_step(const EquationSystem& sys, const RsmStrategy& sigma,
                         const ValueVector& q_sigma, const std::string& vertex,
                         double delta);

/// Strategy improvement loop for player 1. Each round solves the induced
/// minimizing 1-RMDP, then improves the improvable vertex that was improved
/// least recently (never-improved first; ties by vertex id). Stops when no
/// vertex is improvable within eps — the returned values are then a sandwich
/// lower bound: q <= P(q) <= q + eps entrywise — or when rounds run out, in
/// which case partial results are returned with converged=false.
ImproveResult strategy_improve(const EquationSystem& sys, const RsmStrategy& sigma0,
                               const ImproveOptions& opts = {});

/// Trace export, one line per step: round, vertex, old, new, game value.
std::string format_trace(const ImprovementTrace& trace);

}  // namespace rcsg
