#include "rcsg/improvement.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace rcsg {

std::vector<std::string> improvable_vertices(const EquationSystem& sys,
                                             const ValueVector& q_sigma, double delta) {
  std::vector<std::string> out;
  for (int v : sys.play_vertices()) {
    double val = game_value(game_matrix_at(sys, v, q_sigma));
    if (val > q_sigma[static_cast<std::size_t>(v)] + delta)
      out.push_back(sys.vertex_ids[static_cast<std::size_t>(v)]);
  }
  return out;
}

RsmStrategy improve_step(const EquationSystem& sys, const RsmStrategy& sigma,
                         const ValueVector& q_sigma, const std::string& vertex,
                         double delta) {
  int v = sys.index_of(vertex);
  GameSolution sol = solve_matrix_game(game_matrix_at(sys, v, q_sigma));
  if (!(sol.value > q_sigma[static_cast<std::size_t>(v)] + delta))
    throw std::invalid_argument("'" + vertex + "' is not improvable within " +
                                std::to_string(delta));
  RsmStrategy next = sigma;
  next.at[vertex] = sol.row_strategy;
  return next;
}

ImproveResult strategy_improve(const EquationSystem& sys, const RsmStrategy& sigma0,
                               const ImproveOptions& opts) {
  if (!(opts.eps > 0.0)) throw std::invalid_argument("strategy_improve: eps must be > 0");
  IterOptions inner;
  inner.tol = opts.inner_tol > 0.0 ? opts.inner_tol : opts.eps / 10.0;
  inner.max_iter = opts.inner_max_iter;
  // Monotonicity slack: inner solves are only eps/10-accurate, so apparent
  // regressions up to that amount are solver noise, anything more is a bug.
  const double slack = inner.tol;

  ImproveResult res;
  res.sigma = sigma0;
  SolveResult cur = value_iterate(induce_min_system(sys, res.sigma), inner);
  std::map<std::string, long> last_improved;  // absent = never improved

  while (true) {
    auto candidates = improvable_vertices(sys, cur.values, opts.eps);
    if (candidates.empty()) {
      res.converged = true;
      break;
    }
    if (res.rounds >= opts.max_rounds) break;

    // Least recently improved first; among equally stale vertices the
    // smallest id. candidates comes out of improvable_vertices in system
    // order, so iterate and keep the best.
    std::string pick = candidates[0];
    long pick_round = -1;
    if (auto it = last_improved.find(pick); it != last_improved.end())
      pick_round = it->second;
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      long r = -1;
      if (auto it = last_improved.find(candidates[i]); it != last_improved.end())
        r = it->second;
      if (r < pick_round || (r == pick_round && candidates[i] < pick)) {
        pick = candidates[i];
        pick_round = r;
      }
    }

    int v = sys.index_of(pick);
    GameSolution sol = solve_matrix_game(game_matrix_at(sys, v, cur.values));

    TraceStep step;
    step.round = res.rounds;
    step.vertex = pick;
    step.old_value = cur.values[static_cast<std::size_t>(v)];
    step.game_value = sol.value;
    step.candidates = candidates;
    step.old_values = cur.values;

    res.sigma.at[pick] = sol.row_strategy;
    cur = value_iterate(induce_min_system(sys, res.sigma), inner);
    step.new_values = cur.values;
    step.new_value = cur.values[static_cast<std::size_t>(v)];

    for (std::size_t i = 0; i < step.new_values.size(); ++i) {
      if (step.new_values[i] < step.old_values[i] - slack)
        throw std::logic_error("improvement step at '" + pick + "' lowered '" +
                               sys.vertex_ids[i] + "' by more than solver slack");
    }

    res.trace.steps.push_back(std::move(step));
    last_improved[pick] = res.rounds;
    ++res.rounds;
  }
  res.values = std::move(cur);
  return res;
}

std::string format_trace(const ImprovementTrace& trace) {
  std::ostringstream out;
  for (const auto& s : trace.steps)
    out << s.round << " " << s.vertex << " " << s.old_value << " " << s.new_value
        << " " << s.game_value << "\n";
  return out.str();
}

}  // namespace rcsg
