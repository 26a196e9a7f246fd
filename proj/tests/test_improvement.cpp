#include <stdexcept>
#include "rcsg/improvement.hpp"

#include <map>
#include <set>

#include "doctest.h"
#include "testutil.hpp"

using namespace rcsg;
using namespace rcsg::test;

namespace {

SolveResult induced_values(const EquationSystem& sys, const RsmStrategy& sigma) {
  return value_iterate(induce_min_system(sys, sigma), {1e-10, 1'000'000});
}

}  // namespace

TEST_CASE("the optimal pure strategy is not improvable") {
  Rcsg m = reference_model();
  EquationSystem sys = build_system(m);
  VertexTable table = VertexTable::build(m);
  RsmStrategy best = pure_strategy(table, 1, "L");
  SolveResult q = induced_values(sys, best);
  CHECK(improvable_vertices(sys, q.values, 1e-6).empty());
  CHECK(q.values[static_cast<std::size_t>(sys.index_of("s"))] ==
        doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("playing R at u1 is dominated and improvable") {
  Rcsg m = reference_model();
  EquationSystem sys = build_system(m);
  VertexTable table = VertexTable::build(m);
  RsmStrategy worse = pure_strategy(table, 1, "R");
  SolveResult q_r = induced_values(sys, worse);
  SolveResult q_l = induced_values(sys, pure_strategy(table, 1, "L"));
  // Independent comparison of the two point-mass strategies.
  CHECK(q_r.values[static_cast<std::size_t>(sys.index_of("u1"))] <
        q_l.values[static_cast<std::size_t>(sys.index_of("u1"))] - 0.1);
  auto improvable = improvable_vertices(sys, q_r.values, 1e-6);
  CHECK(improvable == std::vector<std::string>{"u1"});
}

TEST_CASE("no play vertices means nothing to improve") {
  EquationSystem sys = build_system(two_box_rmc(Rational(2, 5)));
  SolveResult q = value_iterate(sys, {1e-10, 1'000'000});
  CHECK(improvable_vertices(sys, q.values, 1e-6).empty());
}

TEST_CASE("one improvement step realizes the game value") {
  Rcsg m = reference_model();
  EquationSystem sys = build_system(m);
  VertexTable table = VertexTable::build(m);
  RsmStrategy sigma = pure_strategy(table, 1, "R");
  SolveResult q = induced_values(sys, sigma);
  double val = game_value(game_matrix_at(sys, sys.index_of("u1"), q.values));

  RsmStrategy improved = improve_step(sys, sigma, q.values, "u1", 1e-6);
  SolveResult q2 = induced_values(sys, improved);
  std::size_t u1 = static_cast<std::size_t>(sys.index_of("u1"));
  CHECK(q2.values[u1] >= val - 1e-7);           // the switch realizes the game value
  CHECK(q2.values[u1] > q.values[u1] + 0.1);    // strict improvement
  for (std::size_t i = 0; i < q.values.size(); ++i)
    CHECK(q2.values[i] >= q.values[i] - 1e-9);  // no vertex got worse

  // Immediately afterwards the same vertex is no longer improvable.
  CHECK(improvable_vertices(sys, q2.values, 1e-6).empty());
  CHECK_THROWS_AS(improve_step(sys, improved, q2.values, "u1", 1e-6),
                  std::invalid_argument);
}

TEST_CASE("a strictly dominant row becomes a point mass") {
  Rcsg m;
  Component c;
  c.name = "f";
  c.entries = {"u"};
  c.nodes.push_back(make_node("u", VertexKind::Play));
  c.nodes.push_back(make_node("t", VertexKind::Exit));
  c.nodes.push_back(make_node("z", VertexKind::Probabilistic));
  add_play_edge(c, "u", "good", "l", "t");
  add_play_edge(c, "u", "good", "r", "t");
  add_play_edge(c, "u", "bad", "l", "z");
  add_play_edge(c, "u", "bad", "r", "z");
  m.components.push_back(c);
  refresh_alphabets(m);

  EquationSystem sys = build_system(m);
  VertexTable table = VertexTable::build(m);
  RsmStrategy sigma = uniform_strategy(table, 1);
  SolveResult q = induced_values(sys, sigma);
  RsmStrategy improved = improve_step(sys, sigma, q.values, "u", 1e-6);
  const MixedStrategy& mix = improved.at.at("u");
  REQUIRE(mix.moves == std::vector<std::string>({"good", "bad"}));
  CHECK(mix.probabilities[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mix.probabilities[1] == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("strategy improvement from uniform reaches the game values") {
  Rcsg m = reference_model();
  EquationSystem sys = build_system(m);
  VertexTable table = VertexTable::build(m);

  ImproveResult res = strategy_improve(sys, uniform_strategy(table, 1), {.eps = 1e-6});
  REQUIRE(res.converged);
  SolveResult direct = value_iterate(sys, {1e-10, 1'000'000});
  for (std::size_t i = 0; i < direct.values.size(); ++i)
    CHECK(res.values.values[i] == doctest::Approx(direct.values[i]).epsilon(2e-6));

  // Audit the trace: entrywise monotone, strictly increasing at the
  // improved vertex, sandwich at the end.
  for (const auto& step : res.trace.steps) {
    CHECK(step.new_value > step.old_value);
    for (std::size_t i = 0; i < step.old_values.size(); ++i)
      CHECK(step.new_values[i] >= step.old_values[i] - 1e-7);
  }
  ValueVector px = apply_P(sys, res.values.values);
  for (std::size_t i = 0; i < px.size(); ++i) {
    CHECK(px[i] >= res.values.values[i] - 1e-7);
    CHECK(px[i] <= res.values.values[i] + 1e-6 + 1e-7);
  }
}

TEST_CASE("no play vertices terminate in zero rounds") {
  EquationSystem sys = build_system(two_box_rmc(Rational(2, 5)));
  ImproveResult res = strategy_improve(sys, RsmStrategy{}, {.eps = 1e-6});
  CHECK(res.converged);
  CHECK(res.rounds == 0);
  CHECK(res.values.values[static_cast<std::size_t>(sys.index_of("en"))] ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("matching pennies converges to one half") {
  Rcsg m = matching_pennies_csg();
  EquationSystem sys = build_system(m);
  VertexTable table = VertexTable::build(m);
  // Independent oracle: brute-force grid over player 1's mixtures.
  GameMatrix classic;
  classic.rows = {"H", "T"};
  classic.cols = {"H", "T"};
  classic.entries = {1, 0, 0, 1};
  double oracle = grid_minimax_value(classic, 100000);

  // Start biased so at least one improvement step has to happen.
  RsmStrategy biased;
  biased.at["mp"] = {{"H", "T"}, {0.9, 0.1}};
  ImproveResult res = strategy_improve(sys, biased, {.eps = 1e-6});
  REQUIRE(res.converged);
  CHECK(res.values.values[static_cast<std::size_t>(sys.index_of("mp"))] ==
        doctest::Approx(oracle).epsilon(1e-4));
  CHECK(res.values.values[static_cast<std::size_t>(sys.index_of("mp"))] ==
        doctest::Approx(0.5).epsilon(2e-6));
}

TEST_CASE("round exhaustion returns partial results") {
  Rcsg m = reference_model();
  EquationSystem sys = build_system(m);
  VertexTable table = VertexTable::build(m);
  RsmStrategy start = pure_strategy(table, 1, "R");
  ImproveResult res = strategy_improve(sys, start, {.eps = 1e-9, .max_rounds = 0});
  CHECK(!res.converged);
  CHECK(res.rounds == 0);
  CHECK(!res.values.values.empty());
}

TEST_CASE("the selection rule is least-recently-improved") {
  Rcsg m = reference_model();
  EquationSystem sys = build_system(m);
  VertexTable table = VertexTable::build(m);
  ImproveResult res = strategy_improve(sys, uniform_strategy(table, 1), {.eps = 1e-9});
  std::map<std::string, long> last;
  for (const auto& step : res.trace.steps) {
    // The picked vertex must be minimal in (last improved round, id) among
    // the recorded candidates.
    long pick_round = last.count(step.vertex) ? last[step.vertex] : -1;
    for (const auto& cand : step.candidates) {
      long cand_round = last.count(cand) ? last[cand] : -1;
      bool pick_is_better = pick_round < cand_round ||
                            (pick_round == cand_round && step.vertex <= cand);
      CHECK(pick_is_better);
    }
    last[step.vertex] = step.round;
  }
}
