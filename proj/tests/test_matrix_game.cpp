#include <stdexcept>
#include "rcsg/matrix_game.hpp"

#include <random>

#include "doctest.h"
#include "testutil.hpp"

using namespace rcsg;
using rcsg::test::closed_2x2_value;
using rcsg::test::grid_minimax_value;

namespace {

GameMatrix make(std::size_t r, std::size_t c, std::vector<double> entries) {
  GameMatrix m;
  for (std::size_t i = 0; i < r; ++i) m.rows.push_back("r" + std::to_string(i));
  for (std::size_t j = 0; j < c; ++j) m.cols.push_back("c" + std::to_string(j));
  m.entries = std::move(entries);
  return m;
}

double payoff(const GameMatrix& m, const MixedStrategy& z, std::size_t col) {
  double s = 0.0;
  for (std::size_t i = 0; i < z.probabilities.size(); ++i)
    s += z.probabilities[i] * m.at(i, col);
  return s;
}

double payoff_row(const GameMatrix& m, std::size_t row, const MixedStrategy& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < w.probabilities.size(); ++j)
    s += w.probabilities[j] * m.at(row, j);
  return s;
}

void check_saddle(const GameMatrix& m, const GameSolution& sol, double tol) {
  double zsum = 0.0, wsum = 0.0;
  for (double p : sol.row_strategy.probabilities) {
    CHECK(p >= -tol);
    zsum += p;
  }
  for (double p : sol.col_strategy.probabilities) {
    CHECK(p >= -tol);
    wsum += p;
  }
  CHECK(zsum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t j = 0; j < m.cols.size(); ++j)
    CHECK(payoff(m, sol.row_strategy, j) >= sol.value - tol);
  for (std::size_t i = 0; i < m.rows.size(); ++i)
    CHECK(payoff_row(m, i, sol.col_strategy) <= sol.value + tol);
}

}  // namespace

TEST_CASE("one by one game is a point mass") {
  GameSolution sol = solve_matrix_game(make(1, 1, {0.37}));
  CHECK(sol.value == doctest::Approx(0.37));
  CHECK(sol.row_strategy.probabilities == std::vector<double>{1.0});
  CHECK(sol.col_strategy.probabilities == std::vector<double>{1.0});
}

TEST_CASE("matching pennies mixes evenly") {
  // Oracle: completely mixed closed form, cross-checked by grid minimax.
  GameMatrix m = make(2, 2, {1, 0, 0, 1});
  CHECK(closed_2x2_value(1, 0, 0, 1) == doctest::Approx(0.5));
  CHECK(grid_minimax_value(m, 10000) == doctest::Approx(0.5).epsilon(1e-3));
  GameSolution sol = solve_matrix_game(m);
  CHECK(sol.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.row_strategy.probabilities[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(sol.col_strategy.probabilities[0] == doctest::Approx(0.5).epsilon(1e-9));
  check_saddle(m, sol, kLpTolerance);
}

TEST_CASE("one-row game: the minimizer picks the smallest column") {
  // The u4 game of the reference model at the fixed point.
  GameMatrix m = make(1, 2, {0.5, 1.0});
  GameSolution sol = solve_matrix_game(m);
  CHECK(sol.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sol.col_strategy.probabilities[0] == doctest::Approx(1.0));
  CHECK(game_value(m) == doctest::Approx(0.5));
}

TEST_CASE("constant matrices") {
  CHECK(game_value(make(2, 2, {0, 0, 0, 0})) == doctest::Approx(0.0));
  CHECK(game_value(make(2, 2, {1, 1, 1, 1})) == doctest::Approx(1.0));
}

TEST_CASE("the u1 game at the fixed point has value one half") {
  GameMatrix m = make(2, 2, {0.5, 0.75, 0.5, 0.0});
  CHECK(game_value(m) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(closed_2x2_value(0.5, 0.75, 0.5, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("malformed matrices are rejected") {
  CHECK_THROWS_AS(solve_matrix_game(make(0, 0, {})), std::invalid_argument);
  CHECK_THROWS_AS(solve_matrix_game(make(1, 2, {0.5, -0.1})), std::invalid_argument);
  CHECK_THROWS_AS(solve_matrix_game(make(2, 1, {0.5})), std::invalid_argument);
}

TEST_CASE("random games satisfy the saddle conditions") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    std::vector<double> e(r * c);
    for (double& x : e) x = unit(rng);
    GameMatrix m = make(r, c, e);
    GameSolution sol = solve_matrix_game(m);
    check_saddle(m, sol, 1e-9);
    double lo = *std::min_element(e.begin(), e.end());
    double hi = *std::max_element(e.begin(), e.end());
    CHECK(sol.value >= lo - 1e-12);
    CHECK(sol.value <= hi + 1e-12);
  }
}

TEST_CASE("value is monotone in the entries") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    std::vector<double> a(r * c), b(r * c);
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = unit(rng);
      b[i] = a[i] + 0.5 * unit(rng);
    }
    CHECK(game_value(make(r, c, a)) <= game_value(make(r, c, b)) + 1e-9);
  }
}

TEST_CASE("translation shifts the value and keeps the strategies") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(4);
    for (double& x : a) x = unit(rng);
    double shift = unit(rng);
    std::vector<double> b = a;
    for (double& x : b) x += shift;
    GameSolution sa = solve_matrix_game(make(2, 2, a));
    GameSolution sb = solve_matrix_game(make(2, 2, b));
    CHECK(sb.value == doctest::Approx(sa.value + shift).epsilon(1e-8));
    for (std::size_t i = 0; i < 2; ++i)
      CHECK(sb.row_strategy.probabilities[i] ==
            doctest::Approx(sa.row_strategy.probabilities[i]).epsilon(1e-6));
  }
}

TEST_CASE("LP value agrees with independent 2x2 and 2xN oracles") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> e(4);
    for (double& x : e) x = unit(rng);
    CHECK(game_value(make(2, 2, e)) ==
          doctest::Approx(closed_2x2_value(e[0], e[1], e[2], e[3])).epsilon(1e-8));
  }
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> e(6);
    for (double& x : e) x = unit(rng);
    GameMatrix m = make(2, 3, e);
    CHECK(game_value(m) == doctest::Approx(grid_minimax_value(m)).epsilon(2e-5));
  }
}
