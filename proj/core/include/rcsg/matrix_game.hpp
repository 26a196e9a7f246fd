#pragma once

#include <string>
#include <vector>

namespace rcsg {

/// A mixed strategy over a move list: nonnegative probabilities summing to 1.
struct MixedStrategy {
  std::vector<std::string> moves;
  std::vector<double> probabilities;
};

/// Zero-sum one-shot game. Rows belong to player 1 (maximizer), columns to
/// player 2 (minimizer); entries are the payoffs to player 1 and must be
/// finite and nonnegative (they are candidate termination probabilities).
struct GameMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::vector<double> entries;  // row-major, rows.size() x cols.size()

  double at(std::size_t i, std::size_t j) const { return entries[i * cols.size() + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * cols.size() + j]; }
};

struct GameSolution {
  double value = 0.0;
  MixedStrategy row_strategy;  // guarantees >= value against every column
  MixedStrategy col_strategy;  // guarantees <= value against every row
};

/// Feasibility/optimality tolerance of the LP and the saddle guarantees.
inline constexpr double kLpTolerance = 1e-10;

/// Minimax value and optimal mixed strategies of a matrix game, by dense
/// primal simplex with Bland's anti-cycling rule; the opposing strategy is
/// read off the duals. Ties among optimal vertices resolve deterministically
/// (lowest move index first). Throws std::invalid_argument on malformed
/// matrices (empty, non-finite or negative entries).
GameSolution solve_matrix_game(const GameMatrix& m);

/// Value component only. Monotone in the entries.
double game_value(const GameMatrix& m);

}  // namespace rcsg
