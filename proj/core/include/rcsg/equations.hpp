#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "rcsg/matrix_game.hpp"
#include "rcsg/model.hpp"
#include "rcsg/strategy.hpp"

namespace rcsg {

/// Nonnegative vector indexed like the equation system's vertices; candidate
/// for or approximation of the value vector q*.
using ValueVector = std::vector<double>;

enum class EquationKind {
  Const1,      // x_u = 1 (exit)
  Linear,      // x_u = sum p_i * x_{v_i}; empty sum means 0
  Product,     // x_u = x_a * x_b (call port: callee entry times return port)
  MatrixGame,  // x_u = Val(A_u(x))
  MinLinear,   // x_u = min over groups of a linear form (player 1 fixed)
  MaxLinear,   // x_u = max over groups of a linear form (player 2 fixed)
};

struct LinTerm {
  double coef;
  int var;
};

struct Equation {
  EquationKind kind = EquationKind::Linear;
  std::vector<LinTerm> terms;  // Linear
  int var_a = -1;              // Product
  int var_b = -1;
  // MatrixGame: targets is row-major over row_moves x col_moves.
  std::vector<std::string> row_moves, col_moves;
  std::vector<int> targets;
  // MinLinear/MaxLinear: one linear form per opposing move.
  std::vector<std::vector<LinTerm>> groups;
  std::vector<std::string> group_moves;
};

/// The monotone minimax system x = P(x) of a 1-exit RCSG, or one of its
/// induced one-player variants. Immutable once built; evaluation is
/// side-effect free.
struct EquationSystem {
  std::vector<std::string> vertex_ids;
  std::unordered_map<std::string, int> index;
  std::vector<Equation> equations;

  int size() const { return static_cast<int>(equations.size()); }
  int index_of(const std::string& id) const;
  /// Vertices whose equation is a MatrixGame (empty for induced systems).
  std::vector<int> play_vertices() const;
};

/// Builds x = P(x): Const1 at exits, Linear at probabilistic vertices and
/// return ports (dead ends become the empty sum, i.e. 0), Product at call
/// ports, MatrixGame at play vertices. Throws std::invalid_argument unless
/// every component has exactly one exit.
EquationSystem build_system(const Rcsg& model);
EquationSystem build_system(const VertexTable& table);

/// One application of the operator. Matrix-game equations are evaluated with
/// the LP solver. Throws std::invalid_argument on dimension mismatch.
ValueVector apply_P(const EquationSystem& sys, const ValueVector& x);
void apply_P_into(const EquationSystem& sys, const ValueVector& x, ValueVector& out);

/// Sup-norm fixed-point defect ||P(x) - x||.
double residual(const EquationSystem& sys, const ValueVector& x);

/// The matrix game A_u(x) at a play vertex of the full system.
GameMatrix game_matrix_at(const EquationSystem& sys, int vertex, const ValueVector& x);

/// Fixes player 1's strategy: every MatrixGame equation becomes the MinLinear
/// equation of the resulting minimizing 1-RMDP, x_u = min over player-2 moves
/// of the sigma-average of successors. Throws std::invalid_argument if sigma
/// misses a play vertex or puts weight outside the legal moves.
EquationSystem induce_min_system(const EquationSystem& sys, const RsmStrategy& sigma);

/// Dual: fixes player 2's strategy, MatrixGame becomes MaxLinear.
EquationSystem induce_max_system(const EquationSystem& sys, const RsmStrategy& tau);

/// Fixes both strategies; play equations become plain bilinear averages and
/// the system is the one of a recursive Markov chain.
EquationSystem induce_fixed_system(const EquationSystem& sys, const RsmStrategy& sigma,
                                   const RsmStrategy& tau);

/// Human-readable algebraic dump, one equation per line.
std::string dump_system(const EquationSystem& sys);

}  // namespace rcsg
