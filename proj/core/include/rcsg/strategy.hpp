#pragma once

#include <map>
#include <string>

#include "rcsg/matrix_game.hpp"
#include "rcsg/model.hpp"

namespace rcsg {

/// Randomized stackless-and-memoryless strategy: one mixed move distribution
/// per play vertex, independent of history and call stack.
struct RsmStrategy {
  std::map<std::string, MixedStrategy> at;
};

/// Uniform distribution over the owning player's legal moves at every play
/// vertex (player 1 draws from moves1, player 2 from moves2).
RsmStrategy uniform_strategy(const VertexTable& table, int player);

/// Point-mass strategy playing `move` wherever it is legal, uniform
/// elsewhere. Convenience for experiments and tests.
RsmStrategy pure_strategy(const VertexTable& table, int player, const std::string& move);

/// The strategy's distribution at `vertex`, re-expressed over the given legal
/// move list (missing moves get 0) and renormalized. Throws
/// std::invalid_argument when the vertex is missing from the strategy, any
/// weight sits on an illegal move, or the weights do not sum to 1 within 1e-9.
std::vector<double> aligned_distribution(const RsmStrategy& strat,
                                         const std::string& vertex,
                                         const std::vector<std::string>& legal);

}  // namespace rcsg
