#include "rcsg/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcsg {

namespace {

const std::vector<std::string>& legal_moves(const VertexTable& table, int v, int player) {
  if (player != 1 && player != 2) throw std::invalid_argument("player must be 1 or 2");
  return player == 1 ? table.moves1(v) : table.moves2(v);
}

}  // namespace

RsmStrategy uniform_strategy(const VertexTable& table, int player) {
  RsmStrategy s;
  for (int v : table.play_vertices()) {
    const auto& moves = legal_moves(table, v, player);
    MixedStrategy mix;
    mix.moves = moves;
    mix.probabilities.assign(moves.size(), 1.0 / static_cast<double>(moves.size()));
    s.at[table.id(v)] = std::move(mix);
  }
  return s;
}

std::vector<double> aligned_distribution(const RsmStrategy& strat,
                                         const std::string& vertex,
                                         const std::vector<std::string>& legal) {
  auto it = strat.at.find(vertex);
  if (it == strat.at.end())
    throw std::invalid_argument("strategy missing play vertex '" + vertex + "'");
  const MixedStrategy& mix = it->second;
  if (mix.moves.size() != mix.probabilities.size())
    throw std::invalid_argument("ragged strategy at '" + vertex + "'");
  std::vector<double> out(legal.size(), 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < mix.moves.size(); ++k) {
    double p = mix.probabilities[k];
    if (p < 0.0) throw std::invalid_argument("negative probability at '" + vertex + "'");
    if (p == 0.0) continue;
    auto pos = std::find(legal.begin(), legal.end(), mix.moves[k]);
    if (pos == legal.end())
      throw std::invalid_argument("strategy at '" + vertex +
                                  "' puts weight on illegal move '" + mix.moves[k] + "'");
    out[static_cast<std::size_t>(pos - legal.begin())] += p;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("strategy at '" + vertex + "' sums to " +
                                std::to_string(sum) + ", not 1");
  for (double& p : out) p /= sum;
  return out;
}

RsmStrategy pure_strategy(const VertexTable& table, int player, const std::string& move) {
  RsmStrategy s;
  for (int v : table.play_vertices()) {
    const auto& moves = legal_moves(table, v, player);
    MixedStrategy mix;
    mix.moves = moves;
    if (std::find(moves.begin(), moves.end(), move) != moves.end()) {
      mix.probabilities.assign(moves.size(), 0.0);
      mix.probabilities[static_cast<std::size_t>(
          std::find(moves.begin(), moves.end(), move) - moves.begin())] = 1.0;
    } else {
      mix.probabilities.assign(moves.size(), 1.0 / static_cast<double>(moves.size()));
    }
    s.at[table.id(v)] = std::move(mix);
  }
  return s;
}

}  // namespace rcsg
