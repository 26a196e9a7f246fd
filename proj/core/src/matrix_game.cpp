#include "rcsg/matrix_game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rcsg {

namespace {

void check_matrix(const GameMatrix& m) {
  if (m.rows.empty() || m.cols.empty())
    throw std::invalid_argument("matrix game needs at least one row and column");
  if (m.entries.size() != m.rows.size() * m.cols.size())
    throw std::invalid_argument("matrix game entry count does not match dimensions");
  for (double e : m.entries) {
    if (!std::isfinite(e) || e < 0.0)
      throw std::invalid_argument("matrix game entries must be finite and >= 0");
  }
}

// Primal simplex for: maximize sum(x) subject to M x <= 1, x >= 0, where all
// entries of M are >= 1. The slack basis is feasible, the optimum is finite,
// and Bland's rule (lowest index enters, lowest basic index leaves on ratio
// ties) guarantees termination and deterministic output.
struct SimplexResult {
  std::vector<double> primal;  // x, one per column of M
  std::vector<double> dual;    // y, one per row of M
  double objective = 0.0;
};

// Pivot admission threshold. Deliberately near machine precision: a larger
// band would let the pivot path flip between near-tied rows and jitter the
// computed value by that band, which breaks the monotonicity the value
// iteration relies on. kLpTolerance stays the advertised saddle tolerance.
constexpr double kPivotTol = 1e-13;

SimplexResult solve_lp(const std::vector<std::vector<double>>& M) {
  std::size_t rows = M.size();
  std::size_t cols = M[0].size();
  std::size_t total = cols + rows;  // structural vars then slacks

  // Tableau rows: [structural | slack | rhs]; objective row holds reduced
  // costs (c_j - z_j) for a max problem, so positive means improving.
  std::vector<std::vector<double>> tab(rows, std::vector<double>(total + 1, 0.0));
  std::vector<double> obj(total + 1, 0.0);
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) tab[i][j] = M[i][j];
    tab[i][cols + i] = 1.0;
    tab[i][total] = 1.0;
    basis[i] = cols + i;
  }
  for (std::size_t j = 0; j < cols; ++j) obj[j] = 1.0;

  while (true) {
    // Bland: entering column = lowest index with positive reduced cost.
    std::size_t enter = total;
    for (std::size_t j = 0; j < total; ++j) {
      if (obj[j] > kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter == total) break;  // optimal

    // Ratio test; exact ties resolved by lowest basic variable index.
    std::size_t leave = rows;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rows; ++i) {
      if (tab[i][enter] <= kPivotTol) continue;
      double ratio = tab[i][total] / tab[i][enter];
      if (ratio < best || (ratio == best && (leave == rows || basis[i] < basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == rows)
      throw std::logic_error("matrix game LP unbounded; matrix not positive?");

    double pivot = tab[leave][enter];
    for (double& v : tab[leave]) v /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || std::abs(tab[i][enter]) < 1e-300) continue;
      double f = tab[i][enter];
      for (std::size_t j = 0; j <= total; ++j) tab[i][j] -= f * tab[leave][j];
    }
    double f = obj[enter];
    for (std::size_t j = 0; j <= total; ++j) obj[j] -= f * tab[leave][j];
    basis[leave] = enter;
  }

  SimplexResult r;
  r.primal.assign(cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    if (basis[i] < cols) r.primal[basis[i]] = tab[i][total];
  // Duals are the negated reduced costs of the slack columns at optimality.
  r.dual.assign(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i) r.dual[i] = std::max(0.0, -obj[cols + i]);
  r.objective = -obj[total] == 0.0 ? 0.0 : -obj[total];
  // Recompute the objective directly; it is more robust than the tableau's
  // accumulated value.
  r.objective = 0.0;
  for (double v : r.primal) r.objective += v;
  return r;
}

MixedStrategy make_strategy(const std::vector<std::string>& moves,
                            std::vector<double> probs) {
  double sum = 0.0;
  for (double& p : probs) {
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (sum > 0.0)
    for (double& p : probs) p /= sum;
  else
    probs.assign(moves.size(), 1.0 / static_cast<double>(moves.size()));
  return {moves, std::move(probs)};
}

}  // namespace

GameSolution solve_matrix_game(const GameMatrix& m) {
  check_matrix(m);
  std::size_t nr = m.rows.size();
  std::size_t nc = m.cols.size();
  double lo = *std::min_element(m.entries.begin(), m.entries.end());
  double hi = *std::max_element(m.entries.begin(), m.entries.end());

  GameSolution sol;
  if (nr == 1 && nc == 1) {
    sol.value = m.entries[0];
    sol.row_strategy = {m.rows, {1.0}};
    sol.col_strategy = {m.cols, {1.0}};
    return sol;
  }

  // Standard game->LP transformation on the shifted matrix A+1 (entries >= 1,
  // so the value is positive and the optimum finite): the column player's
  // scaled strategy solves max 1'w st (A+1)w <= 1, and the row player's
  // scaled strategy is the dual vector. Shifting translates the value by 1
  // and leaves optimal strategies unchanged.
  const double shift = 1.0;
  std::vector<std::vector<double>> M(nr, std::vector<double>(nc, 0.0));
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) M[i][j] = m.at(i, j) + shift;

  SimplexResult lp = solve_lp(M);
  double shifted_value = 1.0 / lp.objective;
  sol.value = shifted_value - shift;
  sol.value = std::clamp(sol.value, lo, hi);

  std::vector<double> w(nc), z(nr);
  for (std::size_t j = 0; j < nc; ++j) w[j] = shifted_value * lp.primal[j];
  for (std::size_t i = 0; i < nr; ++i) z[i] = shifted_value * lp.dual[i];
  sol.col_strategy = make_strategy(m.cols, std::move(w));
  sol.row_strategy = make_strategy(m.rows, std::move(z));
  return sol;
}

double game_value(const GameMatrix& m) {
  check_matrix(m);
  std::size_t nr = m.rows.size();
  std::size_t nc = m.cols.size();
  // One-row and one-column games reduce to a min/max scan.
  if (nr == 1) {
    double v = m.entries[0];
    for (std::size_t j = 1; j < nc; ++j) v = std::min(v, m.entries[j]);
    return v;
  }
  if (nc == 1) {
    double v = m.entries[0];
    for (std::size_t i = 1; i < nr; ++i) v = std::max(v, m.entries[i]);
    return v;
  }
  return solve_matrix_game(m).value;
}

}  // namespace rcsg
