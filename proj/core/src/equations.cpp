#include "rcsg/equations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rcsg {

int EquationSystem::index_of(const std::string& id) const {
  auto it = index.find(id);
  if (it == index.end()) throw std::out_of_range("unknown vertex '" + id + "'");
  return it->second;
}

std::vector<int> EquationSystem::play_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (equations[static_cast<std::size_t>(v)].kind == EquationKind::MatrixGame)
      out.push_back(v);
  return out;
}

EquationSystem build_system(const Rcsg& model) {
  for (const auto& c : model.components)
    if (c.exits().size() != 1)
      throw std::invalid_argument("component '" + c.name +
                                  "' has " + std::to_string(c.exits().size()) +
                                  " exits; the equation system needs exactly 1");
  return build_system(VertexTable::build(model));
}

EquationSystem build_system(const VertexTable& table) {
  EquationSystem sys;
  int n = table.size();
  sys.vertex_ids.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    sys.vertex_ids.push_back(table.id(v));
    sys.index.emplace(table.id(v), v);
  }
  sys.equations.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    Equation& eq = sys.equations[static_cast<std::size_t>(v)];
    switch (table.kind(v)) {
      case VertexKind::Exit:
        eq.kind = EquationKind::Const1;
        break;
      case VertexKind::Probabilistic:
      case VertexKind::ReturnPort:
        eq.kind = EquationKind::Linear;
        for (const auto& e : table.prob_out(v))
          eq.terms.push_back({e.p.to_double(), e.target});
        break;
      case VertexKind::CallPort:
        eq.kind = EquationKind::Product;
        eq.var_a = table.call_entry(v);
        eq.var_b = table.call_return(v);
        break;
      case VertexKind::Play: {
        eq.kind = EquationKind::MatrixGame;
        eq.row_moves = table.moves1(v);
        eq.col_moves = table.moves2(v);
        eq.targets.reserve(eq.row_moves.size() * eq.col_moves.size());
        for (std::size_t i = 0; i < eq.row_moves.size(); ++i)
          for (std::size_t j = 0; j < eq.col_moves.size(); ++j)
            eq.targets.push_back(
                table.play_target(v, static_cast<int>(i), static_cast<int>(j)));
        break;
      }
    }
  }
  return sys;
}

namespace {

double eval_linear(const std::vector<LinTerm>& terms, const ValueVector& x) {
  double s = 0.0;
  for (const auto& t : terms) s += t.coef * x[static_cast<std::size_t>(t.var)];
  return s;
}

double eval_equation(const Equation& eq, const ValueVector& x) {
  switch (eq.kind) {
    case EquationKind::Const1:
      return 1.0;
    case EquationKind::Linear:
      return eval_linear(eq.terms, x);
    case EquationKind::Product:
      return x[static_cast<std::size_t>(eq.var_a)] * x[static_cast<std::size_t>(eq.var_b)];
    case EquationKind::MatrixGame: {
      GameMatrix m;
      m.rows = eq.row_moves;
      m.cols = eq.col_moves;
      m.entries.reserve(eq.targets.size());
      for (int t : eq.targets) m.entries.push_back(x[static_cast<std::size_t>(t)]);
      return game_value(m);
    }
    case EquationKind::MinLinear: {
      double best = eval_linear(eq.groups[0], x);
      for (std::size_t g = 1; g < eq.groups.size(); ++g)
        best = std::min(best, eval_linear(eq.groups[g], x));
      return best;
    }
    case EquationKind::MaxLinear: {
      double best = eval_linear(eq.groups[0], x);
      for (std::size_t g = 1; g < eq.groups.size(); ++g)
        best = std::max(best, eval_linear(eq.groups[g], x));
      return best;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

void apply_P_into(const EquationSystem& sys, const ValueVector& x, ValueVector& out) {
  if (static_cast<int>(x.size()) != sys.size())
    throw std::invalid_argument("value vector has dimension " +
                                std::to_string(x.size()) + ", system has " +
                                std::to_string(sys.size()));
  out.resize(x.size());
  for (int v = 0; v < sys.size(); ++v)
    out[static_cast<std::size_t>(v)] =
        eval_equation(sys.equations[static_cast<std::size_t>(v)], x);
}

ValueVector apply_P(const EquationSystem& sys, const ValueVector& x) {
  ValueVector out;
  apply_P_into(sys, x, out);
  return out;
}

double residual(const EquationSystem& sys, const ValueVector& x) {
  ValueVector px = apply_P(sys, x);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(px[i] - x[i]));
  return r;
}

GameMatrix game_matrix_at(const EquationSystem& sys, int vertex, const ValueVector& x) {
  const Equation& eq = sys.equations[static_cast<std::size_t>(vertex)];
  if (eq.kind != EquationKind::MatrixGame)
    throw std::invalid_argument("'" + sys.vertex_ids[static_cast<std::size_t>(vertex)] +
                                "' is not a play vertex");
  GameMatrix m;
  m.rows = eq.row_moves;
  m.cols = eq.col_moves;
  m.entries.reserve(eq.targets.size());
  for (int t : eq.targets) m.entries.push_back(x[static_cast<std::size_t>(t)]);
  return m;
}

namespace {

enum class InduceMode { Min, Max, Fixed };

EquationSystem induce(const EquationSystem& sys, const RsmStrategy* sigma,
                      const RsmStrategy* tau, InduceMode mode) {
  EquationSystem out = sys;
  for (int v = 0; v < sys.size(); ++v) {
    const Equation& eq = sys.equations[static_cast<std::size_t>(v)];
    if (eq.kind != EquationKind::MatrixGame) continue;
    const std::string& id = sys.vertex_ids[static_cast<std::size_t>(v)];
    std::size_t nr = eq.row_moves.size();
    std::size_t nc = eq.col_moves.size();
    Equation repl;
    if (mode == InduceMode::Min) {
      // x_u = min over col moves of sum_i sigma_i x_{target(i,j)}
      auto p1 = aligned_distribution(*sigma, id, eq.row_moves);
      repl.kind = EquationKind::MinLinear;
      repl.group_moves = eq.col_moves;
      repl.groups.resize(nc);
      for (std::size_t j = 0; j < nc; ++j)
        for (std::size_t i = 0; i < nr; ++i)
          if (p1[i] > 0.0) repl.groups[j].push_back({p1[i], eq.targets[i * nc + j]});
    } else if (mode == InduceMode::Max) {
      auto p2 = aligned_distribution(*tau, id, eq.col_moves);
      repl.kind = EquationKind::MaxLinear;
      repl.group_moves = eq.row_moves;
      repl.groups.resize(nr);
      for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
          if (p2[j] > 0.0) repl.groups[i].push_back({p2[j], eq.targets[i * nc + j]});
    } else {
      auto p1 = aligned_distribution(*sigma, id, eq.row_moves);
      auto p2 = aligned_distribution(*tau, id, eq.col_moves);
      repl.kind = EquationKind::Linear;
      for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
          if (p1[i] * p2[j] > 0.0)
            repl.terms.push_back({p1[i] * p2[j], eq.targets[i * nc + j]});
    }
    out.equations[static_cast<std::size_t>(v)] = std::move(repl);
  }
  return out;
}

}  // namespace

EquationSystem induce_min_system(const EquationSystem& sys, const RsmStrategy& sigma) {
  return induce(sys, &sigma, nullptr, InduceMode::Min);
}

EquationSystem induce_max_system(const EquationSystem& sys, const RsmStrategy& tau) {
  return induce(sys, nullptr, &tau, InduceMode::Max);
}

EquationSystem induce_fixed_system(const EquationSystem& sys, const RsmStrategy& sigma,
                                   const RsmStrategy& tau) {
  return induce(sys, &sigma, &tau, InduceMode::Fixed);
}

std::string dump_system(const EquationSystem& sys) {
  std::ostringstream out;
  auto var = [&](int v) { return "x_" + sys.vertex_ids[static_cast<std::size_t>(v)]; };
  auto linear = [&](const std::vector<LinTerm>& terms) {
    if (terms.empty()) return std::string("0");
    std::ostringstream s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (i > 0) s << " + ";
      if (terms[i].coef != 1.0) s << terms[i].coef << "*";
      s << var(terms[i].var);
    }
    return s.str();
  };
  for (int v = 0; v < sys.size(); ++v) {
    const Equation& eq = sys.equations[static_cast<std::size_t>(v)];
    out << var(v) << " = ";
    switch (eq.kind) {
      case EquationKind::Const1:
        out << "1";
        break;
      case EquationKind::Linear:
        out << linear(eq.terms);
        break;
      case EquationKind::Product:
        out << var(eq.var_a) << " * " << var(eq.var_b);
        break;
      case EquationKind::MatrixGame: {
        out << "Val[";
        std::size_t nc = eq.col_moves.size();
        for (std::size_t i = 0; i < eq.row_moves.size(); ++i) {
          if (i > 0) out << "; ";
          for (std::size_t j = 0; j < nc; ++j) {
            if (j > 0) out << ", ";
            out << var(eq.targets[i * nc + j]);
          }
        }
        out << "]";
        break;
      }
      case EquationKind::MinLinear:
      case EquationKind::MaxLinear: {
        out << (eq.kind == EquationKind::MinLinear ? "min(" : "max(");
        for (std::size_t g = 0; g < eq.groups.size(); ++g) {
          if (g > 0) out << ", ";
          out << linear(eq.groups[g]);
        }
        out << ")";
        break;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace rcsg
