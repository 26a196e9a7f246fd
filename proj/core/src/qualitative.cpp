#include "rcsg/qualitative.hpp"

#include <deque>

namespace rcsg {

ZeroSetResult zero_set(const Rcsg& model) { return zero_set(VertexTable::build(model)); }

ZeroSetResult zero_set(const VertexTable& table) {
  int n = table.size();
  std::vector<bool> in_z(static_cast<std::size_t>(n), true);

  // Reverse dependencies: removing v can only trigger removal of vertices
  // whose rule looks at v.
  std::vector<std::vector<int>> dependents(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    switch (table.kind(v)) {
      case VertexKind::Probabilistic:
      case VertexKind::ReturnPort:
        for (const auto& e : table.prob_out(v))
          dependents[static_cast<std::size_t>(e.target)].push_back(v);
        break;
      case VertexKind::CallPort:
        dependents[static_cast<std::size_t>(table.call_entry(v))].push_back(v);
        dependents[static_cast<std::size_t>(table.call_return(v))].push_back(v);
        break;
      case VertexKind::Play: {
        int nr = static_cast<int>(table.moves1(v).size());
        int nc = static_cast<int>(table.moves2(v).size());
        for (int i = 0; i < nr; ++i)
          for (int j = 0; j < nc; ++j)
            dependents[static_cast<std::size_t>(table.play_target(v, i, j))].push_back(v);
        break;
      }
      case VertexKind::Exit:
        break;
    }
  }

  // Removal rules; true means "u leaves Z".
  auto rule_fires = [&](int u) {
    switch (table.kind(u)) {
      case VertexKind::Exit:
        return true;
      case VertexKind::Probabilistic:
      case VertexKind::ReturnPort:
        for (const auto& e : table.prob_out(u))
          if (!in_z[static_cast<std::size_t>(e.target)]) return true;
        return false;
      case VertexKind::CallPort:
        return !in_z[static_cast<std::size_t>(table.call_entry(u))] &&
               !in_z[static_cast<std::size_t>(table.call_return(u))];
      case VertexKind::Play: {
        int nr = static_cast<int>(table.moves1(u).size());
        int nc = static_cast<int>(table.moves2(u).size());
        for (int j = 0; j < nc; ++j) {
          bool escape = false;
          for (int i = 0; i < nr; ++i)
            if (!in_z[static_cast<std::size_t>(table.play_target(u, i, j))]) {
              escape = true;
              break;
            }
          if (!escape) return false;
        }
        return true;
      }
    }
    return false;
  };

  ZeroSetResult res;
  std::deque<int> queue;
  for (int v = 0; v < n; ++v) {
    if (table.kind(v) == VertexKind::Exit) {
      in_z[static_cast<std::size_t>(v)] = false;
      queue.push_back(v);
      ++res.iterations;
    }
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : dependents[static_cast<std::size_t>(v)]) {
      if (!in_z[static_cast<std::size_t>(u)]) continue;
      if (rule_fires(u)) {
        in_z[static_cast<std::size_t>(u)] = false;
        queue.push_back(u);
        ++res.iterations;
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (in_z[static_cast<std::size_t>(v)]) res.zero_vertices.push_back(table.id(v));
  return res;
}

AlmostSureReport almost_sure_report(const Rcsg& model, double tol, const IterOptions& iter) {
  EquationSystem sys = build_system(model);
  SolveResult solved = value_iterate(sys, iter);
  BoundsCertificate cert = certify_bounds(sys, solved.values, iter);

  AlmostSureReport report;
  report.bounds_converged = cert.lower_converged && cert.upper_converged;
  for (int v = 0; v < sys.size(); ++v) {
    VertexVerdict row;
    row.vertex = sys.vertex_ids[static_cast<std::size_t>(v)];
    row.lower = cert.lower[static_cast<std::size_t>(v)];
    row.upper = cert.upper[static_cast<std::size_t>(v)];
    if (row.upper < 1.0 - tol)
      row.verdict = Verdict::ValueLessThan1;
    else if (row.lower > 1.0 - tol)
      row.verdict = Verdict::Numerically1;
    else
      row.verdict = Verdict::Inconclusive;
    report.rows.push_back(std::move(row));
  }
  return report;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ValueLessThan1:
      return "value_lt_1";
    case Verdict::Numerically1:
      return "numerically_1";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

}  // namespace rcsg
