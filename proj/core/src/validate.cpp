#include "rcsg/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace rcsg {

std::string ValidationReport::to_string() const {
  if (ok()) return "ok\n";
  std::ostringstream out;
  for (const auto& v : violations) out << v.where << ": " << v.message << "\n";
  return out.str();
}

namespace {

struct LocalVertex {
  VertexKind kind;
  const Node* node = nullptr;  // null for ports
};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

ValidationReport validate(const Rcsg& model, const ValidateOptions& opts) {
  ValidationReport report;
  auto flag = [&](std::string where, std::string message) {
    report.violations.push_back({std::move(where), std::move(message)});
  };

  std::map<std::string, const Component*> comp_by_name;
  for (const auto& c : model.components) {
    if (!comp_by_name.emplace(c.name, &c).second)
      flag(c.name, "duplicate component name");
  }

  // Global vertex id uniqueness, across declared nodes and derived ports.
  std::set<std::string> seen_ids;
  auto claim_id = [&](const std::string& id, const std::string& where) {
    if (!seen_ids.insert(id).second) flag(where, "vertex id '" + id + "' is not globally unique");
  };

  for (const auto& c : model.components) {
    // Per-component vertex map: declared nodes plus ports of resolvable boxes.
    std::map<std::string, LocalVertex> local;

    for (const auto& n : c.nodes) {
      claim_id(n.id, c.name + "/" + n.id);
      local[n.id] = {n.kind, &n};
      if (n.kind == VertexKind::Play) {
        if (n.moves1.empty())
          flag(c.name + "/" + n.id, "play vertex has no legal moves for player 1");
        if (n.moves2.empty())
          flag(c.name + "/" + n.id, "play vertex has no legal moves for player 2");
        for (const auto& m : n.moves1)
          if (!contains(model.move_alphabet_1, m))
            flag(c.name + "/" + n.id, "move '" + m + "' not in player 1 alphabet");
        for (const auto& m : n.moves2)
          if (!contains(model.move_alphabet_2, m))
            flag(c.name + "/" + n.id, "move '" + m + "' not in player 2 alphabet");
      } else {
        if (!n.moves1.empty() || !n.moves2.empty())
          flag(c.name + "/" + n.id, "non-play vertex declares legal moves");
      }
    }

    auto exits = c.exits();
    std::set<std::string> entry_seen;
    for (const auto& en : c.entries) {
      if (!entry_seen.insert(en).second) flag(c.name, "entry '" + en + "' listed twice");
      if (!local.count(en))
        flag(c.name, "entry '" + en + "' is not a declared node");
      else if (local[en].kind == VertexKind::Exit)
        flag(c.name, "entry '" + en + "' is also an exit (must be disjoint)");
    }
    if (opts.require_single_exit && exits.size() != 1) {
      flag(c.name, "component has " + std::to_string(exits.size()) +
                       " exits; solvers require exactly 1");
    }

    std::set<std::string> box_seen;
    for (const auto& b : c.boxes) {
      if (!box_seen.insert(b.id).second) flag(c.name, "duplicate box id '" + b.id + "'");
      auto it = comp_by_name.find(b.target_component);
      if (it == comp_by_name.end()) {
        flag(c.name + "/" + b.id, "box targets unknown component '" + b.target_component + "'");
        continue;
      }
      const Component& callee = *it->second;
      for (const auto& en : callee.entries) {
        std::string pid = port_id(b.id, en);
        claim_id(pid, c.name + "/" + pid);
        local[pid] = {VertexKind::CallPort, nullptr};
      }
      for (const auto& ex : callee.exits()) {
        std::string pid = port_id(b.id, ex);
        claim_id(pid, c.name + "/" + pid);
        local[pid] = {VertexKind::ReturnPort, nullptr};
      }
    }

    // Transition checks.
    std::map<std::string, Rational> prob_sums;
    std::map<std::string, std::set<std::pair<std::string, std::string>>> seen_pairs;
    for (const auto& t : c.transitions) {
      std::string where = c.name + ": " + t.source + " -> " + t.target;
      auto src = local.find(t.source);
      if (src == local.end()) {
        flag(where, "unknown source vertex");
        continue;
      }
      if (!local.count(t.target)) flag(where, "unknown target vertex");

      VertexKind k = src->second.kind;
      if (k == VertexKind::Exit || k == VertexKind::CallPort) {
        flag(where, "exit nodes and call ports must not have outgoing transitions");
        continue;
      }
      if (t.is_probabilistic()) {
        if (k == VertexKind::Play) {
          flag(where, "play vertex has a probability-labelled transition");
          continue;
        }
        const Rational& p = t.probability();
        if (p.sign() < 0 || p > Rational(1))
          flag(where, "probability " + p.to_string() + " outside [0,1]");
        auto [it, fresh] = prob_sums.emplace(t.source, p);
        if (!fresh) it->second += p;
      } else {
        if (k != VertexKind::Play) {
          flag(where, "move-labelled transition out of a non-play vertex");
          continue;
        }
        const Node* n = src->second.node;
        const MovePair& m = t.moves();
        if (!contains(n->moves1, m.move1) || !contains(n->moves2, m.move2))
          flag(where, "move pair (" + m.move1 + "," + m.move2 + ") not legal at source");
        if (!seen_pairs[t.source].insert({m.move1, m.move2}).second)
          flag(where, "duplicate transition for move pair (" + m.move1 + "," + m.move2 + ")");
      }
    }

    // Consistency: outgoing probabilities of a probabilistic vertex must sum
    // to exactly 1 (dead ends are legal and denote value 0). Substochastic
    // models may leave mass unassigned but never exceed 1.
    for (const auto& [src, sum] : prob_sums) {
      std::string where = c.name + "/" + src;
      if (sum > Rational(1))
        flag(where, "outgoing probabilities sum to " + sum.to_string() + " > 1");
      else if (sum != Rational(1) && !model.substochastic)
        flag(where, "outgoing probabilities sum to " + sum.to_string() + ", not 1");
    }

    // Every legal move pair of a play vertex needs exactly one transition.
    for (const auto& n : c.nodes) {
      if (n.kind != VertexKind::Play) continue;
      const auto& pairs = seen_pairs[n.id];
      for (const auto& m1 : n.moves1)
        for (const auto& m2 : n.moves2)
          if (!pairs.count({m1, m2}))
            flag(c.name + "/" + n.id, "no transition for legal move pair (" + m1 + "," + m2 + ")");
    }
  }

  return report;
}

}  // namespace rcsg
