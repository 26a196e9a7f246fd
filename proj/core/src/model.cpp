#include "rcsg/model.hpp"

#include <algorithm>
#include <stdexcept>

namespace rcsg {

bool Transition::operator==(const Transition& o) const {
  return source == o.source && target == o.target && label == o.label;
}

std::vector<std::string> Component::exits() const {
  std::vector<std::string> out;
  for (const auto& n : nodes)
    if (n.kind == VertexKind::Exit) out.push_back(n.id);
  return out;
}

std::string port_id(const std::string& box, const std::string& node) {
  return "(" + box + "," + node + ")";
}

namespace {

int component_index(const Rcsg& model, const std::string& name) {
  for (std::size_t i = 0; i < model.components.size(); ++i)
    if (model.components[i].name == name) return static_cast<int>(i);
  throw std::out_of_range("unknown component '" + name + "'");
}

}  // namespace

VertexTable VertexTable::build(const Rcsg& model) {
  VertexTable t;
  t.model_ = &model;

  // Global vertex order: per component, declared nodes first, then for each
  // box its call ports (entry order) followed by its return ports.
  for (std::size_t ci = 0; ci < model.components.size(); ++ci) {
    const Component& c = model.components[ci];
    for (const auto& n : c.nodes)
      t.vertices_.push_back({n.id, n.kind, static_cast<int>(ci), -1});
    for (std::size_t bi = 0; bi < c.boxes.size(); ++bi) {
      const Box& b = c.boxes[bi];
      const Component& callee =
          model.components[static_cast<std::size_t>(component_index(model, b.target_component))];
      for (const auto& en : callee.entries)
        t.vertices_.push_back({port_id(b.id, en), VertexKind::CallPort,
                               static_cast<int>(ci), static_cast<int>(bi)});
      for (const auto& ex : callee.exits())
        t.vertices_.push_back({port_id(b.id, ex), VertexKind::ReturnPort,
                               static_cast<int>(ci), static_cast<int>(bi)});
    }
  }
  for (std::size_t i = 0; i < t.vertices_.size(); ++i) {
    auto [it, fresh] = t.index_.emplace(t.vertices_[i].id, static_cast<int>(i));
    if (!fresh)
      throw std::invalid_argument("duplicate vertex id '" + t.vertices_[i].id + "'");
  }

  int n = t.size();
  t.prob_out_.resize(n);
  t.moves1_.resize(n);
  t.moves2_.resize(n);
  t.play_grid_.resize(n);
  t.call_entry_.assign(n, -1);
  t.call_return_.assign(n, -1);

  // Resolve call/return structure. Requires single-exit targets so that the
  // call port pairs with a unique return port.
  for (int v = 0; v < n; ++v) {
    const VertexInfo& info = t.vertices_[v];
    if (info.kind != VertexKind::CallPort) continue;
    const Component& owner = model.components[static_cast<std::size_t>(info.component)];
    const Box& b = owner.boxes[static_cast<std::size_t>(info.box)];
    const Component& callee =
        model.components[static_cast<std::size_t>(component_index(model, b.target_component))];
    auto exits = callee.exits();
    if (exits.size() != 1)
      throw std::invalid_argument("component '" + callee.name +
                                  "' must have exactly one exit to be solvable");
    // id is "(box,entry)"; strip to recover the entry node id.
    const std::string& pid = info.id;
    std::string entry = pid.substr(b.id.size() + 2, pid.size() - b.id.size() - 3);
    t.call_entry_[v] = t.index(entry);
    t.call_return_[v] = t.index(port_id(b.id, exits[0]));
  }

  // Resolve transitions.
  for (const auto& c : model.components) {
    for (const auto& tr : c.transitions) {
      int src = t.index(tr.source);
      int dst = t.index(tr.target);
      if (tr.is_probabilistic()) {
        t.prob_out_[src].push_back({dst, tr.probability()});
      } else {
        // Grid filled below once move lists are known.
        (void)dst;
      }
    }
  }
  for (std::size_t ci = 0; ci < model.components.size(); ++ci) {
    const Component& c = model.components[ci];
    for (const auto& node : c.nodes) {
      if (node.kind != VertexKind::Play) continue;
      int v = t.index(node.id);
      t.moves1_[v] = node.moves1;
      t.moves2_[v] = node.moves2;
      t.play_grid_[v].assign(node.moves1.size() * node.moves2.size(), -1);
    }
    for (const auto& tr : c.transitions) {
      if (tr.is_probabilistic()) continue;
      int src = t.index(tr.source);
      const auto& m = tr.moves();
      auto r = std::find(t.moves1_[src].begin(), t.moves1_[src].end(), m.move1);
      auto col = std::find(t.moves2_[src].begin(), t.moves2_[src].end(), m.move2);
      if (r == t.moves1_[src].end() || col == t.moves2_[src].end())
        throw std::invalid_argument("move pair (" + m.move1 + "," + m.move2 +
                                    ") not legal at '" + tr.source + "'");
      std::size_t i = static_cast<std::size_t>(r - t.moves1_[src].begin());
      std::size_t j = static_cast<std::size_t>(col - t.moves2_[src].begin());
      int& slot = t.play_grid_[src][i * t.moves2_[src].size() + j];
      if (slot != -1)
        throw std::invalid_argument("duplicate move pair at '" + tr.source + "'");
      slot = t.index(tr.target);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (t.kind(v) != VertexKind::Play) continue;
    for (int target : t.play_grid_[v])
      if (target == -1)
        throw std::invalid_argument("incomplete move grid at '" + t.id(v) + "'");
  }
  return t;
}

int VertexTable::index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown vertex '" + id + "'");
  return it->second;
}

std::optional<int> VertexTable::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> VertexTable::play_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v)
    if (kind(v) == VertexKind::Play) out.push_back(v);
  return out;
}

VertexType vertex_type_of(VertexKind kind) {
  switch (kind) {
    case VertexKind::Exit:
      return VertexType::One;
    case VertexKind::Probabilistic:
    case VertexKind::ReturnPort:
      return VertexType::Random;
    case VertexKind::CallPort:
      return VertexType::Call;
    case VertexKind::Play:
      return VertexType::Play;
  }
  throw std::logic_error("unreachable");
}

VertexType vertex_type(const VertexTable& table, const std::string& vertex) {
  return vertex_type_of(table.kind(table.index(vertex)));
}

Node make_node(std::string id, VertexKind kind) {
  Node n;
  n.id = std::move(id);
  n.kind = kind;
  return n;
}

void add_prob_edge(Component& c, const std::string& src, Rational p,
                   const std::string& dst) {
  c.transitions.push_back({src, std::move(p), dst});
}

void add_play_edge(Component& c, const std::string& src, const std::string& m1,
                   const std::string& m2, const std::string& dst) {
  for (auto& n : c.nodes) {
    if (n.id != src) continue;
    if (std::find(n.moves1.begin(), n.moves1.end(), m1) == n.moves1.end())
      n.moves1.push_back(m1);
    if (std::find(n.moves2.begin(), n.moves2.end(), m2) == n.moves2.end())
      n.moves2.push_back(m2);
    break;
  }
  c.transitions.push_back({src, MovePair{m1, m2}, dst});
}

void refresh_alphabets(Rcsg& model) {
  model.move_alphabet_1.clear();
  model.move_alphabet_2.clear();
  auto add = [](std::vector<std::string>& v, const std::string& m) {
    if (std::find(v.begin(), v.end(), m) == v.end()) v.push_back(m);
  };
  for (const auto& c : model.components)
    for (const auto& n : c.nodes) {
      for (const auto& m : n.moves1) add(model.move_alphabet_1, m);
      for (const auto& m : n.moves2) add(model.move_alphabet_2, m);
    }
}

}  // namespace rcsg
