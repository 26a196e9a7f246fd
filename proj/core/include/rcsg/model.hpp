#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "rcsg/rational.hpp"

namespace rcsg {

/// Structural kind of a vertex. Exits and call ports never have outgoing
/// transitions; probabilistic vertices and return ports carry probability
/// labels; play vertices carry one transition per legal move pair.
enum class VertexKind { Exit, Probabilistic, CallPort, ReturnPort, Play };

/// Equation-side classification of a vertex: exit, random (probabilistic
/// node or return port), call port, or concurrent play.
enum class VertexType { One, Random, Call, Play };

struct MovePair {
  std::string move1;
  std::string move2;
  bool operator==(const MovePair&) const = default;
};

/// One transition: probability-labelled out of a random vertex, or
/// move-pair-labelled out of a play vertex.
struct Transition {
  std::string source;
  std::variant<Rational, MovePair> label;
  std::string target;

  bool is_probabilistic() const { return label.index() == 0; }
  const Rational& probability() const { return std::get<Rational>(label); }
  const MovePair& moves() const { return std::get<MovePair>(label); }
  bool operator==(const Transition& o) const;
};

/// Declared node of a component (ports are derived from boxes, not declared).
struct Node {
  std::string id;
  VertexKind kind = VertexKind::Probabilistic;  // Exit, Probabilistic or Play
  // Legal moves at a play vertex, in first-use order.
  std::vector<std::string> moves1;
  std::vector<std::string> moves2;
  bool operator==(const Node&) const = default;
};

struct Box {
  std::string id;
  std::string target_component;
  bool operator==(const Box&) const = default;
};

struct Component {
  std::string name;
  std::vector<Node> nodes;
  std::vector<std::string> entries;  // subset of nodes, by id
  std::vector<Box> boxes;
  std::vector<Transition> transitions;
  bool operator==(const Component&) const = default;

  /// Exit nodes, by id (derived from node kinds).
  std::vector<std::string> exits() const;
};

struct Rcsg {
  std::vector<Component> components;
  std::vector<std::string> move_alphabet_1;
  std::vector<std::string> move_alphabet_2;
  /// When set, probabilistic vertices may have out-probabilities summing to
  /// less than 1; the missing mass is an implicit transition to a value-0
  /// sink. Solvers and reductions understand this flag.
  bool substochastic = false;
  bool operator==(const Rcsg&) const = default;
};

/// Port id in the canonical "(box,node)" form used everywhere: files, CLI
/// output and equation dumps.
std::string port_id(const std::string& box, const std::string& node);

// ---------------------------------------------------------------------------
// Resolved view of a model.
//
// The raw structs above are what the parser produces and the validator
// checks. Everything downstream (equations, simulation, reductions) works on
// a VertexTable: a flat, index-based view with all references resolved. The
// table builder throws on models that do not pass validation.
// ---------------------------------------------------------------------------

struct VertexInfo {
  std::string id;
  VertexKind kind;
  int component;  // index into Rcsg::components
  int box = -1;   // CallPort/ReturnPort: index into the owning component's boxes
};

struct ProbEdge {
  int target;
  Rational p;
};

class VertexTable {
 public:
  static VertexTable build(const Rcsg& model);

  const Rcsg& model() const { return *model_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const VertexInfo& info(int v) const { return vertices_[v]; }
  const std::string& id(int v) const { return vertices_[v].id; }
  VertexKind kind(int v) const { return vertices_[v].kind; }

  /// Global index of a vertex id; throws std::out_of_range if unknown.
  int index(const std::string& id) const;
  std::optional<int> find(const std::string& id) const;

  const std::vector<ProbEdge>& prob_out(int v) const { return prob_out_[v]; }
  const std::vector<std::string>& moves1(int v) const { return moves1_[v]; }
  const std::vector<std::string>& moves2(int v) const { return moves2_[v]; }
  /// Play target for (row move i, column move j), row-major.
  int play_target(int v, int i, int j) const {
    return play_grid_[v][static_cast<std::size_t>(i) * moves2_[v].size() +
                         static_cast<std::size_t>(j)];
  }

  /// CallPort only: global index of the callee's entry node.
  int call_entry(int v) const { return call_entry_[v]; }
  /// CallPort only: global index of the matching return port (unique exit).
  int call_return(int v) const { return call_return_[v]; }

  std::vector<int> play_vertices() const;

 private:
  const Rcsg* model_ = nullptr;
  std::vector<VertexInfo> vertices_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::vector<ProbEdge>> prob_out_;
  std::vector<std::vector<std::string>> moves1_, moves2_;
  std::vector<std::vector<int>> play_grid_;
  std::vector<int> call_entry_, call_return_;
};

/// The four-way classification driving the equation system.
VertexType vertex_type(const VertexTable& table, const std::string& vertex);
VertexType vertex_type_of(VertexKind kind);

// ---------------------------------------------------------------------------
// Model-building helpers, used by reductions, generators and tests.
// ---------------------------------------------------------------------------

Node make_node(std::string id, VertexKind kind);
void add_prob_edge(Component& c, const std::string& src, Rational p,
                   const std::string& dst);
/// Adds a play transition and extends the source node's legal move lists.
void add_play_edge(Component& c, const std::string& src, const std::string& m1,
                   const std::string& m2, const std::string& dst);
/// Recomputes both global move alphabets as the union of per-node legal moves.
void refresh_alphabets(Rcsg& model);

}  // namespace rcsg
