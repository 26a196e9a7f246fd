#include "rcsg/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "rcsg/qualitative.hpp"
#include "rcsg/validate.hpp"

namespace rcsg {

namespace {

// Fresh-identifier source over the global vertex/box id namespace.
class NamePool {
 public:
  explicit NamePool(const Rcsg& model) {
    for (const auto& c : model.components) {
      for (const auto& n : c.nodes) used_.insert(n.id);
      for (const auto& b : c.boxes) {
        used_.insert(b.id);
        // Port ids live in the same namespace.
        for (const auto& cc : model.components)
          if (cc.name == b.target_component) {
            for (const auto& en : cc.entries) used_.insert(port_id(b.id, en));
            for (const auto& ex : cc.exits()) used_.insert(port_id(b.id, ex));
          }
      }
    }
  }
  std::string fresh(const std::string& base) {
    if (used_.insert(base).second) return base;
    for (int i = 1;; ++i) {
      std::string candidate = base + "_" + std::to_string(i);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::set<std::string> used_;
};

constexpr const char* kHeads = "h";
constexpr const char* kTails = "t";

// Matching-pennies wiring of one half-half choice: mixed move pairs go to
// the heads target, equal pairs to the tails target.
void wire_coin(Component& c, const std::string& v, const std::string& heads,
               const std::string& tails) {
  add_play_edge(c, v, kHeads, kTails, heads);
  add_play_edge(c, v, kTails, kHeads, heads);
  add_play_edge(c, v, kHeads, kHeads, tails);
  add_play_edge(c, v, kTails, kTails, tails);
}

struct Ladder {
  // Interval [lo,hi) of k-bit flip outcomes mapped to outcome regions:
  // [cut[j-1], cut[j]) goes to target j, [q, 2^k) restarts at the source.
  std::vector<std::int64_t> cuts;  // r+1 prefix sums, cuts[0] = 0, back() = q
  std::vector<std::string> targets;
  std::int64_t q = 0;
  std::string restart;

  // Returns the target for a fully decided interval, or nullopt.
  std::optional<std::string> decide(std::int64_t lo, std::int64_t hi) const {
    if (lo >= q) return restart;
    for (std::size_t j = 1; j < cuts.size(); ++j)
      if (cuts[j - 1] <= lo && hi <= cuts[j]) return targets[j - 1];
    return std::nullopt;
  }
};

// Builds the coin vertex covering [lo,hi) and returns its id; decided
// intervals collapse to their target.
std::string build_ladder(Component& c, NamePool& pool, const Ladder& ladder,
                         const std::string& base, std::int64_t lo, std::int64_t hi) {
  if (auto hit = ladder.decide(lo, hi)) return *hit;
  std::int64_t mid = lo + (hi - lo) / 2;
  std::string id = pool.fresh(base + "_c");
  c.nodes.push_back(make_node(id, VertexKind::Play));
  std::string left = build_ladder(c, pool, ladder, base, lo, mid);
  std::string right = build_ladder(c, pool, ladder, base, mid, hi);
  wire_coin(c, id, left, right);
  return id;
}

// Rewires one vertex that owns a rational distribution. The vertex itself
// becomes the root coin (or the direct play wiring); new vertices are
// appended to the component.
void compile_distribution(Component& c, NamePool& pool, const std::string& source,
                          std::vector<std::pair<Rational, std::string>> dist) {
  // Merge duplicate targets first; a point distribution needs no ladder.
  std::map<std::string, Rational> merged;
  for (auto& [p, t] : dist) {
    auto [it, fresh] = merged.emplace(t, p);
    if (!fresh) it->second += p;
  }
  if (merged.size() == 1 && merged.begin()->second == Rational(1)) {
    add_play_edge(c, source, kHeads, kHeads, merged.begin()->first);
    return;
  }

  BigInt q(1);
  for (const auto& [t, p] : merged) {
    BigInt g = BigInt::gcd(q, p.den());
    q = q / g * p.den();
  }
  Ladder ladder;
  ladder.q = q.to_int64();
  ladder.restart = source;
  std::int64_t acc = 0;
  ladder.cuts.push_back(0);
  for (const auto& [t, p] : merged) {
    acc += (p.num() * (q / p.den())).to_int64();
    ladder.cuts.push_back(acc);
    ladder.targets.push_back(t);
  }
  if (acc != ladder.q) throw std::logic_error("distribution does not sum to 1");

  unsigned k = 1;
  while ((std::int64_t{1} << k) < ladder.q) ++k;
  std::int64_t span = std::int64_t{1} << k;

  std::int64_t mid = span / 2;
  std::string left = build_ladder(c, pool, ladder, source, 0, mid);
  std::string right = build_ladder(c, pool, ladder, source, mid, span);
  wire_coin(c, source, left, right);
}

VertexKind kind_of(const Component& c, const std::string& id) {
  for (const auto& n : c.nodes)
    if (n.id == id) return n.kind;
  return VertexKind::ReturnPort;  // ports are the only undeclared sources
}

}  // namespace

Rcsg derandomize(const Rcsg& model) {
  Rcsg out;
  out.move_alphabet_1 = model.move_alphabet_1;
  out.move_alphabet_2 = model.move_alphabet_2;
  out.substochastic = false;
  NamePool pool(model);

  for (const auto& c : model.components) {
    Component nc;
    nc.name = c.name;
    nc.entries = c.entries;
    nc.boxes = c.boxes;
    nc.nodes = c.nodes;

    // Group probabilistic out-edges by source; play transitions copy over.
    std::map<std::string, std::vector<std::pair<Rational, std::string>>> dists;
    std::vector<std::string> order;
    for (const auto& t : c.transitions) {
      if (!t.is_probabilistic()) {
        nc.transitions.push_back(t);
        continue;
      }
      if (!dists.count(t.source)) order.push_back(t.source);
      dists[t.source].push_back({t.probability(), t.target});
    }

    auto node_by_id = [&](const std::string& id) -> Node* {
      for (auto& n : nc.nodes)
        if (n.id == id) return &n;
      return nullptr;
    };

    std::string sink;  // created on demand for substochastic residue
    auto ensure_sink = [&]() {
      if (sink.empty()) {
        sink = pool.fresh(c.name + "_dead");
        nc.nodes.push_back(make_node(sink, VertexKind::Probabilistic));
      }
      return sink;
    };

    for (const auto& src : order) {
      auto dist = dists[src];
      Rational total(0);
      for (const auto& [p, t] : dist) total += p;
      if (total > Rational(1))
        throw std::invalid_argument("probabilities at '" + src + "' exceed 1");
      if (total < Rational(1)) dist.push_back({Rational(1) - total, ensure_sink()});

      if (kind_of(c, src) == VertexKind::ReturnPort) {
        // A return port cannot become a play vertex; keep a deterministic
        // hand-off into a fresh node that carries the ladder.
        if (dist.size() == 1 && dist[0].first == Rational(1)) {
          add_prob_edge(nc, src, Rational(1), dist[0].second);
          continue;
        }
        std::string carrier = pool.fresh(src.substr(1, src.size() - 2) + "_d");
        nc.nodes.push_back(make_node(carrier, VertexKind::Play));
        add_prob_edge(nc, src, Rational(1), carrier);
        // Restarting the distribution re-samples it, so the ladder's restart
        // target is the carrier, which compile_distribution handles already.
        compile_distribution(nc, pool, carrier, std::move(dist));
        continue;
      }
      node_by_id(src)->kind = VertexKind::Play;
      compile_distribution(nc, pool, src, std::move(dist));
    }

    // Dead-end probabilistic vertices keep value 0 as play self-loops.
    for (auto& n : nc.nodes) {
      if (n.kind != VertexKind::Probabilistic) continue;
      if (dists.count(n.id)) continue;
      n.kind = VertexKind::Play;
      add_play_edge(nc, n.id, kHeads, kHeads, n.id);
    }

    out.components.push_back(std::move(nc));
  }

  auto add_move = [](std::vector<std::string>& v, const std::string& m) {
    if (std::find(v.begin(), v.end(), m) == v.end()) v.push_back(m);
  };
  add_move(out.move_alphabet_1, kHeads);
  add_move(out.move_alphabet_1, kTails);
  add_move(out.move_alphabet_2, kHeads);
  add_move(out.move_alphabet_2, kTails);
  return out;
}

// ---------------------------------------------------------------------------
// Square-root gadgets
// ---------------------------------------------------------------------------

namespace {

// Rational m with 0 <= m - sqrt(a) <= 1/(2a), by Newton iteration from above
// starting at floor(sqrt(a)) + 1. Certified without knowing sqrt(a):
// m^2 >= a is a loop invariant and (m - 1/(2a))^2 < a bounds the gap.
Rational approx_sqrt_above(std::int64_t a) {
  Rational A(a);
  Rational half_step(BigInt(1), BigInt(2 * a));
  Rational m(BigInt::isqrt(BigInt(a)) + BigInt(1), BigInt(1));
  while ((m - half_step) * (m - half_step) >= A) {
    m = (m + A / m) / Rational(2);
    if (m * m < A) throw std::logic_error("sqrt iteration fell below the root");
  }
  return m;
}

}  // namespace

std::pair<GadgetSpec, Rcsg> sqrt_sum_gadget(std::int64_t a) {
  if (a <= 1) throw std::invalid_argument("gadget needs a > 1");
  GadgetSpec spec;
  spec.a = a;

  Rcsg model;
  Component c;
  c.name = "G" + std::to_string(a);
  c.entries = {"u"};

  BigInt root = BigInt::isqrt(BigInt(a));
  if (root * root == BigInt(a)) {
    // Perfect square: sqrt(a) is an integer s, so a direct lottery with
    // d = 0, e = 1/(s+1) realizes value e*sqrt(a) = s/(s+1).
    spec.perfect_square = true;
    spec.m = Rational(root, BigInt(1));
    spec.l = Rational(0);
    spec.c2 = Rational(0);
    spec.g = spec.m - Rational(1);
    spec.c3 = Rational(BigInt(1), (spec.g.ceil() + BigInt(1)) * BigInt(2));
    spec.c1 = spec.g * spec.c3;
    spec.d = Rational(0);
    spec.e = Rational(BigInt(1), root + BigInt(1));
    c.nodes.push_back(make_node("u", VertexKind::Probabilistic));
    c.nodes.push_back(make_node("t", VertexKind::Exit));
    c.nodes.push_back(make_node("z", VertexKind::Probabilistic));
    add_prob_edge(c, "u", Rational(root, root + BigInt(1)), "t");
    add_prob_edge(c, "u", spec.e, "z");
  } else {
    spec.m = approx_sqrt_above(a);
    spec.l = spec.m * spec.m - Rational(a);
    if (spec.l.sign() < 0 || spec.l >= Rational(1))
      throw std::logic_error("l = m^2 - a outside [0,1)");
    spec.c2 = spec.l / Rational(4);
    spec.g = spec.m - Rational(1) - spec.c2;
    if (spec.g.sign() <= 0) throw std::logic_error("gadget coefficient g not positive");
    spec.c3 = Rational(BigInt(1), (spec.g.ceil() + BigInt(1)) * BigInt(2));
    if (!(spec.c3 < Rational(1) && spec.c3 * spec.g * Rational(2) < Rational(1)))
      throw std::logic_error("c3 outside (0, 1/(2g))");
    spec.c1 = spec.g * spec.c3;
    spec.d = -(spec.c1 + spec.c3 - spec.c2 * spec.c3) / (Rational(2) * spec.c2);
    spec.e = spec.c3 / (Rational(2) * spec.c2);

    // The whole construction stands on this identity; check it exactly.
    Rational lhs = (spec.g + Rational(1) - spec.c2) * (spec.g + Rational(1) - spec.c2) +
                   Rational(4) * spec.g * spec.c2;
    if (lhs != Rational(a)) throw std::logic_error("discriminant identity failed");

    Rational rest1 = Rational(1) - spec.c1 - spec.c2;
    if (rest1.sign() < 0) throw std::logic_error("v1 probabilities exceed 1");
    c.nodes.push_back(make_node("u", VertexKind::Play));
    c.nodes.push_back(make_node("t", VertexKind::Exit));
    c.nodes.push_back(make_node("z", VertexKind::Probabilistic));
    c.nodes.push_back(make_node("v1", VertexKind::Probabilistic));
    c.nodes.push_back(make_node("v2", VertexKind::Probabilistic));
    add_play_edge(c, "u", "1", "1", "v1");
    add_play_edge(c, "u", "1", "2", "z");
    add_play_edge(c, "u", "2", "1", "z");
    add_play_edge(c, "u", "2", "2", "v2");
    add_prob_edge(c, "v1", spec.c1, "t");
    add_prob_edge(c, "v1", spec.c2, "u");
    if (!rest1.is_zero()) add_prob_edge(c, "v1", rest1, "z");
    add_prob_edge(c, "v2", spec.c3, "t");
    add_prob_edge(c, "v2", Rational(1) - spec.c3, "z");
  }
  if (spec.e.sign() <= 0) throw std::logic_error("gadget coefficient e not positive");

  model.components.push_back(std::move(c));
  refresh_alphabets(model);
  return {std::move(spec), std::move(model)};
}

SqrtSumInstance sqrt_sum_instance(const std::vector<std::int64_t>& a_list, std::int64_t k) {
  if (a_list.empty()) throw std::invalid_argument("instance needs at least one a");
  SqrtSumInstance inst;
  inst.a_list = a_list;
  inst.k = k;

  Rational inv_sum(0);
  for (std::int64_t a : a_list) {
    auto [spec, gadget_model] = sqrt_sum_gadget(a);
    (void)gadget_model;
    inv_sum += Rational(1) / spec.e;
    inst.gadgets.push_back(std::move(spec));
  }
  inst.E = Rational(1) / inv_sum;

  Component c;
  c.name = "inst";
  c.entries = {"s"};
  c.nodes.push_back(make_node("s", VertexKind::Probabilistic));
  c.nodes.push_back(make_node("t", VertexKind::Exit));
  c.nodes.push_back(make_node("z", VertexKind::Probabilistic));

  Rational p_total(0);
  for (std::size_t i = 0; i < inst.gadgets.size(); ++i) {
    const GadgetSpec& spec = inst.gadgets[i];
    std::string ui = "u" + std::to_string(i + 1);
    Rational pi = inst.E / spec.e;
    inst.p.push_back(pi);
    inst.D += pi * spec.d;
    p_total += pi;
    add_prob_edge(c, "s", pi, ui);

    if (spec.perfect_square) {
      c.nodes.push_back(make_node(ui, VertexKind::Probabilistic));
      add_prob_edge(c, ui, spec.m * spec.e, "t");
      add_prob_edge(c, ui, spec.e, "z");
      continue;
    }
    std::string v1 = "v1_" + std::to_string(i + 1);
    std::string v2 = "v2_" + std::to_string(i + 1);
    c.nodes.push_back(make_node(ui, VertexKind::Play));
    c.nodes.push_back(make_node(v1, VertexKind::Probabilistic));
    c.nodes.push_back(make_node(v2, VertexKind::Probabilistic));
    add_play_edge(c, ui, "1", "1", v1);
    add_play_edge(c, ui, "1", "2", "z");
    add_play_edge(c, ui, "2", "1", "z");
    add_play_edge(c, ui, "2", "2", v2);
    add_prob_edge(c, v1, spec.c1, "t");
    add_prob_edge(c, v1, spec.c2, ui);
    Rational rest1 = Rational(1) - spec.c1 - spec.c2;
    if (!rest1.is_zero()) add_prob_edge(c, v1, rest1, "z");
    add_prob_edge(c, v2, spec.c3, "t");
    add_prob_edge(c, v2, Rational(1) - spec.c3, "z");
  }
  if (p_total != Rational(1))
    throw std::logic_error("instance start distribution does not sum to 1");
  inst.threshold = inst.D + inst.E * Rational(k);

  inst.model.components.push_back(std::move(c));
  refresh_alphabets(inst.model);
  return inst;
}

// ---------------------------------------------------------------------------
// Quantitative CSG -> qualitative 1-RCSG
// ---------------------------------------------------------------------------

CsgReduction csg_quant_to_rcsg_qual(const Rcsg& csg, const std::string& start,
                                    const Rational& p) {
  if (csg.components.size() != 1 || !csg.components[0].boxes.empty())
    throw std::invalid_argument("input must be a finite CSG: one component, no boxes");
  if (p.sign() <= 0 || p > Rational(1))
    throw std::invalid_argument("threshold must satisfy 0 < p <= 1");
  const Component& c = csg.components[0];
  auto exits = c.exits();
  if (exits.size() != 1)
    throw std::invalid_argument("finite CSG needs exactly one terminal (exit) node");
  const std::string terminal = exits[0];

  CsgReduction out;
  if (start == terminal) {
    out.kind = CsgReduction::Kind::ValueOne;
    return out;
  }

  // Step (i): drop every vertex from which player 2 forces probability 0 of
  // reaching the terminal; that set is structural and is exactly the zero
  // set of the CSG (checked against `start` before anything is built).
  ZeroSetResult zs = zero_set(csg);
  std::set<std::string> removed(zs.zero_vertices.begin(), zs.zero_vertices.end());
  if (removed.count(start)) {
    out.kind = CsgReduction::Kind::ValueZero;
    return out;
  }

  NamePool pool(csg);
  Component nc;
  nc.name = c.name;
  for (const auto& n : c.nodes)
    if (!removed.count(n.id)) nc.nodes.push_back(n);

  // Steps (ii) and (iv) share the "0" routing: in the embedded game the old
  // "0" terminal is the first call port, entered below once the entry is
  // known. Collect rerouted transitions first.
  std::string b1 = pool.fresh("b1");
  std::string b2 = pool.fresh("b2");

  // Step (iii): affine threshold shift to 1/2. value(s') = alpha*value(start)
  // + beta with alpha*p + beta = 1/2, realized by a lottery over {start,
  // terminal, "0"}; p = 1/2 is the identity.
  std::string entry = start;
  if (p != Rational(1, 2)) {
    entry = pool.fresh("s");
    nc.nodes.insert(nc.nodes.begin(), make_node(entry, VertexKind::Probabilistic));
  }
  nc.entries = {entry};
  const std::string zero_target = port_id(b1, entry);

  for (const auto& t : c.transitions) {
    if (removed.count(t.source)) continue;
    Transition nt = t;
    if (removed.count(nt.target)) nt.target = zero_target;
    nc.transitions.push_back(std::move(nt));
  }
  // Residual probability goes to "0" explicitly.
  for (const auto& n : nc.nodes) {
    if (n.kind != VertexKind::Probabilistic) continue;
    if (n.id == entry && entry != start) continue;  // shift vertex added below
    Rational sum(0);
    bool has_edges = false;
    for (const auto& t : nc.transitions)
      if (t.source == n.id && t.is_probabilistic()) {
        sum += t.probability();
        has_edges = true;
      }
    if (has_edges && sum < Rational(1))
      add_prob_edge(nc, n.id, Rational(1) - sum, zero_target);
  }

  if (p != Rational(1, 2)) {
    if (p >= Rational(1, 2)) {
      // value(s') = value(start)/(2p)
      Rational to_start = Rational(1) / (Rational(2) * p);
      add_prob_edge(nc, entry, to_start, start);
      Rational rest = Rational(1) - to_start;
      if (!rest.is_zero()) add_prob_edge(nc, entry, rest, zero_target);
    } else {
      // value(s') = (value(start) + 1 - 2p) / (2(1-p))
      Rational denom = Rational(2) * (Rational(1) - p);
      add_prob_edge(nc, entry, Rational(1) / denom, start);
      add_prob_edge(nc, entry, (Rational(1) - Rational(2) * p) / denom, terminal);
    }
  }

  // Step (iv): the two-box chain. Both boxes call this component; falling
  // into "0" costs one restart squared, reaching "1" exits.
  nc.boxes.push_back({b1, nc.name});
  nc.boxes.push_back({b2, nc.name});
  add_prob_edge(nc, port_id(b1, terminal), Rational(1), port_id(b2, entry));
  add_prob_edge(nc, port_id(b2, terminal), Rational(1), terminal);

  out.model.move_alphabet_1 = csg.move_alphabet_1;
  out.model.move_alphabet_2 = csg.move_alphabet_2;
  out.model.components.push_back(std::move(nc));
  out.designated = entry;

  ValidationReport check = validate(out.model, {.require_single_exit = true});
  if (!check.ok())
    throw std::logic_error("reduction produced an invalid model:\n" + check.to_string());
  return out;
}

}  // namespace rcsg
