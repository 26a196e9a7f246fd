#include "rcsg/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace rcsg {

namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

// Whitespace-separated tokens; '#' starts a comment. Port references like
// "(b1,s)" must be written without internal spaces and come out as one token.
std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

Rational parse_rational(const Token& tok, int line) {
  for (char ch : tok.text) {
    if ((ch < '0' || ch > '9') && ch != '/' && ch != '-' && ch != '+')
      throw ParseError(line, tok.column, "malformed rational '" + tok.text + "'");
  }
  try {
    return Rational::from_string(tok.text);
  } catch (const std::exception&) {
    throw ParseError(line, tok.column, "malformed rational '" + tok.text + "'");
  }
}

struct LineRef {
  int line;
  int column;
};

}  // namespace

Rcsg parse_model(const std::string& text) {
  Rcsg model;
  Component* current = nullptr;
  // Positions for the deferred reference checks.
  std::vector<std::vector<LineRef>> transition_refs;  // per component
  std::vector<std::vector<LineRef>> box_refs;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    auto need = [&](std::size_t n, const std::string& usage) {
      if (toks.size() != n)
        throw ParseError(lineno, toks[0].column, "expected '" + usage + "'");
    };

    if (kw == "moves1" || kw == "moves2") {
      if (toks.size() < 2)
        throw ParseError(lineno, toks[0].column, "expected '" + kw + " <move>...'");
      auto& alphabet = kw == "moves1" ? model.move_alphabet_1 : model.move_alphabet_2;
      for (std::size_t i = 1; i < toks.size(); ++i)
        if (std::find(alphabet.begin(), alphabet.end(), toks[i].text) == alphabet.end())
          alphabet.push_back(toks[i].text);
    } else if (kw == "substochastic") {
      need(1, "substochastic");
      model.substochastic = true;
    } else if (kw == "component") {
      need(2, "component <name>");
      if (current != nullptr)
        throw ParseError(lineno, toks[0].column, "missing 'end' before new component");
      model.components.emplace_back();
      model.components.back().name = toks[1].text;
      current = &model.components.back();
      transition_refs.emplace_back();
      box_refs.emplace_back();
    } else if (kw == "end") {
      need(1, "end");
      if (current == nullptr)
        throw ParseError(lineno, toks[0].column, "'end' outside component");
      current = nullptr;
    } else if (kw == "entry") {
      need(2, "entry <node>");
      if (current == nullptr)
        throw ParseError(lineno, toks[0].column, "'entry' outside component");
      current->entries.push_back(toks[1].text);
    } else if (kw == "node") {
      need(3, "node <id> prob|play|exit");
      if (current == nullptr)
        throw ParseError(lineno, toks[0].column, "'node' outside component");
      VertexKind kind;
      if (toks[2].text == "prob")
        kind = VertexKind::Probabilistic;
      else if (toks[2].text == "play")
        kind = VertexKind::Play;
      else if (toks[2].text == "exit")
        kind = VertexKind::Exit;
      else
        throw ParseError(lineno, toks[2].column,
                         "unknown node kind '" + toks[2].text + "'");
      current->nodes.push_back(make_node(toks[1].text, kind));
    } else if (kw == "box") {
      need(3, "box <id> <component>");
      if (current == nullptr)
        throw ParseError(lineno, toks[0].column, "'box' outside component");
      current->boxes.push_back({toks[1].text, toks[2].text});
      box_refs.back().push_back({lineno, toks[2].column});
    } else if (kw == "edge") {
      need(4, "edge <src> <p/q> <dst>");
      if (current == nullptr)
        throw ParseError(lineno, toks[0].column, "'edge' outside component");
      current->transitions.push_back(
          {toks[1].text, parse_rational(toks[2], lineno), toks[3].text});
      transition_refs.back().push_back({lineno, toks[1].column});
    } else if (kw == "play") {
      need(5, "play <src> <move1> <move2> <dst>");
      if (current == nullptr)
        throw ParseError(lineno, toks[0].column, "'play' outside component");
      current->transitions.push_back(
          {toks[1].text, MovePair{toks[2].text, toks[3].text}, toks[4].text});
      transition_refs.back().push_back({lineno, toks[1].column});
      // Legal moves accumulate in first-use order.
      for (auto& n : current->nodes) {
        if (n.id != toks[1].text) continue;
        if (std::find(n.moves1.begin(), n.moves1.end(), toks[2].text) == n.moves1.end())
          n.moves1.push_back(toks[2].text);
        if (std::find(n.moves2.begin(), n.moves2.end(), toks[3].text) == n.moves2.end())
          n.moves2.push_back(toks[3].text);
        break;
      }
    } else {
      throw ParseError(lineno, toks[0].column, "unknown directive '" + kw + "'");
    }
  }
  if (current != nullptr)
    throw ParseError(lineno, 1, "unterminated component '" + current->name + "'");
  if (model.components.empty()) throw ParseError(lineno, 1, "no components");

  // Reference pass: box targets, then transition endpoints (which may name
  // ports of boxes whose target component appears later in the file).
  std::map<std::string, const Component*> comps;
  for (const auto& c : model.components) comps[c.name] = &c;
  for (std::size_t ci = 0; ci < model.components.size(); ++ci) {
    const Component& c = model.components[ci];
    for (std::size_t bi = 0; bi < c.boxes.size(); ++bi) {
      if (!comps.count(c.boxes[bi].target_component)) {
        auto ref = box_refs[ci][bi];
        throw ParseError(ref.line, ref.column,
                         "box '" + c.boxes[bi].id + "' targets undeclared component '" +
                             c.boxes[bi].target_component + "'");
      }
    }
  }
  for (std::size_t ci = 0; ci < model.components.size(); ++ci) {
    const Component& c = model.components[ci];
    std::set<std::string> known;
    for (const auto& n : c.nodes) known.insert(n.id);
    for (const auto& b : c.boxes) {
      const Component& callee = *comps[b.target_component];
      for (const auto& en : callee.entries) known.insert(port_id(b.id, en));
      for (const auto& ex : callee.exits()) known.insert(port_id(b.id, ex));
    }
    for (std::size_t ti = 0; ti < c.transitions.size(); ++ti) {
      const Transition& t = c.transitions[ti];
      auto ref = transition_refs[ci][ti];
      if (!known.count(t.source))
        throw ParseError(ref.line, ref.column,
                         "unknown vertex '" + t.source + "' in component '" + c.name + "'");
      if (!known.count(t.target))
        throw ParseError(ref.line, ref.column,
                         "unknown vertex '" + t.target + "' in component '" + c.name + "'");
    }
  }

  // Moves used by play transitions extend the global alphabets.
  for (const auto& c : model.components)
    for (const auto& n : c.nodes) {
      for (const auto& m : n.moves1)
        if (std::find(model.move_alphabet_1.begin(), model.move_alphabet_1.end(), m) ==
            model.move_alphabet_1.end())
          model.move_alphabet_1.push_back(m);
      for (const auto& m : n.moves2)
        if (std::find(model.move_alphabet_2.begin(), model.move_alphabet_2.end(), m) ==
            model.move_alphabet_2.end())
          model.move_alphabet_2.push_back(m);
    }
  return model;
}

std::string serialize_model(const Rcsg& model) {
  std::ostringstream out;
  auto emit_moves = [&](const char* kw, const std::vector<std::string>& moves) {
    if (moves.empty()) return;
    out << kw;
    for (const auto& m : moves) out << " " << m;
    out << "\n";
  };
  emit_moves("moves1", model.move_alphabet_1);
  emit_moves("moves2", model.move_alphabet_2);
  if (model.substochastic) out << "substochastic\n";

  for (const auto& c : model.components) {
    out << "\ncomponent " << c.name << "\n";
    for (const auto& en : c.entries) out << "  entry " << en << "\n";
    for (const auto& n : c.nodes) {
      out << "  node " << n.id << " ";
      switch (n.kind) {
        case VertexKind::Probabilistic:
          out << "prob";
          break;
        case VertexKind::Play:
          out << "play";
          break;
        case VertexKind::Exit:
          out << "exit";
          break;
        default:
          out << "prob";  // ports are never declared
          break;
      }
      out << "\n";
    }
    for (const auto& b : c.boxes)
      out << "  box " << b.id << " " << b.target_component << "\n";
    for (const auto& t : c.transitions) {
      if (t.is_probabilistic()) {
        out << "  edge " << t.source << " " << t.probability().to_string() << " "
            << t.target << "\n";
      } else {
        out << "  play " << t.source << " " << t.moves().move1 << " "
            << t.moves().move2 << " " << t.target << "\n";
      }
    }
    out << "end\n";
  }
  return out.str();
}

Rcsg load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

void save_model_file(const Rcsg& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file '" + path + "'");
  out << serialize_model(model);
}

}  // namespace rcsg
