#include "ecmin/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ecmin {

namespace {

struct Token {
  std::string text;
  int line;  // 1-based
  int col;   // 1-based
};

// Splits a line into whitespace-separated tokens, dropping '#' comments.
std::vector<Token> tokenize_line(const std::string& line, int line_no) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < line.size() && line[i] != '#' &&
           !std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
    }
    out.push_back({line.substr(start, i - start), line_no,
                   static_cast<int>(start) + 1});
  }
  return out;
}

std::vector<std::vector<Token>> tokenize(const std::string& text) {
  std::vector<std::vector<Token>> lines;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize_line(line, line_no);
    if (!tokens.empty()) lines.push_back(std::move(tokens));
  }
  return lines;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  auto head = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  };
  auto tail = [&](char c) {
    return head(c) || std::isdigit(static_cast<unsigned char>(c));
  };
  if (!head(s[0])) return false;
  for (size_t i = 1; i < s.size(); ++i) {
    if (!tail(s[i])) return false;
  }
  return true;
}

const Token& expect_name(const std::vector<Token>& toks, size_t idx,
                         const char* what) {
  if (idx >= toks.size()) {
    const Token& last = toks.back();
    throw SyntaxError(last.line, last.col + static_cast<int>(last.text.size()),
                      std::string("missing ") + what);
  }
  if (!valid_name(toks[idx].text)) {
    throw SyntaxError(toks[idx].line, toks[idx].col,
                      "invalid name '" + toks[idx].text + "'");
  }
  return toks[idx];
}

int parse_int_token(const Token& tok) {
  size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(tok.text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != tok.text.size()) {
    throw SyntaxError(tok.line, tok.col,
                      "expected integer, got '" + tok.text + "'");
  }
  return value;
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  struct GateDecl {
    std::string name;
    GateKind kind;
    std::vector<std::string> fanin;
    int line;
  };
  std::vector<std::string> input_names;
  std::vector<GateDecl> gate_decls;
  std::string output_name;
  bool have_output = false;
  std::unordered_set<std::string> seen;

  for (const auto& toks : tokenize(text)) {
    const Token& head = toks[0];
    if (head.text == "i") {
      const Token& name = expect_name(toks, 1, "input name");
      if (toks.size() > 2) {
        throw SyntaxError(toks[2].line, toks[2].col,
                          "unexpected token after input declaration");
      }
      if (!seen.insert(name.text).second) {
        throw SemanticError("duplicate name '" + name.text + "'");
      }
      input_names.push_back(name.text);
    } else if (head.text == "g") {
      const Token& name = expect_name(toks, 1, "gate name");
      if (toks.size() < 3) {
        throw SyntaxError(name.line, name.col + static_cast<int>(name.text.size()),
                          "missing gate kind");
      }
      const Token& kind_tok = toks[2];
      GateKind kind;
      if (kind_tok.text == "AND") {
        kind = GateKind::And;
      } else if (kind_tok.text == "OR") {
        kind = GateKind::Or;
      } else {
        throw SemanticError("gate '" + name.text + "': non-monotone kind '" +
                            kind_tok.text + "'");
      }
      if (toks.size() < 4) {
        throw SyntaxError(kind_tok.line,
                          kind_tok.col + static_cast<int>(kind_tok.text.size()),
                          "gate needs at least one fanin");
      }
      GateDecl decl{name.text, kind, {}, name.line};
      std::unordered_set<std::string> fanin_seen;
      for (size_t i = 3; i < toks.size(); ++i) {
        const Token& f = expect_name(toks, i, "fanin name");
        if (!fanin_seen.insert(f.text).second) {
          throw SemanticError("gate '" + name.text + "': duplicate fanin '" +
                              f.text + "'");
        }
        decl.fanin.push_back(f.text);
      }
      if (!seen.insert(name.text).second) {
        throw SemanticError("duplicate name '" + name.text + "'");
      }
      gate_decls.push_back(std::move(decl));
    } else if (head.text == "o") {
      const Token& name = expect_name(toks, 1, "output name");
      if (toks.size() > 2) {
        throw SyntaxError(toks[2].line, toks[2].col,
                          "unexpected token after output declaration");
      }
      if (have_output) {
        throw SemanticError("repeated output line");
      }
      have_output = true;
      output_name = name.text;
    } else {
      throw SyntaxError(head.line, head.col,
                        "unknown declaration '" + head.text + "'");
    }
  }

  if (!have_output) throw SemanticError("no output line");

  Circuit c;
  c.num_inputs = static_cast<NodeId>(input_names.size());
  std::unordered_map<std::string, NodeId> id_of;
  for (NodeId i = 0; i < c.num_inputs; ++i) {
    id_of[input_names[i]] = i;
    c.names.push_back(input_names[i]);
  }
  for (size_t gi = 0; gi < gate_decls.size(); ++gi) {
    id_of[gate_decls[gi].name] = c.num_inputs + static_cast<NodeId>(gi);
    c.names.push_back(gate_decls[gi].name);
  }
  for (const GateDecl& decl : gate_decls) {
    Circuit::Gate g;
    g.kind = decl.kind;
    for (const std::string& f : decl.fanin) {
      auto it = id_of.find(f);
      if (it == id_of.end()) {
        throw SemanticError("gate '" + decl.name + "': unknown reference '" +
                            f + "'");
      }
      g.fanin.push_back(it->second);
    }
    c.gates.push_back(std::move(g));
  }
  auto out_it = id_of.find(output_name);
  if (out_it == id_of.end()) {
    throw SemanticError("output references unknown name '" + output_name + "'");
  }
  if (out_it->second < c.num_inputs) {
    throw SemanticError("output '" + output_name + "' is an input, not a gate");
  }
  c.output = out_it->second;
  c.finalize();
  return c;
}

std::string serialize_circuit(const Circuit& circuit) {
  if (!circuit.finalized) {
    throw Error("serialize_circuit requires a finalized circuit");
  }
  std::ostringstream out;
  out << "# inputs=" << circuit.num_inputs << " gates=" << circuit.num_gates()
      << "\n";
  for (NodeId v = 0; v < circuit.num_inputs; ++v) {
    out << "i " << circuit.name(v) << "\n";
  }
  for (NodeId v : circuit.topo_order) {
    const Circuit::Gate& g = circuit.gate(v);
    out << "g " << circuit.name(v)
        << (g.kind == GateKind::And ? " AND" : " OR");
    for (NodeId u : g.fanin) out << " " << circuit.name(u);
    out << "\n";
  }
  out << "o " << circuit.name(circuit.output) << "\n";
  return out.str();
}

TreeDecomposition parse_td(const std::string& text, const Circuit& circuit) {
  TreeDecomposition td;
  bool have_header = false;
  int declared_bags = 0, declared_vertices = 0;
  std::map<int, std::vector<NodeId>> bags_by_id;
  std::vector<std::pair<int, int>> edges;

  for (const auto& toks : tokenize(text)) {
    const Token& head = toks[0];
    if (head.text == "c") continue;
    if (head.text == "s") {
      if (have_header) {
        throw SyntaxError(head.line, head.col, "repeated s line");
      }
      if (toks.size() != 5 || toks[1].text != "td") {
        throw SyntaxError(head.line, head.col, "malformed s line");
      }
      declared_bags = parse_int_token(toks[2]);
      parse_int_token(toks[3]);  // max bag size; informational
      declared_vertices = parse_int_token(toks[4]);
      have_header = true;
    } else if (head.text == "b") {
      if (!have_header) {
        throw SyntaxError(head.line, head.col, "b line before s line");
      }
      if (toks.size() < 2) {
        throw SyntaxError(head.line, head.col, "bag line without id");
      }
      int bag_id = parse_int_token(toks[1]);
      if (bag_id < 1 || bag_id > declared_bags) {
        throw SemanticError("bag id " + std::to_string(bag_id) +
                            " out of range");
      }
      if (bags_by_id.count(bag_id)) {
        throw SemanticError("bag " + std::to_string(bag_id) +
                            " declared twice");
      }
      std::vector<NodeId> bag;
      for (size_t i = 2; i < toks.size(); ++i) {
        int v = parse_int_token(toks[i]);
        if (v < 1 || v > declared_vertices) {
          throw SemanticError("vertex " + std::to_string(v) +
                              " out of range in bag " + std::to_string(bag_id));
        }
        bag.push_back(static_cast<NodeId>(v - 1));
      }
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      bags_by_id[bag_id] = std::move(bag);
    } else {
      if (!have_header) {
        throw SyntaxError(head.line, head.col, "edge line before s line");
      }
      if (toks.size() != 2) {
        throw SyntaxError(head.line, head.col, "malformed tree edge line");
      }
      int a = parse_int_token(toks[0]);
      int b = parse_int_token(toks[1]);
      if (a < 1 || a > declared_bags || b < 1 || b > declared_bags) {
        throw SemanticError("tree edge endpoint out of range");
      }
      edges.emplace_back(a - 1, b - 1);
    }
  }
  if (!have_header) throw SemanticError("missing s line");
  if (declared_vertices != circuit.num_nodes()) {
    throw SemanticError("decomposition declares " +
                        std::to_string(declared_vertices) +
                        " vertices, circuit has " +
                        std::to_string(circuit.num_nodes()));
  }
  td.bags.assign(declared_bags, {});
  for (auto& [bag_id, bag] : bags_by_id) td.bags[bag_id - 1] = std::move(bag);
  td.tree_edges = std::move(edges);
  check_decomposition(td, circuit);
  return td;
}

EmbeddedPlanarGraph parse_pg(const std::string& text) {
  EmbeddedPlanarGraph g;
  std::unordered_map<std::string, int> index_of;
  std::vector<std::pair<std::string, std::vector<std::string>>> decls;
  std::string outer_u, outer_v;
  bool have_outer = false;

  for (const auto& toks : tokenize(text)) {
    const Token& head = toks[0];
    if (head.text == "v") {
      const Token& name = expect_name(toks, 1, "vertex name");
      if (toks.size() < 3 || toks[2].text != ":") {
        throw SyntaxError(name.line,
                          name.col + static_cast<int>(name.text.size()),
                          "expected ':' after vertex name");
      }
      std::vector<std::string> nbrs;
      for (size_t i = 3; i < toks.size(); ++i) {
        nbrs.push_back(expect_name(toks, i, "neighbor name").text);
      }
      if (index_of.count(name.text)) {
        throw SemanticError("vertex '" + name.text + "' declared twice");
      }
      index_of[name.text] = static_cast<int>(decls.size());
      decls.emplace_back(name.text, std::move(nbrs));
    } else if (head.text == "outer") {
      if (toks.size() != 3) {
        throw SyntaxError(head.line, head.col, "outer line needs two names");
      }
      if (have_outer) throw SemanticError("repeated outer line");
      outer_u = toks[1].text;
      outer_v = toks[2].text;
      have_outer = true;
    } else {
      throw SyntaxError(head.line, head.col,
                        "unknown declaration '" + head.text + "'");
    }
  }
  if (!have_outer) throw SemanticError("missing outer line");

  for (auto& [name, nbrs] : decls) {
    g.names.push_back(name);
    std::vector<int> rot;
    for (const std::string& nb : nbrs) {
      auto it = index_of.find(nb);
      if (it == index_of.end()) {
        throw SemanticError("vertex '" + name + "': unknown neighbor '" + nb +
                            "'");
      }
      rot.push_back(it->second);
    }
    g.rotation.push_back(std::move(rot));
  }
  auto u_it = index_of.find(outer_u);
  auto v_it = index_of.find(outer_v);
  if (u_it == index_of.end() || v_it == index_of.end()) {
    throw SemanticError("outer dart references unknown vertex");
  }
  g.outer_tail = u_it->second;
  g.outer_head = v_it->second;
  return g;
}

ColoredGraph parse_col(const std::string& text) {
  ColoredGraph q;
  bool have_header = false;
  int declared_edges = 0;
  std::set<std::pair<int, int>> edge_set;
  std::vector<int> colors;

  for (const auto& toks : tokenize(text)) {
    const Token& head = toks[0];
    if (head.text == "c") continue;
    if (head.text == "p") {
      if (have_header) throw SyntaxError(head.line, head.col, "repeated p line");
      if (toks.size() != 4 || toks[1].text != "col") {
        throw SyntaxError(head.line, head.col, "malformed p line");
      }
      q.n = parse_int_token(toks[2]);
      declared_edges = parse_int_token(toks[3]);
      if (q.n < 1) throw SemanticError("vertex count must be positive");
      colors.assign(q.n, 0);
      have_header = true;
    } else if (head.text == "e") {
      if (!have_header) {
        throw SyntaxError(head.line, head.col, "e line before p line");
      }
      if (toks.size() != 3) {
        throw SyntaxError(head.line, head.col, "malformed e line");
      }
      int u = parse_int_token(toks[1]);
      int v = parse_int_token(toks[2]);
      if (u < 1 || u > q.n || v < 1 || v > q.n) {
        throw SemanticError("edge endpoint out of range");
      }
      if (u == v) throw SemanticError("self-loop on vertex " + std::to_string(u));
      if (u > v) std::swap(u, v);
      if (!edge_set.insert({u - 1, v - 1}).second) {
        throw SemanticError("duplicate edge " + std::to_string(u) + " " +
                            std::to_string(v));
      }
    } else if (head.text == "n") {
      if (!have_header) {
        throw SyntaxError(head.line, head.col, "n line before p line");
      }
      if (toks.size() != 3) {
        throw SyntaxError(head.line, head.col, "malformed n line");
      }
      int u = parse_int_token(toks[1]);
      int col = parse_int_token(toks[2]);
      if (u < 1 || u > q.n) throw SemanticError("vertex out of range in n line");
      if (col < 1) throw SemanticError("colors must be positive");
      if (colors[u - 1] != 0) {
        throw SemanticError("vertex " + std::to_string(u) + " colored twice");
      }
      colors[u - 1] = col;
    } else {
      throw SyntaxError(head.line, head.col,
                        "unknown declaration '" + head.text + "'");
    }
  }
  if (!have_header) throw SemanticError("missing p line");
  if (static_cast<int>(edge_set.size()) != declared_edges) {
    throw SemanticError("p line declares " + std::to_string(declared_edges) +
                        " edges, found " + std::to_string(edge_set.size()));
  }
  for (int v = 0; v < q.n; ++v) {
    if (colors[v] == 0) {
      throw SemanticError("vertex " + std::to_string(v + 1) + " has no color");
    }
    q.num_colors = std::max(q.num_colors, colors[v]);
  }
  q.color = std::move(colors);
  q.edges.assign(edge_set.begin(), edge_set.end());
  for (int v = 0; v < q.n; ++v) q.names.push_back(std::to_string(v + 1));
  return q;
}

std::string export_dot(const Circuit& circuit,
                       const std::optional<ActivationSet>& highlight) {
  if (highlight &&
      highlight->active.size() != static_cast<size_t>(circuit.num_nodes())) {
    throw Error("highlight size does not match circuit");
  }
  std::ostringstream out;
  out << "digraph circuit {\n  rankdir=BT;\n";
  for (NodeId v = 0; v < circuit.num_nodes(); ++v) {
    out << "  \"" << circuit.name(v) << "\" [";
    if (circuit.is_input(v)) {
      out << "shape=box";
    } else if (circuit.kind(v) == GateKind::And) {
      out << "shape=house label=\"" << circuit.name(v) << "\\nAND\"";
    } else {
      out << "shape=ellipse label=\"" << circuit.name(v) << "\\nOR\"";
    }
    if (v == circuit.output) out << " peripheries=2";
    if (highlight && highlight->active[v]) {
      out << " style=filled fillcolor=gold";
    }
    out << "];\n";
  }
  for (auto [u, v] : circuit.edges()) {
    out << "  \"" << circuit.name(u) << "\" -> \"" << circuit.name(v)
        << "\";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ecmin
