#include "ecmin/generators.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace ecmin {

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string canonical_form(const EmbeddedPlanarGraph& g) {
  std::ostringstream out;
  out << "pg";
  for (int v = 0; v < g.num_vertices(); ++v) {
    out << "|" << g.names[v] << ":";
    for (int u : g.rotation[v]) out << " " << g.names[u];
  }
  out << "|outer " << g.names[g.outer_tail] << " " << g.names[g.outer_head];
  return out.str();
}

std::string canonical_form(const ColoredGraph& q) {
  std::ostringstream out;
  out << "col " << q.n << " " << q.num_colors;
  for (int v = 0; v < q.n; ++v) out << "|n " << v + 1 << " " << q.color[v];
  for (auto [u, v] : q.edges) out << "|e " << u + 1 << " " << v + 1;
  return out.str();
}

namespace {

// Incremental circuit assembly with name-keyed gates; ids are dense with
// inputs first, so gates are collected and offset at the end.
struct Assembler {
  std::vector<std::string> input_names;
  std::vector<std::string> gate_names;
  std::vector<GateKind> kinds;
  std::vector<std::vector<int>> fanin;  // encoded: input i -> i,
                                        // gate j -> ~j (offset applied late)
  std::map<std::string, int> gate_index;

  int add_input(const std::string& name) {
    input_names.push_back(name);
    return static_cast<int>(input_names.size()) - 1;
  }
  int add_gate(const std::string& name, GateKind kind) {
    gate_names.push_back(name);
    kinds.push_back(kind);
    fanin.emplace_back();
    gate_index[name] = static_cast<int>(gate_names.size()) - 1;
    return static_cast<int>(gate_names.size()) - 1;
  }
  void wire_input(int input, int gate) { fanin[gate].push_back(input); }
  void wire_gate(int from_gate, int to_gate) {
    fanin[to_gate].push_back(~from_gate);
  }

  Circuit build(int output_gate) {
    Circuit c;
    c.num_inputs = static_cast<NodeId>(input_names.size());
    c.names = input_names;
    for (size_t j = 0; j < gate_names.size(); ++j) {
      Circuit::Gate g;
      g.kind = kinds[j];
      for (int enc : fanin[j]) {
        g.fanin.push_back(enc >= 0 ? enc : c.num_inputs + ~enc);
      }
      c.gates.push_back(std::move(g));
      c.names.push_back(gate_names[j]);
    }
    c.output = c.num_inputs + output_gate;
    validate(c, ValidationMode::Strict);
    return c;
  }
};

}  // namespace

GeneratedInstance gen_from_planar_vc(const EmbeddedPlanarGraph& h, int cover) {
  if (cover < 0) throw Error("cover size must be non-negative");
  // Full well-formedness check before digesting; a valid embedding carries an
  // outer dart, so it has at least one edge.
  trace_faces(h);
  const std::string digest_source = canonical_form(h);

  const EmbeddedPlanarGraph g = subdivide_twice(h);
  const FaceStructure fs = trace_faces(g);
  const auto edges = g.edge_list();
  const int E = static_cast<int>(edges.size());
  const int c = cover + h.num_edges();

  Assembler as;
  // One private input feeding one AND gate per vertex of g.
  std::vector<int> vertex_gate(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int in = as.add_input("in_" + g.names[v]);
    vertex_gate[v] = as.add_gate("v_" + g.names[v], GateKind::And);
    as.wire_input(in, vertex_gate[v]);
  }
  // One OR gate per edge, fed by both endpoints.
  std::vector<int> cover_gate(E);
  for (int i = 0; i < E; ++i) {
    cover_gate[i] = as.add_gate("cover_e" + std::to_string(i), GateKind::Or);
    as.wire_gate(vertex_gate[edges[i].first], cover_gate[i]);
    as.wire_gate(vertex_gate[edges[i].second], cover_gate[i]);
  }
  const int out = as.add_gate("out", GateKind::And);

  // External-face covers feed the output directly.
  std::vector<uint8_t> connected(E, 0);
  for (int e : fs.boundary_edges[fs.external_face]) {
    as.wire_gate(cover_gate[e], out);
    connected[e] = 1;
  }

  // Remaining faces, in breadth-first order over the dual from the external
  // face: each face gets an AND gadget feeding the two subdivision-vertex
  // endpoints of one shared boundary edge, and absorbs its still-unwired
  // covers.
  std::vector<uint8_t> visited(fs.num_faces(), 0);
  std::queue<int> q;
  visited[fs.external_face] = 1;
  q.push(fs.external_face);
  std::vector<std::pair<int, int>> tree_edges;  // (parent face, child face)
  while (!q.empty()) {
    int f = q.front();
    q.pop();
    for (auto [nbr, via] : fs.dual[f]) {
      (void)via;
      if (visited[nbr]) continue;
      visited[nbr] = 1;
      tree_edges.push_back({f, nbr});
      q.push(nbr);
    }
  }
  for (int f = 0; f < fs.num_faces(); ++f) {
    if (!visited[f]) {
      throw NotAnEmbedding("dual graph is disconnected");
    }
  }

  const int original_vertices =
      static_cast<int>(h.num_vertices());  // ids below this are from h
  for (auto [parent, child] : tree_edges) {
    // Pick the lowest-id boundary edge between two subdivision vertices.
    int chosen = -1;
    for (auto [nbr, via] : fs.dual[child]) {
      if (nbr != parent) continue;
      if (edges[via].first >= original_vertices &&
          edges[via].second >= original_vertices) {
        chosen = via;
        break;
      }
    }
    if (chosen < 0) {
      throw NotAnEmbedding(
          "no subdivision-only edge between adjacent faces; the input was "
          "not a simple embedded graph");
    }
    const int face_gate =
        as.add_gate("face_f" + std::to_string(child), GateKind::And);
    as.wire_gate(face_gate, vertex_gate[edges[chosen].first]);
    as.wire_gate(face_gate, vertex_gate[edges[chosen].second]);
    for (int e : fs.boundary_edges[child]) {
      if (!connected[e]) {
        as.wire_gate(cover_gate[e], face_gate);
        connected[e] = 1;
      }
    }
    if (as.fanin[face_gate].empty()) {
      const int in = as.add_input("in_face_f" + std::to_string(child));
      as.wire_input(in, face_gate);
    }
  }

  GeneratedInstance inst;
  inst.circuit = as.build(out);
  inst.k = c + E + fs.num_faces();
  inst.source_digest = fnv1a64(digest_source);
  inst.parameter = cover;
  return inst;
}

namespace {

void check_precoloring(const ColoredGraph& q) {
  if (q.num_colors < 2) {
    throw PrecolorViolation("need at least two color classes");
  }
  if (static_cast<int>(q.color.size()) != q.n) {
    throw PrecolorViolation("color array size mismatch");
  }
  std::vector<int> class_size(q.num_colors + 1, 0);
  for (int v = 0; v < q.n; ++v) {
    if (q.color[v] < 1 || q.color[v] > q.num_colors) {
      throw PrecolorViolation("vertex " + std::to_string(v + 1) +
                              " has out-of-range color");
    }
    ++class_size[q.color[v]];
  }
  for (int i = 1; i <= q.num_colors; ++i) {
    if (class_size[i] == 0) {
      throw PrecolorViolation("color class " + std::to_string(i) +
                              " is empty");
    }
  }
  std::vector<std::vector<uint8_t>> seen(
      q.n, std::vector<uint8_t>(q.num_colors + 1, 0));
  for (auto [u, v] : q.edges) {
    if (q.color[u] == q.color[v]) {
      throw PrecolorViolation("edge inside color class between vertices " +
                              std::to_string(u + 1) + " and " +
                              std::to_string(v + 1));
    }
    seen[u][q.color[v]] = 1;
    seen[v][q.color[u]] = 1;
  }
  for (int v = 0; v < q.n; ++v) {
    for (int j = 1; j <= q.num_colors; ++j) {
      if (j != q.color[v] && !seen[v][j]) {
        throw PrecolorViolation("vertex " + std::to_string(v + 1) +
                                " has no neighbor in color class " +
                                std::to_string(j));
      }
    }
  }
}

}  // namespace

GeneratedInstance gen_from_mcq(const ColoredGraph& q) {
  check_precoloring(q);
  const int c = q.num_colors;

  Assembler as;
  auto vname = [&](int v) { return "u" + std::to_string(v + 1); };

  // Four-layer chain per vertex: input, two OR relays, one AND collector.
  std::vector<int> l2(q.n), l4(q.n);
  for (int v = 0; v < q.n; ++v) {
    const int in = as.add_input(vname(v) + "_l1");
    l2[v] = as.add_gate(vname(v) + "_l2", GateKind::Or);
    as.wire_input(in, l2[v]);
    const int l3 = as.add_gate(vname(v) + "_l3", GateKind::Or);
    as.wire_gate(l2[v], l3);
    l4[v] = as.add_gate(vname(v) + "_l4", GateKind::And);
    as.wire_gate(l3, l4[v]);
  }
  // Per color class a collector OR feeding the output.
  const int out = as.add_gate("out", GateKind::And);
  std::vector<int> w(c + 1, -1);
  for (int i = 1; i <= c; ++i) {
    w[i] = as.add_gate("w" + std::to_string(i), GateKind::Or);
    as.wire_gate(w[i], out);
  }
  for (int v = 0; v < q.n; ++v) {
    as.wire_gate(l4[v], w[q.color[v]]);
  }
  // Adjacency gadgets: vertex v needs, for every other color j, one firing
  // AND over the pair {v, u} with a neighbor u of color j.
  std::vector<std::vector<int>> neighbors(q.n);
  for (auto [u, v] : q.edges) {
    neighbors[u].push_back(v);
    neighbors[v].push_back(u);
  }
  for (auto& list : neighbors) std::sort(list.begin(), list.end());
  for (int v = 0; v < q.n; ++v) {
    std::vector<int> a_gate(c + 1, -1);
    for (int j = 1; j <= c; ++j) {
      if (j == q.color[v]) continue;
      a_gate[j] = as.add_gate("a_" + vname(v) + "_c" + std::to_string(j),
                              GateKind::Or);
      as.wire_gate(a_gate[j], l4[v]);
    }
    for (int u : neighbors[v]) {
      const int b = as.add_gate("b_" + vname(v) + "_" + vname(u),
                                GateKind::And);
      as.wire_gate(l2[u], b);
      as.wire_gate(l2[v], b);
      as.wire_gate(b, a_gate[q.color[u]]);
    }
  }

  GeneratedInstance inst;
  inst.circuit = as.build(out);
  inst.k = 2 * c * c + 2 * c + 1;
  inst.source_digest = fnv1a64(canonical_form(q));
  inst.parameter = c;
  return inst;
}

bool mcq_brute(const ColoredGraph& q) {
  if (q.n > 15) {
    throw TooLarge("multicolored clique oracle limited to 15 vertices, got " +
                   std::to_string(q.n));
  }
  std::vector<std::vector<uint8_t>> adj(q.n, std::vector<uint8_t>(q.n, 0));
  for (auto [u, v] : q.edges) adj[u][v] = adj[v][u] = 1;
  std::vector<std::vector<int>> classes(q.num_colors + 1);
  for (int v = 0; v < q.n; ++v) {
    if (q.color[v] < 1 || q.color[v] > q.num_colors) {
      throw PrecolorViolation("vertex with out-of-range color");
    }
    classes[q.color[v]].push_back(v);
  }
  for (int i = 1; i <= q.num_colors; ++i) {
    if (classes[i].empty()) return false;
  }
  std::vector<int> picked;
  std::function<bool(int)> rec = [&](int color) -> bool {
    if (color > q.num_colors) return true;
    for (int v : classes[color]) {
      bool ok = true;
      for (int u : picked) {
        if (!adj[u][v]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      picked.push_back(v);
      if (rec(color + 1)) return true;
      picked.pop_back();
    }
    return false;
  };
  return rec(1);
}

}  // namespace ecmin
