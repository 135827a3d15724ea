#include "ecmin/planar.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ecmin {

int EmbeddedPlanarGraph::num_edges() const {
  size_t darts = 0;
  for (const auto& rot : rotation) darts += rot.size();
  return static_cast<int>(darts / 2);
}

std::vector<std::pair<int, int>> EmbeddedPlanarGraph::edge_list() const {
  std::set<std::pair<int, int>> edges;
  for (int v = 0; v < num_vertices(); ++v) {
    for (int u : rotation[v]) {
      edges.insert({std::min(u, v), std::max(u, v)});
    }
  }
  return {edges.begin(), edges.end()};
}

FaceStructure trace_faces(const EmbeddedPlanarGraph& g) {
  const int n = g.num_vertices();
  if (n == 0) throw NotAnEmbedding("graph has no vertices");
  // Rotation sanity: no self-loops, no repeats, symmetric membership.
  for (int v = 0; v < n; ++v) {
    std::set<int> seen;
    for (int u : g.rotation[v]) {
      if (u < 0 || u >= n) throw NotAnEmbedding("neighbor out of range");
      if (u == v) throw NotAnEmbedding("self-loop at " + g.names[v]);
      if (!seen.insert(u).second) {
        throw NotAnEmbedding("repeated neighbor " + g.names[u] + " at " +
                             g.names[v]);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    for (int u : g.rotation[v]) {
      if (std::find(g.rotation[u].begin(), g.rotation[u].end(), v) ==
          g.rotation[u].end()) {
        throw NotAnEmbedding("edge " + g.names[v] + "-" + g.names[u] +
                             " lacks its reverse direction");
      }
    }
  }
  if (g.outer_tail < 0 || g.outer_tail >= n || g.outer_head < 0 ||
      g.outer_head >= n) {
    throw NotAnEmbedding("outer dart out of range");
  }
  if (std::find(g.rotation[g.outer_tail].begin(),
                g.rotation[g.outer_tail].end(),
                g.outer_head) == g.rotation[g.outer_tail].end()) {
    throw NotAnEmbedding("outer dart is not an edge");
  }

  auto edges = g.edge_list();
  std::map<std::pair<int, int>, int> edge_id;
  for (size_t i = 0; i < edges.size(); ++i) {
    edge_id[edges[i]] = static_cast<int>(i);
  }
  // succ[{u,v}]: position of u in rotation[v], for O(1) next-dart steps.
  std::map<std::pair<int, int>, int> pos_in_rot;
  for (int v = 0; v < n; ++v) {
    for (size_t i = 0; i < g.rotation[v].size(); ++i) {
      pos_in_rot[{g.rotation[v][i], v}] = static_cast<int>(i);
    }
  }

  FaceStructure fs;
  std::map<std::pair<int, int>, int> face_of_dart;
  for (int v = 0; v < n; ++v) {
    for (int u : g.rotation[v]) {
      const std::pair<int, int> start{v, u};
      if (face_of_dart.count(start)) continue;
      const int face = fs.num_faces();
      fs.faces.emplace_back();
      std::pair<int, int> dart = start;
      do {
        face_of_dart[dart] = face;
        fs.faces[face].push_back(dart);
        // Next dart of the face: enter `head`, leave by the clockwise
        // successor of `tail` in rotation(head).
        const auto [tail, head] = dart;
        const auto& rot = g.rotation[head];
        const int i = pos_in_rot.at({tail, head});
        dart = {head, rot[(i + 1) % rot.size()]};
      } while (dart != start);
    }
  }
  // Euler's formula doubles as the planarity and connectivity certificate.
  const int E = static_cast<int>(edges.size());
  if (n - E + fs.num_faces() != 2) {
    throw NotAnEmbedding(
        "rotation system is not a connected plane embedding: V-E+F = " +
        std::to_string(n - E + fs.num_faces()));
  }
  fs.external_face = face_of_dart.at({g.outer_tail, g.outer_head});

  fs.boundary_edges.assign(fs.num_faces(), {});
  fs.edge_faces.assign(E, {});
  for (int f = 0; f < fs.num_faces(); ++f) {
    std::set<int> ids;
    for (auto [u, v] : fs.faces[f]) {
      ids.insert(edge_id.at({std::min(u, v), std::max(u, v)}));
    }
    fs.boundary_edges[f].assign(ids.begin(), ids.end());
    for (int id : ids) fs.edge_faces[id].push_back(f);
  }
  fs.dual.assign(fs.num_faces(), {});
  for (int id = 0; id < E; ++id) {
    const auto& fcs = fs.edge_faces[id];
    if (fcs.size() == 2 && fcs[0] != fcs[1]) {
      fs.dual[fcs[0]].push_back({fcs[1], id});
      fs.dual[fcs[1]].push_back({fcs[0], id});
    }
  }
  for (auto& row : fs.dual) std::sort(row.begin(), row.end(),
                                      [](const auto& a, const auto& b) {
                                        return a.second < b.second;
                                      });
  return fs;
}

EmbeddedPlanarGraph subdivide_twice(const EmbeddedPlanarGraph& g) {
  trace_faces(g);  // reject invalid embeddings before rewriting
  EmbeddedPlanarGraph h;
  h.names = g.names;
  h.rotation.assign(g.num_vertices(), {});

  auto edges = g.edge_list();
  // Edge {a,b} becomes a - x - y - b; x and y inherit the crossing order.
  std::map<std::pair<int, int>, std::pair<int, int>> subs;  // edge -> (x, y)
  for (auto [a, b] : edges) {
    const int x = static_cast<int>(h.names.size());
    h.names.push_back(g.names[a] + "_" + g.names[b] + "_x");
    const int y = x + 1;
    h.names.push_back(g.names[a] + "_" + g.names[b] + "_y");
    subs[{a, b}] = {x, y};
    h.rotation.push_back({a, y});  // x
    h.rotation.push_back({x, b});  // y
  }
  auto stub_toward = [&](int v, int nbr) {
    auto key = std::minmax(v, nbr);
    auto [x, y] = subs.at({key.first, key.second});
    return v == key.first ? x : y;
  };
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (int u : g.rotation[v]) {
      h.rotation[v].push_back(stub_toward(v, u));
    }
  }
  h.outer_tail = g.outer_tail;
  h.outer_head = stub_toward(g.outer_tail, g.outer_head);
  trace_faces(h);  // the rewrite must preserve embeddability
  return h;
}

SimpleGraph to_simple_graph(const EmbeddedPlanarGraph& g) {
  SimpleGraph s;
  s.n = g.num_vertices();
  s.edges = g.edge_list();
  return s;
}

namespace {

bool vc_search(const std::vector<std::pair<int, int>>& edges,
               std::vector<uint8_t>& covered_by, int budget) {
  // Find an uncovered edge; branch on covering either endpoint.
  const std::pair<int, int>* pick = nullptr;
  for (const auto& e : edges) {
    if (!covered_by[e.first] && !covered_by[e.second]) {
      pick = &e;
      break;
    }
  }
  if (!pick) return true;
  if (budget == 0) return false;
  for (int v : {pick->first, pick->second}) {
    covered_by[v] = 1;
    if (vc_search(edges, covered_by, budget - 1)) return true;
    covered_by[v] = 0;
  }
  return false;
}

}  // namespace

bool vc_brute(const SimpleGraph& g, int c) {
  if (g.n > 20) {
    throw TooLarge("vertex cover oracle limited to 20 vertices, got " +
                   std::to_string(g.n));
  }
  if (c < 0) return false;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.n || v >= g.n || u == v) {
      throw Error("malformed graph edge");
    }
  }
  std::vector<uint8_t> covered(g.n, 0);
  return vc_search(g.edges, covered, std::min(c, g.n));
}

}  // namespace ecmin
