#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "ecmin/circuit.hpp"
#include "ecmin/generators.hpp"
#include "ecmin/io.hpp"

namespace testsupport {

struct GateSpec {
  ecmin::GateKind kind;
  std::vector<ecmin::NodeId> fanin;
};

// Programmatic circuit with auto names x1.., g1..; output defaults to the
// last gate.  check=false skips validation for invalid-input tests.
inline ecmin::Circuit build_circuit(int num_inputs, std::vector<GateSpec> gates,
                                    int output_gate = -1, bool check = true) {
  ecmin::Circuit c;
  c.num_inputs = num_inputs;
  for (int i = 0; i < num_inputs; ++i)
    c.names.push_back("x" + std::to_string(i + 1));
  for (size_t j = 0; j < gates.size(); ++j) {
    c.gates.push_back({gates[j].kind, gates[j].fanin});
    c.names.push_back("g" + std::to_string(j + 1));
  }
  c.output = num_inputs +
             (output_gate < 0 ? static_cast<int>(gates.size()) - 1 : output_gate);
  if (check) ecmin::validate(c);
  return c;
}

inline std::string data_path(const std::string& name) {
  return std::string(ECMIN_TEST_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ecmin::EmbeddedPlanarGraph load_pg(const std::string& name) {
  return ecmin::parse_pg(read_file(data_path(name)));
}

// Deterministic random circuit: valid, single sink, gate in-degrees in
// [1, max_fanin], fanins distinct and acyclic by id order.  Sinks other
// than the last gate are patched by feeding them into a later gate; the
// rare unpatchable draw retries with a derived seed.
inline ecmin::Circuit random_circuit(uint64_t seed, int max_inputs = 10,
                                     int max_gates = 20, int max_fanin = 4) {
  using ecmin::Circuit;
  using ecmin::GateKind;
  using ecmin::NodeId;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * attempt);
    auto uniform = [&](int lo, int hi) {
      return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
    };
    const int ni = uniform(1, max_inputs);
    const int ng = uniform(1, max_gates);

    Circuit c;
    c.num_inputs = ni;
    for (int i = 0; i < ni; ++i) c.names.push_back("x" + std::to_string(i + 1));
    for (int j = 0; j < ng; ++j) {
      const NodeId v = ni + j;
      Circuit::Gate g;
      g.kind = (rng() & 1) ? GateKind::And : GateKind::Or;
      std::vector<NodeId> pool(v);
      for (NodeId u = 0; u < v; ++u) pool[u] = u;
      std::shuffle(pool.begin(), pool.end(), rng);
      const int d = uniform(1, std::min(max_fanin, v));
      g.fanin.assign(pool.begin(), pool.begin() + d);
      c.gates.push_back(std::move(g));
      c.names.push_back("g" + std::to_string(j + 1));
    }
    c.output = ni + ng - 1;

    std::vector<int> out_deg(c.num_nodes(), 0);
    for (const auto& g : c.gates)
      for (NodeId u : g.fanin) ++out_deg[u];
    bool ok = true;
    for (NodeId v = c.output - 1; v >= ni && ok; --v) {
      if (out_deg[v] > 0) continue;
      std::vector<NodeId> hosts;
      for (NodeId w = v + 1; w < c.num_nodes(); ++w) {
        const auto& fan = c.gate(w).fanin;
        if (static_cast<int>(fan.size()) >= max_fanin) continue;
        if (std::find(fan.begin(), fan.end(), v) != fan.end()) continue;
        hosts.push_back(w);
      }
      if (hosts.empty()) {
        ok = false;
        break;
      }
      const NodeId w = hosts[rng() % hosts.size()];
      c.gates[w - ni].fanin.push_back(v);
      ++out_deg[v];
    }
    if (!ok) continue;
    ecmin::validate(c, ecmin::ValidationMode::Strict);
    return c;
  }
  throw std::runtime_error("random_circuit: no valid draw");
}

// Five-row ladder with a funnel gate: 5 inputs, (columns - 1) columns of
// five two-fanin gates, one final AND over the last column.  Underlying
// graph is a width-bounded cylinder, so min-fill stays small as columns
// grows.  Node count is 5 * columns + 1.
inline ecmin::Circuit grid_circuit(int columns) {
  using ecmin::Circuit;
  using ecmin::GateKind;
  using ecmin::NodeId;
  if (columns < 2) throw std::runtime_error("grid_circuit needs columns >= 2");
  Circuit c;
  c.num_inputs = 5;
  for (int r = 0; r < 5; ++r) c.names.push_back("x" + std::to_string(r + 1));
  std::vector<NodeId> prev(5);
  for (int r = 0; r < 5; ++r) prev[r] = r;
  for (int col = 1; col < columns; ++col) {
    std::vector<NodeId> cur(5);
    for (int r = 0; r < 5; ++r) {
      Circuit::Gate g;
      g.kind = ((col + r) % 2 == 0) ? GateKind::And : GateKind::Or;
      g.fanin = {prev[r], prev[(r + 1) % 5]};
      cur[r] = c.num_inputs + c.num_gates();
      c.gates.push_back(std::move(g));
      c.names.push_back("g" + std::to_string(col) + "_" + std::to_string(r));
    }
    prev = std::move(cur);
  }
  Circuit::Gate top;
  top.kind = GateKind::And;
  top.fanin.assign(prev.begin(), prev.end());
  c.output = c.num_inputs + c.num_gates();
  c.gates.push_back(std::move(top));
  c.names.push_back("out");
  ecmin::validate(c, ecmin::ValidationMode::Strict);
  return c;
}

// Random colored graph meeting the multicolored-clique preconditions:
// 2 or 3 non-empty classes, edges only between classes, every vertex with a
// neighbor in every other class.
inline ecmin::ColoredGraph random_colored_graph(uint64_t seed,
                                                int max_vertices = 12) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };
  ecmin::ColoredGraph q;
  q.num_colors = uniform(2, 3);
  q.n = uniform(q.num_colors, max_vertices);
  q.color.resize(q.n);
  for (int v = 0; v < q.num_colors; ++v) q.color[v] = v + 1;
  for (int v = q.num_colors; v < q.n; ++v) q.color[v] = uniform(1, q.num_colors);
  for (int v = 0; v < q.n; ++v) q.names.push_back("u" + std::to_string(v + 1));

  std::set<std::pair<int, int>> edges;
  for (int u = 0; u < q.n; ++u) {
    for (int v = u + 1; v < q.n; ++v) {
      if (q.color[u] != q.color[v] && (rng() & 1)) edges.insert({u, v});
    }
  }
  std::vector<std::vector<int>> classes(q.num_colors + 1);
  for (int v = 0; v < q.n; ++v) classes[q.color[v]].push_back(v);
  for (int v = 0; v < q.n; ++v) {
    for (int j = 1; j <= q.num_colors; ++j) {
      if (j == q.color[v]) continue;
      bool covered = false;
      for (int u : classes[j]) {
        if (edges.count({std::min(u, v), std::max(u, v)})) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        const int u = classes[j][rng() % classes[j].size()];
        edges.insert({std::min(u, v), std::max(u, v)});
      }
    }
  }
  q.edges.assign(edges.begin(), edges.end());
  return q;
}

}  // namespace testsupport
