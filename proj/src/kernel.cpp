#include "ecmin/kernel.hpp"

#include <algorithm>
#include <queue>

namespace ecmin {

namespace {

constexpr int32_t kUnreached = INT32_MAX;

struct Workspace {
  const Circuit& c;
  std::vector<uint8_t> alive;
  std::vector<std::vector<NodeId>> fanout;
  std::vector<uint8_t> lost_fanin;  // AND gate lost an in-neighbor
  std::vector<KernelDeletion> log;
  bool output_deleted = false;

  explicit Workspace(const Circuit& circuit)
      : c(circuit),
        alive(circuit.num_nodes(), 1),
        fanout(circuit.num_nodes()),
        lost_fanin(circuit.num_nodes(), 0) {
    for (NodeId v = c.num_inputs; v < c.num_nodes(); ++v) {
      for (NodeId u : c.gate(v).fanin) fanout[u].push_back(v);
    }
  }

  void erase(int rule, NodeId v) {
    alive[v] = 0;
    log.push_back({rule, v, c.name(v)});
    if (v == c.output) output_deleted = true;
    for (NodeId w : fanout[v]) {
      if (alive[w]) lost_fanin[w] = 1;
    }
  }

  int32_t alive_fanin_count(NodeId v) const {
    int32_t n = 0;
    for (NodeId u : c.gate(v).fanin) n += alive[u];
    return n;
  }

  // Directed distance from each alive node to the output, over alive nodes.
  std::vector<int32_t> dist_to_output() const {
    std::vector<int32_t> dist(c.num_nodes(), kUnreached);
    if (!alive[c.output]) return dist;
    std::queue<NodeId> q;
    dist[c.output] = 0;
    q.push(c.output);
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      if (!c.is_gate(v)) continue;
      for (NodeId u : c.gate(v).fanin) {
        if (alive[u] && dist[u] == kUnreached) {
          dist[u] = dist[v] + 1;
          q.push(u);
        }
      }
    }
    return dist;
  }

  // Directed distance from the nearest alive input, over alive nodes.
  std::vector<int32_t> dist_from_inputs() const {
    std::vector<int32_t> dist(c.num_nodes(), kUnreached);
    std::queue<NodeId> q;
    for (NodeId v = 0; v < c.num_inputs; ++v) {
      if (alive[v]) {
        dist[v] = 0;
        q.push(v);
      }
    }
    while (!q.empty()) {
      NodeId v = q.front();
      q.pop();
      for (NodeId w : fanout[v]) {
        if (alive[w] && dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
      }
    }
    return dist;
  }
};

}  // namespace

KernelOutcome kernelize(const Circuit& circuit, int32_t k) {
  if (!circuit.finalized) throw Error("circuit not finalized");

  KernelOutcome outcome;
  outcome.node_map.assign(circuit.num_nodes(), -1);
  if (k >= circuit.num_gates()) {
    // The all-true assignment costs exactly |gates|, so the answer is yes
    // regardless of the structure; no reduction needed.
    outcome.verdict = KernelVerdict::Yes;
    return outcome;
  }

  Workspace ws(circuit);
  bool changed = true;
  while (changed && !ws.output_deleted) {
    changed = false;
    // Rule 1: inputs too far from the output.  Distances snapshot at the
    // start of the sweep; deletions only lengthen paths, and the next pass
    // rechecks.
    {
      std::vector<int32_t> dist = ws.dist_to_output();
      for (NodeId v = 0; v < circuit.num_inputs; ++v) {
        if (ws.alive[v] && (dist[v] == kUnreached || dist[v] > k)) {
          ws.erase(1, v);
          changed = true;
        }
      }
    }
    if (ws.output_deleted) break;
    // Rule 2: nodes too far from every input.
    {
      std::vector<int32_t> dist = ws.dist_from_inputs();
      for (NodeId v = 0; v < circuit.num_nodes(); ++v) {
        if (ws.alive[v] && (dist[v] == kUnreached || dist[v] > k + 1)) {
          ws.erase(2, v);
          changed = true;
          if (ws.output_deleted) break;
        }
      }
    }
    if (ws.output_deleted) break;
    // Rule 3: AND gates that lost a fanin.  The flag is read live, so a
    // deletion can cascade to higher ids within the same sweep.
    for (NodeId v = circuit.num_inputs; v < circuit.num_nodes(); ++v) {
      if (ws.alive[v] && ws.lost_fanin[v] &&
          circuit.kind(v) == GateKind::And) {
        ws.erase(3, v);
        changed = true;
        if (ws.output_deleted) break;
      }
    }
    if (ws.output_deleted) break;
    // Rule 4: OR gates with no fanin left.
    for (NodeId v = circuit.num_inputs; v < circuit.num_nodes(); ++v) {
      if (ws.alive[v] && circuit.kind(v) == GateKind::Or &&
          ws.alive_fanin_count(v) == 0) {
        ws.erase(4, v);
        changed = true;
        if (ws.output_deleted) break;
      }
    }
  }

  outcome.deletions = std::move(ws.log);
  bool anything_alive = false;
  for (uint8_t a : ws.alive) anything_alive |= a != 0;
  if (ws.output_deleted || !anything_alive) {
    outcome.verdict = KernelVerdict::No;
    return outcome;
  }

  // Rebuild with dense ids, inputs first, names preserved.
  Circuit reduced;
  for (NodeId v = 0; v < circuit.num_inputs; ++v) {
    if (!ws.alive[v]) continue;
    outcome.node_map[v] = reduced.num_inputs++;
    reduced.names.push_back(circuit.name(v));
  }
  for (NodeId v = circuit.num_inputs; v < circuit.num_nodes(); ++v) {
    if (!ws.alive[v]) continue;
    outcome.node_map[v] = reduced.num_inputs +
                          static_cast<NodeId>(reduced.gates.size());
    Circuit::Gate g;
    g.kind = circuit.kind(v);
    for (NodeId u : circuit.gate(v).fanin) {
      if (ws.alive[u]) g.fanin.push_back(outcome.node_map[u]);
    }
    reduced.gates.push_back(std::move(g));
    reduced.names.push_back(circuit.name(v));
  }
  reduced.output = outcome.node_map[circuit.output];
  validate(reduced, ValidationMode::AllowExtraSinks);
  outcome.circuit = std::move(reduced);
  outcome.verdict = KernelVerdict::Reduced;
  return outcome;
}

bool check_distance_bound(const Circuit& circuit, int32_t k) {
  if (!circuit.finalized) throw Error("circuit not finalized");
  std::vector<std::vector<NodeId>> adj(circuit.num_nodes());
  for (auto [u, v] : circuit.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int32_t> dist(circuit.num_nodes(), -1);
  std::queue<NodeId> q;
  dist[circuit.output] = 0;
  q.push(circuit.output);
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    for (NodeId w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  for (NodeId v = 0; v < circuit.num_nodes(); ++v) {
    if (dist[v] < 0 || dist[v] > 2 * k + 1) return false;
  }
  return true;
}

}  // namespace ecmin
