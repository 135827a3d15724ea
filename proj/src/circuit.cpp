#include "ecmin/circuit.hpp"

#include <algorithm>
#include <queue>

namespace ecmin {

void Circuit::finalize() {
  const NodeId n = num_nodes();
  if (names.size() != static_cast<size_t>(n)) {
    throw Error("names size does not match node count");
  }
  if (!is_gate(output)) {
    throw MultipleOutputs("designated output is not a gate");
  }
  out_degree.assign(n, 0);
  std::vector<int32_t> in_remaining(n, 0);
  for (NodeId v = num_inputs; v < n; ++v) {
    for (NodeId u : gate(v).fanin) {
      if (u < 0 || u >= n) {
        throw DanglingReference("gate " + names[v] +
                                " references node id " + std::to_string(u));
      }
      ++out_degree[u];
    }
  }
  // Kahn's algorithm over gates only; inputs are sources by construction.
  // The ready heap keeps the order canonical (smallest id first).
  topo_order.clear();
  topo_order.reserve(num_gates());
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<NodeId>> ready;
  for (NodeId v = num_inputs; v < n; ++v) {
    int32_t gate_fanins = 0;
    for (NodeId u : gate(v).fanin) {
      if (is_gate(u)) ++gate_fanins;
    }
    in_remaining[v] = gate_fanins;
    if (gate_fanins == 0) ready.push(v);
  }
  std::vector<std::vector<NodeId>> gate_fanout(n);
  for (NodeId v = num_inputs; v < n; ++v) {
    for (NodeId u : gate(v).fanin) {
      if (is_gate(u)) gate_fanout[u].push_back(v);
    }
  }
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    topo_order.push_back(v);
    for (NodeId w : gate_fanout[v]) {
      if (--in_remaining[w] == 0) ready.push(w);
    }
  }
  if (static_cast<NodeId>(topo_order.size()) != num_gates()) {
    for (NodeId v = num_inputs; v < n; ++v) {
      if (in_remaining[v] > 0) {
        throw CyclicCircuit("cycle through gate " + names[v]);
      }
    }
    throw CyclicCircuit("cycle detected");
  }
  finalized = true;
}

std::vector<std::pair<NodeId, NodeId>> Circuit::edges() const {
  std::vector<std::pair<NodeId, NodeId>> result;
  for (NodeId v = num_inputs; v < num_nodes(); ++v) {
    for (NodeId u : gate(v).fanin) result.emplace_back(u, v);
  }
  return result;
}

CircuitStats validate(Circuit& circuit, ValidationMode mode) {
  if (circuit.num_inputs < 0) throw Error("negative input count");
  circuit.finalize();  // DanglingReference / CyclicCircuit / output-is-gate

  const NodeId n = circuit.num_nodes();
  CircuitStats stats;
  stats.inputs = circuit.num_inputs;
  stats.gates = circuit.num_gates();

  for (NodeId v = circuit.num_inputs; v < n; ++v) {
    const Circuit::Gate& g = circuit.gate(v);
    if (g.fanin.empty()) {
      throw GateWithoutInputs("gate " + circuit.name(v) + " has no inputs");
    }
    if (g.kind == GateKind::And) {
      ++stats.and_gates;
    } else {
      ++stats.or_gates;
    }
    stats.edges += static_cast<int32_t>(g.fanin.size());
  }
  if (circuit.out_degree[circuit.output] != 0) {
    throw OutputHasOutEdges("output gate " + circuit.name(circuit.output) +
                            " feeds another gate");
  }
  for (NodeId v = circuit.num_inputs; v < n; ++v) {
    if (v != circuit.output && circuit.out_degree[v] == 0) {
      ++stats.extra_sinks;
      if (mode == ValidationMode::Strict) {
        throw MultipleOutputs("gate " + circuit.name(v) +
                              " has no out-edges but is not the output");
      }
    }
  }
  std::vector<int32_t> dist = directed_distances_to_output(circuit);
  for (NodeId v = 0; v < circuit.num_inputs; ++v) {
    if (dist[v] < 0) ++stats.unreachable_inputs;
  }
  return stats;
}

std::pair<ActivationSet, EnergyReport> evaluate(const Circuit& circuit,
                                                const Assignment& x) {
  if (!circuit.finalized) throw Error("circuit not finalized");
  if (x.size() != static_cast<size_t>(circuit.num_inputs)) {
    throw AssignmentLengthMismatch(
        "assignment has " + std::to_string(x.size()) + " values, circuit has " +
        std::to_string(circuit.num_inputs) + " inputs");
  }
  ActivationSet act;
  act.active.assign(circuit.num_nodes(), false);
  for (NodeId v = 0; v < circuit.num_inputs; ++v) act.active[v] = x[v];
  EnergyReport report;
  for (NodeId v : circuit.topo_order) {
    const Circuit::Gate& g = circuit.gate(v);
    bool value = (g.kind == GateKind::And);
    if (g.kind == GateKind::And) {
      for (NodeId u : g.fanin) {
        if (!act.active[u]) {
          value = false;
          break;
        }
      }
    } else {
      value = false;
      for (NodeId u : g.fanin) {
        if (act.active[u]) {
          value = true;
          break;
        }
      }
    }
    act.active[v] = value;
    if (value) ++report.ec;
  }
  report.satisfied = act.active[circuit.output];
  return {std::move(act), report};
}

EnergyReport evaluate_report(const Circuit& circuit, const Assignment& x) {
  if (!circuit.finalized) throw Error("circuit not finalized");
  if (x.size() != static_cast<size_t>(circuit.num_inputs)) {
    throw AssignmentLengthMismatch(
        "assignment has " + std::to_string(x.size()) + " values, circuit has " +
        std::to_string(circuit.num_inputs) + " inputs");
  }
  std::vector<uint8_t> value(circuit.num_nodes(), 0);
  for (NodeId v = 0; v < circuit.num_inputs; ++v) value[v] = x[v] ? 1 : 0;
  EnergyReport report;
  for (NodeId v : circuit.topo_order) {
    const Circuit::Gate& g = circuit.gate(v);
    uint8_t out;
    if (g.kind == GateKind::And) {
      out = 1;
      for (NodeId u : g.fanin) out &= value[u];
    } else {
      out = 0;
      for (NodeId u : g.fanin) out |= value[u];
    }
    value[v] = out;
    report.ec += out;
  }
  report.satisfied = value[circuit.output] != 0;
  return report;
}

EnergyReport ec_worst(const Circuit& circuit) {
  Assignment all_true(circuit.num_inputs, true);
  EnergyReport report = evaluate_report(circuit, all_true);
  // In-degree >= 1 induction: every gate fires under the all-true assignment.
  if (report.ec != circuit.num_gates() || !report.satisfied) {
    throw Error("all-true assignment failed to activate every gate");
  }
  return report;
}

std::vector<int32_t> directed_distances_to_output(const Circuit& circuit) {
  if (!circuit.finalized) throw Error("circuit not finalized");
  std::vector<int32_t> dist(circuit.num_nodes(), -1);
  // BFS over reversed edges (gate -> its fanins), unit weights.
  std::queue<NodeId> q;
  dist[circuit.output] = 0;
  q.push(circuit.output);
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop();
    if (!circuit.is_gate(v)) continue;
    for (NodeId u : circuit.gate(v).fanin) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        q.push(u);
      }
    }
  }
  return dist;
}

}  // namespace ecmin
