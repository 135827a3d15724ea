#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ecmin/errors.hpp"

namespace ecmin {

using NodeId = int32_t;

enum class GateKind : uint8_t { And, Or };

// Monotone boolean circuit over AND/OR gates.
//
// Nodes carry dense ids 0..n-1 with all inputs first: id < num_inputs is an
// input, id >= num_inputs is a gate.  Gate g's description lives at
// gates[g - num_inputs].  The structure is immutable once finalized;
// finalize() computes the evaluation order and per-node out-degrees and must
// be called (directly or via validate()) before evaluate().
struct Circuit {
  struct Gate {
    GateKind kind;
    std::vector<NodeId> fanin;  // in-neighbors, in declaration order
  };

  NodeId num_inputs = 0;
  std::vector<Gate> gates;
  NodeId output = -1;               // must be a gate
  std::vector<std::string> names;   // size num_nodes(); unique

  NodeId num_gates() const { return static_cast<NodeId>(gates.size()); }
  NodeId num_nodes() const { return num_inputs + num_gates(); }
  bool is_input(NodeId v) const { return v >= 0 && v < num_inputs; }
  bool is_gate(NodeId v) const { return v >= num_inputs && v < num_nodes(); }
  const Gate& gate(NodeId v) const { return gates[v - num_inputs]; }
  GateKind kind(NodeId v) const { return gate(v).kind; }
  const std::string& name(NodeId v) const { return names[v]; }

  // Derived data, filled by finalize().
  std::vector<NodeId> topo_order;   // all gate ids, every fanin before use
  std::vector<int32_t> out_degree;  // per node
  bool finalized = false;

  // Checks ids are in range and computes topo_order/out_degree.
  // Throws DanglingReference or CyclicCircuit.
  void finalize();

  // Directed edges (u, v) for every fanin u of every gate v.
  std::vector<std::pair<NodeId, NodeId>> edges() const;
};

using Assignment = std::vector<bool>;  // one value per input, by input id

struct ActivationSet {
  std::vector<bool> active;  // per node; inputs active iff assigned true
};

struct EnergyReport {
  bool satisfied = false;  // output gate evaluates to true
  int32_t ec = 0;          // number of active gates (output included)
};

enum class ValidationMode {
  Strict,           // every gate except the output must have out-degree >= 1
  AllowExtraSinks,  // non-output sink gates permitted (reduced circuits)
};

struct CircuitStats {
  int32_t inputs = 0;
  int32_t gates = 0;
  int32_t and_gates = 0;
  int32_t or_gates = 0;
  int32_t edges = 0;
  int32_t unreachable_inputs = 0;  // inputs with no directed path to output
  int32_t extra_sinks = 0;         // non-output gates with out-degree 0
};

// Full structural check; finalizes the circuit as a side effect.  Throws
// CyclicCircuit, DanglingReference, GateWithoutInputs, MultipleOutputs or
// OutputHasOutEdges.  Unreachable inputs are permitted in both modes and
// only reported in the stats.
CircuitStats validate(Circuit& circuit,
                      ValidationMode mode = ValidationMode::Strict);

// Evaluates the circuit under x (one bool per input).  Allocates its own
// scratch, so concurrent calls on one circuit are safe.  Requires a
// finalized circuit; throws AssignmentLengthMismatch on length mismatch.
std::pair<ActivationSet, EnergyReport> evaluate(const Circuit& circuit,
                                                const Assignment& x);

// Same evaluation without materializing the activation set.
EnergyReport evaluate_report(const Circuit& circuit, const Assignment& x);

// Energy of the all-true assignment.  Every gate fires (in-degree >= 1
// induction), so this equals num_gates(); asserted against evaluation.
EnergyReport ec_worst(const Circuit& circuit);

// Directed distance (edge count) from each node to the output, following
// fanin->gate direction; -1 when the output is unreachable from the node.
std::vector<int32_t> directed_distances_to_output(const Circuit& circuit);

}  // namespace ecmin
