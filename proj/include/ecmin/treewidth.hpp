#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ecmin/circuit.hpp"

namespace ecmin {

// Tree decomposition of the circuit's underlying undirected graph.
// Bags hold circuit node ids, sorted ascending.
struct TreeDecomposition {
  std::vector<std::vector<NodeId>> bags;
  std::vector<std::pair<int, int>> tree_edges;  // between bag indices

  int width() const {
    size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
  }
};

// Checks the three decomposition conditions against the circuit's underlying
// graph.  Throws NotATree, CoverageViolation or ConnectivityViolation.
void check_decomposition(const TreeDecomposition& td, const Circuit& circuit);

// Min-fill elimination ordering; ties broken by smallest node id.  The
// result always passes check_decomposition.
TreeDecomposition heuristic_decomposition(const Circuit& circuit);

// One bag holding every node; baseline for cross-checking the heuristic.
TreeDecomposition single_bag_decomposition(const Circuit& circuit);

// Rooted, binary, extended nice tree decomposition.  Extended: the output
// gate is a member of every bag, leaf and root bags are exactly {output},
// and every directed circuit edge is introduced by exactly one node.
enum class NiceKind : uint8_t {
  Leaf,
  IntroduceVertex,
  IntroduceEdge,
  Forget,
  Join,
};

struct NiceNode {
  NiceKind kind;
  std::vector<NodeId> bag;  // sorted ascending
  int child1 = -1;
  int child2 = -1;                      // join only
  NodeId vertex = -1;                   // IntroduceVertex / Forget
  NodeId edge_tail = -1, edge_head = -1;  // IntroduceEdge, directed tail->head
};

struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  int width() const {
    size_t w = 0;
    for (const auto& n : nodes) w = std::max(w, n.bag.size());
    return static_cast<int>(w) - 1;
  }
};

// Builds the extended nice decomposition from a valid decomposition of the
// circuit.  Adding the output to every bag raises the width by at most one.
// Node count is O(width * |V| + |E|).
NiceDecomposition make_extended_nice(const TreeDecomposition& td,
                                     const Circuit& circuit);

// Structural audit used by tests and dp_solve: per-vertex forget counts,
// per-edge introduction counts, bag membership of the output, join bag
// equality.  Throws DecompositionMismatch on any violation.
void audit_nice(const NiceDecomposition& nice, const Circuit& circuit);

// Children-before-parent evaluation order (indices into nice.nodes).
std::vector<int> nice_postorder(const NiceDecomposition& nice);

}  // namespace ecmin
