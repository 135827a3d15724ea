#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ecmin/circuit.hpp"

namespace ecmin {

enum class KernelVerdict : uint8_t {
  No,       // some deletion removed the output: no satisfying assignment
            // with ec <= k exists
  Yes,      // k >= |gates|: the all-true assignment already fits the budget
  Reduced,  // equivalent reduced circuit produced
};

struct KernelDeletion {
  int rule;            // 1..4
  NodeId node;         // id in the original circuit
  std::string name;    // name in the original circuit
};

struct KernelOutcome {
  KernelVerdict verdict;
  // Present only for Reduced.  The reduced circuit keeps the surviving
  // nodes' names and is valid under AllowExtraSinks (deleting a gate's
  // consumers can strand it as a non-output sink, and such leak gates still
  // cost energy, so they must stay).
  std::optional<Circuit> circuit;
  // Original node id -> id in the reduced circuit, -1 when deleted.
  std::vector<NodeId> node_map;
  std::vector<KernelDeletion> deletions;  // in application order
};

// Parameter-aware reduction.  Repeats four rules to a fixed point, each
// pass applying them in order over ascending node ids:
//   1. delete inputs with directed distance to the output > k,
//   2. delete nodes with directed distance from every input > k+1,
//   3. delete AND gates that lost one of their fanins,
//   4. delete OR gates whose fanins are all gone.
// Answers (circuit, k) and (reduced, k) identically.  Every node of the
// reduced circuit has undirected distance <= 2k+1 from the output.
KernelOutcome kernelize(const Circuit& circuit, int32_t k);

// True iff every node lies within undirected distance 2k+1 of the output.
bool check_distance_bound(const Circuit& circuit, int32_t k);

}  // namespace ecmin
