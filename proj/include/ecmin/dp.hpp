#pragma once

#include <cstdint>
#include <optional>

#include "ecmin/circuit.hpp"
#include "ecmin/treewidth.hpp"

namespace ecmin {

struct DpOptions {
  bool want_witness = false;
  bool want_stats = false;
};

struct DpStats {
  int nodes = 0;
  int width = 0;             // of the nice decomposition (bag size - 1)
  int64_t max_states = 0;    // largest per-node table
  int64_t total_states = 0;  // summed over all nodes
};

struct DpResult {
  int32_t min_ec = 0;
  std::optional<Assignment> witness;
  DpStats stats;
};

// Bottom-up table computation over the extended nice decomposition.
// Per bag vertex the state tracks: inputs in/out of the partial activation
// set; OR gates out, in-unwitnessed, or in-witnessed (an in-neighbor seen
// among introduced edges); AND gates in, out-unwitnessed, or out-witnessed
// (a non-activated in-neighbor seen).  Witness sets are exact: a state must
// record a witness the moment one exists, which caps the table at
// 3^|bag| entries.  The witness assignment, when requested, is rebuilt by
// walking optimal choices back down and is re-verified by evaluation.
// Throws DecompositionMismatch if the decomposition does not audit against
// the circuit.
DpResult dp_solve(const Circuit& circuit, const NiceDecomposition& nice,
                  const DpOptions& opts = {});

// Convenience wrapper: decompose (min-fill unless a decomposition is
// given), extend, solve, compare against k.
bool decide_dp(const Circuit& circuit, int32_t k,
               const std::optional<TreeDecomposition>& td = {});

}  // namespace ecmin
