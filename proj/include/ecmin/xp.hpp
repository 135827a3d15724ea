#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ecmin/circuit.hpp"

namespace ecmin {

enum class Tri : uint8_t { Free, False, True };

// Tri-state assignment over the inputs, as forced by a candidate gate set.
struct PartialAssignment {
  std::vector<Tri> value;  // one entry per input
};

struct XpOptions {
  // Upper bound on enumeration steps (candidate sets plus extension
  // attempts); BudgetExceeded beyond it.
  uint64_t budget = uint64_t{1} << 30;
};

// Checks whether the gate set T (which must contain the output) can be
// exactly the set of firing gates of some assignment, judging each gate
// locally:  AND gates in T need all gate fanins in T, OR gates outside T
// must have no fanin in T, and the forced input values (true under an AND
// in T, false under an OR outside T) must not clash.  Returns the forced
// partial assignment, or nullopt on any violation.
std::optional<PartialAssignment> is_consistent(const Circuit& circuit,
                                               const std::vector<NodeId>& T);

// Tries to complete the forced assignment into a verified witness with
// ec <= k by setting at most k extra inputs true, chosen among the fanins
// of OR gates in T that no forced-true input fires yet.  Every candidate is
// re-verified with a full evaluation before being returned.
std::optional<Assignment> extend(const Circuit& circuit,
                                 const std::vector<NodeId>& T,
                                 const PartialAssignment& partial, int32_t k,
                                 uint64_t* budget = nullptr);

// Enumerates candidate sets T containing the output in size-then-
// lexicographic order (by gate id) up to |T| = k and returns the first
// verified witness.  nullopt means no satisfying assignment has ec <= k.
std::optional<Assignment> solve_xp(const Circuit& circuit, int32_t k,
                                   const XpOptions& opts = {});

bool decide_xp(const Circuit& circuit, int32_t k, const XpOptions& opts = {});

}  // namespace ecmin
