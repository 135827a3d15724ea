#pragma once

#include <cstdint>
#include <optional>

#include "ecmin/circuit.hpp"

namespace ecmin {

struct BruteOptions {
  int input_limit = 24;               // throw TooManyInputs above this
  std::optional<int32_t> cap;         // stop once a witness with ec <= cap is found
  // Scan restricted to Gray-code positions [begin, end); end = 0 means
  // 2^|inputs|.  Blocks over disjoint position ranges partition the
  // assignment space, so results can be combined with merge_brute.
  uint64_t begin = 0;
  uint64_t end = 0;
};

struct BruteResult {
  std::optional<int32_t> min_ec;  // empty when unsatisfiable (never happens
                                  // for validated circuits) or cap-cut
  std::optional<Assignment> witness;  // lexicographically smallest optimum
  uint64_t assignments_scanned = 0;               // assignments evaluated so far
  bool capped = false;                // true when the cap triggered early exit
};

// Exhaustive scan over all 2^|inputs| assignments in Gray-code order with a
// full re-evaluation per assignment; the reference oracle everything else is
// checked against.  With a cap, returns the first assignment reaching
// ec <= cap (then min_ec is that witness's ec, not necessarily the optimum).
// Without a cap, the witness is the lexicographically smallest assignment
// attaining the minimum.
BruteResult min_ec_brute(const Circuit& circuit, const BruteOptions& opts = {});

// Decision wrapper: true iff some satisfying assignment has ec <= k.
bool decide_brute(const Circuit& circuit, int32_t k,
                  const BruteOptions& opts = {});

// Merges results of scans over disjoint assignment blocks (associative).
// Both arguments must come from cap-free scans.
BruteResult merge_brute(const BruteResult& a, const BruteResult& b);

}  // namespace ecmin
