#include "ecmin/xp.hpp"

#include <algorithm>

namespace ecmin {

namespace {

// Advances a strictly increasing index combination over {0..n-1}; returns
// false once the lexicographically last combination has been visited.
bool next_combination(std::vector<int>& combo, int n) {
  const int s = static_cast<int>(combo.size());
  for (int i = s - 1; i >= 0; --i) {
    if (combo[i] < n - (s - i)) {
      ++combo[i];
      for (int j = i + 1; j < s; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void charge(uint64_t* budget, const char* where) {
  if (budget && (*budget)-- == 0) {
    throw BudgetExceeded(std::string("enumeration budget exhausted in ") +
                         where);
  }
}

}  // namespace

std::optional<PartialAssignment> is_consistent(const Circuit& circuit,
                                               const std::vector<NodeId>& T) {
  if (!circuit.finalized) throw Error("circuit not finalized");
  std::vector<uint8_t> in_T(circuit.num_nodes(), 0);
  bool output_in_T = false;
  for (NodeId v : T) {
    if (!circuit.is_gate(v)) throw Error("candidate set contains a non-gate");
    in_T[v] = 1;
    if (v == circuit.output) output_in_T = true;
  }
  if (!output_in_T) return std::nullopt;

  PartialAssignment partial;
  partial.value.assign(circuit.num_inputs, Tri::Free);

  // Forced values first: true under AND gates in T, false under OR gates
  // outside T.  A clash means no assignment realizes T.
  for (NodeId v = circuit.num_inputs; v < circuit.num_nodes(); ++v) {
    const Circuit::Gate& g = circuit.gate(v);
    const bool member = in_T[v];
    if (member && g.kind == GateKind::And) {
      for (NodeId u : g.fanin) {
        if (circuit.is_input(u)) {
          if (partial.value[u] == Tri::False) return std::nullopt;
          partial.value[u] = Tri::True;
        } else if (!in_T[u]) {
          return std::nullopt;  // AND in T with a silent gate fanin
        }
      }
    } else if (!member && g.kind == GateKind::Or) {
      for (NodeId u : g.fanin) {
        if (circuit.is_input(u)) {
          if (partial.value[u] == Tri::True) return std::nullopt;
          partial.value[u] = Tri::False;
        } else if (in_T[u]) {
          return std::nullopt;  // silent OR fed by a firing gate
        }
      }
    }
  }
  // Local satisfiability of the remaining gates under the forced values.
  for (NodeId v = circuit.num_inputs; v < circuit.num_nodes(); ++v) {
    const Circuit::Gate& g = circuit.gate(v);
    if (in_T[v] && g.kind == GateKind::Or) {
      // Needs at least one fanin that can still be true.
      bool witness_possible = false;
      for (NodeId u : g.fanin) {
        if (circuit.is_input(u) ? partial.value[u] != Tri::False : in_T[u]) {
          witness_possible = true;
          break;
        }
      }
      if (!witness_possible) return std::nullopt;
    } else if (!in_T[v] && g.kind == GateKind::And) {
      // Needs at least one fanin that can still be false.
      bool blocker_possible = false;
      for (NodeId u : g.fanin) {
        if (circuit.is_input(u) ? partial.value[u] != Tri::True : !in_T[u]) {
          blocker_possible = true;
          break;
        }
      }
      if (!blocker_possible) return std::nullopt;
    }
  }
  return partial;
}

std::optional<Assignment> extend(const Circuit& circuit,
                                 const std::vector<NodeId>& T,
                                 const PartialAssignment& partial, int32_t k,
                                 uint64_t* budget) {
  if (partial.value.size() != static_cast<size_t>(circuit.num_inputs)) {
    throw Error("partial assignment size mismatch");
  }
  std::vector<uint8_t> in_T(circuit.num_nodes(), 0);
  for (NodeId v : T) in_T[v] = 1;

  Assignment base(circuit.num_inputs, false);
  for (NodeId i = 0; i < circuit.num_inputs; ++i) {
    base[i] = partial.value[i] == Tri::True;
  }

  // OR gates in T not yet fired by the forced assignment; extra true inputs
  // may only be drawn from their input fanins.
  std::vector<uint8_t> candidate(circuit.num_inputs, 0);
  std::vector<NodeId> needy;
  for (NodeId v : T) {
    const Circuit::Gate& g = circuit.gate(v);
    if (g.kind != GateKind::Or) continue;
    bool fired = false;
    for (NodeId u : g.fanin) {
      if (circuit.is_input(u) ? partial.value[u] == Tri::True : in_T[u]) {
        fired = true;
        break;
      }
    }
    if (fired) continue;
    needy.push_back(v);
    for (NodeId u : g.fanin) {
      if (circuit.is_input(u) && partial.value[u] == Tri::Free) {
        candidate[u] = 1;
      }
    }
  }

  std::vector<NodeId> pool;
  for (NodeId i = 0; i < circuit.num_inputs; ++i) {
    if (candidate[i]) pool.push_back(i);
  }

  // Monotonicity prune: flipping extra inputs to true never lowers the
  // energy, so a too-expensive base dooms every extension.
  charge(budget, "extend");
  EnergyReport base_report = evaluate_report(circuit, base);
  if (base_report.ec > k) return std::nullopt;
  if (needy.empty()) {
    return base_report.satisfied && base_report.ec <= k
               ? std::optional<Assignment>(base)
               : std::nullopt;
  }

  const int pool_size = static_cast<int>(pool.size());
  const int max_extra = std::min<int32_t>(k, pool_size);
  Assignment x = base;
  for (int extra = 1; extra <= max_extra; ++extra) {
    std::vector<int> combo(extra);
    for (int i = 0; i < extra; ++i) combo[i] = i;
    do {
      charge(budget, "extend");
      x = base;
      for (int idx : combo) x[pool[idx]] = true;
      bool all_fired = true;
      for (NodeId v : needy) {
        bool fired = false;
        for (NodeId u : circuit.gate(v).fanin) {
          if (circuit.is_input(u) && x[u]) {
            fired = true;
            break;
          }
        }
        if (!fired) {
          all_fired = false;
          break;
        }
      }
      if (!all_fired) continue;
      EnergyReport report = evaluate_report(circuit, x);
      if (report.satisfied && report.ec <= k) return x;
    } while (next_combination(combo, pool_size));
  }
  return std::nullopt;
}

std::optional<Assignment> solve_xp(const Circuit& circuit, int32_t k,
                                   const XpOptions& opts) {
  if (!circuit.finalized) throw Error("circuit not finalized");
  if (k <= 0) return std::nullopt;  // a satisfied output already costs 1

  uint64_t budget = opts.budget;
  // Pool of candidate gates other than the output, ascending by id.
  std::vector<NodeId> pool;
  for (NodeId v = circuit.num_inputs; v < circuit.num_nodes(); ++v) {
    if (v != circuit.output) pool.push_back(v);
  }
  const int pool_size = static_cast<int>(pool.size());
  const int32_t max_size = std::min<int32_t>(k, circuit.num_gates());

  std::vector<NodeId> T;
  for (int32_t size = 1; size <= max_size; ++size) {
    const int extra = static_cast<int>(size) - 1;
    if (extra > pool_size) break;
    std::vector<int> combo(extra);
    for (int i = 0; i < extra; ++i) combo[i] = i;
    do {
      charge(&budget, "solve_xp");
      T.clear();
      for (int idx : combo) T.push_back(pool[idx]);
      T.push_back(circuit.output);
      auto partial = is_consistent(circuit, T);
      if (partial) {
        auto witness = extend(circuit, T, *partial, k, &budget);
        if (witness) return witness;
      }
    } while (extra > 0 && next_combination(combo, pool_size));
  }
  return std::nullopt;
}

bool decide_xp(const Circuit& circuit, int32_t k, const XpOptions& opts) {
  return solve_xp(circuit, k, opts).has_value();
}

}  // namespace ecmin
