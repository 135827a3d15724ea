#include "ecmin/dp.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace ecmin {

namespace {

constexpr int32_t kInf = int32_t{1} << 28;

int32_t clamp_inf(int32_t x) { return x >= kInf ? kInf : x; }

// Digit meanings, per bag vertex:
//   input:     0 = out of S, 1 = in S                        (radix 2)
//   OR gate:   0 = out, 1 = in without witness, 2 = in with  (radix 3)
//   AND gate:  0 = in,  1 = out without witness, 2 = out with(radix 3)
// States whose digit claims the output gate is out of S are initialized
// and kept at infinity, so the special role of the output needs no extra
// codec case.
struct Codec {
  std::vector<NodeId> verts;   // the bag, ascending
  std::vector<int32_t> radix;  // per position
  std::vector<int64_t> place;  // mixed-radix place values
  int64_t states = 1;

  Codec() = default;
  Codec(const std::vector<NodeId>& bag, const Circuit& c) : verts(bag) {
    radix.reserve(bag.size());
    place.reserve(bag.size());
    for (NodeId v : bag) {
      place.push_back(states);
      radix.push_back(c.is_input(v) ? 2 : 3);
      states *= radix.back();
    }
  }

  int pos_of(NodeId v) const {
    return static_cast<int>(
        std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  }
  int digit(int64_t idx, int pos) const {
    return static_cast<int>((idx / place[pos]) % radix[pos]);
  }
  int64_t with_digit(int64_t idx, int pos, int digit) const {
    return idx + (int64_t{digit} - this->digit(idx, pos)) * place[pos];
  }
  // Index in the one-vertex-smaller codec obtained by dropping `pos`.
  int64_t drop(int64_t idx, int pos) const {
    const int64_t low = idx % place[pos];
    const int64_t high = idx / (place[pos] * radix[pos]);
    return low + high * place[pos];
  }
  // Inverse of drop: inserts `digit` for a vertex at `pos` (positions refer
  // to this codec, the larger one).
  int64_t lift(int64_t idx, int pos, int digit) const {
    const int64_t low = idx % place[pos];
    const int64_t high = idx / place[pos];
    return low + (int64_t{digit} + high * radix[pos]) * place[pos];
  }
};

bool in_S(const Circuit& c, NodeId v, int digit) {
  if (c.is_input(v)) return digit == 1;
  return c.kind(v) == GateKind::And ? digit == 0 : digit >= 1;
}

// Gates of the bag inside S under this state; the join subtracts it.
int32_t gates_in_state(const Circuit& c, const Codec& codec, int64_t idx) {
  int32_t n = 0;
  for (size_t p = 0; p < codec.verts.size(); ++p) {
    NodeId v = codec.verts[p];
    if (!c.is_input(v) && in_S(c, v, codec.digit(idx, static_cast<int>(p)))) {
      ++n;
    }
  }
  return n;
}

struct Solver {
  const Circuit& c;
  const NiceDecomposition& nice;
  bool keep_tables;
  std::vector<Codec> codecs;
  std::vector<std::vector<int32_t>> tables;

  Solver(const Circuit& circuit, const NiceDecomposition& nd, bool keep)
      : c(circuit),
        nice(nd),
        keep_tables(keep),
        codecs(nd.nodes.size()),
        tables(nd.nodes.size()) {}

  void release(int node) {
    if (!keep_tables) {
      tables[node].clear();
      tables[node].shrink_to_fit();
    }
  }

  void compute(int id) {
    const NiceNode& node = nice.nodes[id];
    codecs[id] = Codec(node.bag, c);
    const Codec& codec = codecs[id];
    std::vector<int32_t>& table = tables[id];
    table.assign(static_cast<size_t>(codec.states), kInf);

    switch (node.kind) {
      case NiceKind::Leaf: {
        // Bag is {output}; only "in S without witness" (or plain "in S"
        // for an AND output) is feasible and costs the output itself.
        const int feasible = c.kind(c.output) == GateKind::And ? 0 : 1;
        table[feasible] = 1;
        break;
      }
      case NiceKind::IntroduceVertex: {
        const std::vector<int32_t>& ct = tables[node.child1];
        const int pos = codec.pos_of(node.vertex);
        const bool is_input = c.is_input(node.vertex);
        const bool is_and =
            !is_input && c.kind(node.vertex) == GateKind::And;
        for (int64_t idx = 0; idx < codec.states; ++idx) {
          const int d = codec.digit(idx, pos);
          const int32_t base = ct[codec.drop(idx, pos)];
          int32_t cost;
          if (is_input) {
            cost = base;  // inputs cost nothing
          } else if (d == 2) {
            cost = kInf;  // a just-introduced vertex is isolated in C_t
          } else if (is_and) {
            cost = d == 0 ? clamp_inf(base + 1) : base;
          } else {
            cost = d == 1 ? clamp_inf(base + 1) : base;
          }
          table[idx] = cost;
        }
        release(node.child1);
        break;
      }
      case NiceKind::Forget: {
        const Codec& child = codecs[node.child1];
        const std::vector<int32_t>& ct = tables[node.child1];
        const int pos = child.pos_of(node.vertex);
        int digits[2];
        if (c.is_input(node.vertex)) {
          digits[0] = 0;  // kept out of S
          digits[1] = 1;  // kept in S
        } else {
          // Only witnessed states survive a forget; an unwitnessed gate
          // (digit 1) would violate its local gate condition for good.
          digits[0] = 2;
          digits[1] = 0;
        }
        for (int64_t idx = 0; idx < codec.states; ++idx) {
          table[idx] = std::min(ct[child.lift(idx, pos, digits[0])],
                                ct[child.lift(idx, pos, digits[1])]);
        }
        release(node.child1);
        break;
      }
      case NiceKind::IntroduceEdge: {
        const std::vector<int32_t>& ct = tables[node.child1];
        const int upos = codec.pos_of(node.edge_tail);
        const int vpos = codec.pos_of(node.edge_head);
        const NodeId u = node.edge_tail;
        const NodeId w = node.edge_head;
        if (!c.is_gate(w)) {
          throw DecompositionMismatch("edge into a non-gate");
        }
        const bool head_or = c.kind(w) == GateKind::Or;
        for (int64_t idx = 0; idx < codec.states; ++idx) {
          const bool tail_in = in_S(c, u, codec.digit(idx, upos));
          const int dw = codec.digit(idx, vpos);
          int32_t cost;
          if (head_or) {
            if (!tail_in) {
              cost = ct[idx];
            } else if (dw == 2) {
              cost = std::min(ct[idx], ct[codec.with_digit(idx, vpos, 1)]);
            } else {
              cost = kInf;  // an active fanin forces the OR in and witnessed
            }
          } else {
            if (tail_in) {
              cost = ct[idx];
            } else if (dw == 2) {
              cost = std::min(ct[idx], ct[codec.with_digit(idx, vpos, 1)]);
            } else {
              cost = kInf;  // silent fanin kills an active AND, or must be
                            // recorded as its witness
            }
          }
          table[idx] = cost;
        }
        release(node.child1);
        break;
      }
      case NiceKind::Join: {
        const std::vector<int32_t>& c1 = tables[node.child1];
        const std::vector<int32_t>& c2 = tables[node.child2];
        const int npos = static_cast<int>(codec.verts.size());
        // Witness digits may come from either side; other digits must
        // agree.  Walks all (parent, left, right) index triples.
        std::function<void(int, int64_t, int64_t, int64_t)> descend =
            [&](int pos, int64_t ip, int64_t i1, int64_t i2) {
              if (pos == npos) {
                const int32_t a = c1[i1];
                const int32_t b = c2[i2];
                if (a >= kInf || b >= kInf) return;
                const int32_t merged =
                    a + b - gates_in_state(c, codec, ip);
                table[ip] = std::min(table[ip], merged);
                return;
              }
              const int64_t pl = codec.place[pos];
              const int radix = codec.radix[pos];
              for (int d = 0; d < radix; ++d) {
                const int64_t jp = ip + d * pl;
                if (d == 2) {
                  descend(pos + 1, jp, i1 + 2 * pl, i2 + 1 * pl);
                  descend(pos + 1, jp, i1 + 1 * pl, i2 + 2 * pl);
                  descend(pos + 1, jp, i1 + 2 * pl, i2 + 2 * pl);
                } else {
                  descend(pos + 1, jp, i1 + d * pl, i2 + d * pl);
                }
              }
            };
        descend(0, 0, 0, 0);
        release(node.child1);
        release(node.child2);
        break;
      }
    }
  }
};

}  // namespace

DpResult dp_solve(const Circuit& circuit, const NiceDecomposition& nice,
                  const DpOptions& opts) {
  if (!circuit.finalized) throw Error("circuit not finalized");
  audit_nice(nice, circuit);

  Solver solver(circuit, nice, opts.want_witness);
  const std::vector<int> order = nice_postorder(nice);
  DpResult result;
  for (int id : order) {
    solver.compute(id);
    const int64_t states = solver.codecs[id].states;
    result.stats.max_states = std::max(result.stats.max_states, states);
    result.stats.total_states += states;
  }
  result.stats.nodes = static_cast<int>(nice.nodes.size());
  result.stats.width = nice.width();

  // Root bag is {output}: the answer sits at "in S, witnessed" for an OR
  // output and at "in S" for an AND output.
  const int64_t answer_idx =
      circuit.kind(circuit.output) == GateKind::And ? 0 : 2;
  const int32_t best = solver.tables[nice.root][answer_idx];
  if (best >= kInf) {
    throw Error("no feasible root state; circuit violates its invariants");
  }
  result.min_ec = best;

  if (opts.want_witness) {
    Assignment x(circuit.num_inputs, false);
    std::vector<uint8_t> seen(circuit.num_inputs, 0);

    // Walk optimal choices downward; at the forget node of each input the
    // chosen digit is its value.
    std::function<void(int, int64_t)> walk = [&](int id, int64_t idx) {
      const NiceNode& node = nice.nodes[id];
      const Codec& codec = solver.codecs[id];
      const int32_t cost = solver.tables[id][idx];
      switch (node.kind) {
        case NiceKind::Leaf:
          return;
        case NiceKind::IntroduceVertex:
          walk(node.child1, codec.drop(idx, codec.pos_of(node.vertex)));
          return;
        case NiceKind::Forget: {
          const Codec& child = solver.codecs[node.child1];
          const int pos = child.pos_of(node.vertex);
          const bool is_input = circuit.is_input(node.vertex);
          int candidates[2];
          if (is_input) {
            candidates[0] = 0;
            candidates[1] = 1;
          } else {
            candidates[0] = 2;
            candidates[1] = 0;
          }
          for (int d : candidates) {
            const int64_t cidx = child.lift(idx, pos, d);
            if (solver.tables[node.child1][cidx] == cost) {
              if (is_input) {
                x[node.vertex] = d == 1;
                seen[node.vertex] = 1;
              }
              walk(node.child1, cidx);
              return;
            }
          }
          throw Error("witness walk lost at a forget node");
        }
        case NiceKind::IntroduceEdge: {
          if (solver.tables[node.child1][idx] == cost) {
            walk(node.child1, idx);
            return;
          }
          const int vpos = codec.pos_of(node.edge_head);
          const int64_t reduced = codec.with_digit(idx, vpos, 1);
          if (codec.digit(idx, vpos) == 2 &&
              solver.tables[node.child1][reduced] == cost) {
            walk(node.child1, reduced);
            return;
          }
          throw Error("witness walk lost at an introduce-edge node");
        }
        case NiceKind::Join: {
          const std::vector<int32_t>& c1 = solver.tables[node.child1];
          const std::vector<int32_t>& c2 = solver.tables[node.child2];
          const int npos = static_cast<int>(codec.verts.size());
          const int32_t want =
              cost + gates_in_state(circuit, codec, idx);
          std::function<bool(int, int64_t, int64_t)> split =
              [&](int pos, int64_t i1, int64_t i2) -> bool {
            if (pos == npos) {
              if (c1[i1] >= kInf || c2[i2] >= kInf) return false;
              if (c1[i1] + c2[i2] != want) return false;
              walk(node.child1, i1);
              walk(node.child2, i2);
              return true;
            }
            const int64_t pl = codec.place[pos];
            const int d = codec.digit(idx, pos);
            if (d == 2) {
              return split(pos + 1, i1 + 2 * pl, i2 + 1 * pl) ||
                     split(pos + 1, i1 + 1 * pl, i2 + 2 * pl) ||
                     split(pos + 1, i1 + 2 * pl, i2 + 2 * pl);
            }
            return split(pos + 1, i1 + d * pl, i2 + d * pl);
          };
          if (!split(0, 0, 0)) {
            throw Error("witness walk lost at a join node");
          }
          return;
        }
      }
    };
    walk(nice.root, answer_idx);

    for (NodeId v = 0; v < circuit.num_inputs; ++v) {
      if (!seen[v]) {
        throw Error("witness walk missed input " + circuit.name(v));
      }
    }
    EnergyReport check = evaluate_report(circuit, x);
    if (!check.satisfied || check.ec != result.min_ec) {
      throw Error("reconstructed witness does not reproduce the optimum");
    }
    result.witness = std::move(x);
  }
  return result;
}

bool decide_dp(const Circuit& circuit, int32_t k,
               const std::optional<TreeDecomposition>& td) {
  TreeDecomposition base = td ? *td : heuristic_decomposition(circuit);
  NiceDecomposition nice = make_extended_nice(base, circuit);
  DpResult result = dp_solve(circuit, nice);
  return result.min_ec <= k;
}

}  // namespace ecmin
