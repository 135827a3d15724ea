#include "ecmin/brute.hpp"

#include <algorithm>

namespace ecmin {

BruteResult min_ec_brute(const Circuit& circuit, const BruteOptions& opts) {
  if (!circuit.finalized) throw Error("circuit not finalized");
  if (circuit.num_inputs > opts.input_limit) {
    throw TooManyInputs("circuit has " + std::to_string(circuit.num_inputs) +
                        " inputs, limit is " + std::to_string(opts.input_limit));
  }
  const int ni = circuit.num_inputs;
  const uint64_t space = uint64_t{1} << ni;
  uint64_t begin = opts.begin;
  uint64_t end = opts.end == 0 ? space : opts.end;
  if (begin > end || end > space) throw Error("bad brute scan range");

  BruteResult result;
  Assignment x(ni, false);
  std::vector<uint8_t> value(circuit.num_nodes(), 0);
  uint64_t prev_code = 0;
  bool first = true;

  for (uint64_t pos = begin; pos < end; ++pos) {
    const uint64_t code = pos ^ (pos >> 1);  // Gray code: one flip per step
    if (first) {
      for (int i = 0; i < ni; ++i) x[i] = (code >> i) & 1;
      first = false;
    } else {
      const uint64_t diff = code ^ prev_code;
      const int bit = __builtin_ctzll(diff);
      x[bit] = !x[bit];
    }
    prev_code = code;

    // Full re-evaluation; only the scratch buffer is reused.
    for (int i = 0; i < ni; ++i) value[i] = x[i] ? 1 : 0;
    int32_t ec = 0;
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
      ec += out;
    }
    ++result.assignments_scanned;
    if (!value[circuit.output]) continue;

    if (!result.min_ec || ec < *result.min_ec ||
        (ec == *result.min_ec && x < *result.witness)) {
      result.min_ec = ec;
      result.witness = x;
    }
    if (opts.cap && ec <= *opts.cap) {
      result.capped = true;
      break;
    }
  }
  return result;
}

bool decide_brute(const Circuit& circuit, int32_t k, const BruteOptions& opts) {
  BruteOptions capped = opts;
  capped.cap = k;
  BruteResult r = min_ec_brute(circuit, capped);
  return r.min_ec && *r.min_ec <= k;
}

BruteResult merge_brute(const BruteResult& a, const BruteResult& b) {
  if (a.capped || b.capped) throw Error("merge_brute requires cap-free scans");
  BruteResult out;
  out.assignments_scanned = a.assignments_scanned + b.assignments_scanned;
  const BruteResult* pick = nullptr;
  if (!a.min_ec) {
    pick = &b;
  } else if (!b.min_ec) {
    pick = &a;
  } else if (*a.min_ec != *b.min_ec) {
    pick = *a.min_ec < *b.min_ec ? &a : &b;
  } else {
    pick = *a.witness < *b.witness ? &a : &b;
  }
  out.min_ec = pick->min_ec;
  out.witness = pick->witness;
  return out;
}

}  // namespace ecmin
