#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecmin/circuit.hpp"
#include "ecmin/planar.hpp"

namespace ecmin {

// Vertex-colored undirected simple graph; colors are 1..num_colors.
struct ColoredGraph {
  int n = 0;
  int num_colors = 0;
  std::vector<std::pair<int, int>> edges;  // u < v
  std::vector<int> color;                  // per vertex
  std::vector<std::string> names;          // optional; defaults to 1-based ids
};

struct GeneratedInstance {
  Circuit circuit;
  int32_t k = 0;               // decision threshold encoding the question
  uint64_t source_digest = 0;  // FNV-1a over a canonical form of the source
  int32_t parameter = 0;       // cover size c' or color count c
};

// Reduction from vertex cover on an embedded planar graph.  The instance
// asks for a cover of size <= cover of g itself; internally the graph is
// subdivided twice (cover size shifts by |E(g)|) and one gate gadget is
// emitted per vertex, edge and internal face of the subdivided graph.
// The answer to (circuit, k) equals vc(g) <= cover.
GeneratedInstance gen_from_planar_vc(const EmbeddedPlanarGraph& g, int cover);

// Reduction from multicolored clique.  Requires: every color class
// non-empty, no edge inside a class, and every vertex adjacent to at least
// one vertex of every other class (throws PrecolorViolation otherwise).
// The answer to (circuit, k) with k = 2c^2 + 2c + 1 equals "q has a clique
// with one vertex per color".
GeneratedInstance gen_from_mcq(const ColoredGraph& q);

// True iff q contains a clique with exactly one vertex of each color.
// Exact search over one vertex per class; throws TooLarge above 15 vertices.
bool mcq_brute(const ColoredGraph& q);

// FNV-1a 64-bit digest of a byte string; used for provenance records.
uint64_t fnv1a64(const std::string& bytes);

// Canonical single-line forms digested into GeneratedInstance.source_digest.
std::string canonical_form(const EmbeddedPlanarGraph& g);
std::string canonical_form(const ColoredGraph& q);

}  // namespace ecmin
