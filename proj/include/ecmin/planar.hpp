#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ecmin/errors.hpp"

namespace ecmin {

// Undirected simple graph; vertices 0..n-1, edges stored with u < v.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Connected planar graph with a combinatorial embedding: every vertex lists
// its neighbors in clockwise order.  One dart (outer_tail, outer_head) marks
// the external face.
struct EmbeddedPlanarGraph {
  std::vector<std::string> names;            // vertex index -> name
  std::vector<std::vector<int>> rotation;    // clockwise neighbor lists
  int outer_tail = -1;
  int outer_head = -1;

  int num_vertices() const { return static_cast<int>(rotation.size()); }
  int num_edges() const;
  std::vector<std::pair<int, int>> edge_list() const;  // u < v, sorted
};

// Faces obtained by tracing the rotation system, plus the dual graph.
struct FaceStructure {
  // face -> darts (u, v) on its boundary, in traversal order.
  std::vector<std::vector<std::pair<int, int>>> faces;
  int external_face = -1;  // face containing the outer dart
  // face -> boundary edge ids (into edge_list()), deduplicated, sorted.
  std::vector<std::vector<int>> boundary_edges;
  // edge id -> the one or two faces it borders (bridge edges border one).
  std::vector<std::vector<int>> edge_faces;
  // dual adjacency: face -> (neighbor face, shared edge id), one entry per
  // shared edge, sorted by edge id.
  std::vector<std::vector<std::pair<int, int>>> dual;

  int num_faces() const { return static_cast<int>(faces.size()); }
};

// Checks rotation symmetry, simplicity and the outer dart, traces all faces
// and verifies Euler's formula V - E + F = 2 (which also certifies
// connectivity).  Throws NotAnEmbedding otherwise.
FaceStructure trace_faces(const EmbeddedPlanarGraph& g);

// Replaces every edge {a, b} by a path a - x - y - b of two fresh degree-2
// vertices, preserving the embedding.  Face boundaries triple in length, so
// any two adjacent faces of the result share an edge between two subdivision
// vertices.
EmbeddedPlanarGraph subdivide_twice(const EmbeddedPlanarGraph& g);

SimpleGraph to_simple_graph(const EmbeddedPlanarGraph& g);

// True iff g has a vertex cover of size <= c.  Exact branching search,
// intended as a cross-check oracle; throws TooLarge above 20 vertices.
bool vc_brute(const SimpleGraph& g, int c);

}  // namespace ecmin
