#include <doctest.h>

#include <algorithm>

#include "ecmin/planar.hpp"
#include "support/helpers.hpp"

using namespace ecmin;
using testsupport::load_pg;

namespace {

EmbeddedPlanarGraph triangle_graph() {
  EmbeddedPlanarGraph g;
  g.names = {"A", "B", "C"};
  g.rotation = {{1, 2}, {2, 0}, {0, 1}};
  g.outer_tail = 0;
  g.outer_head = 1;
  return g;
}

int min_vc(const SimpleGraph& g) {
  for (int c = 0;; ++c) {
    if (vc_brute(g, c)) return c;
  }
}

}  // namespace

TEST_SUITE("planar") {

TEST_CASE("face counts of the fixtures satisfy Euler") {
  struct Expect {
    const char* file;
    int vertices, edges, faces, min_cover;
  };
  // F = E - V + 2 on a connected plane graph.
  const Expect table[] = {
      {"triangle.pg", 3, 3, 2, 2}, {"p4.pg", 4, 3, 1, 2},
      {"c5.pg", 5, 5, 2, 3},       {"k4.pg", 4, 6, 4, 3},
      {"w5.pg", 5, 8, 5, 3},
  };
  for (const auto& e : table) {
    CAPTURE(e.file);
    auto g = load_pg(e.file);
    CHECK(g.num_vertices() == e.vertices);
    CHECK(g.num_edges() == e.edges);
    auto fs = trace_faces(g);
    CHECK(fs.num_faces() == e.faces);
    CHECK(fs.external_face >= 0);
    CHECK(fs.external_face < fs.num_faces());
    CHECK(min_vc(to_simple_graph(g)) == e.min_cover);

    // Every edge borders one or two faces and dual rows sort by edge id.
    CHECK(fs.edge_faces.size() == static_cast<size_t>(e.edges));
    for (const auto& bordering : fs.edge_faces) {
      CHECK(bordering.size() >= 1);
      CHECK(bordering.size() <= 2);
    }
    for (const auto& row : fs.dual) {
      CHECK(std::is_sorted(row.begin(), row.end(),
                           [](auto a, auto b) { return a.second < b.second; }));
    }
  }
}

TEST_CASE("edge list is sorted with low endpoint first") {
  auto g = load_pg("k4.pg");
  auto edges = g.edge_list();
  CHECK(edges.size() == 6);
  CHECK(std::is_sorted(edges.begin(), edges.end()));
  for (auto [u, v] : edges) CHECK(u < v);
}

TEST_CASE("embedding checks reject malformed inputs") {
  SUBCASE("asymmetric rotation") {
    auto g = triangle_graph();
    g.rotation[1] = {2};  // B no longer lists A
    CHECK_THROWS_AS(trace_faces(g), NotAnEmbedding);
  }
  SUBCASE("self loop") {
    auto g = triangle_graph();
    g.rotation[0] = {0, 1, 2};
    CHECK_THROWS_AS(trace_faces(g), NotAnEmbedding);
  }
  SUBCASE("repeated neighbor") {
    auto g = triangle_graph();
    g.rotation[0] = {1, 1, 2};
    CHECK_THROWS_AS(trace_faces(g), NotAnEmbedding);
  }
  SUBCASE("neighbor out of range") {
    auto g = triangle_graph();
    g.rotation[2] = {0, 1, 7};
    CHECK_THROWS_AS(trace_faces(g), NotAnEmbedding);
  }
  SUBCASE("outer dart is not an edge") {
    auto g = triangle_graph();
    g.rotation[0] = {1};
    g.rotation[1] = {0, 2};
    g.rotation[2] = {1};
    g.outer_tail = 0;
    g.outer_head = 2;
    CHECK_THROWS_AS(trace_faces(g), NotAnEmbedding);
  }
  SUBCASE("disconnected graph fails Euler") {
    EmbeddedPlanarGraph g;
    g.names = {"A", "B", "C", "D", "E", "F"};
    g.rotation = {{1, 2}, {2, 0}, {0, 1}, {4, 5}, {5, 3}, {3, 4}};
    g.outer_tail = 0;
    g.outer_head = 1;
    CHECK_THROWS_AS(trace_faces(g), NotAnEmbedding);
  }
  SUBCASE("no rotation of a nonplanar graph embeds") {
    EmbeddedPlanarGraph g;  // K5
    g.names = {"1", "2", "3", "4", "5"};
    g.rotation.resize(5);
    for (int u = 0; u < 5; ++u) {
      for (int v = 0; v < 5; ++v) {
        if (u != v) g.rotation[u].push_back(v);
      }
    }
    g.outer_tail = 0;
    g.outer_head = 1;
    CHECK_THROWS_AS(trace_faces(g), NotAnEmbedding);
  }
}

TEST_CASE("double subdivision keeps the embedding and shifts covers") {
  for (const char* file : {"triangle.pg", "p4.pg", "c5.pg", "k4.pg"}) {
    CAPTURE(file);
    auto g = load_pg(file);
    auto s = subdivide_twice(g);
    int n = g.num_vertices();
    int m = g.num_edges();
    CHECK(s.num_vertices() == n + 2 * m);
    CHECK(s.num_edges() == 3 * m);
    for (int v = n; v < s.num_vertices(); ++v) CHECK(s.rotation[v].size() == 2);
    auto fs = trace_faces(s);
    CHECK(fs.num_faces() == trace_faces(g).num_faces());

    // Subdividing an edge twice raises the minimum cover by exactly one.
    CHECK(min_vc(to_simple_graph(s)) == min_vc(to_simple_graph(g)) + m);

    // Adjacent faces share an edge between two subdivision vertices, the
    // attachment point used when wiring face gates.
    for (int f = 0; f < fs.num_faces(); ++f) {
      for (auto [nbr, first_edge] : fs.dual[f]) {
        bool found = false;
        for (auto [other, eid] : fs.dual[f]) {
          if (other != nbr) continue;
          auto [u, v] = s.edge_list()[eid];
          if (u >= n && v >= n) found = true;
        }
        CAPTURE(f);
        CAPTURE(nbr);
        CHECK(found);
        (void)first_edge;
      }
    }
  }
}

TEST_CASE("cover oracle rejects oversized graphs") {
  SimpleGraph g;
  g.n = 21;
  CHECK_THROWS_AS(vc_brute(g, 3), TooLarge);
  auto big = subdivide_twice(load_pg("w5.pg"));  // 21 vertices
  CHECK(big.num_vertices() == 21);
  CHECK_THROWS_AS(vc_brute(to_simple_graph(big), 11), TooLarge);
}

TEST_CASE("cover oracle frozen answers") {
  auto tri = to_simple_graph(load_pg("triangle.pg"));
  CHECK_FALSE(vc_brute(tri, 0));
  CHECK_FALSE(vc_brute(tri, 1));
  CHECK(vc_brute(tri, 2));
  CHECK(vc_brute(tri, 3));

  SimpleGraph empty;  // no edges: the empty cover works
  empty.n = 4;
  CHECK(vc_brute(empty, 0));
}

}  // TEST_SUITE
