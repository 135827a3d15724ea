#include <doctest.h>

#include <string>

#include "ecmin/io.hpp"
#include "support/helpers.hpp"

using namespace ecmin;
using testsupport::build_circuit;
using testsupport::data_path;
using testsupport::random_circuit;
using testsupport::read_file;

TEST_SUITE("io") {

TEST_CASE("parse a small circuit") {
  auto c = parse_circuit(
      "# comment line\n"
      "i a\n"
      "i b\n"
      "g both AND a b\n"
      "o both\n");
  CHECK(c.num_inputs == 2);
  CHECK(c.num_gates() == 1);
  CHECK(c.kind(2) == GateKind::And);
  CHECK(c.name(2) == "both");
  CHECK(c.output == 2);
  CHECK(evaluate_report(c, {true, true}).satisfied);
}

TEST_CASE("declarations may appear in any order") {
  auto c = parse_circuit(
      "o top\n"
      "g top OR lhs rhs\n"
      "g lhs AND a b   # trailing comment\n"
      "i b\n"
      "g rhs AND b\n"
      "i a\n");
  CHECK(c.num_inputs == 2);
  CHECK(c.num_gates() == 3);
  // Inputs keep declaration order; b was declared first.
  CHECK(c.name(0) == "b");
  CHECK(c.name(1) == "a");
  CHECK(evaluate_report(c, {true, false}).satisfied);
}

TEST_CASE("leak fixture parses and evaluates") {
  auto c = parse_circuit(read_file(data_path("leak.mc")));
  CHECK(c.num_inputs == 4);
  CHECK(c.num_gates() == 4);
  auto rep = evaluate_report(c, {true, true, true, false});
  CHECK(rep.satisfied);
  CHECK(rep.ec == 3);
}

TEST_CASE("serialization is canonical and reparses to the same circuit") {
  auto c = build_circuit(3, {{GateKind::Or, {0, 1}},
                             {GateKind::Or, {1, 2}},
                             {GateKind::And, {3, 4}}});
  const std::string expected =
      "# inputs=3 gates=3\n"
      "i x1\n"
      "i x2\n"
      "i x3\n"
      "g g1 OR x1 x2\n"
      "g g2 OR x2 x3\n"
      "g g3 AND g1 g2\n"
      "o g3\n";
  CHECK(serialize_circuit(c) == expected);

  auto back = parse_circuit(expected);
  CHECK(serialize_circuit(back) == expected);

  for (uint64_t seed = 1; seed <= 40; ++seed) {
    auto r = random_circuit(seed);
    const std::string text = serialize_circuit(r);
    auto r2 = parse_circuit(text);
    CHECK(serialize_circuit(r2) == text);
    CHECK(r2.num_inputs == r.num_inputs);
    CHECK(r2.num_gates() == r.num_gates());
    Assignment all_true(r.num_inputs, true);
    CHECK(evaluate_report(r2, all_true).ec == r.num_gates());
  }
}

TEST_CASE("syntax errors carry line and column") {
  SUBCASE("bad name") {
    try {
      parse_circuit("i a\ng 1bad OR a\no 1bad\n");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line == 2);
      CHECK(e.col == 3);
    }
  }
  SUBCASE("unknown directive") {
    try {
      parse_circuit("i a\nw whatever\n");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line == 2);
      CHECK(e.col == 1);
    }
  }
  SUBCASE("missing gate kind") {
    CHECK_THROWS_AS(parse_circuit("i a\ng g1\no g1\n"), SyntaxError);
  }
}

TEST_CASE("semantic errors") {
  CHECK_THROWS_AS(parse_circuit("i a\ni a\ng g1 OR a\no g1\n"), SemanticError);
  CHECK_THROWS_AS(parse_circuit("i a\ng g1 OR a ghost\no g1\n"),
                  SemanticError);
  CHECK_THROWS_AS(parse_circuit("i a\ng g1 NOT a\no g1\n"), SemanticError);
  CHECK_THROWS_AS(parse_circuit("i a\ng g1 OR a a\no g1\n"), SemanticError);
  CHECK_THROWS_AS(parse_circuit("i a\ng g1 OR a\n"), SemanticError);
  CHECK_THROWS_AS(parse_circuit("i a\ng g1 OR a\no g1\no g1\n"),
                  SemanticError);
  CHECK_THROWS_AS(parse_circuit("i a\ng g1 OR a\no a\n"), SemanticError);
  CHECK_THROWS_AS(parse_circuit("i a\ng a OR a\no a\n"), SemanticError);
}

TEST_CASE("tree decomposition files") {
  auto c = build_circuit(2, {{GateKind::And, {0, 1}}});
  SUBCASE("valid") {
    auto td = parse_td(
        "c a single bag\n"
        "s td 1 3 3\n"
        "b 1 1 2 3\n",
        c);
    CHECK(td.bags.size() == 1);
    CHECK(td.width() == 2);
  }
  SUBCASE("two bags") {
    auto td = parse_td(
        "s td 2 2 3\n"
        "b 1 1 3\n"
        "b 2 2 3\n"
        "1 2\n",
        c);
    CHECK(td.bags.size() == 2);
    CHECK(td.tree_edges.size() == 1);
  }
  SUBCASE("uncovered edge") {
    CHECK_THROWS_AS(parse_td("s td 2 2 3\nb 1 1\nb 2 2 3\n1 2\n", c),
                    CoverageViolation);
  }
  SUBCASE("vertex count mismatch") {
    CHECK_THROWS_AS(parse_td("s td 1 3 7\nb 1 1 2 3\n", c), SemanticError);
  }
  SUBCASE("missing header") {
    CHECK_THROWS_AS(parse_td("b 1 1 2 3\n", c), SyntaxError);
  }
}

TEST_CASE("planar graph files") {
  auto g = parse_pg(read_file(data_path("triangle.pg")));
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.names[g.outer_tail] == "A");
  CHECK(g.names[g.outer_head] == "B");

  CHECK_THROWS_AS(parse_pg("v A : B\nouter A B\n"),
                  SemanticError);  // B undeclared
  CHECK_THROWS_AS(parse_pg("v A : B\nv B : A\n"), SemanticError);  // no outer
  CHECK_THROWS_AS(parse_pg("v A B\nouter A B\n"), SyntaxError);  // missing ':'
}

TEST_CASE("colored graph files") {
  auto q = parse_col(read_file(data_path("two.col")));
  CHECK(q.n == 2);
  CHECK(q.num_colors == 2);
  CHECK(q.edges.size() == 1);
  CHECK(q.color[0] == 1);
  CHECK(q.color[1] == 2);

  CHECK_THROWS_AS(parse_col("p col 2 1\ne 1 2\nn 1 1\n"),
                  SemanticError);  // vertex 2 uncolored
  CHECK_THROWS_AS(parse_col("p col 2 2\ne 1 2\nn 1 1\nn 2 2\n"),
                  SemanticError);  // declared two edges, provided one
  CHECK_THROWS_AS(parse_col("e 1 2\n"), SyntaxError);  // missing header
}

TEST_CASE("dot export shows structure and activation") {
  auto c = parse_circuit(read_file(data_path("leak.mc")));
  const std::string plain = export_dot(c);
  CHECK(plain.find("digraph") != std::string::npos);
  CHECK(plain.find("box") != std::string::npos);      // inputs
  CHECK(plain.find("house") != std::string::npos);    // AND gates
  CHECK(plain.find("ellipse") != std::string::npos);  // OR gates
  CHECK(plain.find("i1") != std::string::npos);
  CHECK(plain.find("->") != std::string::npos);

  auto [act, rep] = evaluate(c, {true, true, true, false});
  const std::string lit = export_dot(c, act);
  CHECK(lit.find("filled") != std::string::npos);
  CHECK(lit.size() > plain.size());
}

}  // TEST_SUITE
