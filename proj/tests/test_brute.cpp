#include <doctest.h>

#include <algorithm>

#include "ecmin/brute.hpp"
#include "support/helpers.hpp"

using namespace ecmin;
using testsupport::build_circuit;
using testsupport::random_circuit;

namespace {
constexpr auto And = GateKind::And;
constexpr auto Or = GateKind::Or;
}  // namespace

TEST_SUITE("brute") {

TEST_CASE("single gates") {
  auto orc = build_circuit(2, {{Or, {0, 1}}});
  auto r = min_ec_brute(orc);
  CHECK(r.min_ec == 1);
  CHECK(r.witness == Assignment{false, true});  // lexicographically smallest
  CHECK(r.assignments_scanned == 4);
  CHECK(decide_brute(orc, 1));
  CHECK_FALSE(decide_brute(orc, 0));

  auto andc = build_circuit(2, {{And, {0, 1}}});
  auto ra = min_ec_brute(andc);
  CHECK(ra.min_ec == 1);
  CHECK(ra.witness == Assignment{true, true});
}

TEST_CASE("shared input forces three active gates") {
  // g1=OR(x1,x2), g2=OR(x2,x3), out=AND(g1,g2): x2 alone fires everything.
  auto c = build_circuit(3, {{Or, {0, 1}}, {Or, {1, 2}}, {And, {3, 4}}});
  auto r = min_ec_brute(c);
  CHECK(r.min_ec == 3);
  CHECK(r.witness == Assignment{false, true, false});
  CHECK(evaluate_report(c, *r.witness).ec == 3);
}

TEST_CASE("leak circuit optimum avoids the leak") {
  auto c = build_circuit(4, {{And, {0, 1}},
                             {Or, {2}},
                             {And, {5, 3}},
                             {Or, {4, 6}}});
  auto r = min_ec_brute(c);
  CHECK(r.min_ec == 2);  // fire g1 and the output only
  CHECK(r.witness == Assignment{true, true, false, false});
}

TEST_CASE("witness invariant and worst-case bound") {
  for (uint64_t seed = 300; seed < 340; ++seed) {
    auto c = random_circuit(seed, 8, 14);
    auto r = min_ec_brute(c);
    REQUIRE(r.min_ec.has_value());
    REQUIRE(r.witness.has_value());
    auto rep = evaluate_report(c, *r.witness);
    CHECK(rep.satisfied);
    CHECK(rep.ec == *r.min_ec);
    CHECK(*r.min_ec <= ec_worst(c).ec);
    CHECK(r.assignments_scanned == (uint64_t{1} << c.num_inputs));
  }
}

TEST_CASE("cap early-exits with a usable witness") {
  auto c = build_circuit(3, {{Or, {0, 1}}, {Or, {1, 2}}, {And, {3, 4}}});
  BruteOptions opts;
  opts.cap = 3;
  auto r = min_ec_brute(c, opts);
  CHECK(r.capped);
  CHECK(r.min_ec == 3);
  CHECK(evaluate_report(c, *r.witness).ec == 3);
  CHECK(r.assignments_scanned < 8);

  opts.cap = 2;  // unattainable: never capped, full scan
  auto r2 = min_ec_brute(c, opts);
  CHECK_FALSE(r2.capped);
  CHECK(r2.min_ec == 3);
}

TEST_CASE("decision thresholds match the exact minimum") {
  for (uint64_t seed = 400; seed < 420; ++seed) {
    auto c = random_circuit(seed, 6, 10);
    auto min_ec = *min_ec_brute(c).min_ec;
    CHECK_FALSE(decide_brute(c, min_ec - 1));
    CHECK(decide_brute(c, min_ec));
    CHECK(decide_brute(c, min_ec + 1));
  }
}

TEST_CASE("input limit") {
  std::vector<NodeId> fanin(25);
  for (int i = 0; i < 25; ++i) fanin[i] = i;
  auto c = build_circuit(25, {{Or, fanin}});
  CHECK_THROWS_AS(min_ec_brute(c), TooManyInputs);
  BruteOptions opts;
  opts.input_limit = 25;
  CHECK(min_ec_brute(c, opts).min_ec == 1);
}

TEST_CASE("partitioned scans merge associatively to the full result") {
  for (uint64_t seed = 500; seed < 516; ++seed) {
    auto c = random_circuit(seed, 7, 12);
    auto full = min_ec_brute(c);
    const uint64_t total = uint64_t{1} << c.num_inputs;
    // Never pass end = 0 (it means "scan everything"), so blocks of a
    // two-assignment space degenerate to an empty third block instead.
    const uint64_t third = std::max<uint64_t>(1, total / 3);
    const uint64_t mid = std::min(2 * third, total);

    auto part = [&](uint64_t b, uint64_t e) {
      BruteOptions o;
      o.begin = b;
      o.end = e;
      return min_ec_brute(c, o);
    };
    auto a = part(0, third);
    auto b = part(third, mid);
    auto d = part(mid, total);

    auto left = merge_brute(merge_brute(a, b), d);
    auto right = merge_brute(a, merge_brute(b, d));
    CHECK(left.min_ec == full.min_ec);
    CHECK(left.witness == full.witness);
    CHECK(right.min_ec == full.min_ec);
    CHECK(right.witness == full.witness);
    CHECK(left.assignments_scanned == total);
  }
}

TEST_CASE("merging capped results is rejected") {
  auto c = build_circuit(2, {{Or, {0, 1}}});
  BruteOptions opts;
  opts.cap = 1;
  auto capped = min_ec_brute(c, opts);
  REQUIRE(capped.capped);
  CHECK_THROWS_AS(merge_brute(capped, min_ec_brute(c)), Error);
}

}  // TEST_SUITE
