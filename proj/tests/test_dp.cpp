#include <doctest.h>

#include "ecmin/brute.hpp"
#include "ecmin/dp.hpp"
#include "ecmin/treewidth.hpp"
#include "support/helpers.hpp"

using namespace ecmin;
using testsupport::build_circuit;
using testsupport::grid_circuit;
using testsupport::random_circuit;

namespace {
constexpr auto And = GateKind::And;
constexpr auto Or = GateKind::Or;

DpResult run_dp(const Circuit& c, const TreeDecomposition& td,
                const DpOptions& opts = {.want_witness = true}) {
  return dp_solve(c, make_extended_nice(td, c), opts);
}
}  // namespace

TEST_SUITE("dp") {

TEST_CASE("frozen optima on hand-built circuits") {
  // AND output: both inputs must rise, one gate pays.
  auto a = build_circuit(2, {{And, {0, 1}}});
  auto ra = run_dp(a, single_bag_decomposition(a));
  CHECK(ra.min_ec == 1);
  REQUIRE(ra.witness.has_value());
  CHECK(*ra.witness == Assignment{true, true});

  // Leak: g1 satisfies the output but g2 can stay silent.
  auto leak = build_circuit(
      4, {{And, {0, 1}}, {Or, {2}}, {And, {5, 3}}, {Or, {4, 6}}});
  auto rl = run_dp(leak, heuristic_decomposition(leak));
  CHECK(rl.min_ec == 2);
  REQUIRE(rl.witness.has_value());
  CHECK(evaluate_report(leak, *rl.witness).ec == 2);

  // Shared input: x2 alone lights both ORs, three gates total.
  auto shared = build_circuit(3, {{Or, {0, 1}}, {Or, {1, 2}}, {And, {3, 4}}});
  CHECK(run_dp(shared, heuristic_decomposition(shared)).min_ec == 3);

  // Three ORs on one AND: every OR plus the output must fire.
  auto wide =
      build_circuit(4, {{Or, {0, 1}}, {Or, {1, 2}}, {Or, {1, 3}}, {And, {4, 5, 6}}});
  CHECK(run_dp(wide, heuristic_decomposition(wide)).min_ec == 4);
}

TEST_CASE("dp agrees with brute force on random circuits") {
  for (uint64_t seed = 2000; seed < 2060; ++seed) {
    auto c = random_circuit(seed);
    int32_t expect = *min_ec_brute(c).min_ec;
    CAPTURE(seed);

    auto heur = run_dp(c, heuristic_decomposition(c));
    CHECK(heur.min_ec == expect);
    REQUIRE(heur.witness.has_value());
    CHECK(evaluate_report(c, *heur.witness).ec == expect);
  }
}

TEST_CASE("single-bag and heuristic decompositions give one answer") {
  // The single-bag table is 3^nodes entries, so keep the circuits small.
  for (uint64_t seed = 2060; seed < 2090; ++seed) {
    auto c = random_circuit(seed, 3, 6);
    int32_t expect = *min_ec_brute(c).min_ec;
    CAPTURE(seed);

    auto single = run_dp(c, single_bag_decomposition(c));
    CHECK(single.min_ec == expect);
    REQUIRE(single.witness.has_value());
    CHECK(evaluate_report(c, *single.witness).ec == expect);
    CHECK(run_dp(c, heuristic_decomposition(c)).min_ec == expect);
  }
}

TEST_CASE("long narrow circuits stay exact") {
  for (int columns : {20, 40}) {
    auto c = grid_circuit(columns);
    int32_t expect = *min_ec_brute(c).min_ec;  // 5 inputs, 32 evaluations
    auto got = run_dp(c, heuristic_decomposition(c));
    CHECK(got.min_ec == expect);
    REQUIRE(got.witness.has_value());
    CHECK(evaluate_report(c, *got.witness).ec == expect);
  }
}

TEST_CASE("decision wrapper honours thresholds and explicit decompositions") {
  for (uint64_t seed = 2100; seed < 2120; ++seed) {
    auto c = random_circuit(seed, 4, 8);
    int32_t best = *min_ec_brute(c).min_ec;
    CAPTURE(seed);
    CHECK(decide_dp(c, best));
    CHECK(decide_dp(c, c.num_gates()));
    CHECK_FALSE(decide_dp(c, best - 1));
    CHECK(decide_dp(c, best, single_bag_decomposition(c)));
    CHECK_FALSE(decide_dp(c, best - 1, single_bag_decomposition(c)));
  }
}

TEST_CASE("stats describe the table sizes") {
  auto c = grid_circuit(6);
  auto nice = make_extended_nice(heuristic_decomposition(c), c);
  auto r = dp_solve(c, nice, {.want_witness = false, .want_stats = true});
  CHECK(r.min_ec == *min_ec_brute(c).min_ec);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.stats.nodes == static_cast<int>(nice.nodes.size()));
  CHECK(r.stats.width == nice.width());
  int64_t cap = 1;
  for (int i = 0; i <= r.stats.width; ++i) cap *= 3;
  CHECK(r.stats.max_states >= 1);
  CHECK(r.stats.max_states <= cap);
  CHECK(r.stats.total_states >= r.stats.max_states);
}

TEST_CASE("foreign decompositions are rejected") {
  auto c = build_circuit(2, {{And, {0, 1}}});
  auto other = build_circuit(2, {{Or, {0, 1}}, {And, {0, 2}}});
  auto nice = make_extended_nice(single_bag_decomposition(c), c);
  CHECK_THROWS_AS(dp_solve(other, nice), DecompositionMismatch);
}

}  // TEST_SUITE
