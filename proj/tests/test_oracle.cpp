#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "contagion/oracle.hpp"
#include "support/test_oracles.hpp"

using namespace contagion;
using test_oracles::from_pairs;

TEST_CASE("query accounting") {
  QueryOracle oracle(from_pairs(3, {{0, 1}, {1, 2}}), RandomStream(1));
  CHECK(oracle.queries_used() == 0);
  for (int i = 1; i <= 5; ++i) {
    oracle.query({0});
    CHECK(oracle.queries_used() == static_cast<std::uint64_t>(i));
  }
}

TEST_CASE("empty seed set returns empty and still counts") {
  QueryOracle oracle(from_pairs(3, {{0, 1}, {1, 2}}), RandomStream(1));
  CHECK(oracle.query({}).empty());
  CHECK(oracle.queries_used() == 1);
}

TEST_CASE("isolated seed comes back alone") {
  QueryOracle oracle(from_pairs(3, {{0, 1}}), RandomStream(1));
  CHECK(oracle.query({2}) == std::vector<VertexId>{2});
}

TEST_CASE("responses always contain the seed set") {
  QueryOracle oracle(from_pairs(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}}),
                     RandomStream(9));
  for (int i = 0; i < 200; ++i) {
    const auto response = oracle.query({1, 4});
    CHECK(std::binary_search(response.begin(), response.end(), VertexId{1}));
    CHECK(std::binary_search(response.begin(), response.end(), VertexId{4}));
  }
}

TEST_CASE("budget exhaustion is an error and leaves the counter unchanged") {
  QueryOracle oracle(from_pairs(2, {{0, 1}}), RandomStream(1), 3);
  oracle.query({0});
  oracle.query({0});
  oracle.query({0});
  CHECK_THROWS_AS(oracle.query({0}), query_budget_error);
  CHECK(oracle.queries_used() == 3);
  CHECK_THROWS_AS(oracle.record_queries(1), query_budget_error);
  CHECK(oracle.queries_used() == 3);
}

TEST_CASE("invalid seeds are rejected") {
  QueryOracle oracle(from_pairs(2, {{0, 1}}), RandomStream(1));
  CHECK_THROWS_AS(oracle.query({2}), std::out_of_range);
}

TEST_CASE("single-edge infection frequency matches the edge probability") {
  QueryOracle oracle(ContagionGraph(2, {{0, 1, 0.3}}), RandomStream(17));
  const int trials = 100000;
  int hits = 0;
  for (int i = 0; i < trials; ++i) hits += oracle.query({0}).size() == 2;
  CHECK(static_cast<double>(hits) / trials ==
        Catch::Approx(0.3).margin(0.01));
}

TEST_CASE("coordinated queries are pure functions of their coordinates") {
  QueryOracle oracle(from_pairs(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5},
                                    {5, 6}, {6, 7}}),
                     RandomStream(5));
  const auto a = oracle.query_at({0}, 0, 12);
  const auto b = oracle.query_at({0}, 0, 12);
  CHECK(a == b);
  CHECK(oracle.queries_used() == 0);  // split form leaves accounting to caller
  oracle.record_queries(2);
  CHECK(oracle.queries_used() == 2);
}

TEST_CASE("delta lower bound exposure") {
  const ContagionGraph g(2, {{0, 1, 0.4}});
  CHECK(QueryOracle(g, RandomStream(1)).delta_lower_bound() ==
        Catch::Approx(0.4));
  CHECK(QueryOracle(g, RandomStream(1), std::nullopt, 0.25)
            .delta_lower_bound() == 0.25);
  // A "lower bound" above the true parameter is a configuration bug.
  CHECK_THROWS_AS(QueryOracle(g, RandomStream(1), std::nullopt, 0.6),
                  std::invalid_argument);
}
