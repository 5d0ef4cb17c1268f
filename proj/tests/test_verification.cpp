#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "contagion/generators.hpp"
#include "contagion/verification.hpp"
#include "support/test_oracles.hpp"

using namespace contagion;
using test_oracles::from_pairs;

namespace {

const RandomStream kStream(0x5eed);

ContagionGraph theta57(double p = 0.5) {
  GraphFamilySpec spec;
  spec.family = GraphFamily::generalized_theta;
  spec.path_lengths = {5, 7};
  spec.p_lo = spec.p_hi = p;
  return generate(spec);
}

ContagionGraph cycle31() {
  GraphFamilySpec spec;
  spec.family = GraphFamily::cycle;
  spec.n = 31;
  spec.p_lo = 0.45;
  spec.p_hi = 0.55;
  spec.seed = 8;
  return generate(spec);
}

}  // namespace

TEST_CASE("long-path check: theta hubs, sweep of chain lengths") {
  const auto g = theta57();
  // Hub-to-hub chains have length exactly 5 or 7; the bound must hold for
  // every k and the k = 6,7 cases are the interesting ones.
  for (std::uint32_t k : {2u, 5u, 6u, 7u, 8u}) {
    const auto report =
        check_long_path_bound(g, 0, 1, k, 20000, kStream, "theta(5,7)");
    INFO("k = " << k);
    CHECK(report.within_bound);
    CHECK(report.in_scope);
    if (k == 8) CHECK(report.successes == 0);  // no chain that long exists
  }
}

TEST_CASE("long-path check: adjacent pair with only the direct edge") {
  const ContagionGraph g(2, {{0, 1, 0.3}});
  const auto report = check_long_path_bound(g, 0, 1, 1, 50000, kStream, "edge");
  // Estimate is just the infection probability; the k = 1 bound dominates it.
  CHECK(report.estimate == Catch::Approx(0.3).margin(0.01));
  CHECK(report.bound >= report.estimate);
  CHECK(report.within_bound);
}

TEST_CASE("long-path check: disconnected pair never fires") {
  const auto g = from_pairs(4, {{0, 1}});
  const auto report = check_long_path_bound(g, 0, 3, 2, 2000, kStream, "split");
  CHECK(report.successes == 0);
  CHECK(report.estimate == 0.0);
  CHECK(report.within_bound);
}

TEST_CASE("long-path check rejects an infeasible growth condition") {
  // C_6 at constant p = 0.9: delta = 0.1, rho = 2^(1/3), rho (1-delta) > 1.
  GraphFamilySpec spec;
  spec.family = GraphFamily::cycle;
  spec.n = 6;
  spec.p_lo = spec.p_hi = 0.9;
  CHECK_THROWS_AS(
      check_long_path_bound(generate(spec), 0, 3, 2, 10, kStream),
      std::invalid_argument);
}

TEST_CASE("adjacent separation on certified C_31") {
  const auto g = cycle31();
  for (VertexId w : {2u, 16u}) {
    const auto report =
        check_adjacent_separation(g, 0, 1, w, 20000, kStream, "C_31");
    INFO("witness " << w);
    CHECK(report.in_scope);
    CHECK_FALSE(report.bound_is_upper);
    CHECK(report.bound == Catch::Approx(7.0 * g.delta() * g.delta() / 8.0));
    CHECK(report.within_bound);
  }
}

TEST_CASE("adjacent separation on a tree with the witness behind the target") {
  const auto g = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto report = check_adjacent_separation(g, 0, 1, 2, 20000, kStream,
                                                "path4");
  CHECK(report.within_bound);
  CHECK(report.in_scope);  // trees certify for any delta
}

TEST_CASE("adjacent separation outside guarantee scope still reports") {
  // C_4 at delta 0.5 fails the girth condition but the claim is still
  // measurable; the report carries the scope flag.
  GraphFamilySpec spec;
  spec.family = GraphFamily::cycle;
  spec.n = 4;
  spec.p_lo = spec.p_hi = 0.5;
  const auto report = check_adjacent_separation(generate(spec), 0, 1, 2,
                                                20000, kStream, "C_4");
  CHECK_FALSE(report.in_scope);
  CHECK(report.trials == 20000);
}

TEST_CASE("adjacent separation validates its preconditions") {
  const auto g = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_THROWS_AS(check_adjacent_separation(g, 0, 2, 1, 10, kStream),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_adjacent_separation(g, 0, 1, 1, 10, kStream),
                  std::invalid_argument);
}

TEST_CASE("near-pair separation on certified C_31") {
  const auto g = cycle31();
  const auto report = check_near_pair_separation(g, 0, 2, 20000, kStream,
                                                 "C_31");
  CHECK(report.witness_vertex == 1u);
  CHECK(report.bound == Catch::Approx(g.delta() * g.delta() / 4.0));
  CHECK(report.within_bound);
  CHECK(report.in_scope);
  // Reaching 2 without 1 requires the whole 29-edge detour: essentially 0.
  CHECK(report.estimate < 1e-3);
}

TEST_CASE("near-pair separation on a tree is impossible") {
  const auto g = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
  const auto report = check_near_pair_separation(g, 0, 2, 5000, kStream,
                                                 "path4");
  CHECK(report.successes == 0);  // v infected forces the path vertex w
  CHECK(report.within_bound);
}

TEST_CASE("near-pair separation validates its preconditions") {
  const auto g = cycle31();
  CHECK_THROWS_AS(check_near_pair_separation(g, 0, 1, 10, kStream),
                  std::invalid_argument);  // adjacent
  CHECK_THROWS_AS(check_near_pair_separation(g, 0, 15, 10, kStream),
                  std::invalid_argument);  // d = 15 >= g'/2
  // Non-unique shortest path: antipodal pair on an even cycle.
  GraphFamilySpec spec;
  spec.family = GraphFamily::cycle;
  spec.n = 8;
  spec.p_lo = spec.p_hi = 0.5;
  const auto c8 = generate(spec);
  CHECK_THROWS_AS(check_near_pair_separation(c8, 0, 4, 10, kStream),
                  std::invalid_argument);
}

TEST_CASE("far-pair infection on certified C_31") {
  const auto g = cycle31();
  // Antipodal pair: d = 15 against the even working girth 30.
  const auto report = check_far_pair_infection(g, 0, 15, 20000, kStream,
                                               "C_31");
  CHECK(report.within_bound);
  CHECK(report.in_scope);
  CHECK(report.bound == Catch::Approx(g.delta() * g.delta() / 4.0));
}

TEST_CASE("far-pair infection: unreachable target never fires") {
  const auto g = from_pairs(3, {{0, 1}});
  const auto report = check_far_pair_infection(g, 0, 2, 3000, kStream, "split");
  CHECK(report.successes == 0);
  CHECK(report.estimate == 0.0);
  CHECK(report.within_bound);
}

TEST_CASE("far-pair bound value at delta one half") {
  GraphFamilySpec spec;
  spec.family = GraphFamily::star_cycle_h;
  spec.n = 31;
  spec.p_lo = spec.p_hi = 0.5;
  const auto g = generate(spec);
  // Cycle companions 31 and 46 sit 15 apart, exactly half the working girth.
  const auto report = check_far_pair_infection(g, 31, 46, 1000, kStream,
                                               "H(31)");
  CHECK(report.bound == 0.0625);
}

TEST_CASE("far-pair infection validates its preconditions") {
  const auto g = cycle31();
  CHECK_THROWS_AS(check_far_pair_infection(g, 0, 14, 10, kStream),
                  std::invalid_argument);  // too close
  CHECK_THROWS_AS(check_far_pair_infection(g, 0, 1, 10, kStream),
                  std::invalid_argument);  // adjacent
  const auto tree = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK_THROWS_AS(check_far_pair_infection(tree, 0, 3, 10, kStream),
                  std::invalid_argument);  // finite distance, infinite girth
}

TEST_CASE("verdicts recompute from recorded fields") {
  const auto g = cycle31();
  const auto reports = {
      check_adjacent_separation(g, 0, 1, 2, 5000, kStream, "C_31"),
      check_near_pair_separation(g, 0, 2, 5000, kStream, "C_31"),
      check_far_pair_infection(g, 0, 15, 5000, kStream, "C_31"),
      check_long_path_bound(g, 0, 15, 15, 5000, kStream, "C_31")};
  for (const auto& report : reports) {
    CHECK(report.within_bound == recompute_verdict(report));
    CHECK(report.standard_error ==
          Catch::Approx(std::sqrt(report.estimate * (1.0 - report.estimate) /
                                  report.trials))
              .margin(1e-15));
    CHECK(report.estimate ==
          static_cast<double>(report.successes) / report.trials);
  }
}

TEST_CASE("report JSON carries every audit field") {
  const auto g = cycle31();
  const auto report =
      check_near_pair_separation(g, 0, 2, 1000, kStream, "C_31");
  const nlohmann::json j = report;
  CHECK(j.at("claim") == "near_pair_separation");
  CHECK(j.at("graph") == "C_31");
  CHECK(j.at("seed_vertex") == 0);
  CHECK(j.at("target_vertex") == 2);
  CHECK(j.at("witness_vertex") == 1);
  CHECK(j.at("trials") == 1000);
  CHECK(j.at("bound_side") == "upper");
  CHECK(j.contains("estimate"));
  CHECK(j.contains("standard_error"));
  CHECK(j.contains("within_bound"));
  CHECK(j.contains("in_scope"));

  const auto csv = bound_check_csv_row(report);
  CHECK(csv.find("near_pair_separation,C_31,0,2,1,") == 0);
}

TEST_CASE("half-girth bound consistency is exact arithmetic") {
  // Certified graphs: the long-path bound at ceil(g/2) is at most delta^2/4.
  GraphFamilySpec h31;
  h31.family = GraphFamily::star_cycle_h;
  h31.n = 31;
  h31.p_lo = h31.p_hi = 0.5;
  GraphFamilySpec c16;
  c16.family = GraphFamily::cycle;
  c16.n = 16;
  c16.p_lo = c16.p_hi = 0.5;
  GraphFamilySpec theta;
  theta.family = GraphFamily::generalized_theta;
  theta.path_lengths = {15, 17};
  theta.p_lo = theta.p_hi = 0.5;

  for (const auto& g : {cycle31(), generate(h31), generate(c16),
                        generate(theta)}) {
    const auto certification = certify_for_algorithm1(g);
    REQUIRE(certification.certified);
    CHECK(half_girth_bound_consistent(certification));
  }

  const auto tree = from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(half_girth_bound_consistent(certify_for_algorithm1(tree)));

  GraphFamilySpec c4;
  c4.family = GraphFamily::cycle;
  c4.n = 4;
  c4.p_lo = c4.p_hi = 0.5;
  CHECK_THROWS_AS(
      half_girth_bound_consistent(certify_for_algorithm1(generate(c4))),
      std::invalid_argument);
}
