#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "contagion/cascade.hpp"
#include "contagion/graph.hpp"
#include "contagion/random.hpp"

namespace contagion {

class query_budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The active-query boundary. Learners submit seed sets and receive only the
/// infected set of one fresh contagion round; the oracle owns the hidden
/// graph, the randomness, and the query budget.
///
/// Learners see the vertex count and a lower bound on the contagion
/// parameter, never the edge set and never alpha/beta individually.
class QueryOracle {
 public:
  QueryOracle(ContagionGraph hidden, RandomStream stream,
              std::optional<std::uint64_t> budget = std::nullopt,
              std::optional<double> delta_lower_bound = std::nullopt)
      : hidden_(std::move(hidden)),
        stream_(stream),
        budget_(budget),
        delta_lb_(delta_lower_bound.value_or(hidden_.delta())) {
    if (!(delta_lb_ > 0.0) || delta_lb_ > hidden_.delta())
      throw std::invalid_argument(
          "delta lower bound must lie in (0, true contagion parameter]");
  }

  VertexId vertex_count() const noexcept { return hidden_.vertex_count(); }
  double delta_lower_bound() const noexcept { return delta_lb_; }
  std::uint64_t queries_used() const noexcept { return used_; }
  std::optional<std::uint64_t> budget() const noexcept { return budget_; }

  /// One fresh ad-hoc query. Fails (budget untouched) when the budget is
  /// exhausted; query complexity is the headline resource, so exhaustion is
  /// an error, never silent truncation.
  std::vector<VertexId> query(const std::vector<VertexId>& seeds) {
    if (budget_ && used_ >= *budget_)
      throw query_budget_error("query budget exhausted");
    auto rng = stream_.substream("oracle-query", used_);
    auto infected = simulate_cascade(hidden_, seeds, rng).infected;
    ++used_;
    return infected;
  }

  /// Split form for coordinated use: the response is a pure function of
  /// (seed set, seed vertex, round), so callers may evaluate rounds in any
  /// order or in parallel and merge the accounting with record_queries().
  std::vector<VertexId> query_at(const std::vector<VertexId>& seeds,
                                 VertexId seed_vertex,
                                 std::uint64_t round) const {
    auto rng = stream_.substream("oracle-round", seed_vertex, round);
    return simulate_cascade(hidden_, seeds, rng).infected;
  }

  /// Reserve (and count) k queries for coordinated rounds. Throws without
  /// mutating when the budget cannot cover them.
  void record_queries(std::uint64_t k) {
    if (budget_ && used_ + k > *budget_)
      throw query_budget_error("query budget exhausted");
    used_ += k;
  }

 private:
  ContagionGraph hidden_;
  RandomStream stream_;
  std::uint64_t used_ = 0;
  std::optional<std::uint64_t> budget_;
  double delta_lb_;
};

}  // namespace contagion
