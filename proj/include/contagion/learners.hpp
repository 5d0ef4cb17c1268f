#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "contagion/oracle.hpp"
#include "contagion/records.hpp"

namespace contagion {

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

/// Shared learner configuration. delta_lb is the known lower bound on the
/// contagion parameter (a lower bound is enough for every decision rule
/// here); delta_fail is the admissible overall failure probability.
struct LearnerConfig {
  double delta_lb = 0.0;
  double delta_fail = 0.0;
  std::optional<std::uint32_t> rounds_override;
  double chernoff_constant = 32.0;

  void validate() const {
    if (!(delta_lb > 0.0) || !(delta_lb <= 1.0))
      throw std::invalid_argument("delta_lb must be in (0, 1]");
    if (!(delta_fail > 0.0) || !(delta_fail < 1.0))
      throw std::invalid_argument("delta_fail must be in (0, 1)");
    if (!(chernoff_constant > 0.0))
      throw std::invalid_argument("chernoff_constant must be positive");
  }
};

namespace detail {

inline std::uint32_t ceil_rounds(double value) {
  if (!(value >= 0.0) || !(value < 4e9))
    throw std::overflow_error("round count out of range");
  const double up = std::ceil(value);
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(up));
}

}  // namespace detail

/// Per-vertex round count for the tree learner. The analysis needs, for each
/// ordered triple, one round separating v from w; separation probability on
/// a tree is at least delta^2, and a union bound over at most 3n^3 events
/// gives m = ceil(ln(3 n^3 / delta_fail) / delta_lb^2).
inline std::uint32_t rounds_for_tree(VertexId n,
                                         const LearnerConfig& config) {
  config.validate();
  if (config.rounds_override) return *config.rounds_override;
  const double nn = static_cast<double>(n);
  const double events = 3.0 * nn * nn * nn / config.delta_fail;
  return detail::ceil_rounds(std::log(events) /
                             (config.delta_lb * config.delta_lb));
}

/// Per-vertex round count for the large-girth learner:
/// m = ceil(c * ln(3 n^3 / delta_fail) / delta_lb^4), default c = 32.
///
/// The reject side must push |R_u(v) \ R_u(w)| below the 3 delta^2 m / 8
/// threshold from a mean of at most delta^2 m / 4, a deviation of
/// delta^2 m / 8; the additive Chernoff-Hoeffding bound turns that into
/// exp(-m delta^4 / 32) per event, and a union over at most 3 n^3 ordered
/// triples fixes m. The delta^4 (rather than delta^2) reflects this additive
/// route; override the constant or m itself through the config if a tighter
/// multiplicative analysis is preferred.
inline std::uint32_t rounds_for_large_girth(VertexId n,
                                            const LearnerConfig& config) {
  config.validate();
  if (config.rounds_override) return *config.rounds_override;
  const double nn = static_cast<double>(n);
  const double events = 3.0 * nn * nn * nn / config.delta_fail;
  const double d2 = config.delta_lb * config.delta_lb;
  return detail::ceil_rounds(config.chernoff_constant * std::log(events) /
                             (d2 * d2));
}

/// Per-vertex round count for the bounded-degree learner:
/// m = ceil(ln(n^2 / delta_fail) / delta_lb^(2 max_deg)).
inline std::uint32_t rounds_for_bounded_degree(VertexId n,
                                               const LearnerConfig& config,
                                               std::uint32_t max_deg) {
  config.validate();
  if (max_deg < 1) throw std::invalid_argument("max_deg must be >= 1");
  if (config.rounds_override) return *config.rounds_override;
  const double nn = static_cast<double>(n);
  const double events = nn * nn / config.delta_fail;
  return detail::ceil_rounds(
      std::log(events) /
      std::pow(config.delta_lb, 2.0 * static_cast<double>(max_deg)));
}

/// Acceptance threshold of the large-girth decision rule: 3 delta^2 m / 8.
inline double large_girth_threshold(double delta_lb, std::uint32_t m) {
  return 3.0 * delta_lb * delta_lb * static_cast<double>(m) / 8.0;
}

// ---------------------------------------------------------------------------
// Decision rules. Each is a pure function of one seed vertex's RoundRecords,
// so collection can be distributed and decisions replayed offline.
// ---------------------------------------------------------------------------

/// Tree rule: v is adjacent to the seed u iff no third vertex w has
/// R_u(v) subset of R_u(w). Vertices with empty records are never declared
/// adjacent (an empty set is a subset of everything whenever some w exists;
/// requiring |R_u(v)| >= 1 also covers n = 2, where no w exists at all).
inline std::vector<VertexId> tree_rule_neighbors(const RoundRecords& records) {
  const VertexId n = records.vertex_count();
  const VertexId u = records.seed();
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v) {
    if (v == u || records.count(v) == 0) continue;
    bool adjacent = true;
    for (VertexId w = 0; w < n && adjacent; ++w) {
      if (w == u || w == v) continue;
      if (records.subset_of(v, w)) adjacent = false;
    }
    if (adjacent) out.push_back(v);
  }
  return out;
}

/// Large-girth rule: v is adjacent to the seed u iff for every third vertex
/// w, |R_u(v) \ R_u(w)| strictly exceeds 3 delta^2 m / 8. With n = 2 there
/// is no witness w; the absent witness is treated as an empty record, i.e.
/// the requirement degenerates to |R_u(v)| > threshold.
inline std::vector<VertexId> large_girth_neighbors(const RoundRecords& records,
                                                   double delta_lb) {
  const VertexId n = records.vertex_count();
  const VertexId u = records.seed();
  const double threshold = large_girth_threshold(delta_lb, records.rounds());
  std::vector<VertexId> out;
  for (VertexId v = 0; v < n; ++v) {
    if (v == u) continue;
    bool adjacent = n > 2 || records.count(v) > threshold;
    for (VertexId w = 0; w < n && adjacent; ++w) {
      if (w == u || w == v) continue;
      if (!(records.count_difference(v, w) > threshold)) adjacent = false;
    }
    if (adjacent) out.push_back(v);
  }
  return out;
}

namespace detail {

inline void insert_pair(std::set<std::pair<VertexId, VertexId>>& edges,
                        VertexId a, VertexId b) {
  edges.emplace(std::min(a, b), std::max(a, b));
}

inline EdgeList to_edge_list(const std::set<std::pair<VertexId, VertexId>>& s) {
  return EdgeList(s.begin(), s.end());
}

}  // namespace detail

/// Baseline tree learner. Guarantee scope: the hidden graph is a tree. Uses
/// m single-seed rounds per vertex and the subset rejection rule; pairs may
/// be admitted from either endpoint's perspective and the result is the
/// deduplicated union.
inline EdgeList learn_tree(QueryOracle& oracle,
                               const LearnerConfig& config) {
  config.validate();
  const VertexId n = oracle.vertex_count();
  const std::uint32_t m = rounds_for_tree(n, config);
  std::set<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    const RoundRecords records = collect_rounds(oracle, u, m);
    for (VertexId v : tree_rule_neighbors(records)) detail::insert_pair(edges, u, v);
  }
  return detail::to_edge_list(edges);
}

/// Large-girth learner. Guarantee scope: 1 <= rho < 1/(1-delta) and girth at
/// least the min_girth_required bound; the operation itself runs on any
/// graph. Total query cost is exactly n * m.
inline EdgeList learn_large_girth(QueryOracle& oracle,
                                  const LearnerConfig& config) {
  config.validate();
  const VertexId n = oracle.vertex_count();
  const std::uint32_t m = rounds_for_large_girth(n, config);
  std::set<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    const RoundRecords records = collect_rounds(oracle, u, m);
    for (VertexId v : large_girth_neighbors(records, config.delta_lb))
      detail::insert_pair(edges, u, v);
  }
  return detail::to_edge_list(edges);
}

/// Bounded-degree learner: (u,v) is an edge iff some round with seed {u}
/// infected exactly {u, v}. One-sided by construction — a two-element
/// infected set {u, v} forces the edge (u, v) to exist and to have fired,
/// so the output never contains a non-edge and precision is always 1.
inline EdgeList learn_bounded_degree(QueryOracle& oracle,
                                     const LearnerConfig& config,
                                     std::uint32_t max_deg) {
  config.validate();
  const VertexId n = oracle.vertex_count();
  const std::uint32_t m = rounds_for_bounded_degree(n, config, max_deg);
  std::set<std::pair<VertexId, VertexId>> edges;
  for (VertexId u = 0; u < n; ++u) {
    oracle.record_queries(m);
    for (std::uint32_t i = 0; i < m; ++i) {
      const auto infected = oracle.query_at({u}, u, i);
      if (infected.size() != 2) continue;
      const VertexId other = infected[0] == u ? infected[1] : infected[0];
      detail::insert_pair(edges, u, other);
    }
  }
  return detail::to_edge_list(edges);
}

}  // namespace contagion
