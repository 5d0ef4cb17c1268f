#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "contagion/graph.hpp"

namespace contagion {

/// Thrown when an exhaustive enumeration exceeds its expansion budget.
/// Exact path counts and the path growth rate are certification tools for
/// small graphs, not scale tools; the budget makes that explicit.
class enumeration_budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

/// Girth as a proper sum type: Finite(g >= 3) or Infinite for forests.
/// Never a sentinel integer — bound comparisons must treat forests as
/// trivially satisfying any girth requirement.
class GirthValue {
 public:
  static GirthValue finite(std::uint32_t g) { return GirthValue(g); }
  static GirthValue infinite() { return GirthValue(); }

  bool is_finite() const noexcept { return value_.has_value(); }

  std::uint32_t value() const {
    if (!value_) throw std::logic_error("girth is infinite");
    return *value_;
  }

  /// True when the girth is at least `bound` (always true for forests).
  bool satisfies_lower_bound(std::uint32_t bound) const noexcept {
    return !value_ || *value_ >= bound;
  }

  /// Even working value: g when even, g - 1 when odd, nothing for forests.
  /// The learning analysis assumes an even girth and takes g - 1 as the
  /// lower bound otherwise.
  std::optional<std::uint32_t> even_lower_bound() const noexcept {
    if (!value_) return std::nullopt;
    return *value_ % 2 == 0 ? *value_ : *value_ - 1;
  }

  friend bool operator==(const GirthValue&, const GirthValue&) = default;

 private:
  GirthValue() = default;
  explicit GirthValue(std::uint32_t g) : value_(g) {}
  std::optional<std::uint32_t> value_;
};

struct PathGrowthRate {
  double rho = 1.0;
  std::uint32_t witness_d = 0;     // length attaining the max (0 if no edges)
  std::uint64_t witness_count = 0; // p_{witness_d}
};

/// Hop count of a shortest path, or nullopt when v is unreachable from u.
inline std::optional<std::uint32_t> shortest_path_distance(
    const ContagionGraph& g, VertexId u, VertexId v) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) return 0;
  std::vector<std::uint32_t> dist(g.vertex_count(),
                                  std::numeric_limits<std::uint32_t>::max());
  std::queue<VertexId> queue;
  dist[u] = 0;
  queue.push(u);
  while (!queue.empty()) {
    const VertexId x = queue.front();
    queue.pop();
    for (const auto& nb : g.neighbors(x)) {
      if (dist[nb.id] != std::numeric_limits<std::uint32_t>::max()) continue;
      dist[nb.id] = dist[x] + 1;
      if (nb.id == v) return dist[nb.id];
      queue.push(nb.id);
    }
  }
  return std::nullopt;
}

/// Exact girth. BFS from every vertex; each non-tree edge (x, y) seen during
/// the BFS closes a walk of dist[x] + dist[y] + 1 edges which contains a
/// cycle, and for the root on a shortest cycle the antipodal edge yields the
/// cycle length itself, so the minimum over all roots is exact.
inline GirthValue girth(const ContagionGraph& g) {
  const VertexId n = g.vertex_count();
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(n);
  std::vector<VertexId> parent(n);
  constexpr std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();

  for (VertexId root = 0; root < n && best > 3; ++root) {
    std::fill(dist.begin(), dist.end(), unset);
    dist[root] = 0;
    parent[root] = root;
    std::queue<VertexId> queue;
    queue.push(root);
    while (!queue.empty()) {
      const VertexId x = queue.front();
      queue.pop();
      for (const auto& nb : g.neighbors(x)) {
        const VertexId y = nb.id;
        if (dist[y] == unset) {
          dist[y] = dist[x] + 1;
          parent[y] = x;
          queue.push(y);
        } else if (y != parent[x]) {
          best = std::min(best, dist[x] + dist[y] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<std::uint32_t>::max())
    return GirthValue::infinite();
  return GirthValue::finite(best);
}

namespace detail {

/// Depth-first simple-path enumerator with a shared expansion budget and
/// BFS-distance pruning (prunes branches that cannot reach the target in the
/// remaining depth; counts stay exact).
class PathEnumerator {
 public:
  PathEnumerator(const ContagionGraph& g, std::uint64_t budget)
      : g_(g), budget_(budget), on_path_(g.vertex_count(), false) {}

  /// Number of simple paths from u to v with exactly d edges.
  std::uint64_t count_exact(VertexId u, VertexId v, std::uint32_t d) {
    target_ = v;
    target_dist_ = bfs_from(v);
    count_ = 0;
    on_path_[u] = true;
    walk(u, d);
    on_path_[u] = false;
    return count_;
  }

  /// Visits every simple path from u (of length >= 1); calls
  /// record(endpoint, length) once per path.
  template <typename Record>
  void enumerate_from(VertexId u, Record&& record) {
    on_path_[u] = true;
    walk_all(u, 0, record);
    on_path_[u] = false;
  }

 private:
  std::vector<std::uint32_t> bfs_from(VertexId s) {
    std::vector<std::uint32_t> dist(g_.vertex_count(),
                                    std::numeric_limits<std::uint32_t>::max());
    std::queue<VertexId> queue;
    dist[s] = 0;
    queue.push(s);
    while (!queue.empty()) {
      const VertexId x = queue.front();
      queue.pop();
      for (const auto& nb : g_.neighbors(x)) {
        if (dist[nb.id] != std::numeric_limits<std::uint32_t>::max()) continue;
        dist[nb.id] = dist[x] + 1;
        queue.push(nb.id);
      }
    }
    return dist;
  }

  void charge() {
    if (budget_ == 0)
      throw enumeration_budget_error(
          "path enumeration budget exceeded; graph too large for exact "
          "analysis");
    --budget_;
  }

  void walk(VertexId x, std::uint32_t remaining) {
    charge();
    if (remaining == 0) {
      if (x == target_) ++count_;
      return;
    }
    for (const auto& nb : g_.neighbors(x)) {
      if (on_path_[nb.id]) continue;
      if (target_dist_[nb.id] > remaining - 1) continue;
      on_path_[nb.id] = true;
      walk(nb.id, remaining - 1);
      on_path_[nb.id] = false;
    }
  }

  template <typename Record>
  void walk_all(VertexId x, std::uint32_t length, Record& record) {
    charge();
    if (length > 0) record(x, length);
    for (const auto& nb : g_.neighbors(x)) {
      if (on_path_[nb.id]) continue;
      on_path_[nb.id] = true;
      walk_all(nb.id, length + 1, record);
      on_path_[nb.id] = false;
    }
  }

  const ContagionGraph& g_;
  std::uint64_t budget_;
  std::vector<bool> on_path_;
  VertexId target_ = 0;
  std::vector<std::uint32_t> target_dist_;
  std::uint64_t count_ = 0;
};

}  // namespace detail

/// Exact number of simple paths from u to v with exactly d edges.
inline std::uint64_t count_simple_paths(
    const ContagionGraph& g, VertexId u, VertexId v, std::uint32_t d,
    std::uint64_t budget = kDefaultEnumerationBudget) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v)
    throw std::invalid_argument("count_simple_paths requires u != v");
  if (d < 1) throw std::invalid_argument("path length must be at least 1");
  detail::PathEnumerator walker(g, budget);
  return walker.count_exact(u, v, d);
}

/// Exact path growth rate rho = max_d (p_d)^(1/d), where p_d is the maximum
/// number of simple paths of length d between any pair of distinct vertices.
/// Ties prefer the smallest witnessing length. An edgeless graph reports
/// rho = 1 with a vacuous witness (d = 0).
inline PathGrowthRate path_growth_rate(
    const ContagionGraph& g, std::uint64_t budget = kDefaultEnumerationBudget) {
  const VertexId n = g.vertex_count();
  if (g.edge_count() == 0) return PathGrowthRate{1.0, 0, 0};

  // p_d over all ordered pairs; symmetric, so scanning all sources is just
  // a factor-2 redundancy, not an error.
  std::vector<std::uint64_t> max_count(n, 0);  // index = length d
  detail::PathEnumerator walker(g, budget);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) * n, 0);
  for (VertexId u = 0; u < n; ++u) {
    std::fill(counts.begin(), counts.end(), 0);
    walker.enumerate_from(u, [&](VertexId v, std::uint32_t length) {
      ++counts[static_cast<std::size_t>(v) * n + length];
    });
    for (VertexId v = 0; v < n; ++v) {
      if (v == u) continue;
      for (std::uint32_t d = 1; d < n; ++d) {
        max_count[d] =
            std::max(max_count[d], counts[static_cast<std::size_t>(v) * n + d]);
      }
    }
  }

  PathGrowthRate result{0.0, 0, 0};
  for (std::uint32_t d = 1; d < n; ++d) {
    if (max_count[d] == 0) continue;
    const double r = std::pow(static_cast<double>(max_count[d]), 1.0 / d);
    if (r > result.rho) {
      result.rho = r;
      result.witness_d = d;
      result.witness_count = max_count[d];
    }
  }
  return result;
}

inline std::uint32_t max_degree(const ContagionGraph& g) {
  std::uint32_t best = 0;
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    best = std::max(best, g.degree(u));
  return best;
}

/// Even lower bound on the girth required for the large-girth learner:
///
///   g >= 2 * ceil( (2 log(delta/2) + log(1 - rho (1-delta)))
///                  / log(rho (1-delta)) )
///
/// valid on the feasible region 0 < delta <= 1, 1 <= rho < 1/(1-delta).
/// The inner ratio is evaluated in natural log with a 1e-9 guard band before
/// the ceiling so exact-integer ratios do not round up platform-dependently.
inline std::uint32_t min_girth_required(double delta, double rho) {
  if (!(delta > 0.0) || !(delta <= 1.0))
    throw std::invalid_argument("contagion parameter must be in (0, 1]");
  if (!(rho >= 1.0))
    throw std::invalid_argument("path growth rate must be at least 1");
  const double x = rho * (1.0 - delta);
  if (!(x < 1.0))
    throw std::invalid_argument(
        "infeasible growth condition: rho * (1 - delta) must be below 1");
  if (x == 0.0) return 0;  // delta == 1: every transmission is certain
  const double ratio =
      (2.0 * std::log(delta / 2.0) + std::log1p(-x)) / std::log(x);
  const double ceiled = std::ceil(ratio - 1e-9);
  if (!(ceiled < 1e9)) throw std::overflow_error("girth bound overflow");
  return 2 * static_cast<std::uint32_t>(ceiled < 0.0 ? 0.0 : ceiled);
}

}  // namespace contagion
