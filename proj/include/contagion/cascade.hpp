#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "contagion/graph.hpp"
#include "contagion/random.hpp"

namespace contagion {

/// Ordered transmission: infection travelled from `from` to `to`. The
/// direction matters; (u,v) active implies (v,u) was never attempted.
struct ActiveEdge {
  VertexId from;
  VertexId to;

  friend bool operator==(const ActiveEdge&, const ActiveEdge&) = default;
};

/// Full outcome of one contagion round.
struct CascadeOutcome {
  std::vector<VertexId> infected;      // ascending, includes the seeds
  std::vector<std::int32_t> step;      // per vertex; -1 = never infected
  std::vector<ActiveEdge> active_edges;  // in firing order

  std::optional<std::uint32_t> infection_step(VertexId v) const {
    if (v >= step.size()) throw std::out_of_range("vertex id out of range");
    if (step[v] < 0) return std::nullopt;
    return static_cast<std::uint32_t>(step[v]);
  }

  bool is_infected(VertexId v) const {
    if (v >= step.size()) throw std::out_of_range("vertex id out of range");
    return step[v] >= 0;
  }
};

/// One synchronous independent-cascade round.
///
/// Seeds are infected at step 0. At step t, every vertex infected at t-1
/// flips one coin per still-uninfected neighbor, succeeding with the edge
/// probability; a successful flip infects the neighbor at step t. An edge
/// direction is attempted at most once overall, and two vertices infected at
/// the same step never attempt their shared edge.
///
/// Within a step, attempts run in ascending (frontier vertex, neighbor)
/// order and coins are drawn lazily per attempt, so the audit log credits
/// the lowest-id successful infector. The infected-set distribution does not
/// depend on this ordering; it exists purely for reproducibility.
inline CascadeOutcome simulate_cascade(const ContagionGraph& g,
                                       const std::vector<VertexId>& seeds,
                                       Substream rng) {
  const VertexId n = g.vertex_count();
  CascadeOutcome outcome;
  outcome.step.assign(n, -1);

  std::vector<VertexId> frontier;
  frontier.reserve(seeds.size());
  for (VertexId s : seeds) {
    g.check_vertex(s);
    if (outcome.step[s] < 0) {
      outcome.step[s] = 0;
      frontier.push_back(s);
    }
  }
  std::sort(frontier.begin(), frontier.end());

  std::int32_t t = 1;
  std::vector<VertexId> next;
  while (!frontier.empty()) {
    next.clear();
    for (VertexId u : frontier) {
      for (const auto& nb : g.neighbors(u)) {
        if (outcome.step[nb.id] >= 0) continue;
        if (rng.bernoulli(nb.probability)) {
          outcome.step[nb.id] = t;
          outcome.active_edges.push_back({u, nb.id});
          next.push_back(nb.id);
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier.swap(next);
    ++t;
  }

  for (VertexId v = 0; v < n; ++v)
    if (outcome.step[v] >= 0) outcome.infected.push_back(v);
  return outcome;
}

/// The closed-form upper bound on the probability that a seed infects a
/// vertex along any path of length at least k:
///
///   (rho (1-delta))^k / (1 - rho (1-delta))
///
/// Requires the growth condition 1 <= rho < 1/(1-delta).
inline double path_active_probability_bound(double rho, double delta,
                                            std::uint32_t k) {
  if (!(delta > 0.0) || !(delta <= 1.0))
    throw std::invalid_argument("contagion parameter must be in (0, 1]");
  if (!(rho >= 1.0))
    throw std::invalid_argument("path growth rate must be at least 1");
  const double x = rho * (1.0 - delta);
  if (!(x < 1.0))
    throw std::invalid_argument(
        "infeasible growth condition: rho * (1 - delta) must be below 1");
  if (k < 1) throw std::invalid_argument("path length k must be at least 1");
  if (x == 0.0) return 0.0;
  return std::pow(x, static_cast<double>(k)) / (1.0 - x);
}

/// Trace dump: one line `t u v` per active edge, where t is the step at
/// which the transmission fired.
inline void write_trace(const CascadeOutcome& outcome, std::ostream& out) {
  for (const auto& edge : outcome.active_edges)
    out << outcome.step[edge.to] << ' ' << edge.from << ' ' << edge.to << '\n';
}

}  // namespace contagion
