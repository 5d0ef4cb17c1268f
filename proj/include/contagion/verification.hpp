#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "contagion/analysis.hpp"
#include "contagion/cascade.hpp"
#include "contagion/generators.hpp"
#include "contagion/graph.hpp"
#include "contagion/random.hpp"

namespace contagion {

/// Monte Carlo estimate of one probability claim against its closed-form
/// bound. The verdict is recomputable from the recorded fields alone, so
/// reports audit cleanly.
struct BoundCheckReport {
  std::string claim;             // which probability claim was tested
  std::string graph_descriptor;
  VertexId seed_vertex = 0;
  VertexId target_vertex = 0;
  std::optional<VertexId> witness_vertex;      // separation checks
  std::optional<std::uint32_t> min_chain_length;  // long-path check
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  double standard_error = 0.0;
  double bound = 0.0;
  bool bound_is_upper = true;
  bool within_bound = false;  // at the 3-standard-error tolerance
  bool in_scope = true;       // guarantee-scope flag, checks still run outside
};

/// Recomputes the 3-sigma verdict from the report's own fields.
inline bool recompute_verdict(const BoundCheckReport& r) {
  const double tol = 3.0 * r.standard_error;
  return r.bound_is_upper ? r.estimate <= r.bound + tol
                          : r.estimate >= r.bound - tol;
}

inline void to_json(nlohmann::json& j, const BoundCheckReport& r) {
  j = nlohmann::json{{"claim", r.claim},
                     {"graph", r.graph_descriptor},
                     {"seed_vertex", r.seed_vertex},
                     {"target_vertex", r.target_vertex},
                     {"trials", r.trials},
                     {"successes", r.successes},
                     {"estimate", r.estimate},
                     {"standard_error", r.standard_error},
                     {"bound", r.bound},
                     {"bound_side", r.bound_is_upper ? "upper" : "lower"},
                     {"within_bound", r.within_bound},
                     {"in_scope", r.in_scope}};
  if (r.witness_vertex) j["witness_vertex"] = *r.witness_vertex;
  if (r.min_chain_length) j["min_chain_length"] = *r.min_chain_length;
}

inline std::string bound_check_csv_header() {
  return "claim,graph,seed_vertex,target_vertex,witness_vertex,"
         "min_chain_length,trials,successes,estimate,standard_error,bound,"
         "bound_side,within_bound,in_scope";
}

inline std::string bound_check_csv_row(const BoundCheckReport& r) {
  std::string row = r.claim + "," + r.graph_descriptor + "," +
                    std::to_string(r.seed_vertex) + "," +
                    std::to_string(r.target_vertex) + ",";
  row += r.witness_vertex ? std::to_string(*r.witness_vertex) : "";
  row += ",";
  row += r.min_chain_length ? std::to_string(*r.min_chain_length) : "";
  row += "," + std::to_string(r.trials) + "," + std::to_string(r.successes) +
         "," + detail::format_double(r.estimate) + "," +
         detail::format_double(r.standard_error) + "," +
         detail::format_double(r.bound) + ",";
  row += r.bound_is_upper ? "upper" : "lower";
  row += ",";
  row += r.within_bound ? "1" : "0";
  row += ",";
  row += r.in_scope ? "1" : "0";
  return row;
}

namespace detail {

template <typename Success>
void run_trials(BoundCheckReport& report, const ContagionGraph& g, VertexId u,
                std::uint64_t trials, const RandomStream& stream,
                std::uint64_t pair_key, Success&& success) {
  const std::vector<VertexId> seeds{u};
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    auto rng = stream.substream(report.claim, pair_key, i);
    if (success(simulate_cascade(g, seeds, rng))) ++hits;
  }
  report.trials = trials;
  report.successes = hits;
  report.estimate =
      trials == 0 ? 0.0
                  : static_cast<double>(hits) / static_cast<double>(trials);
  report.standard_error =
      trials == 0 ? 0.0
                  : std::sqrt(report.estimate * (1.0 - report.estimate) /
                              static_cast<double>(trials));
  report.within_bound = recompute_verdict(report);
}

inline std::uint64_t pair_key(VertexId a, VertexId b, std::uint64_t c = 0) {
  return mix64(mix64(a, b), c);
}

}  // namespace detail

/// Long-path infection bound: the probability that the seed u infects v
/// through a transmission chain of length at least k is at most
/// (rho(1-delta))^k / (1 - rho(1-delta)). The measurable surrogate for the
/// event is the trace chain: v's credited infection chain has length
/// step(v), so the event is `v infected at step >= k`.
inline BoundCheckReport check_long_path_bound(
    const ContagionGraph& g, VertexId u, VertexId v, std::uint32_t k,
    std::uint64_t trials, const RandomStream& stream,
    std::string graph_descriptor = "",
    std::uint64_t budget = kDefaultEnumerationBudget) {
  g.check_vertex(u);
  g.check_vertex(v);
  const double rho = path_growth_rate(g, budget).rho;
  BoundCheckReport report;
  report.claim = "long_path_bound";
  report.graph_descriptor = std::move(graph_descriptor);
  report.seed_vertex = u;
  report.target_vertex = v;
  report.min_chain_length = k;
  report.bound = path_active_probability_bound(rho, g.delta(), k);
  report.bound_is_upper = true;
  report.in_scope = true;  // the growth condition was just enforced
  detail::run_trials(report, g, u, trials, stream, detail::pair_key(u, v, k),
                     [&](const CascadeOutcome& outcome) {
                       return outcome.step[v] >=
                              static_cast<std::int32_t>(k);
                     });
  return report;
}

/// Adjacent separation: for an edge (u,v) and any third vertex w, one round
/// with seed {u} has v infected but w not with probability at least
/// 7 delta^2 / 8 (a lower bound).
inline BoundCheckReport check_adjacent_separation(
    const ContagionGraph& g, VertexId u, VertexId v, VertexId w,
    std::uint64_t trials, const RandomStream& stream,
    std::string graph_descriptor = "",
    std::uint64_t budget = kDefaultEnumerationBudget) {
  g.check_vertex(w);
  if (!g.has_edge(u, v))
    throw std::invalid_argument("adjacent separation requires (u,v) in E");
  if (w == u || w == v)
    throw std::invalid_argument("witness w must differ from u and v");
  const double delta = g.delta();
  BoundCheckReport report;
  report.claim = "adjacent_separation";
  report.graph_descriptor = std::move(graph_descriptor);
  report.seed_vertex = u;
  report.target_vertex = v;
  report.witness_vertex = w;
  report.bound = 7.0 * delta * delta / 8.0;
  report.bound_is_upper = false;
  report.in_scope = certify_for_algorithm1(g, std::nullopt, budget).certified;
  detail::run_trials(report, g, u, trials, stream, detail::pair_key(u, v, w),
                     [&](const CascadeOutcome& outcome) {
                       return outcome.step[v] >= 0 && outcome.step[w] < 0;
                     });
  return report;
}

/// Near non-adjacent separation: for non-adjacent u,v with
/// 1 < d_uv < g/2 (even working girth), w is the second vertex of the unique
/// shortest path, and one round has v infected but w not with probability at
/// most delta^2 / 4.
inline BoundCheckReport check_near_pair_separation(
    const ContagionGraph& g, VertexId u, VertexId v, std::uint64_t trials,
    const RandomStream& stream, std::string graph_descriptor = "",
    std::uint64_t budget = kDefaultEnumerationBudget) {
  if (g.has_edge(u, v))
    throw std::invalid_argument("near separation requires u,v non-adjacent");
  const auto dist = shortest_path_distance(g, u, v);
  if (!dist || *dist < 2)
    throw std::invalid_argument("near separation requires 1 < d_uv");
  const auto girth_eff = girth(g).even_lower_bound();
  if (girth_eff && 2 * *dist >= *girth_eff)
    throw std::invalid_argument("near separation requires d_uv < g/2");
  if (count_simple_paths(g, u, v, *dist, budget) != 1)
    throw std::invalid_argument(
        "near separation requires a unique shortest path");

  // Second vertex of the (unique) shortest path: u's neighbor one hop
  // closer to v.
  VertexId w = u;
  for (const auto& nb : g.neighbors(u)) {
    const auto rest = shortest_path_distance(g, nb.id, v);
    if (rest && *rest + 1 == *dist) {
      w = nb.id;
      break;
    }
  }

  const double delta = g.delta();
  BoundCheckReport report;
  report.claim = "near_pair_separation";
  report.graph_descriptor = std::move(graph_descriptor);
  report.seed_vertex = u;
  report.target_vertex = v;
  report.witness_vertex = w;
  report.bound = delta * delta / 4.0;
  report.bound_is_upper = true;
  report.in_scope = certify_for_algorithm1(g, std::nullopt, budget).certified;
  detail::run_trials(report, g, u, trials, stream, detail::pair_key(u, v),
                     [&](const CascadeOutcome& outcome) {
                       return outcome.step[v] >= 0 && outcome.step[w] < 0;
                     });
  return report;
}

/// Far-pair infection: for non-adjacent u,v with d_uv >= g/2 (unreachable
/// counts as infinitely far), one round with seed {u} infects v with
/// probability at most delta^2 / 4.
inline BoundCheckReport check_far_pair_infection(
    const ContagionGraph& g, VertexId u, VertexId v, std::uint64_t trials,
    const RandomStream& stream, std::string graph_descriptor = "",
    std::uint64_t budget = kDefaultEnumerationBudget) {
  if (u == v) throw std::invalid_argument("far infection requires u != v");
  if (g.has_edge(u, v))
    throw std::invalid_argument("far infection requires u,v non-adjacent");
  const auto dist = shortest_path_distance(g, u, v);
  const auto girth_eff = girth(g).even_lower_bound();
  if (dist) {
    if (!girth_eff || 2 * *dist < *girth_eff)
      throw std::invalid_argument("far infection requires d_uv >= g/2");
  }
  const double delta = g.delta();
  BoundCheckReport report;
  report.claim = "far_pair_infection";
  report.graph_descriptor = std::move(graph_descriptor);
  report.seed_vertex = u;
  report.target_vertex = v;
  report.bound = delta * delta / 4.0;
  report.bound_is_upper = true;
  report.in_scope = certify_for_algorithm1(g, std::nullopt, budget).certified;
  detail::run_trials(report, g, u, trials, stream, detail::pair_key(u, v),
                     [&](const CascadeOutcome& outcome) {
                       return outcome.step[v] >= 0;
                     });
  return report;
}

/// Exact arithmetic consistency (no simulation): on a certified graph the
/// long-path bound at k = ceil(g/2) never exceeds delta^2 / 4. Forests have
/// no finite girth and satisfy the claim vacuously.
inline bool half_girth_bound_consistent(const CertificationReport& report) {
  if (!report.certified)
    throw std::invalid_argument("consistency check requires a certified graph");
  if (!report.girth_value.is_finite()) return true;
  const std::uint32_t k = (report.girth_value.value() + 1) / 2;
  const double bound =
      path_active_probability_bound(report.growth.rho, report.delta, k);
  return bound <= report.delta * report.delta / 4.0;
}

}  // namespace contagion
