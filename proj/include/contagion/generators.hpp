#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "contagion/analysis.hpp"
#include "contagion/graph.hpp"
#include "contagion/random.hpp"

namespace contagion {

class generation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GraphFamily {
  tree,                  // uniform random labeled tree (Pruefer sequence)
  cycle,                 // C_n
  star_cycle_h,          // star of n vertices + n-cycle sharing the root
  generalized_theta,     // two hubs joined by internally disjoint paths
  bounded_degree_random, // random D-regular graph (pairing with retry)
  erdos_renyi,           // G(n, p); stress target outside guarantee scope
};

inline std::string family_name(GraphFamily family) {
  switch (family) {
    case GraphFamily::tree: return "tree";
    case GraphFamily::cycle: return "cycle";
    case GraphFamily::star_cycle_h: return "star_cycle_h";
    case GraphFamily::generalized_theta: return "generalized_theta";
    case GraphFamily::bounded_degree_random: return "bounded_degree_random";
    case GraphFamily::erdos_renyi: return "erdos_renyi";
  }
  throw std::invalid_argument("unknown graph family");
}

inline GraphFamily family_from_name(const std::string& name) {
  if (name == "tree") return GraphFamily::tree;
  if (name == "cycle") return GraphFamily::cycle;
  if (name == "star_cycle_h") return GraphFamily::star_cycle_h;
  if (name == "generalized_theta") return GraphFamily::generalized_theta;
  if (name == "bounded_degree_random") return GraphFamily::bounded_degree_random;
  if (name == "erdos_renyi") return GraphFamily::erdos_renyi;
  throw std::invalid_argument("unknown graph family: " + name);
}

struct GraphFamilySpec {
  GraphFamily family = GraphFamily::tree;
  std::uint32_t n = 0;          // size parameter (see each family)
  std::uint32_t degree = 0;     // bounded_degree_random only
  std::vector<std::uint32_t> path_lengths;  // generalized_theta only
  double edge_probability = 0.0;            // erdos_renyi only
  double p_lo = 0.0;            // infection probabilities drawn uniformly
  double p_hi = 0.0;            //   from [p_lo, p_hi], subset of (0, 1)
  std::uint64_t seed = 0;

  std::string describe() const {
    std::string s = family_name(family);
    if (family == GraphFamily::generalized_theta) {
      s += "(lengths=";
      for (std::size_t i = 0; i < path_lengths.size(); ++i)
        s += (i ? "," : "") + std::to_string(path_lengths[i]);
      s += ")";
    } else {
      s += "(n=" + std::to_string(n);
      if (family == GraphFamily::bounded_degree_random)
        s += ",D=" + std::to_string(degree);
      if (family == GraphFamily::erdos_renyi)
        s += ",p=" + detail::format_double(edge_probability);
      s += ")";
    }
    s += " p=[" + detail::format_double(p_lo) + "," +
         detail::format_double(p_hi) + "]";
    return s;
  }
};

namespace detail {

using Pair = std::pair<VertexId, VertexId>;

inline std::vector<Pair> tree_topology(std::uint32_t n, Substream& rng) {
  std::vector<Pair> edges;
  if (n <= 1) return edges;
  if (n == 2) return {{0, 1}};
  // Uniform over labeled trees via a random Pruefer sequence.
  std::vector<VertexId> pruefer(n - 2);
  for (auto& x : pruefer) x = static_cast<VertexId>(rng.uniform_below(n));
  std::vector<std::uint32_t> degree(n, 1);
  for (VertexId x : pruefer) ++degree[x];
  VertexId ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  VertexId leaf = ptr;
  for (VertexId x : pruefer) {
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n - 1);
  return edges;
}

inline std::vector<Pair> cycle_topology(std::uint32_t n) {
  std::vector<Pair> edges;
  for (VertexId i = 0; i < n; ++i)
    edges.emplace_back(i, static_cast<VertexId>((i + 1) % n));
  return edges;
}

// Star of n vertices rooted at 0 (leaves 1..n-1) plus an n-cycle through 0
// (cycle companions n..2n-2): 2n-1 vertices, 2n-1 edges, girth n, and the
// root has degree (n-1) + 2.
inline std::vector<Pair> star_cycle_topology(std::uint32_t n) {
  std::vector<Pair> edges;
  for (VertexId leaf = 1; leaf < n; ++leaf) edges.emplace_back(0, leaf);
  VertexId prev = 0;
  for (VertexId k = 0; k + 1 < n; ++k) {
    const VertexId next = n + k;
    edges.emplace_back(prev, next);
    prev = next;
  }
  edges.emplace_back(prev, 0);
  return edges;
}

inline std::vector<Pair> theta_topology(
    const std::vector<std::uint32_t>& lengths, VertexId& n_out) {
  std::vector<Pair> edges;
  VertexId next_id = 2;  // hubs are 0 and 1
  for (std::uint32_t len : lengths) {
    VertexId prev = 0;
    for (std::uint32_t i = 0; i + 1 < len; ++i) {
      edges.emplace_back(prev, next_id);
      prev = next_id++;
    }
    edges.emplace_back(prev, 1);
  }
  n_out = next_id;
  return edges;
}

inline std::vector<Pair> regular_topology(std::uint32_t n, std::uint32_t d,
                                          Substream& rng) {
  // Pairing model: shuffle n*d stubs, pair consecutively, retry on loops or
  // duplicates. Capped restarts keep generation deterministic in the seed.
  constexpr int kMaxRestarts = 100;
  std::vector<VertexId> stubs(static_cast<std::size_t>(n) * d);
  for (VertexId v = 0; v < n; ++v)
    for (std::uint32_t k = 0; k < d; ++k) stubs[static_cast<std::size_t>(v) * d + k] = v;
  for (int attempt = 0; attempt < kMaxRestarts; ++attempt) {
    for (std::size_t i = stubs.size() - 1; i > 0; --i) {
      const std::size_t j = rng.uniform_below(i + 1);
      std::swap(stubs[i], stubs[j]);
    }
    std::set<Pair> seen;
    bool simple = true;
    for (std::size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
      VertexId a = stubs[i], b = stubs[i + 1];
      if (a == b) { simple = false; break; }
      if (a > b) std::swap(a, b);
      simple = seen.emplace(a, b).second;
    }
    if (simple) return {seen.begin(), seen.end()};
  }
  throw generation_error("regular pairing failed after 100 restarts");
}

inline std::vector<Pair> erdos_renyi_topology(std::uint32_t n, double p,
                                              Substream& rng) {
  std::vector<Pair> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
  return edges;
}

}  // namespace detail

/// Deterministic seeded constructor for every graph family used here.
/// Identical spec (including seed) yields a byte-identical graph.
inline ContagionGraph generate(const GraphFamilySpec& spec) {
  if (!(spec.p_lo > 0.0) || !(spec.p_hi < 1.0) || spec.p_lo > spec.p_hi)
    throw generation_error(
        "infection probability range must satisfy 0 < p_lo <= p_hi < 1");

  const RandomStream stream(spec.seed);
  auto topo_rng = stream.substream("topology");
  VertexId n = spec.n;
  std::vector<detail::Pair> topology;

  switch (spec.family) {
    case GraphFamily::tree:
      if (spec.n < 1) throw generation_error("tree needs n >= 1");
      topology = detail::tree_topology(spec.n, topo_rng);
      break;
    case GraphFamily::cycle:
      if (spec.n < 3) throw generation_error("cycle needs n >= 3");
      topology = detail::cycle_topology(spec.n);
      break;
    case GraphFamily::star_cycle_h:
      if (spec.n < 3) throw generation_error("star_cycle_h needs n >= 3");
      topology = detail::star_cycle_topology(spec.n);
      n = 2 * spec.n - 1;
      break;
    case GraphFamily::generalized_theta: {
      if (spec.path_lengths.size() < 2)
        throw generation_error("generalized_theta needs >= 2 paths");
      for (std::uint32_t len : spec.path_lengths)
        if (len < 2)
          throw generation_error("generalized_theta path lengths must be >= 2");
      topology = detail::theta_topology(spec.path_lengths, n);
      break;
    }
    case GraphFamily::bounded_degree_random:
      if (spec.degree < 1 || spec.degree >= spec.n)
        throw generation_error("bounded_degree_random needs 1 <= D < n");
      if ((static_cast<std::uint64_t>(spec.n) * spec.degree) % 2 != 0)
        throw generation_error("bounded_degree_random needs n * D even");
      topology = detail::regular_topology(spec.n, spec.degree, topo_rng);
      break;
    case GraphFamily::erdos_renyi:
      if (spec.n < 1) throw generation_error("erdos_renyi needs n >= 1");
      if (!(spec.edge_probability >= 0.0) || !(spec.edge_probability <= 1.0))
        throw generation_error("erdos_renyi needs edge probability in [0, 1]");
      topology = detail::erdos_renyi_topology(spec.n, spec.edge_probability,
                                              topo_rng);
      break;
  }

  // Probabilities are drawn in canonical edge order so they do not depend on
  // construction order.
  for (auto& [u, v] : topology)
    if (u > v) std::swap(u, v);
  std::sort(topology.begin(), topology.end());
  auto prob_rng = stream.substream("edge-probabilities");
  std::vector<Edge> edges;
  edges.reserve(topology.size());
  for (const auto& [u, v] : topology)
    edges.push_back({u, v, prob_rng.uniform_real(spec.p_lo, spec.p_hi)});
  return ContagionGraph(n, std::move(edges));
}

/// Certification report for the large-girth learner's guarantee scope.
struct CertificationReport {
  double delta = 0.0;      // contagion parameter the check ran with
  PathGrowthRate growth;
  GirthValue girth_value = GirthValue::infinite();
  std::optional<std::uint32_t> effective_even_girth;  // empty for forests
  bool growth_condition_ok = false;                   // 1 <= rho < 1/(1-delta)
  std::optional<std::uint32_t> required_girth;        // set when growth holds
  bool girth_condition_ok = false;  // girth >= required (forests trivially)
  bool certified = false;
};

/// Checks the two guarantee conditions exactly: the growth condition
/// 1 <= rho < 1/(1-delta) and the girth bound. Odd finite girths are
/// certified through their even lower bound g - 1.
inline CertificationReport certify_for_algorithm1(
    const ContagionGraph& g, std::optional<double> delta_lb = std::nullopt,
    std::uint64_t budget = kDefaultEnumerationBudget) {
  CertificationReport report;
  report.delta = delta_lb.value_or(g.delta());
  if (!(report.delta > 0.0) || report.delta > g.delta())
    throw std::invalid_argument(
        "delta lower bound must lie in (0, true contagion parameter]");
  report.growth = path_growth_rate(g, budget);
  report.girth_value = girth(g);
  report.effective_even_girth = report.girth_value.even_lower_bound();
  report.growth_condition_ok =
      report.growth.rho >= 1.0 &&
      report.growth.rho * (1.0 - report.delta) < 1.0;
  if (report.growth_condition_ok) {
    report.required_girth = min_girth_required(report.delta, report.growth.rho);
    report.girth_condition_ok =
        !report.effective_even_girth ||
        *report.effective_even_girth >= *report.required_girth;
  }
  report.certified = report.growth_condition_ok && report.girth_condition_ok;
  return report;
}

}  // namespace contagion
