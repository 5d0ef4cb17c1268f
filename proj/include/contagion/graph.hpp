#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace contagion {

using VertexId = std::uint32_t;

/// Undirected edge with its infection probability. Stored normalized
/// (u < v) once inside a ContagionGraph.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  double probability = 0.0;
};

struct Neighbor {
  VertexId id;
  double probability;
};

namespace detail {

/// Shortest round-trip decimal formatting, deterministic across platforms.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace detail

/// Immutable undirected graph with per-edge infection probabilities.
///
/// Construction validates the full contract: vertex ids in range, no
/// self-loops, no duplicate edges, and every probability strictly inside
/// (0, 1). Probabilities of exactly 0 or 1 are rejected because they
/// collapse the contagion parameter to zero and void every learning
/// guarantee. All analyses are pure functions of the constructed graph.
class ContagionGraph {
 public:
  ContagionGraph(VertexId n, std::vector<Edge> edges)
      : n_(n), edges_(std::move(edges)), adjacency_(n) {
    for (auto& e : edges_) {
      if (e.u >= n_ || e.v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
      if (e.u == e.v) throw std::invalid_argument("self-loops not allowed");
      if (!(e.probability > 0.0) || !(e.probability < 1.0))
        throw std::invalid_argument(
            "infection probability must lie strictly in (0, 1)");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
        throw std::invalid_argument("duplicate edge");
    }
    alpha_ = 1.0;
    beta_ = 0.0;
    for (const auto& e : edges_) {
      alpha_ = std::min(alpha_, e.probability);
      beta_ = std::max(beta_, e.probability);
      adjacency_[e.u].push_back({e.v, e.probability});
      adjacency_[e.v].push_back({e.u, e.probability});
    }
    for (auto& nbrs : adjacency_) {
      std::sort(nbrs.begin(), nbrs.end(),
                [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    }
    delta_ = std::min(alpha_, 1.0 - beta_);
  }

  VertexId vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Edges sorted by (min endpoint, max endpoint).
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Neighbors of u in ascending vertex order.
  std::span<const Neighbor> neighbors(VertexId u) const {
    check_vertex(u);
    return adjacency_[u];
  }

  std::uint32_t degree(VertexId u) const {
    check_vertex(u);
    return static_cast<std::uint32_t>(adjacency_[u].size());
  }

  bool has_edge(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& nbrs = adjacency_[u];
    auto it = std::lower_bound(
        nbrs.begin(), nbrs.end(), v,
        [](const Neighbor& nb, VertexId id) { return nb.id < id; });
    return it != nbrs.end() && it->id == v;
  }

  /// Minimum infection probability over edges (1 for an edgeless graph).
  double alpha() const noexcept { return alpha_; }
  /// Maximum infection probability over edges (0 for an edgeless graph).
  double beta() const noexcept { return beta_; }
  /// Contagion parameter min(alpha, 1 - beta); always > 0 by construction.
  double delta() const noexcept { return delta_; }

  /// Edge set with probabilities dropped, sorted canonically.
  std::vector<std::pair<VertexId, VertexId>> edge_pairs() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_) out.emplace_back(e.u, e.v);
    return out;
  }

  void check_vertex(VertexId v) const {
    if (v >= n_) throw std::out_of_range("vertex id out of range");
  }

 private:
  VertexId n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  double alpha_, beta_, delta_;
};

// ---------------------------------------------------------------------------
// Edge-list text format.
//
//   # comment lines start with '#'
//   n m
//   u v p_uv        (m lines; p as decimal)
//
// The writer emits edges sorted by (min endpoint, max endpoint) so files
// diff canonically.
// ---------------------------------------------------------------------------

inline ContagionGraph read_edge_list(std::istream& in) {
  auto next_data_line = [&in](std::string& line) -> bool {
    while (std::getline(in, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };

  std::string line;
  if (!next_data_line(line)) throw std::runtime_error("edge list: empty input");
  std::istringstream header(line);
  std::uint64_t n = 0, m = 0;
  if (!(header >> n >> m)) throw std::runtime_error("edge list: bad header");

  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    if (!next_data_line(line))
      throw std::runtime_error("edge list: expected " + std::to_string(m) +
                               " edges, got " + std::to_string(i));
    std::istringstream row(line);
    Edge e;
    if (!(row >> e.u >> e.v >> e.probability))
      throw std::runtime_error("edge list: bad edge line: " + line);
    edges.push_back(e);
  }
  return ContagionGraph(static_cast<VertexId>(n), std::move(edges));
}

inline void write_edge_list(const ContagionGraph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << detail::format_double(e.probability)
        << '\n';
  }
}

/// Learner output format: same header, probabilities omitted.
inline void write_edge_set(VertexId n,
                           std::vector<std::pair<VertexId, VertexId>> edges,
                           std::ostream& out) {
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  std::sort(edges.begin(), edges.end());
  out << n << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

inline ContagionGraph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

inline void save_edge_list(const ContagionGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_edge_list(g, out);
}

}  // namespace contagion
