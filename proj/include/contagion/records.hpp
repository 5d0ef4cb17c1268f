#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "contagion/oracle.hpp"

namespace contagion {

/// Per-seed-vertex round bookkeeping: for a fixed seed u queried m times,
/// R_u(v) is the set of round indices in which v ended up infected. Stored
/// as packed bit rows so the learners' set differences are word-parallel.
class RoundRecords {
 public:
  RoundRecords(VertexId seed, VertexId vertex_count, std::uint32_t rounds)
      : seed_(seed),
        n_(vertex_count),
        rounds_(rounds),
        words_((rounds + 63) / 64),
        bits_(static_cast<std::size_t>(vertex_count) * words_, 0) {
    if (seed >= vertex_count)
      throw std::out_of_range("seed vertex out of range");
    if (rounds == 0) throw std::invalid_argument("rounds must be >= 1");
  }

  VertexId seed() const noexcept { return seed_; }
  VertexId vertex_count() const noexcept { return n_; }
  std::uint32_t rounds() const noexcept { return rounds_; }

  void mark(VertexId v, std::uint32_t round) {
    if (v >= n_) throw std::out_of_range("vertex id out of range");
    if (round >= rounds_) throw std::out_of_range("round index out of range");
    row(v)[round / 64] |= std::uint64_t{1} << (round % 64);
  }

  bool contains(VertexId v, std::uint32_t round) const {
    if (v >= n_ || round >= rounds_) throw std::out_of_range("out of range");
    return (row(v)[round / 64] >> (round % 64)) & 1;
  }

  /// |R_u(v)|
  std::uint32_t count(VertexId v) const {
    std::uint32_t total = 0;
    for (std::uint32_t w = 0; w < words_; ++w)
      total += std::popcount(row(v)[w]);
    return total;
  }

  /// |R_u(v) \ R_u(w)|
  std::uint32_t count_difference(VertexId v, VertexId w) const {
    const std::uint64_t* rv = row(v);
    const std::uint64_t* rw = row(w);
    std::uint32_t total = 0;
    for (std::uint32_t i = 0; i < words_; ++i)
      total += std::popcount(rv[i] & ~rw[i]);
    return total;
  }

  /// R_u(v) subset of R_u(w)?
  bool subset_of(VertexId v, VertexId w) const {
    const std::uint64_t* rv = row(v);
    const std::uint64_t* rw = row(w);
    for (std::uint32_t i = 0; i < words_; ++i)
      if (rv[i] & ~rw[i]) return false;
    return true;
  }

 private:
  std::uint64_t* row(VertexId v) {
    return bits_.data() + static_cast<std::size_t>(v) * words_;
  }
  const std::uint64_t* row(VertexId v) const {
    return bits_.data() + static_cast<std::size_t>(v) * words_;
  }

  VertexId seed_;
  VertexId n_;
  std::uint32_t rounds_;
  std::uint32_t words_;
  std::vector<std::uint64_t> bits_;
};

/// Performs exactly m single-seed queries with seed {u} and returns the
/// complete records. The budget is reserved up front, so a short budget
/// fails before any cascade runs.
inline RoundRecords collect_rounds(QueryOracle& oracle, VertexId u,
                                   std::uint32_t m) {
  if (u >= oracle.vertex_count())
    throw std::out_of_range("seed vertex out of range");
  if (m == 0) throw std::invalid_argument("rounds must be >= 1");
  oracle.record_queries(m);
  RoundRecords records(u, oracle.vertex_count(), m);
  const std::vector<VertexId> seeds{u};
  for (std::uint32_t i = 0; i < m; ++i) {
    for (VertexId v : oracle.query_at(seeds, u, i)) records.mark(v, i);
  }
  return records;
}

}  // namespace contagion
