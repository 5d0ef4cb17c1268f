#pragma once

#include <cstdint>
#include <string_view>

namespace contagion {

namespace detail {

// SplitMix64 finalizer; also used to expand seeds into generator state.
constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t state = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  return splitmix64_next(state);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Deterministic xoshiro256** generator used for all coin flips and draws.
/// The standard <random> distributions are avoided on purpose: their output
/// is not pinned by the standard, and reports must be byte-identical across
/// platforms given the same seed.
class Substream {
 public:
  explicit Substream(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = detail::splitmix64_next(sm);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) noexcept { return next_double() < p; }

  /// Unbiased integer in [0, n). Lemire's multiply-with-rejection.
  std::uint64_t uniform_below(std::uint64_t n) noexcept {
    using u128 = unsigned __int128;
    u128 product = static_cast<u128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(product);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        product = static_cast<u128>(next_u64()) * n;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  double uniform_real(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_double();
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

/// Keyed substream factory: identical (master seed, context, a, b) coordinates
/// always yield the identical coin sequence, so per-round simulations can run
/// in any order or in parallel with reproducible results.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed) noexcept
      : master_(master_seed) {}

  std::uint64_t master_seed() const noexcept { return master_; }

  Substream substream(std::string_view context, std::uint64_t a = 0,
                      std::uint64_t b = 0) const noexcept {
    std::uint64_t h = detail::mix64(master_, detail::fnv1a64(context));
    h = detail::mix64(h, a);
    h = detail::mix64(h, b);
    return Substream(h);
  }

  /// A derived 64-bit seed, for spawning child streams (per-trial seeds).
  std::uint64_t derive_seed(std::string_view context, std::uint64_t a = 0,
                            std::uint64_t b = 0) const noexcept {
    std::uint64_t h = detail::mix64(master_, detail::fnv1a64(context));
    h = detail::mix64(h, a);
    return detail::mix64(h, b);
  }

 private:
  std::uint64_t master_;
};

}  // namespace contagion
