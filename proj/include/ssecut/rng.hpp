#pragma once

#include <cstdint>
#include <vector>

namespace ssecut {

/// Counter-based splittable RNG. Every consumer derives its stream from
/// (seed, counter path), so results are reproducible regardless of the order
/// in which independent components draw. splitmix64 core; Gaussians via
/// Box-Muller so the byte stream does not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : base_(seed), state_(mix(seed)) {}

  /// Child stream keyed by `counter`. Independent of this stream's position.
  Rng split(std::uint64_t counter) const {
    return Rng(mix(base_ ^ mix(counter + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return finalize(state_);
  }

  /// Uniform in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform in (0, 1].
  double next_unit_open() { return 1.0 - next_unit(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    // Multiply-shift; bias is negligible for desk-scale n.
    return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n));
  }

  /// Standard normal via Box-Muller (pair cached).
  double next_gaussian();

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  std::uint64_t seed() const { return base_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    return finalize(z);
  }
  static std::uint64_t finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t state_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace ssecut
