#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace bor {

/**
 * Counter-based Gaussian source: every variate is a pure function of
 * (seed, stream, index), so results never depend on generation order.
 */
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  [[nodiscard]] std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const noexcept {
    std::uint64_t h = mix(seed_ ^ 0x243f6a8885a308d3ULL);
    h = mix(h ^ (stream + 0x13198a2e03707344ULL));
    return mix(h ^ (index * 0x9e3779b97f4a7c15ULL + 0xa4093822299f31d0ULL));
  }

  /// Uniform on the open interval (0, 1).
  [[nodiscard]] double uniform(std::uint64_t stream, std::uint64_t index) const noexcept {
    return (static_cast<double>(bits(stream, index) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on the uniform pair (2 index, 2 index + 1).
  [[nodiscard]] double normal(std::uint64_t stream, std::uint64_t index) const noexcept {
    const double u1 = uniform(stream, 2 * index);
    const double u2 = uniform(stream, 2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  // splitmix64 finalizer
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
};

}  // namespace bor
