#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

namespace bor {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Neumaier-compensated running sum. Order of add() calls fixes the result bit-for-bit.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

/// floor(log2(n)) for n >= 1.
constexpr std::size_t floor_log2(std::size_t n) noexcept {
  std::size_t k = 0;
  while (n > 1) {
    n >>= 1;
    ++k;
  }
  return k;
}

/// Euclidean (Hilbert-Schmidt for flattened matrices) norm.
inline double euclidean_norm(std::span<const double> v) noexcept {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double sup_abs(std::span<const double> v) noexcept {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace bor
