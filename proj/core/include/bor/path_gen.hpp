#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "bor/sampled_path.hpp"

namespace bor {

enum class DriverKind { brownian, fbm, deterministic };
enum class FbmMethod { circulant, cholesky };

/// Largest N accepted by the Cholesky cross-check mode.
inline constexpr std::size_t kMaxCholeskySteps = 1024;

struct DriverSpec {
  DriverKind kind = DriverKind::brownian;
  double hurst = 0.5;
  std::size_t dimension = 1;
  double horizon = 1.0;
  std::size_t n_steps = 1024;
  std::uint64_t seed = 0;
  FbmMethod fbm_method = FbmMethod::circulant;
  /// deterministic drivers: "zero", "linear" (t), "quadratic" (t^2), "sine" (sin 2 pi t / T)
  std::string expression = "linear";

  void validate() const;
};

/// Standard Brownian motion, independent coordinates, W_0 = 0.
[[nodiscard]] SampledPath simulate_bm(const DriverSpec& spec);
/// Fractional Brownian motion with Hurst index in (1/3, 1/2], exact in law on the grid.
[[nodiscard]] SampledPath simulate_fbm(const DriverSpec& spec);
[[nodiscard]] SampledPath simulate_deterministic(const DriverSpec& spec);
/// Dispatches on spec.kind.
[[nodiscard]] SampledPath simulate(const DriverSpec& spec);

/// Autocovariance gamma(k) of unit-step fBm increments.
[[nodiscard]] double fgn_autocovariance(double hurst, std::size_t k);

/// Parses "brownian" | "fbm" | "deterministic"; throws DomainError otherwise.
[[nodiscard]] DriverKind parse_driver_kind(const std::string& s);
[[nodiscard]] std::string to_string(DriverKind kind);

/**
 * Reads the path CSV format: header "t,x1,...,xn", one row per grid point,
 * t strictly increasing from 0 on a uniform grid (relative deviation <= 1e-9).
 * Non-dyadic lengths are accepted; a warning is appended to `warnings` if given.
 */
[[nodiscard]] SampledPath load_path(std::istream& in, std::vector<std::string>* warnings = nullptr);
[[nodiscard]] SampledPath load_path_file(const std::string& file, std::vector<std::string>* warnings = nullptr);
/// Writes the CSV format with 17 significant digits.
void save_path(std::ostream& out, const SampledPath& path);

}  // namespace bor

namespace bor {

/**
 * Reusable fBm sampler: the circulant eigenvalues (or the Cholesky factor) are
 * computed once per (H, N, T) and each sample only draws fresh Gaussians.
 */
class FbmGenerator {
 public:
  FbmGenerator(double hurst, std::size_t n_steps, double horizon, FbmMethod method = FbmMethod::circulant);
  ~FbmGenerator();
  FbmGenerator(FbmGenerator&&) noexcept;
  FbmGenerator& operator=(FbmGenerator&&) noexcept;

  [[nodiscard]] SampledPath sample(std::uint64_t seed, std::size_t dimension = 1) const;
  /// Smallest circulant eigenvalue before clamping (circulant mode only).
  [[nodiscard]] double min_eigenvalue() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bor
