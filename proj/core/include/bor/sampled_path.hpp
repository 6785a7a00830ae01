#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace bor {

/**
 * Values of a path t -> R^d on the uniform grid t_i = i T / N, i = 0..N.
 *
 * Values are stored row-major, one row of `dim()` doubles per grid point. Matrix
 * valued paths (controlled paths, Gubinelli derivatives) are stored flattened.
 */
class SampledPath {
 public:
  SampledPath() = default;
  /// values.size() must be a positive multiple of dim with at least two rows.
  SampledPath(double horizon, std::size_t dim, std::vector<double> values);
  /// Path of zeros with N = steps.
  static SampledPath zeros(double horizon, std::size_t steps, std::size_t dim);

  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  /// N, the number of grid cells.
  [[nodiscard]] std::size_t steps() const noexcept { return points() - 1; }
  /// N + 1
  [[nodiscard]] std::size_t points() const noexcept { return dim_ == 0 ? 0 : values_.size() / dim_; }
  [[nodiscard]] double dt() const noexcept { return horizon_ / static_cast<double>(steps()); }
  [[nodiscard]] double time(std::size_t i) const noexcept {
    return horizon_ * static_cast<double>(i) / static_cast<double>(steps());
  }

  [[nodiscard]] std::span<const double> operator[](std::size_t i) const noexcept {
    return {values_.data() + i * dim_, dim_};
  }
  [[nodiscard]] std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * dim_, dim_}; }
  [[nodiscard]] double at(std::size_t i, std::size_t c) const noexcept { return values_[i * dim_ + c]; }

  [[nodiscard]] const std::vector<double>& data() const noexcept { return values_; }
  [[nodiscard]] std::vector<double>& data() noexcept { return values_; }

  /// max_i |f_{t_i}| (Euclidean norm per point).
  [[nodiscard]] double sup_norm() const noexcept;
  /// Same grid (N and T) as other.
  [[nodiscard]] bool same_grid(const SampledPath& other) const noexcept;

  /// Coordinate `c` as a scalar path.
  [[nodiscard]] SampledPath component(std::size_t c) const;

  friend bool operator==(const SampledPath&, const SampledPath&) = default;

 private:
  double horizon_ = 0.0;
  std::size_t dim_ = 0;
  std::vector<double> values_;
};

/// c * f + shift, pointwise.
[[nodiscard]] SampledPath affine(const SampledPath& f, double c, double shift = 0.0);
/// f - g on a common grid.
[[nodiscard]] SampledPath difference(const SampledPath& f, const SampledPath& g);
/// sup_i |f_i - g_i| (Euclidean per point).
[[nodiscard]] double sup_distance(const SampledPath& f, const SampledPath& g);

/**
 * Two-parameter object Xi_{t_i, t_j}, 0 <= i <= j <= N, with values in R^m.
 *
 * Either backed by dense upper-triangular storage or by an on-demand generator.
 * Copies share the underlying storage/generator; fields are immutable.
 */
class Level2Field {
 public:
  using Generator = std::function<void(std::size_t i, std::size_t j, std::span<double> out)>;

  /// Largest N for which dense storage is permitted.
  static constexpr std::size_t kMaxDenseSteps = 4096;

  Level2Field() = default;
  Level2Field(double horizon, std::size_t steps, std::size_t dim, Generator generator);

  /// Wraps upper-triangular row-major storage: row i holds pairs (i, i), (i, i+1), ..., (i, N).
  [[nodiscard]] static Level2Field from_dense(double horizon, std::size_t steps, std::size_t dim,
                                              std::vector<double> entries);
  /// Number of doubles in dense storage for the given shape.
  [[nodiscard]] static std::size_t dense_size(std::size_t steps, std::size_t dim) noexcept {
    return (steps + 1) * (steps + 2) / 2 * dim;
  }

  /// Evaluates the generator on every pair and stores the result densely. Throws when steps > kMaxDenseSteps.
  [[nodiscard]] Level2Field materialize() const;

  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] std::size_t steps() const noexcept { return steps_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] double dt() const noexcept { return horizon_ / static_cast<double>(steps_); }
  [[nodiscard]] bool is_dense() const noexcept { return dense_ != nullptr; }

  /// Xi_{t_i, t_j} into out (size dim()). Requires i <= j <= steps().
  void eval(std::size_t i, std::size_t j, std::span<double> out) const;
  [[nodiscard]] std::vector<double> operator()(std::size_t i, std::size_t j) const;

  /// Pointwise a * this + b * other on the same grid.
  [[nodiscard]] Level2Field combine(double a, const Level2Field& other, double b) const;
  [[nodiscard]] Level2Field scaled(double a) const;

 private:
  [[nodiscard]] std::size_t offset(std::size_t i, std::size_t j) const noexcept;

  double horizon_ = 0.0;
  std::size_t steps_ = 0;
  std::size_t dim_ = 0;
  Generator generator_;
  std::shared_ptr<const std::vector<double>> dense_;
};

/// Increment field delta f_{s,t} = f_t - f_s of a path.
[[nodiscard]] Level2Field increments(const SampledPath& f);

/// Three-parameter object Xi_{t_i, t_k, t_j}, i <= k <= j, evaluated on demand.
class Level3Field {
 public:
  using Generator = std::function<void(std::size_t i, std::size_t k, std::size_t j, std::span<double> out)>;

  Level3Field() = default;
  Level3Field(double horizon, std::size_t steps, std::size_t dim, Generator generator);

  [[nodiscard]] double horizon() const noexcept { return horizon_; }
  [[nodiscard]] std::size_t steps() const noexcept { return steps_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] double dt() const noexcept { return horizon_ / static_cast<double>(steps_); }

  void eval(std::size_t i, std::size_t k, std::size_t j, std::span<double> out) const;
  [[nodiscard]] std::vector<double> operator()(std::size_t i, std::size_t k, std::size_t j) const;

 private:
  double horizon_ = 0.0;
  std::size_t steps_ = 0;
  std::size_t dim_ = 0;
  Generator generator_;
};

/// delta Xi_{s,u,t} = Xi_{s,t} - Xi_{s,u} - Xi_{u,t}.
[[nodiscard]] Level3Field delta3(const Level2Field& xi);

}  // namespace bor
