#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bor {

/**
 * Smooth map f: R^m -> R^{rows x cols} with analytic derivatives up to order three.
 *
 * Output index a = r * cols + c. Derivative tensors are row-major with the output
 * index first: D1[a * m + p], D2[(a * m + p) * m + q], D3[((a * m + p) * m + q) * m + s].
 */
class SmoothVectorField {
 public:
  using Fn = std::function<void(std::span<const double> y, std::span<double> out)>;

  struct Derivatives {
    Fn value;
    Fn d1;
    Fn d2;
    Fn d3;  ///< empty for C^2-only fields
  };

  SmoothVectorField(std::string name, std::size_t input_dim, std::size_t rows, std::size_t cols, Derivatives fns,
                    std::array<double, 4> bounds);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] std::size_t input_dim() const noexcept { return m_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t output_size() const noexcept { return rows_ * cols_; }
  /// sup-norms of f, Df, D2f, D3f; +inf marks an unbounded field.
  [[nodiscard]] const std::array<double, 4>& bounds() const noexcept { return bounds_; }
  [[nodiscard]] bool is_bounded() const noexcept;
  [[nodiscard]] bool has_third_derivative() const noexcept { return static_cast<bool>(fns_.d3); }

  void eval(std::span<const double> y, std::span<double> out) const { fns_.value(y, out); }
  void d1(std::span<const double> y, std::span<double> out) const { fns_.d1(y, out); }
  void d2(std::span<const double> y, std::span<double> out) const { fns_.d2(y, out); }
  void d3(std::span<const double> y, std::span<double> out) const;

  [[nodiscard]] std::vector<double> eval(std::span<const double> y) const;
  [[nodiscard]] std::vector<double> d1(std::span<const double> y) const;

 private:
  std::string name_;
  std::size_t m_, rows_, cols_;
  Derivatives fns_;
  std::array<double, 4> bounds_;
};

/// Largest relative mismatch between central differences of D^k f and D^{k+1} f (k = 0, 1, 2) over the points.
[[nodiscard]] double derivative_consistency(const SmoothVectorField& f, const std::vector<std::vector<double>>& points,
                                            double h = 1e-5);

namespace fields {

[[nodiscard]] SmoothVectorField zero(std::size_t m, std::size_t cols);
/// f(y) = A, with A row-major m x cols.
[[nodiscard]] SmoothVectorField constant(std::size_t m, std::size_t cols, std::vector<double> a);
/// f(y)_a = sum_p A[a * m + p] y_p; unbounded.
[[nodiscard]] SmoothVectorField linear(std::size_t m, std::size_t rows, std::size_t cols, std::vector<double> a);
/// f(y) = y as an m x 1 matrix.
[[nodiscard]] SmoothVectorField identity(std::size_t m);
/// Componentwise sin(y_i) as an m x 1 matrix.
[[nodiscard]] SmoothVectorField sin(std::size_t m);
[[nodiscard]] SmoothVectorField cos(std::size_t m);
[[nodiscard]] SmoothVectorField tanh(std::size_t m);
/// f(y)_a = scale[a] exp(-|y|^2 / (2 width^2)), shape m x cols.
[[nodiscard]] SmoothVectorField gaussian_bump(std::size_t m, std::size_t cols, std::vector<double> scale, double width);
/// f(y)_a = sum_p A[a * m + p] s(y_p) with s(x) = x / sqrt(1 + x^2).
[[nodiscard]] SmoothVectorField saturating_linear(std::size_t m, std::size_t cols, std::vector<double> a);
/// f(y)_{i,j} = sin(y_i + phase_j): a bounded m x n field coupling every driver coordinate.
[[nodiscard]] SmoothVectorField sin_coupled(std::size_t m, std::size_t n);

/// Builds a built-in field by name for the CLI: zero, constant, linear, identity, sin, cos, tanh, bump, saturating, sin_coupled.
[[nodiscard]] SmoothVectorField by_name(const std::string& name, std::size_t m, std::size_t n);

}  // namespace fields
}  // namespace bor
