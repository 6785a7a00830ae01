#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace bor {

/// Default relative tolerance of the Luxemburg root search.
inline constexpr double kLuxemburgTol = 1e-10;

/**
 * Exponential Young function Phi_beta.
 *
 * For beta >= 1 this is exp(x^beta) - 1. For beta < 1 the map x -> exp(x^beta) - 1
 * is not convex near zero, so it is replaced below the crossover point
 * x_beta = ((1 - beta) / beta)^(1 / beta) by its tangent line and shifted so that
 * Phi_beta(0) = 0. Value and slope are continuous at the crossover.
 */
class YoungFunction {
 public:
  explicit YoungFunction(double beta);

  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double x_crossover() const noexcept { return x_crossover_; }
  /// E_beta(0), the offset removed to make Phi_beta(0) = 0 (zero for beta >= 1).
  [[nodiscard]] double e_at_zero() const noexcept { return e_at_zero_; }
  /// Slope of the linear branch (Psi_beta'(x_beta)); zero when there is no linear branch.
  [[nodiscard]] double linear_slope() const noexcept { return slope_; }

  /// Phi_beta(x). Throws DomainError for negative or non-finite x. Returns +inf on overflow.
  [[nodiscard]] double operator()(double x) const;
  /// Same as operator() without argument checks; x must be >= 0.
  [[nodiscard]] double eval_unchecked(double x) const noexcept;
  /// Inverse of Phi_beta on [0, inf).
  [[nodiscard]] double inverse(double y) const;

 private:
  double beta_;
  double x_crossover_ = 0.0;
  double e_at_zero_ = 0.0;
  double slope_ = 0.0;
};

/// Non-negative samples |f_r| at the left endpoints of a uniform grid on [0, domain_length].
struct SampledFunction {
  double grid_step = 0.0;
  double domain_length = 0.0;
  std::vector<double> values;

  /// Builds a function on [0, length] from values; grid_step = length / values.size().
  static SampledFunction on_interval(double length, std::vector<double> values);
  /// Throws DomainError unless values.size() * grid_step matches domain_length and all values are finite and >= 0.
  void validate() const;
};

[[nodiscard]] double eval_young(const YoungFunction& phi, double x);

/**
 * Luxemburg norm inf{lambda > 0 : sum_i Phi(v_i / lambda) dt <= 1} of left-endpoint samples.
 * The sum is a compensated Riemann sum in fixed order. Returns 0 for identically zero input.
 */
[[nodiscard]] double luxemburg_norm(std::span<const double> values, double dt, const YoungFunction& phi,
                                    double tol = kLuxemburgTol);
[[nodiscard]] double luxemburg_norm(const SampledFunction& f, const YoungFunction& phi, double tol = kLuxemburgTol);

/// Riemann L^p norm; p = +inf gives the sup norm. p < 1 is a DomainError.
[[nodiscard]] double lp_norm(const SampledFunction& f, double p);

/// (max_{p=1..p_max} p^{-1/beta} ||f||_p, ||f||_Phi_beta). Diagnostic for the L^p characterization of Phi_beta.
[[nodiscard]] std::pair<double, double> orlicz_lp_equivalence_ratio(const SampledFunction& f, const YoungFunction& phi,
                                                                    int p_max);

}  // namespace bor
