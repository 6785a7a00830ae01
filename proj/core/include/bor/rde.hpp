#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bor/besov_orlicz.hpp"
#include "bor/controlled.hpp"
#include "bor/rough_lift.hpp"
#include "bor/sewing.hpp"
#include "bor/vector_fields.hpp"

namespace bor {

/// Picard windows start at initial_fraction * T and halve on failure, at most max_halvings times.
struct WindowPolicy {
  double initial_fraction = 1.0;
  std::size_t max_halvings = 10;
};

/// dY = f(Y) dX, Y_0 = y0, with f: R^m -> R^{m x n} and X driven by R^n.
struct RdeProblem {
  RoughPath driver;
  SmoothVectorField field;
  std::vector<double> y0;
  RegularityParams params{};
  WindowPolicy window{};

  /// Throws DimensionError / FormatError / DomainError on an inconsistent problem.
  void validate() const;
  [[nodiscard]] std::size_t state_dim() const noexcept { return field.input_dim(); }
};

struct PicardOptions {
  double tol = 1e-10;
  std::size_t max_iter = 200;
  double sewing_tol = kDefaultSewingTol;
  /// Iterates with |Y| above this count as blown up.
  double blowup = 1e8;
  /// Also evaluate the controlled-path metric between the last two iterates.
  bool report_metric = true;
};

struct RegularityReport {
  NormReport path;       ///< [Y] at (alpha, beta, q)
  NormReport remainder;  ///< ||R^Y|| at (2 alpha, beta / 2, q / 2)
};

struct RdeSolution {
  SampledPath y;
  SampledPath y_prime;  ///< f(Y), flattened m x n
  std::vector<std::size_t> picard_iters_per_window;
  std::vector<std::pair<double, double>> windows;
  /// Largest final Picard residual over the windows (sup |dY| + sup |dY'|).
  double residual = 0.0;
  /// Change under one more global application of the Picard map.
  double fixed_point_defect = 0.0;
  /// Controlled-path metric between the last two iterates.
  std::optional<double> metric_distance;
  std::size_t halvings = 0;
  bool converged = false;
  std::vector<std::string> warnings;
  std::optional<RegularityReport> regularity;
};

/// Starting iterate for every window in place of the anchor y_a + f(y_a)(X_t - X_a).
struct InitialGuess {
  SampledPath y;
  SampledPath y_prime;
};

/**
 * Picard iteration of Z(Y, Y') = (y + int f(Y) dX, f(Y)) on successive windows. A window that
 * does not reach tol within max_iter, or blows up, is halved; once the halving limit is spent
 * the result is returned with converged = false and the diagnostics gathered so far.
 */
[[nodiscard]] RdeSolution solve_picard(const RdeProblem& problem, const PicardOptions& options = {},
                                       const std::optional<InitialGuess>& guess = std::nullopt);

/// Y_{i+1} = Y_i + f(Y_i) dX + Df(Y_i)[f(Y_i)] XX. Throws NumericError once |Y| exceeds blowup.
[[nodiscard]] RdeSolution solve_onestep(const RdeProblem& problem, double blowup = 1e8);

/// One application of the Picard map over the whole horizon to (Y, Y').
[[nodiscard]] ControlledPath picard_step(const RdeProblem& problem, const ControlledPath& z,
                                         double sewing_tol = kDefaultSewingTol);

[[nodiscard]] RegularityReport regularity_report(const RdeSolution& sol, const RoughPath& x,
                                                 const RegularityParams& params);

/**
 * Stratonovich flow for a one-dimensional driver: Y_t = phi(X_t - X_0) where phi' = f(phi),
 * phi(0) = y0, integrated by classical RK4 along the sampled values with |step| <= max_step.
 */
[[nodiscard]] SampledPath stratonovich_flow(const SmoothVectorField& field, const std::vector<double>& y0,
                                            const SampledPath& x, double max_step = 1e-3);

}  // namespace bor
