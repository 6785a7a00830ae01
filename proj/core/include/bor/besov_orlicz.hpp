#pragma once

#include <optional>
#include <vector>

#include "bor/numeric.hpp"
#include "bor/orlicz.hpp"
#include "bor/sampled_path.hpp"

namespace bor {

/// Smoothness alpha, Orlicz exponent beta and fine index q (q may be kInfinity).
struct RegularityParams {
  double alpha = 0.5;
  double beta = 2.0;
  double q = kInfinity;

  /// Throws DomainError unless alpha > 0, beta > 0 and q > 0.
  void validate() const;
  /// (2 alpha, beta / 2, q / 2): the parameters of second-level objects.
  [[nodiscard]] RegularityParams second_level() const { return {2.0 * alpha, beta / 2.0, q / 2.0}; }
};

/**
 * Dyadic breakdown of a Besov-Orlicz seminorm.
 *
 * dyadic_terms[n-1] = (T 2^-n)^-alpha * ||object at shift T 2^-n||_Phi_beta for n = 1..log2 N,
 * and seminorm_dyadic is their l^q aggregate.
 */
struct NormReport {
  RegularityParams params;
  std::vector<double> dyadic_terms;
  double seminorm_dyadic = 0.0;
  std::optional<double> seminorm_quadrature;
  /// Path: max_i |f_i|. Fields: max |Xi| over the pairs visited by the dyadic estimator.
  double sup_norm = 0.0;
};

/// l^q norm of non-negative terms; q = kInfinity gives the max. q in (0,1) gives the quasi-norm.
[[nodiscard]] double lq_aggregate(const std::vector<double>& terms, double q);

/// Luxemburg norm of r -> |Xi_{r, r+k dt}| on [0, T - k dt]; for paths Xi = delta f.
[[nodiscard]] double shift_norm(const SampledPath& f, std::size_t k, const YoungFunction& phi);
[[nodiscard]] double shift_norm(const Level2Field& xi, std::size_t k, const YoungFunction& phi);
/// sup over grid-representable theta = m / k of the Luxemburg norm of r -> |Xi_{r, r + m dt, r + k dt}|.
[[nodiscard]] double shift_norm(const Level3Field& xi, std::size_t k, const YoungFunction& phi);

/// omega_Phi_beta(obj, tau): sup over grid shifts h <= tau of the shift norm. tau outside [0, T] is a DomainError.
[[nodiscard]] double modulus_d2(const SampledPath& f, double tau, double beta);
[[nodiscard]] double modulus_d2(const Level2Field& xi, double tau, double beta);
[[nodiscard]] double modulus_d3(const Level3Field& xi, double tau, double beta);

/// Dyadic estimator of [f] / ||Xi||. Requires N to be a power of two (FormatError otherwise).
[[nodiscard]] NormReport seminorm_dyadic(const SampledPath& f, const RegularityParams& params);
[[nodiscard]] NormReport seminorm_dyadic(const Level2Field& xi, const RegularityParams& params);
[[nodiscard]] NormReport seminorm_dyadic(const Level3Field& xi, const RegularityParams& params);

/**
 * || omega(tau) / tau^alpha ||_{L^q(dtau / tau)} by log-midpoint quadrature: each dyadic band
 * [T 2^-n, T 2^-n+1] is split into two sub-bands in log scale. q = inf takes the sup over the
 * band edges and midpoints. Diagnostic cross-check of the dyadic estimator.
 */
[[nodiscard]] double seminorm_quadrature(const SampledPath& f, const RegularityParams& params);
[[nodiscard]] double seminorm_quadrature(const Level2Field& xi, const RegularityParams& params);

struct EquivalentNorms {
  double n_phi = 0.0;  ///< ||f||_Phi_beta + [f]
  double n_0 = 0.0;    ///< |f_0| + [f]
  double n_inf = 0.0;  ///< ||f||_inf + [f]
};

[[nodiscard]] EquivalentNorms equivalent_norms(const SampledPath& f, const RegularityParams& params);

/// Luxemburg norm of t -> |f_t| over [0, T] (left-endpoint samples).
[[nodiscard]] double orlicz_norm(const SampledPath& f, double beta);

/// Metric ||f - g||_Phi_beta + [f - g]^{min(q,1)}.
[[nodiscard]] double besov_orlicz_distance(const SampledPath& f, const SampledPath& g, const RegularityParams& params);
/// Metric ||Xi - Xi~||^{min(q,1)} for two-parameter objects.
[[nodiscard]] double besov_orlicz_distance(const Level2Field& a, const Level2Field& b, const RegularityParams& params);

}  // namespace bor
