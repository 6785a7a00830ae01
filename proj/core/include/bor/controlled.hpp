#pragma once

#include <cstdint>

#include "bor/besov_orlicz.hpp"
#include "bor/rough_lift.hpp"
#include "bor/sampled_path.hpp"
#include "bor/vector_fields.hpp"

namespace bor {

/**
 * A path Y controlled by a rough path X = (X, XX) driven by R^n, together with its
 * Gubinelli derivative Y'.
 *
 * Y takes values in R^d (matrix values flattened), Y' in L(R^n, R^d) flattened as
 * Y'[a * n + l]. The remainder R^Y_{s,t} = dY_{s,t} - Y'_s dX_{s,t} is evaluated on
 * demand from the stored samples, so it is exact on the grid.
 */
class ControlledPath {
 public:
  ControlledPath(SampledPath y, SampledPath y_prime, const RoughPath& x);

  [[nodiscard]] const SampledPath& y() const noexcept { return *y_; }
  [[nodiscard]] const SampledPath& y_prime() const noexcept { return *y_prime_; }
  [[nodiscard]] std::uint64_t reference() const noexcept { return reference_; }
  [[nodiscard]] std::size_t value_dim() const noexcept { return y_->dim(); }
  [[nodiscard]] std::size_t driver_dim() const noexcept { return n_; }
  [[nodiscard]] const Level2Field& remainder() const noexcept { return remainder_; }

 private:
  std::shared_ptr<const SampledPath> y_;
  std::shared_ptr<const SampledPath> y_prime_;
  std::shared_ptr<const SampledPath> x_;
  std::size_t n_;
  std::uint64_t reference_;
  Level2Field remainder_;
};

/// Throws DimensionError on grid or shape mismatch. Regularity is measured elsewhere, never enforced.
[[nodiscard]] ControlledPath make_controlled(SampledPath y, SampledPath y_prime, const RoughPath& x);

/// (f(Y), Df(Y) Y') with f(Y)'[a n + l] = sum_p Df_a(Y)[p] Y'[p n + l].
[[nodiscard]] ControlledPath compose(const SmoothVectorField& f, const ControlledPath& z, const RoughPath& x);

struct GubinelliReport {
  NormReport derivative;  ///< [Y'] at (alpha, beta, q)
  NormReport remainder;   ///< ||R^Y|| at (2 alpha, beta / 2, q / 2)
  [[nodiscard]] double value() const noexcept { return derivative.seminorm_dyadic + remainder.seminorm_dyadic; }
};

[[nodiscard]] GubinelliReport gubinelli_report(const ControlledPath& z, const RoughPath& x,
                                               const RegularityParams& params);
/// [Y']_{alpha,beta,q} + ||R^Y||_{2 alpha, beta/2, q/2}
[[nodiscard]] double gubinelli_seminorm(const ControlledPath& z, const RoughPath& x, const RegularityParams& params);

/// d(Y', Y~') + d(R^Y, R^Y~) with the Besov-Orlicz metrics at the derivative and remainder scales.
[[nodiscard]] double controlled_distance(const ControlledPath& a, const ControlledPath& b,
                                         const RegularityParams& params);

}  // namespace bor
