#pragma once

#include <vector>

#include "bor/controlled.hpp"
#include "bor/rough_lift.hpp"
#include "bor/sampled_path.hpp"

namespace bor {

/// Strictly increasing knots of [0, 1] with exact endpoints 0 and 1.
class Partition {
 public:
  explicit Partition(std::vector<double> knots);
  /// 2^level equal intervals.
  [[nodiscard]] static Partition dyadic(std::size_t level);
  [[nodiscard]] static Partition uniform(std::size_t intervals);

  [[nodiscard]] const std::vector<double>& knots() const noexcept { return knots_; }
  [[nodiscard]] std::size_t intervals() const noexcept { return knots_.size() - 1; }
  /// Largest gap |pi|.
  [[nodiscard]] double mesh() const noexcept;

 private:
  std::vector<double> knots_;
};

/**
 * I^pi Xi over [t_s, t_t] for grid indices s <= t: the sum of Xi over consecutive rescaled
 * knots s + k (t - s). Every rescaled knot must be a grid point; otherwise DomainError.
 */
[[nodiscard]] std::vector<double> partial_sum(const Level2Field& xi, const Partition& pi, std::size_t s,
                                              std::size_t t);

struct SewingResult {
  SampledPath integral;    ///< I on the grid, I_0 = 0
  Level2Field defect;      ///< dI_{s,t} - Xi_{s,t}
  std::size_t levels_used = 0;
  /// cauchy_history[k-1] = sup_t |I^{pi_k}_t - I^{pi_{k-1}}_t|
  std::vector<double> cauchy_history;
  /// Levels k >= 2 whose Cauchy difference exceeds the previous one.
  std::size_t monotonicity_violations = 0;
  bool converged = false;
};

inline constexpr double kDefaultSewingTol = 1e-12;

/**
 * Dyadic sewing on a power-of-two grid. Level k sums Xi over the cells of width T 2^-k that
 * fit in [0, t] plus the trailing partial cell, for every grid endpoint t. Refinement stops
 * once the level-to-level change drops below tol (1 + running sup |I|). When the grid runs
 * out first the result is flagged converged only if the last change is the smallest one seen.
 */
[[nodiscard]] SewingResult sew(const Level2Field& xi, double tol = kDefaultSewingTol);

/// Xi_{s,t} = Y_s dX_{s,t} + Y'_s XX_{s,t}. Y is L(R^n, R^d) valued, flattened Y[i n + j].
[[nodiscard]] Level2Field rough_germ(const RoughPath& x, const ControlledPath& z);

/// Sewing of the rough germ: the rough integral of Y against X.
[[nodiscard]] SewingResult rough_integral(const RoughPath& x, const ControlledPath& z, double tol = kDefaultSewingTol);

/// (I, Y) as a path controlled by X.
[[nodiscard]] ControlledPath integral_as_controlled(const SewingResult& result, const ControlledPath& z,
                                                    const RoughPath& x);

}  // namespace bor
