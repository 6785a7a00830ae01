#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bor/besov_orlicz.hpp"
#include "bor/sampled_path.hpp"

namespace bor {

/// Element (1, b, c) of the truncated tensor algebra T^(2)(R^n); c is row-major n x n.
struct TensorLevel2 {
  std::vector<double> b;
  std::vector<double> c;

  TensorLevel2() = default;
  TensorLevel2(std::vector<double> b_, std::vector<double> c_);

  [[nodiscard]] static TensorLevel2 identity(std::size_t n);
  [[nodiscard]] std::size_t dim() const noexcept { return b.size(); }
  /// The scalar level is always 1.
  [[nodiscard]] static constexpr double scalar_part() noexcept { return 1.0; }
};

/// (1,b,c) (x) (1,b~,c~) = (1, b + b~, c + c~ + b b~^T)
[[nodiscard]] TensorLevel2 tensor_mul(const TensorLevel2& a, const TensorLevel2& b);
/// (1,b,c)^-1 = (1, -b, -c + b b^T)
[[nodiscard]] TensorLevel2 tensor_inv(const TensorLevel2& a);
/// delta_lambda (1,b,c) = (1, lambda b, lambda^2 c)
[[nodiscard]] TensorLevel2 dilate(const TensorLevel2& a, double lambda);
/// max{|b|, sqrt(2 |c|)} with Euclidean / Hilbert-Schmidt norms.
[[nodiscard]] double homogeneous_norm(const TensorLevel2& a);
/// (N(a) + N(a^-1)) / 2
[[nodiscard]] double symmetric_norm(const TensorLevel2& a);
/// |||a^-1 (x) b|||
[[nodiscard]] double rp_distance(const TensorLevel2& a, const TensorLevel2& b);

enum class LiftKind { stratonovich_scalar, ito_scalar, leftpoint_md, custom };
enum class ScalarLift { stratonovich, ito };

[[nodiscard]] std::string to_string(LiftKind kind);

/// Which grid triples the Chen check visits.
struct ChenCheckPolicy {
  /// All triples are checked when N <= this.
  std::size_t exhaustive_up_to = 256;
  std::size_t random_triples = 100000;
  std::uint64_t seed = 0x5eed;
};

struct ChenReport {
  double max_defect = 0.0;
  double tolerance = 0.0;
  std::size_t triples_checked = 0;
  [[nodiscard]] bool ok() const noexcept { return max_defect <= tolerance; }
};

/// max |delta XX_{s,u,t} - dX_{s,u} dX_{u,t}^T| against the tolerance 1e-12 (1 + ||X||_inf^2).
[[nodiscard]] ChenReport chen_defect(const SampledPath& x, const Level2Field& xx, const ChenCheckPolicy& policy = {});

/**
 * Level-2 rough path X = (X, XX) on a grid. XX takes values in R^{n x n} (row-major).
 * The constructor verifies Chen's relation and throws NumericError when it fails.
 */
class RoughPath {
 public:
  RoughPath(SampledPath x, Level2Field xx, LiftKind kind, const ChenCheckPolicy& policy = {});

  [[nodiscard]] const SampledPath& path() const noexcept { return x_; }
  [[nodiscard]] const Level2Field& second_level() const noexcept { return xx_; }
  [[nodiscard]] LiftKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t dim() const noexcept { return x_.dim(); }
  [[nodiscard]] std::size_t steps() const noexcept { return x_.steps(); }
  [[nodiscard]] double horizon() const noexcept { return x_.horizon(); }
  [[nodiscard]] const ChenReport& chen() const noexcept { return chen_; }

  /// (1, dX_{ij}, XX_{ij})
  [[nodiscard]] TensorLevel2 increment(std::size_t i, std::size_t j) const;
  /// 64-bit fingerprint of the first-level samples; identifies the controlling path.
  [[nodiscard]] std::uint64_t fingerprint() const noexcept { return fingerprint_; }

 private:
  SampledPath x_;
  Level2Field xx_;
  LiftKind kind_;
  ChenReport chen_;
  std::uint64_t fingerprint_;
};

[[nodiscard]] std::uint64_t fingerprint(const SampledPath& x) noexcept;

/// XX_{s,t} = (dX_{s,t})^2 / 2, minus half the grid quadratic variation increment for Ito.
[[nodiscard]] RoughPath lift_scalar(const SampledPath& x, ScalarLift mode, const ChenCheckPolicy& policy = {});

enum class StoragePolicy { automatic, dense, implicit };
/// Above this N the automatic policy evaluates left-point areas from prefix sums.
inline constexpr std::size_t kAutoDenseSteps = 1024;

/// XX_{t_i,t_j} = sum_{k=i}^{j-1} (X_{t_k} - X_{t_i}) (X_{t_k+1} - X_{t_k})^T.
[[nodiscard]] RoughPath lift_md_leftpoint(const SampledPath& x, StoragePolicy storage = StoragePolicy::automatic,
                                          const ChenCheckPolicy& policy = {});

/// delta_lambda X = (lambda X, lambda^2 XX).
[[nodiscard]] RoughPath dilate(const RoughPath& x, double lambda);

/// [X]_{alpha,beta,q} + ||XX||_{2 alpha, beta/2, q/2}^{1/2}
[[nodiscard]] double rough_path_norm(const RoughPath& x, const RegularityParams& params);

/// Debug export "i,j,x11,x12,..." of all second-level entries; N <= 256 only.
void export_second_level_csv(std::ostream& out, const RoughPath& x);

}  // namespace bor
