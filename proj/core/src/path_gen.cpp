#include "bor/path_gen.hpp"

#include <fftw3.h>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <mutex>
#include <numbers>

#include "bor/error.hpp"
#include "bor/numeric.hpp"
#include "bor/rng.hpp"

namespace bor {
namespace {

// FFTW's planner is not thread-safe.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr std::uint64_t kFbmStreamBase = std::uint64_t{1} << 32;

}  // namespace

void DriverSpec::validate() const {
  if (dimension == 0) throw DomainError("driver dimension must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("driver horizon must be positive");
  if (!is_power_of_two(n_steps)) throw DomainError("driver n_steps must be a power of two");
  if (kind == DriverKind::fbm && !(hurst > 1.0 / 3.0 && hurst <= 0.5)) {
    throw DomainError("fbm hurst must lie in (1/3, 1/2], got " + std::to_string(hurst));
  }
  if (kind == DriverKind::fbm && fbm_method == FbmMethod::cholesky && n_steps > kMaxCholeskySteps) {
    throw DomainError("cholesky fbm mode is limited to n_steps <= 1024");
  }
}

DriverKind parse_driver_kind(const std::string& s) {
  if (s == "brownian" || s == "bm") return DriverKind::brownian;
  if (s == "fbm") return DriverKind::fbm;
  if (s == "deterministic") return DriverKind::deterministic;
  throw DomainError("unknown driver kind '" + s + "'");
}

std::string to_string(DriverKind kind) {
  switch (kind) {
    case DriverKind::brownian:
      return "brownian";
    case DriverKind::fbm:
      return "fbm";
    case DriverKind::deterministic:
      return "deterministic";
  }
  return "unknown";
}

SampledPath simulate_bm(const DriverSpec& spec) {
  spec.validate();
  if (spec.kind != DriverKind::brownian) throw DomainError("simulate_bm needs kind = brownian");
  const std::size_t n = spec.n_steps, d = spec.dimension;
  const double sd = std::sqrt(spec.horizon / static_cast<double>(n));
  const CounterRng rng(spec.seed);
  std::vector<double> v((n + 1) * d, 0.0);
  for (std::size_t c = 0; c < d; ++c) {
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w += sd * rng.normal(c, i);
      v[(i + 1) * d + c] = w;
    }
  }
  return SampledPath(spec.horizon, d, std::move(v));
}

double fgn_autocovariance(double hurst, std::size_t k) {
  const double h2 = 2.0 * hurst;
  const double kk = static_cast<double>(k);
  if (k == 0) return 1.0;
  return 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(kk - 1.0, h2));
}

struct FbmGenerator::Impl {
  double hurst;
  std::size_t n;
  double horizon;
  FbmMethod method;
  double scale;  // dt^H
  std::vector<double> sqrt_eig;  // circulant: sqrt(lambda_k / m) for k = 0..n
  double min_eig = 0.0;
  Eigen::MatrixXd chol;          // cholesky: lower factor of the increment covariance
};

FbmGenerator::FbmGenerator(double hurst, std::size_t n_steps, double horizon, FbmMethod method)
    : impl_(std::make_unique<Impl>()) {
  DriverSpec check;
  check.kind = DriverKind::fbm;
  check.hurst = hurst;
  check.n_steps = n_steps;
  check.horizon = horizon;
  check.fbm_method = method;
  check.validate();

  auto& im = *impl_;
  im.hurst = hurst;
  im.n = n_steps;
  im.horizon = horizon;
  im.method = method;
  im.scale = std::pow(horizon / static_cast<double>(n_steps), hurst);

  if (method == FbmMethod::cholesky) {
    Eigen::MatrixXd cov(n_steps, n_steps);
    for (std::size_t i = 0; i < n_steps; ++i) {
      for (std::size_t j = 0; j < n_steps; ++j) cov(i, j) = fgn_autocovariance(hurst, i > j ? i - j : j - i);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) throw NumericError("fbm increment covariance is not positive definite");
    im.chol = llt.matrixL();
    return;
  }

  // Circulant embedding of the stationary increment covariance, size m = 2n.
  const std::size_t m = 2 * n_steps;
  std::vector<double> row(m);
  for (std::size_t j = 0; j <= n_steps; ++j) row[j] = fgn_autocovariance(hurst, j);
  for (std::size_t j = 1; j < n_steps; ++j) row[m - j] = row[j];
  std::vector<fftw_complex> spec(n_steps + 1);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), row.data(), spec.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  im.sqrt_eig.resize(n_steps + 1);
  double max_eig = 0.0;
  im.min_eig = kInfinity;
  for (std::size_t k = 0; k <= n_steps; ++k) {
    max_eig = std::max(max_eig, spec[k][0]);
    im.min_eig = std::min(im.min_eig, spec[k][0]);
  }
  if (im.min_eig < -1e-10 * max_eig) {
    throw NumericError("circulant embedding has a negative eigenvalue " + std::to_string(im.min_eig));
  }
  for (std::size_t k = 0; k <= n_steps; ++k) {
    im.sqrt_eig[k] = std::sqrt(std::max(spec[k][0], 0.0) / static_cast<double>(m));
  }
}

FbmGenerator::~FbmGenerator() = default;
FbmGenerator::FbmGenerator(FbmGenerator&&) noexcept = default;
FbmGenerator& FbmGenerator::operator=(FbmGenerator&&) noexcept = default;

double FbmGenerator::min_eigenvalue() const noexcept { return impl_->min_eig; }

SampledPath FbmGenerator::sample(std::uint64_t seed, std::size_t dimension) const {
  if (dimension == 0) throw DomainError("fbm dimension must be positive");
  const auto& im = *impl_;
  const std::size_t n = im.n;
  const CounterRng rng(seed);
  std::vector<double> v((n + 1) * dimension, 0.0);
  std::vector<double> incr(n);

  for (std::size_t c = 0; c < dimension; ++c) {
    const std::uint64_t stream = kFbmStreamBase + c;
    if (im.method == FbmMethod::cholesky) {
      Eigen::VectorXd g(n);
      for (std::size_t i = 0; i < n; ++i) g(static_cast<Eigen::Index>(i)) = rng.normal(stream, i);
      const Eigen::VectorXd x = im.chol.triangularView<Eigen::Lower>() * g;
      for (std::size_t i = 0; i < n; ++i) incr[i] = x(static_cast<Eigen::Index>(i));
    } else {
      const std::size_t m = 2 * n;
      std::vector<fftw_complex> z(n + 1);
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == 0 || k == n) {
          z[k][0] = im.sqrt_eig[k] * rng.normal(stream, 2 * k);
          z[k][1] = 0.0;
        } else {
          const double s = im.sqrt_eig[k] / std::numbers::sqrt2;
          z[k][0] = s * rng.normal(stream, 2 * k);
          z[k][1] = s * rng.normal(stream, 2 * k + 1);
        }
      }
      std::vector<double> out(m);
      fftw_plan plan;
      {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(m), z.data(), out.data(), FFTW_ESTIMATE);
      }
      fftw_execute(plan);
      {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
      }
      for (std::size_t i = 0; i < n; ++i) incr[i] = out[i];
    }
    double w = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w += im.scale * incr[i];
      v[(i + 1) * dimension + c] = w;
    }
  }
  return SampledPath(im.horizon, dimension, std::move(v));
}

SampledPath simulate_fbm(const DriverSpec& spec) {
  if (spec.kind != DriverKind::fbm) throw DomainError("simulate_fbm needs kind = fbm");
  spec.validate();
  return FbmGenerator(spec.hurst, spec.n_steps, spec.horizon, spec.fbm_method).sample(spec.seed, spec.dimension);
}

SampledPath simulate_deterministic(const DriverSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_steps, d = spec.dimension;
  std::vector<double> v((n + 1) * d);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = spec.horizon * static_cast<double>(i) / static_cast<double>(n);
    double x = 0.0;
    if (spec.expression == "zero") {
      x = 0.0;
    } else if (spec.expression == "linear") {
      x = t;
    } else if (spec.expression == "quadratic") {
      x = t * t;
    } else if (spec.expression == "sine") {
      x = std::sin(2.0 * std::numbers::pi * t / spec.horizon);
    } else {
      throw DomainError("unknown deterministic expression '" + spec.expression + "'");
    }
    for (std::size_t c = 0; c < d; ++c) v[i * d + c] = x;
  }
  return SampledPath(spec.horizon, d, std::move(v));
}

SampledPath simulate(const DriverSpec& spec) {
  switch (spec.kind) {
    case DriverKind::brownian:
      return simulate_bm(spec);
    case DriverKind::fbm:
      return simulate_fbm(spec);
    case DriverKind::deterministic:
      return simulate_deterministic(spec);
  }
  throw DomainError("unknown driver kind");
}

}  // namespace bor
