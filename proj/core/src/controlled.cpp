#include "bor/controlled.hpp"

#include <string>

#include "bor/error.hpp"

namespace bor {

ControlledPath::ControlledPath(SampledPath y, SampledPath y_prime, const RoughPath& x)
    : y_(std::make_shared<const SampledPath>(std::move(y))),
      y_prime_(std::make_shared<const SampledPath>(std::move(y_prime))),
      x_(std::make_shared<const SampledPath>(x.path())),
      n_(x.dim()),
      reference_(x.fingerprint()) {
  if (!y_->same_grid(*x_) || !y_prime_->same_grid(*x_)) {
    throw DimensionError("controlled path: Y, Y' and X must share one grid");
  }
  if (y_prime_->dim() != y_->dim() * n_) {
    throw DimensionError("controlled path: Y' has dimension " + std::to_string(y_prime_->dim()) + ", expected " +
                         std::to_string(y_->dim() * n_));
  }
  const std::size_t d = y_->dim(), n = n_;
  remainder_ = Level2Field(x_->horizon(), x_->steps(), d,
                           [yy = y_, yp = y_prime_, xx = x_, d, n](std::size_t i, std::size_t j, std::span<double> out) {
                             const auto yi = (*yy)[i], yj = (*yy)[j], ypi = (*yp)[i];
                             const auto xi = (*xx)[i], xj = (*xx)[j];
                             for (std::size_t a = 0; a < d; ++a) {
                               double r = yj[a] - yi[a];
                               for (std::size_t l = 0; l < n; ++l) r -= ypi[a * n + l] * (xj[l] - xi[l]);
                               out[a] = r;
                             }
                           });
}

ControlledPath make_controlled(SampledPath y, SampledPath y_prime, const RoughPath& x) {
  return ControlledPath(std::move(y), std::move(y_prime), x);
}

ControlledPath compose(const SmoothVectorField& f, const ControlledPath& z, const RoughPath& x) {
  if (z.reference() != x.fingerprint()) throw DimensionError("compose: controlled path refers to another driver");
  const std::size_t m = f.input_dim();
  if (z.value_dim() != m) {
    throw DimensionError("compose: field expects inputs in R^" + std::to_string(m) + ", path has dimension " +
                         std::to_string(z.value_dim()));
  }
  const std::size_t out = f.output_size(), n = z.driver_dim(), pts = z.y().points();
  std::vector<double> fy(pts * out), fyp(pts * out * n), jac(out * m);
  for (std::size_t i = 0; i < pts; ++i) {
    const auto yi = z.y()[i];
    const auto ypi = z.y_prime()[i];
    f.eval(yi, std::span<double>(fy.data() + i * out, out));
    f.d1(yi, jac);
    double* dst = fyp.data() + i * out * n;
    for (std::size_t a = 0; a < out; ++a) {
      for (std::size_t l = 0; l < n; ++l) {
        double s = 0.0;
        for (std::size_t p = 0; p < m; ++p) s += jac[a * m + p] * ypi[p * n + l];
        dst[a * n + l] = s;
      }
    }
  }
  const double horizon = z.y().horizon();
  return ControlledPath(SampledPath(horizon, out, std::move(fy)), SampledPath(horizon, out * n, std::move(fyp)), x);
}

GubinelliReport gubinelli_report(const ControlledPath& z, const RoughPath& x, const RegularityParams& params) {
  if (z.reference() != x.fingerprint()) throw DimensionError("controlled path refers to another driver");
  params.validate();
  return {seminorm_dyadic(z.y_prime(), params), seminorm_dyadic(z.remainder(), params.second_level())};
}

double gubinelli_seminorm(const ControlledPath& z, const RoughPath& x, const RegularityParams& params) {
  return gubinelli_report(z, x, params).value();
}

double controlled_distance(const ControlledPath& a, const ControlledPath& b, const RegularityParams& params) {
  if (a.reference() != b.reference()) throw DimensionError("controlled_distance: paths refer to different drivers");
  return besov_orlicz_distance(a.y_prime(), b.y_prime(), params) +
         besov_orlicz_distance(a.remainder(), b.remainder(), params.second_level());
}

}  // namespace bor
