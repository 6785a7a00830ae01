#include "bor/sampled_path.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bor/error.hpp"
#include "bor/numeric.hpp"

namespace bor {

SampledPath::SampledPath(double horizon, std::size_t dim, std::vector<double> values)
    : horizon_(horizon), dim_(dim), values_(std::move(values)) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("path horizon must be positive and finite");
  if (dim == 0) throw DimensionError("path dimension must be positive");
  if (values_.size() % dim != 0) throw DimensionError("path values are not a multiple of the dimension");
  if (values_.size() / dim < 2) throw DimensionError("path needs at least two grid points");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("path values must be finite");
  }
}

SampledPath SampledPath::zeros(double horizon, std::size_t steps, std::size_t dim) {
  return SampledPath(horizon, dim, std::vector<double>((steps + 1) * dim, 0.0));
}

double SampledPath::sup_norm() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < points(); ++i) m = std::max(m, euclidean_norm((*this)[i]));
  return m;
}

bool SampledPath::same_grid(const SampledPath& other) const noexcept {
  return steps() == other.steps() && std::abs(horizon_ - other.horizon_) <= 1e-12 * horizon_;
}

SampledPath SampledPath::component(std::size_t c) const {
  if (c >= dim_) throw DimensionError("component index out of range");
  std::vector<double> v(points());
  for (std::size_t i = 0; i < points(); ++i) v[i] = at(i, c);
  return SampledPath(horizon_, 1, std::move(v));
}

SampledPath affine(const SampledPath& f, double c, double shift) {
  std::vector<double> v = f.data();
  for (double& x : v) x = c * x + shift;
  return SampledPath(f.horizon(), f.dim(), std::move(v));
}

SampledPath difference(const SampledPath& f, const SampledPath& g) {
  if (!f.same_grid(g) || f.dim() != g.dim()) throw DimensionError("difference: paths live on different grids");
  std::vector<double> v = f.data();
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= g.data()[k];
  return SampledPath(f.horizon(), f.dim(), std::move(v));
}

double sup_distance(const SampledPath& f, const SampledPath& g) {
  if (!f.same_grid(g) || f.dim() != g.dim()) throw DimensionError("sup_distance: paths live on different grids");
  double m = 0.0;
  for (std::size_t i = 0; i < f.points(); ++i) {
    double s = 0.0;
    for (std::size_t c = 0; c < f.dim(); ++c) {
      const double d = f.at(i, c) - g.at(i, c);
      s += d * d;
    }
    m = std::max(m, std::sqrt(s));
  }
  return m;
}

Level2Field::Level2Field(double horizon, std::size_t steps, std::size_t dim, Generator generator)
    : horizon_(horizon), steps_(steps), dim_(dim), generator_(std::move(generator)) {
  if (!(horizon > 0.0)) throw DomainError("field horizon must be positive");
  if (steps == 0 || dim == 0) throw DimensionError("field needs positive steps and dimension");
  if (!generator_) throw DimensionError("field generator is empty");
}

std::size_t Level2Field::offset(std::size_t i, std::size_t j) const noexcept {
  // row i holds pairs (i, i..N): N + 1 - i entries
  const std::size_t n1 = steps_ + 1;
  return (i * n1 - i * (i - 1) / 2 + (j - i)) * dim_;
}

Level2Field Level2Field::from_dense(double horizon, std::size_t steps, std::size_t dim, std::vector<double> entries) {
  if (steps > kMaxDenseSteps) {
    throw DimensionError("dense two-parameter storage is limited to N <= " + std::to_string(kMaxDenseSteps));
  }
  if (entries.size() != dense_size(steps, dim)) throw DimensionError("dense field storage has the wrong size");
  Level2Field out(horizon, steps, dim, [](std::size_t, std::size_t, std::span<double>) {});
  out.dense_ = std::make_shared<const std::vector<double>>(std::move(entries));
  return out;
}

Level2Field Level2Field::materialize() const {
  if (is_dense()) return *this;
  if (steps_ > kMaxDenseSteps) {
    throw DimensionError("dense two-parameter storage is limited to N <= " + std::to_string(kMaxDenseSteps));
  }
  const std::size_t n1 = steps_ + 1;
  auto store = std::make_shared<std::vector<double>>(n1 * (n1 + 1) / 2 * dim_);
  for (std::size_t i = 0; i <= steps_; ++i) {
    for (std::size_t j = i; j <= steps_; ++j) {
      generator_(i, j, std::span<double>(store->data() + offset(i, j), dim_));
    }
  }
  Level2Field out = *this;
  out.dense_ = std::move(store);
  return out;
}

void Level2Field::eval(std::size_t i, std::size_t j, std::span<double> out) const {
  if (dense_) {
    const double* p = dense_->data() + offset(i, j);
    std::copy(p, p + dim_, out.begin());
    return;
  }
  generator_(i, j, out);
}

std::vector<double> Level2Field::operator()(std::size_t i, std::size_t j) const {
  if (i > j || j > steps_) throw DomainError("field index outside the grid simplex");
  std::vector<double> out(dim_);
  eval(i, j, out);
  return out;
}

Level2Field Level2Field::combine(double a, const Level2Field& other, double b) const {
  if (other.steps_ != steps_ || other.dim_ != dim_) throw DimensionError("combine: fields have different shapes");
  auto lhs = *this;
  auto rhs = other;
  const std::size_t d = dim_;
  return Level2Field(horizon_, steps_, dim_, [lhs, rhs, a, b, d](std::size_t i, std::size_t j, std::span<double> out) {
    std::vector<double> tmp(d);
    lhs.eval(i, j, out);
    rhs.eval(i, j, tmp);
    for (std::size_t c = 0; c < d; ++c) out[c] = a * out[c] + b * tmp[c];
  });
}

Level2Field Level2Field::scaled(double a) const {
  auto base = *this;
  return Level2Field(horizon_, steps_, dim_, [base, a](std::size_t i, std::size_t j, std::span<double> out) {
    base.eval(i, j, out);
    for (double& x : out) x *= a;
  });
}

Level2Field increments(const SampledPath& f) {
  auto data = std::make_shared<const SampledPath>(f);
  const std::size_t d = f.dim();
  return Level2Field(f.horizon(), f.steps(), d, [data, d](std::size_t i, std::size_t j, std::span<double> out) {
    const auto a = (*data)[i];
    const auto b = (*data)[j];
    for (std::size_t c = 0; c < d; ++c) out[c] = b[c] - a[c];
  });
}

Level3Field::Level3Field(double horizon, std::size_t steps, std::size_t dim, Generator generator)
    : horizon_(horizon), steps_(steps), dim_(dim), generator_(std::move(generator)) {
  if (!(horizon > 0.0)) throw DomainError("field horizon must be positive");
  if (steps == 0 || dim == 0) throw DimensionError("field needs positive steps and dimension");
  if (!generator_) throw DimensionError("field generator is empty");
}

void Level3Field::eval(std::size_t i, std::size_t k, std::size_t j, std::span<double> out) const {
  generator_(i, k, j, out);
}

std::vector<double> Level3Field::operator()(std::size_t i, std::size_t k, std::size_t j) const {
  if (i > k || k > j || j > steps_) throw DomainError("field index outside the grid simplex");
  std::vector<double> out(dim_);
  eval(i, k, j, out);
  return out;
}

Level3Field delta3(const Level2Field& xi) {
  const std::size_t d = xi.dim();
  return Level3Field(xi.horizon(), xi.steps(), d,
                     [xi, d](std::size_t i, std::size_t k, std::size_t j, std::span<double> out) {
                       std::vector<double> a(d), b(d);
                       xi.eval(i, j, out);
                       xi.eval(i, k, a);
                       xi.eval(k, j, b);
                       for (std::size_t c = 0; c < d; ++c) out[c] = out[c] - a[c] - b[c];
                     });
}

}  // namespace bor
