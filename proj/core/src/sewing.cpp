#include "bor/sewing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bor/error.hpp"
#include "bor/numeric.hpp"

namespace bor {

Partition::Partition(std::vector<double> knots) : knots_(std::move(knots)) {
  if (knots_.size() < 2) throw DomainError("partition needs at least two knots");
  if (knots_.front() != 0.0 || knots_.back() != 1.0) throw DomainError("partition must start at 0 and end at 1");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i] > knots_[i - 1])) throw DomainError("partition knots must be strictly increasing");
  }
}

Partition Partition::dyadic(std::size_t level) {
  if (level > 52) throw DomainError("dyadic partition level too fine for double knots");
  return uniform(std::size_t{1} << level);
}

Partition Partition::uniform(std::size_t intervals) {
  if (intervals == 0) throw DomainError("partition needs at least one interval");
  std::vector<double> k(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) k[i] = static_cast<double>(i) / static_cast<double>(intervals);
  k.back() = 1.0;
  return Partition(std::move(k));
}

double Partition::mesh() const noexcept {
  double m = 0.0;
  for (std::size_t i = 1; i < knots_.size(); ++i) m = std::max(m, knots_[i] - knots_[i - 1]);
  return m;
}

std::vector<double> partial_sum(const Level2Field& xi, const Partition& pi, std::size_t s, std::size_t t) {
  if (s > t || t > xi.steps()) throw DomainError("partial_sum: need s <= t within the grid");
  const std::size_t d = xi.dim();
  const double width = static_cast<double>(t - s);
  std::vector<std::size_t> idx;
  idx.reserve(pi.knots().size());
  for (double k : pi.knots()) {
    const double pos = static_cast<double>(s) + k * width;
    const double r = std::round(pos);
    if (std::abs(pos - r) > 1e-9 * std::max(1.0, width)) {
      throw DomainError("partial_sum: rescaled knot " + std::to_string(k) + " is not a grid point");
    }
    idx.push_back(static_cast<std::size_t>(r));
  }
  std::vector<CompensatedSum> acc(d);
  std::vector<double> buf(d);
  for (std::size_t p = 0; p + 1 < idx.size(); ++p) {
    if (idx[p + 1] == idx[p]) continue;  // degenerate interval when s == t
    xi.eval(idx[p], idx[p + 1], buf);
    for (std::size_t c = 0; c < d; ++c) acc[c].add(buf[c]);
  }
  std::vector<double> out(d);
  for (std::size_t c = 0; c < d; ++c) out[c] = acc[c].value();
  return out;
}

SewingResult sew(const Level2Field& xi, double tol) {
  const std::size_t n = xi.steps(), d = xi.dim();
  if (!is_power_of_two(n)) throw FormatError("sewing needs a power-of-two grid, got N = " + std::to_string(n));
  if (!(tol > 0.0)) throw DomainError("sewing tolerance must be positive");
  const std::size_t levels = floor_log2(n);

  std::vector<double> current((n + 1) * d, 0.0), previous;
  std::vector<double> buf(d), coarse;
  std::vector<CompensatedSum> acc(d);
  SewingResult res;
  double running_sup = 0.0;
  std::size_t k = 0;
  for (;; ++k) {
    const std::size_t cell = n >> k, cells = std::size_t{1} << k;
    // prefix sums over whole coarse cells: coarse[p] = sum_{q < p} Xi_{q c, (q+1) c}
    coarse.assign((cells + 1) * d, 0.0);
    std::fill(acc.begin(), acc.end(), CompensatedSum{});
    for (std::size_t p = 0; p < cells; ++p) {
      xi.eval(p * cell, (p + 1) * cell, buf);
      for (std::size_t c = 0; c < d; ++c) {
        acc[c].add(buf[c]);
        coarse[(p + 1) * d + c] = acc[c].value();
      }
    }
    previous.swap(current);
    current.assign((n + 1) * d, 0.0);
    double level_sup = 0.0, change = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t p = j / cell;
      double* out = current.data() + j * d;
      std::copy(coarse.begin() + static_cast<std::ptrdiff_t>(p * d),
                coarse.begin() + static_cast<std::ptrdiff_t>((p + 1) * d), out);
      if (j % cell != 0) {
        xi.eval(p * cell, j, buf);
        for (std::size_t c = 0; c < d; ++c) out[c] += buf[c];
      }
      double nv = 0.0, dv = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        nv += out[c] * out[c];
        const double diff = out[c] - previous[j * d + c];
        dv += diff * diff;
      }
      if (!std::isfinite(nv)) throw NumericError("sewing: non-finite partial sum at level " + std::to_string(k));
      level_sup = std::max(level_sup, std::sqrt(nv));
      change = std::max(change, std::sqrt(dv));
    }
    running_sup = std::max(running_sup, level_sup);
    if (k == 0) {
      if (levels == 0) {
        res.converged = true;
        break;
      }
      continue;
    }
    res.cauchy_history.push_back(change);
    if (res.cauchy_history.size() >= 2 && change > res.cauchy_history[res.cauchy_history.size() - 2]) {
      ++res.monotonicity_violations;
    }
    if (change <= tol * (1.0 + running_sup)) {
      res.converged = true;
      break;
    }
    if (k == levels) {
      const auto& h = res.cauchy_history;
      res.converged = h.size() >= 2 && h.back() < *std::max_element(h.begin(), h.end() - 1);
      break;
    }
  }
  res.levels_used = k;
  auto path = std::make_shared<const SampledPath>(xi.horizon(), d, std::move(current));
  res.integral = *path;
  res.defect = Level2Field(xi.horizon(), n, d, [path, xi, d](std::size_t i, std::size_t j, std::span<double> out) {
    xi.eval(i, j, out);
    const auto a = (*path)[i], b = (*path)[j];
    for (std::size_t c = 0; c < d; ++c) out[c] = (b[c] - a[c]) - out[c];
  });
  return res;
}

Level2Field rough_germ(const RoughPath& x, const ControlledPath& z) {
  if (z.reference() != x.fingerprint()) throw DimensionError("rough integral: controlled path refers to another driver");
  const std::size_t n = x.dim();
  if (z.value_dim() % n != 0) {
    throw DimensionError("rough integral: integrand dimension " + std::to_string(z.value_dim()) +
                         " is not a multiple of the driver dimension " + std::to_string(n));
  }
  const std::size_t d = z.value_dim() / n;
  auto y = std::make_shared<const SampledPath>(z.y());
  auto yp = std::make_shared<const SampledPath>(z.y_prime());
  auto xp = std::make_shared<const SampledPath>(x.path());
  const Level2Field xx = x.second_level();
  return Level2Field(x.horizon(), x.steps(), d, [y, yp, xp, xx, n, d](std::size_t i, std::size_t j, std::span<double> out) {
    thread_local std::vector<double> area;
    area.resize(n * n);
    xx.eval(i, j, area);
    const auto yi = (*y)[i], ypi = (*yp)[i], xi = (*xp)[i], xj = (*xp)[j];
    for (std::size_t a = 0; a < d; ++a) {
      double s = 0.0;
      for (std::size_t q = 0; q < n; ++q) s += yi[a * n + q] * (xj[q] - xi[q]);
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t l = 0; l < n; ++l) s += ypi[(a * n + q) * n + l] * area[l * n + q];
      }
      out[a] = s;
    }
  });
}

SewingResult rough_integral(const RoughPath& x, const ControlledPath& z, double tol) {
  return sew(rough_germ(x, z), tol);
}

ControlledPath integral_as_controlled(const SewingResult& result, const ControlledPath& z, const RoughPath& x) {
  return ControlledPath(result.integral, z.y(), x);
}

}  // namespace bor
