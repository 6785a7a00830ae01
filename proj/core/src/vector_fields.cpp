#include "bor/vector_fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bor/error.hpp"
#include "bor/numeric.hpp"

namespace bor {

SmoothVectorField::SmoothVectorField(std::string name, std::size_t input_dim, std::size_t rows, std::size_t cols,
                                     Derivatives fns, std::array<double, 4> bounds)
    : name_(std::move(name)), m_(input_dim), rows_(rows), cols_(cols), fns_(std::move(fns)), bounds_(bounds) {
  if (m_ == 0 || rows_ == 0 || cols_ == 0) throw DimensionError("vector field dimensions must be positive");
  if (!fns_.value || !fns_.d1 || !fns_.d2) throw DimensionError("vector field needs value, D1 and D2");
}

bool SmoothVectorField::is_bounded() const noexcept {
  const std::size_t orders = has_third_derivative() ? 4 : 3;
  for (std::size_t k = 0; k < orders; ++k) {
    if (!std::isfinite(bounds_[k])) return false;
  }
  return true;
}

void SmoothVectorField::d3(std::span<const double> y, std::span<double> out) const {
  if (!fns_.d3) throw DomainError("vector field '" + name_ + "' is only C^2; no third derivative");
  fns_.d3(y, out);
}

std::vector<double> SmoothVectorField::eval(std::span<const double> y) const {
  std::vector<double> out(output_size());
  eval(y, out);
  return out;
}

std::vector<double> SmoothVectorField::d1(std::span<const double> y) const {
  std::vector<double> out(output_size() * m_);
  d1(y, out);
  return out;
}

double derivative_consistency(const SmoothVectorField& f, const std::vector<std::vector<double>>& points, double h) {
  const std::size_t m = f.input_dim(), out = f.output_size();
  double worst = 0.0;
  const std::size_t orders = f.has_third_derivative() ? 3 : 2;
  for (const auto& y0 : points) {
    if (y0.size() != m) throw DimensionError("derivative_consistency: point has the wrong dimension");
    for (std::size_t k = 0; k < orders; ++k) {
      // compare D^{k+1} against central differences of D^k
      std::size_t lower = out;
      for (std::size_t r = 0; r < k; ++r) lower *= m;
      const auto eval_k = [&](std::span<const double> y, std::span<double> o) {
        if (k == 0) f.eval(y, o);
        else if (k == 1) f.d1(y, o);
        else f.d2(y, o);
      };
      std::vector<double> upper(lower * m), plus(lower), minus(lower);
      if (k == 0) f.d1(y0, upper);
      else if (k == 1) f.d2(y0, upper);
      else f.d3(y0, upper);
      for (std::size_t p = 0; p < m; ++p) {
        std::vector<double> yp = y0, ym = y0;
        yp[p] += h;
        ym[p] -= h;
        eval_k(yp, plus);
        eval_k(ym, minus);
        for (std::size_t e = 0; e < lower; ++e) {
          const double fd = (plus[e] - minus[e]) / (2.0 * h);
          const double exact = upper[e * m + p];
          worst = std::max(worst, std::abs(fd - exact) / (1.0 + std::abs(exact)));
        }
      }
    }
  }
  return worst;
}

namespace fields {
namespace {

struct ScalarProfile {
  double (*g0)(double);
  double (*g1)(double);
  double (*g2)(double);
  double (*g3)(double);
};

// Componentwise f_i(y) = g(y_i) as an m x 1 field.
SmoothVectorField componentwise(std::string name, std::size_t m, ScalarProfile g, std::array<double, 4> bounds) {
  SmoothVectorField::Derivatives d;
  d.value = [m, g](std::span<const double> y, std::span<double> o) {
    for (std::size_t i = 0; i < m; ++i) o[i] = g.g0(y[i]);
  };
  d.d1 = [m, g](std::span<const double> y, std::span<double> o) {
    std::fill(o.begin(), o.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) o[i * m + i] = g.g1(y[i]);
  };
  d.d2 = [m, g](std::span<const double> y, std::span<double> o) {
    std::fill(o.begin(), o.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) o[(i * m + i) * m + i] = g.g2(y[i]);
  };
  d.d3 = [m, g](std::span<const double> y, std::span<double> o) {
    std::fill(o.begin(), o.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) o[((i * m + i) * m + i) * m + i] = g.g3(y[i]);
  };
  return SmoothVectorField(std::move(name), m, m, 1, std::move(d), bounds);
}

double frob(const std::vector<double>& a) { return euclidean_norm(a); }

void check_size(const std::vector<double>& a, std::size_t expected, const char* what) {
  if (a.size() != expected) throw DimensionError(std::string(what) + ": coefficient array has the wrong size");
}

}  // namespace

SmoothVectorField zero(std::size_t m, std::size_t cols) {
  return constant(m, cols, std::vector<double>(m * cols, 0.0));
}

SmoothVectorField constant(std::size_t m, std::size_t cols, std::vector<double> a) {
  check_size(a, m * cols, "constant field");
  const double norm = frob(a);
  SmoothVectorField::Derivatives d;
  d.value = [a](std::span<const double>, std::span<double> o) { std::copy(a.begin(), a.end(), o.begin()); };
  const auto zeros = [](std::span<const double>, std::span<double> o) { std::fill(o.begin(), o.end(), 0.0); };
  d.d1 = zeros;
  d.d2 = zeros;
  d.d3 = zeros;
  return SmoothVectorField(norm == 0.0 ? "zero" : "constant", m, m, cols, std::move(d), {norm, 0.0, 0.0, 0.0});
}

SmoothVectorField linear(std::size_t m, std::size_t rows, std::size_t cols, std::vector<double> a) {
  check_size(a, rows * cols * m, "linear field");
  const std::size_t out = rows * cols;
  const double norm = frob(a);
  SmoothVectorField::Derivatives d;
  d.value = [a, m, out](std::span<const double> y, std::span<double> o) {
    for (std::size_t e = 0; e < out; ++e) {
      double s = 0.0;
      for (std::size_t p = 0; p < m; ++p) s += a[e * m + p] * y[p];
      o[e] = s;
    }
  };
  d.d1 = [a](std::span<const double>, std::span<double> o) { std::copy(a.begin(), a.end(), o.begin()); };
  const auto zeros = [](std::span<const double>, std::span<double> o) { std::fill(o.begin(), o.end(), 0.0); };
  d.d2 = zeros;
  d.d3 = zeros;
  return SmoothVectorField("linear", m, rows, cols, std::move(d), {kInfinity, norm, 0.0, 0.0});
}

SmoothVectorField identity(std::size_t m) {
  std::vector<double> a(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) a[i * m + i] = 1.0;
  auto f = linear(m, m, 1, std::move(a));
  return SmoothVectorField("identity", m, m, 1,
                           {[m](std::span<const double> y, std::span<double> o) {
                              std::copy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(m), o.begin());
                            },
                            [f](std::span<const double> y, std::span<double> o) { f.d1(y, o); },
                            [f](std::span<const double> y, std::span<double> o) { f.d2(y, o); },
                            [f](std::span<const double> y, std::span<double> o) { f.d3(y, o); }},
                           f.bounds());
}

SmoothVectorField sin(std::size_t m) {
  return componentwise("sin", m,
                       {[](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
                        [](double x) { return -std::sin(x); }, [](double x) { return -std::cos(x); }},
                       {1.0, 1.0, 1.0, 1.0});
}

SmoothVectorField cos(std::size_t m) {
  return componentwise("cos", m,
                       {[](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); },
                        [](double x) { return -std::cos(x); }, [](double x) { return std::sin(x); }},
                       {1.0, 1.0, 1.0, 1.0});
}

SmoothVectorField tanh(std::size_t m) {
  return componentwise("tanh", m,
                       {[](double x) { return std::tanh(x); },
                        [](double x) {
                          const double t = std::tanh(x);
                          return 1.0 - t * t;
                        },
                        [](double x) {
                          const double t = std::tanh(x);
                          return -2.0 * t * (1.0 - t * t);
                        },
                        [](double x) {
                          const double t = std::tanh(x);
                          return -2.0 * (1.0 - t * t) * (1.0 - 3.0 * t * t);
                        }},
                       {1.0, 1.0, 4.0 / (3.0 * std::sqrt(3.0)), 2.0});
}

SmoothVectorField gaussian_bump(std::size_t m, std::size_t cols, std::vector<double> scale, double width) {
  check_size(scale, m * cols, "gaussian bump");
  if (!(width > 0.0)) throw DomainError("gaussian bump width must be positive");
  const std::size_t out = m * cols;
  const double w2 = width * width;
  const auto bump = [m, w2](std::span<const double> y) {
    double r2 = 0.0;
    for (std::size_t p = 0; p < m; ++p) r2 += y[p] * y[p];
    return std::exp(-r2 / (2.0 * w2));
  };
  SmoothVectorField::Derivatives d;
  d.value = [scale, out, bump](std::span<const double> y, std::span<double> o) {
    const double g = bump(y);
    for (std::size_t a = 0; a < out; ++a) o[a] = scale[a] * g;
  };
  d.d1 = [scale, out, m, w2, bump](std::span<const double> y, std::span<double> o) {
    const double g = bump(y);
    for (std::size_t a = 0; a < out; ++a) {
      for (std::size_t p = 0; p < m; ++p) o[a * m + p] = scale[a] * (-y[p] / w2) * g;
    }
  };
  d.d2 = [scale, out, m, w2, bump](std::span<const double> y, std::span<double> o) {
    const double g = bump(y);
    for (std::size_t a = 0; a < out; ++a) {
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
          const double h = y[p] * y[q] / (w2 * w2) - (p == q ? 1.0 / w2 : 0.0);
          o[(a * m + p) * m + q] = scale[a] * h * g;
        }
      }
    }
  };
  d.d3 = [scale, out, m, w2, bump](std::span<const double> y, std::span<double> o) {
    const double g = bump(y);
    for (std::size_t a = 0; a < out; ++a) {
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
          for (std::size_t s = 0; s < m; ++s) {
            const double h = y[p] * y[q] / (w2 * w2) - (p == q ? 1.0 / w2 : 0.0);
            const double dh = ((p == s ? y[q] : 0.0) + (q == s ? y[p] : 0.0)) / (w2 * w2);
            o[((a * m + p) * m + q) * m + s] = scale[a] * (dh - h * y[s] / w2) * g;
          }
        }
      }
    }
  };
  const double sn = frob(scale);
  return SmoothVectorField("bump", m, m, cols, std::move(d),
                           {sn, sn * std::exp(-0.5) / width, sn / w2, sn * 1.38 / (w2 * width)});
}

SmoothVectorField saturating_linear(std::size_t m, std::size_t cols, std::vector<double> a) {
  check_size(a, m * cols * m, "saturating linear field");
  const std::size_t out = m * cols;
  const auto s0 = [](double x) { return x / std::sqrt(1.0 + x * x); };
  const auto s1 = [](double x) { return std::pow(1.0 + x * x, -1.5); };
  const auto s2 = [](double x) { return -3.0 * x * std::pow(1.0 + x * x, -2.5); };
  const auto s3 = [](double x) { return (12.0 * x * x - 3.0) * std::pow(1.0 + x * x, -3.5); };
  SmoothVectorField::Derivatives d;
  d.value = [a, m, out, s0](std::span<const double> y, std::span<double> o) {
    for (std::size_t e = 0; e < out; ++e) {
      double s = 0.0;
      for (std::size_t p = 0; p < m; ++p) s += a[e * m + p] * s0(y[p]);
      o[e] = s;
    }
  };
  d.d1 = [a, m, out, s1](std::span<const double> y, std::span<double> o) {
    for (std::size_t e = 0; e < out; ++e) {
      for (std::size_t p = 0; p < m; ++p) o[e * m + p] = a[e * m + p] * s1(y[p]);
    }
  };
  d.d2 = [a, m, out, s2](std::span<const double> y, std::span<double> o) {
    std::fill(o.begin(), o.end(), 0.0);
    for (std::size_t e = 0; e < out; ++e) {
      for (std::size_t p = 0; p < m; ++p) o[(e * m + p) * m + p] = a[e * m + p] * s2(y[p]);
    }
  };
  d.d3 = [a, m, out, s3](std::span<const double> y, std::span<double> o) {
    std::fill(o.begin(), o.end(), 0.0);
    for (std::size_t e = 0; e < out; ++e) {
      for (std::size_t p = 0; p < m; ++p) o[((e * m + p) * m + p) * m + p] = a[e * m + p] * s3(y[p]);
    }
  };
  const double an = frob(a);
  return SmoothVectorField("saturating", m, m, cols, std::move(d), {an, an, 0.8587 * an, 3.0 * an});
}

SmoothVectorField sin_coupled(std::size_t m, std::size_t n) {
  const auto phase = [n](std::size_t j) { return std::numbers::pi * static_cast<double>(j) / (2.0 * static_cast<double>(n)); };
  SmoothVectorField::Derivatives d;
  d.value = [m, n, phase](std::span<const double> y, std::span<double> o) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) o[i * n + j] = std::sin(y[i] + phase(j));
    }
  };
  // k-th derivative of sin(x) is sin(x + k pi / 2)
  const auto deriv = [m, n, phase](int order) {
    return [m, n, phase, order](std::span<const double> y, std::span<double> o) {
      std::fill(o.begin(), o.end(), 0.0);
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          std::size_t idx = i * n + j;
          for (int r = 0; r < order; ++r) idx = idx * m + i;
          o[idx] = std::sin(y[i] + phase(j) + order * std::numbers::pi / 2.0);
        }
      }
    };
  };
  d.d1 = deriv(1);
  d.d2 = deriv(2);
  d.d3 = deriv(3);
  const double b = std::sqrt(static_cast<double>(m * n));
  return SmoothVectorField("sin_coupled", m, m, n, std::move(d), {b, b, b, b});
}

SmoothVectorField by_name(const std::string& name, std::size_t m, std::size_t n) {
  const auto need_scalar_noise = [&] {
    if (n != 1) throw DimensionError("field '" + name + "' is m x 1; use sin_coupled for multi-dimensional drivers");
  };
  if (name == "zero") return zero(m, n);
  if (name == "constant") return constant(m, n, std::vector<double>(m * n, 1.0));
  if (name == "linear" || name == "saturating") {
    std::vector<double> a(m * n * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[(i * n + j) * m + i] = 1.0;
    }
    return name == "linear" ? linear(m, m, n, std::move(a)) : saturating_linear(m, n, std::move(a));
  }
  if (name == "identity") {
    need_scalar_noise();
    return identity(m);
  }
  if (name == "sin") {
    need_scalar_noise();
    return sin(m);
  }
  if (name == "cos") {
    need_scalar_noise();
    return cos(m);
  }
  if (name == "tanh") {
    need_scalar_noise();
    return tanh(m);
  }
  if (name == "bump") return gaussian_bump(m, n, std::vector<double>(m * n, 1.0), 1.0);
  if (name == "sin_coupled") return sin_coupled(m, n);
  throw DomainError("unknown vector field '" + name + "'");
}

}  // namespace fields
}  // namespace bor
