#include "bor/rde.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "bor/error.hpp"
#include "bor/numeric.hpp"

namespace bor {
namespace {

// f(Y_k) and Df(Y_k) Y'_k for every sample k of a window.
struct Composed {
  std::vector<double> f;
  std::vector<double> fp;
};

Composed compose_samples(const SmoothVectorField& field, const std::vector<double>& y, const std::vector<double>& yp,
                         std::size_t points, std::size_t n) {
  const std::size_t m = field.input_dim(), out = field.output_size();
  Composed c{std::vector<double>(points * out), std::vector<double>(points * out * n)};
  std::vector<double> jac(out * m);
  for (std::size_t k = 0; k < points; ++k) {
    const std::span<const double> yk(y.data() + k * m, m);
    const double* ypk = yp.data() + k * m * n;
    field.eval(yk, std::span<double>(c.f.data() + k * out, out));
    field.d1(yk, jac);
    double* dst = c.fp.data() + k * out * n;
    for (std::size_t a = 0; a < out; ++a) {
      for (std::size_t l = 0; l < n; ++l) {
        double s = 0.0;
        for (std::size_t p = 0; p < m; ++p) s += jac[a * m + p] * ypk[p * n + l];
        dst[a * n + l] = s;
      }
    }
  }
  return c;
}

// Rough germ of (F, F') on the grid window [first, first + cells].
Level2Field window_germ(const RoughPath& x, std::size_t first, std::size_t cells, std::size_t m,
                        std::shared_ptr<const Composed> comp) {
  const std::size_t n = x.dim();
  const Level2Field xx = x.second_level();
  const SampledPath* xp = &x.path();
  return Level2Field(x.path().dt() * static_cast<double>(cells), cells, m,
                     [xx, xp, first, comp, n, m](std::size_t i, std::size_t j, std::span<double> out) {
                       thread_local std::vector<double> area;
                       area.resize(n * n);
                       xx.eval(first + i, first + j, area);
                       const auto xi = (*xp)[first + i], xj = (*xp)[first + j];
                       const double* f = comp->f.data() + i * m * n;
                       const double* fp = comp->fp.data() + i * m * n * n;
                       for (std::size_t a = 0; a < m; ++a) {
                         double s = 0.0;
                         for (std::size_t q = 0; q < n; ++q) s += f[a * n + q] * (xj[q] - xi[q]);
                         for (std::size_t q = 0; q < n; ++q) {
                           for (std::size_t l = 0; l < n; ++l) s += fp[(a * n + q) * n + l] * area[l * n + q];
                         }
                         out[a] = s;
                       }
                     });
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b, std::size_t dim) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); k += dim) {
    double s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) {
      const double d = a[k + c] - b[k + c];
      s += d * d;
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

double sup_point(const std::vector<double>& a, std::size_t dim) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); k += dim) {
    worst = std::max(worst, euclidean_norm(std::span<const double>(a.data() + k, dim)));
  }
  return worst;
}

struct WindowOutcome {
  bool ok = false;
  std::size_t iterations = 0;
  double residual = kInfinity;
  std::vector<double> y;
  std::vector<double> yp;
};

WindowOutcome picard_window(const RdeProblem& pb, const PicardOptions& opt, std::size_t first, std::size_t cells,
                            std::span<const double> ya, const std::optional<InitialGuess>& guess) {
  const std::size_t m = pb.state_dim(), n = pb.driver.dim(), pts = cells + 1;
  const SampledPath& x = pb.driver.path();
  WindowOutcome w;
  w.y.resize(pts * m);
  w.yp.resize(pts * m * n);
  if (guess) {
    // shift the guess so that it starts at the window's initial value
    const auto g0 = guess->y[first];
    for (std::size_t k = 0; k < pts; ++k) {
      const auto gk = guess->y[first + k];
      for (std::size_t a = 0; a < m; ++a) w.y[k * m + a] = ya[a] + (gk[a] - g0[a]);
      const auto gpk = guess->y_prime[first + k];
      std::copy(gpk.begin(), gpk.end(), w.yp.begin() + static_cast<std::ptrdiff_t>(k * m * n));
    }
  } else {
    const std::vector<double> fa = pb.field.eval(ya);
    const auto x0 = x[first];
    for (std::size_t k = 0; k < pts; ++k) {
      const auto xk = x[first + k];
      for (std::size_t a = 0; a < m; ++a) {
        double s = ya[a];
        for (std::size_t l = 0; l < n; ++l) s += fa[a * n + l] * (xk[l] - x0[l]);
        w.y[k * m + a] = s;
      }
      std::copy(fa.begin(), fa.end(), w.yp.begin() + static_cast<std::ptrdiff_t>(k * m * n));
    }
  }
  const double first_scale = 1.0 + sup_point(w.y, m);
  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    auto comp = std::make_shared<Composed>(compose_samples(pb.field, w.y, w.yp, pts, n));
    const SewingResult sr = sew(window_germ(pb.driver, first, cells, m, comp), opt.sewing_tol);
    std::vector<double> y_next(pts * m);
    for (std::size_t k = 0; k < pts; ++k) {
      const auto ik = sr.integral[k];
      for (std::size_t a = 0; a < m; ++a) y_next[k * m + a] = ya[a] + ik[a];
    }
    const double res = sup_diff(y_next, w.y, m) + sup_diff(comp->f, w.yp, m * n);
    w.y = std::move(y_next);
    w.yp = std::move(comp->f);
    w.iterations = it;
    w.residual = res;
    const double mag = sup_point(w.y, m);
    if (!std::isfinite(res) || !(mag <= opt.blowup) || res > 1e6 * first_scale) return w;
    if (res < opt.tol) {
      w.ok = true;
      return w;
    }
  }
  return w;
}

std::vector<double> eval_field_on(const SmoothVectorField& f, const SampledPath& y) {
  const std::size_t out = f.output_size();
  std::vector<double> v(y.points() * out);
  for (std::size_t k = 0; k < y.points(); ++k) f.eval(y[k], std::span<double>(v.data() + k * out, out));
  return v;
}

}  // namespace

void RdeProblem::validate() const {
  const std::size_t m = field.input_dim();
  if (field.rows() != m || field.cols() != driver.dim()) {
    throw DimensionError("rde: field must map R^" + std::to_string(m) + " to R^{" + std::to_string(m) + "x" +
                         std::to_string(driver.dim()) + "}");
  }
  if (y0.size() != m) throw DimensionError("rde: y0 has the wrong dimension");
  if (!is_power_of_two(driver.steps())) throw FormatError("rde: driver grid must have a power-of-two number of steps");
  if (!(window.initial_fraction > 0.0 && window.initial_fraction <= 1.0)) {
    throw DomainError("rde: initial window fraction must lie in (0, 1]");
  }
  for (double v : y0) {
    if (!std::isfinite(v)) throw DomainError("rde: y0 must be finite");
  }
  params.validate();
}

RdeSolution solve_picard(const RdeProblem& problem, const PicardOptions& options, const std::optional<InitialGuess>& guess) {
  problem.validate();
  if (!(options.tol > 0.0) || options.max_iter == 0) throw DomainError("solve_picard: need tol > 0 and max_iter >= 1");
  const std::size_t m = problem.state_dim(), n = problem.driver.dim(), big_n = problem.driver.steps();
  if (guess && (!guess->y.same_grid(problem.driver.path()) || guess->y.dim() != m || guess->y_prime.dim() != m * n)) {
    throw DimensionError("solve_picard: initial guess does not match the problem");
  }
  const double T = problem.driver.horizon(), dt = problem.driver.path().dt();

  RdeSolution sol;
  if (!problem.field.is_bounded()) {
    sol.warnings.push_back("field '" + problem.field.name() + "' is unbounded; magnitudes are monitored");
  }
  if (!problem.field.has_third_derivative()) {
    sol.warnings.push_back("field '" + problem.field.name() + "' is only C^2; stability is not covered");
  }

  std::vector<double> y((big_n + 1) * m), yp((big_n + 1) * m * n);
  std::copy(problem.y0.begin(), problem.y0.end(), y.begin());
  {
    const auto f0 = problem.field.eval(problem.y0);
    std::copy(f0.begin(), f0.end(), yp.begin());
  }

  std::size_t width = std::max<std::size_t>(
      1, std::size_t{1} << floor_log2(std::max<std::size_t>(
             1, static_cast<std::size_t>(std::floor(problem.window.initial_fraction * static_cast<double>(big_n))))));
  std::size_t start = 0;
  bool failed = false;
  while (start < big_n) {
    const std::size_t cells = std::min(width, big_n - start);
    const std::span<const double> ya(y.data() + start * m, m);
    WindowOutcome w = picard_window(problem, options, start, cells, ya, guess);
    if (!w.ok) {
      if (sol.halvings < problem.window.max_halvings && cells > 1) {
        ++sol.halvings;
        width = std::max<std::size_t>(1, cells / 2);
        continue;
      }
      failed = true;
      sol.residual = std::max(sol.residual, w.residual);
      sol.windows.emplace_back(start * dt, (start + cells) * dt);
      sol.picard_iters_per_window.push_back(w.iterations);
      sol.warnings.push_back("Picard iteration did not contract on [" + std::to_string(start * dt) + ", " +
                             std::to_string((start + cells) * dt) + "] after " + std::to_string(sol.halvings) +
                             " halvings; last residual " + std::to_string(w.residual));
      // keep the last iterate when it is finite, then hold the final value to the horizon
      const bool finite = std::all_of(w.y.begin(), w.y.end(), [](double v) { return std::isfinite(v); });
      const std::size_t kept = finite ? cells : 0;
      for (std::size_t k = 1; k <= kept; ++k) {
        std::copy_n(w.y.begin() + static_cast<std::ptrdiff_t>(k * m), m, y.begin() + static_cast<std::ptrdiff_t>((start + k) * m));
      }
      for (std::size_t k = start + kept + 1; k <= big_n; ++k) {
        std::copy_n(y.begin() + static_cast<std::ptrdiff_t>((start + kept) * m), m, y.begin() + static_cast<std::ptrdiff_t>(k * m));
      }
      break;
    }
    std::copy(w.y.begin() + static_cast<std::ptrdiff_t>(m), w.y.end(),
              y.begin() + static_cast<std::ptrdiff_t>((start + 1) * m));
    std::copy(w.yp.begin() + static_cast<std::ptrdiff_t>(m * n), w.yp.end(),
              yp.begin() + static_cast<std::ptrdiff_t>((start + 1) * m * n));
    sol.residual = std::max(sol.residual, w.residual);
    sol.windows.emplace_back(start * dt, (start + cells) * dt);
    sol.picard_iters_per_window.push_back(w.iterations);
    start += cells;
  }

  sol.y = SampledPath(T, m, y);
  sol.y_prime = SampledPath(T, m * n, eval_field_on(problem.field, sol.y));
  sol.converged = !failed;
  if (failed) {
    sol.fixed_point_defect = kInfinity;
    return sol;
  }

  // certificate: one more application of the Picard map over [0, T] to the stitched iterate
  const ControlledPath current(sol.y, SampledPath(T, m * n, yp), problem.driver);
  const ControlledPath next = picard_step(problem, current, options.sewing_tol);
  sol.fixed_point_defect = sup_distance(next.y(), current.y()) + sup_distance(next.y_prime(), current.y_prime());
  if (options.report_metric) sol.metric_distance = controlled_distance(current, next, problem.params);
  return sol;
}

ControlledPath picard_step(const RdeProblem& problem, const ControlledPath& z, double sewing_tol) {
  const std::size_t m = problem.state_dim();
  const ControlledPath fz = compose(problem.field, z, problem.driver);
  const SewingResult sr = rough_integral(problem.driver, fz, sewing_tol);
  SampledPath y = sr.integral;
  for (std::size_t k = 0; k < y.points(); ++k) {
    auto row = y.row(k);
    for (std::size_t a = 0; a < m; ++a) row[a] += problem.y0[a];
  }
  return ControlledPath(std::move(y), fz.y(), problem.driver);
}

RdeSolution solve_onestep(const RdeProblem& problem, double blowup) {
  problem.validate();
  const std::size_t m = problem.state_dim(), n = problem.driver.dim(), big_n = problem.driver.steps();
  const SampledPath& x = problem.driver.path();
  const Level2Field& xx = problem.driver.second_level();
  RdeSolution sol;
  if (!problem.field.is_bounded()) {
    sol.warnings.push_back("field '" + problem.field.name() + "' is unbounded; magnitudes are monitored");
  }
  std::vector<double> y((big_n + 1) * m);
  std::copy(problem.y0.begin(), problem.y0.end(), y.begin());
  std::vector<double> f(m * n), jac(m * n * m), area(n * n), ff(m * n * n);
  for (std::size_t i = 0; i < big_n; ++i) {
    const std::span<const double> yi(y.data() + i * m, m);
    problem.field.eval(yi, f);
    problem.field.d1(yi, jac);
    xx.eval(i, i + 1, area);
    const auto x0 = x[i], x1 = x[i + 1];
    // Df(Y)[f(Y)] laid out like a Gubinelli derivative: ff[(a n + q) n + l]
    for (std::size_t a = 0; a < m * n; ++a) {
      for (std::size_t l = 0; l < n; ++l) {
        double s = 0.0;
        for (std::size_t p = 0; p < m; ++p) s += jac[a * m + p] * f[p * n + l];
        ff[a * n + l] = s;
      }
    }
    double mag = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      double s = yi[a];
      for (std::size_t q = 0; q < n; ++q) s += f[a * n + q] * (x1[q] - x0[q]);
      for (std::size_t q = 0; q < n; ++q) {
        for (std::size_t l = 0; l < n; ++l) s += ff[(a * n + q) * n + l] * area[l * n + q];
      }
      y[(i + 1) * m + a] = s;
      mag += s * s;
    }
    if (!(std::sqrt(mag) <= blowup)) {
      throw NumericError("one-step scheme blew up at t = " + std::to_string(x.time(i + 1)) + " (|Y| = " +
                         std::to_string(std::sqrt(mag)) + ")");
    }
  }
  sol.y = SampledPath(x.horizon(), m, std::move(y));
  sol.y_prime = SampledPath(x.horizon(), m * n, eval_field_on(problem.field, sol.y));
  sol.windows.emplace_back(0.0, x.horizon());
  sol.converged = true;
  return sol;
}

RegularityReport regularity_report(const RdeSolution& sol, const RoughPath& x, const RegularityParams& params) {
  params.validate();
  const ControlledPath z(sol.y, sol.y_prime, x);
  return {seminorm_dyadic(sol.y, params), seminorm_dyadic(z.remainder(), params.second_level())};
}

SampledPath stratonovich_flow(const SmoothVectorField& field, const std::vector<double>& y0, const SampledPath& x,
                              double max_step) {
  const std::size_t m = field.input_dim();
  if (x.dim() != 1 || field.cols() != 1 || field.rows() != m) {
    throw DimensionError("stratonovich_flow needs a one-dimensional driver and an m x 1 field");
  }
  if (y0.size() != m) throw DimensionError("stratonovich_flow: y0 has the wrong dimension");
  if (!(max_step > 0.0)) throw DomainError("stratonovich_flow: max_step must be positive");
  std::vector<double> out(x.points() * m);
  std::vector<double> y = y0, k1(m), k2(m), k3(m), k4(m), tmp(m);
  std::copy(y.begin(), y.end(), out.begin());
  for (std::size_t i = 1; i < x.points(); ++i) {
    const double du = x.at(i, 0) - x.at(i - 1, 0);
    const auto sub = static_cast<std::size_t>(std::ceil(std::abs(du) / max_step));
    const double h = sub == 0 ? 0.0 : du / static_cast<double>(sub);
    for (std::size_t s = 0; s < sub; ++s) {
      field.eval(y, k1);
      for (std::size_t a = 0; a < m; ++a) tmp[a] = y[a] + 0.5 * h * k1[a];
      field.eval(tmp, k2);
      for (std::size_t a = 0; a < m; ++a) tmp[a] = y[a] + 0.5 * h * k2[a];
      field.eval(tmp, k3);
      for (std::size_t a = 0; a < m; ++a) tmp[a] = y[a] + h * k3[a];
      field.eval(tmp, k4);
      for (std::size_t a = 0; a < m; ++a) y[a] += h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    }
    std::copy(y.begin(), y.end(), out.begin() + static_cast<std::ptrdiff_t>(i * m));
  }
  return SampledPath(x.horizon(), m, std::move(out));
}

}  // namespace bor
