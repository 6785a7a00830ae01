#include "bor/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bor/error.hpp"
#include "bor/numeric.hpp"

namespace bor {
namespace {

// exp(x) overflows just above 709.78.
constexpr double kExpArgLimit = 700.0;

}  // namespace

YoungFunction::YoungFunction(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("Young function exponent beta must be positive and finite, got " + std::to_string(beta));
  }
  if (beta < 1.0) {
    x_crossover_ = std::pow((1.0 - beta) / beta, 1.0 / beta);
    const double xb = std::pow(x_crossover_, beta);  // = (1 - beta) / beta
    const double psi = std::expm1(xb);
    slope_ = beta * std::pow(x_crossover_, beta - 1.0) * std::exp(xb);
    e_at_zero_ = psi - slope_ * x_crossover_;
  }
}

double YoungFunction::eval_unchecked(double x) const noexcept {
  if (x < x_crossover_) return slope_ * x;
  const double xb = std::pow(x, beta_);
  if (xb > kExpArgLimit) return kInfinity;
  if (e_at_zero_ == 0.0) return std::expm1(xb);
  return std::expm1(xb) - e_at_zero_;
}

double YoungFunction::operator()(double x) const {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("Young function argument must be finite and non-negative, got " + std::to_string(x));
  }
  return eval_unchecked(x);
}

double YoungFunction::inverse(double y) const {
  if (!(y >= 0.0)) throw DomainError("Young function inverse needs y >= 0");
  if (std::isinf(y)) return kInfinity;
  if (x_crossover_ > 0.0 && y <= slope_ * x_crossover_) return y / slope_;
  // exp(x^beta) - 1 - E(0) = y
  return std::pow(std::log1p(y + e_at_zero_), 1.0 / beta_);
}

double eval_young(const YoungFunction& phi, double x) { return phi(x); }

SampledFunction SampledFunction::on_interval(double length, std::vector<double> values) {
  if (values.empty()) throw DomainError("sampled function needs at least one sample");
  SampledFunction f;
  f.grid_step = length / static_cast<double>(values.size());
  f.domain_length = length;
  f.values = std::move(values);
  f.validate();
  return f;
}

void SampledFunction::validate() const {
  if (!(grid_step > 0.0) || !(domain_length > 0.0)) {
    throw DomainError("sampled function needs positive grid step and domain length");
  }
  const double covered = static_cast<double>(values.size()) * grid_step;
  if (std::abs(covered - domain_length) > 1e-9 * domain_length) {
    throw DomainError("sampled function: values.size() * grid_step does not match domain length");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("sampled function values must be finite and >= 0");
  }
}

namespace {

// sum_i Phi(v_i / lambda) dt, short-circuiting to +inf once the sum exceeds any useful bound.
double modular(std::span<const double> values, double dt, const YoungFunction& phi, double lambda) {
  CompensatedSum sum;
  const double inv = 1.0 / lambda;
  for (double v : values) {
    const double term = phi.eval_unchecked(v * inv);
    if (std::isinf(term)) return kInfinity;
    sum.add(term);
  }
  return sum.value() * dt;
}

}  // namespace

double luxemburg_norm(std::span<const double> values, double dt, const YoungFunction& phi, double tol) {
  if (!(dt > 0.0)) throw DomainError("luxemburg_norm: grid step must be positive");
  double vmax = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("luxemburg_norm: samples must be finite and >= 0");
    vmax = std::max(vmax, v);
  }
  if (vmax == 0.0) return 0.0;
  const double length = dt * static_cast<double>(values.size());

  // If every sample equalled vmax the modular would be exactly 1 at this lambda,
  // so it is an upper bound for the infimum.
  double hi = vmax / phi.inverse(1.0 / length);
  double s_hi = modular(values, dt, phi, hi);
  while (s_hi > 1.0) {  // rounding only
    hi *= 2.0;
    s_hi = modular(values, dt, phi, hi);
  }
  double lo = hi * 0.5;
  double s_lo = modular(values, dt, phi, lo);
  while (s_lo <= 1.0) {
    hi = lo;
    s_hi = s_lo;
    lo *= 0.5;
    s_lo = modular(values, dt, phi, lo);
  }

  // Illinois false position on u = log(lambda), g(u) = modular - 1 (decreasing),
  // with a bisection step whenever the bracket fails to halve.
  double u_lo = std::log(lo), u_hi = std::log(hi);
  double g_lo = std::isinf(s_lo) ? 1e300 : s_lo - 1.0;
  double g_hi = s_hi - 1.0;
  int side = 0;
  double width_ref = u_hi - u_lo;
  for (int iter = 0; iter < 300 && (u_hi - u_lo) > tol * 0.5; ++iter) {
    bool bisect = g_lo >= 1e300;
    if (iter % 3 == 0) {
      bisect = bisect || (iter > 0 && (u_hi - u_lo) > 0.5 * width_ref);
      width_ref = u_hi - u_lo;
    }
    double u = 0.5 * (u_lo + u_hi);
    if (!bisect) {
      const double cand = (u_lo * g_hi - u_hi * g_lo) / (g_hi - g_lo);
      if (cand > u_lo && cand < u_hi) u = cand;
    }
    const double s = modular(values, dt, phi, std::exp(u));
    const double g = std::isinf(s) ? 1e300 : s - 1.0;
    if (g == 0.0) {
      u_lo = u_hi = u;
      break;
    }
    if (g > 0.0) {
      u_lo = u;
      g_lo = g;
      if (side == -1) g_hi *= 0.5;
      side = -1;
    } else {
      u_hi = u;
      g_hi = g;
      if (side == 1 && g_lo < 1e300) g_lo *= 0.5;
      side = 1;
    }
  }
  return std::exp(0.5 * (u_lo + u_hi));
}

double luxemburg_norm(const SampledFunction& f, const YoungFunction& phi, double tol) {
  f.validate();
  return luxemburg_norm(f.values, f.grid_step, phi, tol);
}

double lp_norm(const SampledFunction& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
  f.validate();
  if (std::isinf(p)) return sup_abs(f.values);
  const double vmax = sup_abs(f.values);
  if (vmax == 0.0) return 0.0;
  // scale by vmax so large p does not overflow
  CompensatedSum sum;
  for (double v : f.values) sum.add(std::pow(v / vmax, p));
  return vmax * std::pow(sum.value() * f.grid_step, 1.0 / p);
}

std::pair<double, double> orlicz_lp_equivalence_ratio(const SampledFunction& f, const YoungFunction& phi,
                                                      int p_max) {
  if (p_max < 1) throw DomainError("orlicz_lp_equivalence_ratio: p_max must be >= 1");
  double best = 0.0;
  for (int p = 1; p <= p_max; ++p) {
    best = std::max(best, std::pow(static_cast<double>(p), -1.0 / phi.beta()) * lp_norm(f, p));
  }
  return {best, luxemburg_norm(f, phi)};
}

}  // namespace bor
