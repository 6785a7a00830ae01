#include "bor/besov_orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bor/error.hpp"

namespace bor {

void RegularityParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
  if (!(q > 0.0)) throw DomainError("q must be positive (use infinity for the sup aggregate)");
}

double lq_aggregate(const std::vector<double>& terms, double q) {
  if (!(q > 0.0)) throw DomainError("lq_aggregate: q must be positive");
  if (terms.empty()) return 0.0;
  const double m = *std::max_element(terms.begin(), terms.end());
  if (std::isinf(q) || m == 0.0) return m;
  CompensatedSum s;
  for (double t : terms) s.add(std::pow(t / m, q));
  return m * std::pow(s.value(), 1.0 / q);
}

namespace {

struct ShiftStats {
  double norm = 0.0;
  double sup = 0.0;
};

ShiftStats path_shift(const SampledPath& f, std::size_t k, const YoungFunction& phi) {
  const std::size_t n = f.steps();
  if (k == 0 || k >= n) return {};
  std::vector<double> v(n - k);
  double sup = 0.0;
  for (std::size_t r = 0; r < n - k; ++r) {
    double s = 0.0;
    const auto a = f[r];
    const auto b = f[r + k];
    for (std::size_t c = 0; c < f.dim(); ++c) {
      const double d = b[c] - a[c];
      s += d * d;
    }
    v[r] = std::sqrt(s);
    sup = std::max(sup, v[r]);
  }
  return {luxemburg_norm(v, f.dt(), phi), sup};
}

ShiftStats field_shift(const Level2Field& xi, std::size_t k, const YoungFunction& phi) {
  const std::size_t n = xi.steps();
  if (k == 0 || k >= n) return {};
  std::vector<double> v(n - k);
  std::vector<double> buf(xi.dim());
  double sup = 0.0;
  for (std::size_t r = 0; r < n - k; ++r) {
    xi.eval(r, r + k, buf);
    v[r] = euclidean_norm(buf);
    sup = std::max(sup, v[r]);
  }
  return {luxemburg_norm(v, xi.dt(), phi), sup};
}

ShiftStats field3_shift(const Level3Field& xi, std::size_t k, const YoungFunction& phi) {
  const std::size_t n = xi.steps();
  if (k == 0 || k >= n) return {};
  std::vector<double> v(n - k);
  std::vector<double> buf(xi.dim());
  ShiftStats best;
  for (std::size_t m = 0; m <= k; ++m) {
    double sup = 0.0;
    for (std::size_t r = 0; r < n - k; ++r) {
      xi.eval(r, r + m, r + k, buf);
      v[r] = euclidean_norm(buf);
      sup = std::max(sup, v[r]);
    }
    best.sup = std::max(best.sup, sup);
    if (sup > 0.0) best.norm = std::max(best.norm, luxemburg_norm(v, xi.dt(), phi));
  }
  return best;
}

std::size_t shifts_up_to(double tau, double horizon, std::size_t steps) {
  if (!(tau >= 0.0) || tau > horizon * (1.0 + 1e-12)) {
    throw DomainError("modulus: tau must lie in [0, T], got " + std::to_string(tau));
  }
  const double k = tau / horizon * static_cast<double>(steps);
  return std::min(steps, static_cast<std::size_t>(std::floor(k + 1e-9)));
}

std::size_t dyadic_levels(std::size_t steps) {
  if (!is_power_of_two(steps)) {
    throw FormatError("dyadic estimator needs N a power of two, got N = " + std::to_string(steps) +
                      "; resample the path onto a dyadic grid");
  }
  return floor_log2(steps);
}

template <class ShiftFn>
NormReport dyadic_report(std::size_t steps, double horizon, const RegularityParams& params, ShiftFn&& shift) {
  params.validate();
  const std::size_t levels = dyadic_levels(steps);
  const YoungFunction phi(params.beta);
  NormReport rep;
  rep.params = params;
  rep.dyadic_terms.reserve(levels);
  for (std::size_t n = 1; n <= levels; ++n) {
    const std::size_t k = steps >> n;
    const double h = horizon * std::ldexp(1.0, -static_cast<int>(n));
    const ShiftStats st = shift(k, phi);
    rep.dyadic_terms.push_back(std::pow(h, -params.alpha) * st.norm);
    rep.sup_norm = std::max(rep.sup_norm, st.sup);
  }
  rep.seminorm_dyadic = lq_aggregate(rep.dyadic_terms, params.q);
  return rep;
}

// Quadrature over tau given the running-max modulus profile omega[k], k = 0..N.
double quadrature_from_profile(const std::vector<double>& omega, double horizon, const RegularityParams& params) {
  params.validate();
  const std::size_t steps = omega.size() - 1;
  const auto omega_at = [&](double tau) {
    const auto k = std::min(steps, static_cast<std::size_t>(std::floor(tau / horizon * steps + 1e-9)));
    return omega[k];
  };
  const std::size_t levels = floor_log2(steps);
  const double w = std::log(2.0) / 2.0;
  if (std::isinf(params.q)) {
    double best = 0.0;
    for (std::size_t n = 0; n <= levels; ++n) {
      for (double off : {0.0, 0.25, 0.75}) {
        if (n == 0 && off > 0.0) continue;
        const double tau = horizon * std::exp2(-static_cast<double>(n) + off);
        best = std::max(best, omega_at(tau) / std::pow(tau, params.alpha));
      }
    }
    return best;
  }
  CompensatedSum sum;
  for (std::size_t n = 1; n <= levels; ++n) {
    for (double off : {0.25, 0.75}) {
      const double tau = horizon * std::exp2(-static_cast<double>(n) + off);
      sum.add(w * std::pow(omega_at(tau) / std::pow(tau, params.alpha), params.q));
    }
  }
  return std::pow(sum.value(), 1.0 / params.q);
}

template <class ShiftFn>
std::vector<double> modulus_profile(std::size_t steps, std::size_t kmax, const YoungFunction& phi, ShiftFn&& shift) {
  std::vector<double> omega(steps + 1, 0.0);
  for (std::size_t k = 1; k <= kmax; ++k) omega[k] = std::max(omega[k - 1], shift(k, phi).norm);
  for (std::size_t k = kmax + 1; k <= steps; ++k) omega[k] = omega[kmax];
  return omega;
}

}  // namespace

double shift_norm(const SampledPath& f, std::size_t k, const YoungFunction& phi) { return path_shift(f, k, phi).norm; }
double shift_norm(const Level2Field& xi, std::size_t k, const YoungFunction& phi) {
  return field_shift(xi, k, phi).norm;
}
double shift_norm(const Level3Field& xi, std::size_t k, const YoungFunction& phi) {
  return field3_shift(xi, k, phi).norm;
}

double modulus_d2(const SampledPath& f, double tau, double beta) {
  const std::size_t kmax = shifts_up_to(tau, f.horizon(), f.steps());
  const YoungFunction phi(beta);
  double best = 0.0;
  for (std::size_t k = 1; k <= kmax; ++k) best = std::max(best, path_shift(f, k, phi).norm);
  return best;
}

double modulus_d2(const Level2Field& xi, double tau, double beta) {
  const std::size_t kmax = shifts_up_to(tau, xi.horizon(), xi.steps());
  const YoungFunction phi(beta);
  double best = 0.0;
  for (std::size_t k = 1; k <= kmax; ++k) best = std::max(best, field_shift(xi, k, phi).norm);
  return best;
}

double modulus_d3(const Level3Field& xi, double tau, double beta) {
  const std::size_t kmax = shifts_up_to(tau, xi.horizon(), xi.steps());
  const YoungFunction phi(beta);
  double best = 0.0;
  for (std::size_t k = 1; k <= kmax; ++k) best = std::max(best, field3_shift(xi, k, phi).norm);
  return best;
}

NormReport seminorm_dyadic(const SampledPath& f, const RegularityParams& params) {
  NormReport rep = dyadic_report(f.steps(), f.horizon(), params,
                                 [&](std::size_t k, const YoungFunction& phi) { return path_shift(f, k, phi); });
  rep.sup_norm = f.sup_norm();
  return rep;
}

NormReport seminorm_dyadic(const Level2Field& xi, const RegularityParams& params) {
  return dyadic_report(xi.steps(), xi.horizon(), params,
                       [&](std::size_t k, const YoungFunction& phi) { return field_shift(xi, k, phi); });
}

NormReport seminorm_dyadic(const Level3Field& xi, const RegularityParams& params) {
  return dyadic_report(xi.steps(), xi.horizon(), params,
                       [&](std::size_t k, const YoungFunction& phi) { return field3_shift(xi, k, phi); });
}

double seminorm_quadrature(const SampledPath& f, const RegularityParams& params) {
  params.validate();
  dyadic_levels(f.steps());
  const auto omega = modulus_profile(f.steps(), f.steps() - 1, YoungFunction(params.beta),
                                     [&](std::size_t k, const YoungFunction& phi) { return path_shift(f, k, phi); });
  return quadrature_from_profile(omega, f.horizon(), params);
}

double seminorm_quadrature(const Level2Field& xi, const RegularityParams& params) {
  params.validate();
  dyadic_levels(xi.steps());
  const auto omega = modulus_profile(xi.steps(), xi.steps() - 1, YoungFunction(params.beta),
                                     [&](std::size_t k, const YoungFunction& phi) { return field_shift(xi, k, phi); });
  return quadrature_from_profile(omega, xi.horizon(), params);
}

double orlicz_norm(const SampledPath& f, double beta) {
  std::vector<double> v(f.steps());
  for (std::size_t i = 0; i < f.steps(); ++i) v[i] = euclidean_norm(f[i]);
  return luxemburg_norm(v, f.dt(), YoungFunction(beta));
}

EquivalentNorms equivalent_norms(const SampledPath& f, const RegularityParams& params) {
  const double semi = seminorm_dyadic(f, params).seminorm_dyadic;
  return {orlicz_norm(f, params.beta) + semi, euclidean_norm(f[0]) + semi, f.sup_norm() + semi};
}

double besov_orlicz_distance(const SampledPath& f, const SampledPath& g, const RegularityParams& params) {
  const SampledPath d = difference(f, g);
  const double semi = seminorm_dyadic(d, params).seminorm_dyadic;
  return orlicz_norm(d, params.beta) + std::pow(semi, std::min(params.q, 1.0));
}

double besov_orlicz_distance(const Level2Field& a, const Level2Field& b, const RegularityParams& params) {
  const double norm = seminorm_dyadic(a.combine(1.0, b, -1.0), params).seminorm_dyadic;
  return std::pow(norm, std::min(params.q, 1.0));
}

}  // namespace bor
