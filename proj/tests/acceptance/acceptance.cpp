// Standalone acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: bor_acceptance [criterion-number ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bor/orlicz.hpp"
#include "bor/path_gen.hpp"
#include "bor/rde.hpp"
#include "bor/rough_lift.hpp"
#include "bor/sewing.hpp"
#include "bor_cli/cli.hpp"
#include "test_support.hpp"

using namespace bor;
namespace bt = bor::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome chen_exactness() {
  double worst_ratio = 0.0;
  bool ok = true;
  std::size_t triples = 0;
  for (std::size_t steps : {std::size_t{256}, std::size_t{4096}}) {
    const auto w1 = bt::brownian(1, steps);
    const auto w3 = bt::brownian(2, steps, 3);
    for (const RoughPath& x : {lift_scalar(w1, ScalarLift::stratonovich), lift_scalar(w1, ScalarLift::ito),
                               lift_md_leftpoint(w3)}) {
      ok = ok && x.chen().ok();
      worst_ratio = std::max(worst_ratio, x.chen().max_defect / x.chen().tolerance);
      triples += x.chen().triples_checked;
    }
  }
  return {ok, "worst defect/tolerance " + fmt("%.3g", worst_ratio) + " over " + std::to_string(triples) + " triples"};
}

Outcome telescoping() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto w = bt::brownian(seed, 1024);
    const auto x = lift_scalar(w, ScalarLift::stratonovich);
    const auto z = make_controlled(w, SampledPath(1.0, 1, std::vector<double>(1025, 1.0)), x);
    const auto r = rough_integral(x, z);
    const double exact = 0.5 * (w.at(1024, 0) * w.at(1024, 0) - w.at(0, 0) * w.at(0, 0));
    worst = std::max(worst, std::abs(r.integral.at(1024, 0) - exact));
  }
  return {worst <= 1e-12, "max abs error " + fmt("%.3g", worst)};
}

Outcome luxemburg_closed_forms() {
  const double one = luxemburg_norm(SampledFunction::on_interval(1.0, std::vector<double>(4096, 1.0)), YoungFunction(2.0));
  std::vector<double> half(4096, 0.0);
  std::fill(half.begin(), half.begin() + 2048, 1.0);
  const double ind = luxemburg_norm(SampledFunction::on_interval(1.0, half), YoungFunction(1.0));
  const double e1 = std::abs(one - 1.0 / std::sqrt(std::numbers::ln2));
  const double e2 = std::abs(ind - 1.0 / std::log(3.0));
  return {e1 <= 1e-9 && e2 <= 1e-9, "errors " + fmt("%.3g", e1) + ", " + fmt("%.3g", e2)};
}

Outcome power_identity() {
  std::mt19937_64 gen(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::normal_distribution<double> nd(0.0, 0.5 + 0.02 * trial);
    std::vector<double> f(200);
    for (auto& v : f) v = std::abs(nd(gen));
    for (double p : {0.5, 2.0, 3.0}) {
      std::vector<double> fp(f);
      for (auto& v : fp) v = std::pow(v, p);
      const double lhs = luxemburg_norm(SampledFunction::on_interval(1.0, fp), YoungFunction(2.0));
      const double rhs = std::pow(luxemburg_norm(SampledFunction::on_interval(1.0, f), YoungFunction(2.0 * p)), p);
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
  }
  return {worst <= 1e-8, "max relative error " + fmt("%.3g", worst) + " (beta = 2)"};
}

Outcome delta_identity() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto w = bt::brownian(seed, 64, 2);
    const auto x = lift_md_leftpoint(w);
    // Y: R^{1 x 2}-valued integrand, Y': 2 x 2, both independent random paths
    const auto y = bt::brownian(seed + 50, 64, 2);
    const auto yp = bt::brownian(seed + 90, 64, 4);
    const auto z = make_controlled(y, yp, x);
    const auto d = delta3(rough_germ(x, z));
    const auto& r = z.remainder();
    for (std::size_t s = 0; s <= 64; ++s) {
      for (std::size_t t = s; t <= 64; ++t) {
        for (std::size_t u = s; u <= t; ++u) {
          const auto rsu = r(s, u);
          const auto xx = x.second_level()(u, t);
          double expected = 0.0;
          for (std::size_t q = 0; q < 2; ++q) {
            expected -= rsu[q] * (w.at(t, q) - w.at(u, q));
            for (std::size_t l = 0; l < 2; ++l) {
              expected -= (yp.at(u, q * 2 + l) - yp.at(s, q * 2 + l)) * xx[l * 2 + q];
            }
          }
          worst = std::max(worst, std::abs(d(s, u, t)[0] - expected));
        }
      }
    }
  }
  return {worst <= 1e-13, "max entry mismatch " + fmt("%.3g", worst)};
}

double flow_error(const SampledPath& y, const SampledPath& w) {
  double worst = 0.0;
  for (std::size_t i = 0; i <= w.steps(); ++i) {
    worst = std::max(worst, std::abs(y.at(i, 0) - 2.0 * std::atan(std::exp(w.at(i, 0) - w.at(0, 0)))));
  }
  return worst;
}

RdeProblem sin_problem(const SampledPath& w) {
  return RdeProblem{lift_scalar(w, ScalarLift::stratonovich), fields::sin(1), {std::numbers::pi / 2.0}, {0.45, 2.0, kInfinity}, {}};
}

Outcome rde_oracle() {
  const std::vector<std::size_t> log2s{10, 11, 12, 13};
  std::vector<std::vector<double>> errors(log2s.size());
  double worst_4096 = 0.0;
  bool all_converged = true;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto fine = bt::brownian(seed, 8192);
    for (std::size_t k = 0; k < log2s.size(); ++k) {
      const auto w = bt::subsample(fine, std::size_t{1} << (13 - log2s[k]));
      const auto sol = solve_picard(sin_problem(w));
      all_converged = all_converged && sol.converged;
      errors[k].push_back(flow_error(sol.y, w));
      if (log2s[k] == 12) worst_4096 = std::max(worst_4096, errors[k].back());
    }
  }
  const double m10 = bt::median(errors.front()), m13 = bt::median(errors.back());
  const double rate = std::log2(m10 / m13) / 3.0;
  return {all_converged && worst_4096 <= 5e-3 && rate >= 0.5,
          "worst error at N=2^12 " + fmt("%.3g", worst_4096) + ", median " + fmt("%.3g", m10) + " -> " + fmt("%.3g", m13) +
              ", rate " + fmt("%.2f", rate)};
}

Outcome scheme_cross_validation() {
  const PicardOptions opt;
  const double floor = 10.0 * opt.tol;
  std::vector<double> medians;
  double worst_4096 = 0.0;
  for (std::size_t lg : {10, 11, 12}) {
    std::vector<double> diffs;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto w = bt::subsample(bt::brownian(seed + 300, 4096), std::size_t{1} << (12 - lg));
      const auto pb = sin_problem(w);
      diffs.push_back(sup_distance(solve_picard(pb, opt).y, solve_onestep(pb).y));
      if (lg == 12) worst_4096 = std::max(worst_4096, diffs.back());
    }
    medians.push_back(bt::median(diffs));
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < medians.size(); ++k) {
    decreasing = decreasing && (medians[k] <= medians[k - 1] || std::max(medians[k], medians[k - 1]) < floor);
  }
  return {worst_4096 <= 1e-2 && decreasing,
          "worst sup diff at N=2^12 " + fmt("%.3g", worst_4096) + ", medians " + fmt("%.2g", medians[0]) + ", " +
              fmt("%.2g", medians[1]) + ", " + fmt("%.2g", medians[2]) + " (floor " + fmt("%.0g", floor) + ")"};
}

double fbm_cov(double h, double s, double t) {
  return 0.5 * (std::pow(s, 2 * h) + std::pow(t, 2 * h) - std::pow(std::abs(t - s), 2 * h));
}

Outcome fbm_law() {
  const std::size_t seeds = 2000;
  const std::vector<std::pair<std::size_t, std::size_t>> pairs{{256, 1024}, {512, 1024}, {512, 768}, {1024, 1024}};
  double worst_z = 0.0;
  for (double h : {0.35, 0.4, 0.5}) {
    const FbmGenerator gen(h, 1024, 1.0);
    std::vector<SampledPath> paths;
    paths.reserve(seeds);
    for (std::size_t k = 0; k < seeds; ++k) paths.push_back(gen.sample(k));
    for (const auto& [i, j] : pairs) {
      double m = 0.0, m2 = 0.0;
      for (const auto& p : paths) {
        const double v = p.at(i, 0) * p.at(j, 0);
        m += v;
        m2 += v * v;
      }
      m /= seeds;
      const double var = (m2 / seeds - m * m) * seeds / (seeds - 1);
      const double z = std::abs(m - fbm_cov(h, i / 1024.0, j / 1024.0)) / std::sqrt(var / seeds);
      worst_z = std::max(worst_z, z);
    }
  }
  const FbmGenerator circ(0.4, 1024, 1.0), chol(0.4, 1024, 1.0, FbmMethod::cholesky);
  std::vector<double> a(seeds), b(seeds);
  for (std::size_t k = 0; k < seeds; ++k) {
    a[k] = circ.sample(k).at(1024, 0);
    b[k] = chol.sample(k + 1000000).at(1024, 0);
  }
  const double ks = bt::ks_statistic(a, b), critical = 1.628 * std::sqrt(2.0 / seeds);
  return {worst_z < 4.0 && ks < critical,
          "worst |z| " + fmt("%.2f", worst_z) + ", KS " + fmt("%.4f", ks) + " < " + fmt("%.4f", critical)};
}

Outcome profile_experiment() {
  const auto dir = bt::scratch_dir("acceptance_profile");
  ::setenv("BOR_OUTPUT_DIR", dir.c_str(), 1);
  std::ostringstream out, err;
  const int code = cli::run({"profile", "--seeds", "20", "--min-log2", "10", "--max-log2", "14", "--alpha", "0.5",
                             "--beta", "2", "--q", "1", "--q", "2", "--q", "inf", "--report", "profile.json"},
                            out, err);
  ::unsetenv("BOR_OUTPUT_DIR");
  if (code != 0) return {false, "profile exited with " + std::to_string(code) + ": " + err.str()};
  std::ifstream in(dir / "profile.json");
  const auto j = nlohmann::json::parse(in);
  const auto& s = j["results"]["summary"];
  const double spread = s["inf"]["max_over_min"].get<double>();
  const bool increasing = s["1"]["strictly_increasing"].get<bool>();
  return {spread < 2.0 && increasing, "q=inf max/min " + fmt("%.3f", spread) + ", q=1 strictly increasing: " +
                                          (increasing ? "yes" : "no")};
}

Outcome driver_stability() {
  const auto w = bt::brownian(13, 4096);
  const auto base = solve_picard(sin_problem(w));
  std::vector<double> ratios;
  for (double eps : {1e-2, 1e-3, 1e-4}) {
    SampledPath p = w;
    for (std::size_t i = 0; i <= w.steps(); ++i) p.row(i)[0] += eps * std::sin(2.0 * std::numbers::pi * w.time(i));
    ratios.push_back(sup_distance(solve_picard(sin_problem(p)).y, base.y) / eps);
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  return {*lo > 0.0 && *hi / *lo <= 4.0, "response ratios " + fmt("%.4g", ratios[0]) + ", " + fmt("%.4g", ratios[1]) +
                                             ", " + fmt("%.4g", ratios[2])};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "chen_exactness", 30, chen_exactness},
      {2, "telescoping_integral", 10, telescoping},
      {3, "luxemburg_closed_forms", 10, luxemburg_closed_forms},
      {4, "power_identity", 10, power_identity},
      {5, "germ_delta_identity", 30, delta_identity},
      {6, "rde_closed_form_oracle", 300, rde_oracle},
      {7, "scheme_cross_validation", 120, scheme_cross_validation},
      {8, "fbm_law", 120, fbm_law},
      {9, "regularity_profile", 600, profile_experiment},
      {10, "driver_stability", 60, driver_stability},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!in_time) o.detail += "; over the " + fmt("%.0f", c.budget_seconds) + " s budget";
    std::printf("%s criterion %2d %-26s %8.2f s  %s\n", pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
