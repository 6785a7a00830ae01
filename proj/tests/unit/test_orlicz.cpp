#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bor/error.hpp"
#include "bor/numeric.hpp"
#include "bor/orlicz.hpp"

using namespace bor;

namespace {

std::vector<double> random_samples(std::mt19937_64& gen, std::size_t n, double scale) {
  std::normal_distribution<double> nd(0.0, scale);
  std::vector<double> v(n);
  for (auto& x : v) x = std::abs(nd(gen));
  return v;
}

double lux(const std::vector<double>& v, double beta, double length = 1.0) {
  return luxemburg_norm(SampledFunction::on_interval(length, v), YoungFunction(beta));
}

}  // namespace

TEST(YoungFunction, ClosedFormValues) {
  EXPECT_NEAR(eval_young(YoungFunction(2.0), 1.0), 1.7182818284590452, 1e-14);
  EXPECT_EQ(eval_young(YoungFunction(0.7), 0.0), 0.0);
  EXPECT_NEAR(eval_young(YoungFunction(0.5), 1.0), 1.3591409142295226, 1e-14);
  EXPECT_EQ(YoungFunction(1.5).x_crossover(), 0.0);
  EXPECT_DOUBLE_EQ(YoungFunction(0.5).x_crossover(), 1.0);
}

TEST(YoungFunction, RejectsBadArguments) {
  const YoungFunction phi(2.0);
  EXPECT_THROW((void)phi(-1.0), DomainError);
  EXPECT_THROW((void)phi(std::nan("")), DomainError);
  EXPECT_THROW(YoungFunction(0.0), DomainError);
}

TEST(YoungFunction, LinearBranchJoinsContinuously) {
  for (double beta : {0.2, 0.5, 0.9}) {
    const YoungFunction phi(beta);
    const double x = phi.x_crossover(), h = 1e-7;
    const double left = phi(x - h), right = phi(x + h), mid = phi(x);
    EXPECT_NEAR(left, mid, 1e-5 * (1.0 + mid)) << beta;
    EXPECT_NEAR(right, mid, 1e-5 * (1.0 + mid)) << beta;
    const double slope_right = (phi(x + 2 * h) - phi(x + h)) / h;
    EXPECT_NEAR(slope_right, phi.linear_slope(), 1e-4 * phi.linear_slope()) << beta;
  }
}

TEST(YoungFunction, MidpointConvexity) {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (double beta : {0.4, 1.0, 2.0}) {
    const YoungFunction phi(beta);
    for (int k = 0; k < 10000; ++k) {
      const double a = u(gen), b = u(gen);
      EXPECT_LE(phi(0.5 * (a + b)), 0.5 * (phi(a) + phi(b)) * (1 + 1e-15));
    }
  }
}

TEST(YoungFunction, InverseRoundTrip) {
  for (double beta : {0.3, 1.0, 2.0, 4.0}) {
    const YoungFunction phi(beta);
    for (double y : {1e-6, 0.1, 1.0, 7.5, 1e4}) EXPECT_NEAR(phi(phi.inverse(y)), y, 1e-10 * y) << beta;
  }
}

TEST(Luxemburg, ClosedForms) {
  EXPECT_NEAR(lux(std::vector<double>(1000, 1.0), 2.0), 1.2011224087864498, 1e-9);
  std::vector<double> half(1000, 0.0);
  std::fill(half.begin(), half.begin() + 500, 1.0);
  EXPECT_NEAR(lux(half, 1.0), 0.9102392266268374, 1e-9);
  EXPECT_EQ(lux(std::vector<double>(64, 0.0), 2.0), 0.0);
}

TEST(Luxemburg, HugeValuesDoNotOverflow) {
  std::vector<double> v(128, 1e-3);
  v[5] = 1e6;
  const double n = lux(v, 2.0);
  EXPECT_TRUE(std::isfinite(n));
  EXPECT_GT(n, 1e6 / 10.0);
}

TEST(Luxemburg, HomogeneityAndMonotonicity) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_samples(gen, 256, 1.0);
    const double base = lux(f, 2.0);
    for (double c : {0.1, 2.0, 100.0}) {
      std::vector<double> g(f);
      for (auto& x : g) x *= c;
      EXPECT_NEAR(lux(g, 2.0), c * base, 1e-9 * c * base);
    }
    std::vector<double> bigger(f);
    for (auto& x : bigger) x += 0.01;
    EXPECT_LE(base, lux(bigger, 2.0) * (1 + 1e-10));
  }
  EXPECT_EQ(lux(std::vector<double>(16, 0.0), 0.5), 0.0);
}

TEST(Luxemburg, PowerIdentityWithoutLinearBranch) {
  std::mt19937_64 gen(3);
  const double beta = 2.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = random_samples(gen, 200, 0.5 + trial * 0.02);
    for (double p : {0.5, 2.0, 3.0}) {
      std::vector<double> fp(f);
      for (auto& x : fp) x = std::pow(x, p);
      const double lhs = lux(fp, beta);
      const double rhs = std::pow(lux(f, p * beta), p);
      EXPECT_NEAR(lhs, rhs, 1e-8 * rhs) << "p=" << p;
    }
  }
}

TEST(Luxemburg, HolderProductConstantIsModerate) {
  std::mt19937_64 gen(4);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_samples(gen, 256, 1.0), g = random_samples(gen, 256, 2.0);
    std::vector<double> fg(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fg[i] = f[i] * g[i];
    worst = std::max(worst, lux(fg, 1.0) / (lux(f, 2.0) * lux(g, 2.0)));
  }
  RecordProperty("holder_constant", std::to_string(worst));
  EXPECT_LE(worst, 4.0);
  EXPECT_GT(worst, 0.0);
}

TEST(Luxemburg, BetaMonotonicityOnUnitInterval) {
  std::mt19937_64 gen(5);
  std::vector<double> ratios;
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_samples(gen, 256, 1.0);
    ratios.push_back(lux(f, 1.0) / lux(f, 2.0));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  RecordProperty("beta_ratio_max", std::to_string(*hi));
  EXPECT_LE(*hi, 2.0);
  EXPECT_LE(*hi / *lo, 1.5);
}

TEST(LpNorm, Values) {
  EXPECT_NEAR(lp_norm(SampledFunction::on_interval(1.0, std::vector<double>(100, 3.0)), 4.0), 3.0, 1e-13);
  EXPECT_NEAR(lp_norm(SampledFunction::on_interval(2.0, std::vector<double>(100, 1.0)), 1.0), 2.0, 1e-13);
  const std::size_t n = 4096;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / n;
  EXPECT_NEAR(lp_norm(SampledFunction::on_interval(1.0, t), 2.0), 1.0 / std::sqrt(3.0), 1.0 / n);
  EXPECT_EQ(lp_norm(SampledFunction::on_interval(1.0, t), kInfinity), t.back());
  EXPECT_THROW((void)lp_norm(SampledFunction::on_interval(1.0, t), 0.5), DomainError);
}

TEST(LpNorm, EquivalenceRatio) {
  const YoungFunction phi(2.0);
  const auto zero = orlicz_lp_equivalence_ratio(SampledFunction::on_interval(1.0, std::vector<double>(32, 0.0)), phi, 8);
  EXPECT_EQ(zero.first, 0.0);
  EXPECT_EQ(zero.second, 0.0);

  const auto one = orlicz_lp_equivalence_ratio(SampledFunction::on_interval(1.0, std::vector<double>(256, 1.0)), phi, 64);
  EXPECT_NEAR(one.first, 1.0, 1e-12);
  EXPECT_NEAR(one.first / one.second, 0.8325546111576977, 1e-9);

  std::mt19937_64 gen(7);
  const auto f = SampledFunction::on_interval(1.0, random_samples(gen, 1024, 1.0));
  const auto r32 = orlicz_lp_equivalence_ratio(f, phi, 32);
  const auto r64 = orlicz_lp_equivalence_ratio(f, phi, 64);
  const double a = r32.first / r32.second, b = r64.first / r64.second;
  RecordProperty("gaussian_ratio", std::to_string(b));
  EXPECT_GT(b, 0.1);
  EXPECT_LT(b, 10.0);
  EXPECT_NEAR(b / a, 1.0, 0.2);
}

TEST(SampledFunction, Validation) {
  SampledFunction bad{0.1, 1.0, {1.0, 2.0}};
  EXPECT_THROW(bad.validate(), DomainError);
  EXPECT_THROW((void)SampledFunction::on_interval(1.0, {1.0, -2.0}), DomainError);
  SampledFunction single = SampledFunction::on_interval(0.5, {2.0});
  EXPECT_NO_THROW(single.validate());
  EXPECT_GT(luxemburg_norm(single, YoungFunction(2.0)), 0.0);
}
