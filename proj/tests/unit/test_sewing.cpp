#include <gtest/gtest.h>

#include <cmath>

#include "bor/error.hpp"
#include "bor/sewing.hpp"
#include "test_support.hpp"

using namespace bor;
namespace bt = bor::testing;
using bor::testing::from_function;

namespace {

Level2Field germ(std::size_t steps, double (*g)(double s, double t)) {
  return Level2Field(1.0, steps, 1, [steps, g](std::size_t i, std::size_t j, std::span<double> out) {
    out[0] = g(static_cast<double>(i) / static_cast<double>(steps), static_cast<double>(j) / static_cast<double>(steps));
  });
}

double square_gap(double s, double t) { return (t - s) * (t - s); }
double left_square(double s, double t) { return s * s * (t - s); }
double left_linear(double s, double t) { return s * (t - s); }

ControlledPath constant_integrand(const RoughPath& x, double c) {
  return make_controlled(SampledPath(x.horizon(), 1, std::vector<double>(x.steps() + 1, c)),
                         SampledPath::zeros(x.horizon(), x.steps(), 1), x);
}

}  // namespace

TEST(Partition, Construction) {
  EXPECT_EQ(Partition::dyadic(3).intervals(), 8u);
  EXPECT_DOUBLE_EQ(Partition::uniform(4).mesh(), 0.25);
  EXPECT_DOUBLE_EQ(Partition({0.0, 0.1, 1.0}).mesh(), 0.9);
  EXPECT_THROW(Partition({0.0, 0.5}), DomainError);
  EXPECT_THROW(Partition({0.0, 0.6, 0.5, 1.0}), DomainError);
  EXPECT_THROW(Partition({0.1, 1.0}), DomainError);
}

TEST(PartialSum, SquareGermHalvesPerRefinement) {
  const auto xi = germ(64, square_gap);
  EXPECT_DOUBLE_EQ(partial_sum(xi, Partition::dyadic(0), 0, 64)[0], 1.0);
  EXPECT_DOUBLE_EQ(partial_sum(xi, Partition::dyadic(1), 0, 64)[0], 0.5);
  for (std::size_t k = 1; k <= 6; ++k) {
    const double coarse = partial_sum(xi, Partition::dyadic(k - 1), 0, 64)[0];
    const double fine = partial_sum(xi, Partition::dyadic(k), 0, 64)[0];
    EXPECT_NEAR(fine, coarse / 2.0, 1e-15);
  }
  EXPECT_DOUBLE_EQ(partial_sum(xi, Partition::dyadic(1), 16, 48)[0], 0.125);
  EXPECT_THROW((void)partial_sum(xi, Partition::uniform(3), 0, 64), DomainError);
  EXPECT_NO_THROW((void)partial_sum(xi, Partition::uniform(3), 0, 48));
}

TEST(PartialSum, AdditiveGermIsPartitionInvariant) {
  const auto w = bt::brownian(1, 64);
  const auto xi = increments(w);
  const double whole = w.at(64, 0) - w.at(0, 0);
  for (const auto& pi : {Partition::dyadic(3), Partition::uniform(4), Partition({0.0, 0.25, 0.375, 1.0})}) {
    EXPECT_NEAR(partial_sum(xi, pi, 0, 64)[0], whole, 1e-14);
  }
}

TEST(Sew, TelescopingGermIsExactAtFirstLevel) {
  const auto w = bt::brownian(2, 1024);
  const auto r = sew(increments(w));
  EXPECT_TRUE(r.converged);
  EXPECT_LE(r.levels_used, 2u);
  for (std::size_t i = 0; i <= 1024; ++i) EXPECT_NEAR(r.integral.at(i, 0), w.at(i, 0) - w.at(0, 0), 1e-13);
  EXPECT_EQ(r.integral.at(0, 0), 0.0);
}

TEST(Sew, LeftPointRiemannSum) {
  const auto r = sew(germ(1024, left_square));
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.integral.at(1024, 0), 1.0 / 3.0, 2e-3);
  EXPECT_NEAR(r.integral.at(512, 0), 1.0 / 24.0, 2e-3);
  EXPECT_EQ(r.levels_used, 10u);
  EXPECT_EQ(r.monotonicity_violations, 0u);
  for (std::size_t k = 1; k < r.cauchy_history.size(); ++k) EXPECT_LT(r.cauchy_history[k], r.cauchy_history[k - 1]);
}

TEST(Sew, ValidatesInput) {
  EXPECT_THROW((void)sew(germ(100, left_square)), FormatError);
  const Level2Field bad(1.0, 8, 1, [](std::size_t, std::size_t, std::span<double> out) { out[0] = std::nan(""); });
  EXPECT_THROW((void)sew(bad), NumericError);
  const auto one = sew(germ(1, left_square));
  EXPECT_TRUE(one.converged);
  EXPECT_EQ(one.levels_used, 0u);
}

TEST(Sew, Linearity) {
  const auto a = germ(256, left_square), b = germ(256, left_linear);
  const auto ra = sew(a), rb = sew(b), rab = sew(a.combine(2.0, b, -3.0));
  for (std::size_t i = 0; i <= 256; i += 7) {
    EXPECT_NEAR(rab.integral.at(i, 0), 2.0 * ra.integral.at(i, 0) - 3.0 * rb.integral.at(i, 0), 1e-14);
  }
}

TEST(Sew, DefectSatisfiesDeltaIdentity) {
  const auto xi = germ(64, square_gap);
  const auto r = sew(xi);
  const auto d = delta3(r.defect);
  for (std::size_t s = 0; s <= 64; s += 3) {
    for (std::size_t t = s; t <= 64; t += 5) {
      for (std::size_t u = s; u <= t; ++u) {
        const double expected = -2.0 * static_cast<double>(u - s) * static_cast<double>(t - u) / 4096.0;
        EXPECT_NEAR(d(s, u, t)[0], expected, 1e-14);
      }
    }
  }
}

TEST(RoughIntegral, ConstantZeroAndIdentity) {
  const auto w = bt::brownian(3, 512);
  const auto x = lift_scalar(w, ScalarLift::stratonovich);

  const auto c = rough_integral(x, constant_integrand(x, 2.5));
  const auto z = rough_integral(x, constant_integrand(x, 0.0));
  for (std::size_t i = 0; i <= 512; i += 3) {
    EXPECT_NEAR(c.integral.at(i, 0), 2.5 * (w.at(i, 0) - w.at(0, 0)), 1e-13);
    EXPECT_EQ(z.integral.at(i, 0), 0.0);
  }

  const auto id = make_controlled(w, SampledPath(1.0, 1, std::vector<double>(513, 1.0)), x);
  const auto r = rough_integral(x, id);
  EXPECT_TRUE(r.converged);
  for (std::size_t i = 0; i <= 512; i += 3) {
    EXPECT_NEAR(r.integral.at(i, 0), 0.5 * (w.at(i, 0) * w.at(i, 0) - w.at(0, 0) * w.at(0, 0)), 1e-12);
  }

  const auto as_controlled = integral_as_controlled(r, id, x);
  EXPECT_EQ(as_controlled.y_prime(), w);
  EXPECT_EQ(as_controlled.reference(), x.fingerprint());
}

TEST(RoughIntegral, SinOfBrownianMatchesRefinedMidpointSum) {
  const auto w = bt::brownian(9, 4096);
  const auto x = lift_scalar(w, ScalarLift::stratonovich);
  const auto z = compose(fields::sin(1), make_controlled(w, SampledPath(1.0, 1, std::vector<double>(4097, 1.0)), x), x);
  const auto r = rough_integral(x, z);
  EXPECT_TRUE(r.converged);

  const auto fine = bt::bridge_refine(w, 3, 99);
  double mid = 0.0;
  for (std::size_t k = 0; k < fine.steps(); ++k) {
    const double a = fine.at(k, 0), b = fine.at(k + 1, 0);
    mid += std::sin(0.5 * (a + b)) * (b - a);
  }
  EXPECT_NEAR(r.integral.at(4096, 0), mid, 5e-3);
  EXPECT_NEAR(r.integral.at(4096, 0), std::cos(w.at(0, 0)) - std::cos(w.at(4096, 0)), 5e-3);
}

TEST(RoughIntegral, DefectDecaysAtLeastAsFastAsGermDelta) {
  const auto w = bt::brownian(10, 2048);
  const auto x = lift_scalar(w, ScalarLift::stratonovich);
  const auto z = compose(fields::sin(1), make_controlled(w, SampledPath(1.0, 1, std::vector<double>(2049, 1.0)), x), x);
  const auto xi = rough_germ(x, z);
  const auto r = sew(xi);
  const auto dxi = delta3(xi);
  const YoungFunction phi(2.0 / 3.0);
  std::vector<double> lh, ld, lx;
  for (std::size_t k = 2; k <= 64; k *= 2) {
    lh.push_back(std::log(static_cast<double>(k)));
    ld.push_back(std::log(shift_norm(r.defect, k, phi)));
    lx.push_back(std::log(shift_norm(dxi, k, phi)));
  }
  const double sd = bt::fit_slope(lh, ld), sx = bt::fit_slope(lh, lx);
  RecordProperty("defect_slope", std::to_string(sd));
  RecordProperty("delta_slope", std::to_string(sx));
  EXPECT_GT(sx, 1.2);
  EXPECT_GE(sd, sx - 0.2);
}

TEST(RoughGerm, MultiDimensionalShape) {
  const auto w = bt::brownian(11, 64, 2);
  const auto x = lift_md_leftpoint(w);
  // Y = (X^1, X^2) as a 1 x 2 integrand, Y' = identity.
  const auto z = make_controlled(w, SampledPath(1.0, 4, [] {
                                   std::vector<double> v;
                                   for (int i = 0; i <= 64; ++i) v.insert(v.end(), {1.0, 0.0, 0.0, 1.0});
                                   return v;
                                 }()),
                                 x);
  const auto xi = rough_germ(x, z);
  EXPECT_EQ(xi.dim(), 1u);
  const auto xx = x.second_level()(3, 9);
  const double expected = w.at(3, 0) * (w.at(9, 0) - w.at(3, 0)) + w.at(3, 1) * (w.at(9, 1) - w.at(3, 1)) + xx[0] + xx[3];
  EXPECT_NEAR(xi(3, 9)[0], expected, 1e-14);
}

TEST(RoughGerm, DeltaEqualsRemainderAndDerivativeTerms) {
  for (std::uint64_t seed = 20; seed < 23; ++seed) {
    const auto w = bt::brownian(seed, 64);
    const auto x = lift_scalar(w, ScalarLift::ito);
    const auto z = make_controlled(bt::brownian(seed + 100, 64),
                                   from_function(1.0, 64, [seed](double t) { return std::sin(static_cast<double>(seed) * t); }), x);
    const auto d = delta3(rough_germ(x, z));
    const auto& r = z.remainder();
    const auto& xx = x.second_level();
    double worst = 0.0;
    for (std::size_t s = 0; s <= 64; ++s) {
      for (std::size_t t = s; t <= 64; ++t) {
        for (std::size_t u = s; u <= t; ++u) {
          const double expected = -r(s, u)[0] * (w.at(t, 0) - w.at(u, 0)) -
                                  (z.y_prime().at(u, 0) - z.y_prime().at(s, 0)) * xx(u, t)[0];
          worst = std::max(worst, std::abs(d(s, u, t)[0] - expected));
        }
      }
    }
    EXPECT_LE(worst, 1e-13) << "seed " << seed;
  }
}
