#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bor/besov_orlicz.hpp"
#include "bor/controlled.hpp"
#include "bor/error.hpp"
#include "test_support.hpp"

using namespace bor;
namespace bt = bor::testing;
using bor::testing::from_function;

namespace {

const RegularityParams kHalf{0.5, 2.0, kInfinity};

RoughPath linear_driver(std::size_t steps) {
  return lift_scalar(from_function(1.0, steps, [](double t) { return t; }), ScalarLift::stratonovich);
}

}  // namespace

TEST(Remainder, HandComputedValues) {
  const SampledPath xs(1.0, 1, {0.0, 1.0, 3.0, 2.0});
  const auto x = lift_scalar(xs, ScalarLift::ito);
  const SampledPath y(1.0, 1, {1.0, 2.0, 0.0, 5.0});
  const SampledPath yp(1.0, 1, {2.0, -1.0, 0.5, 0.0});
  const auto z = make_controlled(y, yp, x);
  // R_{0,2} = (0 - 1) - 2 * 3, R_{1,3} = (5 - 2) + 1 * 1
  EXPECT_DOUBLE_EQ(z.remainder()(0, 2)[0], -7.0);
  EXPECT_DOUBLE_EQ(z.remainder()(1, 3)[0], 4.0);
  EXPECT_EQ(z.remainder()(2, 2)[0], 0.0);
}

TEST(Remainder, QuadraticAgainstLinearDriver) {
  const auto x = linear_driver(64);
  const auto z = make_controlled(from_function(1.0, 64, [](double t) { return t * t; }),
                                 from_function(1.0, 64, [](double t) { return 2.0 * t; }), x);
  for (std::size_t i = 0; i <= 64; i += 5) {
    for (std::size_t j = i; j <= 64; j += 7) {
      const double h = static_cast<double>(j - i) / 64.0;
      EXPECT_NEAR(z.remainder()(i, j)[0], h * h, 1e-15);
    }
  }
}

TEST(Remainder, VectorValued) {
  const auto w = bt::brownian(3, 32, 2);
  const auto x = lift_md_leftpoint(w);
  // Y = A X with A = [[1, 2], [0, -1]] and Y' = A exactly: zero remainder.
  std::vector<double> yv, ypv;
  for (std::size_t i = 0; i <= 32; ++i) {
    yv.push_back(w.at(i, 0) + 2.0 * w.at(i, 1));
    yv.push_back(-w.at(i, 1));
    ypv.insert(ypv.end(), {1.0, 2.0, 0.0, -1.0});
  }
  const auto z = make_controlled(SampledPath(1.0, 2, yv), SampledPath(1.0, 4, ypv), x);
  EXPECT_EQ(z.driver_dim(), 2u);
  for (std::size_t i = 0; i <= 32; i += 3) {
    for (double v : z.remainder()(i, 32)) EXPECT_NEAR(v, 0.0, 1e-14);
  }
}

TEST(MakeControlled, ShapeChecks) {
  const auto x = linear_driver(16);
  const auto y = from_function(1.0, 16, [](double t) { return t; });
  EXPECT_THROW((void)make_controlled(y, from_function(1.0, 8, [](double) { return 1.0; }), x), DimensionError);
  EXPECT_THROW((void)make_controlled(y, SampledPath::zeros(1.0, 16, 2), x), DimensionError);
  EXPECT_THROW((void)make_controlled(from_function(2.0, 16, [](double t) { return t; }), y, x), DimensionError);
}

TEST(Compose, LinearSinAndIdentity) {
  const auto w = bt::brownian(5, 256);
  const auto x = lift_scalar(w, ScalarLift::stratonovich);
  const auto z = make_controlled(w, SampledPath(1.0, 1, std::vector<double>(257, 1.0)), x);

  const auto lin = compose(fields::linear(1, 1, 1, {3.0}), z, x);
  for (std::size_t i = 0; i <= 256; ++i) {
    EXPECT_DOUBLE_EQ(lin.y().at(i, 0), 3.0 * w.at(i, 0));
    EXPECT_DOUBLE_EQ(lin.y_prime().at(i, 0), 3.0);
  }

  const auto s = compose(fields::sin(1), z, x);
  for (std::size_t i = 0; i <= 256; i += 8) {
    EXPECT_DOUBLE_EQ(s.y().at(i, 0), std::sin(w.at(i, 0)));
    EXPECT_NEAR(s.y_prime().at(i, 0), std::cos(w.at(i, 0)), 1e-15);
  }

  const auto id = compose(fields::identity(1), z, x);
  EXPECT_EQ(id.y(), z.y());
  EXPECT_EQ(id.y_prime(), z.y_prime());
  EXPECT_EQ(id.reference(), x.fingerprint());
}

TEST(Compose, RejectsForeignDriver) {
  const auto x = lift_scalar(bt::brownian(6, 64), ScalarLift::stratonovich);
  const auto other = lift_scalar(bt::brownian(7, 64), ScalarLift::stratonovich);
  const auto z = make_controlled(x.path(), SampledPath(1.0, 1, std::vector<double>(65, 1.0)), x);
  EXPECT_THROW((void)compose(fields::sin(1), z, other), DimensionError);
  EXPECT_THROW((void)compose(fields::sin(2), z, x), DimensionError);
}

TEST(Compose, RemainderOfSmoothImageDecaysTwiceAsFast) {
  const auto w = bt::brownian(8, 4096);
  const auto x = lift_scalar(w, ScalarLift::stratonovich);
  const auto z = make_controlled(w, SampledPath(1.0, 1, std::vector<double>(4097, 1.0)), x);
  const auto fz = compose(fields::tanh(1), z, x);
  const YoungFunction phi(2.0), half(1.0);
  std::vector<double> lh, lx, lr;
  for (std::size_t k = 1; k <= 64; k *= 2) {
    lh.push_back(std::log(static_cast<double>(k)));
    lx.push_back(std::log(shift_norm(w, k, phi)));
    lr.push_back(std::log(shift_norm(fz.remainder(), k, half)));
  }
  const double slope_x = bt::fit_slope(lh, lx), slope_r = bt::fit_slope(lh, lr);
  EXPECT_NEAR(slope_x, 0.5, 0.1);
  EXPECT_GE(slope_r, 2.0 * slope_x - 0.1);
}

TEST(Gubinelli, ClosedFormAgainstLinearDriver) {
  const auto x = linear_driver(1024);
  const auto z = make_controlled(from_function(1.0, 1024, [](double t) { return t * t; }),
                                 from_function(1.0, 1024, [](double t) { return 2.0 * t; }), x);
  const auto rep = gubinelli_report(z, x, kHalf);
  EXPECT_NEAR(rep.derivative.seminorm_dyadic, 1.3492510712442198, 1e-9);
  EXPECT_NEAR(rep.remainder.seminorm_dyadic, 0.4551196133134187, 1e-9);
  EXPECT_DOUBLE_EQ(gubinelli_seminorm(z, x, kHalf), rep.value());
}

TEST(Gubinelli, ZeroForDriverAndHomogeneous) {
  const auto w = bt::brownian(11, 512);
  const auto x = lift_scalar(w, ScalarLift::stratonovich);
  const SampledPath ones(1.0, 1, std::vector<double>(513, 1.0));
  EXPECT_NEAR(gubinelli_seminorm(make_controlled(w, ones, x), x, kHalf), 0.0, 1e-12);

  const auto y = affine(w, 1.0, 0.0);
  const auto yp = from_function(1.0, 512, [](double t) { return std::cos(3.0 * t); });
  const double base = gubinelli_seminorm(make_controlled(y, yp, x), x, kHalf);
  const double doubled = gubinelli_seminorm(make_controlled(affine(y, 2.0), affine(yp, 2.0), x), x, kHalf);
  EXPECT_GT(base, 0.0);
  EXPECT_NEAR(doubled, 2.0 * base, 1e-9 * base);
}

TEST(Gubinelli, DeltaOfRemainder) {
  const auto w = bt::brownian(12, 128);
  const auto x = lift_scalar(w, ScalarLift::stratonovich);
  const auto yp = from_function(1.0, 128, [](double t) { return std::exp(t); });
  const auto z = make_controlled(bt::brownian(13, 128), yp, x);
  const auto d = delta3(z.remainder());
  for (std::size_t s = 0; s <= 128; s += 9) {
    for (std::size_t t = s; t <= 128; t += 11) {
      for (std::size_t u = s; u <= t; u += 3) {
        const double expected = (yp.at(u, 0) - yp.at(s, 0)) * (w.at(t, 0) - w.at(u, 0));
        EXPECT_NEAR(d(s, u, t)[0], expected, 1e-12);
      }
    }
  }
}

TEST(ControlledDistance, Basics) {
  const auto w = bt::brownian(14, 256);
  const auto x = lift_scalar(w, ScalarLift::stratonovich);
  const auto a = make_controlled(w, SampledPath(1.0, 1, std::vector<double>(257, 1.0)), x);
  const auto b = compose(fields::sin(1), a, x);
  EXPECT_EQ(controlled_distance(a, a, kHalf), 0.0);
  EXPECT_GT(controlled_distance(a, b, kHalf), 0.0);
  EXPECT_NEAR(controlled_distance(a, b, kHalf), controlled_distance(b, a, kHalf), 1e-12);
}

TEST(VectorFields, DerivativesAgreeWithFiniteDifferences) {
  std::mt19937_64 gen(15);
  std::normal_distribution<double> nd;
  auto points = [&](std::size_t m) {
    std::vector<std::vector<double>> pts(100, std::vector<double>(m));
    for (auto& p : pts)
      for (auto& v : p) v = nd(gen);
    return pts;
  };
  const std::vector<SmoothVectorField> list{
      fields::sin(1), fields::cos(2), fields::tanh(3),
      fields::linear(2, 2, 2, {1, 2, 3, 4, 5, 6, 7, 8}), fields::identity(2),
      fields::constant(2, 1, {1.0, -1.0}), fields::zero(2, 2),
      fields::gaussian_bump(2, 2, {1.0, 0.5, -0.5, 2.0}, 0.8), fields::saturating_linear(2, 1, {1.0, -2.0, 0.5, 3.0}),
      fields::sin_coupled(2, 3)};
  for (const auto& f : list) {
    EXPECT_LE(derivative_consistency(f, points(f.input_dim())), 1e-6) << f.name();
  }
}

TEST(VectorFields, BoundsAndLookup) {
  EXPECT_TRUE(fields::sin(1).is_bounded());
  EXPECT_FALSE(fields::linear(1, 1, 1, {1.0}).is_bounded());
  EXPECT_TRUE(fields::tanh(1).has_third_derivative());
  const auto f = fields::by_name("sin_coupled", 2, 3);
  EXPECT_EQ(f.rows(), 2u);
  EXPECT_EQ(f.cols(), 3u);
  EXPECT_THROW((void)fields::by_name("sin", 2, 2), DimensionError);
  EXPECT_THROW((void)fields::by_name("nonsense", 1, 1), DomainError);
  const double y[] = {0.3};
  double out[1];
  fields::by_name("tanh", 1, 1).eval(y, out);
  EXPECT_DOUBLE_EQ(out[0], std::tanh(0.3));
}
