// Truncated Taylor jets against closed-form derivatives and finite differences.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "surfcalc/chart.hpp"
#include "surfcalc/catalog.hpp"
#include "surfcalc/taylor.hpp"

using namespace surfcalc;

namespace {

Jet3 var(double v, int i) { return Jet3::variable(v, i); }

}  // namespace

TEST(Jets, ClosedFormPartials) {
  // f = exp(x) sin(y) z: every partial is a product of closed forms.
  const double x = 0.3, y = -0.7, z = 1.4;
  const Jet3 f = exp(var(x, 0)) * sin(var(y, 1)) * var(z, 2);
  const double ex = std::exp(x), sy = std::sin(y), cy = std::cos(y);
  EXPECT_NEAR(f.value(), ex * sy * z, 1e-15);
  EXPECT_NEAR(f.grad(0), ex * sy * z, 1e-15);
  EXPECT_NEAR(f.grad(1), ex * cy * z, 1e-15);
  EXPECT_NEAR(f.grad(2), ex * sy, 1e-15);
  EXPECT_NEAR(f.hess(0, 1), ex * cy * z, 1e-15);
  EXPECT_NEAR(f.hess(1, 1), -ex * sy * z, 1e-15);
  EXPECT_NEAR(f.hess(2, 2), 0.0, 1e-15);
  EXPECT_NEAR(f.partial({1, 1, 1}), ex * cy, 1e-15);
  EXPECT_NEAR(f.partial({0, 3, 0}), -ex * cy * z, 1e-15);
  EXPECT_NEAR(f.partial({3, 0, 0}), ex * sy * z, 1e-15);
}

TEST(Jets, QuotientLogPowSqrt) {
  const double x = 0.8, y = 1.3;
  const Jet2 a = Jet2::variable(x, 0), b = Jet2::variable(y, 1);
  const Jet2 q = a / b;
  EXPECT_NEAR(q.grad(1), -x / (y * y), 1e-15);
  EXPECT_NEAR(q.hess(1, 1), 2.0 * x / (y * y * y), 1e-15);
  EXPECT_NEAR(q.hess(0, 1), -1.0 / (y * y), 1e-15);
  const Jet2 l = log(a);
  EXPECT_NEAR(l.hess(0, 0), -1.0 / (x * x), 1e-14);
  const Jet2 p = pow(a, 2.5);
  EXPECT_NEAR(p.hess(0, 0), 2.5 * 1.5 * std::pow(x, 0.5), 1e-14);
  const Jet2 s = sqrt(a * a + b * b);
  EXPECT_NEAR(s.grad(0), x / std::hypot(x, y), 1e-15);
  EXPECT_NEAR(s.hess(0, 0), y * y / std::pow(std::hypot(x, y), 3), 1e-15);
}

TEST(Jets, PropertyIdentitiesAtRandomPoints) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.2, 2.0);
  for (int k = 0; k < 200; ++k) {
    const Jet3 x = var(d(rng), 0), y = var(d(rng), 1), z = var(d(rng), 2);
    const Jet3 w = x * y + sin(z) * x;
    const Jet3 one = sin(w) * sin(w) + cos(w) * cos(w);
    const Jet3 back = log(exp(w));
    const Jet3 unit = w * inv(w);
    const Jet3 sq = sqrt(w) * sqrt(w);
    for (int i = 0; i < Jet3::size; ++i) {
      EXPECT_NEAR(one.c[i], i == 0 ? 1.0 : 0.0, 1e-12);
      EXPECT_NEAR(back.c[i], w.c[i], 1e-12);
      EXPECT_NEAR(unit.c[i], i == 0 ? 1.0 : 0.0, 1e-12);
      EXPECT_NEAR(sq.c[i], w.c[i], 1e-12);
    }
  }
}

TEST(Jets, DerivAndTruncCommute) {
  const Jet3 f = exp(var(0.2, 0) * var(0.5, 1)) + var(0.5, 1) * var(-0.4, 2) * var(-0.4, 2);
  const Jet1 a = trunc<1>(deriv(f, 1));
  const Jet1 b = deriv(trunc<2>(f), 1);
  for (int i = 0; i < Jet1::size; ++i) EXPECT_DOUBLE_EQ(a.c[i], b.c[i]);
  // Dropping time removes every coefficient that carries it.
  const Jet3 g = drop_var(f, kTime);
  EXPECT_EQ(g.grad(kTime), 0.0);
  EXPECT_EQ(g.hess(kTime, kXi2), 0.0);
  EXPECT_DOUBLE_EQ(g.grad(kXi1), f.grad(kXi1));
}

// Independent oracle: fourth-order central differences of the chart in double precision.
TEST(Jets, ChartJetsMatchFiniteDifferences) {
  const double h = 1e-3;
  for (const auto& e : catalog()) {
    const Chart& c = *e.chart;
    const double u = 0.5 * (e.sample_lo[0] + e.sample_hi[0]) + 0.13, v = 0.31, t = 0.2;
    const Vec3<Jet3> R = eval_jet3(c, u, v, t);
    auto at = [&](double du, double dv, double dt) { return c.eval(u + du, v + dv, t + dt); };
    for (int i = 0; i < 3; ++i) {
      auto shift = [&](double s) { return at(i == 0 ? s : 0.0, i == 1 ? s : 0.0, i == 2 ? s : 0.0); };
      const Vec3d fd = (1.0 / (12.0 * h)) * (shift(-2 * h) - 8.0 * shift(-h) + 8.0 * shift(h) - shift(2 * h));
      const Vec3d fd2 =
          (1.0 / (12.0 * h * h)) * (-1.0 * shift(-2 * h) + 16.0 * shift(-h) - 30.0 * shift(0) + 16.0 * shift(h) - shift(2 * h));
      for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(R[k].grad(i), fd[k], 1e-9) << e.id << " component " << k << " variable " << i;
        EXPECT_NEAR(R[k].hess(i, i), fd2[k], 1e-6) << e.id << " component " << k << " variable " << i;
      }
    }
  }
}

TEST(Jets, LayoutSizes) {
  static_assert(Jet0::size == 1);
  static_assert(Jet1::size == 4);
  static_assert(Jet2::size == 10);
  static_assert(Jet3::size == 20);
  SUCCEED();
}
