// Frame, shape data and closest-point projection against closed forms for sphere, ellipsoid, torus and plane.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "surfcalc/catalog.hpp"
#include "surfcalc/geometry.hpp"

using namespace surfcalc;

namespace {

constexpr double kPi = std::numbers::pi;

Vec3d sph(double th, double ph) { return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)}; }

}  // namespace

TEST(Geometry, UnitSphereClosedForms) {
  const ChartPtr c = charts::unit_sphere();
  const double th = 0.9, ph = -2.1;
  const Frame f = frame(*c, th, ph, 0.0);
  EXPECT_NEAR(f.glo[0][0].value(), 1.0, 1e-15);
  EXPECT_NEAR(f.glo[1][1].value(), std::pow(std::sin(th), 2), 1e-15);
  EXPECT_NEAR(f.glo[0][1].value(), 0.0, 1e-15);
  EXPECT_NEAR(f.area.value(), std::sin(th), 1e-15);
  // Outward normal, so b_ab = -g_ab and the curvature trace is -2.
  EXPECT_LT(max_abs(value(f.n) - sph(th, ph)), 1e-15);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) EXPECT_NEAR(f.blo[a][b].value(), -f.glo[a][b].value(), 1e-15);
  EXPECT_NEAR(f.kappa.value(), -2.0, 1e-14);
  EXPECT_NEAR(f.gauss.value(), 1.0, 1e-14);
  EXPECT_LT(max_abs(value(f.B) + value(f.P)), 1e-14);
  // Christoffel symbols of the round metric.
  EXPECT_NEAR(f.gamma[0][1][1].value(), -std::sin(th) * std::cos(th), 1e-15);
  EXPECT_NEAR(f.gamma[1][0][1].value(), std::cos(th) / std::sin(th), 1e-14);
  EXPECT_NEAR(f.gamma[1][1][0].value(), std::cos(th) / std::sin(th), 1e-14);
  EXPECT_NEAR(f.gamma[0][0][0].value(), 0.0, 1e-15);
  // Metric derivative: d_theta g_phiphi = 2 sin cos.
  EXPECT_NEAR(f.glo[1][1].grad(kXi1), 2.0 * std::sin(th) * std::cos(th), 1e-15);
}

TEST(Geometry, TorusGaussianCurvature) {
  const double R0 = 2.0, r0 = 0.5;
  const ChartPtr c = charts::torus(R0, r0);
  for (double v : {-2.5, -0.4, 0.0, 1.2, 3.0}) {
    const Frame f = frame(*c, 0.7, v, 0.0);
    const double w = R0 + r0 * std::cos(v);
    EXPECT_NEAR(f.gauss.value(), std::cos(v) / (r0 * w), 1e-13) << v;
    const auto k = principal_curvatures(f);
    const double a = std::abs(k[0]), b = std::abs(k[1]);
    const double big = 1.0 / r0, small = std::abs(std::cos(v)) / w;
    EXPECT_NEAR(std::max(a, b), big, 1e-12);
    EXPECT_NEAR(std::min(a, b), small, 1e-12);
    EXPECT_NEAR(std::abs(f.kappa.value()), 1.0 / r0 + std::cos(v) / w, 1e-12);
  }
}

TEST(Geometry, EllipsoidGaussianCurvature) {
  const double a = 1.2, b = 1.0, cc = 0.8;
  const ChartPtr c = charts::ellipsoid(a, b, cc);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dth(0.2, kPi - 0.2), dph(-kPi, kPi);
  for (int k = 0; k < 50; ++k) {
    const double th = dth(rng), ph = dph(rng);
    const Frame f = frame(*c, th, ph, 0.0);
    const Vec3d x = value(f.R);
    const double s = x[0] * x[0] / std::pow(a, 4) + x[1] * x[1] / std::pow(b, 4) + x[2] * x[2] / std::pow(cc, 4);
    EXPECT_NEAR(f.gauss.value(), 1.0 / (a * a * b * b * cc * cc * s * s), 1e-12);
    // Outward normal is the normalized gradient of the implicit function.
    Vec3d gr{x[0] / (a * a), x[1] / (b * b), x[2] / (cc * cc)};
    gr = (1.0 / norm(gr)) * gr;
    EXPECT_LT(max_abs(value(f.n) - gr), 1e-14);
  }
}

TEST(Geometry, PlaneIsFlat) {
  const ChartPtr c = charts::plane();
  const Frame f = frame(*c, 0.3, -0.2, 0.0);
  EXPECT_EQ(f.kappa.value(), 0.0);
  EXPECT_EQ(f.gauss.value(), 0.0);
  EXPECT_LT(max_abs(value(f.B)), 1e-16);
}

// Property: the frame invariants hold at random points of every catalog surface.
TEST(Geometry, FrameInvariantsEverywhere) {
  std::mt19937_64 rng(5);
  for (const auto& e : catalog()) {
    std::uniform_real_distribution<double> du(e.sample_lo[0], e.sample_hi[0]), dv(e.sample_lo[1], e.sample_hi[1]);
    for (int k = 0; k < 40; ++k) {
      const Frame f = frame(*e.chart, du(rng), dv(rng), 0.1);
      const Mat3d P = value(f.P), B = value(f.B);
      const Vec3d n = value(f.n);
      EXPECT_NEAR(norm(n), 1.0, 1e-14);
      EXPECT_LT(max_abs(P * P - P), 1e-14);
      EXPECT_LT(max_abs(B * n), 1e-13);
      EXPECT_LT(max_abs(B - transpose(B)), 1e-13);
      EXPECT_NEAR(trace(B), f.kappa.value(), 1e-13);
      for (int a = 0; a < 2; ++a) {
        EXPECT_NEAR(dot(value(f.g[a]), n), 0.0, 1e-14);
        for (int b = 0; b < 2; ++b) EXPECT_NEAR(dot(value(f.g[a]), value(f.gcon[b])), a == b ? 1.0 : 0.0, 1e-13);
      }
      const auto kp = principal_curvatures(f);
      EXPECT_NEAR(kp[0] + kp[1], f.kappa.value(), 1e-12);
      EXPECT_NEAR(kp[0] * kp[1], f.gauss.value(), 1e-11);
      EXPECT_NO_THROW(christoffel(f));
    }
  }
}

TEST(Geometry, FlipFaultNegatesSecondForm) {
  const ChartPtr c = charts::unit_sphere();
  Faults flip;
  flip.flip_b = true;
  const Frame f = frame(*c, 1.0, 0.5, 0.0, flip);
  EXPECT_NEAR(f.kappa.value(), 2.0, 1e-14);
  EXPECT_NEAR(f.blo[0][0].value(), 1.0, 1e-15);
}

TEST(Geometry, DegenerateAndOutOfDomain) {
  const ChartPtr c = charts::unit_sphere();
  EXPECT_THROW(frame(*c, 0.0, 0.3, 0.0), DegenerateChartError);
  EXPECT_THROW(frame(*c, kPi + 0.1, 0.3, 0.0), DomainError);
  EXPECT_THROW(frame(*c, 1.0, 0.3, 5.0), DomainError);
  // Periodic longitude: any phi is accepted.
  EXPECT_NO_THROW(frame(*c, 1.0, 7.0, 0.0));
}

TEST(Geometry, ClosestPointOnSphere) {
  const ChartPtr c = charts::unit_sphere();
  const Vec3d dir = sph(1.2, 2.5);
  const ClosestPointResult r = closest_point(*c, 0.0, 1.3 * dir);
  EXPECT_NEAR(r.d, 0.3, 1e-12);
  EXPECT_LT(max_abs(r.foot - dir), 1e-12);
  EXPECT_NEAR(r.xi[0], 1.2, 1e-11);
  EXPECT_NEAR(r.xi[1], 2.5, 1e-11);
  const ClosestPointResult in = closest_point(*c, 0.0, 0.8 * dir);
  EXPECT_NEAR(in.d, -0.2, 1e-12);
}

TEST(Geometry, ClosestPointOnTorus) {
  const ChartPtr c = charts::torus(2.0, 0.5);
  // Point off the tube centre circle: foot is along the ray from the centre circle.
  const double u = 0.8, v = 2.0, s = 0.1;
  const Vec3d centre{2.0 * std::cos(u), 2.0 * std::sin(u), 0.0};
  const Vec3d radial{std::cos(v) * std::cos(u), std::cos(v) * std::sin(u), std::sin(v)};
  const Vec3d x = centre + (0.5 + s) * radial;
  const ClosestPointResult r = closest_point(*c, 0.0, x);
  EXPECT_NEAR(std::abs(r.d), s, 1e-12);
  EXPECT_LT(max_abs(r.foot - (centre + 0.5 * radial)), 1e-12);
}

TEST(Geometry, ClosestPointAmbiguity) {
  // Every point of the sphere is equidistant from its centre.
  EXPECT_THROW(closest_point(*charts::unit_sphere(), 0.0, {0.0, 0.0, 0.0}), AmbiguityError);
}

TEST(Geometry, ChristoffelMismatchThrows) {
  const ChartPtr c = charts::ellipsoid();
  Frame f = frame(*c, 1.0, 0.4, 0.0);
  f.gamma[0][1][1] += 1e-6;
  EXPECT_THROW(christoffel(f), ConsistencyError);
  EXPECT_NEAR(christoffel(f, 1.0).max_gap, 1e-6, 1e-12);
}
