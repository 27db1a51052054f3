// Tubular chart metric and Christoffel symbols against the concentric-sphere closed form.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "surfcalc/catalog.hpp"
#include "surfcalc/thin_film.hpp"

using namespace surfcalc;

TEST(ThinFilm, ConcentricSphereMetric) {
  // R + zeta n on the unit sphere is the sphere of radius 1 + zeta.
  const ChartPtr c = charts::unit_sphere();
  const double th = 1.1, z = 0.1;
  const ThinFilmFrame tf = thin_metric(*c, th, 0.3, z, 0.0);
  const double r = 1.0 + z, s = std::sin(th);
  EXPECT_NEAR(tf.G_lo[0][0], r * r, 1e-14);
  EXPECT_NEAR(tf.G_lo[1][1], r * r * s * s, 1e-14);
  EXPECT_NEAR(tf.G_lo[2][2], 1.0, 1e-15);
  EXPECT_NEAR(tf.G_lo[0][2], 0.0, 1e-15);
  // Radial Christoffel symbols of spherical coordinates at radius r.
  EXPECT_NEAR(tf.gamma[kZeta][0][0], -r, 1e-14);
  EXPECT_NEAR(tf.gamma[kZeta][1][1], -r * s * s, 1e-14);
  EXPECT_NEAR(tf.gamma[0][0][kZeta], 1.0 / r, 1e-14);
  EXPECT_NEAR(tf.gamma[1][kZeta][1], 1.0 / r, 1e-14);
  EXPECT_NEAR(tf.gamma[0][1][1], -s * std::cos(th), 1e-14);
  EXPECT_NEAR(tf.G_hi[0][0], 1.0 / (r * r), 1e-14);
}

TEST(ThinFilm, SurfaceLimitsEverywhere) {
  std::mt19937_64 rng(4);
  for (const auto& id : {"unit_sphere", "ellipsoid", "torus"}) {
    const CatalogEntry e = catalog_entry(id);
    std::uniform_real_distribution<double> du(e.sample_lo[0], e.sample_hi[0]), dv(e.sample_lo[1], e.sample_hi[1]);
    for (int k = 0; k < 20; ++k) {
      const ThinFilmLimits L = thin_limits(thin_metric(*e.chart, du(rng), dv(rng), 0.0, 0.0));
      EXPECT_LT(L.gamma_zeta_ab, 1e-12) << id;
      EXPECT_LT(L.gamma_b_az, 1e-12) << id;
      EXPECT_LT(L.gamma_tangential, 1e-12) << id;
      EXPECT_LT(L.inverse_metric, 1e-11) << id;
      EXPECT_LT(L.gamma_zero, 1e-13) << id;
      EXPECT_LT(L.pathway_gap, 1e-12) << id;
    }
  }
}

// Property: the quadratic metric expansion is exact for any admissible offset.
TEST(ThinFilm, MetricExpansionExact) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> dz(-0.2, 0.2);
  for (const auto& id : {"ellipsoid", "torus"}) {
    const CatalogEntry e = catalog_entry(id);
    std::uniform_real_distribution<double> du(e.sample_lo[0], e.sample_hi[0]), dv(e.sample_lo[1], e.sample_hi[1]);
    for (int k = 0; k < 20; ++k) {
      const ThinFilmFrame tf = thin_metric(*e.chart, du(rng), dv(rng), dz(rng), 0.0);
      const ThinFilmLimits L = thin_limits(tf);
      EXPECT_LT(L.metric_expansion, 1e-13) << id;
      EXPECT_LT(L.normal_block, 1e-14) << id;
      EXPECT_LT(L.pathway_gap, 1e-11) << id;
    }
  }
}

TEST(ThinFilm, FirstOrderDeviations) {
  // On the ellipsoid the tangential symbols move at O(zeta): halving zeta halves the gap.
  const ChartPtr c = charts::ellipsoid();
  const double a = thin_limits(thin_metric(*c, 1.0, 0.7, 2e-3, 0.0)).gamma_tangential;
  const double b = thin_limits(thin_metric(*c, 1.0, 0.7, 1e-3, 0.0)).gamma_tangential;
  EXPECT_NEAR(a / b, 2.0, 1e-2);
}

TEST(ThinFilm, RestrictionIdentities) {
  const ChartPtr c = charts::deforming_ellipsoid();
  for (double u : {0.5, 1.6, 2.5}) {
    const Frame f = frame(*c, u, 0.9, 0.3);
    const RestrictionResiduals r = strain3_restriction(*c, u, 0.9, 0.3, deriv(f.R, kTime));
    EXPECT_LT(r.covariant, 1e-12);
    EXPECT_LT(r.strain, 1e-12);
    EXPECT_LT(r.divergence, 1e-12);
  }
  EXPECT_LT(relative_velocity_gap(*charts::expanding_sphere(), 1.0, 0.2, 0.1), 1e-15);
}

TEST(ThinFilm, FoldOverAndSingularity) {
  const ChartPtr c = charts::unit_sphere();
  EXPECT_THROW(thin_metric(*c, 1.0, 0.0, -1.2, 0.0), FoldOverError);
  EXPECT_THROW(thin_metric(*charts::torus(), 0.0, 0.0, 0.6, 0.0), FoldOverError);
  Mat3x3 zero{};
  EXPECT_THROW(invert3(zero), DegenerateChartError);
}
