// Curvilinear surface operators against closed forms and integral identities.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "surfcalc/catalog.hpp"
#include "surfcalc/curv_ops.hpp"
#include "surfcalc/quadrature.hpp"

using namespace surfcalc;

namespace {

const ScalarField kHeight = ambient_scalar("x3", [](const Vec3<Jet2>& x, const Jet2&) { return x[2]; });
const ScalarField kSaddle = ambient_scalar("x1x2", [](const Vec3<Jet2>& x, const Jet2&) { return x[0] * x[1]; });
const VectorField kRotation =
    ambient_vector("rotation", [](const Vec3<Jet2>& x, const Jet2&) { return Vec3<Jet2>{-1.0 * x[1], x[0], Jet2(0.0)}; });
const VectorField kSwirl = ambient_vector("swirl", [](const Vec3<Jet2>& x, const Jet2&) {
  return Vec3<Jet2>{x[1] * x[2], sin(x[0]), x[0] * x[0] - x[2]};
});

// Laplace-Beltrami through grad then div: Jet2 -> Jet1 -> Jet0.
double laplacian(const Site& s, const ScalarField& f) { return div_vector(s.fr, grad_scalar(s.fr, f(s))).value(); }

}  // namespace

TEST(CurvOps, GradientOfHeightOnSphere) {
  const Site s = make_site(*charts::unit_sphere(), 1.1, 0.4, 0.0);
  const Vec3d x = value(s.fr.n);
  const Vec3d expected = Vec3d{0.0, 0.0, 1.0} - x[2] * x;
  EXPECT_LT(max_abs(value(grad_scalar(s.fr, kHeight(s))) - expected), 1e-15);
}

TEST(CurvOps, SphericalHarmonicsAreEigenfunctions) {
  // Degree-l harmonics satisfy Delta Y = -l(l+1) Y on the unit sphere.
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> th(0.2, 2.9), ph(-3.0, 3.0);
  const ChartPtr c = charts::unit_sphere();
  for (int k = 0; k < 30; ++k) {
    const Site s = make_site(*c, th(rng), ph(rng), 0.0);
    EXPECT_NEAR(laplacian(s, kHeight), -2.0 * kHeight(s).value(), 1e-13);
    EXPECT_NEAR(laplacian(s, kSaddle), -6.0 * kSaddle(s).value(), 1e-13);
  }
}

TEST(CurvOps, PositionAndNormalDivergences) {
  const VectorField pos{"position", [](const Site& s) { return position(s); }};
  for (const auto& e : catalog()) {
    const Site s = make_site(*e.chart, 0.5 * (e.sample_lo[0] + e.sample_hi[0]) + 0.3, 0.7, 0.0);
    EXPECT_NEAR(div_vector(s.fr, pos(s)).value(), 2.0, 1e-13) << e.id;
    EXPECT_NEAR(div_vector(s.fr, normal_field()(s)).value(), -s.fr.kappa.value(), 1e-13) << e.id;
    // div P = kappa n.
    EXPECT_LT(max_abs(value(div_tensor(s.fr, s.fr.P)) - s.fr.kappa.value() * value(s.fr.n)), 1e-13) << e.id;
    // grad n = -B.
    EXPECT_LT(max_abs(value(cov_deriv(s.fr, s.fr.n)) + value(s.fr.B)), 1e-13) << e.id;
  }
}

TEST(CurvOps, RotationIsKillingOnSphere) {
  const Site s = make_site(*charts::unit_sphere(), 0.6, 2.0, 0.0);
  const Mat3d G = value(cov_deriv(s.fr, kRotation(s)));
  EXPECT_LT(max_abs(G + transpose(G)), 1e-15);
  EXPECT_NEAR(div_vector(s.fr, kRotation(s)).value(), 0.0, 1e-15);
}

// Divergence theorem on the closed torus: the integral of div u equals -integral of kappa u.n.
TEST(CurvOps, DivergenceTheoremOnTorus) {
  const ChartPtr c = charts::torus();
  const double pi = std::numbers::pi;
  const Region all{{-pi, -pi}, {pi, pi}};
  const double lhs = integrate(*c, 0.0, all, 96, 96, [](const Site& s) { return div_vector(s.fr, kSwirl(s)).value(); });
  const double rhs = integrate(*c, 0.0, all, 96, 96, [](const Site& s) {
    return -s.fr.kappa.value() * dot(value(kSwirl(s)), value(s.fr.n));
  });
  EXPECT_NEAR(lhs, rhs, 1e-11);
  const double tangential = integrate(*c, 0.0, all, 96, 96, [](const Site& s) {
    return div_vector(s.fr, s.fr.P * kSwirl(s)).value();
  });
  EXPECT_NEAR(tangential, 0.0, 1e-11);
}

// Property: every Christoffel-based component formula reproduces direct differentiation.
TEST(CurvOps, ComponentFormulasProperty) {
  std::mt19937_64 rng(9);
  for (const auto& e : catalog()) {
    std::uniform_real_distribution<double> du(e.sample_lo[0], e.sample_hi[0]), dv(e.sample_lo[1], e.sample_hi[1]);
    for (int k = 0; k < 15; ++k) {
      const Site s = make_site(*e.chart, du(rng), dv(rng), 0.0);
      for (int a = 0; a < 2; ++a) EXPECT_LT(partial_vector(s, kSwirl, a).gap, 1e-12);
      const Mat3<Jet2> T = s.fr.P * outer(kSwirl(s), kRotation(s)) * s.fr.P;
      EXPECT_LT(max_abs(value(div_tensor_components(s.fr, T)) - value(div_tensor(s.fr, T))), 1e-11);
      const Mat3d G = value(grad_S(s.fr, kSwirl(s)));
      EXPECT_LT(max_abs(value(cov_deriv(s.fr, kSwirl(s))) - value(s.fr.P) * transpose(G)), 1e-14);
    }
  }
}

TEST(CurvOps, ComponentDivergenceRejectsNormalRange) {
  const Site s = make_site(*charts::ellipsoid(), 1.0, 0.2, 0.0);
  const Mat3<Jet2> nn = outer(s.fr.n, s.fr.n);
  EXPECT_THROW(div_tensor_components(s.fr, nn), PreconditionError);
}

TEST(CurvOps, FlippedSecondFormBreaksPartialFormula) {
  Faults flip;
  flip.flip_b = true;
  const Site s = make_site(*charts::unit_sphere(), 1.0, 0.3, 0.0, flip);
  EXPECT_THROW(partial_vector(s, normal_field(), 0), ConsistencyError);
}
