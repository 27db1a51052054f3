// Field lifting, component conversions and the tangential/normal split.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "surfcalc/catalog.hpp"
#include "surfcalc/fields.hpp"

using namespace surfcalc;

TEST(Fields, SphereComponentsOfVerticalVector) {
  const ChartPtr c = charts::unit_sphere();
  const double th = 0.7, ph = 1.9;
  const Site s = make_site(*c, th, ph, 0.0);
  const VectorComponents e3{Basis::cartesian, {0.0, 0.0, 1.0}, &s.fr};
  // g_theta = (cos th cos ph, cos th sin ph, -sin th), g_phi = sin th (-sin ph, cos ph, 0).
  const VectorComponents lo = convert(e3, Basis::covariant);
  EXPECT_NEAR(lo.comps[0], -std::sin(th), 1e-15);
  EXPECT_NEAR(lo.comps[1], 0.0, 1e-15);
  EXPECT_NEAR(lo.comps[2], std::cos(th), 1e-15);
  const VectorComponents hi = convert(e3, Basis::contravariant);
  EXPECT_NEAR(hi.comps[0], -std::sin(th), 1e-15);
  EXPECT_NEAR(hi.comps[2], std::cos(th), 1e-15);
  // Longitudinal vector: u_phi = sin^2 th u^phi.
  const VectorComponents east{Basis::cartesian, {-std::sin(ph), std::cos(ph), 0.0}, &s.fr};
  EXPECT_NEAR(convert(east, Basis::covariant).comps[1], std::sin(th), 1e-15);
  EXPECT_NEAR(convert(east, Basis::contravariant).comps[1], 1.0 / std::sin(th), 1e-14);
}

TEST(Fields, ProjectorTraceIsTwoInEveryBasis) {
  for (const auto& e : catalog()) {
    const double u = 0.5 * (e.sample_lo[0] + e.sample_hi[0]) + 0.2, v = 0.4;
    const Site s = make_site(*e.chart, u, v, 0.0);
    const TensorComponents P{Basis::cartesian, value(s.fr.P), &s.fr};
    for (Basis b : {Basis::cartesian, Basis::covariant, Basis::contravariant, Basis::mixed})
      EXPECT_NEAR(trace_of(convert(P, b)), 2.0, 1e-13) << e.id << " " << basis_name(b);
    // Mixed components of P are the identity on the tangent block.
    const Mat3d m = convert(P, Basis::mixed).comps;
    EXPECT_NEAR(m[0][0], 1.0, 1e-13);
    EXPECT_NEAR(m[1][1], 1.0, 1e-13);
    EXPECT_NEAR(m[0][1], 0.0, 1e-13);
    EXPECT_NEAR(m[2][2], 0.0, 1e-13);
  }
}

TEST(Fields, RepresentationErrors) {
  const Site s = make_site(*charts::torus(), 0.3, 0.2, 0.0);
  Mat3d A = zero_mat<double>();
  A[0][1] = 1.0;
  const TensorComponents t{Basis::cartesian, A, &s.fr};
  EXPECT_THROW(convert(t, Basis::mixed), RepresentationError);
  EXPECT_NO_THROW(convert(t, Basis::covariant));
  const VectorComponents u{Basis::cartesian, {1.0, 2.0, 3.0}, &s.fr};
  EXPECT_THROW(convert(u, Basis::mixed), RepresentationError);
  const VectorComponents orphan{Basis::covariant, {1.0, 0.0, 0.0}, nullptr};
  EXPECT_THROW(to_cartesian(orphan), PreconditionError);
}

// Property: conversions round-trip for random vectors and symmetric tensors on every surface.
TEST(Fields, RoundTripProperty) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  for (const auto& e : catalog()) {
    std::uniform_real_distribution<double> du(e.sample_lo[0], e.sample_hi[0]), dv(e.sample_lo[1], e.sample_hi[1]);
    for (int k = 0; k < 20; ++k) {
      const Site s = make_site(*e.chart, du(rng), dv(rng), 0.0);
      const Vec3d x{nd(rng), nd(rng), nd(rng)};
      for (Basis a : {Basis::covariant, Basis::contravariant}) {
        const VectorComponents c = convert(VectorComponents{Basis::cartesian, x, &s.fr}, a);
        EXPECT_LT(max_abs(to_cartesian(c) - x), 1e-12);
      }
      Mat3d A;
      for (auto& row : A)
        for (auto& z : row) z = nd(rng);
      A = 0.5 * (A + transpose(A));
      for (Basis a : {Basis::covariant, Basis::contravariant, Basis::mixed}) {
        const TensorComponents c = convert(TensorComponents{Basis::cartesian, A, &s.fr}, a);
        EXPECT_LT(max_abs(to_cartesian(c) - A), 1e-11);
        EXPECT_NEAR(trace_of(c), trace(A), 1e-11);
      }
      const Split<double> sp = split(x, s.fr);
      EXPECT_LT(max_abs(sp.tangential + sp.normal * value(s.fr.n) - x), 1e-14);
      EXPECT_NEAR(dot(sp.tangential, value(s.fr.n)), 0.0, 1e-14);
    }
  }
}

TEST(Fields, AmbientLiftCarriesTimeDerivative) {
  // f = t x3 on the expanding sphere r = 1 + t/4: df/dt at fixed chart point is x3 + t r' cos(theta).
  const ChartPtr c = charts::expanding_sphere();
  const double th = 0.8, t = 0.4;
  const Site s = make_site(*c, th, 0.1, t);
  const ScalarField f = ambient_scalar("moving", [](const Vec3<Jet2>& x, const Jet2& tt) { return tt * x[2]; });
  const Jet2 fj = f(s);
  const double r = 1.0 + t / 4.0;
  EXPECT_NEAR(fj.value(), t * r * std::cos(th), 1e-15);
  EXPECT_NEAR(fj.grad(kTime), r * std::cos(th) + t * 0.25 * std::cos(th), 1e-15);
  EXPECT_NEAR(fj.grad(kXi1), -t * r * std::sin(th), 1e-15);
}

TEST(Fields, DeclaredTangentialIsChecked) {
  const Site s = make_site(*charts::unit_sphere(), 1.0, 0.0, 0.0);
  const VectorField liar{"liar", [](const Site& q) { return q.fr.n; }, true};
  EXPECT_THROW(check_tangential(liar, s), PreconditionError);
  EXPECT_NO_THROW(check_tangential(projector_field(), s));
  EXPECT_NO_THROW(check_tangential(normal_field(), s));  // not declared tangential
}
