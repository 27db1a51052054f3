// Cartesian (closest-point extension) operators against closed forms and their curvilinear counterparts.

#include <gtest/gtest.h>

#include <cmath>

#include "surfcalc/cart_ops.hpp"
#include "surfcalc/catalog.hpp"
#include "surfcalc/curv_ops.hpp"

using namespace surfcalc;

namespace {

const ScalarField kHeight = ambient_scalar("x3", [](const Vec3<Jet2>& x, const Jet2&) { return x[2]; });
const TensorField kSkew = ambient_tensor("skew", [](const Vec3<Jet2>& x, const Jet2&) {
  Mat3<Jet2> T = zero_mat<Jet2>();
  T[0][1] = x[2];
  T[1][0] = -1.0 * x[2];
  T[0][2] = x[0] * x[1];
  T[2][0] = -1.0 * x[0] * x[1];
  return T;
});

ProbeOptions step(double h) {
  ProbeOptions o;
  o.h = h;
  return o;
}

}  // namespace

TEST(CartOps, GradientOfHeightOnSphere) {
  const ChartPtr c = charts::unit_sphere();
  const CartesianProbe pr = CartesianProbe::on_surface(*c, 1.0, -0.6, 0.0, step(1e-4));
  const Vec3d x = value(pr.foot().fr.n);
  EXPECT_LT(max_abs(pr.grad(kHeight) - (Vec3d{0.0, 0.0, 1.0} - x[2] * x)), 1e-8);
  // The extension is constant along normals, so its ambient gradient is already tangential.
  EXPECT_NEAR(dot(pr.ambient_grad(kHeight), x), 0.0, 1e-8);
  EXPECT_NEAR(pr.distance(), 0.0, 1e-14);
}

TEST(CartOps, ShapeOperatorFromNormalExtension) {
  // On the unit sphere B = -P.
  const CartesianProbe pr = CartesianProbe::on_surface(*charts::unit_sphere(), 2.0, 1.0, 0.0, step(1e-4));
  EXPECT_LT(max_abs(pr.shape() + pr.P()), 1e-8);
}

TEST(CartOps, SecondOrderConvergence) {
  const ChartPtr c = charts::torus();
  const Site s = make_site(*c, 0.4, 1.3, 0.0);
  const Vec3d exact = value(grad_scalar(s.fr, kHeight(s)));
  double prev = 0.0;
  for (double h : {1e-2, 5e-3, 2.5e-3}) {
    const double err = max_abs(CartesianProbe::on_surface(*c, 0.4, 1.3, 0.0, step(h)).grad(kHeight) - exact);
    if (prev > 0.0) EXPECT_NEAR(std::log2(prev / err), 2.0, 0.05);
    prev = err;
  }
}

TEST(CartOps, TransposeMattersForSkewTensors) {
  const ChartPtr c = charts::ellipsoid();
  const Site s = make_site(*c, 1.2, 0.5, 0.0);
  const CartesianProbe pr = CartesianProbe::on_surface(*c, 1.2, 0.5, 0.0, step(1e-4));
  const Vec3d curv = value(div_tensor(s.fr, kSkew(s)));
  EXPECT_LT(max_abs(pr.div_tensor_transposed(kSkew) - curv), 1e-7);
  // Row-wise divergence of a skew tensor differs by the full sign of the tangential part.
  EXPECT_GT(max_abs(pr.div_tensor_rows(kSkew) - curv), 1e-2);
}

TEST(CartOps, ExtensionWeightDoesNotMatterOnSurface) {
  const ChartPtr c = charts::unit_sphere();
  ProbeOptions w = step(1e-4);
  w.extension = Extension::quadratic_weight;
  const CartesianProbe a = CartesianProbe::on_surface(*c, 0.9, 0.2, 0.0, step(1e-4));
  const CartesianProbe b = CartesianProbe::on_surface(*c, 0.9, 0.2, 0.0, w);
  EXPECT_LT(max_abs(a.grad(kHeight) - b.grad(kHeight)), 1e-8);
}

TEST(CartOps, OffSurfaceProbeProjects) {
  const ChartPtr c = charts::unit_sphere();
  const Vec3d y = c->eval(1.0, 0.5, 0.0);
  const CartesianProbe pr(*c, 0.0, 1.1 * y, {1.0, 0.5}, step(1e-4));
  EXPECT_NEAR(pr.distance(), 0.1, 1e-12);
  EXPECT_NEAR(pr.foot().u, 1.0, 1e-11);
}

TEST(CartOps, TubularBounds) {
  const ChartPtr c = charts::unit_sphere();
  EXPECT_THROW(CartesianProbe::on_surface(*c, 1.0, 0.5, 0.0, step(10.0 * c->delta())), TubularBoundError);
  const Vec3d far = 1.9 * c->eval(1.0, 0.5, 0.0);
  EXPECT_THROW(CartesianProbe(*c, 0.0, far, {1.0, 0.5}, step(1e-4)), TubularBoundError);
}
