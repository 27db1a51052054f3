// Surface Navier-Stokes residuals. The rigid-rotation expectations are derived term by term below and only then
// used as frozen values.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "surfcalc/ns_residuals.hpp"

using namespace surfcalc;

namespace {

// Per-term oracle for v = e3 x x on the unit sphere with p = (x1^2 + x2^2) / 2.
struct RotationTerms {
  Vec3d x, v, accel, grad_p;
  double rho2, p, kappa;
};

RotationTerms rotation_terms(const Vec3d& x) {
  RotationTerms r;
  r.x = x;
  r.v = {-x[1], x[0], 0.0};
  r.accel = {-x[0], -x[1], 0.0};  // e3 x (e3 x x)
  r.rho2 = x[0] * x[0] + x[1] * x[1];
  r.p = 0.5 * r.rho2;
  r.kappa = -2.0;
  r.grad_p = Vec3d{x[0], x[1], 0.0} - r.rho2 * x;  // P grad p
  return r;
}

std::vector<std::array<double, 2>> sphere_points(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  const Region reg = states::sphere_region();
  std::uniform_real_distribution<double> du(reg.lo[0], reg.hi[0]), dv(reg.lo[1], reg.hi[1]);
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) p = {du(rng), dv(rng)};
  return pts;
}

}  // namespace

TEST(NsResiduals, RigidRotationTermsMatchOracle) {
  const FlowState st = states::rigid_rotation(1.0, false);
  for (const auto& q : sphere_points(25, 1)) {
    const Site s = make_site(*st.chart, q[0], q[1], st.t);
    const Kinematics k = kinematics(st, s);
    const RotationTerms o = rotation_terms(value(s.fr.n));
    EXPECT_LT(max_abs(k.v - o.v), 1e-14);
    EXPECT_LT(max_abs(k.vT - o.v), 1e-14);
    EXPECT_NEAR(k.vN, 0.0, 1e-15);
    EXPECT_LT(max_abs(k.vdot - o.accel), 1e-14);
    EXPECT_LT(max_abs(k.grad_p - o.grad_p), 1e-14);
    EXPECT_NEAR(k.p, o.p, 1e-15);
    EXPECT_NEAR(k.kappa, o.kappa, 1e-14);
    EXPECT_LT(max_abs(k.E_v), 1e-14);
    EXPECT_LT(max_abs(k.divE_v), 1e-13);
    // n is the position, so its material rate is v.
    EXPECT_LT(max_abs(k.ndot - o.v), 1e-14);
    // Without a load the full momentum residual is accel + grad p + p kappa n = -2 rho^2 n.
    const PointResidual r = residual(System::full, st, k);
    EXPECT_LT(max_abs(r.momentum - (o.accel + o.grad_p + (o.p * o.kappa) * o.x)), 1e-13);
    EXPECT_LT(max_abs(r.momentum + (2.0 * o.rho2) * o.x), 1e-13);
  }
}

// Frozen from the oracle above: at theta = 1 the normal load is p kappa - |v_T|^2 = -2 sin^2(1).
TEST(NsResiduals, FrozenNormalLoad) {
  const FlowState st = states::rigid_rotation();
  const Site s = make_site(*st.chart, 1.0, 0.25, st.t);
  const Kinematics k = kinematics(st, s);
  EXPECT_NEAR(k.fN, -1.4161468365471424, 1e-14);
  EXPECT_NEAR(*k.p1, 0.7080734182735712, 1e-14);  // |v_T|^2 = sin^2(1)
}

TEST(NsResiduals, RigidRotationSolvesEverySystem) {
  const FlowState st = states::rigid_rotation();
  const auto pts = sphere_points(50, 2);
  for (const auto& [sys, name] : system_names()) {
    const SystemResidual r = evaluate_system(sys, st, pts, 16, 32);
    EXPECT_LT(r.max, 1e-12) << name;
    EXPECT_LT(r.l2, 1e-12) << name;
  }
}

TEST(NsResiduals, SplitIdentitiesOnAllStates) {
  for (const auto& name : states::names()) {
    const FlowState st = states::by_name(name);
    for (const auto& q : sphere_points(20, 3)) {
      const double u = st.chart->name() == "plane" ? q[0] / 3.2 : q[0];
      const double v = st.chart->name() == "plane" ? q[1] / 3.2 : q[1];
      const Site s = make_site(*st.chart, u, v, st.t);
      const Kinematics k = kinematics(st, s);
      for (const auto& [id, value] : identity_residuals(k)) EXPECT_LT(value, 1e-12) << name << " " << id;
      const PointResidual full = residual(System::full, st, k);
      EXPECT_LT(max_abs(k.P * full.momentum - residual(System::tangential_split, st, k).momentum), 1e-12) << name;
      EXPECT_NEAR(dot(k.n, full.momentum), residual(System::normal_split, st, k).scalar, 1e-12) << name;
      const PointResidual a = residual(System::tangential_split, st, k);
      EXPECT_LT(max_abs(a.momentum - residual(System::tangential_normal_time, st, k).momentum), 1e-12) << name;
      EXPECT_LT(max_abs(a.momentum - residual(System::tangential_rewritten, st, k).momentum), 1e-12) << name;
    }
  }
}

TEST(NsResiduals, ExpandingSphereClosedForm) {
  // v = r' n with r' = 1/4: div v = 2 r'/r, and the normal acceleration vanishes.
  const FlowState st = states::expanding();
  const Site s = make_site(*st.chart, 1.0, 0.3, st.t);
  const Kinematics k = kinematics(st, s);
  EXPECT_NEAR(k.div_v, 0.5, 1e-14);
  EXPECT_NEAR(k.vN, 0.25, 1e-15);
  EXPECT_LT(max_abs(k.vdot), 1e-15);
  EXPECT_NEAR(residual(System::full, st, k).scalar, 0.5, 1e-14);
  EXPECT_NEAR(residual(System::first_order, st, k).constraint, 0.0, 1e-15);
}

TEST(NsResiduals, DroppedCurvatureTermIsVisible) {
  const FlowState st = states::rigid_rotation();
  const Site s = make_site(*st.chart, 1.0, 0.25, st.t);
  Faults f;
  f.drop_pkappa = true;
  const Kinematics k = kinematics(st, s);
  // The missing term is p kappa n = -sin^2(1) n.
  EXPECT_NEAR(norm(residual(System::full, st, k, f).momentum), std::pow(std::sin(1.0), 2), 1e-13);
}

TEST(NsResiduals, MissingDataAndNames) {
  FlowState st = states::rigid_rotation();
  st.p1.reset();
  const Site s = make_site(*st.chart, 1.0, 0.25, st.t);
  EXPECT_THROW(residual(System::first_order, st, kinematics(st, s)), IncompleteStateError);
  EXPECT_THROW(residual(System::normal_first_order, st, kinematics(st, s)), IncompleteStateError);
  EXPECT_THROW(parse_system("stokes"), ConfigError);
  EXPECT_THROW(states::by_name("vortex"), ConfigError);
  for (const auto& [sys, name] : system_names()) EXPECT_EQ(parse_system(name), sys);
}
