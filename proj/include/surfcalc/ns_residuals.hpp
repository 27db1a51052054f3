#pragma once

// Strain, Boussinesq-Scriven stress and pointwise residuals of the surface Navier-Stokes formulations.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "surfcalc/catalog.hpp"
#include "surfcalc/curv_ops.hpp"
#include "surfcalc/errors.hpp"
#include "surfcalc/evolution.hpp"
#include "surfcalc/fields.hpp"
#include "surfcalc/quadrature.hpp"

namespace surfcalc {

enum class System {
  full,
  first_order,
  tangential_split,
  tangential_normal_time,
  tangential_rewritten,
  normal_split,
  normal_first_order,
};

inline const std::vector<std::pair<System, std::string>>& system_names() {
  static const std::vector<std::pair<System, std::string>> names{
      {System::full, "full"},
      {System::first_order, "first_order"},
      {System::tangential_split, "tangential_split"},
      {System::tangential_normal_time, "tangential_normal_time"},
      {System::tangential_rewritten, "tangential_rewritten"},
      {System::normal_split, "normal_split"},
      {System::normal_first_order, "normal_first_order"},
  };
  return names;
}

inline std::string to_string(System s) {
  for (const auto& [k, v] : system_names())
    if (k == s) return v;
  return "?";
}

inline System parse_system(const std::string& s) {
  for (const auto& [k, v] : system_names())
    if (v == s) return k;
  throw ConfigError("unknown system '" + s + "'");
}

// Velocity is the material velocity dR/dt of the chart.
struct FlowState {
  std::string name;
  ChartPtr chart;
  double t = 0.0;
  ScalarField p;
  std::optional<ScalarField> p1;
  std::optional<VectorField> force;
  std::optional<ScalarField> normal_velocity;  // prescribed V_Gamma
  double rho = 1.0;
  double mu0 = 1.0;
  Region sample_region{};
};

// Strain E(v) = (grad v + grad v^T) / 2 and stress -p P + 2 mu0 E(v) at a site.
inline Mat3<Jet1> strain(const Site& s, const Vec3<Jet2>& v) { return sym_part(cov_deriv(s.fr, v)); }

inline Mat3d stress(const Site& s, const Vec3<Jet2>& v, double p, double mu0) {
  return -p * value(s.fr.P) + 2.0 * mu0 * value(strain(s, v));
}

// All terms entering the residuals, evaluated once per site.
struct Kinematics {
  Vec3d v{}, vT{}, n{}, ndot{}, vdot{}, vTdot{}, f{}, fT{};
  double vN = 0.0, vNdot = 0.0, fN = 0.0, kappa = 0.0, p = 0.0;
  std::optional<double> p1, V;
  Mat3d P{}, B{}, grad_v{}, grad_vT{}, E_v{}, E_split{};
  Vec3d grad_p{}, grad_vN{}, divE_v{}, divE_split{}, dtn_vT{};
  double div_v = 0.0, div_vT = 0.0, trB_gradvT = 0.0, trB2 = 0.0;
};

inline Kinematics kinematics(const FlowState& st, const Site& s) {
  const Frame& fr = s.fr;
  Kinematics k;
  const Vec3<Jet2> v = deriv(fr.R, kTime);
  const Vec3<Jet2> vT = fr.P * v;
  const Jet2 vN = dot(v, fr.n);
  const Jet2 p = st.p(s);
  k.v = value(v);
  k.vT = value(vT);
  k.vN = vN.value();
  k.n = value(fr.n);
  k.P = value(fr.P);
  k.B = value(fr.B);
  k.kappa = fr.kappa.value();
  k.p = p.value();
  k.ndot = value(deriv(fr.n, kTime));
  k.vdot = value(deriv(v, kTime));
  k.vTdot = value(deriv(vT, kTime));
  k.vNdot = deriv(vN, kTime).value();
  k.grad_p = value(grad_scalar(fr, p));
  k.grad_v = value(cov_deriv(fr, v));
  k.grad_vT = value(cov_deriv(fr, vT));
  k.grad_vN = value(grad_scalar(fr, vN));
  const Mat3<Jet1> Ev = sym_part(cov_deriv(fr, v));
  const Mat3<Jet1> Es = sym_part(cov_deriv(fr, vT)) - trunc<1>(vN) * fr.B;
  k.E_v = value(Ev);
  k.E_split = value(Es);
  k.divE_v = value(div_tensor(fr, Ev));
  k.divE_split = value(div_tensor(fr, Es));
  k.div_v = div_vector(fr, v).value();
  k.div_vT = div_vector(fr, vT).value();
  k.trB_gradvT = trace(k.B * k.grad_vT);
  k.trB2 = trace(k.B * k.B);
  // Time derivative in the normal parametrization: remove the tangential drift v^a d_a.
  Vec3<Jet1> dtn = deriv(vT, kTime);
  for (int a = 0; a < 2; ++a) dtn = dtn - trunc<1>(dot(v, fr.gcon[a])) * deriv(vT, a);
  k.dtn_vT = value(dtn);
  if (st.force) {
    k.f = value((*st.force)(s));
    k.fT = k.P * k.f;
    k.fN = dot(k.f, k.n);
  }
  if (st.p1) k.p1 = (*st.p1)(s).value();
  if (st.normal_velocity) k.V = (*st.normal_velocity)(s).value();
  return k;
}

// Pointwise residual: momentum (R^3), a scalar equation (divergence, inextensibility or normal balance) and the
// kinematic constraint of the first-order pressure system.
struct PointResidual {
  Vec3d momentum{0.0, 0.0, 0.0};
  double scalar = 0.0;
  double constraint = 0.0;
  double max_abs() const {
    return std::max({surfcalc::max_abs(momentum), std::abs(scalar), std::abs(constraint)});
  }
};

inline PointResidual residual(System sys, const FlowState& st, const Kinematics& k, const Faults& faults = {}) {
  PointResidual r;
  const double mu = st.mu0;
  switch (sys) {
    case System::full: {
      // rho v' - f + grad p + p kappa n - 2 mu0 div E(v); div v
      const double pk = faults.drop_pkappa ? 0.0 : k.p * k.kappa;
      r.momentum = st.rho * k.vdot - k.f + k.grad_p + pk * k.n - (2.0 * mu) * k.divE_v;
      r.scalar = k.div_v;
      break;
    }
    case System::first_order: {
      if (!k.p1 || !k.V) throw IncompleteStateError("first-order system needs p1 and the prescribed normal velocity");
      r.momentum = k.vdot + k.grad_p + (*k.p1) * k.n - (2.0 * mu) * k.divE_v;
      r.scalar = k.div_v;
      r.constraint = dot(k.v, k.n) - *k.V;
      break;
    }
    case System::tangential_split: {
      r.momentum = k.vTdot - k.fT + k.grad_p - (2.0 * mu) * (k.P * k.divE_v) + dot(k.ndot, k.vT) * k.n + k.vN * k.ndot;
      r.scalar = k.div_vT - k.vN * k.kappa;
      break;
    }
    case System::tangential_normal_time: {
      r.momentum = k.P * k.dtn_vT + k.grad_vT * k.vT - k.vN * (k.B * k.vT + k.grad_vN) + k.grad_p -
                   (2.0 * mu) * (k.P * k.divE_split) - k.fT;
      r.scalar = k.div_vT - k.vN * k.kappa;
      break;
    }
    case System::tangential_rewritten: {
      r.momentum = k.P * k.vTdot + k.grad_p - (2.0 * mu) * (k.P * k.divE_split) - k.vN * (k.B * k.vT + k.grad_vN) - k.fT;
      r.scalar = k.div_vT - k.vN * k.kappa;
      break;
    }
    case System::normal_split: {
      r.scalar = k.vNdot - k.fN - 2.0 * mu * (k.trB_gradvT - k.vN * k.trB2) + k.p * k.kappa - dot(k.ndot, k.vT);
      break;
    }
    case System::normal_first_order: {
      if (!k.p1) throw IncompleteStateError("normal first-order equation needs p1");
      r.scalar = k.vNdot - 2.0 * mu * (k.trB_gradvT - k.vN * k.trB2) + *k.p1 - dot(k.ndot, k.vT);
      break;
    }
  }
  return r;
}

inline PointResidual residual(System sys, const FlowState& st, const Site& s) {
  return residual(sys, st, kinematics(st, s), s.faults);
}

// Standalone identities relating the terms of the formulations.
inline std::map<std::string, double> identity_residuals(const Kinematics& k) {
  std::map<std::string, double> r;
  r["ndot"] = max_abs(k.ndot - (-1.0 * (k.B * k.vT) - k.grad_vN));
  r["projected_acceleration"] = max_abs(k.P * k.vdot - (k.vTdot + dot(k.ndot, k.vT) * k.n + k.vN * k.ndot));
  r["normal_acceleration"] = std::abs(dot(k.vdot, k.n) - (k.vNdot - dot(k.vT, k.ndot)));
  r["normal_viscous"] = std::abs(dot(k.n, k.divE_v) - (k.trB_gradvT - k.vN * k.trB2));
  r["tangential_rate"] = max_abs(k.vTdot - (k.P * k.vTdot - dot(k.ndot, k.vT) * k.n));
  r["strain_split"] = max_abs(k.E_v - k.E_split);
  r["first_order_velocity"] = max_abs(k.grad_v * k.n);
  return r;
}

struct SystemResidual {
  System system;
  std::string state;
  std::vector<PointResidual> pointwise;
  double max = 0.0;
  double l2 = 0.0;
};

// Maximum over sample sites; L2 over a quadrature rule on the state's sample region when orders are positive.
inline SystemResidual evaluate_system(System sys, const FlowState& st, const std::vector<std::array<double, 2>>& pts,
                                      int order_u = 0, int order_v = 0, const Faults& faults = {}) {
  SystemResidual out{sys, st.name, {}, 0.0, 0.0};
  for (const auto& q : pts) {
    const Site s = make_site(*st.chart, q[0], q[1], st.t, faults);
    out.pointwise.push_back(residual(sys, st, s));
    out.max = std::max(out.max, out.pointwise.back().max_abs());
  }
  if (order_u > 0 && order_v > 0) {
    const double sq = integrate(*st.chart, st.t, st.sample_region, order_u, order_v, [&](const Site& s0) {
      const Site s{s0.chart, s0.u, s0.v, s0.t, s0.fr, faults};
      const PointResidual r = residual(sys, st, s);
      return dot(r.momentum, r.momentum) + r.scalar * r.scalar + r.constraint * r.constraint;
    });
    out.l2 = std::sqrt(std::max(0.0, sq));
  }
  return out;
}

// Manufactured and reference states.
namespace states {

inline Region sphere_region() {
  return {{kPoleMargin, -std::numbers::pi}, {std::numbers::pi - kPoleMargin, std::numbers::pi}};
}

// Rigid rotation v = e3 x x of the unit sphere with centrifugal pressure (x1^2 + x2^2) / 2.
// The full and split normal equations close with f = (p kappa - |v_T|^2) n, the first-order ones with p1 = |v_T|^2.
inline FlowState rigid_rotation(double mu0 = 1.0, bool with_force = true) {
  FlowState st;
  st.name = "rigid_rotation";
  st.chart = charts::rotating_sphere();
  st.t = 0.3;
  st.mu0 = mu0;
  st.sample_region = sphere_region();
  auto p = ambient_scalar("centrifugal", [](const Vec3<Jet2>& x, const Jet2&) { return 0.5 * (x[0] * x[0] + x[1] * x[1]); });
  st.p = p;
  auto speed2 = [](const Site& s) {
    const Vec3<Jet2> v = s.fr.P * deriv(s.fr.R, kTime);
    return dot(v, v);
  };
  st.p1 = ScalarField{"tangential_speed_squared", speed2};
  if (with_force)
    // Value-only jet: the residuals never differentiate the force.
    st.force = VectorField{"normal_load", [p, speed2](const Site& s) {
                             const Jet2 fN(p(s).value() * s.fr.kappa.value() - speed2(s).value());
                             return Vec3<Jet2>{fN * s.fr.n[0].value(), fN * s.fr.n[1].value(), fN * s.fr.n[2].value()};
                           }};
  st.normal_velocity = ScalarField{"zero", [](const Site&) { return Jet2(0.0); }};
  return st;
}

// Radially expanding sphere r(t) = 1 + t/4; v = r' n.
inline FlowState expanding(double mu0 = 1.0) {
  FlowState st;
  st.name = "expanding_sphere";
  st.chart = charts::expanding_sphere();
  st.t = 0.0;
  st.mu0 = mu0;
  st.sample_region = sphere_region();
  st.p = ambient_scalar("height", [](const Vec3<Jet2>& x, const Jet2&) { return x[2]; });
  st.p1 = ambient_scalar("p1", [](const Vec3<Jet2>& x, const Jet2&) { return 0.5 * x[0]; });
  st.normal_velocity = ScalarField{"radial_rate", [](const Site&) { return Jet2(0.25); }};
  return st;
}

// Deforming and spinning ellipsoid: tangential and normal velocity both present, not a Killing flow.
inline FlowState deforming(double mu0 = 0.7) {
  FlowState st;
  st.name = "deforming_ellipsoid";
  st.chart = charts::deforming_ellipsoid();
  st.t = 0.3;
  st.mu0 = mu0;
  st.sample_region = sphere_region();
  st.p = ambient_scalar("mixed", [](const Vec3<Jet2>& x, const Jet2& t) { return x[0] * x[1] + x[2] + 0.1 * t; });
  st.p1 = ambient_scalar("p1", [](const Vec3<Jet2>& x, const Jet2&) { return x[0] - x[2] * x[2]; });
  st.normal_velocity = ScalarField{"normal_speed", [](const Site& s) { return dot(deriv(s.fr.R, kTime), s.fr.n); }};
  return st;
}

// Zero velocity and pressure on the static plane.
inline FlowState zero() {
  FlowState st;
  st.name = "zero";
  st.chart = charts::plane();
  st.t = 0.0;
  st.mu0 = 1.0;
  st.sample_region = {{-1.0, -1.0}, {1.0, 1.0}};
  st.p = ScalarField{"zero", [](const Site&) { return Jet2(0.0); }};
  st.p1 = st.p;
  st.force = VectorField{"zero", [](const Site&) { return Vec3<Jet2>{}; }};
  st.normal_velocity = st.p;
  return st;
}

inline std::vector<std::string> names() { return {"rigid_rotation", "expanding_sphere", "deforming_ellipsoid", "zero"}; }

inline FlowState by_name(const std::string& n) {
  if (n == "rigid_rotation") return rigid_rotation();
  if (n == "expanding_sphere") return expanding();
  if (n == "deforming_ellipsoid") return deforming();
  if (n == "zero") return zero();
  throw ConfigError("unknown state '" + n + "'");
}

}  // namespace states

}  // namespace surfcalc
