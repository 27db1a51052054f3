#pragma once

// Flow maps, material derivatives, the metric rate E and the transport theorem.

#include <array>
#include <cmath>
#include <string>

#include "surfcalc/cart_ops.hpp"
#include "surfcalc/chart.hpp"
#include "surfcalc/curv_ops.hpp"
#include "surfcalc/errors.hpp"
#include "surfcalc/fields.hpp"
#include "surfcalc/quadrature.hpp"

namespace surfcalc {

// Surface velocity dR/dt at chart coordinates.
inline Vec3d chart_velocity(const Chart& c, double u, double v, double t) {
  const Vec3<Jet1> R = c.eval(Jet1::variable(u, kXi1), Jet1::variable(v, kXi2), Jet1::variable(t, kTime));
  return {R[0].grad(kTime), R[1].grad(kTime), R[2].grad(kTime)};
}

struct FlowResult {
  Vec3d x{};
  std::array<double, 2> xi{};
  double error_estimate = 0.0;
};

namespace detail {

// Classical RK4 for dx/dt = v(x, t), with v read off the chart at the closest point.
inline FlowResult rk4(const Chart& c, Vec3d x, std::array<double, 2> xi, double t0, double t1, int steps,
                      const ClosestPointOptions& cp) {
  const double dt = (t1 - t0) / steps;
  if (!(std::abs(dt) > 1e-14 || t1 == t0)) throw IntegrationError("flow integration step underflow");
  auto vel = [&](const Vec3d& y, double t) {
    const ClosestPointResult r = closest_point(c, t, y, cp, xi);
    xi = r.xi;
    return chart_velocity(c, r.xi[0], r.xi[1], t);
  };
  double t = t0;
  for (int k = 0; k < steps; ++k) {
    const Vec3d k1 = vel(x, t);
    const Vec3d k2 = vel(x + (0.5 * dt) * k1, t + 0.5 * dt);
    const Vec3d k3 = vel(x + (0.5 * dt) * k2, t + 0.5 * dt);
    const Vec3d k4 = vel(x + dt * k3, t + dt);
    x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t = t0 + (k + 1) * dt;
  }
  const ClosestPointResult r = closest_point(c, t1, x, cp, xi);
  return {x, r.xi, 0.0};
}

}  // namespace detail

// Trajectory of the material point z = R(xi_z, t0) up to t1; one Richardson halving estimates the error.
inline FlowResult integrate_flow(const Chart& c, std::array<double, 2> xi_z, double t0, double t1, int steps = 0,
                                 const ClosestPointOptions& cp = {}) {
  if (steps <= 0) steps = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / 1e-3)));
  if (steps > 10000000) throw IntegrationError("flow integration step underflow");
  const Vec3d z = c.eval(xi_z[0], xi_z[1], t0);
  const FlowResult coarse = detail::rk4(c, z, xi_z, t0, t1, steps, cp);
  FlowResult fine = detail::rk4(c, z, xi_z, t0, t1, 2 * steps, cp);
  fine.error_estimate = norm(fine.x - coarse.x) / 15.0;
  return fine;
}

// Material derivative along the chart: d/dt of the field at fixed chart coordinates.
inline double material_derivative(const Site& s, const ScalarField& f) { return deriv(f(s), kTime).value(); }
inline Vec3d material_derivative(const Site& s, const VectorField& f) { return value(deriv(f(s), kTime)); }

// Cartesian pathway: d_t f^e + grad(f^e) . v at the surface point of the probe.
inline double material_derivative_cartesian(const CartesianProbe& pr, const ScalarField& f) {
  const Site& s = pr.foot();
  const Vec3d v = chart_velocity(*s.chart, s.u, s.v, s.t);
  const double dt = pr.time_derivative<double>([&](const Site& q) { return f(q).value(); });
  return dt + dot(pr.ambient_grad(f), v);
}

inline Vec3d material_derivative_cartesian(const CartesianProbe& pr, const VectorField& f) {
  const Site& s = pr.foot();
  const Vec3d v = chart_velocity(*s.chart, s.u, s.v, s.t);
  const Vec3d dt = pr.time_derivative<Vec3d>([&](const Site& q) { return value(f(q)); });
  return dt + pr.jacobian(f) * v;
}

// Trajectory oracle: central difference of f along integrated trajectories through the site's point.
template <class T, class G>
T trajectory_derivative(const Site& s, double h, G eval_at, int steps = 4, const ClosestPointOptions& cp = {}) {
  const Chart& c = *s.chart;
  const FlowResult fp = integrate_flow(c, {s.u, s.v}, s.t, s.t + h, steps, cp);
  const FlowResult fm = integrate_flow(c, {s.u, s.v}, s.t, s.t - h, steps, cp);
  const Site sp = make_site(c, fp.xi[0], fp.xi[1], s.t + h);
  const Site sm = make_site(c, fm.xi[0], fm.xi[1], s.t - h);
  return (1.0 / (2.0 * h)) * (eval_at(sp) - eval_at(sm));
}

struct MetricRate {
  Sym2<double> E_lo{};       // 0.5 d_t g_ab
  Mat3d E_op{};              // E_ab g^a (x) g^b
  Mat3d E_grad{};            // 0.5 (grad v + grad v^T)
  Sym2<double> E_formula{};  // 0.5 (v_{b|a} + v_{a|b}) - v_3 b_ab
  double max_gap = 0.0;
};

inline constexpr double kMetricRateTol = 1e-10;

inline MetricRate metric_rate(const Site& s, double tol = kMetricRateTol) {
  const Frame& f = s.fr;
  MetricRate m;
  const Vec3<Jet2> v = deriv(f.R, kTime);
  const Vec3d gc[2] = {value(f.gcon[0]), value(f.gcon[1])};
  m.E_op = zero_mat<double>();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      m.E_lo[a][b] = 0.5 * deriv(f.glo[a][b], kTime).value();
      m.E_op = m.E_op + m.E_lo[a][b] * outer(gc[a], gc[b]);
    }
  m.E_grad = value(sym_part(cov_deriv(f, v)));
  const ComponentDerivatives cd = component_derivatives(f, v, f.P);
  const double v3 = dot(value(v), value(f.n));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      m.E_formula[a][b] = 0.5 * (cd.u_cov_bar[b][a] + cd.u_cov_bar[a][b]) - v3 * f.blo[a][b].value();
  m.max_gap = max_abs(m.E_op - m.E_grad);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) m.max_gap = std::max(m.max_gap, std::abs(m.E_formula[a][b] - m.E_lo[a][b]));
  if (m.max_gap > tol) throw ConsistencyError("metric-rate pathways disagree by " + std::to_string(m.max_gap));
  return m;
}

struct LeibnizResult {
  double lhs = 0.0;  // d/dt of the integral, central difference in t
  double rhs = 0.0;  // integral of (f' + f div v)
  double residual = 0.0;
};

inline LeibnizResult leibniz(const Chart& c, const ScalarField& f, const Region& reg, double t, double h_t,
                             int order_u, int order_v) {
  LeibnizResult r;
  const double ip = integrate(c, t + h_t, reg, order_u, order_v, f);
  const double im = integrate(c, t - h_t, reg, order_u, order_v, f);
  r.lhs = (ip - im) / (2.0 * h_t);
  const VectorField vel = material_velocity();
  r.rhs = integrate(c, t, reg, order_u, order_v, [&](const Site& s) {
    const Jet2 fj = f(s);
    return deriv(fj, kTime).value() + fj.value() * div_vector(s.fr, vel(s)).value();
  });
  r.residual = r.lhs - r.rhs;
  return r;
}

}  // namespace surfcalc
