#pragma once

// The check registry: every identity of the kernel as a named residual with a tolerance.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "surfcalc/cart_ops.hpp"
#include "surfcalc/catalog.hpp"
#include "surfcalc/curv_ops.hpp"
#include "surfcalc/evolution.hpp"
#include "surfcalc/harness/config.hpp"
#include "surfcalc/ns_residuals.hpp"
#include "surfcalc/quadrature.hpp"
#include "surfcalc/thin_film.hpp"

namespace surfcalc::harness {

// Least-squares slope of log(err) against log(step); NaN when fewer than two usable points.
inline double fit_slope(const std::vector<std::array<double, 2>>& series) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& [h, e] : series) {
    if (!(h > 0.0) || !(e > 0.0)) continue;
    const double x = std::log(h), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Outcome {
  double residual = 0.0;
  std::optional<double> slope;
  std::vector<std::array<double, 2>> series;  // (step, error) for convergence studies
};

// bound: pass when residual <= tol. witness: pass when residual > tol (the defect is visible).
enum class Kind { bound, witness };

struct Context {
  const Config& cfg;
  const FieldSet& fields;
  Faults faults;
  std::mt19937_64 rng;
};

struct CheckDef {
  std::string id;
  std::string anchor;
  double tol;
  Kind kind = Kind::bound;
  std::optional<std::array<double, 2>> slope_window;
  std::function<Outcome(Context&)> run;
};

namespace checks {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<std::array<double, 2>> sample(Context& ctx, std::array<double, 2> lo, std::array<double, 2> hi, int n) {
  std::uniform_real_distribution<double> du(lo[0], hi[0]), dv(lo[1], hi[1]);
  std::vector<std::array<double, 2>> pts(n);
  for (auto& p : pts) {
    p[0] = du(ctx.rng);
    p[1] = dv(ctx.rng);
  }
  return pts;
}

inline std::vector<CatalogEntry> surfaces(const Context& ctx) {
  std::vector<CatalogEntry> out;
  for (const auto& s : ctx.cfg.surfaces) out.push_back(catalog_entry(s));
  return out;
}

inline std::vector<CatalogEntry> evolving_surfaces() {
  return {catalog_entry("expanding_sphere"), catalog_entry("rotating_sphere"), catalog_entry("deforming_ellipsoid")};
}

inline int fewer(const Context& ctx, int div, int floor = 8) { return std::max(floor, ctx.cfg.points / div); }

inline constexpr double kEvolvingTime = 0.3;

// Comparison of curvilinear and Cartesian operators -------------------------------------------------------------

enum class CompOp { grad, cov, div, tensor, witness, extension };

inline double comparison_gap(Context& ctx, CompOp op, double h, const std::vector<CatalogEntry>& surf,
                             const std::vector<std::vector<std::array<double, 2>>>& pts) {
  const FieldSet& F = ctx.fields;
  double gap = 0.0;
  for (std::size_t k = 0; k < surf.size(); ++k) {
    const Chart& c = *surf[k].chart;
    for (const auto& q : pts[k]) {
      ProbeOptions o;
      o.h = h;
      const CartesianProbe pr = CartesianProbe::on_surface(c, q[0], q[1], 0.0, o, ctx.faults);
      const Site s = make_site(c, q[0], q[1], 0.0, ctx.faults);
      switch (op) {
        case CompOp::grad:
          for (const auto& f : F.scalars) gap = std::max(gap, max_abs(pr.grad(f) - value(grad_scalar(s.fr, f(s)))));
          break;
        case CompOp::cov:
          for (const auto& u : F.vectors) gap = std::max(gap, max_abs(pr.cov_deriv(u) - value(cov_deriv(s.fr, u(s)))));
          break;
        case CompOp::div:
          for (const auto& u : F.vectors) gap = std::max(gap, std::abs(pr.div(u) - div_vector(s.fr, u(s)).value()));
          break;
        case CompOp::tensor:
          for (const auto& T : F.tensors) {
            const Vec3d cart = ctx.faults.drop_transpose ? pr.div_tensor_rows(T) : pr.div_tensor_transposed(T);
            gap = std::max(gap, max_abs(cart - value(div_tensor(s.fr, T(s)))));
          }
          break;
        case CompOp::witness:
          for (const auto& T : F.tensors) gap = std::max(gap, max_abs(pr.div_tensor_rows(T) - value(div_tensor(s.fr, T(s)))));
          break;
        case CompOp::extension: {
          ProbeOptions w = o;
          w.extension = Extension::quadratic_weight;
          const CartesianProbe pw = CartesianProbe::on_surface(c, q[0], q[1], 0.0, w, ctx.faults);
          for (const auto& f : F.scalars) gap = std::max(gap, max_abs(pw.grad(f) - pr.grad(f)));
          for (const auto& u : F.vectors) gap = std::max(gap, max_abs(pw.cov_deriv(u) - pr.cov_deriv(u)));
          break;
        }
      }
    }
  }
  return gap;
}

inline Outcome comparison(Context& ctx, CompOp op) {
  const auto surf = surfaces(ctx);
  std::vector<std::vector<std::array<double, 2>>> pts;
  for (const auto& e : surf) pts.push_back(sample(ctx, e.sample_lo, e.sample_hi, ctx.cfg.points));
  Outcome o;
  o.residual = comparison_gap(ctx, op, ctx.cfg.fd.h, surf, pts);
  if (op != CompOp::witness) {
    for (double h : ctx.cfg.fd.sweep) o.series.push_back({h, comparison_gap(ctx, op, h, surf, pts)});
    o.slope = fit_slope(o.series);
  }
  return o;
}

// Pointwise sweeps over configured surfaces -----------------------------------------------------------------------

template <class F>
double over_sites(Context& ctx, const std::vector<CatalogEntry>& surf, int n, double t, F f) {
  double r = 0.0;
  for (const auto& e : surf) {
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, n)) {
      const Site s = make_site(*e.chart, q[0], q[1], t, ctx.faults);
      r = std::max(r, f(s, e));
    }
  }
  return r;
}

inline Outcome jets_fd(Context& ctx) {
  Outcome o;
  std::vector<CatalogEntry> all = catalog();
  const double h = ctx.cfg.fd.h;
  for (const auto& e : all) {
    const Chart& c = *e.chart;
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 10))) {
      const double t = 0.0;
      const Vec3<Jet2> R = eval_jet2(c, q[0], q[1], t);
      auto at = [&](std::array<double, 3> d) { return c.eval(q[0] + d[0], q[1] + d[1], t + d[2]); };
      auto first = [&](int i, double s) {
        std::array<double, 3> d{0, 0, 0};
        d[i] = s;
        std::array<double, 3> m{0, 0, 0};
        m[i] = -s;
        return (1.0 / (2.0 * s)) * (at(d) - at(m));
      };
      auto second = [&](int i, int j, double s) {
        std::array<double, 3> pp{0, 0, 0}, pm{0, 0, 0}, mp{0, 0, 0}, mm{0, 0, 0};
        pp[i] += s; pp[j] += s;
        pm[i] += s; pm[j] -= s;
        mp[i] -= s; mp[j] += s;
        mm[i] -= s; mm[j] -= s;
        return (1.0 / (4.0 * s * s)) * (at(pp) - at(pm) - at(mp) + at(mm));
      };
      for (int i = 0; i < 3; ++i) {
        const Vec3d fd = (1.0 / 3.0) * (4.0 * first(i, h / 2) - first(i, h));
        for (int k = 0; k < 3; ++k)
          o.residual = std::max(o.residual, std::abs(fd[k] - R[k].grad(i)) / std::max(1.0, std::abs(R[k].grad(i))));
        for (int j = i; j < 3; ++j) {
          const Vec3d sd = (1.0 / 3.0) * (4.0 * second(i, j, h / 2) - second(i, j, h));
          for (int k = 0; k < 3; ++k)
            o.residual = std::max(o.residual, std::abs(sd[k] - R[k].hess(i, j)) / std::max(1.0, std::abs(R[k].hess(i, j))));
        }
      }
    }
  }
  return o;
}

inline double coord_gap(const Chart& c, std::array<double, 2> a, std::array<double, 2> b) {
  double g = 0.0;
  for (int i = 0; i < 2; ++i) {
    double d = a[i] - b[i];
    if (c.domain().periodic[i]) {
      const double p = c.domain().hi[i] - c.domain().lo[i];
      d = std::remainder(d, p);
    }
    g = std::max(g, std::abs(d));
  }
  return g;
}

inline Outcome closest_identity(Context& ctx) {
  Outcome o;
  for (const auto& e : catalog()) {
    const Chart& c = *e.chart;
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 4))) {
      const ClosestPointResult r = closest_point(c, 0.0, c.eval(q[0], q[1], 0.0));
      o.residual = std::max({o.residual, std::abs(r.d), coord_gap(c, r.xi, q)});
    }
  }
  return o;
}

inline Outcome closest_offset(Context& ctx) {
  Outcome o;
  for (const auto& e : catalog()) {
    const Chart& c = *e.chart;
    std::uniform_real_distribution<double> ds(-0.5 * c.delta(), 0.5 * c.delta());
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 4))) {
      const Frame f = frame(c, q[0], q[1], 0.0);
      const double s = ds(ctx.rng);
      const ClosestPointResult r = closest_point(c, 0.0, value(f.R) + s * value(f.n), {}, q);
      o.residual = std::max(o.residual, std::abs(r.d - s));
    }
  }
  return o;
}

// A smooth orientation-preserving change of chart coordinates.
inline ChartPtr reparametrized(const ChartPtr& base) {
  return make_chart(base->name() + "_reparam", base->domain(), base->options(), [base](auto u, auto v, auto t) {
    using std::sin;
    return base->eval(u + 0.05 * sin(v), v + 0.1 * sin(u), t);
  });
}

inline Outcome reparametrization(Context& ctx) {
  Outcome o;
  const FieldSet& F = ctx.fields;
  for (const auto& e : surfaces(ctx)) {
    const ChartPtr alt = reparametrized(e.chart);
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 4))) {
      const Site sa = make_site(*alt, q[0], q[1], 0.0, ctx.faults);
      const Site sb = make_site(*e.chart, q[0] + 0.05 * std::sin(q[1]), q[1] + 0.1 * std::sin(q[0]), 0.0, ctx.faults);
      double g = std::max({max_abs(value(sa.fr.n) - value(sb.fr.n)), max_abs(value(sa.fr.B) - value(sb.fr.B)),
                           max_abs(value(sa.fr.P) - value(sb.fr.P)), std::abs(sa.fr.kappa.value() - sb.fr.kappa.value()),
                           std::abs(sa.fr.gauss.value() - sb.fr.gauss.value())});
      for (const auto& f : F.scalars) g = std::max(g, max_abs(value(grad_scalar(sa.fr, f(sa))) - value(grad_scalar(sb.fr, f(sb)))));
      for (const auto& u : F.vectors) {
        g = std::max(g, max_abs(value(cov_deriv(sa.fr, u(sa))) - value(cov_deriv(sb.fr, u(sb)))));
        g = std::max(g, std::abs(div_vector(sa.fr, u(sa)).value() - div_vector(sb.fr, u(sb)).value()));
      }
      for (const auto& T : F.tensors)
        g = std::max(g, max_abs(value(div_tensor(sa.fr, T(sa))) - value(div_tensor(sb.fr, T(sb)))));
      o.residual = std::max(o.residual, g);
    }
  }
  return o;
}

// Material derivatives ----------------------------------------------------------------------------------------------

inline ScalarField moving_scalar() {
  return ambient_scalar("moving_scalar", [](const Vec3<Jet2>& x, const Jet2& t) { return t * x[2] + x[0] * x[1]; });
}

inline VectorField moving_vector() {
  return ambient_vector("moving_vector", [](const Vec3<Jet2>& x, const Jet2& t) {
    return Vec3<Jet2>{t * x[1], x[0] * x[2], sin(t + x[0])};
  });
}

inline Outcome material_cartesian(Context& ctx) {
  Outcome o;
  const ScalarField f = moving_scalar();
  const VectorField u = moving_vector();
  for (const auto& e : evolving_surfaces()) {
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 10))) {
      ProbeOptions po;
      po.h = ctx.cfg.fd.h;
      po.h_time = ctx.cfg.fd.h_time;
      const CartesianProbe pr = CartesianProbe::on_surface(*e.chart, q[0], q[1], kEvolvingTime, po, ctx.faults);
      const Site& s = pr.foot();
      o.residual = std::max(o.residual, std::abs(material_derivative_cartesian(pr, f) - material_derivative(s, f)));
      o.residual = std::max(o.residual, max_abs(material_derivative_cartesian(pr, u) - material_derivative(s, u)));
    }
  }
  return o;
}

// Trajectory finite differences against the curvilinear (cartesian = false) or Cartesian pathway.
inline Outcome material_trajectory(Context& ctx, bool cartesian) {
  Outcome o;
  const ScalarField f = moving_scalar();
  const VectorField u = moving_vector();
  struct Ref {
    const Chart* c;
    std::array<double, 2> q;
    double f;
    Vec3d u;
  };
  std::vector<CatalogEntry> ev = evolving_surfaces();
  std::vector<Ref> refs;
  for (const auto& e : ev) {
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, 4)) {
      const Site s = make_site(*e.chart, q[0], q[1], kEvolvingTime, ctx.faults);
      if (cartesian) {
        ProbeOptions po;
        po.h = ctx.cfg.fd.h;
        po.h_time = ctx.cfg.fd.h_time;
        const CartesianProbe pr = CartesianProbe::on_surface(*e.chart, q[0], q[1], kEvolvingTime, po, ctx.faults);
        refs.push_back({e.chart.get(), q, material_derivative_cartesian(pr, f), material_derivative_cartesian(pr, u)});
      } else {
        refs.push_back({e.chart.get(), q, material_derivative(s, f), material_derivative(s, u)});
      }
    }
  }
  for (double h : ctx.cfg.fd.time_sweep) {
    double err = 0.0;
    for (const auto& r : refs) {
      const Site s = make_site(*r.c, r.q[0], r.q[1], kEvolvingTime, ctx.faults);
      const double tf = trajectory_derivative<double>(s, h, [&](const Site& z) { return f(z).value(); });
      const Vec3d tu = trajectory_derivative<Vec3d>(s, h, [&](const Site& z) { return value(u(z)); });
      err = std::max({err, std::abs(tf - r.f), max_abs(tu - r.u)});
    }
    o.series.push_back({h, err});
  }
  o.slope = fit_slope(o.series);
  o.residual = o.series.back()[1];
  return o;
}

inline Outcome normal_rate(Context& ctx) {
  Outcome o;
  const VectorField nf = normal_field();
  for (const auto& e : evolving_surfaces()) {
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, 4)) {
      const Site s = make_site(*e.chart, q[0], q[1], kEvolvingTime, ctx.faults);
      const Frame& f = s.fr;
      const Vec3<Jet2> v = deriv(f.R, kTime);
      const Vec3d vT = value(f.P * v);
      const Vec3d formula = -1.0 * (value(f.B) * vT) - value(grad_scalar(f, dot(v, f.n)));
      const Vec3d traj = trajectory_derivative<Vec3d>(s, ctx.cfg.fd.h_time, [&](const Site& z) { return value(nf(z)); });
      o.residual = std::max({o.residual, max_abs(traj - formula), max_abs(material_derivative(s, nf) - formula)});
    }
  }
  return o;
}

inline Outcome flow_map(Context& ctx) {
  Outcome o;
  const double pi = std::numbers::pi;
  const ChartPtr rot = charts::rotating_sphere();
  const FlowResult a = integrate_flow(*rot, {pi / 2, 0.0}, 0.0, pi / 2);
  o.residual = max_abs(a.x - Vec3d{0.0, 1.0, 0.0});
  const ChartPtr exp_s = charts::expanding_sphere();
  const FlowResult b = integrate_flow(*exp_s, {pi / 2, 0.0}, 0.0, 1.0);
  o.residual = std::max(o.residual, max_abs(b.x - Vec3d{1.25, 0.0, 0.0}));
  const CatalogEntry d = catalog_entry("deforming_ellipsoid");
  for (const auto& q : sample(ctx, d.sample_lo, d.sample_hi, 2)) {
    const FlowResult r = integrate_flow(*d.chart, q, kEvolvingTime, kEvolvingTime + 0.4);
    o.residual = std::max(o.residual, max_abs(r.x - d.chart->eval(q[0], q[1], kEvolvingTime + 0.4)));
  }
  return o;
}

// Transport theorem and quadrature ----------------------------------------------------------------------------------

inline Region sample_region(const CatalogEntry& e) { return {e.sample_lo, e.sample_hi}; }

inline Outcome leibniz_convergence(Context& ctx) {
  Outcome o;
  const auto& q = ctx.cfg.quadrature;
  const CatalogEntry ex = catalog_entry("expanding_sphere");
  const CatalogEntry de = catalog_entry("deforming_ellipsoid");
  const ScalarField x3sq = ambient_scalar("x3_squared", [](const Vec3<Jet2>& x, const Jet2&) { return x[2] * x[2]; });
  const ScalarField mixed = ambient_scalar("mixed", [](const Vec3<Jet2>& x, const Jet2& t) { return x[0] * x[2] + t * x[1] + 1.0; });
  auto err = [&](double h) {
    const double a = std::abs(leibniz(*ex.chart, x3sq, sample_region(ex), 0.0, h, q.order_u, q.order_v).residual);
    const double b = std::abs(leibniz(*de.chart, mixed, sample_region(de), kEvolvingTime, h, q.order_u, q.order_v).residual);
    return std::max(a, b);
  };
  for (double h : ctx.cfg.fd.time_sweep) o.series.push_back({h, err(h)});
  o.slope = fit_slope(o.series);
  o.residual = err(ctx.cfg.fd.h_time);
  return o;
}

inline Outcome area_rate(Context& ctx) {
  const auto& q = ctx.cfg.quadrature;
  const CatalogEntry ex = catalog_entry("expanding_sphere");
  const ScalarField one{"one", [](const Site&) { return Jet2(1.0); }};
  const LeibnizResult r = leibniz(*ex.chart, one, sample_region(ex), 0.0, ctx.cfg.fd.h_time, q.order_u, q.order_v);
  // The band between the pole margins carries cos(margin) of the full area; 8 pi r r' = 2 pi at t = 0.
  const double corr = std::cos(kPoleMargin);
  const double target = 8.0 * std::numbers::pi * 1.0 * 0.25;
  Outcome o;
  o.residual = std::max(std::abs(r.lhs / corr - target), std::abs(r.rhs / corr - target));
  return o;
}

inline Outcome mass_constancy(Context& ctx) {
  const auto& q = ctx.cfg.quadrature;
  const CatalogEntry rs = catalog_entry("rotating_sphere");
  const ScalarField rho{"density", [](const Site&) { return Jet2(1.0); }};
  const LeibnizResult r = leibniz(*rs.chart, rho, sample_region(rs), kEvolvingTime, ctx.cfg.fd.h_time, q.order_u, q.order_v);
  Outcome o;
  o.residual = std::max(std::abs(r.lhs), std::abs(r.rhs));
  return o;
}

inline Outcome quadrature_values(Context& ctx, int which) {
  const auto& q = ctx.cfg.quadrature;
  Outcome o;
  const double m = kPoleMargin, pi = std::numbers::pi;
  if (which == 0) {
    const ChartPtr pl = charts::plane();
    o.residual = std::abs(integrate(*pl, 0.0, {{0.0, 0.0}, {1.0, 1.0}}, q.order_u, q.order_v, [](const Site&) { return 1.0; }) - 1.0);
  } else if (which == 1) {
    const CatalogEntry e = catalog_entry("unit_sphere");
    const double a = integrate(*e.chart, 0.0, sample_region(e), q.order_u, q.order_v, [](const Site&) { return 1.0; });
    o.residual = std::abs(a / std::cos(m) - 4.0 * pi);
  } else if (which == 2) {
    const CatalogEntry e = catalog_entry("unit_sphere");
    const double a = integrate(*e.chart, 0.0, sample_region(e), q.order_u, q.order_v, [](const Site& s) {
      const double z = s.fr.R[2].value();
      return z * z;
    });
    o.residual = std::abs(a / std::pow(std::cos(m), 3) - 4.0 * pi / 3.0);
  } else {
    const CatalogEntry e = catalog_entry("ellipsoid");
    auto f = [](const Site& s) { return std::exp(0.3 * s.fr.R[0].value()) * (1.0 + s.fr.R[2].value() * s.fr.R[1].value()); };
    const double a = integrate(*e.chart, 0.0, sample_region(e), q.order_u, q.order_v, f);
    const double b = integrate(*e.chart, 0.0, sample_region(e), q.order_u + q.order_u / 2, q.order_v + q.order_v / 2, f);
    o.residual = std::abs(a - b) / std::max(1.0, std::abs(b));
  }
  return o;
}

// Surface Navier-Stokes residuals -------------------------------------------------------------------------------------

inline std::vector<FlowState> flow_states() {
  std::vector<FlowState> out;
  for (const auto& n : states::names()) out.push_back(states::by_name(n));
  return out;
}

template <class F>
double over_states(Context& ctx, const std::vector<FlowState>& sts, int n, F f) {
  double r = 0.0;
  for (const auto& st : sts)
    for (const auto& q : sample(ctx, st.sample_region.lo, st.sample_region.hi, n)) {
      const Site s = make_site(*st.chart, q[0], q[1], st.t, ctx.faults);
      r = std::max(r, f(st, s));
    }
  return r;
}

inline Outcome tangential_forms(Context& ctx) {
  Outcome o;
  o.residual = over_states(ctx, flow_states(), fewer(ctx, 4), [&](const FlowState& st, const Site& s) {
    const Kinematics k = kinematics(st, s);
    const PointResidual a = residual(System::tangential_split, st, k, ctx.faults);
    const PointResidual b = residual(System::tangential_normal_time, st, k, ctx.faults);
    const PointResidual c = residual(System::tangential_rewritten, st, k, ctx.faults);
    return std::max({max_abs(a.momentum - b.momentum), max_abs(a.momentum - c.momentum), std::abs(a.scalar - b.scalar),
                     std::abs(a.scalar - c.scalar)});
  });
  return o;
}

inline Outcome full_split(Context& ctx, bool normal) {
  Outcome o;
  o.residual = over_states(ctx, flow_states(), fewer(ctx, 4), [&](const FlowState& st, const Site& s) {
    const Kinematics k = kinematics(st, s);
    const PointResidual full = residual(System::full, st, k, ctx.faults);
    if (normal) return std::abs(dot(k.n, full.momentum) - residual(System::normal_split, st, k, ctx.faults).scalar);
    return max_abs(k.P * full.momentum - residual(System::tangential_split, st, k, ctx.faults).momentum);
  });
  return o;
}

inline Outcome identity(Context& ctx, const std::string& name) {
  Outcome o;
  o.residual = over_states(ctx, flow_states(), fewer(ctx, 4), [&](const FlowState& st, const Site& s) {
    return identity_residuals(kinematics(st, s)).at(name);
  });
  return o;
}

inline Outcome killing_reduction(Context& ctx) {
  FlowState st = states::rigid_rotation(1.0, false);
  st.p = ScalarField{"constant", [](const Site&) { return Jet2(1.0); }};
  Outcome o;
  o.residual = over_states(ctx, {st}, fewer(ctx, 4), [&](const FlowState& f, const Site& s) {
    const Kinematics k = kinematics(f, s);
    return max_abs(k.P * residual(System::full, f, k, ctx.faults).momentum - f.rho * (k.P * k.vdot));
  });
  return o;
}

// Cartesian counterparts at a probe: material acceleration, pressure terms and the viscous divergence.
struct CartesianMomentum {
  Vec3d accel, grad_p, n, div_E;
  double kappa, p;
};

inline TensorField strain_field() {
  return {"strain", [](const Site& s) {
            const Mat3d E = value(strain(s, deriv(s.fr.R, kTime)));
            Mat3<Jet2> out;
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j) out[i][j] = Jet2(E[i][j]);
            return out;
          },
          true};
}

inline CartesianMomentum cartesian_momentum(const CartesianProbe& pr, const FlowState& st) {
  CartesianMomentum m;
  m.accel = material_derivative_cartesian(pr, material_velocity());
  m.grad_p = pr.grad(st.p);
  m.n = value(pr.foot().fr.n);
  m.kappa = trace(pr.shape());
  m.p = st.p(pr.foot()).value();
  m.div_E = pr.div_tensor_transposed(strain_field());
  return m;
}

inline std::vector<FlowState> moving_states() {
  return {states::rigid_rotation(), states::expanding(), states::deforming()};
}

// which: 0 full momentum, 1 dissipative force, 2 conservative force.
inline Outcome cartesian_forces(Context& ctx, int which) {
  Outcome o;
  for (const auto& st : moving_states()) {
    for (const auto& q : sample(ctx, st.sample_region.lo, st.sample_region.hi, fewer(ctx, 20, 4))) {
      ProbeOptions po;
      po.h = ctx.cfg.fd.h;
      po.h_time = ctx.cfg.fd.h_time;
      const CartesianProbe pr = CartesianProbe::on_surface(*st.chart, q[0], q[1], st.t, po, ctx.faults);
      const Site& s = pr.foot();
      const Kinematics k = kinematics(st, s);
      const CartesianMomentum m = cartesian_momentum(pr, st);
      double g = 0.0;
      if (which == 0) {
        const Vec3d cart = st.rho * m.accel - k.f + m.grad_p + (m.p * m.kappa) * m.n - (2.0 * st.mu0) * m.div_E;
        g = max_abs(cart - residual(System::full, st, k, ctx.faults).momentum);
      } else if (which == 1) {
        g = max_abs((2.0 * st.mu0) * m.div_E - (2.0 * st.mu0) * k.divE_v);
      } else {
        g = max_abs(-st.rho * m.accel + st.rho * k.vdot);
      }
      o.residual = std::max(o.residual, g);
    }
  }
  return o;
}

// Range form g = grad p + p kappa n equals the Cartesian divergence of p P.
inline Outcome pressure_range(Context& ctx) {
  Outcome o;
  const FieldSet& F = ctx.fields;
  for (const auto& e : surfaces(ctx)) {
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 10))) {
      ProbeOptions po;
      po.h = ctx.cfg.fd.h;
      const CartesianProbe pr = CartesianProbe::on_surface(*e.chart, q[0], q[1], 0.0, po, ctx.faults);
      const double kappa = trace(pr.shape());
      const Vec3d n = value(pr.foot().fr.n);
      for (const auto& p : F.scalars) {
        const TensorField pP{"pressure_projector", [p](const Site& s) { return p(s) * s.fr.P; }, true};
        const Vec3d g = pr.grad(p) + (p(pr.foot()).value() * kappa) * n;
        o.residual = std::max(o.residual, max_abs(pr.div_tensor_transposed(pP) - g));
      }
    }
  }
  return o;
}

// Manufactured rigid rotation.
inline Outcome manufactured(Context& ctx, std::vector<System> systems, bool with_force = true) {
  const FlowState st = states::rigid_rotation(1.0, with_force);
  Outcome o;
  o.residual = over_states(ctx, {st}, fewer(ctx, 2), [&](const FlowState& f, const Site& s) {
    const Kinematics k = kinematics(f, s);
    double r = 0.0;
    for (System sys : systems) r = std::max(r, residual(sys, f, k, ctx.faults).max_abs());
    return r;
  });
  return o;
}

// Without the load the normal residual equals p kappa - |v_T|^2, which is bounded away from zero.
inline Outcome force_witness(Context& ctx) {
  const FlowState st = states::rigid_rotation(1.0, false);
  Outcome o;
  double smallest = kInf;
  o.residual = over_states(ctx, {st}, fewer(ctx, 4), [&](const FlowState& f, const Site& s) {
    const Kinematics k = kinematics(f, s);
    const double expected = k.p * k.kappa - dot(k.vT, k.vT);
    smallest = std::min(smallest, std::abs(expected));
    return std::abs(dot(k.n, residual(System::full, f, k, ctx.faults).momentum) - expected);
  });
  if (!(smallest > 1e-3)) throw ConsistencyError("normal load witness vanished at a sample point");
  return o;
}

// Thin film ---------------------------------------------------------------------------------------------------------

inline double curvature_bound(const Frame& f) {
  const auto k = principal_curvatures(f);
  return std::max(std::abs(k[0]), std::abs(k[1]));
}

inline double zeta_range(const Chart& c, const Frame& f) {
  const double k = curvature_bound(f);
  return k > 0.0 ? std::min(c.delta(), 0.5 / k) : c.delta();
}

template <class F>
double over_thin(Context& ctx, int n, F f) {
  double r = 0.0;
  for (const auto& e : surfaces(ctx)) {
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, n)) {
      const Frame fr = frozen_frame(*e.chart, q[0], q[1], 0.0, ctx.faults);
      std::uniform_real_distribution<double> dz(-zeta_range(*e.chart, fr), zeta_range(*e.chart, fr));
      r = std::max(r, f(*e.chart, q, dz(ctx.rng)));
    }
  }
  return r;
}

inline Outcome thin_random(Context& ctx, int which) {
  Outcome o;
  o.residual = over_thin(ctx, fewer(ctx, 4), [&](const Chart& c, std::array<double, 2> q, double z) {
    const ThinFilmFrame tf = thin_metric(c, q[0], q[1], z, 0.0, ctx.faults);
    const ThinFilmLimits L = thin_limits(tf);
    if (which == 0) return L.metric_expansion;
    if (which == 1) return L.normal_block;
    if (which == 2) return L.gamma_zero;
    return L.pathway_gap;
  });
  return o;
}

inline Outcome thin_limits_at_surface(Context& ctx) {
  Outcome o;
  o.residual = over_thin(ctx, fewer(ctx, 4), [&](const Chart& c, std::array<double, 2> q, double) {
    const ThinFilmLimits L = thin_limits(thin_metric(c, q[0], q[1], 0.0, 0.0, ctx.faults));
    return std::max({L.gamma_zeta_ab, L.gamma_b_az, L.gamma_tangential, L.inverse_metric, L.metric_expansion});
  });
  return o;
}

// O(zeta) relations: 0 tangential Christoffel, 1 inverse metric, 2 Gamma^zeta_ab vs b, 3 Gamma^b_a,zeta vs -b^b_a.
inline Outcome thin_slope(Context& ctx, int which) {
  Outcome o;
  std::vector<std::pair<const CatalogEntry*, std::array<double, 2>>> pts;
  const auto surf = surfaces(ctx);
  for (const auto& e : surf)
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 20, 4))) pts.push_back({&e, q});
  for (double z : ctx.cfg.fd.zeta_sweep) {
    double err = 0.0;
    for (const auto& [e, q] : pts) {
      const ThinFilmFrame tf = thin_metric(*e->chart, q[0], q[1], z, 0.0, ctx.faults);
      const ThinFilmLimits L = thin_limits(tf);
      // The inverse metric blows up near the poles, so its gap is measured relative to |g^ab|.
      double ghi = 1.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) ghi = std::max(ghi, std::abs(tf.surface.ghi[a][b].value()));
      const double v[4] = {L.gamma_tangential, L.inverse_metric / ghi, L.gamma_zeta_ab, L.gamma_b_az};
      err = std::max(err, v[which]);
    }
    o.series.push_back({z, err});
  }
  o.slope = fit_slope(o.series);
  o.residual = o.series.back()[1];
  return o;
}

inline Outcome strain_restriction(Context& ctx) {
  Outcome o;
  const FieldSet& F = ctx.fields;
  auto worst = [](const RestrictionResiduals& r) { return std::max({r.covariant, r.strain, r.divergence}); };
  for (const auto& e : surfaces(ctx))
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 10))) {
      const Site s = make_site(*e.chart, q[0], q[1], 0.0, ctx.faults);
      for (const auto& u : F.vectors)
        o.residual = std::max(o.residual, worst(strain3_restriction(*e.chart, q[0], q[1], 0.0, u(s), ctx.faults)));
    }
  for (const auto& e : evolving_surfaces())
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 10))) {
      const Frame f = frame(*e.chart, q[0], q[1], kEvolvingTime, ctx.faults);
      o.residual = std::max(o.residual, worst(strain3_restriction(*e.chart, q[0], q[1], kEvolvingTime, deriv(f.R, kTime), ctx.faults)));
    }
  return o;
}

inline Outcome relative_velocity(Context& ctx) {
  Outcome o;
  const CatalogEntry e = catalog_entry("expanding_sphere");
  for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 10)))
    o.residual = std::max(o.residual, relative_velocity_gap(*e.chart, q[0], q[1], 0.1));
  return o;
}

inline Outcome divergence_convention(Context& ctx) {
  Outcome o;
  const FieldSet& F = ctx.fields;
  o.residual = over_sites(ctx, surfaces(ctx), fewer(ctx, 4), 0.0, [&](const Site& s, const CatalogEntry&) {
    double g = 0.0;
    for (const auto& T : F.tensors) {
      const Mat3<Jet2> A = T(s);
      const Mat3<Jet2> S = s.fr.P * (0.5 * (A + transpose(A))) * s.fr.P;
      g = std::max(g, max_abs(value(div_tensor_lower(s.fr, S)) - value(s.fr.P) * value(div_tensor(s.fr, S))));
    }
    return g;
  });
  return o;
}

inline Outcome sphere_offset(Context&) {
  const ChartPtr c = charts::unit_sphere();
  const ThinFilmFrame tf = thin_metric(*c, std::numbers::pi / 2, 0.0, 0.1, 0.0);
  Outcome o;
  o.residual = std::abs(tf.G_lo[0][0] - 1.21);
  return o;
}

// Expansions of the thin-film asymptotics ---------------------------------------------------------------------------

inline Outcome pressure_expansion(Context& ctx) {
  const ScalarField p = ambient_scalar("p", [](const Vec3<Jet2>& x, const Jet2&) { return x[2] + x[0] * x[1]; });
  const ScalarField p1 = ambient_scalar("p1", [](const Vec3<Jet2>& x, const Jet2&) { return x[0] + 0.5 * x[2] * x[2]; });
  struct Base {
    const Chart* c;
    std::array<double, 2> q;
    Vec3d y, n, target;
  };
  std::vector<Base> base;
  const auto surf = surfaces(ctx);
  for (const auto& e : surf)
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 20, 4))) {
      const Site s = make_site(*e.chart, q[0], q[1], 0.0, ctx.faults);
      const Vec3d n = value(s.fr.n);
      base.push_back({e.chart.get(), q, value(s.fr.R), n, value(grad_scalar(s.fr, p(s))) + p1(s).value() * n});
    }
  auto gap = [&](double offset, double h) {
    double g = 0.0;
    for (const auto& b : base) {
      ProbeOptions po;
      po.h = h;
      const CartesianProbe pr(*b.c, 0.0, b.y + offset * b.n, b.q, po, ctx.faults);
      const auto d = pr.diff_projected<double>([&](const Projected& z) { return p(z.site).value() + z.d * p1(z.site).value(); });
      g = std::max(g, max_abs(Vec3d{d[0], d[1], d[2]} - b.target));
    }
    return g;
  };
  Outcome o;
  for (double s : ctx.cfg.fd.offset_sweep) o.series.push_back({s, gap(s, 1e-5)});
  o.slope = fit_slope(o.series);
  o.residual = gap(0.0, ctx.cfg.fd.h);
  return o;
}

inline Outcome composite(Context& ctx, int which) {
  Outcome o;
  const FieldSet& F = ctx.fields;
  for (const auto& e : surfaces(ctx))
    for (const auto& q : sample(ctx, e.sample_lo, e.sample_hi, fewer(ctx, 10))) {
      ProbeOptions po;
      po.h = ctx.cfg.fd.h;
      const CartesianProbe pr = CartesianProbe::on_surface(*e.chart, q[0], q[1], 0.0, po, ctx.faults);
      const Site& s = pr.foot();
      if (which == 0)
        for (const auto& f : F.scalars) o.residual = std::max(o.residual, max_abs(pr.ambient_grad(f) - value(grad_scalar(s.fr, f(s)))));
      else if (which == 1)
        for (const auto& u : F.vectors)
          o.residual = std::max(o.residual, max_abs(pr.jacobian(u) - value(surface_jacobian(s.fr, u(s)))));
      else
        o.residual = std::max(o.residual, max_abs(pr.shape() - value(s.fr.B)));
    }
  return o;
}

}  // namespace checks

// The registry, in report order.
inline std::vector<CheckDef> registry() {
  using namespace checks;
  const std::array<double, 2> two{1.9, 2.1}, one{0.9, 1.1}, at_least_one{0.9, kInf};
  std::vector<CheckDef> r;
  auto add = [&](std::string id, std::string anchor, double tol, std::function<Outcome(Context&)> f,
                 std::optional<std::array<double, 2>> window = std::nullopt, Kind kind = Kind::bound) {
    r.push_back({std::move(id), std::move(anchor), tol, kind, window, std::move(f)});
  };

  // jets
  add("jets/fd_agreement", "jets/finite-difference-oracle", 1e-6, jets_fd);
  add("jets/closest_point_identity", "closest-point/fixed-point", 1e-10, closest_identity);
  add("jets/closest_point_offset", "closest-point/signed-distance", 1e-10, closest_offset);

  // geometry
  add("geometry/frame_duality", "metric/dual-basis", 1e-12, [](Context& c) {
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [](const Site& s, const CatalogEntry&) {
      double g = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          g = std::max(g, std::abs(dot(value(s.fr.g[a]), value(s.fr.gcon[b])) - (a == b ? 1.0 : 0.0)));
          double m = 0.0;
          for (int k = 0; k < 2; ++k) m += s.fr.ghi[a][k].value() * s.fr.glo[k][b].value();
          g = std::max(g, std::abs(m - (a == b ? 1.0 : 0.0)));
        }
      return g;
    })};
  });
  add("geometry/shape_operator_structure", "shape-operator/tangential-symmetric", 1e-12, [](Context& c) {
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [](const Site& s, const CatalogEntry&) {
      const Mat3d B = value(s.fr.B), P = value(s.fr.P);
      return std::max({max_abs(B * value(s.fr.n)), max_abs(B - P * B * P), max_abs(B - transpose(B)),
                       std::abs(s.fr.blo[0][1].value() - s.fr.blo[1][0].value()),
                       std::abs(trace(B) - s.fr.kappa.value())});
    })};
  });
  add("geometry/curvature_discriminant", "curvature/real-principal", 1e-10, [](Context& c) {
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [](const Site& s, const CatalogEntry&) {
      const double k = s.fr.kappa.value(), K = s.fr.gauss.value();
      return std::max(0.0, -(k * k - 4.0 * K));
    })};
  });
  add("geometry/christoffel_routes", "christoffel/metric-form", 1e-10, [](Context& c) {
    std::vector<CatalogEntry> all = catalog();
    return Outcome{over_sites(c, all, c.cfg.points, 0.0, [](const Site& s, const CatalogEntry&) {
      return christoffel(s.fr, kInf).max_gap;
    })};
  });
  add("geometry/sphere_curvature", "curvature/unit-sphere", 1e-12, [](Context& c) {
    return Outcome{over_sites(c, {catalog_entry("unit_sphere")}, fewer(c, 2), 0.0, [](const Site& s, const CatalogEntry&) {
      return std::max(std::abs(s.fr.kappa.value() + 2.0), std::abs(s.fr.gauss.value() - 1.0));
    })};
  });
  add("geometry/reparametrization", "parametrization-independence", 1e-9, reparametrization);

  // fields
  add("fields/conversion_roundtrip", "components/basis-conversion", 1e-12, [](Context& c) {
    const FieldSet& F = c.fields;
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [&](const Site& s, const CatalogEntry&) {
      double g = 0.0;
      const Basis vb[3] = {Basis::cartesian, Basis::covariant, Basis::contravariant};
      for (const auto& u : F.vectors) {
        const VectorComponents x{Basis::cartesian, value(u(s)), &s.fr};
        for (Basis a : vb)
          for (Basis b : vb) g = std::max(g, max_abs(convert(convert(x, a), b).comps - convert(x, b).comps) /
                                                 std::max(1.0, max_abs(convert(x, b).comps)));
      }
      const Basis tb[4] = {Basis::cartesian, Basis::covariant, Basis::contravariant, Basis::mixed};
      for (const auto& T : F.tensors) {
        const Mat3d A = value(T(s));
        const TensorComponents x{Basis::cartesian, 0.5 * (A + transpose(A)), &s.fr};
        for (Basis a : tb)
          for (Basis b : tb) g = std::max(g, max_abs(convert(convert(x, a), b).comps - convert(x, b).comps) /
                                                 std::max(1.0, max_abs(convert(x, b).comps)));
      }
      return g;
    })};
  });
  add("fields/trace_invariance", "components/trace", 1e-12, [](Context& c) {
    const FieldSet& F = c.fields;
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [&](const Site& s, const CatalogEntry&) {
      double g = 0.0;
      for (const auto& T : F.tensors) {
        const Mat3d A = value(T(s));
        const TensorComponents x{Basis::cartesian, 0.5 * (A + transpose(A)), &s.fr};
        for (Basis b : {Basis::covariant, Basis::contravariant, Basis::mixed})
          g = std::max(g, std::abs(trace_of(convert(x, b)) - trace(x.comps)));
      }
      return g;
    })};
  });
  add("fields/projector_split", "tangential-normal-split", 1e-13, [](Context& c) {
    const FieldSet& F = c.fields;
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [&](const Site& s, const CatalogEntry&) {
      const Mat3d P = value(s.fr.P);
      double g = std::max({max_abs(P * P - P), max_abs(P - transpose(P)), max_abs(P * value(s.fr.n))});
      for (const auto& u : F.vectors) {
        const Vec3d x = value(u(s));
        const Split<double> sp = split(x, s.fr);
        g = std::max(g, max_abs(sp.tangential + sp.normal * value(s.fr.n) - x));
      }
      return g;
    })};
  });

  // curvilinear component formulas
  add("component/partial_vector", "partial-derivative-representation", 1e-10, [](Context& c) {
    const FieldSet& F = c.fields;
    return Outcome{over_sites(c, surfaces(c), fewer(c, 2), 0.0, [&](const Site& s, const CatalogEntry&) {
      double g = 0.0;
      for (const auto& u : F.vectors)
        for (int a = 0; a < 2; ++a) g = std::max(g, partial_vector(s, u, a, kInf).gap);
      g = std::max(g, std::max(partial_vector(s, normal_field(), 0, kInf).gap, partial_vector(s, normal_field(), 1, kInf).gap));
      return g;
    })};
  });
  add("component/divergence_tangential", "divergence-local-representation", 1e-9, [](Context& c) {
    const FieldSet& F = c.fields;
    return Outcome{over_sites(c, surfaces(c), fewer(c, 2), 0.0, [&](const Site& s, const CatalogEntry&) {
      double g = 0.0;
      for (const auto& T : F.tensors) {
        const Mat3<Jet2> Tt = s.fr.P * T(s) * s.fr.P;
        g = std::max(g, max_abs(value(div_tensor(s.fr, Tt)) - value(div_tensor_components(s.fr, Tt))));
      }
      return g;
    })};
  });
  add("component/divergence_components", "divergence-vector-components", 1e-10, [](Context& c) {
    const FieldSet& F = c.fields;
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [&](const Site& s, const CatalogEntry&) {
      double g = 0.0;
      for (const auto& u : F.vectors) {
        const Vec3<Jet2> ut = s.fr.P * u(s);
        const ComponentDerivatives cd = component_derivatives(s.fr, ut, s.fr.P);
        g = std::max(g, std::abs(div_vector(s.fr, ut).value() - (cd.u_con_bar[0][0] + cd.u_con_bar[1][1])));
      }
      return g;
    })};
  });
  add("component/covariant_components", "covariant-derivative-components", 1e-10, [](Context& c) {
    const FieldSet& F = c.fields;
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [&](const Site& s, const CatalogEntry&) {
      double g = 0.0;
      for (const auto& u : F.vectors) {
        const Vec3<Jet2> ut = s.fr.P * u(s);
        const ComponentDerivatives cd = component_derivatives(s.fr, ut, s.fr.P);
        const Mat3d G = value(cov_deriv(s.fr, ut));
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            g = std::max(g, std::abs(dot(value(s.fr.g[b]), G * value(s.fr.g[a])) - cd.u_cov_bar[b][a]));
      }
      return g;
    })};
  });
  add("component/projected_jacobian", "covariant-derivative/projected-transpose", 1e-12, [](Context& c) {
    const FieldSet& F = c.fields;
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [&](const Site& s, const CatalogEntry&) {
      double g = 0.0;
      for (const auto& u : F.vectors)
        g = std::max(g, max_abs(value(cov_deriv(s.fr, u(s))) - value(s.fr.P) * transpose(value(grad_S(s.fr, u(s))))));
      return g;
    })};
  });
  add("component/pressure_divergence", "divergence/pressure-projector", 1e-9, [](Context& c) {
    const FieldSet& F = c.fields;
    return Outcome{over_sites(c, surfaces(c), fewer(c, 4), 0.0, [&](const Site& s, const CatalogEntry&) {
      double g = 0.0;
      for (const auto& p : F.scalars) {
        const Jet2 pj = p(s);
        const Vec3d lhs = value(div_tensor(s.fr, pj * s.fr.P));
        const Vec3d rhs = value(grad_scalar(s.fr, pj)) + (pj.value() * s.fr.kappa.value()) * value(s.fr.n);
        g = std::max(g, max_abs(lhs - rhs));
      }
      return g;
    })};
  });

  // comparison of coordinate systems
  add("comparison/gradient", "comparison-theorem/gradient", 1e-5, [](Context& c) { return comparison(c, CompOp::grad); }, two);
  add("comparison/covariant_derivative", "comparison-theorem/covariant-derivative", 1e-5,
      [](Context& c) { return comparison(c, CompOp::cov); }, two);
  add("comparison/divergence", "comparison-theorem/divergence", 1e-5, [](Context& c) { return comparison(c, CompOp::div); }, two);
  add("comparison/tensor_divergence", "comparison-theorem/transpose", 1e-5,
      [](Context& c) { return comparison(c, CompOp::tensor); }, two);
  add("comparison/transpose_witness", "comparison-theorem/transpose-necessity", 1e-4,
      [](Context& c) { return comparison(c, CompOp::witness); }, std::nullopt, Kind::witness);
  add("comparison/extension_independence", "cartesian-operators/extension-independence", 1e-5,
      [](Context& c) { return comparison(c, CompOp::extension); }, two);

  // rate of strain
  add("strain/metric_rate", "rate-of-strain/covariant-form", 1e-10, [](Context& c) {
    return Outcome{over_sites(c, evolving_surfaces(), fewer(c, 4), kEvolvingTime,
                              [](const Site& s, const CatalogEntry&) { return metric_rate(s, kInf).max_gap; })};
  });
  add("strain/killing", "rate-of-strain/isometric-flow", 1e-10, [](Context& c) {
    return Outcome{over_sites(c, {catalog_entry("rotating_sphere")}, fewer(c, 4), kEvolvingTime,
                              [](const Site& s, const CatalogEntry&) { return max_abs(metric_rate(s, kInf).E_op); })};
  });
  add("strain/expanding_sphere", "rate-of-strain/expansion", 1e-12, [](Context& c) {
    return Outcome{over_sites(c, {catalog_entry("expanding_sphere")}, fewer(c, 4), 0.0, [](const Site& s, const CatalogEntry&) {
      return max_abs(metric_rate(s, kInf).E_op - 0.25 * value(s.fr.P));
    })};
  });
  add("strain/cartesian", "rate-of-strain/cartesian-form", 1e-6, [](Context& c) {
    Outcome o;
    for (const auto& e : evolving_surfaces())
      for (const auto& q : sample(c, e.sample_lo, e.sample_hi, fewer(c, 10))) {
        ProbeOptions po;
        po.h = c.cfg.fd.h;
        const CartesianProbe pr = CartesianProbe::on_surface(*e.chart, q[0], q[1], kEvolvingTime, po, c.faults);
        const Mat3d G = pr.cov_deriv(material_velocity());
        o.residual = std::max(o.residual, max_abs(0.5 * (G + transpose(G)) - metric_rate(pr.foot(), kInf).E_op));
      }
    return o;
  });

  // material derivative and transport
  add("material/cartesian", "material-derivative/cartesian", 1e-6, material_cartesian);
  add("material/trajectory_curvilinear", "material-derivative/trajectory", 1e-3,
      [](Context& c) { return material_trajectory(c, false); }, two);
  add("material/trajectory_cartesian", "material-derivative/trajectory-cartesian", 1e-3,
      [](Context& c) { return material_trajectory(c, true); }, two);
  add("material/normal_rate", "normal-velocity-dynamics", 1e-6, normal_rate);
  add("material/flow_map", "flow-map/trajectories", 1e-8, flow_map);
  add("leibniz/convergence", "transport-theorem/convergence", 1e-6, leibniz_convergence, two);
  add("leibniz/area_rate", "transport-theorem/expanding-area", 1e-6, area_rate);
  add("leibniz/mass_constancy", "transport-theorem/mass", 1e-10, mass_constancy);
  add("quadrature/plane_unit", "quadrature/plane", 1e-12, [](Context& c) { return quadrature_values(c, 0); });
  add("quadrature/sphere_area", "quadrature/sphere-area", 1e-10, [](Context& c) { return quadrature_values(c, 1); });
  add("quadrature/x3_squared", "quadrature/sphere-moment", 1e-10, [](Context& c) { return quadrature_values(c, 2); });
  add("quadrature/refinement", "quadrature/refinement-stability", 1e-10, [](Context& c) { return quadrature_values(c, 3); });

  // surface Navier-Stokes
  add("ns/tangential_forms", "tangential-equivalence", 1e-9, tangential_forms);
  add("ns/full_projection", "splitting/tangential", 1e-10, [](Context& c) { return full_split(c, false); });
  add("ns/full_normal", "splitting/normal", 1e-10, [](Context& c) { return full_split(c, true); });
  add("ns/killing_reduction", "splitting/isometric-flow", 1e-10, killing_reduction);
  add("ns/cartesian_momentum", "full-system/cartesian-form", 1e-5, [](Context& c) { return cartesian_forces(c, 0); });
  add("ns/dissipative_force", "forces/dissipative", 1e-5, [](Context& c) { return cartesian_forces(c, 1); });
  add("ns/conservative_force", "forces/conservative", 1e-6, [](Context& c) { return cartesian_forces(c, 2); });
  add("ns/range_form", "forces/pressure-range", 1e-5, pressure_range);
  add("identity/normal_rate", "normal-velocity-dynamics/identity", 1e-10, [](Context& c) { return identity(c, "ndot"); });
  add("identity/projected_acceleration", "splitting/projected-acceleration", 1e-10,
      [](Context& c) { return identity(c, "projected_acceleration"); });
  add("identity/normal_acceleration", "splitting/normal-acceleration", 1e-10,
      [](Context& c) { return identity(c, "normal_acceleration"); });
  add("identity/normal_viscous", "splitting/normal-viscous", 1e-9, [](Context& c) { return identity(c, "normal_viscous"); });
  add("identity/tangential_rate", "splitting/tangential-rate", 1e-10, [](Context& c) { return identity(c, "tangential_rate"); });
  add("identity/strain_split", "strain/normal-velocity-split", 1e-10, [](Context& c) { return identity(c, "strain_split"); });
  add("identity/first_order_velocity", "thin-film/first-order-velocity", 1e-10,
      [](Context& c) { return identity(c, "first_order_velocity"); });
  add("manufactured/tangential", "manufactured/rigid-rotation-tangential", 1e-9, [](Context& c) {
    return manufactured(c, {System::tangential_split, System::tangential_normal_time, System::tangential_rewritten});
  });
  add("manufactured/full", "manufactured/rigid-rotation-full", 1e-9, [](Context& c) { return manufactured(c, {System::full}); });
  add("manufactured/normal_split", "manufactured/rigid-rotation-normal", 1e-9,
      [](Context& c) { return manufactured(c, {System::normal_split}); });
  add("manufactured/first_order", "manufactured/rigid-rotation-first-order", 1e-9,
      [](Context& c) { return manufactured(c, {System::first_order, System::normal_first_order}); });
  add("manufactured/load_witness", "manufactured/normal-coupling", 1e-10, force_witness);

  // thin film
  add("thin_film/metric_expansion", "thin-film/metric-expansion", 1e-11, [](Context& c) { return thin_random(c, 0); });
  add("thin_film/normal_block", "thin-film/normal-block", 1e-12, [](Context& c) { return thin_random(c, 1); });
  add("thin_film/zero_symbols", "thin-film/vanishing-christoffel", 1e-12, [](Context& c) { return thin_random(c, 2); });
  add("thin_film/christoffel_routes", "thin-film/christoffel-metric-form", 1e-10, [](Context& c) { return thin_random(c, 3); });
  add("thin_film/christoffel_limits", "thin-film/surface-limits", 1e-10, thin_limits_at_surface);
  add("thin_film/tangential_christoffel_order", "thin-film/tangential-christoffel-order", 1e-2,
      [](Context& c) { return thin_slope(c, 0); }, one);
  add("thin_film/inverse_metric_order", "thin-film/inverse-metric-order", 1e-2, [](Context& c) { return thin_slope(c, 1); }, one);
  add("thin_film/normal_christoffel_order", "thin-film/normal-christoffel-order", 1e-2,
      [](Context& c) { return thin_slope(c, 2); }, one);
  add("thin_film/mixed_christoffel_order", "thin-film/mixed-christoffel-order", 1e-2, [](Context& c) { return thin_slope(c, 3); },
      one);
  add("thin_film/strain_restriction", "thin-film/strain-restriction", 1e-10, strain_restriction);
  add("thin_film/relative_velocity", "thin-film/relative-velocity", 1e-12, relative_velocity);
  add("thin_film/divergence_convention", "thin-film/divergence-convention", 1e-10, divergence_convention);
  add("thin_film/sphere_offset", "thin-film/sphere-offset", 1e-12, sphere_offset);

  // asymptotic expansions
  add("expansion/pressure_expansion", "expansion/pressure-gradient", 1e-5, pressure_expansion, at_least_one);
  add("expansion/composite_scalar", "expansion/composite-scalar", 1e-5, [](Context& c) { return composite(c, 0); });
  add("expansion/composite_vector", "expansion/composite-vector", 1e-5, [](Context& c) { return composite(c, 1); });
  add("expansion/shape_operator", "shape-operator/cartesian", 1e-5, [](Context& c) { return composite(c, 2); });
  return r;
}

inline std::vector<std::string> check_ids() {
  std::vector<std::string> out;
  for (const auto& d : registry()) out.push_back(d.id);
  return out;
}

}  // namespace surfcalc::harness
