#pragma once

// Charts R(xi1, xi2, t) evaluable on doubles and on jets, and closest-point projection.

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfcalc/errors.hpp"
#include "surfcalc/linalg.hpp"
#include "surfcalc/taylor.hpp"

namespace surfcalc {

struct ChartDomain {
  std::array<double, 2> lo{0.0, 0.0};
  std::array<double, 2> hi{1.0, 1.0};
  std::array<bool, 2> periodic{false, false};
  double t_lo = -1.0;
  double t_hi = 1.0;
};

struct ChartOptions {
  double eps_imm = 1e-8;  // immersion margin on |g1 x g2|
  double delta = 0.25;    // tubular neighbourhood half-width trusted by callers
  double scale = 1.0;     // characteristic length
  bool evolving = false;
};

class Chart {
 public:
  Chart(std::string name, ChartDomain dom, ChartOptions opt)
      : name_(std::move(name)), dom_(dom), opt_(opt) {}
  virtual ~Chart() = default;

  virtual Vec3d eval(double u, double v, double t) const = 0;
  virtual Vec3<Jet1> eval(const Jet1& u, const Jet1& v, const Jet1& t) const = 0;
  virtual Vec3<Jet2> eval(const Jet2& u, const Jet2& v, const Jet2& t) const = 0;
  virtual Vec3<Jet3> eval(const Jet3& u, const Jet3& v, const Jet3& t) const = 0;

  const std::string& name() const { return name_; }
  const ChartDomain& domain() const { return dom_; }
  const ChartOptions& options() const { return opt_; }
  double eps_imm() const { return opt_.eps_imm; }
  double delta() const { return opt_.delta; }
  double scale() const { return opt_.scale; }
  bool evolving() const { return opt_.evolving; }

  // Map periodic coordinates into the fundamental domain.
  std::array<double, 2> wrap(double u, double v) const {
    std::array<double, 2> x{u, v};
    for (int i = 0; i < 2; ++i)
      if (dom_.periodic[i]) {
        const double p = dom_.hi[i] - dom_.lo[i];
        x[i] = dom_.lo[i] + std::fmod(std::fmod(x[i] - dom_.lo[i], p) + p, p);
      }
    return x;
  }

  bool contains(double u, double v, double t) const {
    const std::array<double, 2> x{u, v};
    for (int i = 0; i < 2; ++i)
      if (!dom_.periodic[i] && (x[i] < dom_.lo[i] || x[i] > dom_.hi[i] || !std::isfinite(x[i]))) return false;
    return t >= dom_.t_lo && t <= dom_.t_hi;
  }

  void check_domain(double u, double v, double t) const {
    if (!contains(u, v, t))
      throw DomainError("chart '" + name_ + "': coordinates (" + std::to_string(u) + ", " + std::to_string(v) +
                        ", t=" + std::to_string(t) + ") outside domain");
  }

 private:
  std::string name_;
  ChartDomain dom_;
  ChartOptions opt_;
};

// Chart backed by a generic callable f(u, v, t) -> std::array<S, 3>.
template <class F>
class FunctionChart final : public Chart {
 public:
  FunctionChart(std::string name, ChartDomain dom, ChartOptions opt, F f)
      : Chart(std::move(name), dom, opt), f_(std::move(f)) {}

  Vec3d eval(double u, double v, double t) const override { return f_(u, v, t); }
  Vec3<Jet1> eval(const Jet1& u, const Jet1& v, const Jet1& t) const override { return f_(u, v, t); }
  Vec3<Jet2> eval(const Jet2& u, const Jet2& v, const Jet2& t) const override { return f_(u, v, t); }
  Vec3<Jet3> eval(const Jet3& u, const Jet3& v, const Jet3& t) const override { return f_(u, v, t); }

 private:
  F f_;
};

using ChartPtr = std::shared_ptr<const Chart>;

template <class F>
ChartPtr make_chart(std::string name, ChartDomain dom, ChartOptions opt, F f) {
  return std::make_shared<FunctionChart<F>>(std::move(name), dom, opt, std::move(f));
}

// Jet of R about (u, v, t) in the three variables (xi1, xi2, t).
template <class J>
Vec3<J> eval_jet(const Chart& c, double u, double v, double t) {
  c.check_domain(u, v, t);
  Vec3<J> r = c.eval(J::variable(u, kXi1), J::variable(v, kXi2), J::variable(t, kTime));
  const Vec3d g1{r[0].grad(0), r[1].grad(0), r[2].grad(0)};
  const Vec3d g2{r[0].grad(1), r[1].grad(1), r[2].grad(1)};
  const double a = norm(cross(g1, g2));
  if (!(a >= c.eps_imm()))
    throw DegenerateChartError("chart '" + c.name() + "': |g1 x g2| = " + std::to_string(a) + " below immersion margin");
  return r;
}

inline Vec3<Jet2> eval_jet2(const Chart& c, double u, double v, double t) { return eval_jet<Jet2>(c, u, v, t); }
inline Vec3<Jet3> eval_jet3(const Chart& c, double u, double v, double t) { return eval_jet<Jet3>(c, u, v, t); }

struct ClosestPointResult {
  std::array<double, 2> xi{0.0, 0.0};
  double d = 0.0;  // signed distance along n
  Vec3d foot{0.0, 0.0, 0.0};
  int iterations = 0;
};

struct ClosestPointOptions {
  int grid = 64;
  double tol = 1e-12;
  int max_iter = 50;
  int candidates = 4;           // grid nodes refined for the ambiguity test
  double ambiguity_gap = 1e-9;  // equal-distance threshold
  double distinct_feet = 1e-6;  // feet closer than this count as one
};

namespace detail {

struct NewtonOutcome {
  bool converged = false;
  std::array<double, 2> xi{0.0, 0.0};
  Vec3d foot{};
  Vec3d normal{};
  double dist = 0.0;
  double tangential = 0.0;
  int iterations = 0;
};

// Newton on 0.5 |x - R(xi)|^2 with the exact Hessian, falling back to Gauss-Newton when it is not positive.
inline NewtonOutcome newton_project(const Chart& c, double t, const Vec3d& x, std::array<double, 2> xi,
                                    const ClosestPointOptions& opt) {
  NewtonOutcome out;
  const double tol = opt.tol * std::max(1.0, c.scale());
  int polish = 0;
  for (int it = 0; it <= opt.max_iter; ++it) {
    xi = c.wrap(xi[0], xi[1]);
    if (!c.contains(xi[0], xi[1], t)) return out;
    const Vec3<Jet2> R = c.eval(Jet2::variable(xi[0], kXi1), Jet2::variable(xi[1], kXi2), Jet2(t));
    Vec3d p{}, g1{}, g2{}, h11{}, h12{}, h22{};
    for (int i = 0; i < 3; ++i) {
      p[i] = R[i].value();
      g1[i] = R[i].grad(0);
      g2[i] = R[i].grad(1);
      h11[i] = R[i].hess(0, 0);
      h12[i] = R[i].hess(0, 1);
      h22[i] = R[i].hess(1, 1);
    }
    const Vec3d r = x - p;
    const double a11 = dot(g1, g1), a12 = dot(g1, g2), a22 = dot(g2, g2);
    const double det_g = a11 * a22 - a12 * a12;
    const Vec3d cr = cross(g1, g2);
    const double ncr = norm(cr);
    if (ncr < c.eps_imm() || det_g <= 0.0) return out;
    const Vec3d n = cr / ncr;
    const double b1 = dot(g1, r), b2 = dot(g2, r);
    // |P r| from the tangential components b_alpha = g_alpha . r.
    const double tang = std::sqrt(std::max(0.0, (a22 * b1 * b1 - 2 * a12 * b1 * b2 + a11 * b2 * b2) / det_g));
    out.xi = xi;
    out.foot = p;
    out.normal = n;
    out.dist = dot(r, n);
    out.tangential = tang;
    out.iterations = it;
    if (tang <= tol) {
      if (polish++ >= 1) {
        out.converged = true;
        return out;
      }
    }
    double H11 = a11 - dot(r, h11), H12 = a12 - dot(r, h12), H22 = a22 - dot(r, h22);
    double det = H11 * H22 - H12 * H12;
    if (!(H11 > 0 && det > 1e-14 * det_g)) {
      H11 = a11;
      H12 = a12;
      H22 = a22;
      det = det_g;
    }
    const double s1 = (H22 * b1 - H12 * b2) / det;
    const double s2 = (H11 * b2 - H12 * b1) / det;
    xi = {xi[0] + s1, xi[1] + s2};
  }
  out.converged = out.tangential <= tol;
  return out;
}

}  // namespace detail

// Closest point on Gamma(t) to x. If a seed is given, a single Newton solve starts there; otherwise the best
// nodes of a grid over the chart domain are refined and compared for ambiguity.
inline ClosestPointResult closest_point(const Chart& c, double t, const Vec3d& x, const ClosestPointOptions& opt = {},
                                        std::optional<std::array<double, 2>> seed = std::nullopt) {
  auto finish = [](const detail::NewtonOutcome& o) {
    ClosestPointResult res;
    res.xi = o.xi;
    res.d = o.dist;
    res.foot = o.foot;
    res.iterations = o.iterations;
    return res;
  };
  if (seed) {
    auto o = detail::newton_project(c, t, x, *seed, opt);
    if (o.converged) return finish(o);
  }
  const auto& dom = c.domain();
  struct Node {
    double dist2;
    std::array<double, 2> xi;
  };
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(opt.grid) * opt.grid);
  for (int i = 0; i < opt.grid; ++i)
    for (int j = 0; j < opt.grid; ++j) {
      const double u = dom.lo[0] + (i + 0.5) * (dom.hi[0] - dom.lo[0]) / opt.grid;
      const double v = dom.lo[1] + (j + 0.5) * (dom.hi[1] - dom.lo[1]) / opt.grid;
      const Vec3d p = c.eval(u, v, t);
      const Vec3d r = x - p;
      nodes.push_back({dot(r, r), {u, v}});
    }
  const int m = std::min<int>(opt.candidates, static_cast<int>(nodes.size()));
  std::partial_sort(nodes.begin(), nodes.begin() + m, nodes.end(), [](const Node& a, const Node& b) {
    return a.dist2 < b.dist2 || (a.dist2 == b.dist2 && a.xi < b.xi);
  });
  std::vector<detail::NewtonOutcome> found;
  detail::NewtonOutcome best;
  double best_res = INFINITY;
  for (int k = 0; k < m; ++k) {
    auto o = detail::newton_project(c, t, x, nodes[k].xi, opt);
    if (o.converged)
      found.push_back(o);
    else if (o.tangential < best_res) {
      best_res = o.tangential;
      best = o;
    }
  }
  if (found.empty())
    throw ConvergenceError("closest_point on '" + c.name() + "' did not converge", best.xi[0], best.xi[1], best_res);
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return std::abs(a.dist) < std::abs(b.dist);
  });
  for (std::size_t k = 1; k < found.size(); ++k) {
    const bool tie = std::abs(std::abs(found[k].dist) - std::abs(found[0].dist)) <= opt.ambiguity_gap;
    if (tie && norm(found[k].foot - found[0].foot) > opt.distinct_feet)
      throw AmbiguityError("closest_point on '" + c.name() + "': two feet at equal distance");
  }
  return finish(found[0]);
}

}  // namespace surfcalc
