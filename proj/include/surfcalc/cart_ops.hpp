#pragma once

// Surface operators in Cartesian coordinates: closest-point normal extension plus central differences in R^3.
// Deliberately independent of the jet derivatives; only field values at projected points are used.

#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "surfcalc/chart.hpp"
#include "surfcalc/errors.hpp"
#include "surfcalc/fields.hpp"

namespace surfcalc {

enum class Extension { constant_normal, quadratic_weight };

struct ProbeOptions {
  double h = 1e-4;
  double h_time = 1e-4;
  Extension extension = Extension::constant_normal;
  ClosestPointOptions cp;
};

struct Projected {
  Site site;
  double d = 0.0;
};

inline Projected project(const Chart& c, double t, const Vec3d& x, std::array<double, 2> seed,
                         const ClosestPointOptions& cp, const Faults& faults) {
  const ClosestPointResult r = closest_point(c, t, x, cp, seed);
  if (std::abs(r.d) > c.delta())
    throw TubularBoundError("point at distance " + std::to_string(r.d) + " outside the trusted tube of '" + c.name() + "'");
  return {make_site(c, r.xi[0], r.xi[1], t, faults), r.d};
}

class CartesianProbe {
 public:
  // Probe centred at an ambient point x near Gamma(t); seed is a chart guess for its foot point.
  CartesianProbe(const Chart& c, double t, const Vec3d& x, std::array<double, 2> seed, ProbeOptions opt = {},
                 Faults faults = {})
      : chart_(&c), t_(t), x_(x), opt_(opt), faults_(faults) {
    if (!(opt.h > 0.0) || opt.h > c.delta())
      throw TubularBoundError("finite-difference step " + std::to_string(opt.h) + " exceeds the tube half-width of '" +
                              c.name() + "'");
    center_ = project(c, t, x, seed, opt.cp, faults);
    const std::array<double, 2> s{center_.site.u, center_.site.v};
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 2; ++k) {
        Vec3d y = x;
        y[j] += (k == 0 ? opt.h : -opt.h);
        stencil_[2 * j + k] = project(c, t, y, s, opt.cp, faults);
      }
  }

  static CartesianProbe on_surface(const Chart& c, double u, double v, double t, ProbeOptions opt = {},
                                   Faults faults = {}) {
    return CartesianProbe(c, t, c.eval(u, v, t), {u, v}, opt, faults);
  }

  const Site& foot() const { return center_.site; }
  double distance() const { return center_.d; }
  const Vec3d& x() const { return x_; }
  Mat3d P() const { return value(center_.site.fr.P); }
  double h() const { return opt_.h; }

  // Ambient gradient of the extension phi o pi (not projected).
  Vec3d ambient_grad(const ScalarField& phi) const {
    return diff<double>([&](const Site& s) { return phi(s).value(); });
  }

  // Ambient Jacobian J_ij = d_j (u o pi)_i.
  Mat3d jacobian(const VectorField& u) const {
    const auto cols = diff<Vec3d>([&](const Site& s) { return value(u(s)); });
    Mat3d J;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) J[i][j] = cols[j][i];
    return J;
  }

  Vec3d grad(const ScalarField& phi) const { return P() * ambient_grad(phi); }

  Mat3d cov_deriv(const VectorField& u) const {
    const Mat3d Pm = P();
    return Pm * jacobian(u) * Pm;
  }

  double div(const VectorField& u) const { return trace(cov_deriv(u)); }

  // Row-wise divergence: component i is the surface divergence of the i-th row T^T e_i.
  Vec3d div_tensor_rows(const TensorField& T) const {
    const auto dT = diff<Mat3d>([&](const Site& s) { return value(T(s)); });
    const Mat3d Pm = P();
    Vec3d r{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) r[i] += dT[j][i][k] * Pm[j][k];
    return r;
  }

  // Row-wise divergence of T^T, the counterpart of the curvilinear div_Gamma T.
  Vec3d div_tensor_transposed(const TensorField& T) const {
    const auto dT = diff<Mat3d>([&](const Site& s) { return value(T(s)); });
    const Mat3d Pm = P();
    Vec3d r{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j) r[i] += dT[j][k][i] * Pm[j][k];
    return r;
  }

  // B = -P grad(n^e) P
  Mat3d shape() const {
    const Mat3d Pm = P();
    return -1.0 * (Pm * jacobian(normal_field()) * Pm);
  }

  // Central difference along e_j of eval(projected point), where eval also sees the signed distance.
  template <class T, class G>
  std::array<T, 3> diff_projected(G eval) const {
    std::array<T, 3> out;
    for (int j = 0; j < 3; ++j)
      out[j] = (1.0 / (2.0 * opt_.h)) * (eval(stencil_[2 * j]) - eval(stencil_[2 * j + 1]));
    return out;
  }

  // d/dt of the extension at fixed x, by central differences in time.
  template <class T, class G>
  T time_derivative(G eval) const {
    const double ht = opt_.h_time;
    const std::array<double, 2> s{center_.site.u, center_.site.v};
    const Projected p = project(*chart_, t_ + ht, x_, s, opt_.cp, faults_);
    const Projected m = project(*chart_, t_ - ht, x_, s, opt_.cp, faults_);
    return (1.0 / (2.0 * ht)) * (eval(p.site) - eval(m.site));
  }

 private:
  double weight(double d) const { return opt_.extension == Extension::quadratic_weight ? 1.0 + d * d : 1.0; }

  // Central difference along e_j of eval(site) * weight(d).
  template <class T, class G>
  std::array<T, 3> diff(G eval) const {
    return diff_projected<T>([&](const Projected& q) -> T { return weight(q.d) * eval(q.site); });
  }

  const Chart* chart_;
  double t_;
  Vec3d x_;
  ProbeOptions opt_;
  Faults faults_;
  Projected center_;
  std::array<Projected, 6> stencil_;
};

}  // namespace surfcalc
