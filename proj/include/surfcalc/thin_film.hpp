#pragma once

// Tubular chart R(xi) + zeta n(xi) at a fixed time, its metric and Christoffel symbols, and restriction identities.
// Jet variables are (xi1, xi2, zeta); index 2 below always means zeta.

#include <array>
#include <cmath>
#include <string>

#include "surfcalc/chart.hpp"
#include "surfcalc/curv_ops.hpp"
#include "surfcalc/errors.hpp"
#include "surfcalc/geometry.hpp"

namespace surfcalc {

inline constexpr int kZeta = 2;

using Mat3x3 = std::array<std::array<double, 3>, 3>;
using Gamma9 = std::array<Mat3x3, 3>;  // Gamma[k][i][j]

struct ThinFilmFrame {
  double zeta = 0.0;
  Frame surface;                   // surface frame at zeta = 0, time frozen
  std::array<Vec3<Jet1>, 3> G;     // G_i as first-order jets in (xi1, xi2, zeta)
  Mat3x3 G_lo{}, G_hi{};
  Gamma9 gamma{};                  // G^k . d_i G_j
  Gamma9 gamma_metric{};           // metric formula
  Mat3x3 G_expansion{};            // g - 2 zeta b + zeta^2 b b^. in the tangential block
};

inline Mat3x3 invert3(const Mat3x3& a) {
  Mat3x3 r;
  const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  if (!(std::abs(det) > 0.0)) throw DegenerateChartError("singular thin-film metric");
  r[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
  r[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
  r[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
  r[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det;
  r[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
  r[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
  r[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
  r[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
  r[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
  return r;
}

// Surface frame with time frozen, so the third jet slot is free for zeta.
inline Frame frozen_frame(const Chart& c, double u, double v, double t, const Faults& faults = {}) {
  c.check_domain(u, v, t);
  const Vec3<Jet3> R = c.eval(Jet3::variable(u, kXi1), Jet3::variable(v, kXi2), Jet3(t));
  return make_frame(R, faults, "chart '" + c.name() + "'");
}

inline ThinFilmFrame thin_metric(const Chart& c, double u, double v, double zeta, double t, const Faults& faults = {}) {
  ThinFilmFrame tf;
  tf.zeta = zeta;
  tf.surface = frozen_frame(c, u, v, t, faults);
  const auto kp = principal_curvatures(tf.surface);
  const double kmax = std::max(std::abs(kp[0]), std::abs(kp[1]));
  if (std::abs(zeta) * kmax >= 1.0)
    throw FoldOverError("offset " + std::to_string(zeta) + " beyond the curvature bound " + std::to_string(1.0 / kmax));

  const Jet2 z = Jet2::variable(zeta, kZeta);
  const Vec3<Jet2> Rt = trunc<2>(tf.surface.R) + z * tf.surface.n;
  std::array<std::array<Vec3d, 3>, 3> dG;  // dG[i][j] = d_i G_j
  for (int i = 0; i < 3; ++i) tf.G[i] = deriv(Rt, i);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) dG[i][j] = value(deriv(tf.G[j], i));
  std::array<Mat3<Jet1>, 1> Gj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Gj[0][i][j] = dot(tf.G[i], tf.G[j]);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) tf.G_lo[i][j] = Gj[0][i][j].value();
  tf.G_hi = invert3(tf.G_lo);
  std::array<Vec3d, 3> Gcon;
  for (int k = 0; k < 3; ++k) {
    Gcon[k] = {0, 0, 0};
    for (int l = 0; l < 3; ++l) Gcon[k] = Gcon[k] + tf.G_hi[k][l] * value(tf.G[l]);
  }
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) tf.gamma[k][i][j] = dot(Gcon[k], dG[i][j]);
  // d_k G_ij from the metric jets.
  for (int s = 0; s < 3; ++s)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 3; ++l)
          acc += tf.G_hi[s][l] * (Gj[0][i][l].grad(j) + Gj[0][j][l].grad(i) - Gj[0][i][j].grad(l));
        tf.gamma_metric[s][i][j] = 0.5 * acc;
      }

  const Frame& f = tf.surface;
  tf.G_expansion = Mat3x3{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double bb = 0.0;
      for (int g = 0; g < 2; ++g) bb += f.blo[a][g].value() * f.bmix[b][g].value();
      tf.G_expansion[a][b] = f.glo[a][b].value() - 2.0 * zeta * f.blo[a][b].value() + zeta * zeta * bb;
    }
  tf.G_expansion[2][2] = 1.0;
  return tf;
}

struct ThinFilmLimits {
  double metric_expansion = 0.0;    // |G - expansion| over all entries
  double normal_block = 0.0;        // |G_zz - 1| + |G_za|
  double gamma_zeta_ab = 0.0;       // |Gamma^z_ab - b_ab|
  double gamma_b_az = 0.0;          // |Gamma^b_az + b^b_a| and the symmetric slot
  double gamma_zero = 0.0;          // Gamma^z_iz, Gamma^z_zi, Gamma^j_zz
  double gamma_tangential = 0.0;    // |Gamma^c_ab - Gamma_surface^c_ab|
  double inverse_metric = 0.0;      // |G^ab - g^ab|
  double pathway_gap = 0.0;         // basis vs metric Christoffel
};

inline ThinFilmLimits thin_limits(const ThinFilmFrame& tf) {
  ThinFilmLimits L;
  const Frame& f = tf.surface;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L.metric_expansion = std::max(L.metric_expansion, std::abs(tf.G_lo[i][j] - tf.G_expansion[i][j]));
  L.normal_block = std::abs(tf.G_lo[2][2] - 1.0) + std::abs(tf.G_lo[0][2]) + std::abs(tf.G_lo[1][2]);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      L.gamma_zeta_ab = std::max(L.gamma_zeta_ab, std::abs(tf.gamma[kZeta][a][b] - f.blo[a][b].value()));
      L.gamma_b_az = std::max({L.gamma_b_az, std::abs(tf.gamma[b][a][kZeta] + f.bmix[a][b].value()),
                               std::abs(tf.gamma[b][kZeta][a] + f.bmix[a][b].value())});
      L.inverse_metric = std::max(L.inverse_metric, std::abs(tf.G_hi[a][b] - f.ghi[a][b].value()));
      for (int c = 0; c < 2; ++c)
        L.gamma_tangential = std::max(L.gamma_tangential, std::abs(tf.gamma[c][a][b] - f.gamma[c][a][b].value()));
    }
  for (int i = 0; i < 3; ++i) {
    L.gamma_zero = std::max({L.gamma_zero, std::abs(tf.gamma[kZeta][i][kZeta]), std::abs(tf.gamma[kZeta][kZeta][i]),
                             std::abs(tf.gamma[i][kZeta][kZeta])});
  }
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) L.pathway_gap = std::max(L.pathway_gap, std::abs(tf.gamma[k][i][j] - tf.gamma_metric[k][i][j]));
  return L;
}

struct RestrictionResiduals {
  double covariant = 0.0;   // v_{a|b} - ((v_T)_{a|b} - v_N b_ab)
  double strain = 0.0;      // (E3)_ab - (E(v_T) - v_N B)_ab
  double divergence = 0.0;  // div v - (div v_T - v_N kappa)
  double relative_velocity = 0.0;  // w_R - v_N n at zeta = 0
  Sym2<double> E3{};
};

// Restriction identities at zeta = 0 for the ambient field that is constant along normals.
// v is the surface field as a jet in (xi1, xi2, t); only its spatial part is used.
inline RestrictionResiduals strain3_restriction(const Chart& c, double u, double v, double t, const Vec3<Jet2>& vs,
                                                const Faults& faults = {}) {
  RestrictionResiduals rr;
  const ThinFilmFrame tf = thin_metric(c, u, v, 0.0, t, faults);
  const Frame& f = tf.surface;
  // Constant extension along zeta: freeze time, leave the zeta slot empty.
  const Vec3<Jet2> ve = drop_var(vs, kTime);
  std::array<Jet1, 3> vc;
  for (int i = 0; i < 3; ++i) vc[i] = dot(trunc<1>(ve), tf.G[i]);
  Mat3x3 cov{};  // cov[i][j] = v_{i|j}
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double x = vc[i].grad(j);
      for (int k = 0; k < 3; ++k) x -= tf.gamma[k][j][i] * vc[k].value();
      cov[i][j] = x;
    }
  const Vec3<Jet2> vT = f.P * ve;
  const Jet2 vN = dot(ve, f.n);
  const Mat3d E_T = value(sym_part(cov_deriv(f, vT)));
  const Vec3d g[2] = {value(f.g[0]), value(f.g[1])};
  Sym2<double> vT_bar{};
  {
    std::array<Jet2, 2> uc{dot(vT, f.g[0]), dot(vT, f.g[1])};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        double x = deriv(uc[a], b).value();
        for (int k = 0; k < 2; ++k) x -= f.gamma[k][b][a].value() * uc[k].value();
        vT_bar[a][b] = x;  // (v_T)_{a|b}
      }
  }
  double div3 = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) div3 += tf.G_hi[i][j] * cov[i][j];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const double bab = f.blo[a][b].value();
      rr.covariant = std::max(rr.covariant, std::abs(cov[a][b] - (vT_bar[a][b] - vN.value() * bab)));
      rr.E3[a][b] = 0.5 * (cov[a][b] + cov[b][a]);
      const double rhs = dot(g[a], E_T * g[b]) - vN.value() * bab;
      rr.strain = std::max(rr.strain, std::abs(rr.E3[a][b] - rhs));
    }
  const double divT = div_vector(f, vT).value();
  rr.divergence = std::abs(div3 - (divT - vN.value() * f.kappa.value()));
  return rr;
}

// Velocity of the tubular parametrization at zeta = 0 compared with v_N n, for a chart moving along its normal.
inline double relative_velocity_gap(const Chart& c, double u, double v, double t) {
  const Frame f = frame(c, u, v, t);
  const Vec3<Jet2> Rt = trunc<2>(f.R);
  const Vec3d w = value(deriv(Rt, kTime));  // zeta = 0: dR~/dt = dR/dt
  const Vec3d vel = value(deriv(f.R, kTime));
  const Vec3d n = value(f.n);
  return max_abs(w - dot(vel, n) * n);
}

}  // namespace surfcalc
