#pragma once

// Frame, shape data and Christoffel symbols from chart jets.
// Orders: R is a third-order jet, the frame is second order, shape data and Christoffel symbols are first order.

#include <array>
#include <cmath>
#include <string>

#include "surfcalc/chart.hpp"
#include "surfcalc/errors.hpp"
#include "surfcalc/linalg.hpp"

namespace surfcalc {

template <class S>
using Sym2 = std::array<std::array<S, 2>, 2>;
template <class S>
using Gamma3 = std::array<Sym2<S>, 2>;  // Gamma[sigma][alpha][beta]

// Deliberate defects used only to prove that the checks can fail.
struct Faults {
  bool drop_transpose = false;  // compare div_Gamma T against the row-wise divergence of T instead of T^T
  bool flip_b = false;          // negate the second fundamental form
  bool drop_pkappa = false;     // omit the p kappa n term of the full momentum equation
  bool any() const { return drop_transpose || flip_b || drop_pkappa; }
};

struct Frame {
  Vec3<Jet3> R;
  std::array<Vec3<Jet2>, 2> g;                  // covariant basis g_alpha
  std::array<std::array<Vec3<Jet1>, 2>, 2> dg;  // dg[a][b] = d_a g_b
  Sym2<Jet2> glo, ghi;                          // metric and inverse
  std::array<Vec3<Jet2>, 2> gcon;               // contravariant basis g^alpha
  Vec3<Jet2> n;
  Mat3<Jet2> P;
  Jet2 area;         // sqrt(det g)
  double cond = 1.0;  // condition number of g_lo

  // Shape data.
  Sym2<Jet1> blo;   // b_ab
  Sym2<Jet1> bmix;  // bmix[a][b] = b^b_a
  Mat3<Jet1> B;
  Jet1 kappa, gauss;

  // Christoffel symbols, both definitions.
  Gamma3<Jet1> gamma;         // g^s . d_a g_b
  Gamma3<Jet1> gamma_metric;  // from metric derivatives
};

inline constexpr double kMetricConditionLimit = 1e12;

inline Frame make_frame(const Vec3<Jet3>& R, const Faults& faults = {}, const std::string& where = "frame") {
  Frame f;
  f.R = R;
  for (int a = 0; a < 2; ++a) f.g[a] = deriv(R, a);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f.dg[a][b] = deriv(f.g[b], a);

  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f.glo[a][b] = dot(f.g[a], f.g[b]);
  const Jet2 det = f.glo[0][0] * f.glo[1][1] - f.glo[0][1] * f.glo[1][0];
  const double g11 = f.glo[0][0].value(), g12 = f.glo[0][1].value(), g22 = f.glo[1][1].value();
  const double tr = g11 + g22, dv = det.value();
  const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - dv));
  const double lmax = 0.5 * tr + disc, lmin = dv / lmax;
  f.cond = lmin > 0.0 ? lmax / lmin : INFINITY;
  if (!(f.cond <= kMetricConditionLimit))
    throw DegenerateChartError(where + ": metric condition number " + std::to_string(f.cond) + " exceeds limit");
  (void)g12;
  const Jet2 idet = inv(det);
  f.ghi[0][0] = f.glo[1][1] * idet;
  f.ghi[1][1] = f.glo[0][0] * idet;
  f.ghi[0][1] = -f.glo[0][1] * idet;
  f.ghi[1][0] = f.ghi[0][1];
  for (int a = 0; a < 2; ++a) f.gcon[a] = f.ghi[a][0] * f.g[0] + f.ghi[a][1] * f.g[1];

  const Vec3<Jet2> c = cross(f.g[0], f.g[1]);
  f.area = norm(c);
  f.n = inv(f.area) * c;
  f.P = identity<Jet2>() - outer(f.n, f.n);

  const Vec3<Jet1> n1 = trunc<1>(f.n);
  const double sgn = faults.flip_b ? -1.0 : 1.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f.blo[a][b] = sgn * dot(n1, f.dg[a][b]);
  Sym2<Jet1> ghi1;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) ghi1[a][b] = trunc<1>(f.ghi[a][b]);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f.bmix[a][b] = ghi1[b][0] * f.blo[0][a] + ghi1[b][1] * f.blo[1][a];
  std::array<Vec3<Jet1>, 2> gc1{trunc<1>(f.gcon[0]), trunc<1>(f.gcon[1])};
  f.B = zero_mat<Jet1>();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) f.B = f.B + f.blo[a][b] * outer(gc1[a], gc1[b]);
  f.kappa = f.bmix[0][0] + f.bmix[1][1];
  f.gauss = f.bmix[0][0] * f.bmix[1][1] - f.bmix[0][1] * f.bmix[1][0];

  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) f.gamma[s][a][b] = dot(gc1[s], f.dg[a][b]);

  // d_k g_ij from the jets of the metric.
  std::array<Sym2<Jet1>, 2> dglo;
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) dglo[k][i][j] = deriv(f.glo[i][j], k);
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Jet1 acc(0.0);
        for (int tau = 0; tau < 2; ++tau)
          acc += ghi1[s][tau] * (dglo[b][a][tau] + dglo[a][b][tau] - dglo[tau][a][b]);
        f.gamma_metric[s][a][b] = 0.5 * acc;
      }
  return f;
}

inline Frame frame(const Chart& c, double u, double v, double t, const Faults& faults = {}) {
  return make_frame(eval_jet3(c, u, v, t), faults, "chart '" + c.name() + "'");
}

// Principal curvatures (eigenvalues of the mixed shape matrix), ascending.
inline std::array<double, 2> principal_curvatures(const Frame& f) {
  const double k = f.kappa.value(), K = f.gauss.value();
  const double disc = std::sqrt(std::max(0.0, 0.25 * k * k - K));
  return {0.5 * k - disc, 0.5 * k + disc};
}

struct ChristoffelPair {
  Gamma3<double> from_basis;
  Gamma3<double> from_metric;
  double max_gap = 0.0;
};

inline constexpr double kChristoffelTol = 1e-10;

inline ChristoffelPair christoffel(const Frame& f, double tol = kChristoffelTol) {
  ChristoffelPair p;
  for (int s = 0; s < 2; ++s)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        p.from_basis[s][a][b] = f.gamma[s][a][b].value();
        p.from_metric[s][a][b] = f.gamma_metric[s][a][b].value();
        p.max_gap = std::max(p.max_gap, std::abs(p.from_basis[s][a][b] - p.from_metric[s][a][b]));
      }
  if (p.max_gap > tol)
    throw ConsistencyError("Christoffel pathways disagree by " + std::to_string(p.max_gap));
  return p;
}

inline ChristoffelPair christoffel(const Chart& c, double u, double v, double t, double tol = kChristoffelTol) {
  return christoffel(frame(c, u, v, t), tol);
}

}  // namespace surfcalc
