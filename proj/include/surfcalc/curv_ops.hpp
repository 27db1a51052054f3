#pragma once

// Surface operators in curvilinear coordinates. A field jet of order M yields operator jets of order M - 1.

#include <array>
#include <cmath>
#include <string>

#include "surfcalc/errors.hpp"
#include "surfcalc/fields.hpp"
#include "surfcalc/geometry.hpp"

namespace surfcalc {

namespace detail {
template <int K>
using J = Taylor<3, K>;

template <int K>
Vec3<J<K>> gcon(const Frame& f, int a) {
  return trunc<K>(f.gcon[a]);
}
template <int K>
Vec3<J<K>> gcov(const Frame& f, int a) {
  return trunc<K>(f.g[a]);
}
template <int K>
Vec3<J<K>> nrm(const Frame& f) {
  return trunc<K>(f.n);
}
template <int K>
Mat3<J<K>> proj(const Frame& f) {
  return trunc<K>(f.P);
}
}  // namespace detail

// grad_Gamma phi = d_a phi g^a
template <int M>
Vec3<Taylor<3, M - 1>> grad_scalar(const Frame& f, const Taylor<3, M>& phi) {
  Vec3<Taylor<3, M - 1>> r{};
  for (int a = 0; a < 2; ++a) r = r + deriv(phi, a) * detail::gcon<M - 1>(f, a);
  return r;
}

// grad_Gamma u = (P d_a u) (x) g^a
template <int M>
Mat3<Taylor<3, M - 1>> cov_deriv(const Frame& f, const Vec3<Taylor<3, M>>& u) {
  const auto P = detail::proj<M - 1>(f);
  Mat3<Taylor<3, M - 1>> r = zero_mat<Taylor<3, M - 1>>();
  for (int a = 0; a < 2; ++a) r = r + outer(P * deriv(u, a), detail::gcon<M - 1>(f, a));
  return r;
}

// grad_S u = g^a (x) d_a u
template <int M>
Mat3<Taylor<3, M - 1>> grad_S(const Frame& f, const Vec3<Taylor<3, M>>& u) {
  Mat3<Taylor<3, M - 1>> r = zero_mat<Taylor<3, M - 1>>();
  for (int a = 0; a < 2; ++a) r = r + outer(detail::gcon<M - 1>(f, a), deriv(u, a));
  return r;
}

// Full directional derivative d_a u (x) g^a, the ambient Jacobian of the normal extension on Gamma.
template <int M>
Mat3<Taylor<3, M - 1>> surface_jacobian(const Frame& f, const Vec3<Taylor<3, M>>& u) {
  Mat3<Taylor<3, M - 1>> r = zero_mat<Taylor<3, M - 1>>();
  for (int a = 0; a < 2; ++a) r = r + outer(deriv(u, a), detail::gcon<M - 1>(f, a));
  return r;
}

template <int M>
Taylor<3, M - 1> div_vector(const Frame& f, const Vec3<Taylor<3, M>>& u) {
  Taylor<3, M - 1> r(0.0);
  for (int a = 0; a < 2; ++a) r += dot(deriv(u, a), detail::gcon<M - 1>(f, a));
  return r;
}

// div_Gamma T = (d_a T)^T g^a
template <int M>
Vec3<Taylor<3, M - 1>> div_tensor(const Frame& f, const Mat3<Taylor<3, M>>& T) {
  Vec3<Taylor<3, M - 1>> r{};
  for (int a = 0; a < 2; ++a) r = r + transpose(deriv(T, a)) * detail::gcon<M - 1>(f, a);
  return r;
}

template <int M>
Mat3<Taylor<3, M>> sym_part(const Mat3<Taylor<3, M>>& A) {
  return 0.5 * (A + transpose(A));
}

inline constexpr double kTangentRangeTol = 1e-10;

// Component form T^{ab}_{|a} g_b + T^{ab} b_ab n, valid when T = P T P.
template <int M>
Vec3<Taylor<3, M - 1>> div_tensor_components(const Frame& f, const Mat3<Taylor<3, M>>& T, double tol = kTangentRangeTol) {
  static_assert(M <= 2, "shape data is first order");
  using JM = Taylor<3, M>;
  using JL = Taylor<3, M - 1>;
  const Mat3d Tv = value(T), Pv = value(f.P);
  if (max_abs(Tv - Pv * Tv * Pv) > tol)
    throw PreconditionError("component divergence needs a tensor with tangential range and domain");
  Sym2<JM> Thi;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) Thi[a][b] = dot(detail::gcon<M>(f, a), T * detail::gcon<M>(f, b));
  Vec3<JL> r{};
  for (int b = 0; b < 2; ++b) {
    JL acc(0.0);
    for (int a = 0; a < 2; ++a) {
      acc += deriv(Thi[a][b], a);
      for (int m = 0; m < 2; ++m) {
        acc += trunc<M - 1>(f.gamma[a][m][a]) * trunc<M - 1>(Thi[m][b]);
        acc += trunc<M - 1>(f.gamma[b][m][a]) * trunc<M - 1>(Thi[a][m]);
      }
    }
    r = r + acc * detail::gcov<M - 1>(f, b);
  }
  JL nn(0.0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) nn += trunc<M - 1>(Thi[a][b]) * trunc<M - 1>(f.blo[a][b]);
  return r + nn * detail::nrm<M - 1>(f);
}

// Lower-index divergence g^{bc} T_{ac|b} g^a, the convention of the thin-film literature.
template <int M>
Vec3<Taylor<3, M - 1>> div_tensor_lower(const Frame& f, const Mat3<Taylor<3, M>>& T) {
  static_assert(M <= 2, "shape data is first order");
  using JM = Taylor<3, M>;
  using JL = Taylor<3, M - 1>;
  Sym2<JM> Tlo;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) Tlo[a][c] = dot(detail::gcov<M>(f, a), T * detail::gcov<M>(f, c));
  Vec3<JL> r{};
  for (int a = 0; a < 2; ++a) {
    JL acc(0.0);
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        JL cov = deriv(Tlo[a][c], b);
        for (int m = 0; m < 2; ++m) {
          cov -= trunc<M - 1>(f.gamma[m][b][a]) * trunc<M - 1>(Tlo[m][c]);
          cov -= trunc<M - 1>(f.gamma[m][b][c]) * trunc<M - 1>(Tlo[a][m]);
        }
        acc += trunc<M - 1>(f.ghi[b][c]) * cov;
      }
    r = r + acc * detail::gcon<M - 1>(f, a);
  }
  return r;
}

// d_a u by the component formula (u_{b|a} - b_ab u_3) g^b + (u_{3|a} + b^b_a u_b) g^3.
template <int M>
Vec3<Taylor<3, M - 1>> partial_vector_formula(const Frame& f, const Vec3<Taylor<3, M>>& u, int a) {
  static_assert(M <= 2, "shape data is first order");
  using JL = Taylor<3, M - 1>;
  std::array<Taylor<3, M>, 2> ucov;
  for (int b = 0; b < 2; ++b) ucov[b] = dot(u, detail::gcov<M>(f, b));
  const Taylor<3, M> u3 = dot(u, detail::nrm<M>(f));
  Vec3<JL> r{};
  JL normal = deriv(u3, a);
  for (int b = 0; b < 2; ++b) {
    JL ub_a = deriv(ucov[b], a);
    for (int c = 0; c < 2; ++c) ub_a -= trunc<M - 1>(f.gamma[c][a][b]) * trunc<M - 1>(ucov[c]);
    r = r + (ub_a - trunc<M - 1>(f.blo[a][b]) * trunc<M - 1>(u3)) * detail::gcon<M - 1>(f, b);
    normal += trunc<M - 1>(f.bmix[a][b]) * trunc<M - 1>(ucov[b]);
  }
  return r + normal * detail::nrm<M - 1>(f);
}

template <int M>
Vec3<Taylor<3, M - 1>> partial_vector_direct(const Vec3<Taylor<3, M>>& u, int a) {
  return deriv(u, a);
}

inline constexpr double kPartialTol = 1e-10;

struct PartialPair {
  Vec3d formula, direct;
  double gap = 0.0;
};

// Both pathways for d_a u at a site; throws when they disagree.
inline PartialPair partial_vector(const Site& s, const VectorField& u, int a, double tol = kPartialTol) {
  const Vec3<Jet2> uj = u(s);
  PartialPair p{value(partial_vector_formula(s.fr, uj, a)), value(partial_vector_direct(uj, a)), 0.0};
  p.gap = max_abs(p.formula - p.direct);
  if (p.gap > tol) throw ConsistencyError("partial derivative pathways disagree by " + std::to_string(p.gap));
  return p;
}

// Covariant component derivatives of a vector field and a tensor field at a site.
struct ComponentDerivatives {
  Sym2<double> u_cov_bar;  // [b][a] = u_{b|a}
  Sym2<double> u_con_bar;  // [b][a] = u^b_{|a}
  std::array<Sym2<double>, 2> T_bar_lo;  // [a][b][c] = T_{ab|c}
  std::array<Sym2<double>, 2> T_bar_hi;  // [a][b][c] = T^{ab}_{|c}
};

inline ComponentDerivatives component_derivatives(const Frame& f, const Vec3<Jet2>& u, const Mat3<Jet2>& T) {
  ComponentDerivatives cd{};
  std::array<Jet2, 2> ucov, ucon;
  for (int b = 0; b < 2; ++b) {
    ucov[b] = dot(u, f.g[b]);
    ucon[b] = dot(u, f.gcon[b]);
  }
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) {
      double lo = deriv(ucov[b], a).value(), hi = deriv(ucon[b], a).value();
      for (int c = 0; c < 2; ++c) {
        lo -= f.gamma[c][a][b].value() * ucov[c].value();
        hi += f.gamma[b][c][a].value() * ucon[c].value();
      }
      cd.u_cov_bar[b][a] = lo;
      cd.u_con_bar[b][a] = hi;
    }
  Sym2<Jet2> Tlo, Thi;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Tlo[a][b] = dot(f.g[a], T * f.g[b]);
      Thi[a][b] = dot(f.gcon[a], T * f.gcon[b]);
    }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        double lo = deriv(Tlo[a][b], c).value(), hi = deriv(Thi[a][b], c).value();
        for (int m = 0; m < 2; ++m) {
          lo -= f.gamma[m][c][a].value() * Tlo[m][b].value() + f.gamma[m][c][b].value() * Tlo[a][m].value();
          hi += f.gamma[a][m][c].value() * Thi[m][b].value() + f.gamma[b][m][c].value() * Thi[a][m].value();
        }
        cd.T_bar_lo[a][b][c] = lo;
        cd.T_bar_hi[a][b][c] = hi;
      }
  return cd;
}

}  // namespace surfcalc
