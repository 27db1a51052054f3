#pragma once

// Surface fields with jet-valued evaluators, basis-tagged components and the tangential/normal split.

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "surfcalc/chart.hpp"
#include "surfcalc/errors.hpp"
#include "surfcalc/geometry.hpp"

namespace surfcalc {

// Everything known about one chart point: the jets of R and the derived frame.
struct Site {
  const Chart* chart = nullptr;
  double u = 0.0, v = 0.0, t = 0.0;
  Frame fr;
  Faults faults;
};

inline Site make_site(const Chart& c, double u, double v, double t, const Faults& faults = {}) {
  return Site{&c, u, v, t, frame(c, u, v, t, faults), faults};
}

struct ScalarField {
  std::string name;
  std::function<Jet2(const Site&)> fn;
  Jet2 operator()(const Site& s) const { return fn(s); }
};

struct VectorField {
  std::string name;
  std::function<Vec3<Jet2>(const Site&)> fn;
  bool tangential = false;
  Vec3<Jet2> operator()(const Site& s) const { return fn(s); }
};

struct TensorField {
  std::string name;
  std::function<Mat3<Jet2>(const Site&)> fn;
  bool tangential = false;
  Mat3<Jet2> operator()(const Site& s) const { return fn(s); }
};

// Position and time of a site as jets, for composing ambient closed-form fields with the chart.
inline Vec3<Jet2> position(const Site& s) { return trunc<2>(s.fr.R); }
inline Jet2 time_jet(const Site& s) { return Jet2::variable(s.t, kTime); }

// Lift a closed-form ambient function f(x, t) into a surface field.
template <class F>
ScalarField ambient_scalar(std::string name, F f) {
  return {std::move(name), [f](const Site& s) -> Jet2 { return f(position(s), time_jet(s)); }};
}
template <class F>
VectorField ambient_vector(std::string name, F f, bool tangential = false) {
  return {std::move(name), [f](const Site& s) -> Vec3<Jet2> { return f(position(s), time_jet(s)); }, tangential};
}
template <class F>
TensorField ambient_tensor(std::string name, F f, bool tangential = false) {
  return {std::move(name), [f](const Site& s) -> Mat3<Jet2> { return f(position(s), time_jet(s)); }, tangential};
}

// Material velocity dR/dt of the chart.
inline VectorField material_velocity() {
  return {"velocity", [](const Site& s) { return deriv(s.fr.R, kTime); }, false};
}

inline VectorField normal_field() {
  return {"normal", [](const Site& s) { return s.fr.n; }, false};
}

inline TensorField projector_field() {
  return {"projector", [](const Site& s) { return s.fr.P; }, true};
}

inline constexpr double kTangentialTol = 1e-10;

// Lazy check of the declared tangential flag at one site.
inline void check_tangential(const VectorField& f, const Site& s, double tol = kTangentialTol) {
  if (!f.tangential) return;
  const double r = std::abs(dot(value(f(s)), value(s.fr.n)));
  if (r > tol) throw PreconditionError("field '" + f.name + "' declared tangential but u.n = " + std::to_string(r));
}
inline void check_tangential(const TensorField& f, const Site& s, double tol = kTangentialTol) {
  if (!f.tangential) return;
  const Mat3d T = value(f(s));
  const Vec3d n = value(s.fr.n);
  const double r = norm(T * n) + norm(transpose(T) * n);
  if (r > tol) throw PreconditionError("tensor '" + f.name + "' declared tangential but |Tn|+|T^T n| = " + std::to_string(r));
}

// Component representations relative to a frame. Index 2 refers to g_3 = g^3 = n.
enum class Basis { cartesian, covariant, contravariant, mixed };

inline const char* basis_name(Basis b) {
  switch (b) {
    case Basis::cartesian: return "cartesian";
    case Basis::covariant: return "covariant";
    case Basis::contravariant: return "contravariant";
    case Basis::mixed: return "mixed";
  }
  return "?";
}

struct FrameValues {
  std::array<Vec3d, 3> cov;  // g_1, g_2, n
  std::array<Vec3d, 3> con;  // g^1, g^2, n
};

inline FrameValues frame_values(const Frame& f) {
  const Vec3d n = value(f.n);
  return {{value(f.g[0]), value(f.g[1]), n}, {value(f.gcon[0]), value(f.gcon[1]), n}};
}

struct VectorComponents {
  Basis basis = Basis::cartesian;
  Vec3d comps{};
  const Frame* frame = nullptr;
};

struct TensorComponents {
  Basis basis = Basis::cartesian;
  Mat3d comps{};
  const Frame* frame = nullptr;
};

inline Vec3d to_cartesian(const VectorComponents& x) {
  if (x.basis == Basis::cartesian) return x.comps;
  if (!x.frame) throw PreconditionError("vector components without a frame");
  const FrameValues fv = frame_values(*x.frame);
  // u = u_i g^i = u^i g_i
  const auto& base = x.basis == Basis::covariant ? fv.con : fv.cov;
  if (x.basis == Basis::mixed) throw RepresentationError("vectors have no mixed representation");
  Vec3d u{0, 0, 0};
  for (int i = 0; i < 3; ++i) u = u + x.comps[i] * base[i];
  return u;
}

inline VectorComponents convert(const VectorComponents& x, Basis target) {
  const Vec3d u = to_cartesian(x);
  VectorComponents r{target, u, x.frame};
  if (target == Basis::cartesian) return r;
  if (target == Basis::mixed) throw RepresentationError("vectors have no mixed representation");
  if (!x.frame) throw PreconditionError("vector components without a frame");
  const FrameValues fv = frame_values(*x.frame);
  const auto& base = target == Basis::covariant ? fv.cov : fv.con;
  for (int i = 0; i < 3; ++i) r.comps[i] = dot(u, base[i]);
  return r;
}

inline bool is_symmetric(const Mat3d& T, double rel = 1e-12) {
  return fnorm(T - transpose(T)) <= rel * std::max(1.0, fnorm(T));
}

inline Mat3d to_cartesian(const TensorComponents& x) {
  if (x.basis == Basis::cartesian) return x.comps;
  if (!x.frame) throw PreconditionError("tensor components without a frame");
  const FrameValues fv = frame_values(*x.frame);
  // T_ij g^i (x) g^j, T^ij g_i (x) g^j ... chosen per tag.
  const auto& left = x.basis == Basis::covariant ? fv.con : fv.cov;
  const auto& right = x.basis == Basis::contravariant ? fv.cov : fv.con;
  Mat3d T = zero_mat<double>();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) T = T + x.comps[i][j] * outer(left[i], right[j]);
  return T;
}

inline TensorComponents convert(const TensorComponents& x, Basis target) {
  const Mat3d T = to_cartesian(x);
  TensorComponents r{target, T, x.frame};
  if (target == Basis::cartesian) return r;
  if (!x.frame) throw PreconditionError("tensor components without a frame");
  if (target == Basis::mixed && !is_symmetric(T))
    throw RepresentationError("mixed components requested for a non-symmetric tensor");
  const FrameValues fv = frame_values(*x.frame);
  // T_ij = g_i . T g_j, T^ij = g^i . T g^j, T^i_j = g^i . T g_j.
  const auto& left = target == Basis::covariant ? fv.cov : fv.con;
  const auto& right = target == Basis::contravariant ? fv.con : fv.cov;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.comps[i][j] = dot(left[i], T * right[j]);
  return r;
}

inline double trace_of(const TensorComponents& x) {
  if (x.basis == Basis::covariant || x.basis == Basis::contravariant) {
    // Contract with the inverse / forward metric of the full frame.
    return trace(to_cartesian(x));
  }
  return trace(x.comps);
}

template <class S>
struct Split {
  Vec3<S> tangential;
  S normal;
};

template <class S>
Split<S> split(const Vec3<S>& u, const Vec3<S>& n, const Mat3<S>& P) {
  return {P * u, dot(u, n)};
}

inline Split<double> split(const Vec3d& u, const Frame& f) { return split(u, value(f.n), value(f.P)); }

}  // namespace surfcalc
