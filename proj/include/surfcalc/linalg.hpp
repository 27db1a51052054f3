#pragma once

// Fixed-size 3-vectors and 3x3 matrices over any scalar type (double or jets).
// Outer product convention: outer(a, b) w = (b . w) a, i.e. the matrix a b^T.

#include <algorithm>
#include <array>
#include <cmath>
#include <type_traits>

#include "surfcalc/taylor.hpp"

namespace surfcalc {

template <class S>
using Vec3 = std::array<S, 3>;
template <class S>
using Mat3 = std::array<std::array<S, 3>, 3>;

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

template <class T>
struct is_scalar_like : std::is_arithmetic<T> {};
template <int N, int K>
struct is_scalar_like<Taylor<N, K>> : std::true_type {};
template <class T>
concept ScalarLike = is_scalar_like<T>::value;

template <class S>
Vec3<S> operator+(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
template <class S>
Vec3<S> operator-(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
template <class S>
Vec3<S> operator-(const Vec3<S>& a) {
  return {-a[0], -a[1], -a[2]};
}
template <class S, ScalarLike T>
Vec3<S> operator*(const T& s, const Vec3<S>& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
template <class S>
Vec3<S> operator/(const Vec3<S>& a, double s) {
  return {a[0] / s, a[1] / s, a[2] / s};
}

template <class S>
S dot(const Vec3<S>& a, const Vec3<S>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class S>
Vec3<S> cross(const Vec3<S>& a, const Vec3<S>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3d& a) { return std::sqrt(dot(a, a)); }

template <class S>
Mat3<S> zero_mat() {
  Mat3<S> m;
  for (auto& r : m) r.fill(S(0.0));
  return m;
}

template <class S>
Mat3<S> identity() {
  Mat3<S> m = zero_mat<S>();
  for (int i = 0; i < 3; ++i) m[i][i] = S(1.0);
  return m;
}

template <class S>
Mat3<S> outer(const Vec3<S>& a, const Vec3<S>& b) {
  Mat3<S> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[i] * b[j];
  return m;
}

template <class S>
Mat3<S> operator+(const Mat3<S>& a, const Mat3<S>& b) {
  Mat3<S> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[i][j] + b[i][j];
  return m;
}
template <class S>
Mat3<S> operator-(const Mat3<S>& a, const Mat3<S>& b) {
  Mat3<S> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[i][j] - b[i][j];
  return m;
}
template <class S, ScalarLike T>
Mat3<S> operator*(const T& s, const Mat3<S>& a) {
  Mat3<S> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = s * a[i][j];
  return m;
}

template <class S>
Vec3<S> operator*(const Mat3<S>& a, const Vec3<S>& v) {
  Vec3<S> r;
  for (int i = 0; i < 3; ++i) r[i] = a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
  return r;
}

template <class S>
Mat3<S> operator*(const Mat3<S>& a, const Mat3<S>& b) {
  Mat3<S> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return m;
}

template <class S>
Mat3<S> transpose(const Mat3<S>& a) {
  Mat3<S> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[j][i];
  return m;
}

template <class S>
S trace(const Mat3<S>& a) {
  return a[0][0] + a[1][1] + a[2][2];
}

// Frobenius norm of a double matrix.
inline double fnorm(const Mat3d& a) {
  double s = 0.0;
  for (const auto& r : a)
    for (double x : r) s += x * x;
  return std::sqrt(s);
}

inline double max_abs(const Vec3d& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

inline double max_abs(const Mat3d& a) {
  double m = 0.0;
  for (const auto& r : a)
    for (double x : r) m = std::max(m, std::abs(x));
  return m;
}

// Elementwise helpers for jet-valued containers.
template <class S>
Vec3d value(const Vec3<S>& a) {
  return {value(a[0]), value(a[1]), value(a[2])};
}
template <class S>
Mat3d value(const Mat3<S>& a) {
  Mat3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = value(a[i][j]);
  return m;
}

template <int K2, int N, int K>
Vec3<Taylor<N, K2>> trunc(const Vec3<Taylor<N, K>>& a) {
  return {a[0].template trunc<K2>(), a[1].template trunc<K2>(), a[2].template trunc<K2>()};
}
template <int K2, int N, int K>
Mat3<Taylor<N, K2>> trunc(const Mat3<Taylor<N, K>>& a) {
  Mat3<Taylor<N, K2>> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = a[i][j].template trunc<K2>();
  return m;
}
template <int K2, int N, int K>
Taylor<N, K2> trunc(const Taylor<N, K>& a) {
  return a.template trunc<K2>();
}

template <int N, int K>
Vec3<Taylor<N, K - 1>> deriv(const Vec3<Taylor<N, K>>& a, int i) {
  return {deriv(a[0], i), deriv(a[1], i), deriv(a[2], i)};
}
template <int N, int K>
Mat3<Taylor<N, K - 1>> deriv(const Mat3<Taylor<N, K>>& a, int i) {
  Mat3<Taylor<N, K - 1>> m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = deriv(a[r][c], i);
  return m;
}

template <int N, int K>
Vec3<Taylor<N, K>> drop_var(const Vec3<Taylor<N, K>>& a, int i) {
  return {drop_var(a[0], i), drop_var(a[1], i), drop_var(a[2], i)};
}

// Jet-valued square root of a dot product, used for normalization.
template <int N, int K>
Taylor<N, K> norm(const Vec3<Taylor<N, K>>& a) {
  return sqrt(dot(a, a));
}

}  // namespace surfcalc
