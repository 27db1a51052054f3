#pragma once

// Truncated multivariate Taylor polynomials (jets) in N variables up to total degree K.
// Coefficient c[a] multiplies x^a / 1 (not a!), so the partial derivative of order a is a! * c[a].

#include <array>
#include <cmath>
#include <cstddef>

namespace surfcalc {

namespace detail {

constexpr int binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

constexpr int ipow(int b, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

template <int N, int K>
struct Layout {
  static constexpr int size = binom(N + K, K);
  static constexpr int dense = ipow(K + 1, N);

  using Exp = std::array<int, N>;

  static constexpr Exp decode(int code) {
    Exp e{};
    for (int i = 0; i < N; ++i) {
      e[i] = code % (K + 1);
      code /= (K + 1);
    }
    return e;
  }

  static constexpr int encode(const Exp& e) {
    int code = 0;
    for (int i = N - 1; i >= 0; --i) code = code * (K + 1) + e[i];
    return code;
  }

  static constexpr int degree(const Exp& e) {
    int s = 0;
    for (int v : e) s += v;
    return s;
  }

  static constexpr std::array<Exp, size> make_exps() {
    std::array<Exp, size> out{};
    int n = 0;
    for (int d = 0; d <= K; ++d)
      for (int code = 0; code < dense; ++code) {
        Exp e = decode(code);
        if (degree(e) == d) out[n++] = e;
      }
    return out;
  }
  static constexpr std::array<Exp, size> exps = make_exps();

  static constexpr std::array<int, dense> make_lookup() {
    std::array<int, dense> t{};
    for (int i = 0; i < dense; ++i) t[i] = -1;
    for (int i = 0; i < size; ++i) t[encode(exps[i])] = i;
    return t;
  }
  static constexpr std::array<int, dense> lookup = make_lookup();

  static constexpr int index(const Exp& e) {
    for (int v : e)
      if (v < 0 || v > K) return -1;
    if (degree(e) > K) return -1;
    return lookup[encode(e)];
  }

  struct Triple {
    int a, b, c;
  };

  static constexpr int count_products() {
    int n = 0;
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        if (degree(exps[i]) + degree(exps[j]) <= K) ++n;
    return n;
  }
  static constexpr int nprod = count_products();

  static constexpr std::array<Triple, nprod> make_products() {
    std::array<Triple, nprod> t{};
    int n = 0;
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j)
        if (degree(exps[i]) + degree(exps[j]) <= K) {
          Exp s{};
          for (int v = 0; v < N; ++v) s[v] = exps[i][v] + exps[j][v];
          t[n++] = Triple{i, j, index(s)};
        }
    return t;
  }
  static constexpr std::array<Triple, nprod> products = make_products();
};

constexpr double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

template <int N, int K>
class Taylor {
 public:
  using L = detail::Layout<N, K>;
  static constexpr int nvars = N;
  static constexpr int order = K;
  static constexpr int size = L::size;

  std::array<double, size> c{};

  constexpr Taylor() = default;
  constexpr Taylor(double v) { c[0] = v; }  // NOLINT: implicit by design

  static constexpr Taylor variable(double v, int i) {
    Taylor r(v);
    if constexpr (K > 0) r.c[1 + i] = 1.0;
    return r;
  }

  constexpr double value() const { return c[0]; }

  // First partial with respect to variable i.
  constexpr double grad(int i) const {
    if constexpr (K < 1) {
      return 0.0;
    } else {
      return c[1 + i];
    }
  }

  // Second partial with respect to variables i and j.
  constexpr double hess(int i, int j) const {
    if constexpr (K < 2) {
      return 0.0;
    } else {
      typename L::Exp e{};
      e[i] += 1;
      e[j] += 1;
      const double x = c[L::index(e)];
      return i == j ? 2.0 * x : x;
    }
  }

  // Mixed partial of multi-index e (any order up to K).
  constexpr double partial(const typename L::Exp& e) const {
    const int k = L::index(e);
    if (k < 0) return 0.0;
    double f = 1.0;
    for (int v : e) f *= detail::factorial(v);
    return f * c[k];
  }

  constexpr Taylor& operator+=(const Taylor& o) {
    for (int i = 0; i < size; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Taylor& operator-=(const Taylor& o) {
    for (int i = 0; i < size; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Taylor& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  constexpr Taylor& operator/=(double s) {
    for (auto& x : c) x /= s;
    return *this;
  }
  constexpr Taylor& operator+=(double s) {
    c[0] += s;
    return *this;
  }
  constexpr Taylor& operator-=(double s) {
    c[0] -= s;
    return *this;
  }

  template <int K2>
  constexpr Taylor<N, K2> trunc() const {
    static_assert(K2 <= K, "cannot raise truncation order");
    Taylor<N, K2> r;
    for (int i = 0; i < Taylor<N, K2>::size; ++i) r.c[i] = c[L::index(Taylor<N, K2>::L::exps[i])];
    return r;
  }
};

template <int N, int K>
constexpr Taylor<N, K> operator-(Taylor<N, K> a) {
  for (auto& x : a.c) x = -x;
  return a;
}
template <int N, int K>
constexpr Taylor<N, K> operator+(Taylor<N, K> a, const Taylor<N, K>& b) {
  return a += b;
}
template <int N, int K>
constexpr Taylor<N, K> operator-(Taylor<N, K> a, const Taylor<N, K>& b) {
  return a -= b;
}
template <int N, int K>
constexpr Taylor<N, K> operator+(Taylor<N, K> a, double s) {
  return a += s;
}
template <int N, int K>
constexpr Taylor<N, K> operator+(double s, Taylor<N, K> a) {
  return a += s;
}
template <int N, int K>
constexpr Taylor<N, K> operator-(Taylor<N, K> a, double s) {
  return a -= s;
}
template <int N, int K>
constexpr Taylor<N, K> operator-(double s, const Taylor<N, K>& a) {
  return -a + s;
}
template <int N, int K>
constexpr Taylor<N, K> operator*(Taylor<N, K> a, double s) {
  return a *= s;
}
template <int N, int K>
constexpr Taylor<N, K> operator*(double s, Taylor<N, K> a) {
  return a *= s;
}
template <int N, int K>
constexpr Taylor<N, K> operator/(Taylor<N, K> a, double s) {
  return a /= s;
}

template <int N, int K>
constexpr Taylor<N, K> operator*(const Taylor<N, K>& a, const Taylor<N, K>& b) {
  Taylor<N, K> r;
  for (const auto& t : Taylor<N, K>::L::products) r.c[t.c] += a.c[t.a] * b.c[t.b];
  return r;
}

// f(x0 + h) = sum_k f^(k)(x0) h^k / k!, with h the nilpotent part of x.
template <int N, int K>
constexpr Taylor<N, K> compose(const Taylor<N, K>& x, const std::array<double, K + 1>& derivs) {
  Taylor<N, K> h = x;
  h.c[0] = 0.0;
  Taylor<N, K> r(derivs[K] / detail::factorial(K));
  for (int k = K - 1; k >= 0; --k) r = r * h + derivs[k] / detail::factorial(k);
  return r;
}

template <int N, int K>
Taylor<N, K> inv(const Taylor<N, K>& x) {
  std::array<double, K + 1> d{};
  const double x0 = x.value();
  double p = 1.0 / x0;
  for (int k = 0; k <= K; ++k) {
    d[k] = p;
    p *= -(k + 1) / x0;
  }
  return compose(x, d);
}

template <int N, int K>
Taylor<N, K> operator/(const Taylor<N, K>& a, const Taylor<N, K>& b) {
  return a * inv(b);
}
template <int N, int K>
Taylor<N, K> operator/(double s, const Taylor<N, K>& b) {
  return s * inv(b);
}

template <int N, int K>
Taylor<N, K> sin(const Taylor<N, K>& x) {
  std::array<double, K + 1> d{};
  const double s = std::sin(x.value()), co = std::cos(x.value());
  const double cyc[4] = {s, co, -s, -co};
  for (int k = 0; k <= K; ++k) d[k] = cyc[k % 4];
  return compose(x, d);
}

template <int N, int K>
Taylor<N, K> cos(const Taylor<N, K>& x) {
  std::array<double, K + 1> d{};
  const double s = std::sin(x.value()), co = std::cos(x.value());
  const double cyc[4] = {co, -s, -co, s};
  for (int k = 0; k <= K; ++k) d[k] = cyc[k % 4];
  return compose(x, d);
}

template <int N, int K>
Taylor<N, K> exp(const Taylor<N, K>& x) {
  std::array<double, K + 1> d{};
  d.fill(std::exp(x.value()));
  return compose(x, d);
}

template <int N, int K>
Taylor<N, K> log(const Taylor<N, K>& x) {
  std::array<double, K + 1> d{};
  const double x0 = x.value();
  d[0] = std::log(x0);
  double p = 1.0 / x0;
  for (int k = 1; k <= K; ++k) {
    d[k] = p;
    p *= -k / x0;
  }
  return compose(x, d);
}

template <int N, int K>
Taylor<N, K> pow(const Taylor<N, K>& x, double e) {
  std::array<double, K + 1> d{};
  const double x0 = x.value();
  double coef = 1.0;
  for (int k = 0; k <= K; ++k) {
    d[k] = coef * std::pow(x0, e - k);
    coef *= (e - k);
  }
  return compose(x, d);
}

template <int N, int K>
Taylor<N, K> sqrt(const Taylor<N, K>& x) {
  return pow(x, 0.5);
}

// Partial derivative with respect to variable i; loses one order.
template <int N, int K>
constexpr Taylor<N, K - 1> deriv(const Taylor<N, K>& x, int i) {
  static_assert(K >= 1, "cannot differentiate a constant jet");
  using LO = typename Taylor<N, K - 1>::L;
  using LI = typename Taylor<N, K>::L;
  Taylor<N, K - 1> r;
  for (int k = 0; k < Taylor<N, K - 1>::size; ++k) {
    auto e = LO::exps[k];
    const int f = e[i] + 1;
    e[i] += 1;
    r.c[k] = f * x.c[LI::index(e)];
  }
  return r;
}

// Freeze variable i: drop every coefficient that depends on it.
template <int N, int K>
constexpr Taylor<N, K> drop_var(Taylor<N, K> x, int i) {
  for (int k = 0; k < Taylor<N, K>::size; ++k)
    if (Taylor<N, K>::L::exps[k][i] > 0) x.c[k] = 0.0;
  return x;
}

// Jets over (xi1, xi2, t). Jet2 is the canonical second-order jet.
using Jet0 = Taylor<3, 0>;
using Jet1 = Taylor<3, 1>;
using Jet2 = Taylor<3, 2>;
using Jet3 = Taylor<3, 3>;

inline constexpr int kXi1 = 0;
inline constexpr int kXi2 = 1;
inline constexpr int kTime = 2;

inline double value(double x) { return x; }
template <int N, int K>
double value(const Taylor<N, K>& x) {
  return x.value();
}

}  // namespace surfcalc
