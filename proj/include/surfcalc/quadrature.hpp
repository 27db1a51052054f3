#pragma once

// Gauss-Legendre tensor rules on chart rectangles with area element sqrt(det g).

#include <gsl/gsl_integration.h>

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "surfcalc/errors.hpp"
#include "surfcalc/fields.hpp"

namespace surfcalc {

struct Region {
  std::array<double, 2> lo;
  std::array<double, 2> hi;
};

struct Rule1D {
  std::vector<double> x, w;
};

// Nodes come from the Golub-Welsch eigenvalue solve; the glfixed tables drift to 1e-11 at untabulated orders.
inline Rule1D gauss_legendre(int order, double a, double b) {
  if (order < 1) throw ResolutionError("quadrature order must be positive");
  std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
      gsl_integration_fixed_alloc(gsl_integration_fixed_legendre, static_cast<std::size_t>(order), a, b, 0.0, 0.0),
      &gsl_integration_fixed_free);
  if (!ws) throw ResolutionError("cannot build Gauss-Legendre rule of order " + std::to_string(order));
  const double* x = gsl_integration_fixed_nodes(ws.get());
  const double* w = gsl_integration_fixed_weights(ws.get());
  return {std::vector<double>(x, x + order), std::vector<double>(w, w + order)};
}

// Integral over the chart rectangle at time t of f(site) dA.
template <class F>
double integrate(const Chart& c, double t, const Region& reg, int order_u, int order_v, F f) {
  const Rule1D ru = gauss_legendre(order_u, reg.lo[0], reg.hi[0]);
  const Rule1D rv = gauss_legendre(order_v, reg.lo[1], reg.hi[1]);
  double sum = 0.0;
  for (int i = 0; i < order_u; ++i) {
    double row = 0.0;
    for (int j = 0; j < order_v; ++j) {
      const Site s = make_site(c, ru.x[i], rv.x[j], t);
      row += rv.w[j] * f(s) * s.fr.area.value();
    }
    sum += ru.w[i] * row;
  }
  return sum;
}

inline double integrate(const Chart& c, double t, const Region& reg, int order_u, int order_v,
                        const ScalarField& f) {
  return integrate(c, t, reg, order_u, order_v, [&](const Site& s) { return f(s).value(); });
}

// Integral with an order-refinement stability check.
template <class F>
double integrate_checked(const Chart& c, double t, const Region& reg, int order_u, int order_v, F f,
                         double tol = 1e-10) {
  const double a = integrate(c, t, reg, order_u, order_v, f);
  const double b = integrate(c, t, reg, order_u + order_u / 2, order_v + order_v / 2, f);
  if (std::abs(a - b) > tol * std::max(1.0, std::abs(b)))
    throw ResolutionError("quadrature not stable under refinement: " + std::to_string(std::abs(a - b)));
  return b;
}

}  // namespace surfcalc
