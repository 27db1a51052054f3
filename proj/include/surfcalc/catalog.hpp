#pragma once

// Test surfaces. Each chart is oriented by n = g1 x g2 / |g1 x g2|.

#include <array>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "surfcalc/chart.hpp"
#include "surfcalc/errors.hpp"

namespace surfcalc {

struct CatalogEntry {
  std::string id;
  ChartPtr chart;
  // Sampling rectangle: the chart domain minus singular loci (poles).
  std::array<double, 2> sample_lo;
  std::array<double, 2> sample_hi;
  std::string description;
};

inline constexpr double kPoleMargin = 0.15;

namespace charts {

inline ChartDomain sphere_domain(double t_lo = -1.0, double t_hi = 1.0) {
  return ChartDomain{{0.0, -std::numbers::pi}, {std::numbers::pi, std::numbers::pi}, {false, true}, t_lo, t_hi};
}

inline ChartPtr plane() {
  ChartOptions o;
  o.delta = 1.0;
  return make_chart("plane", ChartDomain{{-5.0, -5.0}, {5.0, 5.0}, {false, false}, -1.0, 1.0}, o,
                    [](auto u, auto v, auto t) {
                      using S = decltype(u);
                      return Vec3<S>{u, v, S(0.0) * t};
                    });
}

inline ChartPtr unit_sphere() {
  ChartOptions o;
  o.delta = 0.5;
  return make_chart("unit_sphere", sphere_domain(), o, [](auto th, auto ph, auto) {
    using std::cos;
    using std::sin;
    using S = decltype(th);
    return Vec3<S>{sin(th) * cos(ph), sin(th) * sin(ph), cos(th)};
  });
}

inline ChartPtr ellipsoid(double a = 1.2, double b = 1.0, double c = 0.8) {
  ChartOptions o;
  o.delta = 0.2;
  o.scale = std::max({a, b, c});
  return make_chart("ellipsoid", sphere_domain(), o, [a, b, c](auto th, auto ph, auto) {
    using std::cos;
    using std::sin;
    using S = decltype(th);
    return Vec3<S>{a * sin(th) * cos(ph), b * sin(th) * sin(ph), c * cos(th)};
  });
}

inline ChartPtr torus(double R0 = 2.0, double r0 = 0.5) {
  ChartOptions o;
  o.delta = 0.5 * r0;
  o.scale = R0 + r0;
  const double pi = std::numbers::pi;
  return make_chart("torus", ChartDomain{{-pi, -pi}, {pi, pi}, {true, true}, -1.0, 1.0}, o,
                    [R0, r0](auto u, auto v, auto) {
                      using std::cos;
                      using std::sin;
                      using S = decltype(u);
                      const S w = R0 + r0 * cos(v);
                      return Vec3<S>{w * cos(u), w * sin(u), r0 * sin(v)};
                    });
}

// Sphere of radius 1 + t/4 moving purely in the normal direction.
inline ChartPtr expanding_sphere() {
  ChartOptions o;
  o.delta = 0.4;
  o.evolving = true;
  return make_chart("expanding_sphere", sphere_domain(-1.0, 1.0), o, [](auto th, auto ph, auto t) {
    using std::cos;
    using std::sin;
    using S = decltype(th);
    const auto r = 1.0 + 0.25 * t;
    return Vec3<S>{r * sin(th) * cos(ph), r * sin(th) * sin(ph), r * cos(th)};
  });
}

// Unit sphere carried by the rigid rotation v = e3 x x; Gamma(t) is stationary as a set.
inline ChartPtr rotating_sphere() {
  ChartOptions o;
  o.delta = 0.5;
  o.evolving = true;
  return make_chart("rotating_sphere", sphere_domain(-4.0, 4.0), o, [](auto th, auto ph, auto t) {
    using std::cos;
    using std::sin;
    using S = decltype(th);
    const S x = sin(th) * cos(ph), y = sin(th) * sin(ph);
    const auto c = cos(t), s = sin(t);
    return Vec3<S>{c * x - s * y, s * x + c * y, cos(th)};
  });
}

// Ellipsoid with time-dependent semi-axes, spun about e3: velocity has tangential and normal parts.
inline ChartPtr deforming_ellipsoid() {
  ChartOptions o;
  o.delta = 0.15;
  o.scale = 1.3;
  o.evolving = true;
  return make_chart("deforming_ellipsoid", sphere_domain(-1.0, 1.0), o, [](auto th, auto ph, auto t) {
    using std::cos;
    using std::sin;
    using S = decltype(th);
    const auto a = 1.0 + 0.2 * t;
    const auto b = 1.0 - 0.1 * t + 0.05 * t * t;
    const auto c = 0.8 + 0.1 * sin(t);
    const S x = a * sin(th) * cos(ph), y = b * sin(th) * sin(ph), z = c * cos(th);
    const auto cw = cos(0.5 * t), sw = sin(0.5 * t);
    return Vec3<S>{cw * x - sw * y, sw * x + cw * y, z};
  });
}

}  // namespace charts

inline std::vector<CatalogEntry> catalog() {
  const double pi = std::numbers::pi;
  const std::array<double, 2> sph_lo{kPoleMargin, -pi}, sph_hi{pi - kPoleMargin, pi};
  return {
      {"plane", charts::plane(), {-1.0, -1.0}, {1.0, 1.0}, "flat plane x3 = 0"},
      {"unit_sphere", charts::unit_sphere(), sph_lo, sph_hi, "unit sphere, spherical chart"},
      {"ellipsoid", charts::ellipsoid(), sph_lo, sph_hi, "ellipsoid with semi-axes (1.2, 1.0, 0.8)"},
      {"torus", charts::torus(), {-pi, -pi}, {pi, pi}, "torus R0 = 2, r0 = 0.5"},
      {"expanding_sphere", charts::expanding_sphere(), sph_lo, sph_hi, "sphere of radius 1 + t/4"},
      {"rotating_sphere", charts::rotating_sphere(), sph_lo, sph_hi, "unit sphere under rigid rotation about e3"},
      {"deforming_ellipsoid", charts::deforming_ellipsoid(), sph_lo, sph_hi,
       "ellipsoid with moving semi-axes and spin about e3"},
  };
}

inline CatalogEntry catalog_entry(const std::string& id) {
  for (auto& e : catalog())
    if (e.id == id) return e;
  throw ConfigError("unknown surface '" + id + "'");
}

}  // namespace surfcalc
