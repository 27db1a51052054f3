#pragma once

// Suite configuration and the named field catalog.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "surfcalc/catalog.hpp"
#include "surfcalc/errors.hpp"
#include "surfcalc/fields.hpp"
#include "surfcalc/geometry.hpp"

namespace surfcalc::harness {

struct FdSteps {
  double h = 1e-4;       // ambient step for single-step comparisons
  double h_time = 1e-4;  // time step for Cartesian and transport-theorem derivatives
  std::vector<double> sweep{1e-2, 3e-3, 1e-3, 3e-4};
  std::vector<double> time_sweep{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> zeta_sweep{1e-1, 1e-2, 1e-3};
  std::vector<double> offset_sweep{0.08, 0.04, 0.02, 0.01};
};

struct QuadratureOrders {
  int order_u = 64;
  int order_v = 128;
};

struct Config {
  std::vector<std::string> surfaces{"unit_sphere", "ellipsoid", "torus"};
  std::vector<std::string> fields;             // empty selects every field
  std::map<std::string, double> tolerances;    // per-check overrides
  FdSteps fd;
  QuadratureOrders quadrature;
  std::uint64_t seed = 20240917;
  std::string output_path = "surfcalc_report.json";
  int points = 200;                            // sample points per surface
  int threads = 0;                             // 0: one per hardware thread
  std::vector<std::string> checks;             // empty runs every check; otherwise id prefixes
  Faults sabotage;
};

// Closed-form fields used across the suite, addressed by name.
struct FieldSet {
  std::vector<ScalarField> scalars;
  std::vector<VectorField> vectors;
  std::vector<TensorField> tensors;
};

inline FieldSet field_catalog() {
  FieldSet fs;
  fs.scalars.push_back(ambient_scalar("wave", [](const Vec3<Jet2>& x, const Jet2&) { return sin(x[0]) * x[2] + x[1] * x[1]; }));
  fs.scalars.push_back(
      ambient_scalar("exp_mix", [](const Vec3<Jet2>& x, const Jet2&) { return exp(0.3 * x[0]) * cos(x[1]) + x[2]; }));
  fs.scalars.push_back(ambient_scalar("cubic", [](const Vec3<Jet2>& x, const Jet2&) { return x[0] * x[1] * x[2] + x[2]; }));

  fs.vectors.push_back(ambient_vector("rotation", [](const Vec3<Jet2>& x, const Jet2&) {
    return Vec3<Jet2>{-1.0 * x[1], x[0], Jet2(0.0)};
  }));
  fs.vectors.push_back(ambient_vector("swirl", [](const Vec3<Jet2>& x, const Jet2&) {
    return Vec3<Jet2>{x[1] * x[2], sin(x[0]), x[0] * x[0] - x[2]};
  }));
  fs.vectors.push_back(ambient_vector("stretch", [](const Vec3<Jet2>& x, const Jet2&) {
    return Vec3<Jet2>{x[0] * x[2], x[1] + 0.5 * x[0], exp(0.2 * x[2])};
  }));

  fs.tensors.push_back(ambient_tensor("general", [](const Vec3<Jet2>& x, const Jet2&) {
    Mat3<Jet2> T;
    T[0] = {x[0] * x[1], x[2], Jet2(0.3)};
    T[1] = {sin(x[0]), x[1], x[0] * x[2]};
    T[2] = {x[1] * x[1], Jet2(-0.2), cos(x[2])};
    return T;
  }));
  fs.tensors.push_back(projector_field());
  fs.tensors.push_back(ambient_tensor("skew", [](const Vec3<Jet2>& x, const Jet2&) {
    const Vec3<Jet2> w{x[0] * x[0], x[1] * x[2], sin(x[0]) + x[2]};
    Mat3<Jet2> T;
    T[0] = {Jet2(0.0), -1.0 * w[2], w[1]};
    T[1] = {w[2], Jet2(0.0), -1.0 * w[0]};
    T[2] = {-1.0 * w[1], w[0], Jet2(0.0)};
    return T;
  }));
  return fs;
}

inline std::vector<std::string> field_names() {
  std::vector<std::string> out;
  const FieldSet fs = field_catalog();
  for (const auto& f : fs.scalars) out.push_back(f.name);
  for (const auto& f : fs.vectors) out.push_back(f.name);
  for (const auto& f : fs.tensors) out.push_back(f.name);
  return out;
}

inline FieldSet select_fields(const std::vector<std::string>& names) {
  FieldSet all = field_catalog();
  if (names.empty()) return all;
  for (const auto& n : names) {
    bool found = false;
    for (const auto& k : field_names()) found = found || k == n;
    if (!found) throw ConfigError("unknown field '" + n + "'");
  }
  auto keep = [&](auto& v) {
    std::erase_if(v, [&](const auto& f) { return std::find(names.begin(), names.end(), f.name) == names.end(); });
  };
  keep(all.scalars);
  keep(all.vectors);
  keep(all.tensors);
  if (all.scalars.empty() || all.vectors.empty() || all.tensors.empty())
    throw ConfigError("field selection needs at least one scalar, one vector and one tensor field");
  return all;
}

namespace detail {

using nlohmann::json;

inline double positive(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double x = j.get<double>();
  if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError("'" + key + "' must be positive");
  return x;
}

inline std::vector<double> positive_list(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() < 2) throw ConfigError("'" + key + "' must be an array of at least two steps");
  std::vector<double> out;
  for (const auto& x : j) out.push_back(positive(x, key));
  return out;
}

inline std::vector<std::string> string_list(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("'" + key + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw ConfigError("'" + key + "' must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

inline int bounded_int(const json& j, const std::string& key, int lo, int hi) {
  if (!j.is_number_integer()) throw ConfigError("'" + key + "' must be an integer");
  const auto x = j.get<long long>();
  if (x < lo || x > hi) throw ConfigError("'" + key + "' out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

inline void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* a : keys) ok = ok || k == a;
    if (!ok) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

}  // namespace detail

inline Faults parse_faults(const std::vector<std::string>& names) {
  Faults f;
  for (const auto& n : names) {
    if (n == "drop_transpose") f.drop_transpose = true;
    else if (n == "flip_b") f.flip_b = true;
    else if (n == "drop_pkappa") f.drop_pkappa = true;
    else throw ConfigError("unknown sabotage toggle '" + n + "'");
  }
  return f;
}

inline std::vector<std::string> fault_names(const Faults& f) {
  std::vector<std::string> out;
  if (f.drop_transpose) out.push_back("drop_transpose");
  if (f.flip_b) out.push_back("flip_b");
  if (f.drop_pkappa) out.push_back("drop_pkappa");
  return out;
}

// Known check ids are validated by the caller (the registry lives in checks.hpp).
inline Config parse_config(const nlohmann::json& j) {
  using detail::json;
  Config c;
  detail::only_keys(j, "config",
                    {"surfaces", "fields", "tolerances", "fd_steps", "quadrature", "seed", "output_path", "points", "threads",
                     "checks", "sabotage"});
  if (j.contains("surfaces")) {
    c.surfaces = detail::string_list(j["surfaces"], "surfaces");
    if (c.surfaces.empty()) throw ConfigError("'surfaces' must not be empty");
    for (const auto& s : c.surfaces) (void)catalog_entry(s);
  }
  if (j.contains("fields")) {
    c.fields = detail::string_list(j["fields"], "fields");
    (void)select_fields(c.fields);
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ConfigError("'tolerances' must be an object");
    for (const auto& [k, v] : j["tolerances"].items()) c.tolerances[k] = detail::positive(v, "tolerances." + k);
  }
  if (j.contains("fd_steps")) {
    const json& f = j["fd_steps"];
    detail::only_keys(f, "fd_steps", {"h", "h_time", "sweep", "time_sweep", "zeta_sweep", "offset_sweep"});
    if (f.contains("h")) c.fd.h = detail::positive(f["h"], "fd_steps.h");
    if (f.contains("h_time")) c.fd.h_time = detail::positive(f["h_time"], "fd_steps.h_time");
    if (f.contains("sweep")) c.fd.sweep = detail::positive_list(f["sweep"], "fd_steps.sweep");
    if (f.contains("time_sweep")) c.fd.time_sweep = detail::positive_list(f["time_sweep"], "fd_steps.time_sweep");
    if (f.contains("zeta_sweep")) c.fd.zeta_sweep = detail::positive_list(f["zeta_sweep"], "fd_steps.zeta_sweep");
    if (f.contains("offset_sweep")) c.fd.offset_sweep = detail::positive_list(f["offset_sweep"], "fd_steps.offset_sweep");
  }
  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    detail::only_keys(q, "quadrature", {"order_u", "order_v"});
    if (q.contains("order_u")) c.quadrature.order_u = detail::bounded_int(q["order_u"], "quadrature.order_u", 1, 1000);
    if (q.contains("order_v")) c.quadrature.order_v = detail::bounded_int(q["order_v"], "quadrature.order_v", 1, 1000);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
      throw ConfigError("'seed' must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output_path")) {
    if (!j["output_path"].is_string() || j["output_path"].get<std::string>().empty())
      throw ConfigError("'output_path' must be a non-empty string");
    c.output_path = j["output_path"].get<std::string>();
  }
  if (j.contains("points")) c.points = detail::bounded_int(j["points"], "points", 1, 100000);
  if (j.contains("threads")) c.threads = detail::bounded_int(j["threads"], "threads", 0, 1024);
  if (j.contains("checks")) c.checks = detail::string_list(j["checks"], "checks");
  if (j.contains("sabotage")) c.sabotage = parse_faults(detail::string_list(j["sabotage"], "sabotage"));
  return c;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace surfcalc::harness
