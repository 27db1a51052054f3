#pragma once

// Runs the check registry and renders reports.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "surfcalc/harness/checks.hpp"

namespace surfcalc::harness {

inline constexpr const char* kVersion = "1.0.0";

struct CheckResult {
  std::string id;
  std::string anchor;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::optional<double> slope;
  std::optional<std::array<double, 2>> slope_window;
  std::vector<std::array<double, 2>> series;
  std::string error;
};

struct SuiteReport {
  Config cfg;
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* find(const std::string& id) const {
    for (const auto& c : checks)
      if (c.id == id) return &c;
    return nullptr;
  }
};

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// Each check draws from its own stream so results do not depend on scheduling or on which checks run.
inline std::mt19937_64 check_rng(std::uint64_t seed, const std::string& id) {
  const std::uint64_t h = fnv1a(id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

inline bool selected(const Config& cfg, const std::string& id) {
  if (cfg.checks.empty()) return true;
  for (const auto& p : cfg.checks)
    if (id.compare(0, p.size(), p) == 0) return true;
  return false;
}

inline void validate(const Config& cfg, const std::vector<CheckDef>& reg) {
  for (const auto& [id, tol] : cfg.tolerances) {
    bool known = false;
    for (const auto& d : reg) known = known || d.id == id;
    if (!known) throw ConfigError("tolerance override for unknown check '" + id + "'");
  }
  for (const auto& p : cfg.checks) {
    bool any = false;
    for (const auto& d : reg) any = any || d.id.compare(0, p.size(), p) == 0;
    if (!any) throw ConfigError("check selector '" + p + "' matches no check");
  }
}

inline CheckResult run_check(const CheckDef& d, const Config& cfg, const FieldSet& fields) {
  CheckResult r;
  r.id = d.id;
  r.anchor = d.anchor;
  r.tol = cfg.tolerances.count(d.id) ? cfg.tolerances.at(d.id) : d.tol;
  r.slope_window = d.slope_window;
  Context ctx{cfg, fields, cfg.sabotage, check_rng(cfg.seed, d.id)};
  try {
    const Outcome o = d.run(ctx);
    r.max_residual = o.residual;
    r.slope = o.slope;
    r.series = o.series;
    const bool finite = std::isfinite(o.residual);
    r.pass = finite && (d.kind == Kind::bound ? o.residual <= r.tol : o.residual > r.tol);
    if (d.slope_window) {
      const bool in = o.slope && std::isfinite(*o.slope) && *o.slope >= (*d.slope_window)[0] && *o.slope <= (*d.slope_window)[1];
      r.pass = r.pass && in;
    }
  } catch (const std::exception& e) {
    r.max_residual = std::numeric_limits<double>::quiet_NaN();
    r.pass = false;
    r.error = e.what();
  }
  return r;
}

inline SuiteReport run_suite(const Config& cfg) {
  const std::vector<CheckDef> reg = registry();
  validate(cfg, reg);
  const FieldSet fields = select_fields(cfg.fields);
  std::vector<const CheckDef*> todo;
  for (const auto& d : reg)
    if (selected(cfg, d.id)) todo.push_back(&d);

  SuiteReport rep;
  rep.cfg = cfg;
  rep.checks.resize(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < todo.size(); i = next++) rep.checks[i] = run_check(*todo[i], cfg, fields);
  };
  unsigned n = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, todo.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rep;
}

namespace detail {

inline nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace detail

// nlohmann::json keeps object keys sorted, so dump() is canonical.
inline nlohmann::json to_json(const SuiteReport& rep) {
  using nlohmann::json;
  const Config& c = rep.cfg;
  json meta;
  meta["seed"] = c.seed;
  meta["version"] = kVersion;
  meta["fd_steps"] = {{"h", c.fd.h},
                      {"h_time", c.fd.h_time},
                      {"sweep", c.fd.sweep},
                      {"time_sweep", c.fd.time_sweep},
                      {"zeta_sweep", c.fd.zeta_sweep},
                      {"offset_sweep", c.fd.offset_sweep}};
  meta["quadrature"] = {{"order_u", c.quadrature.order_u}, {"order_v", c.quadrature.order_v}};
  meta["pole_margin"] = kPoleMargin;
  meta["points"] = c.points;
  meta["surfaces"] = c.surfaces;
  meta["sabotage"] = fault_names(c.sabotage);
  json checks = json::array();
  for (const auto& r : rep.checks) {
    json j;
    j["id"] = r.id;
    j["anchor"] = r.anchor;
    j["max_residual"] = detail::number_or_null(r.max_residual);
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    if (r.slope) j["slope"] = detail::number_or_null(*r.slope);
    if (!r.error.empty()) j["error"] = r.error;
    checks.push_back(j);
  }
  return {{"meta", meta}, {"checks", checks}};
}

inline std::string to_csv(const SuiteReport& rep) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "id,anchor,max_residual,tol,pass,slope\n";
  for (const auto& r : rep.checks) {
    os << r.id << ',' << r.anchor << ',';
    if (std::isfinite(r.max_residual)) os << r.max_residual;
    os << ',' << r.tol << ',' << (r.pass ? "true" : "false") << ',';
    if (r.slope && std::isfinite(*r.slope)) os << *r.slope;
    os << '\n';
  }
  return os.str();
}

// Acceptance criteria as groups of check ids.
struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> prefixes;
};

inline std::vector<Criterion> criteria() {
  return {
      {1, "curvilinear and Cartesian operators agree at second order", {"comparison/"}},
      {2, "component formulas match the invariant operators", {"component/"}},
      {3, "rate-of-strain pathways agree", {"strain/"}},
      {4, "material derivatives agree with trajectory differences", {"material/"}},
      {5, "transport theorem converges at second order", {"leibniz/", "quadrature/"}},
      {6, "full system splits into tangential and normal parts", {"ns/tangential_forms", "ns/full_projection", "ns/full_normal"}},
      {7, "manufactured rigid rotation solves every system", {"manufactured/"}},
      {8, "thin-film metric and Christoffel limits hold", {"thin_film/"}},
      {9, "asymptotic expansions show the predicted order", {"expansion/"}},
      {10, "runs are deterministic and sabotage is detected", {}},
  };
}

inline bool criterion_pass(const SuiteReport& rep, const Criterion& c) {
  bool any = false;
  for (const auto& r : rep.checks)
    for (const auto& p : c.prefixes)
      if (r.id.compare(0, p.size(), p) == 0) {
        any = true;
        if (!r.pass) return false;
      }
  return any;
}

// Each sabotage toggle and the checks that must turn red under it.
struct SabotageCase {
  std::string fault;
  std::vector<std::string> must_fail;
};

inline std::vector<SabotageCase> sabotage_cases() {
  return {{"drop_transpose", {"comparison/tensor_divergence"}},
          {"flip_b", {"component/partial_vector"}},
          {"drop_pkappa", {"ns/full_normal", "manufactured/full"}}};
}

}  // namespace surfcalc::harness
