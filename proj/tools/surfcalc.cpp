// surfcalc: command-line front end for the verification suite.
//
// Exit status: 0 when every check passes, 1 when any fails, 2 on a configuration error.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "surfcalc/harness/suite.hpp"

namespace {

using namespace surfcalc;
using namespace surfcalc::harness;
using nlohmann::json;

constexpr int kPass = 0, kFail = 1, kConfig = 2;

struct Common {
  std::string config_path;
  std::vector<std::string> sabotage;
  int threads = -1;
};

Config load(const Common& c) {
  Config cfg = c.config_path.empty() ? Config{} : load_config(c.config_path);
  const Faults extra = parse_faults(c.sabotage);
  cfg.sabotage.drop_transpose = cfg.sabotage.drop_transpose || extra.drop_transpose;
  cfg.sabotage.flip_b = cfg.sabotage.flip_b || extra.flip_b;
  cfg.sabotage.drop_pkappa = cfg.sabotage.drop_pkappa || extra.drop_pkappa;
  if (c.threads >= 0) cfg.threads = c.threads;
  return cfg;
}

std::string csv_path(const std::string& json_path) {
  std::filesystem::path p(json_path);
  p.replace_extension(".csv");
  return p.string();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << body;
}

void write_reports(const SuiteReport& rep) {
  write_file(rep.cfg.output_path, to_json(rep).dump(2) + "\n");
  write_file(csv_path(rep.cfg.output_path), to_csv(rep));
}

void print_line(const CheckResult& r) {
  std::cout << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(44) << r.id << std::right << std::scientific
            << std::setprecision(3) << " residual " << r.max_residual << "  tol " << r.tol;
  if (r.slope) std::cout << std::fixed << std::setprecision(3) << "  slope " << *r.slope;
  if (!r.error.empty()) std::cout << "  error: " << r.error;
  std::cout << std::defaultfloat << "\n";
}

int verify(const Common& c) {
  const SuiteReport rep = run_suite(load(c));
  write_reports(rep);
  int failed = 0;
  for (const auto& r : rep.checks) {
    print_line(r);
    failed += r.pass ? 0 : 1;
  }
  std::cout << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed; report written to "
            << rep.cfg.output_path << "\n";
  return failed == 0 ? kPass : kFail;
}

int report(const Common& c, const std::string& format) {
  const SuiteReport rep = run_suite(load(c));
  write_reports(rep);
  std::cout << (format == "json" ? to_json(rep).dump(2) + "\n" : to_csv(rep));
  return rep.all_pass() ? kPass : kFail;
}

int residual_cmd(const Common& c, const std::string& system, const std::string& state, double tol) {
  const Config cfg = load(c);
  const System sys = parse_system(system);
  const FlowState st = states::by_name(state);
  std::mt19937_64 rng = check_rng(cfg.seed, "residual/" + system + "/" + state);
  std::uniform_real_distribution<double> du(st.sample_region.lo[0], st.sample_region.hi[0]),
      dv(st.sample_region.lo[1], st.sample_region.hi[1]);
  std::vector<std::array<double, 2>> pts(cfg.points);
  for (auto& p : pts) p = {du(rng), dv(rng)};
  const SystemResidual r = evaluate_system(sys, st, pts, cfg.quadrature.order_u, cfg.quadrature.order_v, cfg.sabotage);
  const bool pass = r.max <= tol;
  json out;
  out["system"] = to_string(sys);
  out["state"] = st.name;
  out["surface"] = st.chart->name();
  out["t"] = st.t;
  out["points"] = cfg.points;
  out["seed"] = cfg.seed;
  out["quadrature"] = {{"order_u", cfg.quadrature.order_u}, {"order_v", cfg.quadrature.order_v}};
  out["max_residual"] = r.max;
  out["l2_residual"] = r.l2;
  out["tol"] = tol;
  out["pass"] = pass;
  std::cout << out.dump(2) << "\n";
  return pass ? kPass : kFail;
}

int converge(const Common& c, const std::string& op) {
  const Config cfg = load(c);
  const FieldSet fields = select_fields(cfg.fields);
  for (const auto& d : registry()) {
    if (d.id != op) continue;
    const CheckResult r = run_check(d, cfg, fields);
    std::cout << "step,error\n" << std::setprecision(17);
    for (const auto& [h, e] : r.series) std::cout << h << "," << e << "\n";
    std::cout << std::setprecision(6);
    if (r.slope) std::cout << "# fitted slope " << *r.slope << "\n";
    else std::cout << "# no convergence series for this check\n";
    if (r.slope_window)
      std::cout << "# expected window [" << (*r.slope_window)[0] << ", " << (*r.slope_window)[1] << "]\n";
    print_line(r);
    return r.pass ? kPass : kFail;
  }
  throw ConfigError("unknown check '" + op + "'; see 'surfcalc list'");
}

int list() {
  std::cout << "surfaces:\n";
  for (const auto& e : catalog()) std::cout << "  " << std::left << std::setw(22) << e.id << e.description << "\n";
  std::cout << "fields:\n";
  for (const auto& f : field_names()) std::cout << "  " << f << "\n";
  std::cout << "states:\n";
  for (const auto& s : states::names()) std::cout << "  " << s << "\n";
  std::cout << "systems:\n";
  for (const auto& [k, v] : system_names()) std::cout << "  " << v << "\n";
  std::cout << "checks:\n";
  for (const auto& d : registry()) std::cout << "  " << std::left << std::setw(44) << d.id << d.anchor << "\n";
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suite for evolving-surface calculus"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--sabotage", common.sabotage, "inject a defect: drop_transpose, flip_b, drop_pkappa");
    sub->add_option("--threads", common.threads, "worker threads (0: one per core)")->check(CLI::NonNegativeNumber);
  };

  auto* verify_cmd = app.add_subcommand("verify", "run the full suite and write JSON and CSV reports");
  add_common(verify_cmd);

  std::string system, state;
  double tol = 1e-9;
  auto* residual = app.add_subcommand("residual", "evaluate an equation system on a catalog state");
  residual->add_option("--system", system, "system id")->required();
  residual->add_option("--state", state, "state name")->required();
  residual->add_option("--tol", tol, "pass threshold on the maximum pointwise residual");
  add_common(residual);

  std::string op;
  auto* conv = app.add_subcommand("converge", "print the convergence series of one check");
  conv->add_option("--op", op, "check id")->required();
  add_common(conv);

  app.add_subcommand("list", "list surfaces, fields, states, systems and checks");

  std::string format = "json";
  auto* rep = app.add_subcommand("report", "run the suite and print the report");
  rep->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  add_common(rep);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  try {
    if (*verify_cmd) return verify(common);
    if (*residual) return residual_cmd(common, system, state, tol);
    if (*conv) return converge(common, op);
    if (*rep) return report(common, format);
    return list();
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
