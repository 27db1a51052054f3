// Acceptance run: one pass/fail line per criterion, exit status 0 only when all ten hold.

#include <cstdio>
#include <string>
#include <vector>

#include "surfcalc/harness/suite.hpp"

using namespace surfcalc::harness;

namespace {

std::string failing(const SuiteReport& rep, const Criterion& c) {
  std::string out;
  for (const auto& r : rep.checks)
    for (const auto& p : c.prefixes)
      if (r.id.rfind(p, 0) == 0 && !r.pass) out += (out.empty() ? "" : ", ") + r.id;
  return out;
}

int count(const SuiteReport& rep, const Criterion& c) {
  int n = 0;
  for (const auto& r : rep.checks)
    for (const auto& p : c.prefixes) n += r.id.rfind(p, 0) == 0 ? 1 : 0;
  return n;
}

}  // namespace

int main() {
  const Config cfg;
  const SuiteReport rep = run_suite(cfg);
  bool all = true;

  for (const auto& c : criteria()) {
    if (c.prefixes.empty()) continue;
    bool ok = criterion_pass(rep, c);
    std::string note = std::to_string(count(rep, c)) + " checks";
    if (c.number == 1) {
      // The witness must exceed ten times the comparison tolerance.
      const CheckResult* w = rep.find("comparison/transpose_witness");
      const CheckResult* t = rep.find("comparison/tensor_divergence");
      const bool strong = w && t && w->max_residual > 10.0 * t->tol;
      ok = ok && strong;
      if (w) note += ", transpose witness gap " + std::to_string(w->max_residual);
    }
    const std::string bad = failing(rep, c);
    if (!bad.empty()) note += "; failing: " + bad;
    std::printf("criterion %2d: %s  %s (%s)\n", c.number, ok ? "PASS" : "FAIL", c.title.c_str(), note.c_str());
    all = all && ok;
  }

  // Determinism and sabotage detection.
  bool ok10 = to_json(rep).dump() == to_json(run_suite(cfg)).dump();
  std::string note = ok10 ? "repeat run byte-identical" : "repeat run differs";
  for (const auto& sc : sabotage_cases()) {
    Config s = cfg;
    s.sabotage = parse_faults({sc.fault});
    const SuiteReport bad = run_suite(s);
    for (const auto& id : sc.must_fail) {
      const CheckResult* r = bad.find(id);
      const bool red = r && !r->pass;
      ok10 = ok10 && red;
      note += std::string("; ") + sc.fault + " -> " + id + (red ? " red" : " STILL GREEN");
    }
  }
  std::printf("criterion 10: %s  runs are deterministic and sabotage is detected (%s)\n", ok10 ? "PASS" : "FAIL",
              note.c_str());
  all = all && ok10;
  return all ? 0 : 1;
}
