#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "su11/acceptance.hpp"

namespace su11::validation {

bool CriterionResult::passed() const {
  return error.empty() && !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<CriterionResult> run_acceptance(const Options& opt, std::span<const int> only) {
  using Fn = CriterionResult (*)(const Options&);
  static constexpr Fn table[] = {low_gain_floor,        gain_trend, interference_contrast,
                                 photon_number_anchors, filtering_improvement, seeding_no_gain,
                                 single_photon_snl,     oracle_equivalence,    numerical_hygiene};
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 9; ++id) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    out.push_back(table[id - 1](opt));
    if (opt.progress) opt.progress(format_result(out.back(), false));
  }
  if (!out.empty() && out.back().id == 9) {
    double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[160];
    std::snprintf(buf, sizeof buf, "suite wall time %.1f s for %zu criteria (limit %.0f s)", total, out.size(),
                  kSuiteBudgetSeconds);
    out.back().checks.push_back({buf, total < kSuiteBudgetSeconds});
  }
  return out;
}

std::string format_result(const CriterionResult& r, bool details) {
  std::ostringstream os;
  char head[256];
  std::snprintf(head, sizeof head, "[%s] criterion %d: %s (%.1f s)", r.passed() ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds);
  os << head;
  if (!details) return os.str();
  os << "\n    anchor: " << r.anchor;
  for (const auto& c : r.checks) os << "\n    " << (c.passed ? "ok   " : "FAIL ") << c.what;
  if (!r.error.empty()) os << "\n    error: " << r.error;
  return os.str();
}

bool all_passed(std::span<const CriterionResult> results) {
  return !results.empty() && std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed(); });
}

}  // namespace su11::validation
