#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "su11/config.hpp"

namespace su11::validation {

struct Check {
  std::string what;
  bool passed = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string anchor;  // analytic reference the criterion is measured against
  std::vector<Check> checks;
  std::string error;   // set when the criterion threw
  double seconds = 0.0;

  bool passed() const;
};

struct Options {
  RunConfig base;  // device under test; criteria derive their variants from it
  std::function<void(const std::string&)> progress;
};

inline constexpr double kSuiteBudgetSeconds = 900.0;

CriterionResult low_gain_floor(const Options& opt);          // 1
CriterionResult gain_trend(const Options& opt);         // 2
CriterionResult interference_contrast(const Options& opt);   // 3
CriterionResult photon_number_anchors(const Options& opt);   // 4
CriterionResult filtering_improvement(const Options& opt);   // 5
CriterionResult seeding_no_gain(const Options& opt);         // 6
CriterionResult single_photon_snl(const Options& opt);       // 7
CriterionResult oracle_equivalence(const Options& opt);      // 8
CriterionResult numerical_hygiene(const Options& opt);       // 9

// Runs the selected criteria (all when empty) in order. The suite wall time is
// charged to criterion 9 when it is selected.
std::vector<CriterionResult> run_acceptance(const Options& opt, std::span<const int> only = {});

// One status line, then the measured values indented below it.
std::string format_result(const CriterionResult& r, bool details = true);
bool all_passed(std::span<const CriterionResult> results);

}  // namespace su11::validation
