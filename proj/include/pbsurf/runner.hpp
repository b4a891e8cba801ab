#pragma once

#include <string>

#include "pbsurf/scenario.hpp"

namespace pbsurf {

inline constexpr const char* kToolVersion = "pbsurf 1.0.0";

enum class RunStatus { Pass = 0, Error = 1, Inconclusive = 2 };

struct RunOutcome {
  RunStatus status = RunStatus::Pass;
  std::string report_json;  // pretty-printed, deterministic
  std::string error;        // set when status == Error
};

/// Executes the scenario pipeline (mesh -> cover -> partition -> task),
/// writes report.json plus any configured CSV/SVG side outputs into
/// out_dir, and returns the outcome. Checks carry pass/fail; status is
/// Pass only when every asserted check passed.
RunOutcome run_scenario(const Scenario& sc, const std::string& out_dir, bool quiet);

}  // namespace pbsurf
