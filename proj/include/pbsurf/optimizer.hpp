#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbsurf/pbcalc.hpp"

namespace pbsurf {

struct OptimizerOptions {
  int iterations = 200;
  int restarts = 3;
  std::uint64_t seed = 0;
  double eta0 = 0.25;   // step scale; steps are eta0/sqrt(k) times the
                        // max-normalized subgradient
  int margin = 2;
  double sharpness = 2.0;
};

/// pb(U) is reported as a bracket [theoretical lower bound, optimized nu_c
/// upper estimate]; the infimum itself is never claimed.
struct PbEstimate {
  PartitionOfUnity best;
  double nu_c_value = 0;
  std::string lower_bound_kind;  // "two_set_subcover_zero" | "l1_floor_disc_cover" | "none"
  double lower_bound = 0;
  int kappa_value = 0;
  std::vector<double> trace;  // best value so far, one entry per iterate
  bool budget_exhausted = false;
};

/// Projected subgradient descent of nu_c over partitions subordinate to c.
/// At each iterate the active triangle and sign vectors are identified and
/// the step flows through the PL gradient maps; iterates are projected back
/// to the feasible set, and the best feasible partition ever seen is
/// returned. Deterministic given opts.seed; restarts run independently.
PbEstimate minimize_pb(const Cover& c, const OptimizerOptions& opts);

}  // namespace pbsurf
