#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbsurf/levelsets.hpp"
#include "pbsurf/partition.hpp"

namespace pbsurf {

/// Per field i: m_i intervals [(k-1)/L, k/L], k = 1..m_i, with
/// m_i/L > max f_i so the top interval's levels are vacuous. The product of
/// all intervals is the sampling cube; each interval carries the normalized
/// measure L ds.
struct IntervalGrid {
  const PartitionOfUnity* partition = nullptr;
  int L = 0;
  std::vector<int> m;

  int total_levels() const {
    int n = 0;
    for (int x : m) n += x;
    return n;
  }
};

IntervalGrid make_interval_grid(const PartitionOfUnity& p, int L);

/// thresholds[i][k-1] = s_{i,k}, one uniform draw per interval, rejecting
/// (re-drawing) values within 1e-9 of any vertex value of f_i.
/// Deterministic per seed.
std::vector<std::vector<double>> sample_thresholds(const IntervalGrid& grid, std::uint64_t seed);

/// The family {f_i > s_{i,k}} as a cover with defining fields and
/// thresholds attached. Throws std::runtime_error if the triangle-region
/// family fails to cover (mesh too coarse for the chosen L).
Cover levelset_cover(const PartitionOfUnity& p, const IntervalGrid& grid,
                     const std::vector<std::vector<double>>& thresholds);

/// Union of boundary pieces in permutation order: piece k is the level
/// curve of set alpha[k] clipped to the closed complements of all earlier
/// sets. Clipping splits segments at predicate sign changes.
struct PermCurveSet {
  const Mesh* mesh = nullptr;
  std::vector<int> perm;
  std::vector<std::vector<CurveSegment>> pieces;  // per position k

  std::vector<CurveSegment> all_segments() const;
  bool empty() const;
};

PermCurveSet gamma_curves(const Cover& c, const std::vector<int>& perm);

/// Transversal crossings between two clipped families.
/// Throws DegeneracyError; callers re-perturb thresholds.
long long curve_intersection_count(const PermCurveSet& a, const PermCurveSet& b);

/// Total transversal crossings between the boundary families of two
/// threshold draws (sum over all level pairs; crossing points are distinct
/// for generic draws).
long long total_boundary_crossings(const PartitionOfUnity& p, const IntervalGrid& grid,
                                   const std::vector<std::vector<double>>& s,
                                   const std::vector<std::vector<double>>& t);

/// Crossing-floor check for one threshold draw pair (CLI task "lemma34"):
/// verifies the hypotheses (kappa >= 3 disc envelopes, multiplicity floor),
/// counts the boundary crossings against (L+1-|I|)^2, and samples random
/// permutation pairs whose clipped unions must cross at least once.
struct CrossingFloorReport {
  bool hypotheses_ok = false;
  std::string hypothesis_failure;
  int kappa_envelopes = 0;
  int multiplicity_floor = 0;      // L - |I|
  int min_multiplicity_s = 0;      // min over vertices, s draw
  int min_multiplicity_t = 0;
  long long total_crossings = 0;
  long long required_crossings = 0;  // (L+1-|I|)^2
  bool floor_holds = false;
  int perm_samples = 0;
  int perm_pairs_nonempty = 0;
  long long perm_min_crossings = 0;
  double perm_mean_crossings = 0;
  bool perm_positive_holds = false;  // every nonempty sampled pair crosses
  int retries = 0;
};

CrossingFloorReport boundary_crossing_check(const PartitionOfUnity& p, int L,
                                            std::uint64_t seed, int n_perm_samples);

/// Monte-Carlo averaging over threshold draws (CLI task "thm14-averaging"):
/// estimates E[#crossings]/L^2, the implied floor for the L1 bracket sum,
/// and checks the sandwich against the directly computed value.
struct AveragingReport {
  bool applicable = false;  // kappa >= 3 gate
  std::string gate_reason;
  int samples = 0;
  int L = 0;
  std::vector<long long> counts;
  double mean_crossings = 0;
  double sigma_mc = 0;            // std error of the mean, crossing units
  double implied_lower_bound = 0;  // mean / L^2
  double floor_value = 0;          // (L+1-|I|)^2 / L^2
  double l1_value = 0;
  bool lower_ok = false;   // implied >= floor - 3 sigma/L^2
  bool upper_ok = false;   // implied <= l1 * (1 + 3 sigma_rel)
  int degenerate_retries = 0;
};

AveragingReport averaging_experiment(const PartitionOfUnity& p, int L, int n_samples,
                                     std::uint64_t seed);

}  // namespace pbsurf
