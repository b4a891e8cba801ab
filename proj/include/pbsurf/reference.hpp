#pragma once

#include <vector>

#include "pbsurf/levelsets.hpp"
#include "pbsurf/partition.hpp"

namespace pbsurf::reference {

/// Serial reference kernels. Straight-line implementations kept independent
/// of the OpenMP paths; tests compare against them and the benchmark tool
/// times both.

/// Brute-force max over all sign pairs (a, b) in {-1,1}^n x {-1,1}^n of
/// a^T B b, evaluated from scratch per pair. n <= 16.
double max_bilinear_sign_pairs(const double* b, int n);
double max_bilinear_sign_pairs(const std::vector<double>& b, int n);

/// Serial nu_c: per triangle, a dense bracket matrix is assembled from
/// pairwise brackets and the sign-pair maximum taken directly.
double nu_c(const PartitionOfUnity& p);

/// Serial L1 bracket sum via poisson_bracket_tri, no shared state.
double l1_bracket_sum(const PartitionOfUnity& p);

/// All-pairs segment crossing count (no triangle bucketing).
long long count_segment_crossings(const std::vector<CurveSegment>& a,
                                  const std::vector<CurveSegment>& b);

}  // namespace pbsurf::reference
