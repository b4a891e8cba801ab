#pragma once

#include <string>
#include <vector>

#include "pbsurf/field.hpp"
#include "pbsurf/region.hpp"

namespace pbsurf {

/// Indexed family {f_i} with f_i >= 0, sum_i f_i = 1 at every vertex, and
/// f_i supported inside its per-set support region, whose closed star lies
/// inside the covering set U_i.
///
/// All vertex values are dyadic multiples of 2^-36. Consequences used
/// throughout: vertex sums equal 1 exactly, edge differences are exact, and
/// a two-set partition is an exact complement pair, so its bracket vanishes
/// bit-for-bit.
struct PartitionOfUnity {
  const Mesh* mesh = nullptr;
  Cover cover;                       // owning copy
  std::vector<ScalarField> fields;   // f_1..f_N
  std::vector<TriRegion> supports;   // strictly inside the matching cover set

  int size() const { return static_cast<int>(fields.size()); }
};

/// Values snap to this grid during normalization.
inline constexpr int kSnapBits = 36;
double snap_floor(double x);

/// Triangles of u whose edge-graph distance to the complement exceeds
/// `margin` (margin 0 returns u itself).
TriRegion support_region(const TriRegion& u, int margin);

struct PartitionViolations {
  double negativity = 0;      // max over vertices of max(0, -f_i)
  double sum_error = 0;       // max over vertices of |sum_i f_i - 1|
  double support_leak = 0;    // max |f_i| at vertices not interior to support i
  int star_violations = 0;    // closed-star triangles of support i outside U_i
  bool ok(double tol = 1e-9) const {
    return negativity <= tol && sum_error <= tol && support_leak <= tol && star_violations == 0;
  }
};

PartitionViolations validate_partition(const PartitionOfUnity& p);

/// Feasibility of a family of supports: every triangle covered and every
/// vertex interior to at least one support.
struct SupportFeasibility {
  bool feasible = true;
  std::vector<int> uncovered_triangles;
  std::vector<int> uncovered_vertices;
};
SupportFeasibility check_supports(const Mesh& mesh, const std::vector<TriRegion>& supports);

/// Vertexwise projection onto the feasible set: zero outside supports,
/// clamp negatives, renormalize to exact sum one on the dyadic grid (the
/// largest entry absorbs the remainder; all-zero vertices split uniformly
/// with the lowest index taking the remainder). Exactly idempotent.
/// Throws std::invalid_argument when a vertex is interior to no support.
PartitionOfUnity project_to_feasible(const Mesh& mesh, const Cover& cover,
                                     const std::vector<std::vector<double>>& raw,
                                     const std::vector<TriRegion>& supports);

/// Bump partition subordinate to c: per set, the indicator of the shrunken
/// support is smoothed by `margin` rounds of vertex-neighbour averaging,
/// raised to `sharpness`, clamped to the support, then normalized.
/// Throws std::runtime_error (listing what became uncovered) when the
/// shrunken supports are infeasible.
PartitionOfUnity build_bump_partition(const Cover& c, int margin, double sharpness);

/// Writes "vertex,f_1,...,f_N" rows for external inspection.
void export_partition_csv(const PartitionOfUnity& p, const std::string& path);

}  // namespace pbsurf
