#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pbsurf/field.hpp"
#include "pbsurf/mesh.hpp"

namespace pbsurf {

/// Open region on a mesh, represented by the set of triangles whose
/// interior-union it is.
struct TriRegion {
  const Mesh* mesh = nullptr;
  std::vector<std::uint8_t> member;  // one flag per triangle

  TriRegion() = default;
  explicit TriRegion(const Mesh& m, bool full = false)
      : mesh(&m), member(m.tri_count(), full ? 1 : 0) {}

  bool contains(int t) const { return member[t] != 0; }
  void add(int t) { member[t] = 1; }
  void remove(int t) { member[t] = 0; }
  int size() const;
  bool empty() const { return size() == 0; }
  std::vector<int> indices() const;

  TriRegion complement() const;
  TriRegion unite(const TriRegion& o) const;
  TriRegion intersect(const TriRegion& o) const;
  bool subset_of(const TriRegion& o) const;
  bool same_as(const TriRegion& o) const;
};

/// Named family of regions on one mesh; sets built as super-level regions
/// carry their defining field and threshold.
struct CoverSet {
  std::string name;
  TriRegion region;
  std::optional<ScalarField> defining_field;
  double threshold = 0;
};

struct Cover {
  const Mesh* mesh = nullptr;
  std::vector<CoverSet> sets;

  int size() const { return static_cast<int>(sets.size()); }
};

enum class PredicateMode { Strict, Majority };

/// Triangles whose vertices satisfy pred: all three (Strict) or at least
/// two (Majority).
TriRegion region_from_predicate(const Mesh& mesh,
                                const std::function<bool(const Vec3&)>& pred,
                                PredicateMode mode);

double region_area(const TriRegion& r);

/// True iff the union of the cover's triangle sets is the whole mesh.
bool is_cover(const Cover& c);

/// Minimum cardinality of a subfamily that still covers, with the
/// lexicographically smallest witness. Exact; |c| <= 24.
struct KappaResult {
  int kappa;
  std::vector<int> witness;  // indices of one smallest subcover
};
KappaResult kappa(const Cover& c);

/// Essential sets: those whose removal breaks the cover. Returns indices,
/// and for each a witness triangle privately covered by that set.
struct EssentialResult {
  std::vector<int> essential;
  std::vector<int> witness_triangle;  // parallel to `essential`
};
EssentialResult essential_sets(const Cover& c);

/// Connected components in the shared-edge adjacency graph, ordered by
/// smallest member triangle index.
std::vector<TriRegion> region_components(const TriRegion& r);

/// True iff r is connected, the closed sub-complex has Euler characteristic
/// one and the boundary is a single edge cycle.
bool is_topological_disc(const TriRegion& r);

}  // namespace pbsurf
