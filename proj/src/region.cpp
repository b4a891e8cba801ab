#include "pbsurf/region.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "pbsurf/setcover.hpp"

namespace pbsurf {

int TriRegion::size() const {
  int n = 0;
  for (auto m : member) n += m;
  return n;
}

std::vector<int> TriRegion::indices() const {
  std::vector<int> out;
  for (int t = 0; t < static_cast<int>(member.size()); ++t)
    if (member[t]) out.push_back(t);
  return out;
}

TriRegion TriRegion::complement() const {
  TriRegion r = *this;
  for (auto& m : r.member) m = m ? 0 : 1;
  return r;
}

TriRegion TriRegion::unite(const TriRegion& o) const {
  TriRegion r = *this;
  for (size_t i = 0; i < member.size(); ++i) r.member[i] = member[i] | o.member[i];
  return r;
}

TriRegion TriRegion::intersect(const TriRegion& o) const {
  TriRegion r = *this;
  for (size_t i = 0; i < member.size(); ++i) r.member[i] = member[i] & o.member[i];
  return r;
}

bool TriRegion::subset_of(const TriRegion& o) const {
  for (size_t i = 0; i < member.size(); ++i)
    if (member[i] && !o.member[i]) return false;
  return true;
}

bool TriRegion::same_as(const TriRegion& o) const { return member == o.member; }

TriRegion region_from_predicate(const Mesh& mesh,
                                const std::function<bool(const Vec3&)>& pred,
                                PredicateMode mode) {
  TriRegion r(mesh);
  const int need = mode == PredicateMode::Strict ? 3 : 2;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    int hits = 0;
    for (int k = 0; k < 3; ++k)
      if (pred(mesh.vertices[mesh.tris[t][k]])) ++hits;
    if (hits >= need) r.add(t);
  }
  return r;
}

double region_area(const TriRegion& r) {
  double a = 0;
  for (int t = 0; t < static_cast<int>(r.member.size()); ++t)
    if (r.member[t]) a += r.mesh->tri_area[t];
  return a;
}

bool is_cover(const Cover& c) {
  if (c.sets.empty()) return false;
  const int nt = c.mesh->tri_count();
  for (int t = 0; t < nt; ++t) {
    bool hit = false;
    for (const auto& s : c.sets)
      if (s.region.contains(t)) { hit = true; break; }
    if (!hit) return false;
  }
  return true;
}

namespace {

std::vector<std::uint32_t> coverage_masks(const Cover& c) {
  const int nt = c.mesh->tri_count();
  std::vector<std::uint32_t> masks(nt, 0);
  for (int i = 0; i < c.size(); ++i)
    for (int t = 0; t < nt; ++t)
      if (c.sets[i].region.contains(t)) masks[t] |= 1u << i;
  return masks;
}

}  // namespace

KappaResult kappa(const Cover& c) {
  if (c.size() > 24) throw std::invalid_argument("kappa: more than 24 sets (exact solver guard)");
  const auto masks = coverage_masks(c);
  for (auto m : masks)
    if (m == 0) throw std::invalid_argument("kappa: family is not a cover");
  auto witness = min_set_cover(masks, c.size());
  return {static_cast<int>(witness.size()), std::move(witness)};
}

EssentialResult essential_sets(const Cover& c) {
  const auto masks = coverage_masks(c);
  for (auto m : masks)
    if (m == 0) throw std::invalid_argument("essential_sets: family is not a cover");
  EssentialResult res;
  for (int i = 0; i < c.size(); ++i) {
    const std::uint32_t bit = 1u << i;
    for (int t = 0; t < static_cast<int>(masks.size()); ++t) {
      if (masks[t] == bit) {  // privately covered triangle
        res.essential.push_back(i);
        res.witness_triangle.push_back(t);
        break;
      }
    }
  }
  return res;
}

std::vector<TriRegion> region_components(const TriRegion& r) {
  const Mesh& m = *r.mesh;
  std::vector<TriRegion> comps;
  std::vector<std::uint8_t> seen(m.tri_count(), 0);
  for (int start = 0; start < m.tri_count(); ++start) {
    if (!r.contains(start) || seen[start]) continue;
    TriRegion comp(m);
    std::vector<int> stack{start};
    seen[start] = 1;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      comp.add(t);
      for (int k = 0; k < 3; ++k) {
        const int nb = m.tri_neighbors[t][k];
        if (r.contains(nb) && !seen[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

bool is_topological_disc(const TriRegion& r) {
  if (r.empty()) throw std::invalid_argument("is_topological_disc: empty region");
  const Mesh& m = *r.mesh;

  if (region_components(r).size() != 1) return false;

  // Closed sub-complex counts.
  std::set<int> verts;
  std::set<int> edges_used;
  int faces = 0;
  std::map<int, int> edge_face_count;
  for (int t = 0; t < m.tri_count(); ++t) {
    if (!r.contains(t)) continue;
    ++faces;
    for (int k = 0; k < 3; ++k) {
      verts.insert(m.tris[t][k]);
      edges_used.insert(m.tri_edges[t][k]);
      ++edge_face_count[m.tri_edges[t][k]];
    }
  }
  const int chi = static_cast<int>(verts.size()) - static_cast<int>(edges_used.size()) + faces;
  if (chi != 1) return false;

  // Boundary must be one simple cycle: every boundary vertex has exactly two
  // incident boundary edges and the boundary edge graph is connected.
  std::vector<int> boundary_edges;
  for (const auto& [e, cnt] : edge_face_count)
    if (cnt == 1) boundary_edges.push_back(e);
  if (boundary_edges.empty()) return false;

  std::map<int, std::vector<int>> vert_bedges;
  for (int e : boundary_edges) {
    vert_bedges[m.edges[e][0]].push_back(e);
    vert_bedges[m.edges[e][1]].push_back(e);
  }
  for (const auto& [v, es] : vert_bedges)
    if (es.size() != 2) return false;
  // Walk the cycle from the first boundary edge.
  std::set<int> visited;
  int cur = boundary_edges.front();
  int enter_v = m.edges[cur][0];
  while (visited.insert(cur).second) {
    const int next_v = m.edges[cur][0] == enter_v ? m.edges[cur][1] : m.edges[cur][0];
    const auto& es = vert_bedges[next_v];
    cur = es[0] == cur ? es[1] : es[0];
    enter_v = next_v;
  }
  return visited.size() == boundary_edges.size();
}

}  // namespace pbsurf
