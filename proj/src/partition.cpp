#include "pbsurf/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace pbsurf {

double snap_floor(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  return std::ldexp(std::floor(std::ldexp(x, kSnapBits)), -kSnapBits);
}

TriRegion support_region(const TriRegion& u, int margin) {
  const Mesh& m = *u.mesh;
  // Multi-source BFS from the complement; dist 1 = adjacent to complement.
  std::vector<int> dist(m.tri_count(), -1);
  std::queue<int> q;
  for (int t = 0; t < m.tri_count(); ++t)
    if (!u.contains(t)) {
      dist[t] = 0;
      q.push(t);
    }
  while (!q.empty()) {
    const int t = q.front();
    q.pop();
    for (int k = 0; k < 3; ++k) {
      const int nb = m.tri_neighbors[t][k];
      if (dist[nb] == -1) {
        dist[nb] = dist[t] + 1;
        q.push(nb);
      }
    }
  }
  TriRegion r(m);
  for (int t = 0; t < m.tri_count(); ++t)
    if (u.contains(t) && (dist[t] == -1 || dist[t] > margin)) r.add(t);
  return r;
}

namespace {

// Vertex is interior to a region iff every incident triangle belongs to it.
std::vector<std::uint8_t> interior_vertices(const TriRegion& r) {
  const Mesh& m = *r.mesh;
  std::vector<std::uint8_t> interior(m.vertex_count(), 0);
  for (int v = 0; v < m.vertex_count(); ++v) {
    bool all = !m.vertex_tris[v].empty();
    for (int t : m.vertex_tris[v])
      if (!r.contains(t)) { all = false; break; }
    interior[v] = all ? 1 : 0;
  }
  return interior;
}

TriRegion closed_star(const TriRegion& r) {
  const Mesh& m = *r.mesh;
  TriRegion star(m);
  for (int t = 0; t < m.tri_count(); ++t) {
    if (!r.contains(t)) continue;
    star.add(t);
    for (int k = 0; k < 3; ++k)
      for (int nb : m.vertex_tris[m.tris[t][k]]) star.add(nb);
  }
  return star;
}

}  // namespace

SupportFeasibility check_supports(const Mesh& mesh, const std::vector<TriRegion>& supports) {
  SupportFeasibility out;
  for (int t = 0; t < mesh.tri_count(); ++t) {
    bool hit = false;
    for (const auto& s : supports)
      if (s.contains(t)) { hit = true; break; }
    if (!hit) out.uncovered_triangles.push_back(t);
  }
  std::vector<std::vector<std::uint8_t>> interiors;
  interiors.reserve(supports.size());
  for (const auto& s : supports) interiors.push_back(interior_vertices(s));
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    bool hit = false;
    for (const auto& iv : interiors)
      if (iv[v]) { hit = true; break; }
    if (!hit) out.uncovered_vertices.push_back(v);
  }
  out.feasible = out.uncovered_triangles.empty() && out.uncovered_vertices.empty();
  return out;
}

PartitionOfUnity project_to_feasible(const Mesh& mesh, const Cover& cover,
                                     const std::vector<std::vector<double>>& raw,
                                     const std::vector<TriRegion>& supports) {
  const int n = static_cast<int>(raw.size());
  if (n == 0 || n != static_cast<int>(supports.size()))
    throw std::invalid_argument("project_to_feasible: field/support count mismatch");

  std::vector<std::vector<std::uint8_t>> interiors;
  interiors.reserve(supports.size());
  for (const auto& s : supports) interiors.push_back(interior_vertices(s));

  PartitionOfUnity p;
  p.mesh = &mesh;
  p.cover = cover;
  p.supports = supports;
  p.fields.assign(n, ScalarField(mesh));

  std::vector<double> w(n);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    int allowed = 0;
    double total = 0;
    for (int i = 0; i < n; ++i) {
      w[i] = interiors[i][v] ? std::max(raw[i][v], 0.0) : 0.0;
      if (interiors[i][v]) ++allowed;
      total += w[i];
    }
    if (allowed == 0)
      throw std::invalid_argument("project_to_feasible: vertex " + std::to_string(v) +
                                  " covered by no support");
    if (total == 0) {
      // Uniform over covering sets; lowest index takes the remainder.
      const double q = snap_floor(1.0 / allowed);
      double rest = 1.0;
      int lowest = -1;
      for (int i = 0; i < n; ++i) {
        if (!interiors[i][v]) continue;
        if (lowest < 0) { lowest = i; continue; }
        p.fields[i][v] = q;
        rest -= q;  // exact: dyadic values, small exponent range
      }
      p.fields[lowest][v] = rest;
      continue;
    }
    int largest = 0;
    double largest_val = -1;
    for (int i = 0; i < n; ++i)
      if (w[i] > largest_val) { largest_val = w[i]; largest = i; }
    double rest = 1.0;
    for (int i = 0; i < n; ++i) {
      if (i == largest) continue;
      const double snapped = snap_floor(w[i] / total);
      p.fields[i][v] = snapped;
      rest -= snapped;  // exact dyadic arithmetic
    }
    p.fields[largest][v] = rest;
  }
  for (auto& f : p.fields) f.mesh = &mesh;
  return p;
}

PartitionOfUnity build_bump_partition(const Cover& c, int margin, double sharpness) {
  if (!(sharpness > 0)) throw std::invalid_argument("build_bump_partition: sharpness must be positive");
  const Mesh& mesh = *c.mesh;
  const int n = c.size();

  std::vector<TriRegion> supports;
  supports.reserve(n);
  for (const auto& s : c.sets) {
    TriRegion shr = support_region(s.region, margin);
    // Keep the closed-star subordination invariant: drop triangles whose
    // star leaves the covering set (can happen around high-valence fans).
    TriRegion filtered(mesh);
    for (int t = 0; t < mesh.tri_count(); ++t) {
      if (!shr.contains(t)) continue;
      bool star_inside = true;
      for (int k = 0; k < 3 && star_inside; ++k)
        for (int nb : mesh.vertex_tris[mesh.tris[t][k]])
          if (!s.region.contains(nb)) { star_inside = false; break; }
      if (star_inside) filtered.add(t);
    }
    supports.push_back(std::move(filtered));
  }

  const auto feas = check_supports(mesh, supports);
  if (!feas.feasible) {
    std::ostringstream msg;
    msg << "build_bump_partition: shrunken supports (margin " << margin << ") fail to cover;";
    msg << " uncovered triangles:";
    for (size_t i = 0; i < feas.uncovered_triangles.size() && i < 8; ++i)
      msg << " " << feas.uncovered_triangles[i];
    msg << (feas.uncovered_triangles.size() > 8 ? " ..." : "");
    msg << " uncovered vertices:";
    for (size_t i = 0; i < feas.uncovered_vertices.size() && i < 8; ++i)
      msg << " " << feas.uncovered_vertices[i];
    msg << (feas.uncovered_vertices.size() > 8 ? " ..." : "");
    throw std::runtime_error(msg.str());
  }

  std::vector<std::vector<double>> raw(n);
  for (int i = 0; i < n; ++i) {
    const auto interior = interior_vertices(supports[i]);
    std::vector<double> b(mesh.vertex_count(), 0.0);
    for (int v = 0; v < mesh.vertex_count(); ++v)
      b[v] = interior[v] ? 1.0 : 0.0;
    for (int round = 0; round < margin; ++round) {
      std::vector<double> next(mesh.vertex_count(), 0.0);
      for (int v = 0; v < mesh.vertex_count(); ++v) {
        double acc = b[v];
        for (int nb : mesh.vertex_adj[v]) acc += b[nb];
        next[v] = acc / (1.0 + mesh.vertex_adj[v].size());
      }
      b = std::move(next);
    }
    for (int v = 0; v < mesh.vertex_count(); ++v)
      b[v] = interior[v] ? std::pow(b[v], sharpness) : 0.0;
    raw[i] = std::move(b);
  }
  return project_to_feasible(mesh, c, raw, supports);
}

PartitionViolations validate_partition(const PartitionOfUnity& p) {
  const Mesh& mesh = *p.mesh;
  PartitionViolations out;
  const int n = p.size();

  for (int v = 0; v < mesh.vertex_count(); ++v) {
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      const double x = p.fields[i][v];
      sum += x;
      out.negativity = std::max(out.negativity, -x);
    }
    out.sum_error = std::max(out.sum_error, std::abs(sum - 1.0));
  }

  for (int i = 0; i < n; ++i) {
    const auto interior = interior_vertices(p.supports[i]);
    for (int v = 0; v < mesh.vertex_count(); ++v)
      if (!interior[v])
        out.support_leak = std::max(out.support_leak, std::abs(p.fields[i][v]));
    const TriRegion star = closed_star(p.supports[i]);
    for (int t = 0; t < mesh.tri_count(); ++t)
      if (star.contains(t) && !p.cover.sets[i].region.contains(t)) ++out.star_violations;
  }
  return out;
}

void export_partition_csv(const PartitionOfUnity& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "vertex";
  for (int i = 0; i < p.size(); ++i) out << ",f_" << (i + 1);
  out << "\n";
  char buf[32];
  for (int v = 0; v < p.mesh->vertex_count(); ++v) {
    out << v;
    for (int i = 0; i < p.size(); ++i) {
      std::snprintf(buf, sizeof buf, ",%.17g", p.fields[i][v]);
      out << buf;
    }
    out << "\n";
  }
}

}  // namespace pbsurf
