#include "pbsurf/levelsets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "pbsurf/parallel.hpp"
#include "pbsurf/rng.hpp"

namespace pbsurf {

int LevelCurve::segment_count() const {
  int n = 0;
  for (const auto& l : loops) n += static_cast<int>(l.points.size());
  return n;
}

namespace {

Vec3 edge_point_position(const Mesh& m, int tri, int edge, double theta) {
  const int va = m.edges[edge][0], vb = m.edges[edge][1];
  int slot_a = -1, slot_b = -1;
  for (int k = 0; k < 3; ++k) {
    if (m.tris[tri][k] == va) slot_a = k;
    if (m.tris[tri][k] == vb) slot_b = k;
  }
  return m.corners[tri][slot_a] * (1.0 - theta) + m.corners[tri][slot_b] * theta;
}

Vec2 edge_point_bary(const Mesh& m, int tri, int edge, double theta) {
  const int va = m.edges[edge][0], vb = m.edges[edge][1];
  double b[3] = {0, 0, 0};
  for (int k = 0; k < 3; ++k) {
    if (m.tris[tri][k] == va) b[k] = 1.0 - theta;
    if (m.tris[tri][k] == vb) b[k] = theta;
  }
  return {b[1], b[2]};
}

}  // namespace

double LevelCurve::total_length() const {
  const Mesh& m = *mesh;
  double len = 0;
  for (const auto& loop : loops) {
    const int n = static_cast<int>(loop.points.size());
    for (int i = 0; i < n; ++i) {
      const auto& p = loop.points[i];
      const auto& q = loop.points[(i + 1) % n];
      const int t = loop.tris[i];
      len += norm(edge_point_position(m, t, q.edge, q.theta) -
                  edge_point_position(m, t, p.edge, p.theta));
    }
  }
  return len;
}

std::vector<CurveSegment> LevelCurve::segments() const {
  const Mesh& m = *mesh;
  std::vector<CurveSegment> out;
  for (const auto& loop : loops) {
    const int n = static_cast<int>(loop.points.size());
    for (int i = 0; i < n; ++i) {
      const auto& p = loop.points[i];
      const auto& q = loop.points[(i + 1) % n];
      const int t = loop.tris[i];
      out.push_back({t, edge_point_bary(m, t, p.edge, p.theta), edge_point_bary(m, t, q.edge, q.theta)});
    }
  }
  return out;
}

TriRegion superlevel_region(const ScalarField& f, double t) {
  const Mesh& m = *f.mesh;
  TriRegion r(m);
  for (int tr = 0; tr < m.tri_count(); ++tr) {
    const auto& tri = m.tris[tr];
    if (f.values[tri[0]] > t && f.values[tri[1]] > t && f.values[tri[2]] > t) r.add(tr);
  }
  return r;
}

double make_regular(const ScalarField& f, double s) {
  const double range = f.max_value() - f.min_value();
  const double eps = 1e-9 * (range > 0 ? range : 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    int collide = -1;
    for (int v = 0; v < f.mesh->vertex_count(); ++v)
      if (f.values[v] == s) { collide = v; break; }
    if (collide < 0) return s;
    Rng h(static_cast<std::uint64_t>(collide));
    s += eps * (1.0 + h.next_double());
  }
  throw DegeneracyError("make_regular: could not find a regular level");
}

LevelCurve level_curve(const ScalarField& f, double s) {
  const Mesh& m = *f.mesh;
  LevelCurve curve;
  curve.mesh = &m;
  curve.level = s;

  std::vector<std::uint8_t> above(m.vertex_count());
  for (int v = 0; v < m.vertex_count(); ++v) {
    if (f.values[v] == s)
      throw DegeneracyError("level_curve: level collides with vertex " + std::to_string(v));
    above[v] = f.values[v] > s ? 1 : 0;
  }

  // Canonical in/out slots per straddling triangle ({f > s} kept on the left).
  std::vector<std::array<int, 2>> in_out(m.tri_count(), {-1, -1});
  std::vector<std::uint8_t> straddles(m.tri_count(), 0);
  for (int t = 0; t < m.tri_count(); ++t) {
    const auto& tri = m.tris[t];
    const int na = above[tri[0]] + above[tri[1]] + above[tri[2]];
    if (na == 0 || na == 3) continue;
    straddles[t] = 1;
    int lone = -1;
    if (na == 1) {
      for (int k = 0; k < 3; ++k)
        if (above[tri[k]]) lone = k;
      in_out[t] = {lone, (lone + 2) % 3};  // enter via slot k, exit via k-1
    } else {
      for (int k = 0; k < 3; ++k)
        if (!above[tri[k]]) lone = k;
      in_out[t] = {(lone + 2) % 3, lone};
    }
  }

  auto theta_on_edge = [&](int e) {
    const int va = m.edges[e][0], vb = m.edges[e][1];
    return (s - f.values[va]) / (f.values[vb] - f.values[va]);
  };

  std::vector<std::uint8_t> visited(m.tri_count(), 0);
  for (int e0 = 0; e0 < m.edge_count(); ++e0) {
    const int va = m.edges[e0][0], vb = m.edges[e0][1];
    if (above[va] == above[vb]) continue;
    // The triangle entered through e0 under the canonical orientation.
    int start = -1;
    for (int t : {m.edge_tris[e0][0], m.edge_tris[e0][1]})
      if (straddles[t] && m.tri_edges[t][in_out[t][0]] == e0) start = t;
    if (start < 0 || visited[start]) continue;

    CurveLoop loop;
    int t = start;
    while (!visited[t]) {
      visited[t] = 1;
      const int e_in = m.tri_edges[t][in_out[t][0]];
      loop.points.push_back({e_in, theta_on_edge(e_in)});
      loop.tris.push_back(t);
      t = m.tri_neighbors[t][in_out[t][1]];
    }
    curve.loops.push_back(std::move(loop));
  }
  return curve;
}

int count_segment_crossings(const std::vector<CurveSegment>& a, const std::vector<CurveSegment>& b) {
  std::unordered_map<int, std::vector<int>> b_by_tri;
  for (int i = 0; i < static_cast<int>(b.size()); ++i) b_by_tri[b[i].tri].push_back(i);
  int count = 0;
  for (const auto& sa : a) {
    auto it = b_by_tri.find(sa.tri);
    if (it == b_by_tri.end()) continue;
    for (int ib : it->second) {
      const auto& sb = b[ib];
      if (segments_cross(sa.a, sa.b, sb.a, sb.b)) ++count;
    }
  }
  return count;
}

int count_level_intersections(const ScalarField& f, const ScalarField& g, double s, double t) {
  check_same_mesh(f, g);
  const LevelCurve cf = level_curve(f, s);
  const LevelCurve cg = level_curve(g, t);
  return count_segment_crossings(cf.segments(), cg.segments());
}

namespace {

// Levels closer than 1e-6 * range to a PL-critical value (a strict local
// extremum over the vertex link, where loops are born or die) are treated
// as near-critical. The identity holds almost everywhere, so skipping a
// measure-zero neighbourhood is sound and is reported, not guessed.
// Regular-vertex collisions are handled by the symbolic perturbation in
// make_regular instead of skipping: with ~10^4 vertex values a skip window
// around every value would discard a few percent of the grid.
struct CriticalProximity {
  std::vector<double> critical_values;
  double tol;

  explicit CriticalProximity(const ScalarField& f) {
    const Mesh& m = *f.mesh;
    for (int v = 0; v < m.vertex_count(); ++v) {
      bool above = true, below = true;
      for (int nb : m.vertex_adj[v]) {
        if (f.values[nb] >= f.values[v]) below = false;
        if (f.values[nb] <= f.values[v]) above = false;
      }
      if (above || below) critical_values.push_back(f.values[v]);
    }
    std::sort(critical_values.begin(), critical_values.end());
    const double range = f.max_value() - f.min_value();
    tol = 1e-6 * (range > 0 ? range : 1.0);
  }
  bool near_critical(double s) const {
    auto it = std::lower_bound(critical_values.begin(), critical_values.end(), s);
    if (it != critical_values.end() && std::abs(*it - s) <= tol) return true;
    if (it != critical_values.begin() && std::abs(*(it - 1) - s) <= tol) return true;
    return false;
  }
};

}  // namespace

CoareaReport coarea_sides(const ScalarField& f, const ScalarField& g,
                          double s_min, double s_max, double t_min, double t_max,
                          int ns, int nt) {
  check_same_mesh(f, g);
  if (ns < 10 || nt < 10) throw std::invalid_argument("coarea_sides: grid must be at least 10x10");
  if (!(s_max > s_min) || !(t_max > t_min))
    throw std::invalid_argument("coarea_sides: empty rectangle");
  const Mesh& m = *f.mesh;

  CoareaReport rep;
  rep.grid_s = ns;
  rep.grid_t = nt;
  rep.s_min = s_min;
  rep.s_max = s_max;
  rep.t_min = t_min;
  rep.t_max = t_max;
  rep.omega_measure = (s_max - s_min) * (t_max - t_min);

  // Left side: |{f,g}| restricted to triangles whose barycenter values land
  // in the rectangle.
  const int ntri = m.tri_count();
  std::vector<double> lhs_terms(ntri, 0.0);
  PBSURF_PARALLEL_FOR
  for (int t = 0; t < ntri; ++t) {
    const auto& tri = m.tris[t];
    const double fb = (f.values[tri[0]] + f.values[tri[1]] + f.values[tri[2]]) / 3.0;
    const double gb = (g.values[tri[0]] + g.values[tri[1]] + g.values[tri[2]]) / 3.0;
    if (fb > s_min && fb < s_max && gb > t_min && gb < t_max)
      lhs_terms[t] = std::abs(poisson_bracket_tri(f, g, t)) * m.tri_area[t];
  }
  {
    double sum = 0, comp = 0;
    for (double v : lhs_terms) {
      const double y = v - comp;
      const double snew = sum + y;
      comp = (snew - sum) - y;
      sum = snew;
    }
    rep.lhs = sum;
  }

  // Right side: midpoint quadrature of K. Curves are shared across rows and
  // columns of the grid.
  const CriticalProximity fc(f), gc(g);
  const double ds = (s_max - s_min) / ns, dt = (t_max - t_min) / nt;
  std::vector<double> s_levels(ns), t_levels(nt);
  std::vector<std::uint8_t> s_ok(ns), t_ok(nt);
  // Deterministic jitter (1e-4 of a cell) breaks structural coincidences
  // between the two level families, e.g. symmetric fixtures whose curves
  // would otherwise meet exactly on mesh edges along the grid diagonal.
  for (int i = 0; i < ns; ++i) {
    Rng jit(static_cast<std::uint64_t>(i) * 2 + 1);
    s_levels[i] = make_regular(f, s_min + (i + 0.5 + 1e-4 * jit.next_double()) * ds);
    s_ok[i] = !fc.near_critical(s_levels[i]);
  }
  for (int j = 0; j < nt; ++j) {
    Rng jit(static_cast<std::uint64_t>(j) * 2 + 2);
    t_levels[j] = make_regular(g, t_min + (j + 0.5 + 1e-4 * jit.next_double()) * dt);
    t_ok[j] = !gc.near_critical(t_levels[j]);
  }

  std::vector<std::vector<CurveSegment>> f_segs(ns), g_segs(nt);
  PBSURF_PARALLEL_FOR_DYNAMIC
  for (int i = 0; i < ns; ++i)
    if (s_ok[i]) f_segs[i] = level_curve(f, s_levels[i]).segments();
  PBSURF_PARALLEL_FOR_DYNAMIC
  for (int j = 0; j < nt; ++j)
    if (t_ok[j]) g_segs[j] = level_curve(g, t_levels[j]).segments();

  std::vector<std::unordered_map<int, std::vector<int>>> g_by_tri(nt);
  for (int j = 0; j < nt; ++j)
    for (int k = 0; k < static_cast<int>(g_segs[j].size()); ++k)
      g_by_tri[j][g_segs[j][k].tri].push_back(k);

  const double cell = ds * dt;
  std::vector<double> cell_value(static_cast<size_t>(ns) * nt, 0.0);
  std::vector<std::uint8_t> cell_skipped(static_cast<size_t>(ns) * nt, 0);
  PBSURF_PARALLEL_FOR_DYNAMIC
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nt; ++j) {
      const size_t idx = static_cast<size_t>(i) * nt + j;
      if (!s_ok[i] || !t_ok[j]) {
        cell_skipped[idx] = 1;
        continue;
      }
      int count = 0;
      bool degenerate = false;
      for (const auto& sa : f_segs[i]) {
        auto it = g_by_tri[j].find(sa.tri);
        if (it == g_by_tri[j].end()) continue;
        for (int kb : it->second) {
          const auto& sb = g_segs[j][kb];
          try {
            if (segments_cross(sa.a, sa.b, sb.a, sb.b)) ++count;
          } catch (const DegeneracyError&) {
            degenerate = true;
            break;
          }
        }
        if (degenerate) break;
      }
      if (degenerate)
        cell_skipped[idx] = 1;
      else
        cell_value[idx] = count * cell;
    }
  }
  {
    double sum = 0, comp = 0;
    for (size_t idx = 0; idx < cell_value.size(); ++idx) {
      if (cell_skipped[idx]) {
        ++rep.skipped_cells;
        rep.skipped_measure += cell;
        continue;
      }
      const double y = cell_value[idx] - comp;
      const double snew = sum + y;
      comp = (snew - sum) - y;
      sum = snew;
    }
    rep.rhs = sum;
  }
  return rep;
}

TriRegion minimal_disc_hull(const TriRegion& comp, const TriRegion& container) {
  if (comp.empty()) throw std::invalid_argument("minimal_disc_hull: empty component");
  if (!comp.subset_of(container))
    throw std::invalid_argument("minimal_disc_hull: component not inside container");
  if (region_components(comp).size() != 1)
    throw std::invalid_argument("minimal_disc_hull: component not connected");

  const auto holes = region_components(comp.complement());
  if (holes.size() > 20)
    throw std::invalid_argument("minimal_disc_hull: more than 20 complement components");

  // Only components fully inside the container may be filled.
  std::vector<int> fillable;
  for (int i = 0; i < static_cast<int>(holes.size()); ++i)
    if (holes[i].subset_of(container)) fillable.push_back(i);

  bool found = false;
  double best_area = 0;
  TriRegion best;
  const std::uint32_t subsets = 1u << fillable.size();
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    TriRegion cand = comp;
    for (size_t k = 0; k < fillable.size(); ++k)
      if (mask & (1u << k)) cand = cand.unite(holes[fillable[k]]);
    if (!is_topological_disc(cand)) continue;
    const double area = region_area(cand);
    if (!found || area < best_area) {
      found = true;
      best_area = area;
      best = cand;
    }
  }
  if (!found) throw std::runtime_error("minimal_disc_hull: no disc hull inside container");
  return best;
}

}  // namespace pbsurf
