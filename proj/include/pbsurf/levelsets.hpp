#pragma once

#include <vector>

#include "pbsurf/field.hpp"
#include "pbsurf/region.hpp"

namespace pbsurf {

/// One polyline segment inside a triangle; endpoints in barycentric
/// coordinates (weights of corners 1 and 2; corner 0 carries the rest).
struct CurveSegment {
  int tri = -1;
  Vec2 a, b;  // (b1, b2) of each endpoint
};

/// Point where a level curve crosses a mesh edge, parameterized from the
/// lower-indexed vertex towards the higher one.
struct LoopPoint {
  int edge = -1;
  double theta = 0;
};

/// Closed polyline: points[i] -> points[i+1 mod n] runs inside tris[i].
struct CurveLoop {
  std::vector<LoopPoint> points;
  std::vector<int> tris;
};

/// PL level set f = s as closed polylines, oriented with {f > s} on the
/// left. Requires s to avoid all vertex values.
struct LevelCurve {
  const Mesh* mesh = nullptr;
  double level = 0;
  std::vector<CurveLoop> loops;

  int segment_count() const;
  double total_length() const;
  std::vector<CurveSegment> segments() const;
};

/// Triangles whose three vertex values all exceed t.
TriRegion superlevel_region(const ScalarField& f, double t);

/// Marching-triangles extraction of {f = s}. Throws DegeneracyError if s
/// equals a vertex value (callers perturb via make_regular).
LevelCurve level_curve(const ScalarField& f, double s);

/// Deterministic symbolic perturbation: while s collides with a vertex
/// value, nudge by eps*(1 + hash(vertex index)) with eps = 1e-9 * range.
double make_regular(const ScalarField& f, double s);

/// K(s,t): transversal crossings between {f = s} and {g = t}, exact
/// segment tests within shared triangles. Throws DegeneracyError on
/// near-degenerate incidence.
int count_level_intersections(const ScalarField& f, const ScalarField& g, double s, double t);

int count_segment_crossings(const std::vector<CurveSegment>& a, const std::vector<CurveSegment>& b);

struct CoareaReport {
  double lhs = 0;  // integral of |{f,g}| over triangles with barycenter values in Omega
  double rhs = 0;  // midpoint quadrature of K(s,t) over Omega
  int grid_s = 0, grid_t = 0;
  double s_min = 0, s_max = 0, t_min = 0, t_max = 0;
  int skipped_cells = 0;
  double skipped_measure = 0;  // area of skipped cells
  double omega_measure = 0;
};

/// Both sides of the coarea identity over the rectangle
/// (s_min,s_max) x (t_min,t_max) with an ns x nt midpoint grid; cells whose
/// sample levels are within 1e-6 * range of a vertex value are skipped and
/// reported, never guessed.
CoareaReport coarea_sides(const ScalarField& f, const ScalarField& g,
                          double s_min, double s_max, double t_min, double t_max,
                          int ns, int nt);

/// Minimal-area topological disc that contains comp and lies inside
/// container, formed by uniting comp with complement components.
/// Exhaustive over complement components (at most 20).
TriRegion minimal_disc_hull(const TriRegion& comp, const TriRegion& container);

}  // namespace pbsurf
