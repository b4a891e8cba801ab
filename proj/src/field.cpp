#include "pbsurf/field.hpp"

#include <algorithm>
#include <stdexcept>

#include "pbsurf/parallel.hpp"

namespace pbsurf {

double ScalarField::min_value() const { return *std::min_element(values.begin(), values.end()); }
double ScalarField::max_value() const { return *std::max_element(values.begin(), values.end()); }

void check_same_mesh(const ScalarField& f, const ScalarField& g) {
  if (f.mesh == nullptr || f.mesh != g.mesh)
    throw std::invalid_argument("fields live on different meshes");
}

Vec3 pl_gradient_tri(const ScalarField& f, int t) {
  const Mesh& m = *f.mesh;
  const auto& c = m.corners[t];
  const auto& tri = m.tris[t];
  const Vec3 e1 = c[1] - c[0], e2 = c[2] - c[0];
  const Vec3 n = cross(e1, e2);
  const double n2 = dot(n, n);
  const double d1 = f.values[tri[1]] - f.values[tri[0]];
  const double d2 = f.values[tri[2]] - f.values[tri[0]];
  // Solves grad.e1 = d1, grad.e2 = d2 within the triangle plane.
  return (cross(e2, n) * d1 + cross(n, e1) * d2) / n2;
}

Vec3 hat_gradient_tri(const Mesh& m, int t, int corner_slot) {
  const auto& c = m.corners[t];
  const Vec3 e1 = c[1] - c[0], e2 = c[2] - c[0];
  const Vec3 n = cross(e1, e2);
  const double n2 = dot(n, n);
  const double d1 = corner_slot == 1 ? 1.0 : 0.0;
  const double d2 = corner_slot == 2 ? 1.0 : 0.0;
  if (corner_slot == 0) return (cross(e2, n) * -1.0 + cross(n, e1) * -1.0) / n2;
  return (cross(e2, n) * d1 + cross(n, e1) * d2) / n2;
}

VectorFieldPT pl_gradient(const ScalarField& f) {
  if (f.mesh == nullptr) throw std::invalid_argument("field not tied to a mesh");
  const Mesh& m = *f.mesh;
  VectorFieldPT g;
  g.mesh = &m;
  g.vectors.resize(m.tri_count());
  const int nt = m.tri_count();
  PBSURF_PARALLEL_FOR
  for (int t = 0; t < nt; ++t) g.vectors[t] = pl_gradient_tri(f, t);
  return g;
}

double poisson_bracket_tri(const ScalarField& f, const ScalarField& g, int t) {
  const Vec3 gf = pl_gradient_tri(f, t);
  const Vec3 gg = pl_gradient_tri(g, t);
  return dot(cross(gf, gg), f.mesh->unit_normal(t));
}

TriDensity poisson_bracket(const ScalarField& f, const ScalarField& g) {
  check_same_mesh(f, g);
  const Mesh& m = *f.mesh;
  TriDensity d(m);
  const int nt = m.tri_count();
  PBSURF_PARALLEL_FOR
  for (int t = 0; t < nt; ++t) d.values[t] = poisson_bracket_tri(f, g, t);
  return d;
}

double integrate(const TriDensity& d) {
  const Mesh& m = *d.mesh;
  double sum = 0, comp = 0;
  for (int t = 0; t < m.tri_count(); ++t) {
    const double y = d.values[t] * m.tri_area[t] - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

TriDensity abs_density(const TriDensity& d) {
  TriDensity r = d;
  for (double& v : r.values) v = std::abs(v);
  return r;
}

}  // namespace pbsurf
