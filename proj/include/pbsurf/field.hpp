#pragma once

#include <vector>

#include "pbsurf/mesh.hpp"

namespace pbsurf {

/// Per-vertex real values on one mesh, read piecewise-linearly.
struct ScalarField {
  const Mesh* mesh = nullptr;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const Mesh& m, double fill = 0.0)
      : mesh(&m), values(m.vertex_count(), fill) {}

  double operator[](int v) const { return values[v]; }
  double& operator[](int v) { return values[v]; }

  double min_value() const;
  double max_value() const;

  /// PL evaluation at barycentric coordinates inside triangle t.
  double eval_bary(int t, double b0, double b1, double b2) const {
    const auto& tri = mesh->tris[t];
    return b0 * values[tri[0]] + b1 * values[tri[1]] + b2 * values[tri[2]];
  }
};

/// One tangent-plane vector per triangle (constant gradient of a PL field).
struct VectorFieldPT {
  const Mesh* mesh = nullptr;
  std::vector<Vec3> vectors;
};

/// One real per triangle; integrates against tri_area_omega.
struct TriDensity {
  const Mesh* mesh = nullptr;
  std::vector<double> values;

  TriDensity() = default;
  explicit TriDensity(const Mesh& m, double fill = 0.0)
      : mesh(&m), values(m.tri_count(), fill) {}
};

/// Per-triangle constant gradient of the linear interpolant of f.
VectorFieldPT pl_gradient(const ScalarField& f);

/// Gradient restricted to one triangle.
Vec3 pl_gradient_tri(const ScalarField& f, int t);

/// Gradient on triangle t of the hat function of local corner slot (0..2).
Vec3 hat_gradient_tri(const Mesh& mesh, int t, int corner_slot);

/// Discrete Poisson bracket {f,g}: per triangle, (df ^ dg) / omega.
/// Flat torus: f_x g_y - f_y g_x; sphere: (grad f x grad g) . n.
/// Antisymmetric bit-for-bit and bilinear to round-off.
TriDensity poisson_bracket(const ScalarField& f, const ScalarField& g);

/// Bracket restricted to one triangle.
double poisson_bracket_tri(const ScalarField& f, const ScalarField& g, int t);

/// Sum of d(T) * tri_area_omega(T), reduced serially in index order.
double integrate(const TriDensity& d);

TriDensity abs_density(const TriDensity& d);

void check_same_mesh(const ScalarField& f, const ScalarField& g);

}  // namespace pbsurf
