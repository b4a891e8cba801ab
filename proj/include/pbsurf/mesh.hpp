#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "pbsurf/geometry.hpp"

namespace pbsurf {

enum class Topology { Sphere, Torus };

/// Triangulated closed oriented surface carrying a per-triangle area measure.
///
/// Triangles are consistently oriented: counterclockwise in the flat chart
/// for the torus (normal +z), outward for the embedded sphere. Torus vertex
/// positions are representatives in [0,Lx) x [0,Ly); per-triangle corner
/// positions are unwrapped so each triangle is geometrically coherent even
/// across the periodic seam.
class Mesh {
 public:
  Topology topology = Topology::Sphere;
  double lx = 0, ly = 0;  // torus periods (0 for sphere)

  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> tris;
  std::vector<std::array<Vec3, 3>> corners;  // per-triangle chart positions
  std::vector<double> tri_area;              // symplectic measure per triangle

  // Connectivity, built once in finalize().
  std::vector<std::array<int, 2>> edges;          // vertex pairs, lo < hi
  std::vector<std::array<int, 2>> edge_tris;      // the two incident triangles
  std::vector<std::array<int, 3>> tri_edges;      // edge id in slot k = (corner k, corner k+1)
  std::vector<std::array<int, 3>> tri_neighbors;  // triangle across slot-k edge
  std::vector<std::vector<int>> vertex_tris;      // incident triangles, ascending
  std::vector<std::vector<int>> vertex_adj;       // neighbouring vertices, ascending

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int tri_count() const { return static_cast<int>(tris.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int euler_characteristic() const { return vertex_count() - edge_count() + tri_count(); }
  double total_area() const;
  double max_edge_length() const;

  /// Unit normal of triangle t (outward on the sphere, +z on the torus).
  Vec3 unit_normal(int t) const {
    const auto& c = corners[t];
    return normalized(cross(c[1] - c[0], c[2] - c[0]));
  }

  /// Builds connectivity and validates closedness, orientation, areas and
  /// the Euler characteristic. Throws std::runtime_error on violation.
  void finalize();
};

/// Icosahedron subdivided `subdivision_level` times, vertices projected to
/// the radius-r sphere. Throws std::invalid_argument for level > 8.
Mesh build_sphere_mesh(int subdivision_level, double radius);

/// Flat torus [0,Lx) x [0,Ly) on an nx-by-ny grid, each cell split into two
/// triangles. Throws std::invalid_argument for nx or ny < 3.
Mesh build_torus_mesh(int nx, int ny, double lx, double ly);

/// Plain-text mesh format (see README): header, vertex lines, triangle lines.
void save_mesh(const Mesh& mesh, std::ostream& out);
void save_mesh_file(const Mesh& mesh, const std::string& path);
Mesh load_mesh(std::istream& in);
Mesh load_mesh_file(const std::string& path);

}  // namespace pbsurf
