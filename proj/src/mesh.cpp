#include "pbsurf/mesh.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pbsurf {

double Mesh::total_area() const {
  // Kahan summation: the torus total must match Lx*Ly to round-off.
  double sum = 0, comp = 0;
  for (double t : tri_area) {
    const double y = t - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

double Mesh::max_edge_length() const {
  double h = 0;
  for (int t = 0; t < tri_count(); ++t)
    for (int k = 0; k < 3; ++k)
      h = std::max(h, norm(corners[t][(k + 1) % 3] - corners[t][k]));
  return h;
}

void Mesh::finalize() {
  const int nv = vertex_count();
  const int nt = tri_count();
  if (nt == 0) throw std::runtime_error("mesh: empty");

  // Orientation and measure per triangle.
  corners.resize(nt);
  tri_area.resize(nt);
  for (int t = 0; t < nt; ++t) {
    auto& c = corners[t];
    if (topology == Topology::Torus) {
      // Unwrap corners 1,2 to the nearest periodic image of corner 0.
      c[0] = vertices[tris[t][0]];
      for (int k = 1; k < 3; ++k) {
        Vec3 p = vertices[tris[t][k]];
        if (p.x - c[0].x > lx / 2) p.x -= lx;
        if (c[0].x - p.x > lx / 2) p.x += lx;
        if (p.y - c[0].y > ly / 2) p.y -= ly;
        if (c[0].y - p.y > ly / 2) p.y += ly;
        c[k] = p;
      }
    } else {
      for (int k = 0; k < 3; ++k) c[k] = vertices[tris[t][k]];
    }
    const Vec3 n = cross(c[1] - c[0], c[2] - c[0]);
    // In the flat chart only the z component carries area; using it directly
    // keeps grid-cell measures exact (no sqrt rounding).
    tri_area[t] = topology == Topology::Torus ? 0.5 * std::abs(n.z) : 0.5 * norm(n);
  }
  const double max_area = *std::max_element(tri_area.begin(), tri_area.end());
  for (int t = 0; t < nt; ++t)
    if (!(tri_area[t] > 1e-12 * max_area))
      throw std::runtime_error("mesh: degenerate triangle " + std::to_string(t));

  // Consistent orientation: +z in the torus chart, outward on the sphere.
  for (int t = 0; t < nt; ++t) {
    const auto& c = corners[t];
    const Vec3 n = cross(c[1] - c[0], c[2] - c[0]);
    const double sign = topology == Topology::Torus
                            ? n.z
                            : dot(n, (c[0] + c[1] + c[2]) / 3.0);
    if (sign <= 0) throw std::runtime_error("mesh: triangle " + std::to_string(t) + " misoriented");
  }

  // Edges; every edge must be shared by exactly two triangles.
  std::map<std::pair<int, int>, int> edge_id;
  edges.clear();
  edge_tris.clear();
  tri_edges.assign(nt, {-1, -1, -1});
  tri_neighbors.assign(nt, {-1, -1, -1});
  for (int t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = tris[t][k], b = tris[t][(k + 1) % 3];
      const auto key = std::minmax(a, b);
      auto it = edge_id.find(key);
      if (it == edge_id.end()) {
        it = edge_id.emplace(key, static_cast<int>(edges.size())).first;
        edges.push_back({key.first, key.second});
        edge_tris.push_back({t, -1});
      } else {
        auto& et = edge_tris[it->second];
        if (et[1] != -1) throw std::runtime_error("mesh: edge shared by more than two triangles");
        et[1] = t;
      }
      tri_edges[t][k] = it->second;
    }
  }
  for (const auto& et : edge_tris)
    if (et[1] == -1) throw std::runtime_error("mesh: boundary edge in closed surface");
  for (int t = 0; t < nt; ++t)
    for (int k = 0; k < 3; ++k) {
      const auto& et = edge_tris[tri_edges[t][k]];
      tri_neighbors[t][k] = et[0] == t ? et[1] : et[0];
    }

  vertex_tris.assign(nv, {});
  for (int t = 0; t < nt; ++t)
    for (int k = 0; k < 3; ++k) vertex_tris[tris[t][k]].push_back(t);
  vertex_adj.assign(nv, {});
  for (const auto& e : edges) {
    vertex_adj[e[0]].push_back(e[1]);
    vertex_adj[e[1]].push_back(e[0]);
  }
  for (auto& a : vertex_adj) std::sort(a.begin(), a.end());

  const int chi = euler_characteristic();
  const int expected = topology == Topology::Sphere ? 2 : 0;
  if (chi != expected)
    throw std::runtime_error("mesh: Euler characteristic " + std::to_string(chi) +
                             ", expected " + std::to_string(expected));
}

namespace {

const double kIcoT = (1.0 + std::sqrt(5.0)) / 2.0;

const Vec3 kIcoVerts[12] = {
    {-1, kIcoT, 0}, {1, kIcoT, 0}, {-1, -kIcoT, 0}, {1, -kIcoT, 0},
    {0, -1, kIcoT}, {0, 1, kIcoT}, {0, -1, -kIcoT}, {0, 1, -kIcoT},
    {kIcoT, 0, -1}, {kIcoT, 0, 1}, {-kIcoT, 0, -1}, {-kIcoT, 0, 1}};

const int kIcoFaces[20][3] = {
    {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
    {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
    {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
    {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

}  // namespace

Mesh build_sphere_mesh(int subdivision_level, double radius) {
  if (subdivision_level < 0 || subdivision_level > 8)
    throw std::invalid_argument("build_sphere_mesh: subdivision level must be in [0, 8]");
  if (!(radius > 0)) throw std::invalid_argument("build_sphere_mesh: radius must be positive");

  Mesh m;
  m.topology = Topology::Sphere;
  for (const auto& v : kIcoVerts) m.vertices.push_back(normalized(v) * radius);
  for (const auto& f : kIcoFaces) m.tris.push_back({f[0], f[1], f[2]});

  for (int level = 0; level < subdivision_level; ++level) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it == midpoint.end()) {
        const Vec3 p = normalized(m.vertices[a] + m.vertices[b]) * radius;
        it = midpoint.emplace(key, static_cast<int>(m.vertices.size())).first;
        m.vertices.push_back(p);
      }
      return it->second;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(m.tris.size() * 4);
    for (const auto& t : m.tris) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.tris = std::move(next);
  }

  m.finalize();
  return m;
}

Mesh build_torus_mesh(int nx, int ny, double lx, double ly) {
  if (nx < 3 || ny < 3) throw std::invalid_argument("build_torus_mesh: nx and ny must be >= 3");
  if (!(lx > 0) || !(ly > 0)) throw std::invalid_argument("build_torus_mesh: periods must be positive");

  Mesh m;
  m.topology = Topology::Torus;
  m.lx = lx;
  m.ly = ly;
  const double hx = lx / nx, hy = ly / ny;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) m.vertices.push_back({i * hx, j * hy, 0});
  auto vid = [&](int i, int j) { return (j % ny) * nx + (i % nx); };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      m.tris.push_back({v00, v10, v11});
      m.tris.push_back({v00, v11, v01});
    }
  m.finalize();
  return m;
}

void save_mesh(const Mesh& mesh, std::ostream& out) {
  char buf[96];
  out << "pbsurf-mesh 1\n";
  if (mesh.topology == Topology::Sphere) {
    out << "topology sphere\n";
  } else {
    std::snprintf(buf, sizeof buf, "topology torus %.17g %.17g\n", mesh.lx, mesh.ly);
    out << buf;
  }
  out << "vertices " << mesh.vertex_count() << "\n";
  for (const auto& v : mesh.vertices) {
    if (mesh.topology == Topology::Sphere)
      std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
    else
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.x, v.y);
    out << buf;
  }
  out << "triangles " << mesh.tri_count() << "\n";
  for (const auto& t : mesh.tris) out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

void save_mesh_file(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  save_mesh(mesh, out);
}

Mesh load_mesh(std::istream& in) {
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "pbsurf-mesh" || version != 1)
    throw std::runtime_error("mesh load: bad header");
  std::string kw, topo;
  in >> kw >> topo;
  if (kw != "topology") throw std::runtime_error("mesh load: expected topology line");
  Mesh m;
  if (topo == "sphere") {
    m.topology = Topology::Sphere;
  } else if (topo == "torus") {
    m.topology = Topology::Torus;
    in >> m.lx >> m.ly;
  } else {
    throw std::runtime_error("mesh load: unknown topology '" + topo + "'");
  }
  int nv = 0;
  in >> kw >> nv;
  if (kw != "vertices" || nv <= 0) throw std::runtime_error("mesh load: bad vertex count");
  m.vertices.resize(nv);
  for (auto& v : m.vertices) {
    if (m.topology == Topology::Sphere)
      in >> v.x >> v.y >> v.z;
    else
      in >> v.x >> v.y;
  }
  int nt = 0;
  in >> kw >> nt;
  if (kw != "triangles" || nt <= 0) throw std::runtime_error("mesh load: bad triangle count");
  m.tris.resize(nt);
  for (auto& t : m.tris) in >> t[0] >> t[1] >> t[2];
  if (!in) throw std::runtime_error("mesh load: truncated file");
  m.finalize();
  return m;
}

Mesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return load_mesh(in);
}

}  // namespace pbsurf
