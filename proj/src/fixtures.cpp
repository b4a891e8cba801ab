#include "pbsurf/fixtures.hpp"

#include <cmath>
#include <stdexcept>

namespace pbsurf {

namespace {

const double kTwoPi = 2.0 * 3.14159265358979323846;

double bump(double d2, double r) {
  const double q = d2 / (r * r);
  if (q >= 1.0) return 0.0;
  const double w = 1.0 - q;
  return w * w;
}

double torus_dist2(const Mesh& m, const Vec3& p, double cx, double cy) {
  double dx = std::abs(p.x - cx);
  double dy = std::abs(p.y - cy);
  dx = std::min(dx, m.lx - dx);
  dy = std::min(dy, m.ly - dy);
  return dx * dx + dy * dy;
}

}  // namespace

ScalarField make_named_field(const Mesh& mesh, const std::string& name) {
  ScalarField f(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    const Vec3& p = mesh.vertices[v];
    if (name == "x")
      f[v] = p.x;
    else if (name == "y")
      f[v] = p.y;
    else if (name == "z")
      f[v] = p.z;
    else if (name == "sin2pix")
      f[v] = std::sin(kTwoPi * p.x / (mesh.lx > 0 ? mesh.lx : 1.0));
    else if (name == "sin2piy")
      f[v] = std::sin(kTwoPi * p.y / (mesh.ly > 0 ? mesh.ly : 1.0));
    else if (name == "two_bumps")
      f[v] = bump(torus_dist2(mesh, p, 0.25 * mesh.lx, 0.5 * mesh.ly), 0.2 * mesh.lx) +
             bump(torus_dist2(mesh, p, 0.75 * mesh.lx, 0.5 * mesh.ly), 0.2 * mesh.lx);
    else if (name == "const1")
      f[v] = 1.0;
    else
      throw std::invalid_argument("unknown field fixture '" + name + "'");
  }
  return f;
}

Cover three_cap_cover(const Mesh& sphere, PredicateMode mode) {
  Cover c;
  c.mesh = &sphere;
  const double r = norm(sphere.vertices[0]);
  CoverSet u1, u2, u3;
  u1.name = "U1";
  u1.region = region_from_predicate(
      sphere, [&](const Vec3& p) { return p.z < 0.5 * r; }, mode);
  u2.name = "U2";
  u2.region = region_from_predicate(
      sphere, [&](const Vec3& p) { return p.z > 0 && p.x > -0.25 * r; }, mode);
  u3.name = "U3";
  u3.region = region_from_predicate(
      sphere, [&](const Vec3& p) { return p.z > 0 && p.x < 0.25 * r; }, mode);
  c.sets = {std::move(u1), std::move(u2), std::move(u3)};
  return c;
}

Cover two_cap_cover(const Mesh& sphere) {
  Cover c;
  c.mesh = &sphere;
  const double r = norm(sphere.vertices[0]);
  CoverSet lo, hi;
  lo.name = "South";
  lo.region = region_from_predicate(
      sphere, [&](const Vec3& p) { return p.z < 0.6 * r; }, PredicateMode::Strict);
  hi.name = "North";
  hi.region = region_from_predicate(
      sphere, [&](const Vec3& p) { return p.z > -0.6 * r; }, PredicateMode::Strict);
  c.sets = {std::move(lo), std::move(hi)};
  return c;
}

bool torus_rect_contains(const Mesh& torus, double x0, double x1, double y0, double y1,
                         const Vec3& p) {
  auto in_range = [](double v, double lo, double hi, double period) {
    double t = std::fmod(v - lo, period);
    if (t < 0) t += period;
    return t < hi - lo;
  };
  return in_range(p.x, x0, x1, torus.lx) && in_range(p.y, y0, y1, torus.ly);
}

Cover three_rect_cover(const Mesh& torus) {
  Cover c;
  c.mesh = &torus;
  const double lx = torus.lx, ly = torus.ly;
  struct RectSpec {
    const char* name;
    double x0, x1, y0, y1;
  };
  // kappa = 3: dropping any one rectangle exposes part of the torus.
  const RectSpec rects[3] = {
      {"R1", 0.94 * lx, 1.72 * lx, 0.94 * ly, 1.88 * ly},
      {"R2", 0.34 * lx, 1.12 * lx, 0.46 * ly, 1.42 * ly},
      {"R3", 0.56 * lx, 1.48 * lx, 0.28 * ly, 1.26 * ly},
  };
  for (const auto& r : rects) {
    CoverSet set;
    set.name = r.name;
    set.region = region_from_predicate(
        torus,
        [&](const Vec3& p) { return torus_rect_contains(torus, r.x0, r.x1, r.y0, r.y1, p); },
        PredicateMode::Strict);
    c.sets.push_back(std::move(set));
  }
  return c;
}

}  // namespace pbsurf
