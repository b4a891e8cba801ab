#pragma once

#include <cmath>
#include <stdexcept>

namespace pbsurf {

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a / norm(a); }

struct Vec2 {
  double x = 0, y = 0;
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

/// Signed twice-area of triangle (p, q, r).
inline double orient2d(const Vec2& p, const Vec2& q, const Vec2& r) {
  return cross2(q - p, r - p);
}

/// Raised by geometric predicates when the configuration is too close to
/// degenerate to classify; callers perturb inputs and retry.
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Threshold below which an orientation sign is not trusted. Inputs are
// barycentric-scale (order 1), so an absolute cutoff is adequate.
inline constexpr double kOrientEps = 1e-13;

/// True iff open segments (a0,a1) and (b0,b1) cross transversally.
/// Throws DegeneracyError on near-collinear or endpoint-touching input.
inline bool segments_cross(const Vec2& a0, const Vec2& a1, const Vec2& b0, const Vec2& b1) {
  const double o1 = orient2d(a0, a1, b0);
  const double o2 = orient2d(a0, a1, b1);
  const double o3 = orient2d(b0, b1, a0);
  const double o4 = orient2d(b0, b1, a1);
  if (std::abs(o1) < kOrientEps || std::abs(o2) < kOrientEps ||
      std::abs(o3) < kOrientEps || std::abs(o4) < kOrientEps) {
    // Far-apart segments cannot cross no matter how the tiny signs resolve.
    const auto lo = [](double u, double v) { return u < v ? u : v; };
    const auto hi = [](double u, double v) { return u > v ? u : v; };
    if (lo(a0.x, a1.x) > hi(b0.x, b1.x) + kOrientEps || lo(b0.x, b1.x) > hi(a0.x, a1.x) + kOrientEps ||
        lo(a0.y, a1.y) > hi(b0.y, b1.y) + kOrientEps || lo(b0.y, b1.y) > hi(a0.y, a1.y) + kOrientEps)
      return false;
    throw DegeneracyError("segment pair in near-degenerate position");
  }
  return (o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0);
}

}  // namespace pbsurf
