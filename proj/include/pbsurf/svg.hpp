#pragma once

#include <string>
#include <vector>

#include "pbsurf/levelsets.hpp"
#include "pbsurf/permcurves.hpp"
#include "pbsurf/region.hpp"

namespace pbsurf {

/// Deterministic SVG snapshot: regions as shaded triangles, curves as
/// polyline paths. Sphere drawn via the area-preserving cylindrical
/// projection (longitude, z); torus via its flat chart. Element order and
/// number formatting are stable so outputs are byte-reproducible.
struct SvgScene {
  const Mesh* mesh = nullptr;
  std::vector<const TriRegion*> regions;
  std::vector<const LevelCurve*> curves;
  std::vector<const PermCurveSet*> perm_curves;
};

std::string render_svg(const SvgScene& scene);
void emit_svg(const SvgScene& scene, const std::string& path);

}  // namespace pbsurf
