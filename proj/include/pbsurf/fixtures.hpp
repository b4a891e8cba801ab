#pragma once

#include <string>

#include "pbsurf/field.hpp"
#include "pbsurf/region.hpp"

namespace pbsurf {

/// Named analytic fields sampled at mesh vertices, shared by the CLI and
/// tests: "x" | "y" | "z" (coordinates, sphere), "sin2pix" | "sin2piy"
/// (torus), "two_bumps" (torus, two radial bumps), "const1".
ScalarField make_named_field(const Mesh& mesh, const std::string& name);

/// The three-cap cover of the unit sphere:
///   U1 = {z < 1/2},  U2 = {z > 0, x > -1/4},  U3 = {z > 0, x < 1/4}.
Cover three_cap_cover(const Mesh& sphere, PredicateMode mode = PredicateMode::Strict);

/// Two overlapping caps covering the sphere: {z < 0.6} and {z > -0.6}.
Cover two_cap_cover(const Mesh& sphere);

/// Three rectangles on the unit torus forming a cover of kappa 3 made of
/// topological discs (each is a non-wrapping rectangle with both side
/// lengths below the period).
Cover three_rect_cover(const Mesh& torus);

/// Axis-aligned rectangle (x0,x1)x(y0,y1) on the torus, wrap-aware; the
/// lengths x1-x0 and y1-y0 must be below the periods.
bool torus_rect_contains(const Mesh& torus, double x0, double x1, double y0, double y1,
                         const Vec3& p);

}  // namespace pbsurf
