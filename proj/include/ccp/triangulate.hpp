#pragma once

#include "ccp/types.hpp"

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace ccp::tri {

using Triangle = std::array<std::uint32_t, 3>;

// Predicate on a prospective diagonal between two point indices.
using DiagonalFilter = std::function<bool(std::uint32_t, std::uint32_t)>;

// Ear clipping of a simple polygon in either orientation. Triangles index into
// `poly` and are wound like the input.
std::vector<Triangle> ear_clip(std::span<const Vec2> poly, const DiagonalFilter& allowed = {});

// Polygon with holes. Point indices refer to the concatenation outer ++ holes[0] ++ ...
// Holes are bridged to the outer boundary, then the resulting weakly simple
// polygon is ear clipped. Triangles are counter-clockwise.
std::vector<Triangle> ear_clip_with_holes(std::span<const Vec2> outer, const std::vector<std::vector<Vec2>>& holes,
                                          const DiagonalFilter& allowed = {});

// Triangulate a planar 3D polygon; triangles follow the polygon's own winding.
std::vector<Triangle> triangulate_face(std::span<const Vec3> pts);

}  // namespace ccp::tri
