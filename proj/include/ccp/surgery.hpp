#pragma once

#include "ccp/polyhedron.hpp"
#include "ccp/triangulate.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ccp {

// face_b[(offset + i) % k] (or (offset - i) when reversed) is glued to face_a[i].
struct CycleMap {
    std::size_t offset = 0;
    bool reversed = false;
};

struct FaceCorrespondence {
    FaceId face_a{};
    FaceId face_b{};
    std::optional<CycleMap> map;  // searched for when absent
};

// Glue P2 onto P1 along congruent faces. P2 is moved rigidly (possibly with a
// reflection) so that it lies on the opposite side of the glued face.
Polyhedron connect_sum(const Polyhedron& p1, const Polyhedron& p2, const FaceCorrespondence& corr,
                       const ToleranceSet& tol = {});

// All cycle maps under which the two faces are congruent.
std::vector<CycleMap> isometric_maps(const Polyhedron& p1, FaceId fa, const Polyhedron& p2, FaceId fb,
                                     double tol);

int choose_prism_order(const Polyhedron& p);

struct DrillSpec {
    FaceId face_a{};
    FaceId face_b{};
    std::optional<Vec3> base_point;  // defaults to the centroid of face_a
    int n = 3;
    std::optional<double> radius;   // auto when absent
    double phase = 0.0;
    std::optional<double> spacing;  // axis spacing for repeated drilling; auto when absent
    bool allow_immersed = false;    // permit the prism to pass through other faces
};

Polyhedron drill(const Polyhedron& p, const DrillSpec& spec, const ToleranceSet& tol = {});

// k parallel tunnels between the same face pair, axes laid out along the face
// frame's u axis and centred on the base point.
Polyhedron drill_repeat(const Polyhedron& p, const DrillSpec& spec, int k, const ToleranceSet& tol = {});

// Partition of the region between `face` and the strictly interior `hole`.
// Output indices: face vertices 0..m-1, hole vertices m..m+n-1. Pieces are
// counter-clockwise.
std::vector<Cycle> retile_pierced_face(std::span<const Vec2> face, std::span<const Vec2> hole);

// General version for several holes: ear clipping with hole bridges, then
// diagonals are removed while the merged pieces stay strictly convex.
std::vector<Cycle> retile_multi(std::span<const Vec2> face, const std::vector<std::vector<Vec2>>& holes,
                                const tri::DiagonalFilter& allowed = {});

}  // namespace ccp
