#pragma once

#include "ccp/generators.hpp"

#include <string>
#include <vector>

namespace ccp::detail {

// Expected constant defect from Descartes: 2 pi chi / |V|.
inline double descartes_defect(int genus, bool orientable, std::size_t vertices) {
    int chi = orientable ? 2 - 2 * genus : 2 - genus;
    return 2 * kPi * chi / static_cast<double>(vertices);
}

inline Metadata family_meta(std::string family, int genus, bool orientable, std::size_t vertices) {
    Metadata m;
    m.family = std::move(family);
    m.genus = genus;
    m.orientable = orientable;
    m.expected_defect = descartes_defect(genus, orientable, vertices);
    m.provenance.push_back(m.family);
    return m;
}

inline Polyhedron finish(MeshData d, std::string family, int genus, bool orientable) {
    d.metadata = family_meta(std::move(family), genus, orientable, d.vertices.size());
    return build_polyhedron(std::move(d));
}

// Keep provenance and surgery depth, replace the family claims.
inline Polyhedron retag(const Polyhedron& p, std::string family, int genus, bool orientable) {
    Metadata m = p.metadata();
    m.family = std::move(family);
    m.genus = genus;
    m.orientable = orientable;
    m.expected_defect = descartes_defect(genus, orientable, p.num_vertices());
    return p.with_metadata(std::move(m));
}

// Face whose vertex set equals `verts`.
FaceId face_with_vertices(const Polyhedron& p, std::vector<std::uint32_t> verts);

// Face cycle through all vertices lying on the plane n.x = offset, sorted by
// angle around their centroid (counter-clockwise about n).
Cycle plane_face(const std::vector<Vec3>& vertices, const Vec3& n, double offset);

}  // namespace ccp::detail
