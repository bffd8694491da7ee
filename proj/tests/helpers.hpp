#pragma once

#include "ccp/polyhedron.hpp"

#include <cmath>
#include <numbers>

namespace fixtures {

using ccp::Cycle;
using ccp::Vec3;

inline constexpr double pi = std::numbers::pi;

inline ccp::MeshData cube(double s = 1.0) {
    ccp::MeshData d;
    for (int i = 0; i < 8; ++i) d.vertices.emplace_back(i & 1 ? s : -s, i & 2 ? s : -s, i & 4 ? s : -s);
    d.faces = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
    return d;
}

inline ccp::MeshData tetra() {
    ccp::MeshData d;
    d.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    d.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return d;
}

// Rigid motion (rotation about a generic axis plus translation) and scale.
inline ccp::MeshData moved(ccp::MeshData d, double angle, const Vec3& axis, const Vec3& shift, double scale = 1.0) {
    Eigen::AngleAxisd rot(angle, axis.normalized());
    for (Vec3& v : d.vertices) v = scale * (rot * v) + shift;
    return d;
}

inline std::size_t find_vertex(const ccp::Polyhedron& p, const Vec3& q, double tol = 1e-9) {
    for (std::size_t i = 0; i < p.num_vertices(); ++i)
        if ((p.positions()[i] - q).norm() < tol) return i;
    return SIZE_MAX;
}

// First face containing all of `verts`.
inline std::size_t face_containing(const ccp::Polyhedron& p, std::initializer_list<std::size_t> verts) {
    for (std::size_t f = 0; f < p.num_faces(); ++f) {
        auto c = p.face(ccp::fid(f));
        bool all = true;
        for (auto v : verts)
            all = all && std::find(c.begin(), c.end(), ccp::vid(v)) != c.end();
        if (all) return f;
    }
    return SIZE_MAX;
}

}  // namespace fixtures
