#include "ccp/generators.hpp"
#include "ccp/geometry.hpp"
#include "ccp/surgery.hpp"
#include "gen_common.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ccp {

namespace detail {

FaceId face_with_vertices(const Polyhedron& p, std::vector<std::uint32_t> verts) {
    std::sort(verts.begin(), verts.end());
    for (std::size_t f = 0; f < p.num_faces(); ++f) {
        std::vector<std::uint32_t> c;
        for (VertexId v : p.face(fid(f))) c.push_back(static_cast<std::uint32_t>(idx(v)));
        std::sort(c.begin(), c.end());
        if (c == verts) return fid(f);
    }
    throw Error(ErrorCode::InvalidMesh, "no face with the requested vertex set");
}

Cycle plane_face(const std::vector<Vec3>& vertices, const Vec3& n, double offset) {
    const Vec3 nn = n.normalized();
    std::vector<std::uint32_t> on;
    Vec3 c = Vec3::Zero();
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (std::abs(vertices[i].dot(nn) - offset) < 1e-9) {
            on.push_back(static_cast<std::uint32_t>(i));
            c += vertices[i];
        }
    }
    c /= static_cast<double>(on.size());
    auto [u, v] = geom::plane_frame(nn);
    std::sort(on.begin(), on.end(), [&](auto a, auto b) {
        Vec3 pa = vertices[a] - c, pb = vertices[b] - c;
        return std::atan2(pa.dot(v), pa.dot(u)) < std::atan2(pb.dot(v), pb.dot(u));
    });
    return on;
}

}  // namespace detail

using detail::finish;

FaceId find_face(const Polyhedron& p, const Vec3& normal, double offset) {
    const Vec3 n = normal.normalized();
    std::optional<FaceId> best;
    double best_area = -1.0;
    for (std::size_t f = 0; f < p.num_faces(); ++f) {
        if (std::abs(std::abs(p.face_normal(fid(f)).dot(n)) - 1.0) > 1e-9) continue;
        auto cyc = p.face(fid(f));
        std::vector<Vec3> pts;
        for (VertexId v : cyc) pts.push_back(p.position(v));
        if (std::abs(pts[0].dot(n) - offset) > 1e-9 * p.scale()) continue;
        double area = geom::newell(pts).norm();
        if (area > best_area) {
            best_area = area;
            best = fid(f);
        }
    }
    if (!best) throw Error(ErrorCode::InvalidMesh, "no face on the requested plane");
    return *best;
}

Polyhedron gen_tetrahedron() {
    MeshData d;
    d.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    d.faces = {{0, 1, 2}, {0, 3, 1}, {0, 2, 3}, {1, 3, 2}};
    return finish(std::move(d), "tetrahedron", 0, true);
}

Polyhedron gen_flat_torus9() {
    const Vec3 base[3] = {{1, 0, 0}, {std::cos(kPi / 8), std::sin(kPi / 8), 0.5}, {std::cos(kPi / 4), std::sin(kPi / 4), 1}};
    MeshData d;
    for (int k = 0; k < 3; ++k)
        for (int level = 0; level < 3; ++level) d.vertices.push_back(geom::rot_z(base[level], 2 * kPi * k / 3));
    auto at = [](int level, int k) { return static_cast<std::uint32_t>(((k + 3) % 3) * 3 + level % 3); };
    for (int level = 0; level < 3; ++level) {
        for (int k = 0; k < 3; ++k) {
            d.faces.push_back({at(level, k), at(level + 1, k), at(level + 1, k - 1)});
            d.faces.push_back({at(level, k), at(level + 1, k - 1), at(level, k - 1)});
        }
    }
    return finish(std::move(d), "flat-torus-9", 1, true);
}

Polyhedron gen_p2_24(double b, double c) {
    const double s3 = std::sqrt(3.0);
    if (!(b > c && c > 0 && 1 > s3 * b && 1 > 4 * s3 * c))
        throw Error(ErrorCode::BadParameters, "need b > c > 0, 1 > sqrt(3) b, 1 > 4 sqrt(3) c");
    const Vec3 base[3] = {{1, 1, 1}, {1 - s3 * b, 1 - b, 1}, {1 - s3 * c, 1 - c, 1 - 4 * s3 * c}};
    MeshData d;
    // v(j, sx, sy, sz): vertex j in 1..3 reflected by the signs
    auto v = [](int j, int sx, int sy, int sz) {
        int bits = (sx < 0 ? 4 : 0) + (sy < 0 ? 2 : 0) + (sz < 0 ? 1 : 0);
        return static_cast<std::uint32_t>((j - 1) * 8 + bits);
    };
    for (int j = 0; j < 3; ++j)
        for (int bits = 0; bits < 8; ++bits) {
            Vec3 p = base[j];
            if (bits & 4) p.x() = -p.x();
            if (bits & 2) p.y() = -p.y();
            if (bits & 1) p.z() = -p.z();
            d.vertices.push_back(p);
        }
    const int signs[2] = {1, -1};
    for (int sz : signs)
        d.faces.push_back({v(1, 1, 1, sz), v(2, 1, 1, sz), v(2, -1, 1, sz), v(1, -1, 1, sz), v(1, -1, -1, sz),
                           v(2, -1, -1, sz), v(2, 1, -1, sz), v(1, 1, -1, sz)});
    for (int sy : signs) d.faces.push_back({v(1, 1, sy, 1), v(1, -1, sy, 1), v(1, -1, sy, -1), v(1, 1, sy, -1)});
    for (int sx : signs) d.faces.push_back({v(1, sx, 1, 1), v(1, sx, 1, -1), v(1, sx, -1, -1), v(1, sx, -1, 1)});
    for (int sy : signs) {
        for (int sz : signs) d.faces.push_back({v(1, 1, sy, sz), v(1, -1, sy, sz), v(3, -1, sy, sz), v(3, 1, sy, sz)});
        d.faces.push_back({v(3, 1, sy, 1), v(3, -1, sy, 1), v(3, -1, sy, -1), v(3, 1, sy, -1)});
        d.faces.push_back({v(2, 1, sy, 1), v(2, -1, sy, 1), v(2, -1, sy, -1), v(2, 1, sy, -1)});
        for (int sx : signs)
            d.faces.push_back({v(1, sx, sy, 1), v(3, sx, sy, 1), v(3, sx, sy, -1), v(1, sx, sy, -1), v(2, sx, sy, -1),
                               v(2, sx, sy, 1)});
    }
    return finish(std::move(d), "p2-24", 2, true);
}

Polyhedron gen_orientable(int g, bool prefer_fewest) {
    if (g < 0) throw Error(ErrorCode::GenusOutOfRange, "genus must be non-negative");
    if (g == 0) return gen_tetrahedron();
    if (g == 1) return gen_flat_torus9();
    if (prefer_fewest) {
        if (g <= 3) return gen_appendix_orientable(g, AppendixFamily::V8g);
        if (g <= 6) return gen_appendix_orientable(g, AppendixFamily::V7gm7);
        return gen_appendix_orientable(g, AppendixFamily::V6g);
    }
    Polyhedron base = gen_p2_24();
    if (g == 2) return base;
    DrillSpec spec;
    spec.face_a = fid(0);  // top octagon
    spec.face_b = fid(1);  // bottom octagon
    spec.n = 12;
    return detail::retag(drill_repeat(base, spec, g - 2), "orientable", g, true);
}

Polyhedron gen_appendix_orientable(int g, AppendixFamily family) {
    MeshData d;
    std::vector<Vec3> base;
    int period = g;
    std::string name;
    if (family == AppendixFamily::V8g) {
        if (g < 2) throw Error(ErrorCode::GenusOutOfRange, "v8g needs g >= 2");
        name = "v8g";
        double delta = kPi * (1 - g) / (2.0 * g);
        double a = -delta / 2, c = 1 / std::tan(kPi / (2 * g));
        double sx = c - 0.5 * std::sin(a) * std::tan(a), sy = 1 - 0.5 * std::sin(a);
        base = {{c, -1, 1}, {c, -1, -1}, {c - std::tan(a), 0, 1}, {c - std::tan(a), 0, -1},
                {sx, -sy, 0}, {sx, sy, 0}, {c, 1, 1}, {c, 1, -1}};
    } else if (family == AppendixFamily::V6g) {
        if (g < 5) throw Error(ErrorCode::GenusOutOfRange, "v6g needs g >= 5");
        name = "v6g";
        double delta = 2 * kPi * (1 - g) / (3.0 * g);
        double a = -delta / 2, c = 1 / std::tan(kPi / g);
        double sx = c - 0.5 * std::sin(a) * std::tan(a), sy = 1 - 0.5 * std::sin(a);
        base = {{c, -1, 1}, {c, -1, -1}, {c - std::tan(a), 0, 1}, {c - std::tan(a), 0, -1}, {sx, -sy, 0}, {sx, sy, 0}};
    } else {
        if (g < 4 || g > 6) throw Error(ErrorCode::GenusOutOfRange, "v7gm7 needs g in 4..6");
        name = "v7gm7";
        period = g - 1;
        double a = kPi / period;
        double x0 = std::sqrt(2.0) * std::sin(kPi / 7) / (3 * std::sqrt(std::cos(2 * kPi / 7) - std::cos(2 * a)));
        double y0 = 1 - std::cos(3 * kPi / 14) * std::sin(a + kPi / 14) /
                            (3 * (std::sin(a + kPi / 14) + std::sin(3 * kPi / 14)));
        double c = 1 / std::tan(a), t = 1 / std::tan(a + kPi / 14);
        base = {{c, -1, 1.0 / 3}, {c, -1, -1.0 / 3}, {c - t, 0, 1.0 / 3}, {c - t, 0, -1.0 / 3},
                {c - (1 - y0) * t, -y0, 0}, {c - (1 - y0) * t, y0, 0}, {c - t - x0, 0, 0}};
    }
    const int nb = static_cast<int>(base.size());
    for (int k = 0; k < period; ++k)
        for (const Vec3& p : base) d.vertices.push_back(geom::rot_z(p, 2 * kPi * k / period));
    auto v = [&](int i, int k) { return static_cast<std::uint32_t>(nb * (((k % period) + period) % period) + i - 1); };

    if (family == AppendixFamily::V8g) {
        Cycle top, bottom;
        for (int k = 0; k < g; ++k) {
            top.insert(top.end(), {v(1, k), v(3, k), v(7, k)});
            bottom.insert(bottom.end(), {v(2, k), v(4, k), v(8, k)});
        }
        d.faces = {top, bottom};
        for (int k = 0; k < g; ++k) {
            d.faces.push_back({v(1, k), v(3, k), v(4, k), v(2, k), v(5, k)});
            d.faces.push_back({v(7, k), v(3, k), v(4, k), v(8, k), v(6, k)});
            d.faces.push_back({v(1, k), v(7, k), v(6, k), v(5, k)});
            d.faces.push_back({v(2, k), v(8, k), v(6, k), v(5, k)});
            d.faces.push_back({v(1, k), v(2, k), v(8, k), v(7, k)});
            d.faces.push_back({v(7, k), v(8, k), v(2, k + 1), v(1, k + 1)});
        }
    } else if (family == AppendixFamily::V6g) {
        Cycle top, bottom;
        for (int k = 0; k < g; ++k) {
            top.insert(top.end(), {v(1, k), v(3, k)});
            bottom.insert(bottom.end(), {v(2, k), v(4, k)});
        }
        d.faces = {top, bottom};
        for (int k = 0; k < g; ++k) {
            d.faces.push_back({v(1, k), v(3, k), v(4, k), v(2, k), v(5, k)});
            d.faces.push_back({v(1, k + 1), v(3, k), v(4, k), v(2, k + 1), v(6, k)});
            d.faces.push_back({v(1, k), v(5, k), v(6, k), v(1, k + 1)});
            d.faces.push_back({v(2, k), v(5, k), v(6, k), v(2, k + 1)});
            d.faces.push_back({v(1, k), v(2, k), v(2, k + 1), v(1, k + 1)});
        }
    } else {
        for (int k = 0; k < period; ++k) {
            d.faces.push_back({v(1, k), v(2, k), v(2, k + 1), v(1, k + 1)});
            d.faces.push_back({v(1, k), v(3, k), v(3, k - 1)});
            d.faces.push_back({v(2, k), v(4, k - 1), v(4, k)});
            d.faces.push_back({v(1, k), v(5, k), v(6, k), v(1, k + 1)});
            d.faces.push_back({v(2, k), v(2, k + 1), v(6, k), v(5, k)});
            d.faces.push_back({v(1, k), v(3, k), v(4, k), v(2, k), v(5, k)});
            d.faces.push_back({v(1, k + 1), v(3, k), v(4, k), v(2, k + 1), v(6, k)});
            d.faces.push_back({v(3, k), v(7, k), v(7, k + 1), v(3, k + 1)});
            d.faces.push_back({v(4, k), v(4, k + 1), v(7, k + 1), v(7, k)});
        }
    }
    return finish(std::move(d), name, g, true);
}

}  // namespace ccp
