#include "ccp/generators.hpp"
#include "ccp/geometry.hpp"
#include "ccp/surgery.hpp"
#include "gen_common.hpp"

#include <algorithm>
#include <cmath>

namespace ccp {

using detail::finish;
using detail::retag;

namespace {

Vec3 on_circle(double t, double rad, double z) { return {rad * std::cos(t), rad * std::sin(t), z}; }

// Glue a copy of `block` (face 0 is its base triangle) onto the triangle
// tri of `host`, block vertex i going to tri[i].
Polyhedron glue_block(const Polyhedron& host, std::vector<std::uint32_t> tri, const Polyhedron& block) {
    FaceId fa = detail::face_with_vertices(host, tri);
    auto cyc = host.face(fa);
    // rotate the correspondence so block vertex 0 lands on tri[0]
    std::size_t k = cyc.size(), pos = 0;
    while (idx(cyc[pos]) != tri[0]) ++pos;
    bool forward = idx(cyc[(pos + 1) % k]) == tri[1];
    // face_b[(offset +- i)] <-> face_a[i]; face_b is [0,1,2]
    CycleMap map;
    map.reversed = !forward;
    map.offset = forward ? (k - pos) % k : pos % k;
    return connect_sum(host, block, {fa, fid(0), map});
}

Polyhedron hemi(std::vector<Vec3> verts, const std::vector<std::pair<Vec3, double>>& planes, std::string name,
                int genus) {
    MeshData d;
    for (const auto& [n, off] : planes) d.faces.push_back(detail::plane_face(verts, n, off));
    d.vertices = std::move(verts);
    return finish(std::move(d), std::move(name), genus, false);
}

double max_dot(const std::vector<Vec3>& verts, const Vec3& n) {
    double m = -INFINITY;
    for (const Vec3& v : verts) m = std::max(m, v.dot(n.normalized()));
    return m;
}

}  // namespace

Polyhedron gen_r_block(double r, double h) {
    if (!(r > 0 && r <= 1 && h > 0)) throw Error(ErrorCode::BadParameters, "need 0 < r <= 1 and h > 0");
    MeshData d;
    d.vertices = {on_circle(0, 1, 0),      on_circle(2 * kPi / 3, 1, 0), on_circle(4 * kPi / 3, 1, 0),
                  on_circle(kPi, r, h),    on_circle(5 * kPi / 3, r, h), on_circle(kPi / 3, r, h)};
    d.faces = {{0, 1, 2}, {0, 5, 4}, {1, 3, 5}, {2, 4, 3}, {1, 2, 4, 5}, {2, 0, 5, 3}, {0, 1, 3, 4}};
    d.metadata.family = "r-block";
    d.metadata.genus = 1;
    d.metadata.orientable = false;
    d.metadata.provenance = {"r-block"};
    if (r == 1.0 && std::abs(h - std::sqrt(2.0)) < 1e-15) d.metadata.expected_defect = kPi / 3;
    return build_polyhedron(std::move(d));
}

Polyhedron gen_tetrahemihexahedron() { return retag(gen_r_block(1.0, std::sqrt(2.0)), "thh", 1, false); }

Polyhedron gen_q2_9() {
    Polyhedron r = gen_r_block(0.5, 0.5 * std::sqrt(3 * (1 + std::sqrt(3.0))));
    return retag(connect_sum(r, r, {fid(0), fid(0), CycleMap{0, false}}), "q2-9", 2, false);
}

namespace {

struct SParams {
    double h2, k;
};

SParams s_params() {
    const double s18 = std::sin(kPi / 18);
    double h2 = std::sqrt(-4 * s18 * s18 + 2 * s18 + 2);
    return {h2, 1.5 - std::sqrt(9.0 / 4 - h2 * h2)};
}

}  // namespace

Polyhedron gen_s_base() {
    auto [h2, k] = s_params();
    const Vec3 b[3] = {{k, 0, h2}, {1.5, -std::sqrt(3.0) / 2, 0}, {1.5, std::sqrt(3.0) / 2, 0}};
    MeshData d;
    for (int j = 0; j < 3; ++j)
        for (const Vec3& p : b) d.vertices.push_back(geom::rot_z(p, 2 * kPi * j / 3));
    auto i1 = [](int j) { return static_cast<std::uint32_t>(3 * (j % 3)); };
    auto i2 = [&](int j) { return i1(j) + 1; };
    auto i3 = [&](int j) { return i1(j) + 2; };
    d.faces.push_back({i1(0), i1(1), i1(2)});
    d.faces.push_back({i3(2), i2(2), i3(1), i2(1), i3(0), i2(0)});
    for (int j = 0; j < 3; ++j) {
        d.faces.push_back({i1(j), i2(j), i3(j)});
        d.faces.push_back({i1(j), i3(j), i2(j + 1), i1(j + 1)});
    }
    // S alone is a sphere; only the glued Q3_18 has constant defect
    d.metadata.family = "s-base";
    d.metadata.genus = 0;
    d.metadata.orientable = true;
    d.metadata.provenance = {"s-base"};
    return build_polyhedron(std::move(d));
}

Polyhedron gen_q3_18() {
    const double s9 = std::sin(kPi / 9);
    Polyhedron r = gen_r_block(2 * s9 / (1 + 2 * s9), std::sqrt(-4 * s9 * s9 - 2 * s9 + 2) / (1 + 2 * s9));
    Polyhedron q = gen_s_base();
    for (std::uint32_t j = 0; j < 3; ++j) q = glue_block(q, {3 * j, 3 * j + 1, 3 * j + 2}, r);
    return retag(q, "q3-18", 3, false);
}

Polyhedron gen_cubohemioctahedron() {
    std::vector<Vec3> v;
    for (int axis = 0; axis < 3; ++axis)
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                Vec3 p = Vec3::Zero();
                p[(axis + 1) % 3] = s1;
                p[(axis + 2) % 3] = s2;
                v.push_back(p);
            }
    std::vector<std::pair<Vec3, double>> planes;
    for (int axis = 0; axis < 3; ++axis)
        for (int s : {1, -1}) planes.push_back({Vec3::Unit(axis) * s, 1.0});
    for (Vec3 n : {Vec3(1, 1, 1), Vec3(1, 1, -1), Vec3(1, -1, 1), Vec3(-1, 1, 1)}) planes.push_back({n, 0.0});
    return hemi(std::move(v), planes, "cho", 4);
}

Polyhedron gen_rhombihexahedron() {
    const double q = 1 + std::sqrt(2.0);
    std::vector<Vec3> v;
    for (int axis = 0; axis < 3; ++axis)
        for (int s0 : {1, -1})
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) {
                    Vec3 p;
                    p[axis] = s0 * q;
                    p[(axis + 1) % 3] = s1;
                    p[(axis + 2) % 3] = s2;
                    v.push_back(p);
                }
    std::vector<std::pair<Vec3, double>> planes;
    for (int axis = 0; axis < 3; ++axis)
        for (int s : {1, -1}) planes.push_back({Vec3::Unit(axis) * s, 1.0});
    for (int axis = 0; axis < 3; ++axis)
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                Vec3 n = Vec3::Zero();
                n[(axis + 1) % 3] = s1;
                n[(axis + 2) % 3] = s2;
                planes.push_back({n, max_dot(v, n)});
            }
    return hemi(std::move(v), planes, "rhombihexahedron", 8);
}

Polyhedron gen_small_dodecahemidodecahedron() {
    const double phi = (1 + std::sqrt(5.0)) / 2;
    std::vector<Vec3> v;
    for (int axis = 0; axis < 3; ++axis) {
        for (int s : {1, -1}) {
            Vec3 p = Vec3::Zero();
            p[axis] = s * phi;
            v.push_back(p);
        }
        for (int s0 : {1, -1})
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) {
                    Vec3 p;
                    p[axis] = s0 * 0.5;
                    p[(axis + 1) % 3] = s1 * phi / 2;
                    p[(axis + 2) % 3] = s2 * phi * phi / 2;
                    v.push_back(p);
                }
    }
    std::vector<Vec3> axes;  // icosahedron vertex directions
    for (int axis = 0; axis < 3; ++axis)
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                Vec3 n = Vec3::Zero();
                n[(axis + 1) % 3] = s1 * phi;
                n[(axis + 2) % 3] = s2;
                axes.push_back(n);
            }
    std::vector<std::pair<Vec3, double>> planes;
    for (const Vec3& n : axes) planes.push_back({n, max_dot(v, n)});
    for (const Vec3& n : axes)
        if (n[0] + n[1] + n[2] > 0 || (n[0] + n[1] + n[2] == 0 && n[0] > 0)) planes.push_back({n, 0.0});
    return hemi(std::move(v), planes, "small-dodecahemidodecahedron", 14);
}

namespace {

Polyhedron n5g_direct(int g) {
    const double a = (2 * g - 4) * kPi / (5 * g);
    const double rad = -3 + 6 * std::cos(a) + 6 * std::cos(a / 2) - 6 * std::cos(1.5 * a) + 6 * std::cos(2.5 * a);
    const double h2 = std::sqrt(rad) / (2 * std::cos(5 * a / 4));
    const double x = std::sqrt(3.0) / 2 * std::tan(5 * a / 4);
    const Vec3 b1{x - std::sqrt(9.0 / 4 - h2 * h2), 0, h2}, b2{x, -std::sqrt(3.0) / 2, 0};
    MeshData d;
    for (int k = 0; k < g; ++k) {
        d.vertices.push_back(geom::rot_z(b1, 2 * kPi * k / g));
        d.vertices.push_back(geom::rot_z(b2, 2 * kPi * k / g));
    }
    auto t = [g](int k) { return static_cast<std::uint32_t>(2 * (k % g)); };
    auto b = [&](int k) { return t(k) + 1; };
    Cycle top, bottom;
    for (int k = 0; k < g; ++k) {
        top.push_back(t(k));
        bottom.insert(bottom.begin(), b(k));
    }
    d.faces = {top, bottom};
    for (int k = 0; k < g; ++k) {
        d.faces.push_back({t(k), b(k), b(k + 1)});
        d.faces.push_back({t(k), b(k + 1), t(k + 1)});
    }
    d.metadata.family = "n5g-base";
    Polyhedron q = build_polyhedron(std::move(d));
    const double r = 0.5 * (1 - std::sqrt((11 + 14 * std::cos(a / 2)) / (1 + 2 * std::cos(a / 2))) * std::tan(a / 4));
    Polyhedron block = gen_r_block(r, 1.0);
    for (int k = 0; k < g; ++k) q = glue_block(q, {t(k), b(k), b(k + 1)}, block);
    return retag(q, "n5g", g, false);
}

}  // namespace

Polyhedron gen_n5g_odd(int g) {
    if (g < 3 || g % 2 == 0) throw Error(ErrorCode::GenusOutOfRange, "n5g needs odd g >= 3");
    if (g <= 11) return n5g_direct(g);
    Polyhedron base = n5g_direct(7);
    DrillSpec spec;
    spec.face_a = fid(0);
    spec.face_b = find_face(base, Vec3::UnitZ(), 0.0);
    spec.n = 7;
    return retag(drill_repeat(base, spec, (g - 7) / 2), "n5g", g, false);
}

Polyhedron gen_nonorientable(int g, bool prefer_fewest) {
    if (g < 1) throw Error(ErrorCode::GenusOutOfRange, "non-orientable genus must be at least 1");
    if (g == 1) return gen_tetrahemihexahedron();
    if (g == 2) return gen_q2_9();
    if (prefer_fewest) {
        if (g % 2 == 1) return gen_n5g_odd(g);
        if (g == 4) return gen_cubohemioctahedron();
        if (g == 14) return gen_small_dodecahemidodecahedron();
        if (g >= 8) {
            Polyhedron base = gen_rhombihexahedron();
            if (g == 8) return base;
            const int k = (g - 8) / 2;
            DrillSpec spec;
            spec.face_a = find_face(base, Vec3::UnitZ(), 1.0);
            spec.face_b = find_face(base, Vec3::UnitZ(), -1.0);
            spec.n = 4;
            // keep every tunnel clear of the octagons x = +-1
            spec.spacing = 1.5 / k;
            return retag(drill_repeat(base, spec, k), "nonorientable", g, false);
        }
    }
    if (g == 3) return gen_q3_18();
    if (g == 4) return gen_cubohemioctahedron();
    DrillSpec spec;
    if (g % 2 == 1) {
        Polyhedron base = gen_q3_18();
        spec.face_a = find_face(base, Vec3::UnitZ(), s_params().h2);
        spec.face_b = find_face(base, Vec3::UnitZ(), 0.0);
        spec.n = 18;
        return retag(drill_repeat(base, spec, (g - 3) / 2), "nonorientable", g, false);
    }
    Polyhedron base = gen_cubohemioctahedron();
    spec.face_a = find_face(base, Vec3::UnitZ(), 1.0);
    spec.face_b = find_face(base, Vec3::UnitZ(), -1.0);
    spec.n = 6;
    spec.allow_immersed = true;
    return retag(drill_repeat(base, spec, (g - 4) / 2), "nonorientable", g, false);
}

}  // namespace ccp
