#include "ccp/surgery.hpp"

#include "ccp/geometry.hpp"
#include "ccp/metrics.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ccp {

namespace {

std::size_t mapped(const CycleMap& m, std::size_t i, std::size_t k) {
    return m.reversed ? (m.offset + k - i % k) % k : (m.offset + i) % k;
}

std::uint32_t max_label(const MeshData& d) {
    std::uint32_t m = 0;
    for (const auto& row : d.edge_labels)
        for (auto l : row) m = std::max(m, l);
    return m;
}

// Signed offset of the faces adjacent to f across its edges, measured along n.
double neighbour_side(const Polyhedron& p, FaceId f, const Vec3& origin, const Vec3& n) {
    double side = 0.0;
    auto cyc = p.face(f);
    std::set<VertexId> on_face(cyc.begin(), cyc.end());
    for (std::size_t s = 0; s < cyc.size(); ++s) {
        const Edge& e = p.edge(p.face_edge(f, s));
        FaceId g = e.faces[0] == f && e.sides[0] == s ? e.faces[1] : e.faces[0];
        for (VertexId v : p.face(g))
            if (!on_face.count(v)) side += (p.position(v) - origin).dot(n);
    }
    return side;
}

std::string num(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace

std::vector<CycleMap> isometric_maps(const Polyhedron& p1, FaceId fa, const Polyhedron& p2, FaceId fb, double tol) {
    auto a = p1.face(fa);
    auto b = p2.face(fb);
    std::vector<CycleMap> out;
    if (a.size() != b.size()) return out;
    const std::size_t k = a.size();
    for (int rev = 0; rev < 2; ++rev) {
        for (std::size_t off = 0; off < k; ++off) {
            CycleMap m{off, rev == 1};
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i)
                for (std::size_t j = i + 1; j < k && ok; ++j) {
                    double da = (p1.position(a[i]) - p1.position(a[j])).norm();
                    double db = (p2.position(b[mapped(m, i, k)]) - p2.position(b[mapped(m, j, k)])).norm();
                    ok = std::abs(da - db) <= tol;
                }
            if (ok) out.push_back(m);
        }
    }
    return out;
}

Polyhedron connect_sum(const Polyhedron& p1, const Polyhedron& p2, const FaceCorrespondence& corr,
                       const ToleranceSet& tol) {
    auto fa = p1.face(corr.face_a);
    auto fb = p2.face(corr.face_b);
    const std::size_t k = fa.size();
    if (fb.size() != k) throw Error(ErrorCode::NotIsometric, "glued faces have different vertex counts");
    const double match_tol = std::max(tol.length, tol.planarity) * std::max(p1.scale(), p2.scale());
    auto maps = isometric_maps(p1, corr.face_a, p2, corr.face_b, match_tol);
    CycleMap map;
    if (corr.map) {
        bool ok = std::any_of(maps.begin(), maps.end(), [&](const CycleMap& m) {
            return m.offset == corr.map->offset % k && m.reversed == corr.map->reversed;
        });
        if (!ok) throw Error(ErrorCode::NotIsometric, "given correspondence is not an isometry");
        map = *corr.map;
        map.offset %= k;
    } else {
        if (maps.empty()) throw Error(ErrorCode::NotIsometric, "faces are not congruent");
        if (maps.size() > 1)
            throw Error(ErrorCode::Ambiguous, std::to_string(maps.size()) + " congruent correspondences; pass one");
        map = maps.front();
    }

    // rigid fit of face_b onto face_a
    Eigen::Matrix<double, 3, Eigen::Dynamic> src(3, k), dst(3, k);
    for (std::size_t i = 0; i < k; ++i) {
        dst.col(static_cast<Eigen::Index>(i)) = p1.position(fa[i]);
        src.col(static_cast<Eigen::Index>(i)) = p2.position(fb[mapped(map, i, k)]);
    }
    Vec3 cs = src.rowwise().mean(), cd = dst.rowwise().mean();
    Mat3 h = (src.colwise() - cs) * (dst.colwise() - cd).transpose();
    Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 d = Mat3::Identity();
    d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0 ? -1.0 : 1.0;
    Mat3 rot = svd.matrixV() * d * svd.matrixU().transpose();

    const Vec3 n = p1.face_normal(corr.face_a);
    double side1 = neighbour_side(p1, corr.face_a, cd, n);
    // side of P2's neighbours after the motion
    double side2 = neighbour_side(p2, corr.face_b, cs, p2.face_normal(corr.face_b));
    Vec3 moved_normal = rot * p2.face_normal(corr.face_b);
    side2 *= moved_normal.dot(n) >= 0 ? 1.0 : -1.0;
    if (std::abs(side1) < match_tol || std::abs(side2) < match_tol)
        throw Error(ErrorCode::Ambiguous, "cannot tell which side of the glued face a body lies on");
    if (side1 * side2 > 0) rot = (Mat3::Identity() - 2.0 * n * n.transpose()) * rot;

    for (std::size_t i = 0; i < k; ++i) {
        Vec3 moved = rot * (src.col(static_cast<Eigen::Index>(i)) - cs) + cd;
        if ((moved - dst.col(static_cast<Eigen::Index>(i))).norm() > match_tol * 10)
            throw Error(ErrorCode::NotIsometric, "rigid fit of the glued faces failed");
    }

    const MeshData& d1 = p1.data();
    const MeshData& d2 = p2.data();
    MeshData out;
    out.vertices = d1.vertices;
    std::vector<std::uint32_t> remap(p2.num_vertices(), UINT32_MAX);
    for (std::size_t i = 0; i < k; ++i) remap[idx(fb[mapped(map, i, k)])] = static_cast<std::uint32_t>(idx(fa[i]));
    for (std::size_t v = 0; v < p2.num_vertices(); ++v) {
        if (remap[v] != UINT32_MAX) continue;
        remap[v] = static_cast<std::uint32_t>(out.vertices.size());
        out.vertices.push_back(rot * (d2.vertices[v] - cs) + cd);
    }

    const bool labelled = !d1.edge_labels.empty() || !d2.edge_labels.empty();
    const std::uint32_t shift = max_label(d1);
    for (std::size_t f = 0; f < d1.faces.size(); ++f) {
        if (f == idx(corr.face_a)) continue;
        out.faces.push_back(d1.faces[f]);
        if (labelled)
            out.edge_labels.push_back(d1.edge_labels.empty() ? std::vector<std::uint32_t>(d1.faces[f].size(), 0)
                                                             : d1.edge_labels[f]);
    }
    for (std::size_t f = 0; f < d2.faces.size(); ++f) {
        if (f == idx(corr.face_b)) continue;
        Cycle c;
        for (auto v : d2.faces[f]) c.push_back(remap[v]);
        out.faces.push_back(std::move(c));
        if (labelled) {
            std::vector<std::uint32_t> row(d2.faces[f].size(), 0);
            if (!d2.edge_labels.empty())
                for (std::size_t s = 0; s < row.size(); ++s)
                    row[s] = d2.edge_labels[f][s] == 0 ? 0 : d2.edge_labels[f][s] + shift;
            out.edge_labels.push_back(std::move(row));
        }
    }
    out.seams = d1.seams;
    for (const EdgeKey& s : d2.seams)
        out.seams.push_back(EdgeKey::make(remap[s.a], remap[s.b], s.label == 0 ? 0 : s.label + shift));

    out.metadata.provenance = d1.metadata.provenance;
    out.metadata.provenance.insert(out.metadata.provenance.end(), d2.metadata.provenance.begin(),
                                   d2.metadata.provenance.end());
    out.metadata.provenance.push_back("connect_sum(" + (d1.metadata.family.empty() ? "?" : d1.metadata.family) +
                                      ", " + (d2.metadata.family.empty() ? "?" : d2.metadata.family) + ")");
    out.metadata.surgery_depth = d1.metadata.surgery_depth + d2.metadata.surgery_depth + 1;
    try {
        return build_polyhedron(std::move(out), tol);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::FlatEdge) throw Error(ErrorCode::FlatSeam, e.what());
        throw;
    }
}

int choose_prism_order(const Polyhedron& p) {
    const int chi = euler_characteristic(p);
    const int v = static_cast<int>(p.num_vertices());
    if (chi >= 0) throw Error(ErrorCode::NonNegativeChi, "chi = " + std::to_string(chi));
    if (v % (-chi) != 0)
        throw Error(ErrorCode::NotInteger, std::to_string(v) + " vertices is not a multiple of " + std::to_string(-chi));
    return v / (-chi);
}

Polyhedron drill(const Polyhedron& p, const DrillSpec& spec, const ToleranceSet& tol) {
    return drill_repeat(p, spec, 1, tol);
}

namespace {

// Does the open segment a-b meet face f (as a closed polygon)?
bool segment_hits_face(const Polyhedron& p, FaceId f, const Vec3& a, const Vec3& b, double eps) {
    const Vec3& n = p.face_normal(f);
    auto cyc = p.face(f);
    const Vec3& o = p.position(cyc[0]);
    double da = (a - o).dot(n), db = (b - o).dot(n);
    std::vector<Vec3> pts;
    for (VertexId v : cyc) pts.push_back(p.position(v));
    auto [u, w] = geom::plane_frame(n);
    auto poly = geom::project(pts, o, u, w);
    auto inside = [&](const Vec3& q) {
        Vec2 q2((q - o).dot(u), (q - o).dot(w));
        return geom::point_in_polygon(q2, poly) || geom::boundary_distance(q2, poly) <= eps;
    };
    if (std::abs(da) <= eps && std::abs(db) <= eps) {
        // segment in the face plane: sample its endpoints and midpoint
        return inside(a) || inside(b) || inside(0.5 * (a + b));
    }
    if ((da > eps && db > eps) || (da < -eps && db < -eps)) return false;
    double t = da / (da - db);
    return inside(a + t * (b - a));
}

}  // namespace

Polyhedron drill_repeat(const Polyhedron& p, const DrillSpec& spec, int k, const ToleranceSet& tol) {
    if (spec.n < 3) throw Error(ErrorCode::BadOrder, "prism order " + std::to_string(spec.n) + " < 3");
    if (k < 1) throw Error(ErrorCode::BadParameters, "repeat count must be at least 1");
    if (idx(spec.face_a) >= p.num_faces() || idx(spec.face_b) >= p.num_faces())
        throw Error(ErrorCode::IndexOutOfRange, "drill face index out of range");
    if (spec.face_a == spec.face_b) throw Error(ErrorCode::BadParameters, "drill needs two distinct faces");

    const double eps = 1e-9 * p.scale();
    const Vec3 na = p.face_normal(spec.face_a);
    const Vec3 nb = p.face_normal(spec.face_b);
    if (na.cross(nb).norm() > 1e-9) throw Error(ErrorCode::BadParameters, "drill faces are not parallel");
    auto cyc_a = p.face(spec.face_a);
    auto cyc_b = p.face(spec.face_b);
    const Vec3 oa = p.position(cyc_a[0]);
    const double depth = (p.position(cyc_b[0]) - oa).dot(na);
    if (std::abs(depth) <= eps) throw Error(ErrorCode::BadParameters, "drill faces are coplanar");
    for (VertexId v : cyc_a)
        for (VertexId w : cyc_b)
            if (v == w) throw Error(ErrorCode::BadParameters, "drill faces share a vertex");

    std::vector<Vec3> pa, pb;
    for (VertexId v : cyc_a) pa.push_back(p.position(v));
    for (VertexId v : cyc_b) pb.push_back(p.position(v));
    auto [u, w] = geom::plane_frame(na);

    Vec3 base;
    if (spec.base_point) {
        base = *spec.base_point - (*spec.base_point - oa).dot(na) * na;
    } else {
        base = Vec3::Zero();
        for (const Vec3& q : pa) base += q;
        base /= static_cast<double>(pa.size());
    }
    // 2D coordinates relative to the base point, shared by both faces
    auto poly_a = geom::project(pa, base, u, w);
    std::vector<Vec3> pb_on_a;
    for (const Vec3& q : pb) pb_on_a.push_back(q - depth * na);
    auto poly_b = geom::project(pb_on_a, base, u, w);

    const Vec2 origin = Vec2::Zero();
    auto clearance = [&](const Vec2& c) {
        if (!geom::point_in_polygon(c, poly_a) || !geom::point_in_polygon(c, poly_b)) return 0.0;
        return std::min(geom::boundary_distance(c, poly_a), geom::boundary_distance(c, poly_b));
    };
    if (clearance(origin) <= eps)
        throw Error(ErrorCode::AxisObstructed, "axis base point is not interior to both faces");

    double spacing = 0.0;
    if (k > 1) spacing = spec.spacing ? *spec.spacing : clearance(origin) / k;
    std::vector<Vec2> centres;
    double room = INFINITY;
    for (int i = 0; i < k; ++i) {
        Vec2 c(spacing * (i - 0.5 * (k - 1)), 0.0);
        double cl = clearance(c);
        if (cl <= eps) throw Error(ErrorCode::FootprintTooLarge, "drill axes do not fit inside the faces");
        room = std::min(room, cl);
        centres.push_back(c);
    }
    if (k > 1) room = std::min(room, 0.5 * spacing);
    double radius = spec.radius ? *spec.radius : 0.25 * room;
    if (spec.radius && (*spec.radius <= 0 || *spec.radius >= room))
        throw Error(ErrorCode::FootprintTooLarge, "prism radius " + num(*spec.radius) + " exceeds clearance " + num(room));
    if (radius <= 1e3 * eps) throw Error(ErrorCode::FootprintTooLarge, "prism radius collapsed");

    auto lift = [&](const Vec2& q) { return Vec3(base + q.x() * u + q.y() * w); };
    if (!spec.allow_immersed) {
        for (const Vec2& c : centres) {
            Vec3 top = lift(c), bottom = top + depth * na;
            Vec3 a = top + 1e-6 * depth * na, b = bottom - 1e-6 * depth * na;
            for (std::size_t f = 0; f < p.num_faces(); ++f) {
                if (fid(f) == spec.face_a || fid(f) == spec.face_b) continue;
                if (segment_hits_face(p, fid(f), a, b, eps))
                    throw Error(ErrorCode::AxisObstructed, "drill axis meets face " + std::to_string(f));
            }
        }
    }

    MeshData out;
    out.vertices = p.positions();
    const MeshData& in = p.data();
    const bool labelled = !in.edge_labels.empty();
    std::set<std::size_t> drop{idx(spec.face_a), idx(spec.face_b)};
    for (std::size_t f = 0; f < in.faces.size(); ++f) {
        if (drop.count(f)) continue;
        out.faces.push_back(in.faces[f]);
        if (labelled) out.edge_labels.push_back(in.edge_labels[f]);
    }
    out.seams = in.seams;

    // hole rings, counter-clockwise in the (u, w) frame
    std::vector<std::vector<Vec2>> holes;
    std::vector<std::vector<std::uint32_t>> top_ids, bottom_ids;
    for (const Vec2& c : centres) {
        std::vector<Vec2> ring;
        std::vector<std::uint32_t> t_ids, b_ids;
        for (int j = 0; j < spec.n; ++j) {
            double ang = spec.phase + 2 * kPi * j / spec.n;
            ring.emplace_back(c + radius * Vec2(std::cos(ang), std::sin(ang)));
        }
        for (const Vec2& q : ring) {
            t_ids.push_back(static_cast<std::uint32_t>(out.vertices.size()));
            out.vertices.push_back(lift(q));
        }
        for (const Vec2& q : ring) {
            b_ids.push_back(static_cast<std::uint32_t>(out.vertices.size()));
            out.vertices.push_back(lift(q) + depth * na);
        }
        holes.push_back(std::move(ring));
        top_ids.push_back(std::move(t_ids));
        bottom_ids.push_back(std::move(b_ids));
    }

    std::set<std::pair<std::uint32_t, std::uint32_t>> existing;
    for (std::size_t e = 0; e < p.num_edges(); ++e) {
        const Edge& ed = p.edge(eid(e));
        existing.insert({static_cast<std::uint32_t>(idx(ed.a)), static_cast<std::uint32_t>(idx(ed.b))});
    }

    auto retile = [&](std::span<const VertexId> cyc, const std::vector<Vec2>& poly,
                      const std::vector<std::vector<std::uint32_t>>& ids, bool flip) {
        const std::size_t m = cyc.size();
        std::vector<std::uint32_t> global;
        for (VertexId v : cyc) global.push_back(static_cast<std::uint32_t>(idx(v)));
        for (const auto& r : ids) global.insert(global.end(), r.begin(), r.end());
        auto allowed = [&](std::uint32_t a, std::uint32_t b) {
            std::uint32_t ga = global[a], gb = global[b];
            return !existing.count({std::min(ga, gb), std::max(ga, gb)});
        };
        std::vector<Cycle> pieces = holes.size() == 1 ? retile_pierced_face(poly, holes[0])
                                                      : retile_multi(poly, holes, allowed);
        // which local indices sit on which ring, to tell cuts from boundary sides
        std::vector<int> ring_of(global.size(), -1);
        std::size_t offset = m;
        for (std::size_t r = 0; r < ids.size(); ++r)
            for (std::size_t j = 0; j < ids[r].size(); ++j) ring_of[offset++] = static_cast<int>(r);
        auto is_side = [&](std::uint32_t a, std::uint32_t b) {
            if (a < m && b < m) return (a + 1) % m == b || (b + 1) % m == a;
            if (a < m || b < m || ring_of[a] != ring_of[b]) return false;
            std::size_t start = m;
            for (int r = 0; r < ring_of[a]; ++r) start += ids[r].size();
            std::size_t len = ids[ring_of[a]].size();
            std::size_t ia = a - start, ib = b - start;
            return (ia + 1) % len == ib || (ib + 1) % len == ia;
        };
        for (Cycle& pc : pieces) {
            for (std::size_t s = 0; s < pc.size(); ++s) {
                std::uint32_t a = pc[s], b = pc[(s + 1) % pc.size()];
                if (!is_side(a, b)) out.seams.push_back(EdgeKey::make(global[a], global[b]));
            }
            Cycle g;
            for (auto i : pc) g.push_back(global[i]);
            if (flip) std::reverse(g.begin(), g.end());
            out.faces.push_back(std::move(g));
            if (labelled) out.edge_labels.emplace_back(pc.size(), 0);
        }
    };
    // face_a is counter-clockwise in its own frame; face_b may be either way round
    retile(cyc_a, poly_a, top_ids, false);
    retile(cyc_b, poly_b, bottom_ids, nb.dot(na) < 0);
    std::set<EdgeKey> seam_set(out.seams.begin(), out.seams.end());
    out.seams.assign(seam_set.begin(), seam_set.end());

    std::vector<FaceId> walls;
    for (std::size_t h = 0; h < holes.size(); ++h) {
        for (int j = 0; j < spec.n; ++j) {
            int j1 = (j + 1) % spec.n;
            walls.push_back(fid(out.faces.size()));
            out.faces.push_back({top_ids[h][j], top_ids[h][j1], bottom_ids[h][j1], bottom_ids[h][j]});
            if (labelled) out.edge_labels.emplace_back(4, 0);
        }
    }

    out.metadata = in.metadata;
    out.metadata.provenance.push_back("drill(n=" + std::to_string(spec.n) + ", k=" + std::to_string(k) +
                                      ", faces=" + std::to_string(idx(spec.face_a)) + "/" +
                                      std::to_string(idx(spec.face_b)) + ")");
    out.metadata.surgery_depth += k;
    out.metadata.genus.reset();
    out.metadata.expected_defect.reset();

    Polyhedron result = build_polyhedron(std::move(out), tol);
    if (!spec.allow_immersed && !intersections_involving(result, walls).empty())
        throw Error(ErrorCode::AxisObstructed, "prism walls meet other faces");
    return result;
}

}  // namespace ccp
