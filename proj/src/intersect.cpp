#include "ccp/geometry.hpp"
#include "ccp/metrics.hpp"
#include "ccp/triangulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ccp {

namespace {

struct Box {
    Vec3 lo = Vec3::Constant(INFINITY);
    Vec3 hi = Vec3::Constant(-INFINITY);
    void add(const Vec3& p) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    bool overlaps(const Box& o, double pad) const {
        return (lo.array() <= o.hi.array() + pad).all() && (o.lo.array() <= hi.array() + pad).all();
    }
};

using Tri = std::array<Vec3, 3>;

struct Contact {
    bool hit = false;
    bool coplanar = false;
    Vec3 p0, p1;  // transversal: contact segment; coplanar: overlap centroid in p0
};

// Convex polygon clipping (Sutherland-Hodgman) in 2D, both inputs CCW.
std::vector<Vec2> clip_convex(std::vector<Vec2> subject, const std::array<Vec2, 3>& clip) {
    for (int i = 0; i < 3 && !subject.empty(); ++i) {
        const Vec2& a = clip[i];
        const Vec2& b = clip[(i + 1) % 3];
        std::vector<Vec2> out;
        for (std::size_t j = 0; j < subject.size(); ++j) {
            const Vec2& p = subject[j];
            const Vec2& q = subject[(j + 1) % subject.size()];
            double dp = geom::orient2(a, b, p), dq = geom::orient2(a, b, q);
            if (dp >= 0) out.push_back(p);
            if ((dp >= 0) != (dq >= 0)) out.push_back(p + (q - p) * (dp / (dp - dq)));
        }
        subject = std::move(out);
    }
    return subject;
}

// Portion of triangle t lying on the plane (n, o): endpoints along direction dir.
bool plane_section(const Tri& t, const std::array<double, 3>& d, double eps, const Vec3& dir, Vec3& lo, Vec3& hi) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(d[i]) <= eps) pts.push_back(t[i]);
        int j = (i + 1) % 3;
        if ((d[i] > eps && d[j] < -eps) || (d[i] < -eps && d[j] > eps))
            pts.push_back(t[i] + (t[j] - t[i]) * (d[i] / (d[i] - d[j])));
    }
    if (pts.empty()) return false;
    lo = hi = pts[0];
    for (const Vec3& p : pts) {
        if (p.dot(dir) < lo.dot(dir)) lo = p;
        if (p.dot(dir) > hi.dot(dir)) hi = p;
    }
    return true;
}

Contact tri_tri(const Tri& a, const Vec3& na, const Tri& b, const Vec3& nb, double eps) {
    Contact c;
    std::array<double, 3> da{}, db{};
    for (int i = 0; i < 3; ++i) {
        da[i] = nb.dot(a[i] - b[0]);
        db[i] = na.dot(b[i] - a[0]);
    }
    auto one_side = [eps](const std::array<double, 3>& d) {
        return (d[0] > eps && d[1] > eps && d[2] > eps) || (d[0] < -eps && d[1] < -eps && d[2] < -eps);
    };
    if (one_side(da) || one_side(db)) return c;

    bool coplanar = std::abs(da[0]) <= eps && std::abs(da[1]) <= eps && std::abs(da[2]) <= eps;
    if (coplanar) {
        auto [u, v] = geom::plane_frame(nb);
        auto to2 = [&](const Vec3& p) { return Vec2((p - b[0]).dot(u), (p - b[0]).dot(v)); };
        std::vector<Vec2> pa{to2(a[0]), to2(a[1]), to2(a[2])};
        std::array<Vec2, 3> pb{to2(b[0]), to2(b[1]), to2(b[2])};
        if (geom::signed_area(pa) < 0) std::swap(pa[1], pa[2]);
        if (geom::orient2(pb[0], pb[1], pb[2]) < 0) std::swap(pb[1], pb[2]);
        auto poly = clip_convex(pa, pb);
        if (poly.size() < 3 || geom::signed_area(poly) <= 1e-12) return c;
        Vec2 m = Vec2::Zero();
        for (const Vec2& q : poly) m += q;
        m /= static_cast<double>(poly.size());
        c.hit = c.coplanar = true;
        c.p0 = c.p1 = b[0] + m.x() * u + m.y() * v;
        return c;
    }

    Vec3 dir = na.cross(nb);
    if (dir.norm() < 1e-12) dir = (a[1] - a[0]).normalized();
    dir.normalize();
    Vec3 alo, ahi, blo, bhi;
    if (!plane_section(a, da, eps, dir, alo, ahi) || !plane_section(b, db, eps, dir, blo, bhi)) return c;
    double s0 = std::max(alo.dot(dir), blo.dot(dir));
    double s1 = std::min(ahi.dot(dir), bhi.dot(dir));
    if (s0 > s1 + eps) return c;
    double t0 = alo.dot(dir), t1 = ahi.dot(dir);
    auto at = [&](double s) {
        if (t1 - t0 < 1e-300) return Vec3(alo);
        return Vec3(alo + (ahi - alo) * std::clamp((s - t0) / (t1 - t0), 0.0, 1.0));
    };
    c.hit = true;
    c.p0 = at(s0);
    c.p1 = at(std::max(s0, s1));
    return c;
}

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection 5.1.5).
Vec3 closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    Vec3 ab = b - a, ac = c - a, ap = p - a;
    double d1 = ab.dot(ap), d2 = ac.dot(ap);
    if (d1 <= 0 && d2 <= 0) return a;
    Vec3 bp = p - b;
    double d3 = ab.dot(bp), d4 = ac.dot(bp);
    if (d3 >= 0 && d4 <= d3) return b;
    double vc = d1 * d4 - d3 * d2;
    if (vc <= 0 && d1 >= 0 && d3 <= 0) return a + ab * (d1 / (d1 - d3));
    Vec3 cp = p - c;
    double d5 = ab.dot(cp), d6 = ac.dot(cp);
    if (d6 >= 0 && d5 <= d6) return c;
    double vb = d5 * d2 - d1 * d6;
    if (vb <= 0 && d2 >= 0 && d6 <= 0) return a + ac * (d2 / (d2 - d6));
    double va = d3 * d6 - d5 * d4;
    if (va <= 0 && (d4 - d3) >= 0 && (d5 - d6) >= 0) return b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
    double denom = 1.0 / (va + vb + vc);
    return a + ab * (vb * denom) + ac * (vc * denom);
}

// Shared simplices of a face pair: common vertices and common edges.
struct Shared {
    std::vector<Vec3> points;
    std::vector<std::pair<Vec3, Vec3>> segments;

    bool empty() const { return points.empty(); }

    // contact segment lies on a single shared simplex
    bool covers(const Vec3& a, const Vec3& b, double tol) const {
        for (const Vec3& q : points)
            if ((a - q).norm() <= tol && (b - q).norm() <= tol) return true;
        for (const auto& [q0, q1] : segments)
            if (geom::point_segment_distance(a, q0, q1) <= tol && geom::point_segment_distance(b, q0, q1) <= tol)
                return true;
        return false;
    }
};

Shared shared_simplices(const Polyhedron& p, std::size_t f, std::size_t g) {
    Shared s;
    auto a = p.face(fid(f));
    auto b = p.face(fid(g));
    for (VertexId v : a)
        if (std::find(b.begin(), b.end(), v) != b.end()) s.points.push_back(p.position(v));
    auto consecutive = [](std::span<const VertexId> c, VertexId x, VertexId y) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            VertexId u = c[i], w = c[(i + 1) % c.size()];
            if ((u == x && w == y) || (u == y && w == x)) return true;
        }
        return false;
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
        VertexId x = a[i], y = a[(i + 1) % a.size()];
        if (consecutive(b, x, y)) s.segments.push_back({p.position(x), p.position(y)});
    }
    return s;
}

std::vector<IntersectionWitness> find_intersections(const Polyhedron& p, double contact_tol,
                                                    const std::vector<bool>* subset) {
    const std::size_t nf = p.num_faces();
    const double eps = 1e-12 * p.scale();
    std::vector<std::vector<Tri>> tris(nf);
    std::vector<std::vector<Box>> tri_boxes(nf);
    std::vector<Box> boxes(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        auto cyc = p.face(fid(f));
        std::vector<Vec3> pts;
        for (VertexId v : cyc) {
            pts.push_back(p.position(v));
            boxes[f].add(p.position(v));
        }
        for (const auto& t : tri::triangulate_face(pts)) {
            Tri tr{pts[t[0]], pts[t[1]], pts[t[2]]};
            Box bx;
            for (const Vec3& q : tr) bx.add(q);
            tris[f].push_back(tr);
            tri_boxes[f].push_back(bx);
        }
    }

    std::vector<IntersectionWitness> out;
    for (std::size_t f = 0; f < nf; ++f) {
        for (std::size_t g = f + 1; g < nf; ++g) {
            if (subset && !(*subset)[f] && !(*subset)[g]) continue;
            if (!boxes[f].overlaps(boxes[g], eps)) continue;
            const Shared shared = shared_simplices(p, f, g);
            const Vec3& nf_ = p.face_normal(fid(f));
            const Vec3& ng = p.face_normal(fid(g));
            bool found = false;
            for (std::size_t i = 0; i < tris[f].size() && !found; ++i) {
                for (std::size_t j = 0; j < tris[g].size() && !found; ++j) {
                    if (!tri_boxes[f][i].overlaps(tri_boxes[g][j], eps)) continue;
                    Contact c = tri_tri(tris[f][i], nf_, tris[g][j], ng, eps);
                    if (!c.hit) continue;
                    if (!c.coplanar && shared.covers(c.p0, c.p1, contact_tol)) continue;
                    IntersectionWitness w;
                    w.face_a = fid(f);
                    w.face_b = fid(g);
                    w.kind = c.coplanar ? ContactKind::CoplanarOverlap : ContactKind::Transversal;
                    w.point = c.coplanar ? c.p0 : Vec3(0.5 * (c.p0 + c.p1));
                    out.push_back(w);
                    found = true;
                }
            }
        }
    }
    return out;
}

}  // namespace

std::vector<IntersectionWitness> self_intersections(const Polyhedron& p, double contact_tol) {
    return find_intersections(p, contact_tol, nullptr);
}

std::vector<IntersectionWitness> intersections_involving(const Polyhedron& p, const std::vector<FaceId>& faces,
                                                         double contact_tol) {
    std::vector<bool> subset(p.num_faces(), false);
    for (FaceId f : faces) subset.at(idx(f)) = true;
    return find_intersections(p, contact_tol, &subset);
}

}  // namespace ccp
