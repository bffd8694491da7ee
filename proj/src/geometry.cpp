#include "ccp/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ccp::geom {

Vec3 newell(std::span<const Vec3> pts) {
    Vec3 n = Vec3::Zero();
    const std::size_t k = pts.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Vec3& a = pts[i];
        const Vec3& b = pts[(i + 1) % k];
        n.x() += (a.y() - b.y()) * (a.z() + b.z());
        n.y() += (a.z() - b.z()) * (a.x() + b.x());
        n.z() += (a.x() - b.x()) * (a.y() + b.y());
    }
    return n;
}

std::pair<Vec3, Vec3> plane_frame(const Vec3& n) {
    int axis = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(n[i]) < std::abs(n[axis]) - 1e-12) axis = i;
    Vec3 a = Vec3::Zero();
    a[axis] = 1.0;
    Vec3 u = (a - a.dot(n) * n).normalized();
    Vec3 v = n.cross(u);
    return {u, v};
}

std::vector<Vec2> project(std::span<const Vec3> pts, const Vec3& origin, const Vec3& u, const Vec3& v) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const Vec3& p : pts) out.emplace_back((p - origin).dot(u), (p - origin).dot(v));
    return out;
}

double signed_area(std::span<const Vec2> poly) {
    double s = 0.0;
    for (std::size_t i = 0, k = poly.size(); i < k; ++i) s += cross2(poly[i], poly[(i + 1) % k]);
    return 0.5 * s;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double len2 = ab.squaredNorm();
    double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (a + t * ab - p).norm();
}

double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
    Vec3 ab = b - a;
    double len2 = ab.squaredNorm();
    double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    return (a + t * ab - p).norm();
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double eps) {
    double scale = std::max({(b - a).norm(), (d - c).norm(), 1e-300});
    double d1 = orient2(a, b, c) / scale, d2 = orient2(a, b, d) / scale;
    double d3 = orient2(c, d, a) / scale, d4 = orient2(c, d, b) / scale;
    if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
        ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
        return true;
    return point_segment_distance(c, a, b) <= eps || point_segment_distance(d, a, b) <= eps ||
           point_segment_distance(a, c, d) <= eps || point_segment_distance(b, c, d) <= eps;
}

double boundary_distance(const Vec2& p, std::span<const Vec2> poly) {
    double best = INFINITY;
    for (std::size_t i = 0, k = poly.size(); i < k; ++i)
        best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % k]));
    return best;
}

bool point_in_polygon(const Vec2& p, std::span<const Vec2> poly) {
    bool inside = false;
    for (std::size_t i = 0, k = poly.size(), j = k - 1; i < k; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            double x = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (p.x() < x) inside = !inside;
        }
    }
    return inside;
}

bool is_simple(std::span<const Vec2> poly, double eps) {
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        // adjacent sides may only share their common endpoint
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % k];
        const Vec2& c = poly[(i + 2) % k];
        if (point_segment_distance(c, a, b) <= eps || point_segment_distance(a, b, c) <= eps) return false;
        for (std::size_t j = i + 1; j < k; ++j) {
            if (j == i + 1 || (i == 0 && j == k - 1)) continue;
            if (segments_intersect(poly[i], poly[(i + 1) % k], poly[j], poly[(j + 1) % k], eps)) return false;
        }
    }
    return true;
}

Vec3 rot_z(const Vec3& p, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x() - s * p.y(), s * p.x() + c * p.y(), p.z()};
}

}  // namespace ccp::geom
