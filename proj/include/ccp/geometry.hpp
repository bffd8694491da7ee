#pragma once

#include "ccp/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace ccp::geom {

// Unnormalized Newell normal; its length is twice the polygon area.
Vec3 newell(std::span<const Vec3> pts);

// Orthonormal in-plane axes (u, v) with u x v = n. u is the world axis least
// aligned with n, projected into the plane.
std::pair<Vec3, Vec3> plane_frame(const Vec3& n);

std::vector<Vec2> project(std::span<const Vec3> pts, const Vec3& origin, const Vec3& u, const Vec3& v);

double signed_area(std::span<const Vec2> poly);

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// Orientation of c relative to the directed line a->b (positive: left).
inline double orient2(const Vec2& a, const Vec2& b, const Vec2& c) { return cross2(b - a, c - a); }

// Closed-segment intersection test with absolute tolerance eps.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d, double eps);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);
double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b);

// Distance from p to the polygon boundary.
double boundary_distance(const Vec2& p, std::span<const Vec2> poly);

// Even-odd test; boundary points are reported as outside.
bool point_in_polygon(const Vec2& p, std::span<const Vec2> poly);

// True if no two non-adjacent sides touch.
bool is_simple(std::span<const Vec2> poly, double eps);

// Rotation about the z axis.
Vec3 rot_z(const Vec3& p, double angle);

}  // namespace ccp::geom
