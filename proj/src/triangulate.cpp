#include "ccp/triangulate.hpp"

#include "ccp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ccp::tri {

namespace {

using geom::orient2;

class Clipper {
public:
    Clipper(std::vector<Vec2> pts, std::vector<std::uint32_t> ring, const DiagonalFilter& allowed)
        : pts_(std::move(pts)), ring_(std::move(ring)), allowed_(allowed) {
        double ext = 1.0;
        for (const Vec2& p : pts_) ext = std::max(ext, p.cwiseAbs().maxCoeff());
        eps_ = 1e-12 * ext;
    }

    const std::vector<std::uint32_t>& ring() const { return ring_; }
    const Vec2& at(std::size_t slot) const { return pts_[ring_[slot]]; }
    std::size_t prev(std::size_t s) const { return (s + ring_.size() - 1) % ring_.size(); }
    std::size_t next(std::size_t s) const { return (s + 1) % ring_.size(); }

    // Is q inside the interior angle of the ring at `slot`?
    bool locally_inside(std::size_t slot, const Vec2& q) const {
        const Vec2& a = at(prev(slot));
        const Vec2& b = at(slot);
        const Vec2& c = at(next(slot));
        Vec2 d1 = c - b, d2 = a - b, w = q - b;
        if (geom::cross2(d1, d2) > 0) return geom::cross2(d1, w) > eps_ && geom::cross2(w, d2) > eps_;
        return !(geom::cross2(d2, w) >= -eps_ && geom::cross2(w, d1) >= -eps_);
    }

    // Does segment p-q cross a ring edge that does not end at p or q?
    bool crosses_ring(const Vec2& p, const Vec2& q) const {
        for (std::size_t j = 0; j < ring_.size(); ++j) {
            const Vec2& a = at(j);
            const Vec2& b = at(next(j));
            if (near(a, p) || near(a, q) || near(b, p) || near(b, q)) continue;
            if (geom::segments_intersect(p, q, a, b, eps_)) return true;
        }
        return false;
    }

    bool near(const Vec2& a, const Vec2& b) const { return (a - b).norm() <= eps_; }

    void splice_hole(std::size_t slot, const std::vector<std::uint32_t>& hole, std::size_t start) {
        std::vector<std::uint32_t> ins;
        for (std::size_t i = 0; i <= hole.size(); ++i) ins.push_back(hole[(start + i) % hole.size()]);
        ins.push_back(ring_[slot]);
        ring_.insert(ring_.begin() + static_cast<std::ptrdiff_t>(slot) + 1, ins.begin(), ins.end());
    }

    std::vector<Triangle> run() {
        std::vector<Triangle> out;
        std::size_t cursor = 0;
        while (ring_.size() > 3) {
            bool clipped = false;
            for (std::size_t t = 0; t < ring_.size(); ++t) {
                std::size_t s = (cursor + t) % ring_.size();
                if (!is_ear(s)) continue;
                out.push_back({ring_[prev(s)], ring_[s], ring_[next(s)]});
                ring_.erase(ring_.begin() + static_cast<std::ptrdiff_t>(s));
                cursor = s == 0 ? 0 : s - 1;
                clipped = true;
                break;
            }
            if (!clipped) throw Error(ErrorCode::DegenerateFace, "ear clipping found no ear");
        }
        if (orient2(at(0), at(1), at(2)) > eps_ * eps_) out.push_back({ring_[0], ring_[1], ring_[2]});
        return out;
    }

private:
    bool is_ear(std::size_t s) const {
        std::size_t ip = prev(s), in = next(s);
        const Vec2& a = at(ip);
        const Vec2& b = at(s);
        const Vec2& c = at(in);
        if (orient2(a, b, c) <= 1e-12 * (a - b).norm() * (c - b).norm()) return false;
        if (allowed_ && !allowed_(ring_[ip], ring_[in])) return false;
        for (std::size_t j = 0; j < ring_.size(); ++j) {
            if (j == ip || j == s || j == in) continue;
            const Vec2& p = at(j);
            if (near(p, a) || near(p, b) || near(p, c)) continue;
            if (orient2(a, b, p) >= -eps_ && orient2(b, c, p) >= -eps_ && orient2(c, a, p) >= -eps_) return false;
        }
        if (!locally_inside(ip, c) || !locally_inside(in, a)) return false;
        return !crosses_ring(a, c);
    }

    std::vector<Vec2> pts_;
    std::vector<std::uint32_t> ring_;
    const DiagonalFilter& allowed_;
    double eps_ = 1e-12;
};

}  // namespace

std::vector<Triangle> ear_clip(std::span<const Vec2> poly, const DiagonalFilter& allowed) {
    std::vector<std::uint32_t> ring(poly.size());
    std::iota(ring.begin(), ring.end(), 0u);
    bool flipped = geom::signed_area(poly) < 0;
    if (flipped) std::reverse(ring.begin(), ring.end());
    Clipper c(std::vector<Vec2>(poly.begin(), poly.end()), std::move(ring), allowed);
    auto tris = c.run();
    if (flipped)
        for (auto& t : tris) std::swap(t[1], t[2]);
    return tris;
}

std::vector<Triangle> ear_clip_with_holes(std::span<const Vec2> outer, const std::vector<std::vector<Vec2>>& holes,
                                          const DiagonalFilter& allowed) {
    std::vector<Vec2> pts(outer.begin(), outer.end());
    std::vector<std::uint32_t> ring(outer.size());
    std::iota(ring.begin(), ring.end(), 0u);
    if (geom::signed_area(outer) < 0) std::reverse(ring.begin(), ring.end());

    std::vector<std::vector<std::uint32_t>> hole_rings;
    for (const auto& h : holes) {
        std::vector<std::uint32_t> hr;
        for (const Vec2& p : h) {
            hr.push_back(static_cast<std::uint32_t>(pts.size()));
            pts.push_back(p);
        }
        if (geom::signed_area(h) > 0) std::reverse(hr.begin(), hr.end());
        hole_rings.push_back(std::move(hr));
    }

    std::vector<std::size_t> order(hole_rings.size());
    std::iota(order.begin(), order.end(), 0u);
    auto max_x = [&](std::size_t h) {
        double m = -INFINITY;
        for (auto i : hole_rings[h]) m = std::max(m, pts[i].x());
        return m;
    };
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return max_x(a) > max_x(b); });

    Clipper c(pts, ring, allowed);
    std::vector<bool> bridged(hole_rings.size(), false);
    for (std::size_t h : order) {
        const auto& hr = hole_rings[h];
        std::size_t start = 0;
        for (std::size_t i = 1; i < hr.size(); ++i)
            if (pts[hr[i]].x() > pts[hr[start]].x()) start = i;
        const Vec2& m = pts[hr[start]];

        std::vector<std::size_t> slots(c.ring().size());
        std::iota(slots.begin(), slots.end(), 0u);
        std::stable_sort(slots.begin(), slots.end(),
                         [&](auto a, auto b) { return (c.at(a) - m).norm() < (c.at(b) - m).norm(); });
        auto blocked_by_holes = [&](const Vec2& v) {
            for (std::size_t o = 0; o < hole_rings.size(); ++o) {
                if (bridged[o]) continue;
                const auto& r = hole_rings[o];
                for (std::size_t i = 0; i < r.size(); ++i) {
                    const Vec2& a = pts[r[i]];
                    const Vec2& b = pts[r[(i + 1) % r.size()]];
                    if (c.near(a, m) || c.near(b, m)) continue;
                    if (geom::segments_intersect(m, v, a, b, 1e-12)) return true;
                }
            }
            return false;
        };
        bool done = false;
        for (std::size_t s : slots) {
            const Vec2& v = c.at(s);
            if (!c.locally_inside(s, m) || c.crosses_ring(m, v) || blocked_by_holes(v)) continue;
            c.splice_hole(s, hr, start);
            done = true;
            break;
        }
        if (!done) throw Error(ErrorCode::SelfCrossingPartition, "no visible bridge for a hole");
        bridged[h] = true;
    }
    return c.run();
}

std::vector<Triangle> triangulate_face(std::span<const Vec3> pts) {
    Vec3 n = geom::newell(pts).normalized();
    auto [u, v] = geom::plane_frame(n);
    auto poly = geom::project(pts, pts[0], u, v);
    return ear_clip(poly);
}

}  // namespace ccp::tri
