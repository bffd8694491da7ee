#include "ccp/geometry.hpp"
#include "ccp/surgery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace ccp {

namespace {

double extent(std::span<const Vec2> pts) {
    double e = 1.0;
    for (const Vec2& p : pts) e = std::max(e, p.cwiseAbs().maxCoeff());
    return e;
}

void require_inside(std::span<const Vec2> face, std::span<const Vec2> hole, double eps) {
    for (const Vec2& h : hole)
        if (!geom::point_in_polygon(h, face) || geom::boundary_distance(h, face) <= eps)
            throw Error(ErrorCode::HoleNotInside, "hole vertex on or outside the face boundary");
    for (std::size_t i = 0; i < hole.size(); ++i)
        for (std::size_t j = 0; j < face.size(); ++j)
            if (geom::segments_intersect(hole[i], hole[(i + 1) % hole.size()], face[j], face[(j + 1) % face.size()],
                                         eps))
                throw Error(ErrorCode::HoleNotInside, "hole crosses the face boundary");
    for (const Vec2& f : face)
        if (geom::point_in_polygon(f, hole)) throw Error(ErrorCode::HoleNotInside, "face vertex inside the hole");
}

double wrap_angle(double a) {
    while (a > kPi) a -= 2 * kPi;
    while (a <= -kPi) a += 2 * kPi;
    return a;
}

std::vector<Vec2> gather(const std::vector<Vec2>& all, const Cycle& c) {
    std::vector<Vec2> out;
    for (auto i : c) out.push_back(all[i]);
    return out;
}

bool convex_strict(const std::vector<Vec2>& poly, double eps) {
    const std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        const Vec2& a = poly[(i + k - 1) % k];
        const Vec2& b = poly[i];
        const Vec2& c = poly[(i + 1) % k];
        if (geom::orient2(a, b, c) <= eps * (a - b).norm() * (c - b).norm()) return false;
    }
    return true;
}

// Spoke partition; empty result means the assignment is not usable.
std::vector<Cycle> spoke_partition(std::span<const Vec2> face, std::span<const Vec2> hole) {
    const std::size_t m = face.size(), n = hole.size();
    std::vector<std::size_t> fo(m), ho(n);  // counter-clockwise visiting orders
    std::iota(fo.begin(), fo.end(), 0u);
    std::iota(ho.begin(), ho.end(), 0u);
    if (geom::signed_area(face) < 0) std::reverse(fo.begin(), fo.end());
    if (geom::signed_area(hole) < 0) std::reverse(ho.begin(), ho.end());

    Vec2 c = Vec2::Zero();
    for (const Vec2& h : hole) c += h;
    c /= static_cast<double>(n);

    std::vector<std::size_t> pos_of(m);
    for (std::size_t k = 0; k < m; ++k) pos_of[fo[k]] = k;
    std::vector<std::size_t> target(n);  // position in fo
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& h = hole[ho[i]];
        double beta = std::atan2(h.y() - c.y(), h.x() - c.x());
        std::size_t best = 0;
        double best_d = INFINITY;
        for (std::size_t j = 0; j < m; ++j) {
            double alpha = std::atan2(face[j].y() - c.y(), face[j].x() - c.x());
            double d = std::abs(wrap_angle(alpha - beta));
            if (d < best_d - 1e-12) {
                best_d = d;
                best = j;
            }
        }
        target[i] = pos_of[best];
    }

    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += (target[(i + 1) % n] + m - target[i]) % m;
    if (total != m) return {};

    std::vector<Cycle> pieces;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j0 = target[i], j1 = target[(i + 1) % n];
        Cycle piece;
        for (std::size_t j = j0;; j = (j + 1) % m) {
            piece.push_back(static_cast<std::uint32_t>(fo[j]));
            if (j == j1) break;
        }
        piece.push_back(static_cast<std::uint32_t>(m + ho[(i + 1) % n]));
        piece.push_back(static_cast<std::uint32_t>(m + ho[i]));
        pieces.push_back(std::move(piece));
    }

    std::vector<Vec2> all(face.begin(), face.end());
    all.insert(all.end(), hole.begin(), hole.end());
    const double eps = 1e-12 * extent(all);
    double area = 0.0;
    for (const Cycle& pc : pieces) {
        auto poly = gather(all, pc);
        double a = geom::signed_area(poly);
        if (a <= eps || !geom::is_simple(poly, eps)) return {};
        area += a;
    }
    double want = std::abs(geom::signed_area(face)) - std::abs(geom::signed_area(hole));
    if (std::abs(area - want) > 1e-9 * std::max(1.0, want)) return {};
    return pieces;
}

}  // namespace

std::vector<Cycle> retile_pierced_face(std::span<const Vec2> face, std::span<const Vec2> hole) {
    if (face.size() < 3 || hole.size() < 3) throw Error(ErrorCode::DegenerateFace, "retile needs polygons");
    std::vector<Vec2> all(face.begin(), face.end());
    all.insert(all.end(), hole.begin(), hole.end());
    require_inside(face, hole, 1e-12 * extent(all));
    auto pieces = spoke_partition(face, hole);
    if (!pieces.empty()) return pieces;
    return retile_multi(face, {std::vector<Vec2>(hole.begin(), hole.end())});
}

std::vector<Cycle> retile_multi(std::span<const Vec2> face, const std::vector<std::vector<Vec2>>& holes,
                                const tri::DiagonalFilter& allowed) {
    std::vector<Vec2> all(face.begin(), face.end());
    for (const auto& h : holes) all.insert(all.end(), h.begin(), h.end());
    const double eps = 1e-12 * extent(all);
    for (const auto& h : holes) require_inside(face, h, eps);
    for (std::size_t i = 0; i < holes.size(); ++i)
        for (std::size_t j = i + 1; j < holes.size(); ++j)
            for (const Vec2& q : holes[j])
                if (geom::point_in_polygon(q, holes[i]) || geom::boundary_distance(q, holes[i]) <= eps)
                    throw Error(ErrorCode::SelfCrossingPartition, "holes overlap");

    // sides of the input boundaries, which are never merged away
    std::set<std::pair<std::uint32_t, std::uint32_t>> boundary;
    auto add_ring = [&](std::uint32_t start, std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            std::uint32_t a = start + static_cast<std::uint32_t>(i);
            std::uint32_t b = start + static_cast<std::uint32_t>((i + 1) % k);
            boundary.insert({std::min(a, b), std::max(a, b)});
        }
    };
    add_ring(0, face.size());
    std::uint32_t off = static_cast<std::uint32_t>(face.size());
    for (const auto& h : holes) {
        add_ring(off, h.size());
        off += static_cast<std::uint32_t>(h.size());
    }

    std::vector<Cycle> pieces;
    for (const auto& t : tri::ear_clip_with_holes(face, holes, allowed)) pieces.push_back({t[0], t[1], t[2]});

    bool merged = true;
    while (merged) {
        merged = false;
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> directed;
        for (std::size_t p = 0; p < pieces.size(); ++p)
            for (std::size_t i = 0; i < pieces[p].size(); ++i)
                directed[{pieces[p][i], pieces[p][(i + 1) % pieces[p].size()]}] = p;
        for (const auto& [key, p] : directed) {
            auto [u, v] = key;
            if (boundary.count({std::min(u, v), std::max(u, v)})) continue;
            auto it = directed.find({v, u});
            if (it == directed.end() || it->second == p) continue;
            std::size_t q = it->second;
            // rotate p to [v ... u] and q to [u ... v]
            Cycle a = pieces[p], b = pieces[q];
            std::rotate(a.begin(), std::find(a.begin(), a.end(), v), a.end());
            std::rotate(b.begin(), std::find(b.begin(), b.end(), u), b.end());
            if (a.back() != u || b.back() != v) continue;
            Cycle m = a;
            m.insert(m.end(), b.begin() + 1, b.end() - 1);
            std::set<std::uint32_t> uniq(m.begin(), m.end());
            if (uniq.size() != m.size() || !convex_strict(gather(all, m), 1e-9)) continue;
            pieces[std::min(p, q)] = m;
            pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(std::max(p, q)));
            merged = true;
            break;
        }
    }
    return pieces;
}

}  // namespace ccp
