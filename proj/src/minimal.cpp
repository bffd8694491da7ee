#include "ccp/generators.hpp"
#include "gen_common.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace ccp {

namespace {

// local T-block faces: v1 apex, v2 v3 base, v4..v6 the top copies
const std::array<std::vector<std::uint32_t>, 9> kBlockFaces = {{{1, 2, 3},
                                                                {0, 2, 4},
                                                                {0, 1, 5},
                                                                {3, 4, 2},
                                                                {3, 5, 1},
                                                                {4, 5, 0},
                                                                {1, 2, 5, 4},
                                                                {2, 0, 3, 5},
                                                                {0, 1, 4, 3}}};

bool diagonal(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return a < 3 && b >= 3 && b != a + 3;
}

std::array<Vec2, 3> base_triangle(double l, double d) {
    double h = std::sqrt(l * l - d * d / 4);
    return {Vec2(0, h), Vec2(-d / 2, 0), Vec2(d / 2, 0)};
}

// point at distance da from a and db from b, on the far side of ab from `away`
Vec2 third(const Vec2& a, const Vec2& b, double da, double db, const Vec2& away) {
    const double len = (b - a).norm();
    const Vec2 e = (b - a) / len;
    const double x = (da * da - db * db + len * len) / (2 * len);
    const double y = std::sqrt(std::max(da * da - x * x, 0.0));
    Vec2 n(-e.y(), e.x());
    if ((away - a).dot(n) > 0) n = -n;
    return a + x * e + y * n;
}

double bisect(const std::function<double(double)>& fn, double lo, double hi, double tol) {
    for (int it = 0; it < 400 && hi - lo > 2 * std::numeric_limits<double>::epsilon() * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (fn(mid) < 0 ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    if (std::abs(fn(x)) > tol) throw Error(ErrorCode::BracketFailure, "bisection residual above tolerance");
    return x;
}

struct Gluing {
    std::size_t a;
    std::uint32_t la;
    std::size_t b;
    std::uint32_t lb;
};

}  // namespace

Polyhedron gen_t_block(double l, double d) {
    if (!(l > 0 && d > 0 && d < 2 * l)) throw Error(ErrorCode::BadParameters, "need l > 0 and 0 < d < 2l");
    MeshData m;
    auto tri = base_triangle(l, d);
    for (int z = 0; z < 2; ++z)
        for (const Vec2& p : tri) m.vertices.push_back(Vec3(p.x(), p.y(), z));
    for (const auto& f : kBlockFaces) m.faces.push_back(f);
    m.metadata.family = "t-block";
    m.metadata.genus = 1;
    m.metadata.orientable = true;
    m.metadata.provenance = {"t-block"};
    if (d == l) m.metadata.expected_defect = 0.0;
    return build_polyhedron(std::move(m));
}

double a_coeff(int k, int g) {
    if (k < 0 || g < 1) throw Error(ErrorCode::DomainError, "a_coeff needs k >= 0 and g >= 1");
    return 4 * (3 * k + 1 - 1 / std::pow(-2.0, k)) / (3.0 * (g + 2)) * kPi;
}

double f_angle_sum(double l, double d) {
    if (!(l > 0) || !(d >= 0) || d > 2 * l * (1 + 1e-12))
        throw Error(ErrorCode::DomainError, "f needs l > 0 and 0 <= d <= 2l");
    auto acos_c = [](double x) { return std::acos(std::clamp(x, -1.0, 1.0)); };
    const double l2 = l * l;
    return 2 * acos_c((2 * l2 - d * d) / (2 * l * std::sqrt(l2 + 1))) + acos_c((2 * (l2 + 1) - d * d) / (2 * (l2 + 1)));
}

BlockParams solve_block_params(int g, double l1, double root_tol) {
    if (g < 1) throw Error(ErrorCode::GenusOutOfRange, "minimal family needs g >= 1");
    if (!(l1 > 0)) throw Error(ErrorCode::BadParameters, "l1 must be positive");
    const int m = g / 2;
    for (int attempt = 0; attempt < 64; ++attempt, l1 *= 2) {
        BlockParams out;
        out.l1 = l1;
        double l = l1;
        bool ok = true;
        for (int k = 1; k <= m && ok; ++k) {
            const double t = 3 * kPi - a_coeff(k, g);
            if (!(f_angle_sum(l, l) < t && t < f_angle_sum(l, 2 * l))) {
                ok = false;
                break;
            }
            double d = bisect([&](double x) { return f_angle_sum(l, x) - t; }, l, 2 * l, root_tol);
            out.l.push_back(l);
            out.d.push_back(d);
            l = d;
        }
        if (!ok) continue;
        if (g % 2 == 1) {
            const double t = 3 * kPi - a_coeff(m, g) - 6 * kPi / (g + 2);
            if (!(f_angle_sum(l, 0) < t && t < f_angle_sum(l, 2 * l))) continue;
            out.terminal = std::pair{l, bisect([&](double x) { return f_angle_sum(l, x) - t; }, 0, 2 * l, root_tol)};
        }
        return out;
    }
    throw Error(ErrorCode::BracketFailure, "no bracketing interval after growing l1");
}

MinimalResult gen_minimal_typed(int g, double l1) {
    BlockParams params = solve_block_params(g, l1);
    const std::size_t m = static_cast<std::size_t>(g / 2);
    std::vector<std::pair<double, double>> bp;
    for (std::size_t k = 0; k < m; ++k) bp.push_back({params.l[k], params.d[k]});

    std::vector<std::array<Vec2, 3>> tris;
    std::vector<Gluing> maps;
    auto chain = [&](const std::array<Vec2, 3>& prev, std::size_t k, std::size_t pi, std::size_t ni, double l,
                     double d) {
        std::array<Vec2, 3> t;
        if (k % 2 == 1) {
            t[0] = prev[2];
            t[1] = prev[1];
            t[2] = third(t[0], t[1], l, d, prev[0]);
            maps.push_back({pi, 1, ni, 1});
            maps.push_back({pi, 2, ni, 0});
        } else {
            t[0] = prev[1];
            t[2] = prev[2];
            t[1] = third(t[0], t[2], l, d, prev[0]);
            maps.push_back({pi, 2, ni, 2});
            maps.push_back({pi, 1, ni, 0});
        }
        return t;
    };
    for (std::size_t k = 0; k < m; ++k) {
        auto [l, d] = bp[k];
        if (k == 0)
            tris.push_back(base_triangle(l, d));
        else
            tris.push_back(chain(tris.back(), k, k - 1, k, l, d));
    }

    const std::uint32_t sw[3] = {0, 2, 1};
    std::optional<std::size_t> central;
    if (g % 2 == 0) {
        const Vec2 mid = 0.5 * (tris.back()[1] + tris.back()[2]);
        for (std::size_t k = 0; k < m; ++k) {
            std::array<Vec2, 3> t;
            for (int i = 0; i < 3; ++i) t[i] = 2 * mid - tris[k][i];
            tris.push_back(t);
        }
        const std::size_t nbase = maps.size();
        for (std::size_t i = 0; i < nbase; ++i) {
            Gluing q = maps[i];
            maps.push_back({q.a + m, q.la, q.b + m, q.lb});
        }
        maps.push_back({m - 1, 1, 2 * m - 1, 2});
        maps.push_back({m - 1, 2, 2 * m - 1, 1});
    } else {
        auto [lg, dg] = *params.terminal;
        std::array<Vec2, 3> cen = m == 0 ? base_triangle(lg, dg)
                                         : chain(tris.back(), m >= 2 ? m + 1 : m, m - 1, 2 * m, lg, dg);
        const Vec2 apex = cen[0];
        const Vec2 e = (0.5 * (cen[1] + cen[2]) - apex).normalized();
        auto refl = [&](const Vec2& p) {
            Vec2 q = p - apex;
            return Vec2(apex + 2 * q.dot(e) * e - q);
        };
        for (std::size_t k = 0; k < m; ++k) tris.push_back({refl(tris[k][0]), refl(tris[k][2]), refl(tris[k][1])});
        tris.push_back(cen);
        const std::size_t nbase = maps.size();
        for (std::size_t i = 0; i < nbase; ++i) {
            Gluing q = maps[i];
            maps.push_back({q.a + m, sw[q.la], q.b < m ? q.b + m : q.b, sw[q.lb]});
        }
        central = 2 * m;
    }

    // identify glued vertices; a base gluing implies the matching top gluing
    const std::size_t nb = tris.size();
    std::vector<std::size_t> parent(nb * 6);
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = root(parent[x]);
    };
    auto unite = [&](std::size_t x, std::size_t y) { parent[root(x)] = root(y); };
    for (const Gluing& q : maps) {
        unite(q.a * 6 + q.la, q.b * 6 + q.lb);
        unite(q.a * 6 + q.la + 3, q.b * 6 + q.lb + 3);
    }
    std::map<std::size_t, std::uint32_t> id;
    for (std::size_t x = 0; x < nb * 6; ++x) id.emplace(root(x), 0);
    {
        std::uint32_t next = 0;
        for (auto& [k, v] : id) v = next++;
    }
    auto gid = [&](std::size_t b, std::uint32_t i) { return id.at(root(b * 6 + i)); };

    MeshData mesh;
    mesh.vertices.resize(id.size());
    std::vector<std::set<std::size_t>> blocks_of(id.size());
    std::vector<bool> apex_of_central(id.size(), false);
    for (std::size_t b = 0; b < nb; ++b)
        for (std::uint32_t i = 0; i < 6; ++i) {
            const Vec2& p = tris[b][i % 3];
            std::uint32_t v = gid(b, i);
            mesh.vertices[v] = Vec3(p.x(), p.y(), i < 3 ? 0.0 : 1.0);
            blocks_of[v].insert(b);
            if (central && b == *central && i % 3 == 0) apex_of_central[v] = true;
        }

    std::vector<Cycle> all;
    std::vector<std::vector<std::uint32_t>> labels;
    std::map<std::vector<std::uint32_t>, int> seen;
    for (std::size_t b = 0; b < nb; ++b)
        for (const auto& f : kBlockFaces) {
            Cycle c;
            std::vector<std::uint32_t> lab;
            for (std::size_t s = 0; s < f.size(); ++s) {
                c.push_back(gid(b, f[s]));
                lab.push_back(diagonal(f[s], f[(s + 1) % f.size()]) ? static_cast<std::uint32_t>(b + 1) : 0u);
            }
            std::vector<std::uint32_t> key(c.begin(), c.end());
            std::sort(key.begin(), key.end());
            ++seen[key];
            all.push_back(std::move(c));
            labels.push_back(std::move(lab));
        }
    for (std::size_t i = 0; i < all.size(); ++i) {
        std::vector<std::uint32_t> key(all[i].begin(), all[i].end());
        std::sort(key.begin(), key.end());
        if (seen[key] != 1) continue;  // glued rectangle pair
        mesh.faces.push_back(all[i]);
        mesh.edge_labels.push_back(labels[i]);
    }

    std::vector<char> types(id.size(), 'A');
    for (std::size_t v = 0; v < id.size(); ++v) {
        const auto& bs = blocks_of[v];
        if (g == 1) {
            types[v] = 'A';
        } else if (central && apex_of_central[v]) {
            types[v] = 'F';
        } else if (central && bs.count(*central)) {
            types[v] = 'E';
        } else if (g % 2 == 0 && bs.count(m - 1) && bs.count(2 * m - 1)) {
            types[v] = 'D';
        } else {
            types[v] = bs.size() == 1 ? 'A' : bs.size() == 2 ? 'B' : 'C';
        }
    }

    mesh.metadata = detail::family_meta("minimal", g, true, mesh.vertices.size());
    Polyhedron p = build_polyhedron(std::move(mesh));
    return MinimalResult{std::move(p), std::move(types), std::move(params)};
}

Polyhedron gen_minimal(int g, double l1) { return gen_minimal_typed(g, l1).mesh; }

}  // namespace ccp
