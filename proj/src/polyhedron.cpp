#include "ccp/polyhedron.hpp"

#include "ccp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace ccp {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
        case ErrorCode::NonManifoldVertex: return "NonManifoldVertex";
        case ErrorCode::DegenerateFace: return "DegenerateFace";
        case ErrorCode::FlatEdge: return "FlatEdge";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::DisconnectedSurface: return "DisconnectedSurface";
        case ErrorCode::InconsistentTopology: return "InconsistentTopology";
        case ErrorCode::VertexNotOnFace: return "VertexNotOnFace";
        case ErrorCode::IsolatedVertex: return "IsolatedVertex";
        case ErrorCode::NotIsometric: return "NotIsometric";
        case ErrorCode::FlatSeam: return "FlatSeam";
        case ErrorCode::Ambiguous: return "Ambiguous";
        case ErrorCode::NotInteger: return "NotInteger";
        case ErrorCode::NonNegativeChi: return "NonNegativeChi";
        case ErrorCode::AxisObstructed: return "AxisObstructed";
        case ErrorCode::FootprintTooLarge: return "FootprintTooLarge";
        case ErrorCode::BadOrder: return "BadOrder";
        case ErrorCode::HoleNotInside: return "HoleNotInside";
        case ErrorCode::SelfCrossingPartition: return "SelfCrossingPartition";
        case ErrorCode::BadParameters: return "BadParameters";
        case ErrorCode::GenusOutOfRange: return "GenusOutOfRange";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::BracketFailure: return "BracketFailure";
        case ErrorCode::InvalidMesh: return "InvalidMesh";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

std::string face_msg(std::size_t f, const std::string& what) {
    std::ostringstream os;
    os << "face " << f << ": " << what;
    return os.str();
}

std::string edge_msg(const EdgeKey& k, const std::string& what) {
    std::ostringstream os;
    os << "edge (" << k.a << ", " << k.b;
    if (k.label != 0) os << " #" << k.label;
    os << "): " << what;
    return os.str();
}

}  // namespace

Polyhedron Polyhedron::with_metadata(Metadata m) const {
    Polyhedron out = *this;
    out.data_.metadata = std::move(m);
    return out;
}

Polyhedron build_polyhedron(std::vector<Vec3> vertices, std::vector<Cycle> faces, const ToleranceSet& tol) {
    MeshData d;
    d.vertices = std::move(vertices);
    d.faces = std::move(faces);
    return build_polyhedron(std::move(d), tol);
}

Polyhedron build_polyhedron(MeshData data, const ToleranceSet& tol) {
    const std::size_t nv = data.vertices.size();
    const std::size_t nf = data.faces.size();
    if (nv < 4) throw Error(ErrorCode::InvalidMesh, "fewer than 4 vertices");
    if (nf == 0) throw Error(ErrorCode::InvalidMesh, "no faces");
    if (!data.edge_labels.empty() && data.edge_labels.size() != nf)
        throw Error(ErrorCode::InvalidMesh, "edge label table does not match face count");

    Polyhedron p;
    p.scale_ = 1.0;
    for (const Vec3& v : data.vertices) {
        if (!v.allFinite()) throw Error(ErrorCode::InvalidMesh, "non-finite coordinate");
        p.scale_ = std::max(p.scale_, v.cwiseAbs().maxCoeff());
    }
    const double len_eps = tol.length * p.scale_;

    // combinatorics
    p.faces_.resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        const Cycle& c = data.faces[f];
        if (c.size() < 3) throw Error(ErrorCode::DegenerateFace, face_msg(f, "fewer than 3 vertices"));
        if (!data.edge_labels.empty() && data.edge_labels[f].size() != c.size())
            throw Error(ErrorCode::InvalidMesh, face_msg(f, "edge label count mismatch"));
        std::set<std::uint32_t> seen;
        for (std::uint32_t v : c) {
            if (v >= nv) {
                std::ostringstream os;
                os << "vertex index " << v << " >= " << nv;
                throw Error(ErrorCode::IndexOutOfRange, face_msg(f, os.str()));
            }
            if (!seen.insert(v).second) throw Error(ErrorCode::DegenerateFace, face_msg(f, "repeated vertex"));
            p.faces_[f].push_back(vid(v));
        }
    }

    std::map<EdgeKey, std::size_t> edge_index;
    p.face_edges_.resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        const Cycle& c = data.faces[f];
        for (std::size_t s = 0; s < c.size(); ++s) {
            std::uint32_t label = data.edge_labels.empty() ? 0 : data.edge_labels[f][s];
            EdgeKey key = EdgeKey::make(c[s], c[(s + 1) % c.size()], label);
            auto [it, fresh] = edge_index.try_emplace(key, p.edges_.size());
            if (fresh) {
                Edge e;
                e.a = vid(key.a);
                e.b = vid(key.b);
                e.label = label;
                e.faces = {fid(f), fid(f)};
                e.sides = {static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s)};
                p.edges_.push_back(e);
                p.face_edges_[f].push_back(eid(it->second));
                continue;
            }
            Edge& e = p.edges_[it->second];
            if (e.faces[0] != e.faces[1] || e.sides[0] != e.sides[1])
                throw Error(ErrorCode::NonManifoldEdge, edge_msg(key, "used more than twice"));
            e.faces[1] = fid(f);
            e.sides[1] = static_cast<std::uint32_t>(s);
            p.face_edges_[f].push_back(eid(it->second));
        }
    }
    for (const auto& [key, i] : edge_index) {
        const Edge& e = p.edges_[i];
        if (e.faces[0] == e.faces[1] && e.sides[0] == e.sides[1])
            throw Error(ErrorCode::NonManifoldEdge, edge_msg(key, "used once"));
    }
    for (const EdgeKey& s : data.seams) {
        auto it = edge_index.find(EdgeKey::make(s.a, s.b, s.label));
        if (it == edge_index.end()) throw Error(ErrorCode::InvalidMesh, edge_msg(s, "seam is not an edge"));
        p.edges_[it->second].seam = true;
    }

    p.vertices_ = data.vertices;

    // per-face geometry
    p.normals_.resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        std::vector<Vec3> pts;
        for (VertexId v : p.faces_[f]) pts.push_back(p.vertices_[idx(v)]);
        for (std::size_t i = 0; i < pts.size(); ++i)
            if ((pts[(i + 1) % pts.size()] - pts[i]).norm() <= len_eps)
                throw Error(ErrorCode::DegenerateFace, face_msg(f, "zero-length edge"));
        Vec3 n = geom::newell(pts);
        if (0.5 * n.norm() <= len_eps * p.scale_) throw Error(ErrorCode::DegenerateFace, face_msg(f, "zero area"));
        n.normalize();
        p.normals_[f] = n;
        Vec3 centroid = Vec3::Zero();
        for (const Vec3& q : pts) centroid += q;
        centroid /= static_cast<double>(pts.size());
        for (const Vec3& q : pts)
            if (std::abs((q - centroid).dot(n)) > tol.planarity * p.scale_)
                throw Error(ErrorCode::DegenerateFace, face_msg(f, "not planar"));
        auto [u, w] = geom::plane_frame(n);
        auto poly = geom::project(pts, centroid, u, w);
        if (!geom::is_simple(poly, std::max(len_eps, 1e-12)))
            throw Error(ErrorCode::DegenerateFace, face_msg(f, "not a simple polygon"));
    }

    // corners and vertex links
    p.corners_.assign(nv, {});
    for (std::size_t f = 0; f < nf; ++f)
        for (std::size_t i = 0; i < p.faces_[f].size(); ++i)
            p.corners_[idx(p.faces_[f][i])].push_back({fid(f), static_cast<std::uint32_t>(i)});
    for (std::size_t v = 0; v < nv; ++v) {
        const auto& cs = p.corners_[v];
        if (cs.empty()) continue;
        // corner c touches the edges on both sides of its position; walk the link
        auto sides_of = [&](const Corner& c) {
            std::size_t k = p.faces_[idx(c.face)].size();
            return std::pair{p.face_edges_[idx(c.face)][(c.pos + k - 1) % k], p.face_edges_[idx(c.face)][c.pos]};
        };
        std::map<EdgeId, std::vector<std::size_t>> by_edge;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            auto [e0, e1] = sides_of(cs[i]);
            by_edge[e0].push_back(i);
            by_edge[e1].push_back(i);
        }
        std::vector<bool> seen(cs.size(), false);
        std::size_t cur = 0, visited = 0;
        EdgeId via = sides_of(cs[0]).first;
        while (!seen[cur]) {
            seen[cur] = true;
            ++visited;
            auto [e0, e1] = sides_of(cs[cur]);
            EdgeId out = (e0 == via) ? e1 : e0;
            const auto& pair = by_edge[out];
            cur = pair[0] == cur ? pair[1] : pair[0];
            via = out;
        }
        if (visited != cs.size()) {
            std::ostringstream os;
            os << "vertex " << v << ": faces around it form more than one fan";
            throw Error(ErrorCode::NonManifoldVertex, os.str());
        }
    }

    // dihedral angles of pi (flat) or 0 (folded) are rejected, seams may be flat
    for (const auto& [key, i] : edge_index) {
        const Edge& e = p.edges_[i];
        Vec3 t[2];
        for (int j = 0; j < 2; ++j) {
            const auto& cyc = p.faces_[idx(e.faces[j])];
            const Vec3& a = p.vertices_[idx(cyc[e.sides[j]])];
            const Vec3& b = p.vertices_[idx(cyc[(e.sides[j] + 1) % cyc.size()])];
            t[j] = p.normals_[idx(e.faces[j])].cross((b - a).normalized());
        }
        double ang = std::atan2(t[0].cross(t[1]).norm(), t[0].dot(t[1]));
        if (ang < tol.angle) throw Error(ErrorCode::DegenerateFace, edge_msg(key, "faces folded onto each other"));
        if (!e.seam && kPi - ang < tol.angle) throw Error(ErrorCode::FlatEdge, edge_msg(key, "dihedral angle is pi"));
    }

    p.data_ = std::move(data);
    return p;
}

int euler_characteristic(const Polyhedron& p) {
    return static_cast<int>(p.num_vertices()) - static_cast<int>(p.num_edges()) + static_cast<int>(p.num_faces());
}

std::optional<std::vector<int>> consistent_orientation(const Polyhedron& p) {
    const std::size_t nf = p.num_faces();
    std::vector<int> sign(nf, 0);
    // +1 if the face traverses the edge from a to b
    auto direction = [&](const Edge& e, int j) {
        auto cyc = p.face(e.faces[j]);
        return cyc[e.sides[j]] == e.a ? 1 : -1;
    };
    bool ok = true;
    std::deque<std::size_t> queue{0};
    sign[0] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        std::size_t f = queue.front();
        queue.pop_front();
        for (std::size_t s = 0; s < p.face(fid(f)).size(); ++s) {
            const Edge& e = p.edge(p.face_edge(fid(f), s));
            int j = (idx(e.faces[0]) == f && e.sides[0] == s) ? 0 : 1;
            std::size_t g = idx(e.faces[1 - j]);
            int want = -sign[f] * direction(e, j) * direction(e, 1 - j);
            if (sign[g] == 0) {
                sign[g] = want;
                ++reached;
                queue.push_back(g);
            } else if (sign[g] != want) {
                ok = false;
            }
        }
    }
    if (reached != nf) throw Error(ErrorCode::DisconnectedSurface, "face adjacency graph is disconnected");
    if (!ok) return std::nullopt;
    return sign;
}

bool is_orientable(const Polyhedron& p) { return consistent_orientation(p).has_value(); }

TopologyClass classify(const Polyhedron& p) {
    for (std::size_t v = 0; v < p.num_vertices(); ++v)
        if (p.corners(vid(v)).empty())
            throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v) + " lies on no face");
    TopologyClass t;
    t.euler_characteristic = euler_characteristic(p);
    t.orientable = is_orientable(p);
    const int chi = t.euler_characteristic;
    if (t.orientable) {
        if (chi % 2 != 0 || chi > 2)
            throw Error(ErrorCode::InconsistentTopology, "orientable surface with chi = " + std::to_string(chi));
        t.genus = (2 - chi) / 2;
    } else {
        if (chi > 1)
            throw Error(ErrorCode::InconsistentTopology, "non-orientable surface with chi = " + std::to_string(chi));
        t.genus = 2 - chi;
    }
    return t;
}

}  // namespace ccp
