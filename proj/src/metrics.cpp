#include "ccp/metrics.hpp"

#include <cmath>
#include <numeric>

namespace ccp {

double edge_length(const Polyhedron& p, EdgeId e) {
    const Edge& ed = p.edge(e);
    return (p.position(ed.b) - p.position(ed.a)).norm();
}

double corner_angle(const Polyhedron& p, FaceId f, VertexId v) {
    auto cyc = p.face(f);
    const std::size_t k = cyc.size();
    for (std::size_t i = 0; i < k; ++i) {
        if (cyc[i] != v) continue;
        const Vec3& c = p.position(v);
        Vec3 a = p.position(cyc[(i + k - 1) % k]) - c;
        Vec3 b = p.position(cyc[(i + 1) % k]) - c;
        double ang = std::atan2(b.cross(a).dot(p.face_normal(f)), a.dot(b));
        return ang < 0 ? ang + 2 * kPi : ang;
    }
    throw Error(ErrorCode::VertexNotOnFace,
                "vertex " + std::to_string(idx(v)) + " is not on face " + std::to_string(idx(f)));
}

double angular_defect(const Polyhedron& p, VertexId v) {
    auto cs = p.corners(v);
    if (cs.empty()) throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(idx(v)) + " lies on no face");
    double sum = 0.0;
    for (const Corner& c : cs) sum += corner_angle(p, c.face, v);
    return 2 * kPi - sum;
}

DefectProfile defect_profile(const Polyhedron& p, double tolerance) {
    DefectProfile d;
    d.tolerance = tolerance;
    d.per_vertex.reserve(p.num_vertices());
    for (std::size_t v = 0; v < p.num_vertices(); ++v) d.per_vertex.push_back(angular_defect(p, vid(v)));
    d.mean = std::accumulate(d.per_vertex.begin(), d.per_vertex.end(), 0.0) / static_cast<double>(d.per_vertex.size());
    for (double x : d.per_vertex) d.max_abs_deviation = std::max(d.max_abs_deviation, std::abs(x - d.mean));
    d.is_constant = d.max_abs_deviation < tolerance;
    return d;
}

double descartes_residual(const Polyhedron& p) {
    double sum = 0.0;
    for (std::size_t v = 0; v < p.num_vertices(); ++v) sum += angular_defect(p, vid(v));
    return std::abs(sum - 2 * kPi * euler_characteristic(p));
}

double signed_volume(const Polyhedron& p, const std::vector<int>& signs) {
    double vol = 0.0;
    for (std::size_t f = 0; f < p.num_faces(); ++f) {
        auto cyc = p.face(fid(f));
        const Vec3& o = p.position(cyc[0]);
        double s = 0.0;
        for (std::size_t i = 1; i + 1 < cyc.size(); ++i) s += o.dot(p.position(cyc[i]).cross(p.position(cyc[i + 1])));
        vol += signs[f] * s / 6.0;
    }
    return vol;
}

double dihedral_angle(const Polyhedron& p, EdgeId e, const ToleranceSet& tol) {
    const Edge& ed = p.edge(e);
    int sign0 = 1;
    if (auto signs = consistent_orientation(p)) {
        int flip = signed_volume(p, *signs) < 0 ? -1 : 1;
        sign0 = flip * (*signs)[idx(ed.faces[0])];
    }
    Vec3 t[2];
    for (int j = 0; j < 2; ++j) {
        auto cyc = p.face(ed.faces[j]);
        const Vec3& a = p.position(cyc[ed.sides[j]]);
        const Vec3& b = p.position(cyc[(ed.sides[j] + 1) % cyc.size()]);
        t[j] = p.face_normal(ed.faces[j]).cross((b - a).normalized());
    }
    Vec3 inward = -sign0 * p.face_normal(ed.faces[0]);
    double ang = std::atan2(t[1].dot(inward), t[1].dot(t[0]));
    if (ang < 0) ang += 2 * kPi;
    if (std::abs(ang - kPi) < tol.angle)
        throw Error(ErrorCode::FlatEdge, "edge " + std::to_string(idx(e)) + " has dihedral angle pi");
    return ang;
}

}  // namespace ccp
