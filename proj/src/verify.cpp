#include "ccp/verify.hpp"
#include "ccp/geometry.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace ccp {

double escalated_defect_tolerance(const ToleranceSet& tol, int depth) {
    if (depth <= 0) return tol.defect;
    return std::max(tol.defect, 1e-6 * depth);
}

namespace {

double planarity_residual(const Polyhedron& p, FaceId f) {
    auto cyc = p.face(f);
    std::vector<Vec3> pts;
    Vec3 c = Vec3::Zero();
    for (VertexId v : cyc) {
        pts.push_back(p.position(v));
        c += p.position(v);
    }
    c /= static_cast<double>(pts.size());
    Vec3 n = geom::newell(pts).normalized();
    double worst = 0.0;
    for (const Vec3& q : pts) worst = std::max(worst, std::abs((q - c).dot(n)));
    return worst;
}

}  // namespace

VerificationReport verify(const Polyhedron& p, const ToleranceSet& tol) {
    VerificationReport r;
    const Metadata& meta = p.metadata();
    r.defect_tolerance = escalated_defect_tolerance(tol, meta.surgery_depth);
    r.defect_profile = defect_profile(p, r.defect_tolerance);
    r.descartes_residual = descartes_residual(p);

    try {
        r.topology = classify(p);
    } catch (const Error& e) {
        r.notes.push_back(e.what());
    }

    for (std::size_t f = 0; f < p.num_faces(); ++f)
        r.max_planarity_residual = std::max(r.max_planarity_residual, planarity_residual(p, fid(f)));

    for (std::size_t e = 0; e < p.num_edges(); ++e) {
        if (p.edge(eid(e)).seam) continue;
        try {
            double a = dihedral_angle(p, eid(e), tol);
            if (a < tol.angle || a > 2 * kPi - tol.angle) r.dihedral_violations.push_back({eid(e), a});
        } catch (const Error&) {
            r.dihedral_violations.push_back({eid(e), std::nan("")});
        }
    }

    auto hits = self_intersections(p);
    r.intersection_count = hits.size();
    r.embedded = hits.empty();
    hits.resize(std::min(hits.size(), kMaxWitnesses));
    r.witnesses = std::move(hits);

    if (meta.expected_defect) {
        r.expected_defect = meta.expected_defect;
        r.defect_delta = r.defect_profile.mean - *meta.expected_defect;
        if (std::abs(*r.defect_delta) > r.defect_tolerance) r.notes.push_back("mean defect differs from the claimed value");
    }
    if (meta.genus && r.topology) {
        r.genus_match = *meta.genus == r.topology->genus &&
                        (!meta.orientable || *meta.orientable == r.topology->orientable);
        if (!*r.genus_match) r.notes.push_back("topology differs from the claimed genus/orientability");
    }

    const double descartes_tol = std::max(1e-8, r.defect_tolerance * static_cast<double>(p.num_vertices()));
    const bool ccp = r.topology && r.defect_profile.is_constant && r.descartes_residual < descartes_tol &&
                     r.dihedral_violations.empty() && r.max_planarity_residual <= tol.planarity * p.scale();
    if (!r.defect_profile.is_constant) r.notes.push_back("angular defect is not constant");
    if (r.descartes_residual >= descartes_tol) r.notes.push_back("Descartes residual above tolerance");
    r.verdict = !ccp ? Verdict::NotCcp : r.embedded ? Verdict::CcpEmbedded : Verdict::CcpImmersed;
    return r;
}

VerificationReport verify(const MeshData& data, const ToleranceSet& tol) {
    try {
        return verify(build_polyhedron(data, tol), tol);
    } catch (const Error& e) {
        VerificationReport r;
        r.verdict = Verdict::InvalidMesh;
        r.error = e.what();
        return r;
    }
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::CcpEmbedded: return "ccp_embedded";
        case Verdict::CcpImmersed: return "ccp_immersed";
        case Verdict::NotCcp: return "not_ccp";
        case Verdict::InvalidMesh: return "invalid_mesh";
    }
    return "?";
}

std::optional<std::string> pi_multiple(double x, double eps) {
    if (!std::isfinite(x)) return std::nullopt;
    const double t = x / kPi;
    for (long q = 1; q <= 120; ++q) {
        double pq = t * static_cast<double>(q);
        long num = std::lround(pq);
        if (std::abs(pq - static_cast<double>(num)) >= eps) continue;
        if (num == 0) return std::string("0·π");
        long g = std::gcd(std::labs(num), q);
        num /= g;
        long den = q / g;
        std::ostringstream os;
        if (num < 0) os << '-';
        if (std::labs(num) != 1) os << std::labs(num);
        os << "π";
        if (den != 1) os << '/' << den;
        return os.str();
    }
    return std::nullopt;
}

namespace {

std::string with_pi(double x) {
    std::ostringstream os;
    os.precision(12);
    os << (std::abs(x) < 1e-12 ? 0.0 : x);
    if (auto s = pi_multiple(x)) os << " (= " << *s << ")";
    return os.str();
}

}  // namespace

std::string to_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "verdict: " << verdict_name(r.verdict) << '\n';
    if (r.verdict == Verdict::InvalidMesh && !r.error.empty()) {
        os << "error: " << r.error << '\n';
        return os.str();
    }
    if (r.topology) {
        os << "euler characteristic: " << r.topology->euler_characteristic << '\n';
        os << "surface: " << (r.topology->orientable ? "orientable" : "non-orientable") << ", genus "
           << r.topology->genus << '\n';
    }
    os << "vertices: " << r.defect_profile.per_vertex.size() << '\n';
    os << "defect = " << with_pi(r.defect_profile.mean) << '\n';
    os.precision(3);
    os << "defect spread: " << r.defect_profile.max_abs_deviation << " (tolerance " << r.defect_tolerance << ", "
       << (r.defect_profile.is_constant ? "constant" : "not constant") << ")\n";
    os << "descartes residual: " << r.descartes_residual << '\n';
    os << "planarity residual: " << r.max_planarity_residual << '\n';
    os << "dihedral violations: " << r.dihedral_violations.size() << '\n';
    if (r.embedded) {
        os << "self-intersection: embedded\n";
    } else {
        os << "self-intersection: " << r.intersection_count << " intersecting face pairs\n";
        os.precision(6);
        for (const auto& w : r.witnesses)
            os << "  faces " << idx(w.face_a) << ", " << idx(w.face_b) << " at (" << w.point.x() << ", "
               << w.point.y() << ", " << w.point.z() << ")"
               << (w.kind == ContactKind::CoplanarOverlap ? " coplanar overlap" : "") << '\n';
    }
    if (r.expected_defect) os << "expected defect = " << with_pi(*r.expected_defect) << '\n';
    if (r.genus_match) os << "genus matches claim: " << (*r.genus_match ? "yes" : "no") << '\n';
    for (const auto& n : r.notes) os << "note: " << n << '\n';
    return os.str();
}

}  // namespace ccp
