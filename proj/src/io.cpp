#include "ccp/io.hpp"
#include "ccp/triangulate.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace ccp::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

std::string lower_ext(const std::filesystem::path& p) {
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return e;
}

}  // namespace

std::string to_json(const Polyhedron& p) {
    const MeshData& d = p.data();
    json doc;
    doc["format_version"] = kFormatVersion;
    json verts = json::array();
    for (const Vec3& v : d.vertices) verts.push_back({v.x(), v.y(), v.z()});
    doc["vertices"] = std::move(verts);
    doc["faces"] = d.faces;
    if (!d.edge_labels.empty()) doc["face_edge_labels"] = d.edge_labels;
    if (!d.seams.empty()) {
        json seams = json::array();
        for (const EdgeKey& s : d.seams) seams.push_back({s.a, s.b, s.label});
        doc["seams"] = std::move(seams);
    }
    const Metadata& m = d.metadata;
    json meta = json::object();
    meta["family"] = m.family;
    meta["genus"] = m.genus ? json(*m.genus) : json(nullptr);
    meta["orientable"] = m.orientable ? json(*m.orientable) : json(nullptr);
    meta["expected_defect_radians"] = m.expected_defect ? json(*m.expected_defect) : json(nullptr);
    meta["provenance"] = m.provenance;
    meta["surgery_depth"] = m.surgery_depth;
    doc["metadata"] = std::move(meta);
    return doc.dump(1) + "\n";
}

MeshData from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
    MeshData d;
    try {
        if (!doc.is_object()) parse_fail("document is not an object");
        if (!doc.contains("format_version") || doc["format_version"].get<int>() != kFormatVersion)
            parse_fail("unsupported or missing format_version");
        for (const auto& v : doc.at("vertices")) {
            if (!v.is_array() || v.size() != 3) parse_fail("vertex must be [x, y, z]");
            d.vertices.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
        }
        for (const auto& f : doc.at("faces")) {
            Cycle c;
            for (const auto& i : f) {
                if (!i.is_number_integer() || i.get<long long>() < 0) parse_fail("face index must be a non-negative integer");
                c.push_back(i.get<std::uint32_t>());
            }
            d.faces.push_back(std::move(c));
        }
        if (doc.contains("face_edge_labels"))
            d.edge_labels = doc["face_edge_labels"].get<std::vector<std::vector<std::uint32_t>>>();
        if (doc.contains("seams"))
            for (const auto& s : doc["seams"]) {
                if (!s.is_array() || s.size() != 3) parse_fail("seam must be [a, b, label]");
                d.seams.push_back(EdgeKey::make(s[0].get<std::uint32_t>(), s[1].get<std::uint32_t>(),
                                                s[2].get<std::uint32_t>()));
            }
        if (doc.contains("metadata")) {
            const json& m = doc["metadata"];
            if (m.contains("family") && m["family"].is_string()) d.metadata.family = m["family"];
            if (m.contains("genus") && !m["genus"].is_null()) d.metadata.genus = m["genus"].get<int>();
            if (m.contains("orientable") && !m["orientable"].is_null())
                d.metadata.orientable = m["orientable"].get<bool>();
            if (m.contains("expected_defect_radians") && !m["expected_defect_radians"].is_null())
                d.metadata.expected_defect = m["expected_defect_radians"].get<double>();
            if (m.contains("provenance")) d.metadata.provenance = m["provenance"].get<std::vector<std::string>>();
            if (m.contains("surgery_depth")) d.metadata.surgery_depth = m["surgery_depth"].get<int>();
        }
    } catch (const json::exception& e) {
        parse_fail(std::string("malformed mesh document: ") + e.what());
    }
    return d;
}

std::string to_obj(const Polyhedron& p) {
    std::ostringstream os;
    os << std::setprecision(17);
    if (!p.metadata().family.empty()) os << "# " << p.metadata().family << '\n';
    for (const Vec3& v : p.positions()) os << "v " << v.x() << ' ' << v.y() << ' ' << v.z() << '\n';
    for (std::size_t f = 0; f < p.num_faces(); ++f) {
        os << 'f';
        for (VertexId v : p.face(fid(f))) os << ' ' << idx(v) + 1;
        os << '\n';
    }
    return os.str();
}

MeshData from_obj(const std::string& text) {
    MeshData d;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) parse_fail("line " + std::to_string(lineno) + ": bad vertex");
            d.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            Cycle c;
            std::string tok;
            while (ls >> tok) {
                long long i = 0;
                try {
                    i = std::stoll(tok.substr(0, tok.find('/')));
                } catch (const std::exception&) {
                    parse_fail("line " + std::to_string(lineno) + ": bad face index");
                }
                if (i < 0) i += static_cast<long long>(d.vertices.size()) + 1;
                if (i < 1) parse_fail("line " + std::to_string(lineno) + ": face index out of range");
                c.push_back(static_cast<std::uint32_t>(i - 1));
            }
            d.faces.push_back(std::move(c));
        }
    }
    return d;
}

namespace {

template <class T>
void put_le(std::string& out, T value) {
    static_assert(std::endian::native == std::endian::little, "STL writer assumes a little-endian host");
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.append(buf, sizeof(T));
}

}  // namespace

std::string to_stl(const Polyhedron& p) {
    std::vector<std::array<Vec3, 3>> tris;
    for (std::size_t f = 0; f < p.num_faces(); ++f) {
        std::vector<Vec3> pts;
        for (VertexId v : p.face(fid(f))) pts.push_back(p.position(v));
        for (const auto& t : tri::triangulate_face(pts)) tris.push_back({pts[t[0]], pts[t[1]], pts[t[2]]});
    }
    std::string out(80, '\0');
    const char header[] = "ccp-forge";
    std::memcpy(out.data(), header, sizeof(header) - 1);
    put_le(out, static_cast<std::uint32_t>(tris.size()));
    for (const auto& t : tris) {
        Vec3 n = (t[1] - t[0]).cross(t[2] - t[0]);
        if (n.norm() > 0) n.normalize();
        for (int i = 0; i < 3; ++i) put_le(out, static_cast<float>(n[i]));
        for (const Vec3& q : t)
            for (int i = 0; i < 3; ++i) put_le(out, static_cast<float>(q[i]));
        put_le(out, std::uint16_t{0});
    }
    return out;
}

std::size_t stl_triangle_count(const std::string& bytes) {
    if (bytes.size() < 84) parse_fail("STL shorter than its header");
    std::uint32_t n;
    std::memcpy(&n, bytes.data() + 80, 4);
    if (bytes.size() != 84 + 50 * static_cast<std::size_t>(n)) parse_fail("STL size does not match its count");
    return n;
}

std::string report_to_json(const VerificationReport& r) {
    json doc;
    doc["verdict"] = verdict_name(r.verdict);
    if (!r.error.empty()) doc["error"] = r.error;
    if (r.topology) {
        doc["topology"] = {{"euler_characteristic", r.topology->euler_characteristic},
                           {"orientable", r.topology->orientable},
                           {"genus", r.topology->genus}};
    } else {
        doc["topology"] = nullptr;
    }
    const auto& dp = r.defect_profile;
    json prof = {{"mean", dp.mean},
                 {"max_abs_deviation", dp.max_abs_deviation},
                 {"tolerance", r.defect_tolerance},
                 {"is_constant", dp.is_constant},
                 {"per_vertex", dp.per_vertex}};
    if (auto s = pi_multiple(dp.mean)) prof["mean_pi"] = *s;
    doc["defect_profile"] = std::move(prof);
    doc["descartes_residual"] = r.descartes_residual;
    doc["max_planarity_residual"] = r.max_planarity_residual;
    json dv = json::array();
    for (const auto& v : r.dihedral_violations)
        dv.push_back({{"edge", idx(v.edge)}, {"angle", std::isnan(v.angle) ? json(nullptr) : json(v.angle)}});
    doc["dihedral_violations"] = std::move(dv);
    json si = {{"embedded", r.embedded}, {"count", r.intersection_count}};
    json wit = json::array();
    for (const auto& w : r.witnesses)
        wit.push_back({{"face_a", idx(w.face_a)},
                       {"face_b", idx(w.face_b)},
                       {"point", {w.point.x(), w.point.y(), w.point.z()}},
                       {"kind", w.kind == ContactKind::CoplanarOverlap ? "coplanar_overlap" : "transversal"}});
    si["witnesses"] = std::move(wit);
    doc["self_intersection"] = std::move(si);
    json cmp = json::object();
    if (r.expected_defect) cmp["expected_defect"] = *r.expected_defect;
    if (r.defect_delta) cmp["defect_delta"] = *r.defect_delta;
    if (r.genus_match) cmp["genus_match"] = *r.genus_match;
    doc["expected_vs_measured"] = std::move(cmp);
    doc["notes"] = r.notes;
    return doc.dump(1) + "\n";
}

MeshData load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string ext = lower_ext(path);
    if (ext == ".obj") return from_obj(ss.str());
    if (ext == ".json" || ext.empty()) return from_json(ss.str());
    throw Error(ErrorCode::ParseError, "unsupported input format '" + ext + "'");
}

void save(const Polyhedron& p, const std::filesystem::path& path) {
    const std::string ext = lower_ext(path);
    std::string bytes;
    if (ext == ".obj")
        bytes = to_obj(p);
    else if (ext == ".stl")
        bytes = to_stl(p);
    else if (ext == ".json" || ext.empty())
        bytes = to_json(p);
    else
        throw Error(ErrorCode::IoError, "unsupported output format '" + ext + "'");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace ccp::io
