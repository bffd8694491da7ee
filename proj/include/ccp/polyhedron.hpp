#pragma once

#include "ccp/types.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ccp {

using Cycle = std::vector<std::uint32_t>;

// Unordered vertex pair plus a label. The label separates distinct edges that
// share both endpoints; it is 0 everywhere except in meshes that need such
// multi-edges.
struct EdgeKey {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t label = 0;

    static EdgeKey make(std::uint32_t u, std::uint32_t v, std::uint32_t label = 0) {
        return u < v ? EdgeKey{u, v, label} : EdgeKey{v, u, label};
    }
    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct Metadata {
    std::string family;
    std::optional<int> genus;
    std::optional<bool> orientable;
    std::optional<double> expected_defect;
    std::vector<std::string> provenance;
    int surgery_depth = 0;
};

// Raw, unvalidated mesh description. `edge_labels` is either empty or holds
// one label per face side (side i runs from faces[f][i] to faces[f][i+1]).
// `seams` lists edges allowed to be flat: the internal cuts of re-tiled faces.
struct MeshData {
    std::vector<Vec3> vertices;
    std::vector<Cycle> faces;
    std::vector<std::vector<std::uint32_t>> edge_labels;
    std::vector<EdgeKey> seams;
    Metadata metadata;
};

struct Edge {
    VertexId a;
    VertexId b;
    std::uint32_t label = 0;
    std::array<FaceId, 2> faces{};
    std::array<std::uint32_t, 2> sides{};  // position of the side within each face
    bool seam = false;
};

struct Corner {
    FaceId face;
    std::uint32_t pos;
};

struct TopologyClass {
    bool orientable = true;
    int genus = 0;
    int euler_characteristic = 2;
};

class Polyhedron {
public:
    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::size_t num_faces() const noexcept { return faces_.size(); }

    const Vec3& position(VertexId v) const { return vertices_.at(idx(v)); }
    const std::vector<Vec3>& positions() const noexcept { return vertices_; }
    std::span<const VertexId> face(FaceId f) const { return faces_.at(idx(f)); }
    const Edge& edge(EdgeId e) const { return edges_.at(idx(e)); }
    EdgeId face_edge(FaceId f, std::size_t side) const { return face_edges_.at(idx(f)).at(side); }
    std::span<const Corner> corners(VertexId v) const { return corners_.at(idx(v)); }
    const Vec3& face_normal(FaceId f) const { return normals_.at(idx(f)); }
    const Metadata& metadata() const noexcept { return data_.metadata; }

    // Largest absolute coordinate, at least 1; planarity tolerances scale with it.
    double scale() const noexcept { return scale_; }

    const MeshData& data() const noexcept { return data_; }
    Polyhedron with_metadata(Metadata m) const;

private:
    friend Polyhedron build_polyhedron(MeshData, const ToleranceSet&);

    MeshData data_;
    std::vector<Vec3> vertices_;
    std::vector<std::vector<VertexId>> faces_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> face_edges_;
    std::vector<std::vector<Corner>> corners_;
    std::vector<Vec3> normals_;
    double scale_ = 1.0;
};

Polyhedron build_polyhedron(MeshData data, const ToleranceSet& tol = {});
Polyhedron build_polyhedron(std::vector<Vec3> vertices, std::vector<Cycle> faces,
                            const ToleranceSet& tol = {});

int euler_characteristic(const Polyhedron& p);

// Per-face orientation signs (+1 keep, -1 reverse) making every edge traversed
// once in each direction, or nullopt if no such assignment exists.
std::optional<std::vector<int>> consistent_orientation(const Polyhedron& p);

bool is_orientable(const Polyhedron& p);
TopologyClass classify(const Polyhedron& p);

}  // namespace ccp
