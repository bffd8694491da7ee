#pragma once

#include "ccp/polyhedron.hpp"

#include <vector>

namespace ccp {

struct DefectProfile {
    std::vector<double> per_vertex;
    double mean = 0.0;
    double max_abs_deviation = 0.0;
    double tolerance = 1e-9;
    bool is_constant = true;
};

enum class ContactKind { Transversal, CoplanarOverlap };

struct IntersectionWitness {
    FaceId face_a;
    FaceId face_b;
    Vec3 point;
    ContactKind kind = ContactKind::Transversal;
};

double edge_length(const Polyhedron& p, EdgeId e);

// Interior angle of face f at v in (0, 2pi), oriented by the face's Newell normal.
double corner_angle(const Polyhedron& p, FaceId f, VertexId v);

double angular_defect(const Polyhedron& p, VertexId v);
DefectProfile defect_profile(const Polyhedron& p, double tolerance = 1e-9);
double descartes_residual(const Polyhedron& p);

// Dihedral angle through the surface's local side. Orientable meshes use the
// consistent orientation enclosing positive volume; otherwise the first
// incident face's own winding fixes the side.
double dihedral_angle(const Polyhedron& p, EdgeId e, const ToleranceSet& tol = {});

// One witness per intersecting face pair, sorted by (face_a, face_b).
std::vector<IntersectionWitness> self_intersections(const Polyhedron& p, double contact_tol = 1e-9);

// Witnesses restricted to pairs with at least one face from `faces`.
std::vector<IntersectionWitness> intersections_involving(const Polyhedron& p, const std::vector<FaceId>& faces,
                                                         double contact_tol = 1e-9);

// Signed volume of the orientation in `signs` (+1/-1 per face).
double signed_volume(const Polyhedron& p, const std::vector<int>& signs);

}  // namespace ccp
