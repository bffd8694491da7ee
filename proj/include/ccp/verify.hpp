#pragma once

#include "ccp/metrics.hpp"
#include "ccp/polyhedron.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccp {

enum class Verdict { CcpEmbedded, CcpImmersed, NotCcp, InvalidMesh };

struct DihedralViolation {
    EdgeId edge;
    double angle;  // radians; NaN when the dihedral is undefined (flat)
};

struct VerificationReport {
    std::optional<TopologyClass> topology;
    DefectProfile defect_profile;
    double defect_tolerance = 1e-9;
    double descartes_residual = 0.0;
    double max_planarity_residual = 0.0;
    std::vector<DihedralViolation> dihedral_violations;
    bool embedded = true;
    std::size_t intersection_count = 0;
    std::vector<IntersectionWitness> witnesses;  // first few only

    // claims from metadata, when present
    std::optional<double> expected_defect;
    std::optional<double> defect_delta;
    std::optional<bool> genus_match;

    Verdict verdict = Verdict::InvalidMesh;
    std::vector<std::string> notes;
    std::string error;  // set for invalid_mesh
};

inline constexpr std::size_t kMaxWitnesses = 5;

// Tolerance for a mesh after `depth` chained surgeries.
double escalated_defect_tolerance(const ToleranceSet& tol, int depth);

VerificationReport verify(const Polyhedron& p, const ToleranceSet& tol = {});

// Validates raw data first; structural failures become an invalid_mesh report.
VerificationReport verify(const MeshData& data, const ToleranceSet& tol = {});

std::string verdict_name(Verdict v);

// "-2π/9" style rendering when x is p*pi/q with q <= 120, else nullopt.
std::optional<std::string> pi_multiple(double x, double eps = 1e-6);

std::string to_text(const VerificationReport& r);

}  // namespace ccp
