#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ccp {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;
using Mat3 = Eigen::Matrix3d;

// Dense 0-based indices. Enum classes keep the three index spaces apart.
enum class VertexId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};
enum class FaceId : std::uint32_t {};

template <class Id>
constexpr std::size_t idx(Id id) noexcept {
    return static_cast<std::size_t>(id);
}
constexpr VertexId vid(std::size_t i) noexcept { return static_cast<VertexId>(i); }
constexpr EdgeId eid(std::size_t i) noexcept { return static_cast<EdgeId>(i); }
constexpr FaceId fid(std::size_t i) noexcept { return static_cast<FaceId>(i); }

struct ToleranceSet {
    double planarity = 1e-9;
    double angle = 1e-9;
    double length = 1e-12;
    double defect = 1e-9;

    // Defect tolerance for a mesh that went through `surgeries` rigid-motion steps.
    static double defect_for_depth(int surgeries) {
        return surgeries <= 0 ? 1e-9 : 1e-6 * surgeries;
    }
};

enum class ErrorCode {
    NonManifoldEdge,
    NonManifoldVertex,
    DegenerateFace,
    FlatEdge,
    IndexOutOfRange,
    DisconnectedSurface,
    InconsistentTopology,
    VertexNotOnFace,
    IsolatedVertex,
    NotIsometric,
    FlatSeam,
    Ambiguous,
    NotInteger,
    NonNegativeChi,
    AxisObstructed,
    FootprintTooLarge,
    BadOrder,
    HoleNotInside,
    SelfCrossingPartition,
    BadParameters,
    GenusOutOfRange,
    DomainError,
    BracketFailure,
    InvalidMesh,
    ParseError,
    IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace ccp
