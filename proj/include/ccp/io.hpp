#pragma once

#include "ccp/polyhedron.hpp"
#include "ccp/verify.hpp"

#include <filesystem>
#include <string>

namespace ccp::io {

inline constexpr int kFormatVersion = 1;

// Native JSON document. Doubles are written in shortest round-trip form, so
// parse(serialize(P)) reproduces every coordinate bit for bit.
std::string to_json(const Polyhedron& p);
MeshData from_json(const std::string& text);

// Wavefront OBJ, polygons kept, 1-based indices.
std::string to_obj(const Polyhedron& p);
MeshData from_obj(const std::string& text);

// Binary little-endian STL with faces ear-clipped into triangles.
std::string to_stl(const Polyhedron& p);
std::size_t stl_triangle_count(const std::string& bytes);

std::string report_to_json(const VerificationReport& r);

// Dispatch on extension: .json, .obj (read/write), .stl (write only).
MeshData load(const std::filesystem::path& path);
void save(const Polyhedron& p, const std::filesystem::path& path);

}  // namespace ccp::io
