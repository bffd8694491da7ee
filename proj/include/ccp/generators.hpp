#pragma once

#include "ccp/polyhedron.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ccp {

// orientable families
Polyhedron gen_tetrahedron();
Polyhedron gen_flat_torus9();
Polyhedron gen_p2_24(double b = 0.25, double c = 1.0 / 32.0);
Polyhedron gen_orientable(int g, bool prefer_fewest = false);

// non-orientable, hemi-polyhedra and their surgeries
Polyhedron gen_r_block(double r, double h);
Polyhedron gen_tetrahemihexahedron();
Polyhedron gen_q2_9();
Polyhedron gen_s_base();
Polyhedron gen_q3_18();
Polyhedron gen_cubohemioctahedron();
Polyhedron gen_rhombihexahedron();
Polyhedron gen_small_dodecahemidodecahedron();
Polyhedron gen_nonorientable(int g, bool prefer_fewest = false);

enum class AppendixFamily { V8g, V6g, V7gm7 };
Polyhedron gen_appendix_orientable(int g, AppendixFamily family);
Polyhedron gen_n5g_odd(int g);

// minimal 2g+4 family
struct BlockParams {
    std::vector<double> l;  // l_k, k = 1..floor(g/2)
    std::vector<double> d;  // d_k
    std::optional<std::pair<double, double>> terminal;  // (l_g, d_g) for odd g
    double l1 = 2.0;        // after auto-growth
};

Polyhedron gen_t_block(double l, double d);
double a_coeff(int k, int g);
double f_angle_sum(double l, double d);
BlockParams solve_block_params(int g, double l1 = 2.0, double root_tol = 1e-12);

struct MinimalResult {
    Polyhedron mesh;
    std::vector<char> vertex_type;  // 'A'..'F' per vertex
    BlockParams params;
};
MinimalResult gen_minimal_typed(int g, double l1 = 2.0);
Polyhedron gen_minimal(int g, double l1 = 2.0);

// Locates a face by predicate; used to pick drill targets on generated meshes.
FaceId find_face(const Polyhedron& p, const Vec3& normal, double offset);

}  // namespace ccp
