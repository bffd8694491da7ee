#include "ccp/generators.hpp"
#include "ccp/metrics.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace ccp;
using fixtures::find_vertex;
using fixtures::pi;

namespace {

bool has_edge_length(const Polyhedron& p, double len, double tol = 1e-12) {
    for (std::size_t e = 0; e < p.num_edges(); ++e)
        if (std::abs(edge_length(p, eid(e)) - len) < tol) return true;
    return false;
}

bool has_corner_angle(const Polyhedron& p, double a, double tol = 1e-12) {
    for (std::size_t f = 0; f < p.num_faces(); ++f)
        for (VertexId v : p.face(fid(f)))
            if (std::abs(corner_angle(p, fid(f), v) - a) < tol) return true;
    return false;
}

void check_constant(const Polyhedron& p, double expect, double tol) {
    for (double d : oracle::defects(p)) CHECK(std::abs(d - expect) < tol);
}

void check_counts(const Polyhedron& p, std::size_t v, std::size_t e, std::size_t f) {
    CHECK(p.num_vertices() == v);
    CHECK(p.num_edges() == e);
    CHECK(p.num_faces() == f);
    CHECK(oracle::edge_count(p.data()) == e);
}

Vec3 rz(double angle, const Vec3& p) { return Eigen::AngleAxisd(angle, Vec3::UnitZ()) * p; }

}  // namespace

TEST_CASE("tetrahedron") {
    Polyhedron t = gen_tetrahedron();
    check_counts(t, 4, 6, 4);
    check_constant(t, pi, 1e-12);
}

TEST_CASE("flat torus: closed-form edge lengths") {
    Polyhedron p = gen_flat_torus9();
    check_counts(p, 9, 27, 18);
    auto t = classify(p);
    CHECK(t.orientable);
    CHECK(t.genus == 1);
    check_constant(p, 0.0, 1e-9);
    CHECK(self_intersections(p).empty());

    const Vec3 v1(1, 0, 0), v2(std::cos(pi / 8), std::sin(pi / 8), 0.5), v3(std::cos(pi / 4), std::sin(pi / 4), 1);
    const Vec3 v11 = rz(2 * pi / 3, v1), v31 = rz(2 * pi / 3, v3);
    for (const Vec3& q : {v1, v2, v3, v11, v31}) CHECK(find_vertex(p, q) != SIZE_MAX);
    CHECK(oracle::dist(v1, v3) == doctest::Approx(std::sqrt(3 - std::sqrt(2.0))).epsilon(1e-12));
    CHECK(oracle::dist(v1, v31) == doctest::Approx(std::sqrt(3 + 2 * std::cos(pi / 12))).epsilon(1e-12));
    CHECK(oracle::dist(v3, v31) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(oracle::dist(v2, v1) == doctest::Approx(std::sqrt(9.0 / 4 - 2 * std::cos(pi / 8))).epsilon(1e-12));
    CHECK(oracle::dist(v2, v11) == doctest::Approx(std::sqrt(9.0 / 4 + 2 * std::cos(11 * pi / 24))).epsilon(1e-12));
    CHECK(oracle::dist(v1, v11) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    for (double len : {std::sqrt(3 - std::sqrt(2.0)), std::sqrt(3 + 2 * std::cos(pi / 12)), std::sqrt(3.0),
                       std::sqrt(9.0 / 4 - 2 * std::cos(pi / 8)), std::sqrt(9.0 / 4 + 2 * std::cos(11 * pi / 24))})
        CHECK(has_edge_length(p, len));
}

TEST_CASE("P2 with default and random parameters") {
    Polyhedron p = gen_p2_24();
    check_counts(p, 24, 44, 18);
    CHECK(classify(p).genus == 2);
    CHECK(has_corner_angle(p, pi / 2 + std::atan(std::sqrt(3.0) / 7)));
    CHECK(has_corner_angle(p, pi + std::atan(1 / (2 * std::sqrt(3.0)))));
    CHECK(std::atan(1 / (2 * std::sqrt(3.0))) + std::atan(std::sqrt(3.0) / 7) == doctest::Approx(pi / 6));
    CHECK(self_intersections(p).empty());

    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 100; ++i) {
        double b = u(rng) / std::sqrt(3.0);
        double c = u(rng) * std::min(b, 1 / (4 * std::sqrt(3.0)));
        if (!(c > 0) || b <= 1e-6) continue;
        CAPTURE(b);
        CAPTURE(c);
        Polyhedron q = gen_p2_24(b, c);
        CHECK(q.num_vertices() == 24);
        check_constant(q, -pi / 6, 1e-9);
    }
    CHECK_THROWS_AS(gen_p2_24(0.1, 0.2), Error);
    CHECK_THROWS_AS(gen_p2_24(0.6, 0.1), Error);
}

TEST_CASE("drilled orientable family") {
    for (int g = 0; g <= 6; ++g) {
        CAPTURE(g);
        Polyhedron p = gen_orientable(g);
        auto t = classify(p);
        CHECK(t.orientable);
        CHECK(t.genus == g);
        CHECK(self_intersections(p).empty());
        if (g >= 2) {
            CHECK(p.num_vertices() == static_cast<std::size_t>(24 * (g - 1)));
            check_constant(p, -pi / 6, 1e-6);
        }
    }
    CHECK_THROWS_AS(gen_orientable(-1), Error);
}

TEST_CASE("R block identities") {
    const double r = 0.5, h = 0.5 * std::sqrt(3 * (1 + std::sqrt(3.0)));
    Polyhedron rb = gen_r_block(r, h);
    const double side = std::sqrt(r * r - r + 1 + h * h);
    // the squared side is (6 + 3 sqrt 3) / 4; the 5pi/12 angle follows from it
    CHECK(side * side == doctest::Approx((6 + 3 * std::sqrt(3.0)) / 4));
    CHECK(std::sqrt(3.0) * r / (2 * side) == doctest::Approx(std::cos(5 * pi / 12)));
    CHECK(has_edge_length(rb, side));
    CHECK(has_edge_length(rb, std::sqrt(3.0) * r));
    CHECK(has_edge_length(rb, std::sqrt(3.0)));
    CHECK(std::acos((std::sqrt(6.0) - std::sqrt(2.0)) / 4) == doctest::Approx(5 * pi / 12));
    CHECK(has_corner_angle(rb, 5 * pi / 12));
    CHECK_FALSE(is_orientable(rb));
    CHECK_THROWS_AS(gen_r_block(1.5, 1.0), Error);
    CHECK_THROWS_AS(gen_r_block(0.5, -1.0), Error);
}

TEST_CASE("S base identities") {
    Polyhedron s = gen_s_base();
    const double s18 = std::sin(pi / 18);
    const double h2 = std::sqrt(-4 * s18 * s18 + 2 * s18 + 2);
    const double k = 1.5 - std::sqrt(9.0 / 4 - h2 * h2);
    CHECK(k == doctest::Approx(1 + 2 * s18));
    CHECK(has_edge_length(s, std::sqrt(3.0) * (1 + 2 * s18)));
    CHECK(has_edge_length(s, std::sqrt(3.0)));
    // trapezoid diagonal
    bool diag = false;
    for (std::size_t a = 0; a < s.num_vertices(); ++a)
        for (std::size_t b = 0; b < a; ++b)
            diag = diag || std::abs(oracle::dist(s.positions()[a], s.positions()[b]) - std::sqrt(6 * (s18 + 1))) < 1e-12;
    CHECK(diag);
    CHECK(has_corner_angle(s, 5 * pi / 9));
    CHECK(euler_characteristic(s) == 2);
}

TEST_CASE("hemi-polyhedra and small non-orientable genera") {
    struct Row {
        Polyhedron p;
        std::size_t v, e, f;
        int genus;
        double defect;
    };
    std::vector<Row> rows = {{gen_tetrahemihexahedron(), 6, 12, 7, 1, pi / 3},
                             {gen_q2_9(), 9, 21, 12, 2, 0.0},
                             {gen_q3_18(), 18, 42, 23, 3, -pi / 9},
                             {gen_cubohemioctahedron(), 12, 24, 10, 4, -pi / 3}};
    for (const auto& row : rows) {
        CAPTURE(row.genus);
        check_counts(row.p, row.v, row.e, row.f);
        auto t = classify(row.p);
        CHECK_FALSE(t.orientable);
        CHECK_FALSE(oracle::orientable(row.p.data()));
        CHECK(t.genus == row.genus);
        check_constant(row.p, row.defect, 1e-9);
        CHECK_FALSE(self_intersections(row.p).empty());
    }
    for (int g = 1; g <= 4; ++g) CHECK(gen_nonorientable(g).num_vertices() == rows[g - 1].v);
}

TEST_CASE("drilled non-orientable family") {
    for (int n = 1; n <= 2; ++n) {
        Polyhedron odd = gen_nonorientable(2 * n + 3);
        Polyhedron even = gen_nonorientable(2 * n + 4);
        CHECK(odd.num_vertices() == static_cast<std::size_t>(18 + 36 * n));
        CHECK(even.num_vertices() == static_cast<std::size_t>(12 + 12 * n));
        CHECK(classify(odd).genus == 2 * n + 3);
        CHECK(classify(even).genus == 2 * n + 4);
        CHECK_FALSE(classify(odd).orientable);
        CHECK_FALSE(classify(even).orientable);
        check_constant(odd, -pi / 9, 1e-6);
        check_constant(even, -pi / 3, 1e-6);
    }
}

TEST_CASE("uniform hemi-polyhedra with many cross-caps") {
    Polyhedron rh = gen_rhombihexahedron();
    CHECK(rh.num_vertices() == 24);
    CHECK(classify(rh).genus == 8);
    CHECK_FALSE(classify(rh).orientable);
    const double drh = 2 * pi * euler_characteristic(rh) / 24.0;
    CHECK(drh == doctest::Approx(-pi / 2));
    check_constant(rh, -pi / 2, 1e-9);

    Polyhedron sd = gen_small_dodecahemidodecahedron();
    CHECK(sd.num_vertices() == 30);
    CHECK(classify(sd).genus == 14);
    CHECK_FALSE(classify(sd).orientable);
    check_constant(sd, 2 * pi * euler_characteristic(sd) / 30.0, 1e-9);
    check_constant(sd, -4 * pi / 5, 1e-9);
}

TEST_CASE("v8g, v6g and v7gm7 families") {
    for (int g = 2; g <= 6; ++g) {
        CAPTURE(g);
        Polyhedron p = gen_appendix_orientable(g, AppendixFamily::V8g);
        check_counts(p, 8 * g, 16 * g, 6 * g + 2);
        CHECK(classify(p).genus == g);
        check_constant(p, pi * (1 - g) / (2 * g), 1e-9);
        CHECK(self_intersections(p).empty());
    }
    for (int g = 5; g <= 10; ++g) {
        CAPTURE(g);
        Polyhedron p = gen_appendix_orientable(g, AppendixFamily::V6g);
        check_counts(p, 6 * g, 13 * g, 5 * g + 2);
        CHECK(classify(p).genus == g);
        check_constant(p, 2 * pi * (1 - g) / (3 * g), 1e-9);
        CHECK(self_intersections(p).empty());
    }
    for (int g = 4; g <= 6; ++g) {
        CAPTURE(g);
        Polyhedron p = gen_appendix_orientable(g, AppendixFamily::V7gm7);
        check_counts(p, 7 * g - 7, 18 * g - 18, 9 * g - 9);
        CHECK(classify(p).genus == g);
        check_constant(p, -4 * pi / 7, 1e-9);
        CHECK(self_intersections(p).empty());
    }
    CHECK_THROWS_AS(gen_appendix_orientable(1, AppendixFamily::V8g), Error);
    CHECK_THROWS_AS(gen_appendix_orientable(7, AppendixFamily::V7gm7), Error);
}

TEST_CASE("odd non-orientable 5g family") {
    for (int g = 3; g <= 11; g += 2) {
        CAPTURE(g);
        Polyhedron p = gen_n5g_odd(g);
        check_counts(p, 5 * g, 13 * g, 7 * g + 2);
        CHECK_FALSE(classify(p).orientable);
        CHECK(classify(p).genus == g);
        check_constant(p, (4 - 2.0 * g) * pi / (5 * g), 1e-9);
    }
    Polyhedron big = gen_n5g_odd(13);
    CHECK(classify(big).genus == 13);
    check_constant(big, 2 * pi * euler_characteristic(big) / big.num_vertices(), 1e-6);
    CHECK_THROWS_AS(gen_n5g_odd(4), Error);
}

TEST_CASE("fewest-vertex dispatch") {
    for (int g = 0; g <= 10; ++g) {
        Polyhedron o = gen_orientable(g, true);
        CHECK(classify(o).genus == g);
        CHECK(o.num_vertices() <= gen_orientable(g).num_vertices());
    }
    for (int g = 1; g <= 14; ++g) {
        CAPTURE(g);
        Polyhedron n = gen_nonorientable(g, true);
        CHECK(classify(n).genus == g);
        CHECK_FALSE(classify(n).orientable);
        CHECK(defect_profile(n, 1e-6).is_constant);
    }
}

TEST_CASE("Descartes identity on every generated mesh") {
    std::vector<Polyhedron> all = {gen_tetrahedron(), gen_flat_torus9(), gen_p2_24(), gen_tetrahemihexahedron(),
                                   gen_q2_9(), gen_q3_18(), gen_cubohemioctahedron(), gen_rhombihexahedron(),
                                   gen_small_dodecahemidodecahedron(), gen_s_base(), gen_t_block(2, 3)};
    for (int g = 0; g <= 10; ++g) {
        all.push_back(gen_orientable(g));
        all.push_back(gen_orientable(g, true));
    }
    for (int g = 1; g <= 14; ++g) {
        all.push_back(gen_nonorientable(g));
        all.push_back(gen_nonorientable(g, true));
    }
    for (int g = 1; g <= 10; ++g) all.push_back(gen_minimal(g));
    for (const auto& p : all) {
        CHECK(descartes_residual(p) < 1e-8);
        double sum = 0;
        for (double d : oracle::defects(p)) sum += d;
        CHECK(std::abs(sum - 2 * pi * oracle::euler(p.data())) < 1e-8);
    }
}

TEST_CASE("defects are invariant under rigid motion and scaling") {
    std::vector<Polyhedron> all = {gen_flat_torus9(), gen_p2_24(), gen_q3_18(), gen_cubohemioctahedron(),
                                   gen_minimal(5), gen_appendix_orientable(3, AppendixFamily::V8g)};
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const auto& p : all) {
        auto base = oracle::defects(p);
        for (int trial = 0; trial < 5; ++trial) {
            double scale = std::exp(2 * u(rng));
            auto moved = fixtures::moved(p.data(), 3 * u(rng), Vec3(u(rng), u(rng), u(rng) + 2),
                                         Vec3(10 * u(rng), 10 * u(rng), 10 * u(rng)), scale);
            Polyhedron q = build_polyhedron(moved);
            for (std::size_t v = 0; v < base.size(); ++v)
                CHECK(std::abs(angular_defect(q, vid(v)) - base[v]) < 1e-9);
        }
    }
}
