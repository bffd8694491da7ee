// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.
#include "ccp/generators.hpp"
#include "ccp/metrics.hpp"
#include "ccp/surgery.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace ccp;
using fixtures::pi;

namespace {

struct Check {
    std::ostringstream why;
    bool ok = true;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) why << what;
        ok = ok && cond;
    }
};

bool constant(const Polyhedron& p, double value, double tol) {
    for (double d : oracle::defects(p))
        if (!(std::abs(d - value) < tol)) return false;
    return true;
}

bool counts(const Polyhedron& p, std::size_t v, std::size_t e, std::size_t f) {
    return p.num_vertices() == v && oracle::edge_count(p.data()) == e && p.num_faces() == f;
}

int genus_of(const Polyhedron& p) {
    int chi = oracle::euler(p.data());
    return oracle::orientable(p.data()) ? (2 - chi) / 2 : 2 - chi;
}

bool embedded(const Polyhedron& p) { return self_intersections(p).empty(); }

std::string num(double x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

void c1(Check& c) {
    Polyhedron p = gen_flat_torus9();
    c.expect(p.num_vertices() == 9, "vertex count");
    c.expect(oracle::euler(p.data()) == 0 && oracle::orientable(p.data()), "topology");
    c.expect(constant(p, 0.0, 1e-9), "defects");
    c.expect(embedded(p), "self-intersection");
    auto rz = [](double a, const Vec3& v) { return Vec3(Eigen::AngleAxisd(a, Vec3::UnitZ()) * v); };
    const Vec3 v1(1, 0, 0), v2(std::cos(pi / 8), std::sin(pi / 8), 0.5), v3(std::cos(pi / 4), std::sin(pi / 4), 1);
    const Vec3 v11 = rz(2 * pi / 3, v1), v31 = rz(2 * pi / 3, v3);
    for (const Vec3& q : {v1, v2, v3, v11, v31}) c.expect(fixtures::find_vertex(p, q) != SIZE_MAX, "vertex position");
    const std::pair<double, double> pairs[] = {
        {oracle::dist(v1, v3), std::sqrt(3 - std::sqrt(2.0))},
        {oracle::dist(v1, v31), std::sqrt(3 + 2 * std::cos(pi / 12))},
        {oracle::dist(v3, v31), std::sqrt(3.0)},
        {oracle::dist(v2, v1), std::sqrt(9.0 / 4 - 2 * std::cos(pi / 8))},
        {oracle::dist(v2, v11), std::sqrt(9.0 / 4 + 2 * std::cos(11 * pi / 24))},
        {oracle::dist(v1, v11), std::sqrt(3.0)}};
    for (auto [got, want] : pairs) c.expect(std::abs(got - want) < 1e-12, "edge length " + num(got));
}

void c2(Check& c) {
    auto one = [&](const Polyhedron& p) {
        c.expect(counts(p, 24, 44, 18), "counts");
        c.expect(constant(p, -pi / 6, 1e-9), "defects");
        c.expect(embedded(p), "self-intersection");
    };
    one(gen_p2_24());
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int i = 0; i < 100; ++i) {
        double b = u(rng) / std::sqrt(3.0);
        double c_ = u(rng) * std::min(b, 1 / (4 * std::sqrt(3.0)));
        one(gen_p2_24(b, c_));
    }
}

void c3(Check& c) {
    for (int g = 3; g <= 6; ++g) {
        Polyhedron p = gen_orientable(g);
        c.expect(p.num_vertices() == static_cast<std::size_t>(24 * (g - 1)), "vertex count g=" + num(g));
        c.expect(oracle::orientable(p.data()) && genus_of(p) == g, "genus g=" + num(g));
        c.expect(constant(p, -pi / 6, 1e-6), "defects g=" + num(g));
        c.expect(embedded(p), "self-intersection g=" + num(g));
    }
}

void c4(Check& c) {
    struct Row {
        Polyhedron p;
        double defect;
        std::size_t v, e, f;
        int g;
    };
    Row rows[] = {{gen_tetrahemihexahedron(), pi / 3, 6, 12, 7, 1},
                  {gen_q2_9(), 0.0, 9, 21, 12, 2},
                  {gen_q3_18(), -pi / 9, 18, 42, 23, 3},
                  {gen_cubohemioctahedron(), -pi / 3, 12, 24, 10, 4}};
    for (const auto& r : rows) {
        const std::string tag = " g=" + num(r.g);
        c.expect(constant(r.p, r.defect, 1e-9), "defects" + tag);
        c.expect(counts(r.p, r.v, r.e, r.f), "counts" + tag);
        c.expect(!oracle::orientable(r.p.data()) && genus_of(r.p) == r.g, "topology" + tag);
        c.expect(!embedded(r.p), "expected self-intersection" + tag);
    }
}

void c5(Check& c) {
    for (int n = 1; n <= 2; ++n) {
        Polyhedron odd = gen_nonorientable(2 * n + 3), even = gen_nonorientable(2 * n + 4);
        c.expect(odd.num_vertices() == static_cast<std::size_t>(18 + 36 * n), "odd count");
        c.expect(even.num_vertices() == static_cast<std::size_t>(12 + 12 * n), "even count");
        c.expect(!oracle::orientable(odd.data()) && genus_of(odd) == 2 * n + 3, "odd genus");
        c.expect(!oracle::orientable(even.data()) && genus_of(even) == 2 * n + 4, "even genus");
        c.expect(constant(odd, -pi / 9, 1e-6), "odd defects");
        c.expect(constant(even, -pi / 3, 1e-6), "even defects");
    }
}

void c6(Check& c) {
    auto flat = [](const BlockParams& p) {
        std::vector<double> v = p.d;
        if (p.terminal) v.push_back(p.terminal->second);
        return v;
    };
    const std::vector<double> p7 = {3.94799, 6.93234, 9.83752, 8.30361};
    const std::vector<double> p8 = {3.99386, 7.21534, 11.01272, 13.64880};
    auto s7 = flat(solve_block_params(7, 2.0)), s8 = flat(solve_block_params(8, 2.0));
    c.expect(s7.size() == 4 && s8.size() == 4, "parameter count");
    for (std::size_t i = 0; i < 4 && c.ok; ++i) {
        c.expect(std::abs(s7[i] - p7[i]) < 1e-4, "g=7 value " + num(s7[i]));
        c.expect(std::abs(s8[i] - p8[i]) < 1e-4, "g=8 value " + num(s8[i]));
    }
}

void c7(Check& c) {
    for (int g = 1; g <= 8; ++g) {
        Polyhedron p = gen_minimal(g);
        const std::string tag = " g=" + num(g);
        c.expect(counts(p, 2 * g + 4, 11 * g + 4, 7 * g + 2), "counts" + tag);
        c.expect(oracle::orientable(p.data()) && genus_of(p) == g, "topology" + tag);
        c.expect(constant(p, -(2.0 * g - 2) * pi / (g + 2), 1e-6), "defects" + tag);
        if (g >= 2) c.expect(!embedded(p), "expected self-intersection" + tag);
    }
}

void c8(Check& c) {
    for (int g = 2; g <= 6; ++g) {
        Polyhedron p = gen_appendix_orientable(g, AppendixFamily::V8g);
        c.expect(counts(p, 8 * g, 16 * g, 6 * g + 2) && genus_of(p) == g, "v8g counts");
        c.expect(constant(p, pi * (1 - g) / (2 * g), 1e-9) && embedded(p), "v8g geometry");
    }
    for (int g = 5; g <= 10; ++g) {
        Polyhedron p = gen_appendix_orientable(g, AppendixFamily::V6g);
        c.expect(counts(p, 6 * g, 13 * g, 5 * g + 2) && genus_of(p) == g, "v6g counts");
        c.expect(constant(p, 2 * pi * (1 - g) / (3 * g), 1e-9) && embedded(p), "v6g geometry");
    }
    for (int g = 4; g <= 6; ++g) {
        Polyhedron p = gen_appendix_orientable(g, AppendixFamily::V7gm7);
        c.expect(counts(p, 7 * g - 7, 18 * g - 18, 9 * g - 9) && genus_of(p) == g, "v7gm7 counts");
        c.expect(constant(p, -4 * pi / 7, 1e-9) && embedded(p), "v7gm7 geometry");
    }
    for (int g = 3; g <= 11; g += 2) {
        Polyhedron p = gen_n5g_odd(g);
        c.expect(counts(p, 5 * g, 13 * g, 7 * g + 2) && genus_of(p) == g && !oracle::orientable(p.data()),
                 "n5g counts");
        c.expect(constant(p, (4 - 2.0 * g) * pi / (5 * g), 1e-9), "n5g defects");
    }
}

void c9(Check& c) {
    std::vector<Polyhedron> all = {gen_tetrahedron(), gen_flat_torus9(), gen_p2_24(), gen_tetrahemihexahedron(),
                                   gen_q2_9(), gen_q3_18(), gen_cubohemioctahedron(), gen_rhombihexahedron(),
                                   gen_small_dodecahemidodecahedron()};
    for (int g = 0; g <= 10; ++g) {
        all.push_back(gen_orientable(g));
        all.push_back(gen_orientable(g, true));
        all.push_back(gen_nonorientable(g + 1));
        all.push_back(gen_nonorientable(g + 1, true));
        if (g >= 1) all.push_back(gen_minimal(g));
    }
    for (const auto& p : all) {
        double sum = 0;
        for (double d : oracle::defects(p)) sum += d;
        c.expect(descartes_residual(p) < 1e-8 && std::abs(sum - 2 * pi * oracle::euler(p.data())) < 1e-8,
                 "Descartes residual on " + p.metadata().family);
    }

    // drilling
    Polyhedron base = gen_p2_24();
    DrillSpec spec;
    spec.face_a = fid(0);
    spec.face_b = fid(1);
    spec.n = 12;
    Polyhedron d = drill(base, spec);
    auto before = oracle::defects(base), after = oracle::defects(d);
    c.expect(d.num_vertices() == base.num_vertices() + 24, "drill vertex count");
    c.expect(oracle::euler(d.data()) == oracle::euler(base.data()) - 2, "drill chi");
    for (std::size_t v = base.num_vertices(); v < d.num_vertices(); ++v)
        c.expect(std::abs(after[v] + 2 * pi / 12) < 1e-9, "prism vertex defect");
    for (std::size_t v = 0; v < base.num_vertices(); ++v)
        c.expect(std::abs(after[v] - before[v]) < 1e-9, "old vertex defect");

    // connected sum
    Polyhedron t = gen_tetrahedron();
    Polyhedron tt = connect_sum(t, t, {fid(0), fid(0), CycleMap{0, true}});
    c.expect(oracle::euler(tt.data()) == 2 * oracle::euler(t.data()) - 2, "tetra # tetra chi");
    Polyhedron r = gen_tetrahemihexahedron();
    Polyhedron rr = connect_sum(r, r, {fid(0), fid(0), CycleMap{0, false}});
    c.expect(oracle::euler(rr.data()) == 2 * oracle::euler(r.data()) - 2, "R # R chi");

    // rigid motions and scaling
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const Polyhedron& p : {gen_flat_torus9(), gen_q3_18(), gen_minimal(6), gen_cubohemioctahedron()}) {
        auto ref = oracle::defects(p);
        for (int i = 0; i < 4; ++i) {
            Polyhedron q = build_polyhedron(fixtures::moved(p.data(), 3 * u(rng), Vec3(u(rng), u(rng), 1),
                                                            Vec3(5 * u(rng), 5 * u(rng), 5 * u(rng)),
                                                            std::exp(2 * u(rng))));
            for (std::size_t v = 0; v < ref.size(); ++v)
                c.expect(std::abs(angular_defect(q, vid(v)) - ref[v]) < 1e-9, "motion invariance");
        }
    }
}

void c10(Check& c) {
    Polyhedron rh = gen_rhombihexahedron();
    const double drh = 2 * pi * oracle::euler(rh.data()) / static_cast<double>(rh.num_vertices());
    c.expect(rh.num_vertices() == 24 && genus_of(rh) == 8 && !oracle::orientable(rh.data()), "rhombihexahedron");
    c.expect(std::abs(drh + pi / 2) < 1e-12 && constant(rh, drh, 1e-9), "rhombihexahedron defect");
    Polyhedron sd = gen_small_dodecahemidodecahedron();
    const double dsd = 2 * pi * oracle::euler(sd.data()) / static_cast<double>(sd.num_vertices());
    c.expect(sd.num_vertices() == 30 && genus_of(sd) == 14 && !oracle::orientable(sd.data()), "SDHD topology");
    c.expect(std::abs(dsd + 4 * pi / 5) < 1e-12 && constant(sd, dsd, 1e-9), "SDHD defect");

    auto t0 = std::chrono::steady_clock::now();
    self_intersections(gen_orientable(10));
    self_intersections(gen_minimal(10));
    self_intersections(gen_nonorientable(10));
    self_intersections(gen_appendix_orientable(10, AppendixFamily::V6g));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 10, "intersection timing " + num(secs) + " s");
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"flat torus", c1},
        {"P2 with random parameters", c2},
        {"drilled orientable family", c3},
        {"small non-orientable CCPs", c4},
        {"drilled non-orientable family", c5},
        {"minimal family solver", c6},
        {"minimal family meshes", c7},
        {"fewest-vertex families", c8},
        {"property suite", c9},
        {"uniform hemi-polyhedra", c10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first;
        if (!c.ok) std::cout << " (" << c.why.str() << ")";
        std::cout << "\n";
        failed += !c.ok;
    }
    return failed == 0 ? 0 : 1;
}
