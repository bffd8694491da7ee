#include "ccp/cli.hpp"
#include "ccp/generators.hpp"
#include "ccp/io.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ccp;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "ccp-tests";
    fs::create_directories(dir);
    return dir / name;
}

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);)
        if (line.rfind(prefix, 0) == 0) ++n;
    return n;
}

}  // namespace

TEST_CASE("JSON round trip is bit-identical") {
    for (const Polyhedron& p : {gen_p2_24(), gen_q3_18(), gen_minimal(5), gen_orientable(3)}) {
        std::string text = io::to_json(p);
        MeshData back = io::from_json(text);
        REQUIRE(back.vertices.size() == p.num_vertices());
        for (std::size_t i = 0; i < back.vertices.size(); ++i)
            for (int c = 0; c < 3; ++c) {
                double a = back.vertices[i][c], b = p.positions()[i][c];
                CHECK(std::memcmp(&a, &b, sizeof a) == 0);
            }
        CHECK(back.faces == p.data().faces);
        CHECK(back.metadata.family == p.metadata().family);
        CHECK(back.metadata.surgery_depth == p.metadata().surgery_depth);
        CHECK(io::to_json(build_polyhedron(back)) == text);
    }
}

TEST_CASE("JSON parse errors") {
    CHECK_THROWS_AS(io::from_json("{"), Error);
    CHECK_THROWS_AS(io::from_json(R"({"format_version": 1, "vertices": [[0,0]], "faces": []})"), Error);
    try {
        io::from_json("not json");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
    }
}

TEST_CASE("OBJ export and import") {
    Polyhedron t = gen_tetrahemihexahedron();
    std::string obj = io::to_obj(t);
    CHECK(count_prefix(obj, "v ") == 6);
    CHECK(count_prefix(obj, "f ") == 7);
    MeshData back = io::from_obj(obj);
    CHECK(back.vertices.size() == 6);
    CHECK(back.faces == t.data().faces);
    MeshData slashed = io::from_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1/1 2//2 -1\n");
    REQUIRE(slashed.faces.size() == 1);
    CHECK(slashed.faces[0] == Cycle{0, 1, 2});
}

TEST_CASE("STL triangle count") {
    for (const Polyhedron& p : {gen_p2_24(), gen_cubohemioctahedron(), gen_small_dodecahemidodecahedron()}) {
        std::size_t expect = 0;
        for (std::size_t f = 0; f < p.num_faces(); ++f) expect += p.face(fid(f)).size() - 2;
        std::string stl = io::to_stl(p);
        CHECK(stl.size() == 84 + 50 * expect);
        CHECK(io::stl_triangle_count(stl) == expect);
    }
}

TEST_CASE("file dispatch") {
    Polyhedron p = gen_q2_9();
    io::save(p, scratch("q.json"));
    io::save(p, scratch("q.obj"));
    io::save(p, scratch("q.stl"));
    CHECK(io::load(scratch("q.json")).vertices.size() == 9);
    CHECK(io::load(scratch("q.obj")).faces.size() == 12);
    CHECK_THROWS_AS(io::load(scratch("q.stl")), Error);
    CHECK_THROWS_AS(io::load(scratch("missing.json")), Error);
}

TEST_CASE("report JSON") {
    auto j = nlohmann::json::parse(io::report_to_json(verify(gen_q2_9())));
    CHECK(j["verdict"] == verdict_name(Verdict::CcpImmersed));
    CHECK(j["self_intersection"]["embedded"] == false);
}

TEST_CASE("cli: generate") {
    auto r = run_cli({"generate", "--family", "minimal", "--genus", "7"});
    REQUIRE(r.code == 0);
    CHECK(io::from_json(r.out).vertices.size() == 18);

    r = run_cli({"generate", "--family", "nonorientable", "--genus", "4", "--prefer-fewest"});
    REQUIRE(r.code == 0);
    CHECK(io::from_json(r.out).vertices.size() == 12);

    r = run_cli({"generate", "--family", "p2-24", "--param", "b=0.3", "--param", "c=0.05"});
    REQUIRE(r.code == 0);
    CHECK(io::from_json(r.out).vertices.size() == 24);

    CHECK(run_cli({"generate", "--family", "v7gm7", "--genus", "9"}).code == 2);
    CHECK(run_cli({"generate", "--family", "nope"}).code == 2);
    CHECK(run_cli({"generate"}).code == 2);
    auto bad = run_cli({"generate", "--family", "p2-24", "--param", "b=0.1", "--param", "c=0.2"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("error: BadParameters") == 0);
}

TEST_CASE("cli: verify exit codes") {
    fs::path q = scratch("q29.json");
    REQUIRE(run_cli({"generate", "--family", "q2-9", "-o", q.string()}).code == 0);
    auto r = run_cli({"verify", q.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("0·π") != std::string::npos);

    MeshData d = gen_tetrahedron().data();
    d.vertices[0] *= 1.1;
    fs::path bad = scratch("bent.json");
    io::save(build_polyhedron(d), bad);
    CHECK(run_cli({"verify", bad.string()}).code == 1);
    CHECK(run_cli({"verify", scratch("absent.json").string()}).code == 2);

    auto js = run_cli({"verify", q.string(), "--json"});
    CHECK(js.code == 0);
    CHECK(nlohmann::json::parse(js.out)["verdict"] == verdict_name(Verdict::CcpImmersed));
}

TEST_CASE("cli: drill, export and catalog") {
    fs::path p2 = scratch("p2.json"), drilled = scratch("p2d.json"), obj = scratch("p2d.obj");
    REQUIRE(run_cli({"generate", "--family", "p2-24", "-o", p2.string()}).code == 0);
    auto r = run_cli({"drill", p2.string(), "--face-a", "0", "--face-b", "1", "--n", "12", "--k", "2", "--phase", "0",
                  "-o", drilled.string()});
    REQUIRE(r.code == 0);
    CHECK(io::load(drilled).vertices.size() == 72);
    CHECK(run_cli({"verify", drilled.string()}).code == 0);
    CHECK(run_cli({"export", drilled.string(), "-o", obj.string()}).code == 0);
    CHECK(io::load(obj).vertices.size() == 72);
    CHECK(run_cli({"drill", p2.string(), "--face-a", "0", "--face-b", "1", "--n", "2"}).code == 2);
    auto cat = run_cli({"catalog"});
    CHECK(cat.code == 0);
    for (const char* id : {"tetrahedron", "flat-torus-9", "minimal", "q3-18", "n5g", "v6g"})
        CHECK(cat.out.find(id) != std::string::npos);
}
