#include "ccp/cli.hpp"
#include "ccp/generators.hpp"
#include "ccp/io.hpp"
#include "ccp/surgery.hpp"
#include "ccp/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <map>
#include <random>

namespace ccp::cli {

namespace {

using Params = std::map<std::string, double>;

struct Family {
    std::string id;
    bool needs_genus;
    std::string vertices;  // vertex-count formula
    std::string note;
    std::function<Polyhedron(int g, bool fewest, const Params&)> make;
};

double param(const Params& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

const std::vector<Family>& catalog() {
    static const std::vector<Family> families = {
        {"tetrahedron", false, "4", "orientable g=0, embedded",
         [](int, bool, const Params&) { return gen_tetrahedron(); }},
        {"flat-torus-9", false, "9", "orientable g=1, embedded, defect 0",
         [](int, bool, const Params&) { return gen_flat_torus9(); }},
        {"p2-24", false, "24", "orientable g=2, embedded; params b, c",
         [](int, bool, const Params& p) { return gen_p2_24(param(p, "b", 0.25), param(p, "c", 1.0 / 32)); }},
        {"orientable", true, "24(g-1); fewest: 8g (g=2,3), 7g-7 (g=4..6), 6g (g>=7)",
         "orientable, embedded; g=0 tetrahedron, g=1 flat torus",
         [](int g, bool f, const Params&) { return gen_orientable(g, f); }},
        {"v8g", true, "8g", "orientable g>=2, embedded",
         [](int g, bool, const Params&) { return gen_appendix_orientable(g, AppendixFamily::V8g); }},
        {"v7gm7", true, "7g-7", "orientable g=4..6, embedded",
         [](int g, bool, const Params&) { return gen_appendix_orientable(g, AppendixFamily::V7gm7); }},
        {"v6g", true, "6g", "orientable g>=5, embedded",
         [](int g, bool, const Params&) { return gen_appendix_orientable(g, AppendixFamily::V6g); }},
        {"minimal", true, "2g+4", "orientable g>=1, self-intersecting; param l1",
         [](int g, bool, const Params& p) { return gen_minimal(g, param(p, "l1", 2.0)); }},
        {"thh", false, "6", "non-orientable g=1 (tetrahemihexahedron)",
         [](int, bool, const Params&) { return gen_tetrahemihexahedron(); }},
        {"r-block", false, "6", "building block R(r, h); params r, h",
         [](int, bool, const Params& p) { return gen_r_block(param(p, "r", 1.0), param(p, "h", std::sqrt(2.0))); }},
        {"q2-9", false, "9", "non-orientable g=2, defect 0",
         [](int, bool, const Params&) { return gen_q2_9(); }},
        {"q3-18", false, "18", "non-orientable g=3", [](int, bool, const Params&) { return gen_q3_18(); }},
        {"cho", false, "12", "non-orientable g=4 (cubohemioctahedron)",
         [](int, bool, const Params&) { return gen_cubohemioctahedron(); }},
        {"nonorientable", true,
         "chain: 6, 9, 18, 12, then 18g-36 (odd) / 6g-12 (even); fewest: 5g (odd g<=11), 7g-14 (odd g>=13), "
         "6g-12 (g=4,6), 30 (g=14), 4g-8 (other even)",
         "non-orientable, self-intersecting", [](int g, bool f, const Params&) { return gen_nonorientable(g, f); }},
        {"n5g", true, "5g (g<=11), 7g-14 (g>=13)", "non-orientable odd g>=3",
         [](int g, bool, const Params&) { return gen_n5g_odd(g); }},
        {"rhombihexahedron", false, "24", "non-orientable g=8",
         [](int, bool, const Params&) { return gen_rhombihexahedron(); }},
        {"sdhd", false, "30", "non-orientable g=14 (small dodecahemidodecahedron)",
         [](int, bool, const Params&) { return gen_small_dodecahemidodecahedron(); }},
        {"t-block", false, "6", "block T(l, d); params l, d",
         [](int, bool, const Params& p) { return gen_t_block(param(p, "l", 2.0), param(p, "d", 2.0)); }},
    };
    return families;
}

ToleranceSet default_tolerances() {
    ToleranceSet tol;
    if (const char* env = std::getenv("CCP_TOLERANCE")) {
        char* end = nullptr;
        double t = std::strtod(env, &end);
        if (end != env && t > 0) tol.defect = t;
    }
    return tol;
}

void emit(const Polyhedron& p, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-")
        out << io::to_json(p);
    else
        io::save(p, path);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Construct and certify constant-curvature polyhedra"};
    app.require_subcommand(1);

    std::string family, output, input, export_in;
    int genus = -1;
    std::vector<std::string> raw_params;
    bool fewest = false;
    auto* gen = app.add_subcommand("generate", "build a family member");
    gen->add_option("--family", family, "family id (see catalog)")->required();
    gen->add_option("--genus", genus, "genus");
    gen->add_option("--param", raw_params, "free parameter as key=value");
    gen->add_flag("--prefer-fewest", fewest, "pick the construction with the fewest vertices");
    gen->add_option("-o,--output", output, "output file (.json, .obj, .stl); stdout when absent");

    double tolerance = 0.0;
    bool as_json = false;
    auto* ver = app.add_subcommand("verify", "certify a mesh file");
    ver->add_option("file", input, "mesh file")->required();
    ver->add_option("--tolerance", tolerance, "defect tolerance");
    ver->add_flag("--json", as_json, "print the report as JSON");

    app.add_subcommand("catalog", "list the known families");

    int face_a = -1, face_b = -1, n = 0, k = 1;
    double radius = 0.0, phase = 0.0;
    std::uint64_t seed = 0;
    bool immersed = false;
    std::string drill_out, drill_in;
    auto* dr = app.add_subcommand("drill", "tunnel prisms between two parallel faces");
    dr->add_option("file", drill_in, "mesh file")->required();
    dr->add_option("--face-a", face_a)->required();
    dr->add_option("--face-b", face_b)->required();
    dr->add_option("--n", n, "prism order")->required();
    dr->add_option("--k", k, "number of tunnels");
    auto* radius_opt = dr->add_option("--radius", radius);
    auto* phase_opt = dr->add_option("--phase", phase);
    auto* seed_opt = dr->add_option("--seed", seed, "random prism phase when --phase is absent");
    dr->add_flag("--allow-immersed", immersed);
    dr->add_option("-o,--output", drill_out);

    std::string export_out;
    auto* ex = app.add_subcommand("export", "convert a mesh file");
    ex->add_option("file", export_in)->required();
    ex->add_option("-o,--output", export_out)->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*gen) {
            auto it = std::find_if(catalog().begin(), catalog().end(), [&](const Family& f) { return f.id == family; });
            if (it == catalog().end()) {
                err << "error: unknown family '" << family << "'\n";
                return 2;
            }
            if (it->needs_genus && genus < 0) {
                err << "error: --genus is required for " << family << '\n';
                return 2;
            }
            Params params;
            for (const auto& kv : raw_params) {
                auto eq = kv.find('=');
                double v = 0.0;
                bool ok = eq != std::string::npos;
                if (ok) {
                    try {
                        std::size_t used = 0;
                        v = std::stod(kv.substr(eq + 1), &used);
                        ok = used == kv.size() - eq - 1;
                    } catch (const std::exception&) {
                        ok = false;
                    }
                }
                if (!ok) {
                    err << "error: bad --param '" << kv << "', expected key=value\n";
                    return 2;
                }
                params[kv.substr(0, eq)] = v;
            }
            emit(it->make(genus, fewest, params), output, out);
            return 0;
        }
        if (*ver) {
            ToleranceSet tol = default_tolerances();
            if (tolerance > 0) tol.defect = tolerance;
            VerificationReport r = verify(io::load(input), tol);
            out << (as_json ? io::report_to_json(r) : to_text(r));
            switch (r.verdict) {
                case Verdict::CcpEmbedded:
                case Verdict::CcpImmersed: return 0;
                case Verdict::NotCcp: return 1;
                case Verdict::InvalidMesh: return 2;
            }
        }
        if (app.got_subcommand("catalog")) {
            for (const Family& f : catalog())
                out << f.id << "\t|V| = " << f.vertices << "\t" << f.note << (f.needs_genus ? " [--genus]" : "")
                    << '\n';
            return 0;
        }
        if (*dr) {
            ToleranceSet tol = default_tolerances();
            Polyhedron p = build_polyhedron(io::load(drill_in), tol);
            DrillSpec spec;
            spec.face_a = fid(static_cast<std::size_t>(face_a));
            spec.face_b = fid(static_cast<std::size_t>(face_b));
            if (face_a < 0 || face_b < 0 || static_cast<std::size_t>(std::max(face_a, face_b)) >= p.num_faces())
                throw Error(ErrorCode::IndexOutOfRange, "face index out of range");
            spec.n = n;
            if (*radius_opt) spec.radius = radius;
            if (*phase_opt) {
                spec.phase = phase;
            } else if (*seed_opt) {
                std::mt19937_64 rng(seed);
                spec.phase = std::uniform_real_distribution<double>(0.0, 2 * kPi / std::max(n, 1))(rng);
            }
            spec.allow_immersed = immersed;
            emit(drill_repeat(p, spec, k, tol), drill_out, out);
            return 0;
        }
        if (*ex) {
            io::save(build_polyhedron(io::load(export_in)), export_out);
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace ccp::cli
