#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "lawson/io.hpp"

using namespace lawson;
using lawson::io::RunConfig;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               fs::path("lawson_test_" + std::to_string(::getpid()) + "_" +
                        std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

RunConfig constant_config(int w, int h) {
    RunConfig cfg;
    cfg.width = w;
    cfg.height = h;
    cfg.preset = "constant";
    cfg.const_a = {0.3, 0.1};
    cfg.const_u = 1.2;
    cfg.const_b = {0.2, -0.4};
    cfg.const_v = 0.9;
    cfg.gamma1 = {M_PI / 4.0};
    cfg.ambients = {"r3", "s3"};
    return cfg;
}

} // namespace

TEST_CASE("config JSON round trip and hashing") {
    RunConfig cfg = constant_config(4, 4);
    io::json j = cfg.to_json();
    RunConfig back = RunConfig::from_json(j);
    CHECK(back.to_json().dump(2) == j.dump(2));
    CHECK(back.hash() == cfg.hash());

    RunConfig other = constant_config(5, 4);
    CHECK(other.hash() != cfg.hash());

    CHECK_THROWS_AS(RunConfig::from_json(io::json::parse(R"({"preset":"bogus"})")), Error);
    CHECK_THROWS_AS(RunConfig::load("/nonexistent/path.json"), Error);
}

TEST_CASE("random Cauchy data is reproducible and admissible") {
    CauchyData a = io::random_cauchy(6, 6, 42);
    CauchyData b = io::random_cauchy(6, 6, 42);
    REQUIRE(a.row0.size() == b.row0.size());
    for (size_t i = 0; i < a.row0.size(); ++i) {
        CHECK(a.row0[i].a == b.row0[i].a);
        CHECK(a.row0[i].u == b.row0[i].u);
    }
    SpectralPoint s0(0.0);
    for (const VEdgeData& e : a.col0)
        CHECK(beta(e, s0) * beta(e, s0) > 0.05);
    CauchyData c = io::random_cauchy(6, 6, 43);
    CHECK((c.row0[0].a != a.row0[0].a));
}

TEST_CASE("net file JSON round trip is byte-identical") {
    LatticeLax lat = propagate(constant_config(3, 3).cauchy());
    NetR3 net = immerse_r3(lat);
    io::NetFile f = io::to_netfile(net, &lat, "deadbeef");
    std::string once = io::netfile_to_json(f).dump(2);
    io::NetFile back = io::netfile_from_json(io::json::parse(once));
    std::string twice = io::netfile_to_json(back).dump(2);
    CHECK(once == twice);

    NetR3 rnet = io::netfile_to_r3(back);
    for (size_t i = 0; i < net.F.size(); ++i)
        CHECK((rnet.F[i] - net.F[i]).norm() == 0.0);
    std::optional<LatticeLax> rlax = io::netfile_lax(back);
    REQUIRE(rlax.has_value());
    CHECK(rlax->horizontal(0, 0).a == lat.horizontal(0, 0).a);
}

TEST_CASE("lax JSON round trip") {
    LatticeLax lat = propagate(io::random_cauchy(4, 3, 7));
    io::json j = io::lax_to_json(lat);
    LatticeLax back = io::lax_from_json(j);
    CHECK(back.width() == 4);
    CHECK(back.height() == 3);
    for (int n = 0; n < 3; ++n)
        for (int m = 0; m + 1 < 4; ++m)
            CHECK(back.horizontal(m, n).a == lat.horizontal(m, n).a);
}

TEST_CASE("OBJ export fixtures") {
    RunConfig cfg = constant_config(2, 2);
    LatticeLax lat = propagate(cfg.cauchy());
    NetR3 net = immerse_r3(lat);
    io::NetFile f = io::to_netfile(net, nullptr, cfg.hash());
    std::string obj = io::export_obj(f, "r3");
    int vlines = 0;
    for (size_t pos = 0; (pos = obj.find("v ", pos)) != std::string::npos; pos += 2)
        ++vlines;
    CHECK(vlines == 4);
    CHECK(obj.find("f 1 2 4 3") != std::string::npos);

    // Stereographic projection of the base minimal vertex (0,0,c,c).
    NetS3 s3 = immerse_s3(lat, M_PI / 4.0);
    io::NetFile fs = io::to_netfile(s3, nullptr, cfg.hash());
    std::string obj3 = io::export_obj(fs, "s3-stereographic");
    double c = std::sqrt(0.5);
    double x = 0, y = 0, z = 0;
    REQUIRE(std::sscanf(obj3.c_str(), "v %lf %lf %lf", &x, &y, &z) == 3);
    CHECK(std::abs(x) < 1e-15);
    CHECK(std::abs(y) < 1e-15);
    CHECK(z == doctest::Approx(c / (1.0 + c)).epsilon(1e-15)); // 0.41421356...

    // A vertex at the projection pole is rejected.
    io::NetFile pole = fs;
    pole.vertices[0] = 0.0;
    pole.vertices[1] = 0.0;
    pole.vertices[2] = 0.0;
    pole.vertices[3] = -1.0;
    CHECK_THROWS_AS(io::export_obj(pole, "s3-stereographic"), Error);
}

TEST_CASE("generate runs deterministically and verifies") {
    TempDir d1, d2;
    RunConfig cfg = constant_config(4, 4);
    CHECK(io::run_generate(cfg, d1.path.string()) == 0);
    CHECK(io::run_generate(cfg, d2.path.string()) == 0);
    for (const char* name : {"net_r3.json", "net_s3.json", "report.json"}) {
        CHECK(fs::exists(d1.path / name));
        CHECK(slurp(d1.file(name)) == slurp(d2.file(name)));
    }
}

TEST_CASE("generate rejects invalid configurations") {
    TempDir d;
    RunConfig tiny = constant_config(1, 1);
    CHECK(io::run_generate(tiny, d.path.string()) == 1); // no faces to verify

    RunConfig degenerate = constant_config(3, 3);
    degenerate.const_b = {0, 0};
    degenerate.const_v = 1.0; // beta(1) = 0
    degenerate.ambients = {"r3"};
    CHECK(io::run_generate(degenerate, d.path.string()) == 1);
}

TEST_CASE("verify and reconstruct subcommands round trip") {
    TempDir gen, ver, rec;
    RunConfig cfg = constant_config(4, 4);
    REQUIRE(io::run_generate(cfg, gen.path.string()) == 0);

    CHECK(io::run_verify(gen.file("net_r3.json"), ver.path.string()) == 0);
    CHECK(io::run_verify(gen.file("net_s3.json"), ver.path.string()) == 0);

    CHECK(io::run_reconstruct(gen.file("net_r3.json"), rec.path.string()) == 0);
    CHECK(fs::exists(rec.path / "lax.json"));
    io::json rep = io::json::parse(slurp(rec.file("reconstruct_report.json")));
    CHECK(rep["round_trip"]["pass"].get<bool>());
    CHECK(rep["round_trip"]["max_deviation"].get<double>() < 1e-8);
}

TEST_CASE("reconstruct rejects flat non-CMC input") {
    TempDir d, out;
    // A flat unit grid with constant normal is not CMC-1.
    io::NetFile f;
    f.ambient = "r3";
    f.width = 2;
    f.height = 2;
    f.dim = 3;
    for (int n = 0; n < 2; ++n)
        for (int m = 0; m < 2; ++m) {
            f.vertices.insert(f.vertices.end(), {double(m), double(n), 0.0});
            f.normals.insert(f.normals.end(), {0.0, 0.0, 1.0});
        }
    f.faces = window_faces(2, 2);
    io::save_json(io::netfile_to_json(f), d.file("flat.json"));
    CHECK(io::run_reconstruct(d.file("flat.json"), out.path.string()) == 2);
}

TEST_CASE("unreadable input fails cleanly") {
    TempDir d, out;
    std::ofstream(d.file("bad.json")) << "{ \"ambient\": \"r3\", ";
    CHECK_THROWS_AS(io::load_netfile(d.file("bad.json")), Error);
    CHECK_THROWS_AS(io::load_netfile(d.file("missing.json")), Error);
}

TEST_CASE("export subcommand writes files") {
    TempDir gen, out;
    RunConfig cfg = constant_config(3, 3);
    REQUIRE(io::run_generate(cfg, gen.path.string()) == 0);
    CHECK(io::run_export(gen.file("net_r3.json"), out.file("net.obj"), "r3") == 0);
    CHECK(slurp(out.file("net.obj")).find("f 1 2 5 4") != std::string::npos);
    CHECK(io::run_export(gen.file("net_s3.json"), out.file("s3.obj"), "s3-stereographic") == 0);
}
