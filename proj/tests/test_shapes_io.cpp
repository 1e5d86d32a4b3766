#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "mucrit/io.hpp"
#include "mucrit/scan.hpp"
#include "mucrit/shapes.hpp"
#include "oracles.hpp"

using namespace mucrit;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

std::string tmp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mucrit-io-tests";
    fs::create_directories(dir);
    return (dir / name).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool same_coords(const PointCloud& a, const PointCloud& b) {
    if (a.dim() != b.dim() || a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        for (int d = 0; d < a.dim(); ++d)
            if (a.point(i)[d] != b.point(i)[d]) return false;
    return true;
}

}  // namespace

TEST_CASE("generator determinism and noise seeding", "[shapes]") {
    ShapeSpec spec;
    spec.count = 50;
    spec.noise = 0.05;
    spec.seed = 3;
    REQUIRE(same_coords(generate(spec).cloud, generate(spec).cloud));

    ShapeSpec other = spec;
    other.seed = 4;
    REQUIRE_FALSE(same_coords(generate(spec).cloud, generate(other).cloud));

    // noiseless output never touches the generator: seed is irrelevant
    ShapeSpec clean = spec;
    clean.noise = 0.0;
    ShapeSpec clean2 = clean;
    clean2.seed = 99;
    REQUIRE(same_coords(generate(clean).cloud, generate(clean2).cloud));
}

TEST_CASE("circle sampler geometry and density bound", "[shapes]") {
    ShapeSpec spec;
    spec.count = 400;
    spec.params = {{"radius", 2.0}, {"cx", 1.0}, {"cy", -3.0}};
    const GeneratedCloud out = generate(spec);
    REQUIRE(out.cloud.size() == 400);
    REQUIRE(out.cloud.point(0)[0] == 3.0);  // cx + R at angle zero
    REQUIRE(out.cloud.point(0)[1] == -3.0);
    REQUIRE(out.dh_bound == Approx(2.0 * 0.007853961447612).epsilon(1e-13));

    // every sample sits exactly on the ideal circle when noise is zero
    for (int i = 0; i < out.cloud.size(); ++i) {
        const auto p = out.cloud.point(i);
        const double rad = std::hypot(p[0] - 1.0, p[1] + 3.0);
        REQUIRE(rad == Approx(2.0).margin(1e-14));
    }

    // the sample is dh_bound-close to a much denser sample of the same circle
    ShapeSpec dense = spec;
    dense.count = 20000;
    const GeneratedCloud ref = generate(dense);
    REQUIRE(hausdorff(out.cloud, ref.cloud) <= out.dh_bound + ref.dh_bound);
}

TEST_CASE("two-circles split and disjointness", "[shapes]") {
    ShapeSpec spec;
    spec.kind = ShapeKind::TwoCircles;
    spec.count = 100;
    const PointCloud cloud = generate(spec).cloud;
    REQUIRE(cloud.size() == 100);
    int left = 0;
    for (int i = 0; i < cloud.size(); ++i)
        if (cloud.point(i)[0] < 1.0) ++left;
    REQUIRE(left == 38);  // lround(100 * 0.3 / 0.8)

    ShapeSpec touching = spec;
    touching.params = {{"separation", 0.7}};
    REQUIRE_THROWS_WITH(generate(touching), "circles must be disjoint");
}

TEST_CASE("cusp wedge arms share the apex once", "[shapes]") {
    ShapeSpec spec;
    spec.kind = ShapeKind::CuspWedge;
    spec.count = 7;
    const GeneratedCloud out = generate(spec);
    REQUIRE(out.cloud.size() == 7);
    REQUIRE(out.dh_bound == Approx(1.0 / 6.0).epsilon(1e-14));
    int at_apex = 0;
    for (int i = 0; i < out.cloud.size(); ++i)
        if (out.cloud.point(i)[0] == 0.0 && out.cloud.point(i)[1] == 0.0)
            ++at_apex;
    REQUIRE(at_apex == 1);

    ShapeSpec tiny = spec;
    tiny.count = 2;
    REQUIRE_THROWS_WITH(generate(tiny), "cusp wedge needs at least 3 points");
}

TEST_CASE("sphere sampler lives on the sphere in 3d", "[shapes]") {
    ShapeSpec spec;
    spec.kind = ShapeKind::Sphere;
    spec.count = 100;  // approximate: ring construction lands on 107
    const GeneratedCloud out = generate(spec);
    REQUIRE(out.cloud.dim() == 3);
    REQUIRE(out.cloud.size() == 107);
    REQUIRE(out.dh_bound == Approx(0.24620074228043787).epsilon(1e-13));
    for (int i = 0; i < out.cloud.size(); ++i) {
        const auto p = out.cloud.point(i);
        REQUIRE(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) ==
                Approx(1.0).margin(1e-14));
    }
}

TEST_CASE("segment sampler endpoints and bound", "[shapes]") {
    ShapeSpec spec;
    spec.kind = ShapeKind::Segment;
    spec.count = 2;
    spec.params = {{"length", 2.0}};
    const GeneratedCloud out = generate(spec);
    REQUIRE(out.cloud.size() == 2);
    REQUIRE(out.cloud.point(0)[0] == -1.0);
    REQUIRE(out.cloud.point(1)[0] == 1.0);
    REQUIRE(out.dh_bound == 1.0);
}

TEST_CASE("shape parameter validation and kind names", "[shapes]") {
    ShapeSpec spec;
    spec.params = {{"bogus", 1.0}};
    REQUIRE_THROWS_WITH(generate(spec), "unknown shape parameter: bogus");

    ShapeSpec seg;
    seg.kind = ShapeKind::Segment;
    seg.params = {{"radius", 1.0}};  // a circle parameter, invalid here
    REQUIRE_THROWS_WITH(generate(seg), "unknown shape parameter: radius");

    for (const char* name :
         {"circle", "two-circles", "cusp-wedge", "sphere", "segment"}) {
        REQUIRE(to_string(shape_kind_from_string(name)) == name);
    }
    REQUIRE_THROWS_AS(shape_kind_from_string("pretzel"), Error);
}

TEST_CASE("cloud files round-trip exactly in every format", "[io]") {
    PointCloud cloud(3);
    cloud.add(Vec{1.0 / 3.0, -2.5e8, 3.141592653589793});
    cloud.add(Vec{1e-17, 0.0, -7.25});
    cloud.add(Vec{123456789.123456789, 2.2250738585072014e-308, 42.0});

    for (const char* name : {"roundtrip.csv", "roundtrip.xyz", "roundtrip.json"}) {
        const std::string path = tmp_file(name);
        save_cloud(path, cloud);
        const PointCloud back = load_cloud(path);
        INFO(name);
        REQUIRE(same_coords(cloud, back));
        REQUIRE_FALSE(fs::exists(path + ".tmp"));  // atomic writes clean up
    }
}

TEST_CASE("delimited parsers: comments, blanks, and errors", "[io]") {
    const std::string path = tmp_file("parse.csv");
    {
        std::ofstream out(path);
        out << "# a comment line\n\n1.5,2.5\n  # indented comment\n-3,4e2\n";
    }
    const PointCloud cloud = load_cloud(path);
    REQUIRE(cloud.size() == 2);
    REQUIRE(cloud.dim() == 2);
    REQUIRE(cloud.point(1)[1] == 400.0);

    {
        std::ofstream out(path);
        out << "1,x\n";
    }
    REQUIRE_THROWS_WITH(load_cloud(path), "parse error at line 1: bad coordinate 'x'");

    {
        std::ofstream out(path);
        out << "1,2\n1,2,3\n";
    }
    REQUIRE_THROWS_WITH(load_cloud(path),
                        "parse error at line 2: expected 2 coordinates, got 3");

    {
        std::ofstream out(path);
        out << "# nothing but comments\n";
    }
    REQUIRE_THROWS_WITH(load_cloud(path), "file holds no points");
}

TEST_CASE("format dispatch and json cloud validation", "[io]") {
    REQUIRE_THROWS_AS(format_from_path("cloud.txt"), Error);

    // an explicit format overrides the extension
    const std::string odd = tmp_file("cloud.txt");
    {
        std::ofstream out(odd);
        out << "1 2\n3 4\n";
    }
    REQUIRE(load_cloud(odd, CloudFormat::Xyz).size() == 2);

    const std::string path = tmp_file("cloud.json");
    {
        std::ofstream out(path);
        out << "{\"points\": [[1, 2]]}";  // missing "dim"
    }
    REQUIRE_THROWS_AS(load_cloud(path), Error);
    {
        std::ofstream out(path);
        out << "{\"dim\": 2, \"points\": [[1, 2, 3]]}";
    }
    REQUIRE_THROWS_WITH(load_cloud(path), "parse error: point dimension mismatch");
    {
        std::ofstream out(path);
        out << "{{{";
    }
    REQUIRE_THROWS_AS(load_cloud(path), Error);
}

TEST_CASE("reports serialize with provenance stamps", "[io]") {
    ShapeSpec spec;
    spec.count = 60;
    const PointCloud k = generate(spec).cloud;
    ScanParams params;
    params.h = 0.05;
    const CriticalScanReport scan =
        critical_scan(k, AnnulusSpec{0.3, 0.5}, params, 0.5);

    const nlohmann::json j = scan;
    REQUIRE(j.at("empirical") == true);
    REQUIRE(j.at("generator").at("name") == "mucrit");
    REQUIRE(j.at("generator").at("version") == std::string(kVersion));
    REQUIRE(j.at("mu") == 0.5);
    REQUIRE(j.contains("mu_free"));
    REQUIRE(j.at("samples").get<long>() == scan.samples);

    const std::string path = tmp_file("report.json");
    save_report(path, j);
    const std::string text = slurp(path);
    REQUIRE(text.back() == '\n');
    const nlohmann::json parsed = nlohmann::json::parse(text);
    REQUIRE(parsed.at("min_norm").get<double>() == scan.min_norm);
}

TEST_CASE("plots are deterministic standalone svg", "[io]") {
    ShapeSpec spec;
    spec.count = 40;
    const PointCloud k = generate(spec).cloud;
    ScanParams params;
    params.h = 0.05;
    params.keep_evaluations = true;
    const CriticalScanReport scan =
        critical_scan(k, AnnulusSpec{0.2, 0.4}, params);
    const FlowTrace trace = integrate_flow(Vec{1.6, 0.2}, k, 0.3, FlowParams{});

    PlotSpec plot;
    plot.cloud = &k;
    plot.scan = &scan;
    plot.annulus = AnnulusSpec{0.2, 0.4};
    plot.traces.push_back(trace);

    const std::string path = tmp_file("plot.svg");
    save_plot(path, plot);
    const std::string first = slurp(path);
    REQUIRE(first.rfind("<svg", 0) == 0);
    REQUIRE(first.find("</svg>") != std::string::npos);
    REQUIRE(first.find("fill-opacity") != std::string::npos);  // heat layer
    REQUIRE(first.find("polyline") != std::string::npos);      // the trace

    save_plot(path, plot);
    REQUIRE(slurp(path) == first);

    PointCloud flat(3);
    flat.add(Vec{0, 0, 0});
    PlotSpec bad;
    bad.cloud = &flat;
    REQUIRE_THROWS_WITH(save_plot(tmp_file("bad.svg"), bad), "plots are 2d only");
}
