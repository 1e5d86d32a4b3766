#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "mucrit/cone_field.hpp"
#include "mucrit/error.hpp"
#include "mucrit/shapes.hpp"
#include "oracles.hpp"

using namespace mucrit;
using Catch::Approx;

TEST_CASE("support-direction cone of a symmetric pair", "[cone_field]") {
    const PointCloud k = oracle::cloud2({{0, 0}, {2, 0}});
    // x below the midpoint: directions at atan(1 / 1.2) either side of +y
    const SpanningConeResult res = spanning_cone(Vec{1.0, -1.2}, k, 0.0, 2.0);
    REQUIRE(res.method == "support-directions");
    REQUIRE(res.cone.half_angle == Approx(0.6947382761967033).epsilon(1e-12));
    REQUIRE(res.cone.axis[0] == Approx(0.0).margin(1e-12));
    REQUIRE(res.cone.axis[1] == Approx(1.0));
    REQUIRE(res.acute);
    REQUIRE(res.cone.base.has_value());
    REQUIRE((*res.cone.base)[1] == -1.2);
    REQUIRE(res.covered_count == 2);
}

TEST_CASE("reach that excludes every point is an error", "[cone_field]") {
    const PointCloud k = oracle::cloud2({{0, 0}});
    REQUIRE_THROWS_AS(spanning_cone(Vec{3.0, 0.0}, k, 0.0, 1.0), Error);
}

TEST_CASE("cap inflation adds asin(delta / d) per point", "[cone_field]") {
    const PointCloud k = oracle::cloud2({{0, 0}});
    const SpanningConeResult res = spanning_cone(Vec{2.0, 0.0}, k, 0.5, 2.0);
    REQUIRE(res.method == "cap-inflated");
    REQUIRE(res.cone.half_angle == Approx(0.25268025514207865).margin(1e-12));
    REQUIRE(res.cone.axis[0] == Approx(-1.0));
    REQUIRE(res.acute);
}

TEST_CASE("cap inflation in 3d covers every contributing cap", "[cone_field]") {
    PointCloud k(3);
    k.add(Vec{0.0, 0.0, 0.0});
    const SpanningConeResult res =
        spanning_cone(Vec{2.0, 0.0, 0.0}, k, 0.5, 2.0);
    REQUIRE(res.cone.half_angle == Approx(0.25268025514207865).margin(1e-9));
    REQUIRE(res.cone.axis[0] == Approx(-1.0));
    REQUIRE(res.covered_count == 64);
}

TEST_CASE("point inside the offset is rejected for inflated cones",
          "[cone_field]") {
    const PointCloud k = oracle::cloud2({{0, 0}});
    REQUIRE_THROWS_WITH(spanning_cone(Vec{0.3, 0.0}, k, 0.5, 2.0),
                        "x lies inside the delta offset of the cloud");
}

TEST_CASE("wide configurations degrade to the degenerate cone", "[cone_field]") {
    // x surrounded by cloud points: no acute spanning cone exists
    const PointCloud k = oracle::cloud2({{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
    const SpanningConeResult res = spanning_cone(Vec{0.0, 0.0}, k, 0.0, 2.0);
    REQUIRE(res.cone.degenerate);
    REQUIRE_FALSE(res.acute);
    REQUIRE(res.cone.half_angle == Approx(std::numbers::pi / 2));
}

TEST_CASE("complementary cone flips the half-angle", "[cone_field]") {
    const PointCloud k = oracle::cloud2({{0, 0}, {2, 0}});
    const SpanningConeResult res = spanning_cone(Vec{1.0, -1.2}, k, 0.0, 2.0);
    const Cone comp = complementary(res.cone);
    REQUIRE(comp.half_angle == Approx(0.8760580505981933).epsilon(1e-12));
    REQUIRE(comp.axis == res.cone.axis);

    Cone blunt;
    blunt.axis = {1.0, 0.0};
    blunt.half_angle = 1.6;
    REQUIRE_THROWS_AS(complementary(blunt), Error);
}

TEST_CASE("subordinate vector is the axis of a nondegenerate cone",
          "[cone_field]") {
    Cone c;
    c.axis = {0.0, 1.0};
    c.half_angle = 0.3;
    REQUIRE(subordinate_vector(c) == Vec{0.0, 1.0});
    c.degenerate = true;
    REQUIRE_THROWS_AS(subordinate_vector(c), Error);
}

TEST_CASE("flat local cone condition boundary", "[cone_field]") {
    const double thr8 = 0.95 - 1.0 * (4.0 - 0.64) / (4.0 + 0.64);
    REQUIRE(thr8 == Approx(0.2258620689655172).epsilon(1e-14));
    REQUIRE(local_cone_condition(0.8, 1.0, thr8, 0.95));
    REQUIRE_FALSE(local_cone_condition(0.8, 1.0, thr8 + 1e-12, 0.95));

    const double thr1 = 0.95 - 1.0 * 3.0 / 5.0;
    REQUIRE(thr1 == Approx(0.35).epsilon(1e-14));
    REQUIRE(local_cone_condition(1.0, 1.0, thr1, 0.95));
    REQUIRE_FALSE(local_cone_condition(1.0, 1.0, thr1 + 1e-12, 0.95));
}

TEST_CASE("hyperbolic local cone condition", "[cone_field]") {
    // 9 (r + delta - d) vs 4 tanh((r - delta + d)/2) mu^2, frozen evaluation:
    // mu = 0.9, r = 1, delta = 0.1, d = 1 gives 0.9 <= 2.396897086127774
    REQUIRE(local_cone_condition_hyperbolic(0.9, 1.0, 0.1, 1.0));
    REQUIRE_FALSE(local_cone_condition_hyperbolic(0.9, 1.0, 0.5, 1.0));
}

TEST_CASE("semicontinuity probe", "[cone_field][empirical]") {
    ShapeSpec spec;
    spec.count = 100;
    const PointCloud circle = generate(spec).cloud;

    SemicontinuityProbeParams params;
    params.etas = {0.02, 0.01};
    params.epsilons = {0.01, 0.05, 0.1};
    params.pairs = 60;
    params.seed = 7;
    // r large enough that the whole cloud always contributes: the cone
    // field then varies continuously and small enlargements absorb it
    const SemicontinuityProbeReport report =
        probe_semicontinuity(circle, 0.05, 3.0, {0.4, 0.6}, params);

    REQUIRE(report.entries.size() == 6);
    for (const auto& e : report.entries) REQUIRE(e.pairs_used == 60);

    // per eta, raising epsilon lowers the violation by exactly the difference
    for (std::size_t base : {std::size_t{0}, std::size_t{3}}) {
        const auto& e0 = report.entries[base];
        const auto& e2 = report.entries[base + 2];
        REQUIRE(e2.max_violation ==
                Approx(e0.max_violation - (0.1 - 0.01)).margin(1e-12));
    }

    // smallest step, largest enlargement: containment holds
    REQUIRE(report.entries.back().eta == 0.01);
    REQUIRE(report.entries.back().epsilon == 0.1);
    REQUIRE(report.entries.back().max_violation <= 0.0);

    // deterministic for a fixed seed
    const SemicontinuityProbeReport again =
        probe_semicontinuity(circle, 0.05, 3.0, {0.4, 0.6}, params);
    for (std::size_t i = 0; i < report.entries.size(); ++i)
        REQUIRE(report.entries[i].max_violation ==
                again.entries[i].max_violation);
}
