#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mucrit/distance_field.hpp"
#include "mucrit/error.hpp"
#include "mucrit/scan.hpp"
#include "mucrit/shapes.hpp"
#include "oracles.hpp"

using namespace mucrit;
using Catch::Approx;

namespace {

PointCloud two_points() { return oracle::cloud2({{-1, 0}, {1, 0}}); }

// |grad| on the symmetry axis of {(-1,0),(1,0)} has the closed form
// |y| / sqrt(1 + y^2): the two unit directions meet at that cosine.
double axis_norm(double y) { return std::abs(y) / std::sqrt(1.0 + y * y); }

}  // namespace

TEST_CASE("axis gradient of the two-point cloud matches the closed form",
          "[distance_field]") {
    const DistanceField field(two_points());
    for (double y : {0.25, 0.5, 1.0, 2.0}) {
        const GradientInfo g = field.gradient(Vec{0.0, y});
        REQUIRE(g.dist == Approx(std::sqrt(1.0 + y * y)));
        REQUIRE(g.support == std::vector<int>{0, 1});
        REQUIRE(g.norm == Approx(axis_norm(y)).margin(1e-12));
        // the axis points from x toward the cloud, here straight down
        REQUIRE(g.axis[0] == Approx(0.0).margin(1e-12));
        REQUIRE(g.axis[1] == Approx(-1.0));
        // grad = -norm * axis
        REQUIRE(g.grad[1] == Approx(g.norm));
    }
    REQUIRE(field.gradient(Vec{0.0, 1.0}).norm ==
            Approx(0.7071067811865475).margin(1e-12));
}

TEST_CASE("generic points have singleton support and unit norm",
          "[distance_field]") {
    const DistanceField field(two_points());
    const GradientInfo g = field.gradient(Vec{0.7, 0.3});
    REQUIRE(g.support == std::vector<int>{1});
    REQUIRE(g.norm == 1.0);
    REQUIRE_FALSE(g.degenerate);
}

TEST_CASE("gradient matches finite differences of the distance",
          "[distance_field][oracle]") {
    std::mt19937 rng(5);
    const auto pts = oracle::random_points(rng, 30, 2);
    PointCloud cloud(2);
    for (const auto& p : pts) cloud.add(p);
    const DistanceField field(cloud);
    const double h = 1e-6;
    int checked = 0;
    for (int rep = 0; rep < 40; ++rep) {
        const Vec x = oracle::random_points(rng, 1, 2, 1.6)[0];
        if (field.distance(x) < 0.05) continue;
        const GradientInfo g = field.gradient(x);
        if (g.support.size() != 1) continue;  // kinks break the difference quotient
        for (int d = 0; d < 2; ++d) {
            Vec hi = x, lo = x;
            hi[d] += h;
            lo[d] -= h;
            const double fd =
                (field.distance(hi) - field.distance(lo)) / (2.0 * h);
            REQUIRE(g.grad[d] == Approx(fd).margin(1e-5));
        }
        ++checked;
    }
    REQUIRE(checked >= 20);
}

TEST_CASE("gradient and support are undefined on the cloud itself",
          "[distance_field]") {
    const DistanceField field(two_points());
    REQUIRE_THROWS_AS(field.gradient(Vec{1.0, 0.0}), Error);
    REQUIRE_THROWS_AS(field.support(Vec{1.0, 0.0}), Error);
}

TEST_CASE("the circle center is degenerate and 0-critical", "[distance_field]") {
    ShapeSpec spec;
    spec.count = 100;
    const PointCloud circle = generate(spec).cloud;
    const DistanceField field(circle);
    const GradientInfo g = field.gradient(Vec{0.0, 0.0});
    REQUIRE(g.degenerate);
    REQUIRE(g.norm == 0.0);
    REQUIRE(field.is_mu_critical(Vec{0.0, 0.0}, 0.0));
}

TEST_CASE("support tolerance widens the support set", "[distance_field]") {
    const PointCloud k = two_points();
    const Vec x = {0.3, 0.0};  // distances 0.7 and 1.3
    REQUIRE(support_set(x, k) == std::vector<int>{1});
    REQUIRE(support_set(x, k, SupportParams{0.7, 0.0}) ==
            std::vector<int>{0, 1});
}

TEST_CASE("scan finds the two-point saddle", "[scan]") {
    const PointCloud k = two_points();
    ScanParams coarse;
    coarse.h = 0.05;
    const CriticalScanReport report = critical_scan(k, {0.9, 1.3}, coarse, 0.5);
    REQUIRE(report.min_norm == Approx(0.0).margin(1e-12));
    REQUIRE(report.argmin[0] == Approx(0.0).margin(1e-12));
    REQUIRE(report.argmin[1] == Approx(0.0).margin(1e-12));
    REQUIRE(report.mu_queried.has_value());
    REQUIRE_FALSE(*report.mu_free);
    REQUIRE(report.samples > 100);

    // profile bins are ascending half-offset levels inside the annulus
    for (std::size_t i = 1; i < report.profile.size(); ++i)
        REQUIRE(report.profile[i][0] > report.profile[i - 1][0]);
    for (const auto& [level, low] : report.profile) {
        REQUIRE(low >= report.min_norm);
        REQUIRE(level >= 0.9 - 0.05);
        REQUIRE(level <= 1.3 + 0.05);
    }
}

TEST_CASE("scan results do not depend on the thread count", "[scan]") {
    const PointCloud k = two_points();
    ScanParams one;
    one.h = 0.03;
    one.threads = 1;
    one.keep_evaluations = true;
    ScanParams many = one;
    many.threads = 7;
    const auto a = critical_scan(k, {0.5, 1.2}, one, 0.4);
    const auto b = critical_scan(k, {0.5, 1.2}, many, 0.4);
    REQUIRE(a.samples == b.samples);
    REQUIRE(a.min_norm == b.min_norm);
    REQUIRE(a.argmin == b.argmin);
    REQUIRE(a.profile == b.profile);
    REQUIRE(a.evaluations.size() == b.evaluations.size());
    for (std::size_t i = 0; i < a.evaluations.size(); ++i) {
        REQUIRE(a.evaluations[i].x == b.evaluations[i].x);
        REQUIRE(a.evaluations[i].norm == b.evaluations[i].norm);
    }
}

TEST_CASE("scan rejects windows no grid point hits", "[scan]") {
    const PointCloud k = oracle::cloud2({{0, 0}});
    ScanParams coarse;
    coarse.h = 0.3;
    REQUIRE_THROWS_AS(critical_scan(k, {0.4, 0.41}, coarse), Error);
}

TEST_CASE("level estimators bracket the two-point critical value", "[scan]") {
    const PointCloud k = two_points();
    LevelScanParams params;
    params.h = 0.05;
    params.d_max = 1.5;
    // the only positive critical value of this field is 1 (the saddle)
    const double wfs = estimate_wfs(k, params);
    REQUIRE(std::abs(wfs - 1.0) <= 2.0 * params.h);
    const double reach = estimate_mu_reach(k, 0.5, params);
    REQUIRE(std::abs(reach - 1.0) <= 2.0 * params.h);
    // below any critical value the estimate reports +inf
    LevelScanParams shallow = params;
    shallow.d_max = 0.5;
    REQUIRE(std::isinf(estimate_wfs(k, shallow)));
}
