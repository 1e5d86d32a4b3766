#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "mucrit/cone.hpp"
#include "mucrit/error.hpp"
#include "mucrit/miniball.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/spatial_index.hpp"
#include "mucrit/vec.hpp"
#include "oracles.hpp"

using namespace mucrit;
using Catch::Approx;

TEST_CASE("vector helpers", "[vec]") {
    const Vec a = {3.0, 4.0};
    REQUIRE(norm(a) == Approx(5.0));
    REQUIRE(dist(a, Vec{0.0, 0.0}) == Approx(5.0));
    REQUIRE(dot(a, Vec{1.0, 0.0}) == Approx(3.0));

    const Vec s = add_scaled(Vec{1.0, 1.0}, 2.0, Vec{0.0, 1.0});
    REQUIRE(s[0] == 1.0);
    REQUIRE(s[1] == 3.0);

    REQUIRE(angle_between(Vec{1.0, 0.0}, Vec{0.0, 1.0}) ==
            Approx(std::numbers::pi / 2));
    REQUIRE(angle_between(Vec{1.0, 0.0}, Vec{-1.0, 0.0}) ==
            Approx(std::numbers::pi));
    REQUIRE_THROWS_AS(normalized(Vec{0.0, 0.0}), Error);
}

TEST_CASE("point cloud validation", "[point_cloud]") {
    PointCloud cloud(2);
    cloud.add(Vec{0.0, 1.0});
    REQUIRE_THROWS_AS(cloud.add(Vec{0.0, 1.0, 2.0}), Error);
    REQUIRE_THROWS_AS(cloud.add(Vec{0.0, std::nan("")}), Error);
    REQUIRE(cloud.size() == 1);

    cloud.add(Vec{2.0, -1.0});
    const auto [lo, hi] = cloud.bounding_box();
    REQUIRE(lo == Vec{0.0, -1.0});
    REQUIRE(hi == Vec{2.0, 1.0});

    REQUIRE_THROWS_AS(PointCloud(2).bounding_box(), Error);
}

TEST_CASE("nearest neighbor matches brute force, both code paths",
          "[spatial_index]") {
    std::mt19937 rng(7);
    // n = 40 exercises the linear path, n = 900 the tree path
    for (int n : {40, 900}) {
        for (int dim : {2, 3}) {
            const auto pts = oracle::random_points(rng, n, dim);
            PointCloud cloud(dim);
            for (const auto& p : pts) cloud.add(p);
            const SpatialIndex index(cloud);
            for (int q = 0; q < 50; ++q) {
                const auto query = oracle::random_points(rng, 1, dim, 1.5)[0];
                int best = 0;
                double best_d2 = dist2(query, pts[0]);
                for (int i = 1; i < n; ++i) {
                    const double d2 = dist2(query, pts[i]);
                    if (d2 < best_d2) {
                        best_d2 = d2;
                        best = i;
                    }
                }
                const Nearest got = index.nearest(query);
                REQUIRE(got.index == best);
                REQUIRE(got.dist == std::sqrt(best_d2));
            }
        }
    }
}

TEST_CASE("ties break toward the lowest index", "[spatial_index]") {
    PointCloud cloud(2);
    for (int i = 0; i < 400; ++i) cloud.add(Vec{1.0, 0.0});  // all coincident
    cloud.add(Vec{-1.0, 0.0});
    const SpatialIndex index(cloud);
    const Nearest got = index.nearest(Vec{0.0, 0.0});
    REQUIRE(got.index == 0);
    REQUIRE(got.dist == 1.0);
}

TEST_CASE("range query returns ascending exact matches", "[spatial_index]") {
    std::mt19937 rng(11);
    const auto pts = oracle::random_points(rng, 500, 2);
    PointCloud cloud(2);
    for (const auto& p : pts) cloud.add(p);
    const SpatialIndex index(cloud);
    const Vec q = {0.1, -0.2};
    for (double radius : {0.05, 0.3, 1.0}) {
        std::vector<int> expected;
        for (int i = 0; i < 500; ++i)
            if (dist(q, pts[i]) <= radius) expected.push_back(i);
        REQUIRE(index.within(q, radius) == expected);
    }
}

TEST_CASE("hausdorff distance on hand-checked pairs", "[spatial_index]") {
    const PointCloud k = oracle::cloud2({{0, 0}, {1, 0}});
    const PointCloud l = oracle::cloud2({{0, 0.5}});
    // sup over k: (1,0) -> sqrt(1.25); sup over l: 0.5
    REQUIRE(hausdorff(k, l) == Approx(std::sqrt(1.25)));
    REQUIRE(hausdorff(k, k) == 0.0);
}

TEST_CASE("enclosing-ball oracle reproduces closed forms", "[miniball][oracle]") {
    // equilateral triangle, side 1: circumradius 1/sqrt(3)
    const std::vector<Vec> tri = {
        {0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
    const auto ball = oracle::brute_meb(tri);
    REQUIRE(ball.second == Approx(0.5773502691896258).epsilon(1e-12));

    // obtuse triangle: ball spans the longest edge only
    const std::vector<Vec> obtuse = {{0.0, 0.0}, {2.0, 0.0}, {1.0, 0.1}};
    const auto ball2 = oracle::brute_meb(obtuse);
    REQUIRE(ball2.second == Approx(1.0));
    REQUIRE(ball2.first[0] == Approx(1.0));
    REQUIRE(ball2.first[1] == Approx(0.0).margin(1e-12));
}

TEST_CASE("min_enclosing_ball agrees with subset enumeration", "[miniball]") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> size(1, 8);
    for (int dim : {2, 3}) {
        for (int rep = 0; rep < 120; ++rep) {
            const auto pts = oracle::random_points(rng, size(rng), dim);
            const auto expected = oracle::brute_meb(pts);
            const Ball got = min_enclosing_ball(pts);
            REQUIRE(got.radius == Approx(expected.second).margin(1e-9));
            for (const auto& p : pts)
                REQUIRE(dist(p, got.center) <= got.radius + 1e-9);
        }
    }
}

TEST_CASE("degenerate ball inputs", "[miniball]") {
    REQUIRE(min_enclosing_ball({Vec{2.0, 3.0}}).radius == 0.0);

    // duplicates must not break the support solve
    const std::vector<Vec> dup = {{0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
    const Ball b = min_enclosing_ball(dup);
    REQUIRE(b.radius == Approx(0.5));
    REQUIRE(b.center[0] == Approx(0.5));

    const std::vector<Vec> collinear = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}};
    const Ball c = min_enclosing_ball(collinear);
    REQUIRE(c.radius == Approx(1.0));
    REQUIRE(c.center[0] == Approx(1.0));
}

TEST_CASE("minimal cap on two directions", "[cone]") {
    const double s = 1.0 / std::sqrt(2.0);
    const Cone cap = min_enclosing_cap({Vec{1.0, 0.0}, Vec{0.0, 1.0}});
    REQUIRE_FALSE(cap.degenerate);
    REQUIRE(cap.half_angle == Approx(std::numbers::pi / 4));
    REQUIRE(cap.axis[0] == Approx(s));
    REQUIRE(cap.axis[1] == Approx(s));
    REQUIRE(is_acute(cap));
}

TEST_CASE("antipodal directions give the degenerate cap", "[cone]") {
    const Cone cap = min_enclosing_cap({Vec{1.0, 0.0}, Vec{-1.0, 0.0}});
    REQUIRE(cap.degenerate);
    REQUIRE(cap.half_angle == Approx(std::numbers::pi / 2));
    REQUIRE_FALSE(is_acute(cap));
}

TEST_CASE("cap rejects non-unit directions", "[cone]") {
    REQUIRE_THROWS_AS(min_enclosing_cap({Vec{2.0, 0.0}}), Error);
}

TEST_CASE("cap matches the sorted-angle arc oracle in 2d", "[cone][oracle]") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> spread(0.2, 2.6);
    std::uniform_real_distribution<double> base(-std::numbers::pi,
                                                std::numbers::pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const double center = base(rng);
        const double width = spread(rng);  // total width < pi, so nondegenerate
        std::vector<Vec> dirs;
        const int n = 3 + rep % 6;
        for (int i = 0; i < n; ++i) {
            const double t = center + width * (unit(rng) - 0.5);
            dirs.push_back({std::cos(t), std::sin(t)});
        }
        const auto arc = oracle::min_arc(dirs);
        REQUIRE(arc.has_value());
        const Cone cap = min_enclosing_cap(dirs);
        REQUIRE_FALSE(cap.degenerate);
        REQUIRE(cap.half_angle == Approx(arc->second).margin(1e-7));
        const double axis_angle = std::atan2(cap.axis[1], cap.axis[0]);
        REQUIRE(std::abs(std::remainder(axis_angle - arc->first,
                                        2.0 * std::numbers::pi)) < 1e-6);
    }
}

TEST_CASE("3d orthant cap", "[cone]") {
    const Cone cap =
        min_enclosing_cap({Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}});
    const double s = 1.0 / std::sqrt(3.0);
    REQUIRE(cap.axis[0] == Approx(s));
    REQUIRE(cap.axis[1] == Approx(s));
    REQUIRE(cap.axis[2] == Approx(s));
    REQUIRE(cap.half_angle == Approx(std::acos(s)));
}
