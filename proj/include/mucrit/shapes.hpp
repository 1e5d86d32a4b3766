#pragma once

// Synthetic shape samplers with analytic Hausdorff control: every generator
// returns the cloud together with a bound on the Hausdorff distance to the
// ideal shape (half the largest sample gap, measured as a chord, plus the
// noise amplitude).

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "mucrit/error.hpp"
#include "mucrit/point_cloud.hpp"

namespace mucrit {

enum class ShapeKind { Circle, TwoCircles, CuspWedge, Sphere, Segment };

inline std::string to_string(ShapeKind k) {
    switch (k) {
        case ShapeKind::Circle: return "circle";
        case ShapeKind::TwoCircles: return "two-circles";
        case ShapeKind::CuspWedge: return "cusp-wedge";
        case ShapeKind::Sphere: return "sphere";
        case ShapeKind::Segment: return "segment";
    }
    return "unknown";
}

inline ShapeKind shape_kind_from_string(const std::string& name) {
    if (name == "circle") return ShapeKind::Circle;
    if (name == "two-circles") return ShapeKind::TwoCircles;
    if (name == "cusp-wedge") return ShapeKind::CuspWedge;
    if (name == "sphere") return ShapeKind::Sphere;
    if (name == "segment") return ShapeKind::Segment;
    throw Error("unknown shape kind: " + name);
}

struct ShapeSpec {
    ShapeKind kind = ShapeKind::Circle;
    std::map<std::string, double> params;  // per-kind names, see generate()
    double noise = 0.0;
    int count = 100;
    unsigned seed = 1;
};

struct GeneratedCloud {
    PointCloud cloud{2};
    double dh_bound = 0.0;  // analytic Hausdorff bound to the ideal shape
};

namespace detail {

class ParamReader {
   public:
    explicit ParamReader(const std::map<std::string, double>& params)
        : params_(params) {}

    double get(const std::string& name, double fallback) {
        seen_.insert(name);
        const auto it = params_.find(name);
        return it == params_.end() ? fallback : it->second;
    }

    void finish() const {
        for (const auto& [name, value] : params_)
            if (seen_.count(name) == 0)
                throw Error("unknown shape parameter: " + name);
    }

   private:
    const std::map<std::string, double>& params_;
    std::set<std::string> seen_;
};

}  // namespace detail

// Deterministic sampler. Parameter names per kind:
//   circle:      radius (1), cx (0), cy (0)        radial noise
//   two-circles: radius_a (0.3), radius_b (0.5),   radial noise
//                separation (2)
//   cusp-wedge:  angle (0.5), length (1)           perpendicular noise
//   sphere:      radius (1)                        radial noise; count approximate
//   segment:     length (1)                        perpendicular noise
inline GeneratedCloud generate(const ShapeSpec& spec) {
    require(spec.count >= 1, "count must be at least 1");
    require(spec.noise >= 0.0, "noise must be nonnegative");
    std::mt19937 rng(spec.seed);
    std::uniform_real_distribution<double> jitter(-spec.noise, spec.noise);
    const auto eta = [&] { return spec.noise > 0.0 ? jitter(rng) : 0.0; };
    detail::ParamReader params(spec.params);

    GeneratedCloud out;
    const double pi = std::numbers::pi;
    switch (spec.kind) {
        case ShapeKind::Circle: {
            const double R = params.get("radius", 1.0);
            const double cx = params.get("cx", 0.0);
            const double cy = params.get("cy", 0.0);
            require(R > 0.0, "radius must be positive");
            const int n = spec.count;
            PointCloud cloud(2);
            for (int k = 0; k < n; ++k) {
                const double t = 2.0 * pi * k / n;
                const double rr = R + eta();
                cloud.add(Vec{cx + rr * std::cos(t), cy + rr * std::sin(t)});
            }
            out.cloud = std::move(cloud);
            out.dh_bound = 2.0 * R * std::sin(pi / (2.0 * n)) + spec.noise;
            break;
        }
        case ShapeKind::TwoCircles: {
            const double ra = params.get("radius_a", 0.3);
            const double rb = params.get("radius_b", 0.5);
            const double sep = params.get("separation", 2.0);
            require(ra > 0.0 && rb > 0.0, "radii must be positive");
            require(sep > ra + rb, "circles must be disjoint");
            const int n = spec.count;
            int na = static_cast<int>(std::lround(n * ra / (ra + rb)));
            na = std::max(1, std::min(n - 1, na));
            const int nb = n - na;
            PointCloud cloud(2);
            for (int k = 0; k < na; ++k) {
                const double t = 2.0 * pi * k / na;
                const double rr = ra + eta();
                cloud.add(Vec{rr * std::cos(t), rr * std::sin(t)});
            }
            for (int k = 0; k < nb; ++k) {
                const double t = 2.0 * pi * k / nb;
                const double rr = rb + eta();
                cloud.add(Vec{sep + rr * std::cos(t), rr * std::sin(t)});
            }
            out.cloud = std::move(cloud);
            out.dh_bound = std::max(2.0 * ra * std::sin(pi / (2.0 * na)),
                                    2.0 * rb * std::sin(pi / (2.0 * nb))) +
                           spec.noise;
            break;
        }
        case ShapeKind::CuspWedge: {
            const double alpha = params.get("angle", 0.5);
            const double L = params.get("length", 1.0);
            require(alpha > 0.0 && alpha < pi, "opening angle must lie in (0, pi)");
            require(L > 0.0, "arm length must be positive");
            require(spec.count >= 3, "cusp wedge needs at least 3 points");
            const int n = spec.count;
            const int m1 = (n + 1) / 2;  // arm 1 including the apex
            const int m2 = n - m1;       // arm 2 excluding the apex
            PointCloud cloud(2);
            const auto arm_point = [&](double sign, double s) {
                const double c = std::cos(sign * alpha / 2.0);
                const double sn = std::sin(sign * alpha / 2.0);
                const double e = eta();  // perpendicular to the arm
                return Vec{s * c - e * sn, s * sn + e * c};
            };
            for (int k = 0; k < m1; ++k)
                cloud.add(arm_point(+1.0, L * k / (m1 - 1)));
            for (int k = 1; k <= m2; ++k)
                cloud.add(arm_point(-1.0, L * k / m2));
            out.cloud = std::move(cloud);
            // the apex sample also lies on arm 2, so its largest gap is L/m2
            out.dh_bound = std::max(L / (2.0 * (m1 - 1)), L / (2.0 * m2)) +
                           spec.noise;
            break;
        }
        case ShapeKind::Sphere: {
            const double R = params.get("radius", 1.0);
            require(R > 0.0, "radius must be positive");
            const int n = spec.count;
            const int m = std::max(
                2, static_cast<int>(std::lround(std::sqrt(n * pi) / 2.0)));
            PointCloud cloud(3);
            for (int j = 0; j < m; ++j) {
                const double theta = (j + 0.5) * pi / m;
                const int kj = std::max(
                    1, static_cast<int>(std::ceil(2.0 * m * std::sin(theta))));
                for (int k = 0; k < kj; ++k) {
                    const double phi = 2.0 * pi * k / kj;
                    const double rr = R + eta();
                    cloud.add(Vec{rr * std::sin(theta) * std::cos(phi),
                                  rr * std::sin(theta) * std::sin(phi),
                                  rr * std::cos(theta)});
                }
            }
            out.cloud = std::move(cloud);
            // covering estimate: each patch spans about pi/m radians per axis
            out.dh_bound =
                2.0 * R * std::sin(pi * std::numbers::sqrt2 / (4.0 * m)) +
                spec.noise;
            break;
        }
        case ShapeKind::Segment: {
            const double L = params.get("length", 1.0);
            require(L > 0.0, "length must be positive");
            require(spec.count >= 2, "segment needs at least 2 points");
            const int n = spec.count;
            PointCloud cloud(2);
            for (int k = 0; k < n; ++k) {
                const double x = -L / 2.0 + L * k / (n - 1);
                cloud.add(Vec{x, eta()});
            }
            out.cloud = std::move(cloud);
            out.dh_bound = L / (2.0 * (n - 1)) + spec.noise;
            break;
        }
    }
    params.finish();
    return out;
}

}  // namespace mucrit
