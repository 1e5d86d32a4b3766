#pragma once

// Cone fields over offset annuli: the minimal cone at x spanning the
// directions toward cloud points (delta = 0) or toward delta-balls around
// them (delta > 0, each ball contributing a cap of half-angle
// arcsin(delta / d(x,q))), plus the complementary cone, a canonical
// subordinate direction, the closed-form local cone conditions, and a
// sampling probe for the semicontinuity of the field.

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mucrit/cone.hpp"
#include "mucrit/distance_field.hpp"
#include "mucrit/error.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/scan.hpp"
#include "mucrit/spatial_index.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

struct SpanningConeResult {
    Cone cone;                // base = x, axis toward the cloud
    bool acute = false;       // half_angle < pi/2 - 1e-9
    long covered_count = 0;   // direction samples verified against the result
    std::string method;       // "support-directions" or "cap-inflated"
};

namespace detail {

inline constexpr int kRimSamples3d = 64;

// Two orthonormal vectors completing `axis` (unit, 3d) to a basis.
inline std::pair<Vec, Vec> orthonormal_complement(const Vec& axis) {
    int k = 0;
    for (int d = 1; d < 3; ++d)
        if (std::abs(axis[d]) < std::abs(axis[k])) k = d;
    Vec u(3, 0.0);
    u[k] = 1.0;
    const double proj = dot(u, axis);
    for (int d = 0; d < 3; ++d) u[d] -= proj * axis[d];
    u = normalized(u);
    Vec v = {axis[1] * u[2] - axis[2] * u[1], axis[2] * u[0] - axis[0] * u[2],
             axis[0] * u[1] - axis[1] * u[0]};
    return {u, normalized(v)};
}

}  // namespace detail

// Minimal cone at x spanning K_delta within reach r. delta = 0 spans the
// exact directions to cloud points in B(x, r); delta > 0 spans the union of
// inflated caps, discretized on each cap rim (2 exact rim points in 2d,
// 64 samples in 3d) and then enlarged so every contributing cap is covered.
inline SpanningConeResult spanning_cone(std::span<const double> x, const PointCloud& K,
                                        double delta, double r) {
    require(delta >= 0.0, "delta must be nonnegative");
    require(r > 0.0, "reach radius must be positive");
    const double d = nearest_distance(x, K);
    require(d <= r + delta, "no offset points within reach");

    SpanningConeResult out;
    const SpatialIndex index{[&] {
        PointCloud c(K.dim());
        for (int i = 0; i < K.size(); ++i) c.add(K.point(i));
        return c;
    }()};

    std::vector<Vec> dirs;
    if (delta == 0.0) {
        out.method = "support-directions";
        for (int qi : index.within(x, r)) {
            Vec v = sub(K.point(qi), x);
            const double n = norm(v);
            require(n > kOnCloudTol, "x lies on the cloud");
            dirs.push_back(scaled(v, 1.0 / n));
        }
        require(!dirs.empty(), "no cloud points within reach");
        out.cone = min_enclosing_cap(dirs);
    } else {
        out.method = "cap-inflated";
        require(K.dim() == 2 || K.dim() == 3,
                "cap-inflated cones support dimension 2 or 3");
        std::vector<Vec> axes;
        std::vector<double> thetas;
        for (int qi : index.within(x, r + delta)) {
            Vec v = sub(K.point(qi), x);
            const double n = norm(v);
            require(n > delta, "x lies inside the delta offset of the cloud");
            const Vec axis = scaled(v, 1.0 / n);
            const double theta = std::asin(std::min(1.0, delta / n));
            axes.push_back(axis);
            thetas.push_back(theta);
            if (K.dim() == 2) {
                const double c = std::cos(theta), s = std::sin(theta);
                dirs.push_back({c * axis[0] - s * axis[1], s * axis[0] + c * axis[1]});
                dirs.push_back({c * axis[0] + s * axis[1], -s * axis[0] + c * axis[1]});
            } else {
                const auto [u, w] = detail::orthonormal_complement(axis);
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < detail::kRimSamples3d; ++k) {
                    const double phi =
                        2.0 * std::numbers::pi * k / detail::kRimSamples3d;
                    Vec dir(3);
                    for (int dd = 0; dd < 3; ++dd)
                        dir[dd] = c * axis[dd] +
                                  s * (std::cos(phi) * u[dd] + std::sin(phi) * w[dd]);
                    dirs.push_back(normalized(dir));
                }
            }
        }
        out.cone = min_enclosing_cap(dirs);
        if (!out.cone.degenerate) {
            // rim sampling can undershoot in 3d: enlarge until every cap is
            // genuinely covered
            double needed = out.cone.half_angle;
            for (std::size_t i = 0; i < axes.size(); ++i)
                needed = std::max(needed,
                                  angle_between(out.cone.axis, axes[i]) + thetas[i]);
            if (needed > std::numbers::pi / 2) {
                out.cone.degenerate = true;
                out.cone.half_angle = std::numbers::pi / 2;
            } else {
                out.cone.half_angle = needed;
            }
        }
    }
    out.covered_count = static_cast<long>(dirs.size());
    out.cone.base = Vec(x.begin(), x.end());
    out.acute = is_acute(out.cone);
    return out;
}

// C(w, pi/2 - beta), defined for acute cones only.
inline Cone complementary(const Cone& c) {
    require(is_acute(c), "complementary cone requires an acute cone");
    Cone out = c;
    out.half_angle = std::numbers::pi / 2 - c.half_angle;
    return out;
}

// Canonical vector strictly inside a nondegenerate cone: its axis.
inline Vec subordinate_vector(const Cone& c) {
    require(!c.degenerate, "subordinate vector of a degenerate cone");
    return c.axis;
}

// delta <= d_K(x) - r * (4 - mu^2) / (4 + mu^2)
inline bool local_cone_condition(double mu, double r, double delta, double d_K_x) {
    require(mu >= 0.0 && mu <= 1.0, "mu must lie in [0, 1]");
    require(r > 0.0 && delta >= 0.0 && d_K_x > 0.0, "invalid geometry parameters");
    return delta <= d_K_x - r * (4.0 - mu * mu) / (4.0 + mu * mu);
}

// 9 * (r + delta - d_K(x)) <= 4 * tanh((r - delta + d_K(x)) / 2) * mu^2
inline bool local_cone_condition_hyperbolic(double mu, double r, double delta,
                                            double d_K_x) {
    require(mu >= 0.0 && mu <= 1.0, "mu must lie in [0, 1]");
    require(r > 0.0 && delta >= 0.0 && d_K_x > 0.0, "invalid geometry parameters");
    return 9.0 * (r + delta - d_K_x) <=
           4.0 * std::tanh(0.5 * (r - delta + d_K_x)) * mu * mu;
}

struct SemicontinuityProbeParams {
    std::vector<double> etas = {0.1, 0.05, 0.02, 0.01};   // pair separations, decreasing
    std::vector<double> epsilons = {0.01, 0.05, 0.1};     // cone enlargements
    int pairs = 200;
    unsigned seed = 12345;
};

struct SemicontinuityProbeEntry {
    double eta = 0.0;
    double epsilon = 0.0;
    double max_violation = 0.0;  // positive means containment failed
    int pairs_used = 0;
};

struct SemicontinuityProbeReport {
    std::vector<SemicontinuityProbeEntry> entries;  // ordered by (eta, epsilon)
};

// Samples nearby pairs (x, y) in the annulus and measures how badly the
// spanning cone at y escapes the epsilon-enlarged spanning cone at x:
// violation = angle(w_x, w_y) + beta_y - beta_x - epsilon.
inline SemicontinuityProbeReport probe_semicontinuity(
    const PointCloud& K, double delta, double r, AnnulusSpec annulus,
    const SemicontinuityProbeParams& params = {}) {
    validate(annulus);
    require(!params.etas.empty() && !params.epsilons.empty(), "empty probe grid");
    require(params.pairs > 0, "pair count must be positive");

    auto [lo, hi] = K.bounding_box();
    for (int d = 0; d < K.dim(); ++d) {
        lo[d] -= annulus.b;
        hi[d] += annulus.b;
    }
    std::mt19937 rng(params.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto sample_box = [&] {
        Vec p(K.dim());
        for (int d = 0; d < K.dim(); ++d) p[d] = lo[d] + unit(rng) * (hi[d] - lo[d]);
        return p;
    };
    const auto feasible = [&](const Vec& p) {
        const double dk = nearest_distance(p, K);
        return dk >= annulus.a && dk <= annulus.b && dk > delta + kOnCloudTol &&
               dk <= r + delta;
    };

    SemicontinuityProbeReport report;
    for (double eta : params.etas) {
        std::vector<double> worst(params.epsilons.size(),
                                  -std::numeric_limits<double>::infinity());
        int used = 0;
        long attempts = 0;
        const long max_attempts = 400L * params.pairs;
        while (used < params.pairs && ++attempts <= max_attempts) {
            const Vec x = sample_box();
            if (!feasible(x)) continue;
            Vec y(K.dim());
            Vec dir(K.dim());
            double n2 = 0.0;
            for (int d = 0; d < K.dim(); ++d) {
                dir[d] = 2.0 * unit(rng) - 1.0;
                n2 += dir[d] * dir[d];
            }
            if (n2 == 0.0) continue;
            const double step = eta * unit(rng) / std::sqrt(n2);
            for (int d = 0; d < K.dim(); ++d) y[d] = x[d] + step * dir[d];
            if (!feasible(y)) continue;
            const SpanningConeResult cx = spanning_cone(x, K, delta, r);
            const SpanningConeResult cy = spanning_cone(y, K, delta, r);
            if (cx.cone.degenerate || cy.cone.degenerate) continue;
            const double gap = angle_between(cx.cone.axis, cy.cone.axis) +
                               cy.cone.half_angle - cx.cone.half_angle;
            for (std::size_t e = 0; e < params.epsilons.size(); ++e)
                worst[e] = std::max(worst[e], gap - params.epsilons[e]);
            ++used;
        }
        require(used > 0, "empty annulus sample");
        for (std::size_t e = 0; e < params.epsilons.size(); ++e)
            report.entries.push_back({eta, params.epsilons[e], worst[e], used});
    }
    return report;
}

}  // namespace mucrit
