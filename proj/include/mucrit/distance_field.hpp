#pragma once

// Distance function to a point cloud and its generalized gradient. The
// gradient at x is built from the support set (points of K realizing the
// nearest distance up to a tolerance): the smallest spherical cap C(w, beta)
// containing the unit directions from x to the support gives
// grad = -cos(beta) * w, so |grad| = cos(beta) and x is mu-critical exactly
// when |grad| <= mu. Directions spanning a half-space or more make the
// gradient degenerate: norm exactly 0.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "mucrit/cone.hpp"
#include "mucrit/error.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/spatial_index.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

// Distance below which a query point counts as lying on the cloud;
// the gradient is undefined there.
inline constexpr double kOnCloudTol = 1e-12;

// The support set keeps every q with d(x,q) <= d_K(x) + max(eps_abs, eps_rel * d_K(x)).
// Exact ties are measure-zero in floating point, so mu-criticality of a point
// cloud genuinely depends on this window; scans over a grid of spacing h
// default eps_abs to 2h (see ScanParams).
struct SupportParams {
    double eps_abs = 1e-9;
    double eps_rel = 1e-6;

    double effective(double d) const { return std::max(eps_abs, eps_rel * d); }
};

struct GradientInfo {
    Vec x;
    double dist = 0.0;
    std::vector<int> support;   // ascending indices into the cloud
    Vec axis;                   // unit, points toward the cloud
    double half_angle = 0.0;    // [0, pi/2]
    double norm = 0.0;          // [0, 1]; cos(half_angle) unless degenerate
    Vec grad;                   // -norm * axis; points away from the cloud
    bool degenerate = false;    // support directions span a half-space or more
};

class DistanceField {
public:
    explicit DistanceField(PointCloud K, SupportParams sp = {})
        : index_(std::move(K)), sp_(sp) {
        require(sp_.eps_abs >= 0.0 && sp_.eps_rel >= 0.0, "negative support tolerance");
    }

    const PointCloud& cloud() const { return index_.cloud(); }
    const SupportParams& support_params() const { return sp_; }

    double distance(std::span<const double> x) const { return index_.nearest(x).dist; }

    std::vector<int> support(std::span<const double> x) const {
        const double d = distance(x);
        require(d > kOnCloudTol, "support set undefined on the cloud");
        return index_.within(x, d + sp_.effective(d));
    }

    GradientInfo gradient(std::span<const double> x) const {
        GradientInfo g;
        g.x.assign(x.begin(), x.end());
        g.dist = distance(x);
        require(g.dist > kOnCloudTol, "gradient undefined on the cloud");
        g.support = index_.within(x, g.dist + sp_.effective(g.dist));

        std::vector<Vec> dirs;
        dirs.reserve(g.support.size());
        for (int qi : g.support) {
            Vec d = sub(cloud().point(qi), x);
            dirs.push_back(scaled(d, 1.0 / norm(d)));
        }
        const Cone cap = min_enclosing_cap(dirs);
        g.axis = cap.axis;
        g.half_angle = cap.half_angle;
        g.degenerate = cap.degenerate;
        g.norm = g.degenerate ? 0.0 : std::max(0.0, std::cos(cap.half_angle));
        g.grad = scaled(g.axis, -g.norm);
        return g;
    }

    bool is_mu_critical(std::span<const double> x, double mu) const {
        require(mu >= 0.0 && mu <= 1.0, "mu must lie in [0, 1]");
        return gradient(x).norm <= mu;
    }

private:
    SpatialIndex index_;
    SupportParams sp_;
};

inline std::vector<int> support_set(std::span<const double> x, const PointCloud& K,
                                    SupportParams sp = {}) {
    return DistanceField(K, sp).support(x);
}

inline GradientInfo gradient(std::span<const double> x, const PointCloud& K,
                             SupportParams sp = {}) {
    return DistanceField(K, sp).gradient(x);
}

inline bool is_mu_critical(std::span<const double> x, const PointCloud& K, double mu,
                           SupportParams sp = {}) {
    return DistanceField(K, sp).is_mu_critical(x, mu);
}

}  // namespace mucrit
