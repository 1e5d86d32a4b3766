#pragma once

// Stability of mu-critical points under Hausdorff perturbation: comparison
// bounds on how fast d_K can grow away from a mu-critical point, the
// condition guaranteeing a nearby C-critical point of the perturbed field,
// and an empirical grid verifier for that guarantee.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "mucrit/distance_field.hpp"
#include "mucrit/error.hpp"
#include "mucrit/parallel.hpp"
#include "mucrit/scan.hpp"
#include "mucrit/spatial_index.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

enum class CurvatureClass { PlusOne, Zero, MinusOne };

inline const char* to_string(CurvatureClass k) {
    switch (k) {
        case CurvatureClass::PlusOne: return "+1";
        case CurvatureClass::Zero: return "0";
        default: return "-1";
    }
}

struct ComparisonBound {
    double value = 0.0;
    // The +1 model yields a lower bound on cos(d_K(y)) rather than an upper
    // bound on d_K(y); its arccos is returned with this marker set.
    bool lower_form = false;
};

// Bound on d_K(y) given d_K(x), d(x,y), and |grad| <= mu at x, in the
// constant-curvature comparison model.
inline ComparisonBound toponogov_bound(CurvatureClass kappa, double d_K_x, double d_x_y,
                                       double mu) {
    require(d_K_x >= 0.0 && d_x_y >= 0.0, "distances must be nonnegative");
    require(mu >= 0.0 && mu <= 1.0, "mu must lie in [0, 1]");
    switch (kappa) {
        case CurvatureClass::Zero:
            return {std::sqrt(d_K_x * d_K_x + d_x_y * d_x_y + 2.0 * d_x_y * d_K_x * mu),
                    false};
        case CurvatureClass::MinusOne:
            return {std::acosh(std::cosh(d_x_y) * std::cosh(d_K_x) +
                               std::sinh(d_x_y) * std::sinh(d_K_x) * mu),
                    false};
        case CurvatureClass::PlusOne: {
            const double arg = std::cos(d_x_y) * std::cos(d_K_x) -
                               std::sin(d_x_y) * std::sin(d_K_x) * mu;
            require(arg >= -1.0 && arg <= 1.0, "spherical domain violated");
            return {std::acos(arg), true};
        }
    }
    throw Error("unknown curvature class");
}

struct StabilityCheck {
    bool ok = false;
    double witness_radius = 0.0;  // 4*delta / (C - mu)
};

// A mu-critical point x of d_K admits a C-critical point of d_L within
// witness_radius whenever C >= mu + 2*sqrt(delta / d_K(x)), where
// delta bounds the Hausdorff distance between K and L.
inline StabilityCheck stability_condition(double mu, double C, double delta,
                                          double d_K_x) {
    require(mu >= 0.0 && mu <= 1.0, "mu must lie in [0, 1]");
    require(C > mu, "C must exceed mu");
    require(delta >= 0.0, "delta must be nonnegative");
    require(d_K_x > 0.0, "d_K(x) must be positive");
    return {C >= mu + 2.0 * std::sqrt(delta / d_K_x), 4.0 * delta / (C - mu)};
}

// Curvature -1 variant: 9*delta <= 2*tanh(d_K(x)) * C^2.
inline bool stability_condition_hyperbolic(double C, double delta, double d_K_x) {
    require(C >= 0.0, "C must be nonnegative");
    require(delta >= 0.0, "delta must be nonnegative");
    require(d_K_x > 0.0, "d_K(x) must be positive");
    return 9.0 * delta <= 2.0 * std::tanh(d_K_x) * C * C;
}

// Annulus on which criticality transfers from the unperturbed to the
// perturbed field: [a + delta, b - 4*delta/(C - mu) - delta].
inline AnnulusSpec transfer_annulus(double a, double b, double delta, double C,
                                    double mu) {
    require(a >= 0.0 && a < b, "annulus requires 0 <= a < b");
    require(delta >= 0.0, "delta must be nonnegative");
    require(C > mu, "C must exceed mu");
    const AnnulusSpec out{a + delta, b - 4.0 * delta / (C - mu) - delta};
    require(out.a < out.b, "transfer annulus collapses");
    return out;
}

struct StabilityWitnessParams {
    double h = 0.01;                      // search grid spacing
    std::optional<double> delta;          // asserted d_H bound; default: measured
    std::optional<SupportParams> support; // default: eps_abs = max(1e-9, 2h)
    int threads = 0;

    SupportParams effective_support() const {
        if (support) return *support;
        return SupportParams{std::max(1e-9, 2.0 * h), 1e-6};
    }
};

struct StabilityWitnessReport {
    double hausdorff_measured = 0.0;
    double delta_used = 0.0;
    double x_dist = 0.0;        // d_K(x)
    double x_norm = 0.0;        // |grad_K(x)|
    double tolerance = 0.0;     // slack applied to the empirical checks
    double witness_radius = 0.0;
    bool condition_strict = false;  // C >= mu + 2*sqrt(delta/d_K(x)) without slack
    bool found = false;
    Vec witness;
    double witness_norm = 0.0;
    double witness_dist = 0.0;  // d_L at the witness
    long examined = 0;
};

// Grid search for a C-critical point of d_L near a mu-critical point x of
// d_K. Preconditions (hausdorff <= delta, x empirically mu-critical, the
// stability condition up to grid slack) are errors when violated; the
// witness requirement is |grad_L(y)| <= C and d_L(y) >= d_L(x) - tolerance.
inline StabilityWitnessReport verify_stability_empirical(
    const PointCloud& K, const PointCloud& L, std::span<const double> x, double mu,
    double C, const StabilityWitnessParams& params) {
    require(K.dim() == L.dim(), "dimension mismatch");
    require(mu >= 0.0 && mu <= 1.0, "mu must lie in [0, 1]");
    require(C > mu, "C must exceed mu");
    require(params.h > 0.0, "grid spacing must be positive");

    StabilityWitnessReport report;
    report.hausdorff_measured = hausdorff(K, L);
    report.delta_used = params.delta.value_or(report.hausdorff_measured);
    if (report.hausdorff_measured > report.delta_used + 1e-12)
        throw Error("hausdorff distance exceeds delta");

    const SupportParams sp = params.effective_support();
    const DistanceField field_K(K, sp), field_L(L, sp);
    const GradientInfo gx = field_K.gradient(x);
    report.x_dist = gx.dist;
    report.x_norm = gx.norm;
    report.tolerance = 2.0 * params.h / std::max(params.h, gx.dist);
    if (gx.norm > mu + report.tolerance)
        throw Error("x is not empirically mu-critical");

    const StabilityCheck cond = stability_condition(mu, C, report.delta_used, gx.dist);
    report.condition_strict = cond.ok;
    report.witness_radius = cond.witness_radius;
    if (C + report.tolerance < mu + 2.0 * std::sqrt(report.delta_used / gx.dist))
        throw Error("stability condition violated");

    Vec lo(x.begin(), x.end()), hi(x.begin(), x.end());
    for (double& v : lo) v -= report.witness_radius;
    for (double& v : hi) v += report.witness_radius;
    const detail::GridSpec grid = detail::make_grid(lo, hi, params.h);
    const double d_L_x = field_L.distance(x);
    const double floor_dist = d_L_x - report.tolerance;

    struct Partial {
        long flat = -1;
        Vec witness;
        double norm = 0.0, dist = 0.0;
        long examined = 0;
    };
    const long total = grid.total();
    const int threads = detail::resolve_threads(params.threads);
    std::vector<Partial> partials(std::max<long>(1, std::min<long>(threads, total)));
    detail::parallel_chunks(total, threads, [&](int chunk, long begin, long end) {
        Partial& part = partials[chunk];
        for (long i = begin; i < end; ++i) {
            const Vec y = grid.point(i);
            if (dist(y, x) > report.witness_radius) continue;
            const double d = field_L.distance(y);
            if (d <= kOnCloudTol) continue;
            ++part.examined;
            if (part.flat >= 0) continue;  // lowest-index witness in this chunk
            const GradientInfo gy = field_L.gradient(y);
            if (gy.norm <= C && d >= floor_dist) {
                part.flat = i;
                part.witness = y;
                part.norm = gy.norm;
                part.dist = d;
            }
        }
    });
    long best = -1;
    for (const Partial& part : partials) {
        report.examined += part.examined;
        if (part.flat >= 0 && (best < 0 || part.flat < best)) {
            best = part.flat;
            report.witness = part.witness;
            report.witness_norm = part.norm;
            report.witness_dist = part.dist;
        }
    }
    report.found = best >= 0;
    return report;
}

}  // namespace mucrit
