#pragma once

// Empirical critical-point scans: evaluate the gradient norm over an
// axis-aligned grid restricted to a distance annulus, track the minimum and a
// per-level profile, and derive weak-feature-size / mu-reach estimates.
// Everything here is grid evidence, not a proof.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "mucrit/distance_field.hpp"
#include "mucrit/error.hpp"
#include "mucrit/parallel.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

// Distance annulus [a, b] around the cloud.
struct AnnulusSpec {
    double a = 0.0;
    double b = 1.0;
};

inline void validate(const AnnulusSpec& s) {
    require(s.a >= 0.0 && s.a < s.b, "annulus requires 0 <= a < b");
    require(std::isfinite(s.b), "annulus bound must be finite");
}

struct ScanParams {
    double h = 0.01;                       // grid spacing and profile bin width
    std::optional<SupportParams> support;  // default: eps_abs = max(1e-9, 2h)
    int threads = 0;                       // 0: MUCRIT_THREADS env, else hardware
    bool keep_evaluations = false;         // retain every (point, dist, norm)

    SupportParams effective_support() const {
        if (support) return *support;
        return SupportParams{std::max(1e-9, 2.0 * h), 1e-6};
    }
};

struct ScanEvaluation {
    Vec x;
    double dist = 0.0;
    double norm = 0.0;
};

struct CriticalScanReport {
    AnnulusSpec annulus;
    double spacing = 0.0;
    long samples = 0;
    double min_norm = 0.0;
    Vec argmin;
    // (distance level, minimum norm at that level), level bins of width
    // `spacing` centered at (k + 1/2) * spacing, ascending
    std::vector<std::array<double, 2>> profile;
    std::optional<double> mu_queried;
    std::optional<bool> mu_free;           // min_norm > mu
    std::vector<ScanEvaluation> evaluations;
};

namespace detail {

// Axis-aligned grid of spacing h anchored at floor(lo/h)*h per axis, so a
// given cloud/annulus pair always produces the same grid.
struct GridSpec {
    Vec anchor;
    std::vector<long> counts;
    double h = 0.0;

    long total() const {
        long t = 1;
        for (long c : counts) t *= c;
        return t;
    }

    // flat index is lexicographic with the last axis fastest
    Vec point(long flat) const {
        Vec p(anchor.size());
        for (int d = static_cast<int>(anchor.size()) - 1; d >= 0; --d) {
            p[d] = anchor[d] + static_cast<double>(flat % counts[d]) * h;
            flat /= counts[d];
        }
        return p;
    }
};

inline GridSpec make_grid(const Vec& lo, const Vec& hi, double h) {
    require(h > 0.0, "grid spacing must be positive");
    GridSpec g;
    g.h = h;
    g.anchor.resize(lo.size());
    g.counts.resize(lo.size());
    for (std::size_t d = 0; d < lo.size(); ++d) {
        g.anchor[d] = std::floor(lo[d] / h) * h;
        g.counts[d] = std::max<long>(1, static_cast<long>(std::floor((hi[d] - g.anchor[d]) / h)) + 1);
    }
    return g;
}

struct ScanPartial {
    double min_norm = std::numeric_limits<double>::infinity();
    long arg_flat = -1;
    Vec argmin;
    long kept = 0;
    std::map<long, double> bins;
    std::vector<ScanEvaluation> evaluations;
};

// Core scan over an arbitrary deterministic candidate enumeration.
template <typename PointAt>
CriticalScanReport scan_candidates(const PointCloud& K, AnnulusSpec annulus,
                                   const ScanParams& params, std::optional<double> mu,
                                   long total, PointAt&& point_at) {
    validate(annulus);
    if (mu) require(*mu >= 0.0 && *mu <= 1.0, "mu must lie in [0, 1]");
    const DistanceField field(K, params.effective_support());

    const int threads = resolve_threads(params.threads);
    std::vector<ScanPartial> partials(std::max<long>(1, std::min<long>(threads, total)));
    parallel_chunks(total, threads, [&](int chunk, long begin, long end) {
        ScanPartial& part = partials[chunk];
        for (long i = begin; i < end; ++i) {
            const Vec x = point_at(i);
            const double d = field.distance(x);
            if (d < annulus.a || d > annulus.b || d <= kOnCloudTol) continue;
            const GradientInfo g = field.gradient(x);
            ++part.kept;
            if (g.norm < part.min_norm) {
                part.min_norm = g.norm;
                part.arg_flat = i;
                part.argmin = x;
            }
            const long bin = static_cast<long>(std::floor(d / params.h));
            auto [it, inserted] = part.bins.try_emplace(bin, g.norm);
            if (!inserted) it->second = std::min(it->second, g.norm);
            if (params.keep_evaluations) part.evaluations.push_back({x, d, g.norm});
        }
    });

    CriticalScanReport report;
    report.annulus = annulus;
    report.spacing = params.h;
    report.mu_queried = mu;
    std::map<long, double> bins;
    long arg_flat = -1;
    report.min_norm = std::numeric_limits<double>::infinity();
    for (const ScanPartial& part : partials) {
        report.samples += part.kept;
        if (part.arg_flat >= 0 &&
            (part.min_norm < report.min_norm ||
             (part.min_norm == report.min_norm && part.arg_flat < arg_flat))) {
            report.min_norm = part.min_norm;
            arg_flat = part.arg_flat;
            report.argmin = part.argmin;
        }
        for (auto [bin, v] : part.bins) {
            auto [it, inserted] = bins.try_emplace(bin, v);
            if (!inserted) it->second = std::min(it->second, v);
        }
        if (params.keep_evaluations)
            report.evaluations.insert(report.evaluations.end(), part.evaluations.begin(),
                                      part.evaluations.end());
    }
    if (report.samples == 0) throw Error("empty annulus sample");
    for (auto [bin, v] : bins)
        report.profile.push_back({(static_cast<double>(bin) + 0.5) * params.h, v});
    if (mu) report.mu_free = report.min_norm > *mu;
    return report;
}

}  // namespace detail

// Grid scan (dimension 2 or 3): bounding box of the cloud inflated by b,
// spacing params.h. Higher dimensions: supply candidate points instead.
inline CriticalScanReport critical_scan(const PointCloud& K, AnnulusSpec annulus,
                                        const ScanParams& params,
                                        std::optional<double> mu = {}) {
    require(K.dim() == 2 || K.dim() == 3,
            "grid scan supports dimension 2 or 3; supply candidate points instead");
    validate(annulus);
    auto [lo, hi] = K.bounding_box();
    for (int d = 0; d < K.dim(); ++d) {
        lo[d] -= annulus.b;
        hi[d] += annulus.b;
    }
    const detail::GridSpec grid = detail::make_grid(lo, hi, params.h);
    return detail::scan_candidates(K, annulus, params, mu, grid.total(),
                                   [&grid](long i) { return grid.point(i); });
}

// Caller-supplied candidate points (any dimension matching the cloud).
inline CriticalScanReport critical_scan(const PointCloud& K, AnnulusSpec annulus,
                                        const std::vector<Vec>& candidates,
                                        const ScanParams& params,
                                        std::optional<double> mu = {}) {
    for (const Vec& c : candidates)
        require(static_cast<int>(c.size()) == K.dim(), "dimension mismatch");
    return detail::scan_candidates(K, annulus, params, mu,
                                   static_cast<long>(candidates.size()),
                                   [&candidates](long i) { return candidates[i]; });
}

struct LevelScanParams {
    double h = 0.01;
    double d_max = 2.0;
    double tau_crit = 0.05;                // norm threshold declaring a level critical
    std::optional<SupportParams> support;
    int threads = 0;
};

// Smallest scanned distance level whose per-level minimum norm falls below
// tau_crit; +infinity if no level qualifies.
inline double estimate_wfs(const PointCloud& K, const LevelScanParams& params) {
    require(params.d_max > params.h, "d_max must exceed the grid spacing");
    ScanParams sp{params.h, params.support, params.threads, false};
    const CriticalScanReport r =
        critical_scan(K, AnnulusSpec{params.h, params.d_max}, sp);
    for (const auto& [level, v] : r.profile)
        if (v < params.tau_crit) return level;
    return std::numeric_limits<double>::infinity();
}

// Smallest scanned distance level whose per-level minimum norm is <= mu;
// +infinity if no level qualifies. Nonincreasing in mu on a fixed grid.
inline double estimate_mu_reach(const PointCloud& K, double mu,
                                const LevelScanParams& params) {
    require(mu >= 0.0 && mu <= 1.0, "mu must lie in [0, 1]");
    require(params.d_max > params.h, "d_max must exceed the grid spacing");
    ScanParams sp{params.h, params.support, params.threads, false};
    const CriticalScanReport r =
        critical_scan(K, AnnulusSpec{params.h, params.d_max}, sp);
    for (const auto& [level, v] : r.profile)
        if (v <= mu) return level;
    return std::numeric_limits<double>::infinity();
}

}  // namespace mucrit
