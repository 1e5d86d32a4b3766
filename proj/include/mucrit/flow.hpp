#pragma once

// Discrete gradient flow of the distance function: explicit Euler steps
// along the cone axis, with step size capped so the trace never overshoots
// the target level, plus an empirical retraction check that flows a shell
// of boundary points of one cloud's offset down to a smaller offset.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mucrit/distance_field.hpp"
#include "mucrit/error.hpp"
#include "mucrit/parallel.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/scan.hpp"
#include "mucrit/spatial_index.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

enum class FlowTermination { ReachedTarget, MaxSteps, Stalled };

inline std::string to_string(FlowTermination t) {
    switch (t) {
        case FlowTermination::ReachedTarget: return "reached-target";
        case FlowTermination::MaxSteps: return "max-steps";
        case FlowTermination::Stalled: return "stalled";
    }
    return "unknown";
}

struct FlowTrace {
    std::vector<Vec> points;    // includes the start point
    std::vector<double> dists;  // d_K at each point, strictly decreasing
    std::vector<double> norms;  // gradient norm at each point
    FlowTermination terminated = FlowTermination::MaxSteps;
};

struct FlowParams {
    double h_f = 0.01;
    long max_steps = 10000;
    // used when a flow builds its own distance field from a cloud; a caller
    // passing a DistanceField keeps that field's support parameters
    SupportParams support{};
};

// Gradient norm below which the flow is considered stuck at a critical point.
inline constexpr double kTauStall = 1e-3;

inline FlowTrace integrate_flow(std::span<const double> x0, const DistanceField& field,
                                double target_level, const FlowParams& params = {}) {
    require(params.h_f > 0.0, "flow step must be positive");
    require(params.max_steps > 0, "max steps must be positive");
    require(target_level >= 0.0, "target level must be nonnegative");

    FlowTrace trace;
    Vec x(x0.begin(), x0.end());
    double d = field.distance(x);
    require(d > target_level, "start point already inside the target offset");

    const auto record = [&](const Vec& p, double dist) {
        trace.points.push_back(p);
        trace.dists.push_back(dist);
        trace.norms.push_back(dist > kOnCloudTol ? field.gradient(p).norm : 0.0);
    };
    record(x, d);

    for (long step = 0; step < params.max_steps; ++step) {
        if (d <= target_level + 1e-9) {
            trace.terminated = FlowTermination::ReachedTarget;
            return trace;
        }
        const GradientInfo g = field.gradient(x);
        if (g.norm < kTauStall) {
            trace.terminated = FlowTermination::Stalled;
            return trace;
        }
        const double step_len = std::min(params.h_f, d - target_level);
        // the gradient of d_K points along -axis; descending the distance
        // means stepping toward the cloud, along +axis
        const Vec next = add_scaled(x, step_len, g.axis);
        const double d_next = field.distance(next);
        if (d_next >= d) {
            trace.terminated = FlowTermination::Stalled;
            return trace;
        }
        x = next;
        d = d_next;
        record(x, d);
    }
    trace.terminated = (d <= target_level + 1e-9) ? FlowTermination::ReachedTarget
                                                  : FlowTermination::MaxSteps;
    return trace;
}

inline FlowTrace integrate_flow(std::span<const double> x0, const PointCloud& K,
                                double target_level, const FlowParams& params = {}) {
    const DistanceField field(K, params.support);
    return integrate_flow(x0, field, target_level, params);
}

struct RetractParams {
    double h_f = 0.005;
    long max_steps = 100000;
    int n_starts = 64;
    double shell_h = 0.0;  // 0 -> use h_f
    SupportParams support{};
    int threads = 0;
};

struct TraceCheck {
    Vec start;
    FlowTermination terminated = FlowTermination::MaxSteps;
    bool reached = false;
    bool stayed_inside = false;   // max d_L over the trace <= r + 2 h_f
    double max_dist_other = 0.0;  // max d_L over the trace
    bool monotone = false;        // d_K strictly decreasing along the trace
    long steps = 0;
};

struct RetractionReport {
    double hausdorff_measured = 0.0;
    double r = 0.0;
    double delta = 0.0;
    double target = 0.0;  // r - delta
    std::vector<TraceCheck> traces;
    double pass_fraction = 0.0;  // reached && stayed_inside
    long shell_points = 0;       // boundary-shell candidates before subsampling
};

// Flows boundary points of the r-offset of L down to the (r - delta)-offset
// of K and checks each trace reached the target without leaving the r-offset
// of L. Starts are grid points with d_L in [r - shell_h, r].
inline RetractionReport verify_retraction(const PointCloud& K, const PointCloud& L,
                                          double r, double delta,
                                          const RetractParams& params = {}) {
    require(r > 0.0 && delta >= 0.0, "invalid geometry parameters");
    require(delta < r / 2.0, "delta must be below r/2");
    require(params.n_starts > 0, "need at least one start");

    RetractionReport report;
    report.hausdorff_measured = hausdorff(K, L);
    require(report.hausdorff_measured <= delta + 1e-12, "hausdorff exceeds delta");
    report.r = r;
    report.delta = delta;
    report.target = r - delta;

    const DistanceField field_K(K, params.support);
    const DistanceField field_L(L, params.support);
    const double hs = params.shell_h > 0.0 ? params.shell_h : params.h_f;

    // boundary shell of the r-offset of L, on a grid of pitch hs
    auto [lo, hi] = L.bounding_box();
    for (int d = 0; d < L.dim(); ++d) {
        lo[d] -= r + hs;
        hi[d] += r + hs;
    }
    const detail::GridSpec grid = detail::make_grid(lo, hi, hs);
    std::vector<Vec> shell;
    for (long flat = 0; flat < grid.total(); ++flat) {
        Vec p = grid.point(flat);
        const double dl = field_L.distance(p);
        if (dl >= r - hs && dl <= r) shell.push_back(std::move(p));
    }
    report.shell_points = static_cast<long>(shell.size());
    require(!shell.empty(), "empty boundary shell");

    std::vector<Vec> starts;
    const int n = std::min<long>(params.n_starts, static_cast<long>(shell.size()));
    for (int k = 0; k < n; ++k)
        starts.push_back(shell[static_cast<std::size_t>(
            k * (shell.size() - 1) / std::max(1, n - 1))]);

    FlowParams flow_params;
    flow_params.h_f = params.h_f;
    flow_params.max_steps = params.max_steps;
    flow_params.support = params.support;

    report.traces.assign(starts.size(), {});
    const int threads = detail::resolve_threads(params.threads);
    detail::parallel_chunks(static_cast<long>(starts.size()), threads,
                            [&](int, long begin, long end) {
        for (long i = begin; i < end; ++i) {
            TraceCheck check;
            check.start = starts[static_cast<std::size_t>(i)];
            const double d0 = field_K.distance(check.start);
            if (d0 <= report.target + 1e-9) {
                // already inside the target offset: trivially retracted
                check.terminated = FlowTermination::ReachedTarget;
                check.reached = true;
                check.max_dist_other = field_L.distance(check.start);
                check.stayed_inside = check.max_dist_other <= r + 2.0 * params.h_f;
                check.monotone = true;
                check.steps = 0;
                report.traces[static_cast<std::size_t>(i)] = std::move(check);
                continue;
            }
            const FlowTrace trace =
                integrate_flow(check.start, field_K, report.target, flow_params);
            check.terminated = trace.terminated;
            check.reached = trace.terminated == FlowTermination::ReachedTarget;
            check.steps = static_cast<long>(trace.points.size()) - 1;
            check.monotone = true;
            for (std::size_t k = 1; k < trace.dists.size(); ++k)
                if (trace.dists[k] >= trace.dists[k - 1]) check.monotone = false;
            double max_dl = 0.0;
            for (const Vec& p : trace.points)
                max_dl = std::max(max_dl, field_L.distance(p));
            check.max_dist_other = max_dl;
            check.stayed_inside = max_dl <= r + 2.0 * params.h_f;
            report.traces[static_cast<std::size_t>(i)] = std::move(check);
        }
    });

    long passed = 0;
    for (const TraceCheck& c : report.traces)
        if (c.reached && c.stayed_inside) ++passed;
    report.pass_fraction =
        static_cast<double>(passed) / static_cast<double>(report.traces.size());
    return report;
}

}  // namespace mucrit
