// Walkthrough: locate the saddle of the distance field of two disjoint
// circles. Between the circles the gradient norm collapses to zero at one
// critical level; the profile below shows the collapse and the scan report
// pins down where it happens.

#include <cstdio>
#include <string>

#include <mucrit/mucrit.hpp>

int main() {
    using namespace mucrit;

    ShapeSpec spec;
    spec.kind = ShapeKind::TwoCircles;
    spec.params["radius_a"] = 0.3;
    spec.params["radius_b"] = 0.5;
    spec.params["separation"] = 2.0;
    spec.count = 300;

    const GeneratedCloud g = generate(spec);
    std::printf("two circles (radii 0.3 and 0.5, centers 2 apart): %d points\n\n",
                g.cloud.size());

    // Two critical phenomena live in this window. At level 0.5 the center of
    // the larger circle is a local maximum of the distance field (a circle's
    // radius is always a critical value, attained at its center). At level
    // 0.6 the basins of the two circles meet in a saddle at (0.9, 0): the
    // nearest rims sit at x = 0.3 and x = 1.5, and the point equidistant to
    // both, (0.3 + 1.5)/2 = 0.9, sees them at distance 0.6.
    ScanParams params;
    params.h = 0.005;

    const CriticalScanReport report =
        critical_scan(g.cloud, AnnulusSpec{0.45, 0.75}, params, 0.5);

    std::printf("gradient-norm profile over distance levels:\n");
    for (const auto& [level, norm] : report.profile) {
        const int bar = static_cast<int>(norm * 50.0);
        std::printf("  level %.3f | min norm %.4f %s\n", level, norm,
                    std::string(static_cast<std::size_t>(bar), '#').c_str());
    }

    std::printf("\nthe two dips: level 0.5 is the larger circle's radius "
                "(critical at its center),\nlevel 0.6 is the saddle between "
                "the circles\n");
    std::printf("minimum gradient norm in the annulus: %.5f\n", report.min_norm);
    std::printf("attained near (%.4f, %.4f); the analytic saddle is (0.9, 0) "
                "at level 0.6\n",
                report.argmin[0], report.argmin[1]);
    std::printf("mu-free at mu = 0.5? %s\n",
                report.mu_free.value_or(false) ? "yes" : "no (a critical point lives here)");

    return 0;
}
