#pragma once

// Closed-form reconstruction bounds and the certificate engine. A
// certificate combines the inequality preconditions of a retraction
// theorem with an empirical critical-point scan over the annulus the
// theorem needs to be critical-free, and reports every inequality with
// its slack so near-misses are visible.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mucrit/error.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/scan.hpp"
#include "mucrit/spatial_index.hpp"
#include "mucrit/stability.hpp"

namespace mucrit {

struct TheoremRequirements {
    AnnulusSpec annulus;        // must be critical-free
    double lhs = 0.0;           // left side of the sampling inequality
    double rhs = 0.0;           // right side of the sampling inequality
    bool inequality_ok = false; // lhs < rhs
};

// Euclidean retraction requirements: the annulus [r - delta, r - delta + 2 delta / mu]
// must hold no mu-critical points and (4 + mu^2) delta < mu^2 r. The
// conservative variant widens the annulus to end at r + delta + 2 delta / mu.
inline TheoremRequirements theorem_big_requirements(double mu, double r, double delta,
                                                    bool conservative = false) {
    require(mu > 0.0 && mu <= 1.0, "mu must lie in (0, 1]");
    require(r > 0.0, "offset radius must be positive");
    require(delta >= 0.0 && delta < r, "delta must lie in [0, r)");
    TheoremRequirements out;
    out.annulus.a = r - delta;
    out.annulus.b = (conservative ? r + delta : r - delta) + 2.0 * delta / mu;
    out.lhs = (4.0 + mu * mu) * delta;
    out.rhs = mu * mu * r;
    out.inequality_ok = out.lhs < out.rhs;
    return out;
}

// Hyperbolic (curvature -1) variant: annulus [r - delta, r - delta + 4 delta / mu],
// inequality 9 delta < 2 tanh(r - delta) mu^2.
inline TheoremRequirements theorem_bigkappa_requirements(double mu, double r,
                                                         double delta,
                                                         bool conservative = false) {
    require(mu > 0.0 && mu <= 1.0, "mu must lie in (0, 1]");
    require(r > 0.0, "offset radius must be positive");
    require(delta >= 0.0 && delta < r, "delta must lie in [0, r)");
    TheoremRequirements out;
    out.annulus.a = r - delta;
    out.annulus.b = (conservative ? r + delta : r - delta) + 4.0 * delta / mu;
    out.lhs = 9.0 * delta;
    out.rhs = 2.0 * std::tanh(r - delta) * mu * mu;
    out.inequality_ok = out.lhs < out.rhs;
    return out;
}

// Largest delta for which an offset K^r reconstructs a set whose mu-critical
// values avoid (a, b): min of r - a, (b - r) mu / (4 - mu), and the
// curvature term (mu^2 r / (4 + mu^2) for kappa = 0; for kappa = -1 the root
// of 9 delta = 2 tanh(r - delta) mu^2, found by bisection).
inline double corollary_sampling_bound(double mu, double r, double a, double b,
                                       CurvatureClass kappa = CurvatureClass::Zero) {
    require(mu > 0.0 && mu <= 1.0, "mu must lie in (0, 1]");
    require(a >= 0.0 && a < r && r < b, "need a < r < b");
    require(kappa != CurvatureClass::PlusOne,
            "positive curvature model not supported");
    double kappa_term = 0.0;
    if (kappa == CurvatureClass::Zero) {
        kappa_term = mu * mu * r / (4.0 + mu * mu);
    } else {
        // 9 d - 2 tanh(r - d) mu^2 is increasing in d: negative at 0,
        // positive at r, so the root is unique
        double lo = 0.0, hi = r;
        for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double f = 9.0 * mid - 2.0 * std::tanh(r - mid) * mu * mu;
            (f < 0.0 ? lo : hi) = mid;
        }
        kappa_term = 0.5 * (lo + hi);
    }
    return std::min({r - a, (b - r) * mu / (4.0 - mu), kappa_term});
}

// Whether a measured Hausdorff distance is accepted by the sampling bound:
// the window terms are closed (<=), the curvature term strict (<).
inline bool corollary_accepts(double mu, double r, double a, double b,
                              CurvatureClass kappa, double d_H) {
    require(mu > 0.0 && mu <= 1.0, "mu must lie in (0, 1]");
    require(a >= 0.0 && a < r && r < b, "need a < r < b");
    require(kappa != CurvatureClass::PlusOne,
            "positive curvature model not supported");
    if (d_H > r - a) return false;
    if (d_H > (b - r) * mu / (4.0 - mu)) return false;
    if (kappa == CurvatureClass::Zero)
        return (4.0 + mu * mu) * d_H < mu * mu * r;
    return 9.0 * d_H < 2.0 * std::tanh(r - d_H) * mu * mu;
}

struct AnnularBound {
    double delta_max = 0.0;
    double r = 0.0;  // offset radius the bound certifies
};

// Sampling bound when only an annular critical-free window (a, b) is known:
// delta < min(mu (b - a) / 4, mu^2 b / (4 + 4 mu)), with the certified
// offset radius r = b (4 + mu^2) / (4 + 4 mu).
inline AnnularBound annular_bound(double mu, double a, double b) {
    require(mu > 0.0 && mu <= 1.0, "mu must lie in (0, 1]");
    require(a >= 0.0 && a < b, "need a < b");
    AnnularBound out;
    out.delta_max = std::min(mu * (b - a) / 4.0, mu * mu * b / (4.0 + 4.0 * mu));
    out.r = b * (4.0 + mu * mu) / (4.0 + 4.0 * mu);
    return out;
}

// Normalized sampling-density bounds delta / wfs as functions of mu, for
// comparing this work's annular bound against two published alternatives.
inline double bound_ours(double mu) {
    require(mu > 0.0 && mu <= 1.0, "mu must lie in (0, 1]");
    return mu * mu / (4.0 + 4.0 * mu);
}

inline double bound_classic(double mu) {
    require(mu > 0.0 && mu <= 1.0, "mu must lie in (0, 1]");
    return mu * mu / (5.0 * mu * mu + 12.0);
}

inline double bound_radical(double mu) {
    require(mu > 0.0 && mu <= 1.0, "mu must lie in (0, 1]");
    const double m2 = mu * mu, m3 = m2 * mu, m4 = m2 * m2, m5 = m4 * mu,
                 m6 = m3 * m3;
    const double radicand =
        -8.0 * m2 + 4.0 * m3 + 18.0 * mu + 2.0 * m4 + 9.0 + m6 - 4.0 * m5;
    require(radicand >= 0.0, "radicand must be nonnegative");
    const double num = -3.0 * mu + 3.0 * m2 - 3.0 + std::sqrt(radicand);
    const double den = 7.0 * m2 + 22.0 * mu + m4 - 4.0 * m3 + 1.0;
    return num / den;
}

// First sign change of f - g on (lo, hi): grid walk at pitch 1e-3 for a
// strict sign change, then bisection to 1e-6. Returns nullopt when the
// difference never changes sign.
inline std::optional<double> crossover(const std::function<double(double)>& f,
                                       const std::function<double(double)>& g,
                                       double lo, double hi) {
    require(lo < hi, "need lo < hi");
    const double pitch = 1e-3;
    const auto diff = [&](double x) { return f(x) - g(x); };
    double x0 = lo + pitch;
    double d0 = diff(x0);
    for (double x1 = x0 + pitch; x1 < hi; x1 += pitch) {
        const double d1 = diff(x1);
        if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
            double a = x0, b = x1, da = d0;
            while (b - a > 1e-6) {
                const double m = 0.5 * (a + b);
                const double dm = diff(m);
                if ((da < 0.0) == (dm < 0.0)) {
                    a = m;
                    da = dm;
                } else {
                    b = m;
                }
            }
            return 0.5 * (a + b);
        }
        x0 = x1;
        d0 = d1;
    }
    return std::nullopt;
}

enum class CertificateRole {
    CriticalFreeOnA,  // the scanned cloud plays the critical-free annulus role
    CriticalFreeOnS,  // the scanned cloud approximates the reconstructed set
};

struct CertificateQuery {
    double mu = 0.5;
    double r = 1.0;
    double delta = 0.0;
    CurvatureClass kappa = CurvatureClass::Zero;
    CertificateRole role = CertificateRole::CriticalFreeOnS;
    std::optional<AnnulusSpec> annulus_ab;  // known critical-free window, if any
    bool conservative_annulus = false;
};

struct SlackEntry {
    double value = 0.0;      // measured quantity
    double threshold = 0.0;  // what it is compared against
    bool strict = false;     // strict inequality required
    bool pass = false;
};

struct Certificate {
    bool verdict = false;
    AnnulusSpec required_annulus;
    std::map<std::string, SlackEntry> inequality_slacks;
    std::string theorem_applied;
    std::optional<CriticalScanReport> empirical_scan;
    std::vector<std::string> caveats;
};

// Evaluates a reconstruction certificate: theorem inequality, empirical
// critical-free scan over the required annulus, Hausdorff condition when a
// second cloud is supplied, and window containment when a critical-free
// window is claimed. The verdict is the conjunction of every slack entry.
inline Certificate certify(const PointCloud& scanned, const PointCloud* other,
                           const CertificateQuery& query,
                           const ScanParams& scan_params = {}) {
    require(query.kappa != CurvatureClass::PlusOne,
            "positive curvature model not supported");
    require(query.mu > 0.0 && query.mu <= 1.0, "mu must lie in (0, 1]");
    require(query.r > 0.0, "offset radius must be positive");
    require(query.delta >= 0.0 && query.delta < query.r, "delta must lie in [0, r)");

    Certificate cert;
    const bool euclidean = query.kappa == CurvatureClass::Zero;
    const TheoremRequirements req =
        euclidean ? theorem_big_requirements(query.mu, query.r, query.delta,
                                             query.conservative_annulus)
                  : theorem_bigkappa_requirements(query.mu, query.r, query.delta,
                                                  query.conservative_annulus);
    cert.required_annulus = req.annulus;
    cert.theorem_applied =
        std::string(euclidean ? "offset-retraction" : "offset-retraction-hyperbolic") +
        (query.role == CertificateRole::CriticalFreeOnA ? " (annulus cloud)"
                                                        : " (reconstructed cloud)");
    cert.inequality_slacks["sampling-inequality"] = {req.lhs, req.rhs, true,
                                                     req.inequality_ok};

    if (other != nullptr) {
        const double dh = hausdorff(scanned, *other);
        cert.inequality_slacks["hausdorff-le-delta"] = {dh, query.delta, false,
                                                        dh <= query.delta};
    }

    if (query.annulus_ab) {
        validate(*query.annulus_ab);
        const AnnulusSpec& ab = *query.annulus_ab;
        require(ab.a < query.r && query.r < ab.b,
                "offset radius must lie inside the claimed window");
        cert.inequality_slacks["window-contains-annulus-lo"] = {
            ab.a, req.annulus.a, false, ab.a <= req.annulus.a};
        cert.inequality_slacks["window-contains-annulus-hi"] = {
            req.annulus.b, ab.b, false, req.annulus.b <= ab.b};
        cert.inequality_slacks["delta-le-window-left"] = {
            query.delta, query.r - ab.a, false, query.delta <= query.r - ab.a};
        cert.inequality_slacks["delta-le-window-right"] = {
            query.delta, (ab.b - query.r) * query.mu / (4.0 - query.mu), false,
            query.delta <= (ab.b - query.r) * query.mu / (4.0 - query.mu)};
    }

    cert.empirical_scan =
        critical_scan(scanned, req.annulus, scan_params, query.mu);
    cert.inequality_slacks["annulus-min-norm-gt-mu"] = {
        cert.empirical_scan->min_norm, query.mu, true,
        cert.empirical_scan->min_norm > query.mu};

    cert.caveats.push_back(
        "critical-free condition verified by finite grid scan, not symbolically");
    if (!euclidean)
        cert.caveats.push_back(
            "hyperbolic-model inequalities applied to Euclidean sample coordinates");
    if (query.conservative_annulus)
        cert.caveats.push_back("conservative annulus variant in effect");

    cert.verdict = true;
    for (const auto& [name, slack] : cert.inequality_slacks)
        cert.verdict = cert.verdict && slack.pass;
    return cert;
}

}  // namespace mucrit
