#pragma once

// Dense vector helpers over std::span. Points have runtime dimension
// (typically 2 or 3) and are stored as contiguous doubles.

#include <cmath>
#include <span>
#include <vector>

#include "mucrit/error.hpp"

namespace mucrit {

using Vec = std::vector<double>;

inline bool all_finite(std::span<const double> a) {
    for (double v : a)
        if (!std::isfinite(v)) return false;
    return true;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(norm2(a)); }

inline double dist2(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(dist2(a, b));
}

inline Vec sub(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scaled(std::span<const double> a, double s) {
    Vec r(a.begin(), a.end());
    for (double& v : r) v *= s;
    return r;
}

// a + s*b
inline Vec add_scaled(std::span<const double> a, double s, std::span<const double> b) {
    require(a.size() == b.size(), "dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

inline Vec normalized(std::span<const double> a) {
    const double n = norm(a);
    require(n > 0.0, "cannot normalize a zero vector");
    return scaled(a, 1.0 / n);
}

inline double clamp_unit(double t) { return t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t); }

// Angle between two nonzero vectors, in [0, pi].
inline double angle_between(std::span<const double> a, std::span<const double> b) {
    const double na = norm(a), nb = norm(b);
    require(na > 0.0 && nb > 0.0, "angle of a zero vector");
    return std::acos(clamp_unit(dot(a, b) / (na * nb)));
}

}  // namespace mucrit
