#pragma once

// Cones of directions: a closed angular ball C(axis, half_angle) on the unit
// sphere, optionally anchored at a base point.

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "mucrit/error.hpp"
#include "mucrit/miniball.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

struct Cone {
    std::optional<Vec> base;    // absent: a cone of directions only
    Vec axis;                   // unit within 1e-12
    double half_angle = 0.0;    // [0, pi]
    bool degenerate = false;    // directions span a half-space or more; axis is a placeholder
};

inline bool is_acute(const Cone& c) {
    return !c.degenerate && c.half_angle < std::numbers::pi / 2 - 1e-9;
}

// Smallest spherical cap containing the given unit directions, computed from
// the minimal enclosing ball of the direction tips: for unit inputs the cap
// axis is the ball center direction and cos(half_angle) = |center|.
// A center at the origin means no cap smaller than a half-sphere exists;
// the result is then flagged degenerate with half_angle = pi/2.
inline Cone min_enclosing_cap(const std::vector<Vec>& dirs) {
    require(!dirs.empty(), "minimal cap of an empty direction set");
    for (const Vec& u : dirs)
        require(std::abs(norm(u) - 1.0) <= 1e-9, "direction is not a unit vector");

    const Ball b = min_enclosing_ball(dirs);
    const double c = norm(b.center);
    Cone cap;
    if (c <= 1e-12) {
        cap.axis = Vec(dirs.front().size(), 0.0);
        cap.axis[0] = 1.0;
        cap.half_angle = std::numbers::pi / 2;
        cap.degenerate = true;
        return cap;
    }
    cap.axis = scaled(b.center, 1.0 / c);
    double min_dot = 1.0;
    for (const Vec& u : dirs) min_dot = std::min(min_dot, dot(u, cap.axis));
    cap.half_angle = std::acos(clamp_unit(min_dot));
    return cap;
}

}  // namespace mucrit
