#pragma once

// Minimal enclosing ball via Welzl's move-to-front algorithm. The input is
// shuffled once with a fixed seed, so results are deterministic for a given
// input order. Supports up to dim+1 boundary points; affinely dependent
// boundary candidates (duplicates) are dropped from the circumball solve.

#include <algorithm>
#include <cmath>
#include <list>
#include <random>
#include <span>
#include <vector>

#include "mucrit/error.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

struct Ball {
    Vec center;
    double radius = 0.0;
};

namespace detail {

class Welzl {
public:
    Welzl(std::vector<Vec> pts, int dim) : pts_(std::move(pts)), dim_(dim) {}

    Ball run() {
        std::vector<int> idx(pts_.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::mt19937 rng(0x9e3779b9u);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::list<int> order(idx.begin(), idx.end());
        std::vector<int> support;
        return mtf(order, order.end(), support);
    }

private:
    Ball mtf(std::list<int>& order, std::list<int>::iterator stop,
             std::vector<int>& support) {
        Ball b = circumball(support);
        if (static_cast<int>(support.size()) == dim_ + 1) return b;
        for (auto it = order.begin(); it != stop;) {
            auto next = std::next(it);
            if (!contains(b, pts_[*it])) {
                support.push_back(*it);
                b = mtf(order, it, support);
                support.pop_back();
                order.splice(order.begin(), order, it);
            }
            it = next;
        }
        return b;
    }

    static bool contains(const Ball& b, const Vec& p) {
        if (b.radius < 0.0) return false;
        const double r2 = b.radius * b.radius;
        return dist2(p, b.center) <= r2 + 1e-12 * std::max(1.0, r2);
    }

    // Smallest ball with every support point on its boundary. A support point
    // that is affinely dependent on the earlier ones contributes a singular
    // pivot and is skipped.
    Ball circumball(const std::vector<int>& support) const {
        if (support.empty()) return {Vec(dim_, 0.0), -1.0};
        const Vec& p0 = pts_[support[0]];
        std::vector<const Vec*> rest;
        for (std::size_t i = 1; i < support.size(); ++i) rest.push_back(&pts_[support[i]]);

        const int m = static_cast<int>(rest.size());
        if (m == 0) return {p0, 0.0};

        // center = p0 + sum_i lambda_i v_i with <center - p0, v_i> = |v_i|^2 / 2
        std::vector<Vec> v(m);
        for (int i = 0; i < m; ++i) v[i] = sub(*rest[i], p0);
        std::vector<std::vector<double>> A(m, std::vector<double>(m + 1, 0.0));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) A[i][j] = 2.0 * dot(v[i], v[j]);
            A[i][m] = norm2(v[i]);
        }
        std::vector<int> col_of(m);
        for (int i = 0; i < m; ++i) col_of[i] = i;
        std::vector<double> lambda(m, 0.0);
        std::vector<bool> dropped(m, false);
        int rank = 0;
        for (int c = 0; c < m; ++c) {
            int piv = -1;
            double best = 0.0;
            for (int r = rank; r < m; ++r)
                if (std::abs(A[r][c]) > best) {
                    best = std::abs(A[r][c]);
                    piv = r;
                }
            if (piv < 0 || best <= 1e-12 * std::max(1.0, row_scale(A, c))) {
                dropped[c] = true;
                continue;
            }
            std::swap(A[piv], A[rank]);
            for (int r = 0; r < m; ++r) {
                if (r == rank) continue;
                const double f = A[r][c] / A[rank][c];
                if (f != 0.0)
                    for (int k = c; k <= m; ++k) A[r][k] -= f * A[rank][k];
            }
            col_of[rank] = c;
            ++rank;
        }
        for (int r = 0; r < rank; ++r) lambda[col_of[r]] = A[r][m] / A[r][col_of[r]];

        Vec center(p0.begin(), p0.end());
        for (int i = 0; i < m; ++i)
            if (!dropped[i])
                for (int d = 0; d < dim_; ++d) center[d] += lambda[i] * v[i][d];
        return {center, dist(center, p0)};
    }

    static double row_scale(const std::vector<std::vector<double>>& A, int c) {
        double s = 0.0;
        for (const auto& row : A) s = std::max(s, std::abs(row[c]));
        return s;
    }

    std::vector<Vec> pts_;
    int dim_;
};

}  // namespace detail

inline Ball min_enclosing_ball(const std::vector<Vec>& pts) {
    require(!pts.empty(), "minimal enclosing ball of an empty set");
    const int dim = static_cast<int>(pts.front().size());
    require(dim >= 1, "point dimension must be at least 1");
    for (const Vec& p : pts) {
        require(static_cast<int>(p.size()) == dim, "dimension mismatch");
        require(all_finite(p), "non-finite coordinate");
    }
    return detail::Welzl(pts, dim).run();
}

inline Ball min_enclosing_ball(const PointCloud& cloud, std::span<const int> subset) {
    require(!subset.empty(), "minimal enclosing ball of an empty set");
    std::vector<Vec> pts;
    pts.reserve(subset.size());
    for (int i : subset) {
        auto p = cloud.point(i);
        pts.emplace_back(p.begin(), p.end());
    }
    return detail::Welzl(std::move(pts), cloud.dim()).run();
}

}  // namespace mucrit
