#pragma once

// Nearest-neighbor queries against a point cloud. Clouds above
// kBruteForceMax points get a k-d tree; smaller ones are scanned directly.
// Tree answers are bit-identical to the brute-force scan: distances are
// computed by the same code path, pruning is strict (equal-distance boundary
// candidates are still visited), and ties resolve to the lowest index.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "mucrit/error.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

inline constexpr int kBruteForceMax = 256;

struct Nearest {
    double dist = 0.0;
    int index = -1;
};

class SpatialIndex {
public:
    explicit SpatialIndex(PointCloud cloud) : cloud_(std::move(cloud)) {
        require(!cloud_.empty(), "spatial index over an empty cloud");
        if (cloud_.size() > kBruteForceMax) build();
    }

    const PointCloud& cloud() const { return cloud_; }

    Nearest nearest(std::span<const double> x) const {
        require(static_cast<int>(x.size()) == cloud_.dim(), "dimension mismatch");
        Best best;
        if (root_ < 0) {
            for (int i = 0; i < cloud_.size(); ++i) best.offer(dist2(x, cloud_.point(i)), i);
        } else {
            search_nearest(root_, x, best);
        }
        return {std::sqrt(best.d2), best.index};
    }

    // Indices of all points with d(x, p) <= radius, ascending.
    std::vector<int> within(std::span<const double> x, double radius) const {
        require(static_cast<int>(x.size()) == cloud_.dim(), "dimension mismatch");
        require(radius >= 0.0, "negative radius");
        const double r2 = radius * radius;
        std::vector<int> out;
        if (root_ < 0) {
            for (int i = 0; i < cloud_.size(); ++i)
                if (dist2(x, cloud_.point(i)) <= r2) out.push_back(i);
        } else {
            search_within(root_, x, r2, out);
            std::sort(out.begin(), out.end());
        }
        return out;
    }

private:
    static constexpr int kLeafSize = 16;

    struct Node {
        int begin = 0, end = 0;        // leaf range into order_
        int split_dim = -1;
        double split_val = 0.0;
        int left = -1, right = -1;
    };

    struct Best {
        double d2 = std::numeric_limits<double>::infinity();
        int index = -1;
        void offer(double cand, int i) {
            if (cand < d2 || (cand == d2 && i < index)) {
                d2 = cand;
                index = i;
            }
        }
    };

    void build() {
        order_.resize(cloud_.size());
        for (int i = 0; i < cloud_.size(); ++i) order_[i] = i;
        root_ = build_range(0, cloud_.size());
    }

    int build_range(int begin, int end) {
        Node node;
        node.begin = begin;
        node.end = end;
        if (end - begin > kLeafSize) {
            // split on the widest axis of this range, at the median
            const int d = cloud_.dim();
            Vec lo(cloud_.point(order_[begin]).begin(), cloud_.point(order_[begin]).end());
            Vec hi = lo;
            for (int i = begin + 1; i < end; ++i) {
                auto p = cloud_.point(order_[i]);
                for (int k = 0; k < d; ++k) {
                    lo[k] = std::min(lo[k], p[k]);
                    hi[k] = std::max(hi[k], p[k]);
                }
            }
            int sd = 0;
            for (int k = 1; k < d; ++k)
                if (hi[k] - lo[k] > hi[sd] - lo[sd]) sd = k;
            if (hi[sd] > lo[sd]) {
                const int mid = begin + (end - begin) / 2;
                std::nth_element(order_.begin() + begin, order_.begin() + mid,
                                 order_.begin() + end, [&](int a, int b) {
                                     const double ca = cloud_.point(a)[sd];
                                     const double cb = cloud_.point(b)[sd];
                                     return ca < cb || (ca == cb && a < b);
                                 });
                node.split_dim = sd;
                node.split_val = cloud_.point(order_[mid])[sd];
                const int self = static_cast<int>(nodes_.size());
                nodes_.push_back(node);
                const int left = build_range(begin, mid);
                const int right = build_range(mid, end);
                nodes_[self].left = left;
                nodes_[self].right = right;
                return self;
            }
            // all points coincide on every axis: keep as one leaf
        }
        nodes_.push_back(node);
        return static_cast<int>(nodes_.size() - 1);
    }

    void search_nearest(int ni, std::span<const double> x, Best& best) const {
        const Node& node = nodes_[ni];
        if (node.left < 0) {
            for (int i = node.begin; i < node.end; ++i) {
                const int idx = order_[i];
                best.offer(dist2(x, cloud_.point(idx)), idx);
            }
            return;
        }
        const double diff = x[node.split_dim] - node.split_val;
        const int near = diff < 0.0 ? node.left : node.right;
        const int far = diff < 0.0 ? node.right : node.left;
        search_nearest(near, x, best);
        if (diff * diff <= best.d2) search_nearest(far, x, best);
    }

    void search_within(int ni, std::span<const double> x, double r2,
                       std::vector<int>& out) const {
        const Node& node = nodes_[ni];
        if (node.left < 0) {
            for (int i = node.begin; i < node.end; ++i) {
                const int idx = order_[i];
                if (dist2(x, cloud_.point(idx)) <= r2) out.push_back(idx);
            }
            return;
        }
        const double diff = x[node.split_dim] - node.split_val;
        const int near = diff < 0.0 ? node.left : node.right;
        const int far = diff < 0.0 ? node.right : node.left;
        search_within(near, x, r2, out);
        if (diff * diff <= r2) search_within(far, x, r2, out);
    }

    PointCloud cloud_;
    std::vector<int> order_;
    std::vector<Node> nodes_;
    int root_ = -1;
};

// Distance from x to the nearest point of K (direct scan).
inline double nearest_distance(std::span<const double> x, const PointCloud& K) {
    require(!K.empty(), "distance to an empty cloud");
    require(static_cast<int>(x.size()) == K.dim(), "dimension mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < K.size(); ++i) best = std::min(best, dist2(x, K.point(i)));
    return std::sqrt(best);
}

// Symmetric Hausdorff distance between two nonempty clouds.
inline double hausdorff(const PointCloud& K, const PointCloud& L) {
    require(!K.empty() && !L.empty(), "hausdorff of an empty cloud");
    require(K.dim() == L.dim(), "dimension mismatch");
    const SpatialIndex ik(K), il(L);
    double h = 0.0;
    for (int i = 0; i < K.size(); ++i) h = std::max(h, il.nearest(K.point(i)).dist);
    for (int i = 0; i < L.size(); ++i) h = std::max(h, ik.nearest(L.point(i)).dist);
    return h;
}

}  // namespace mucrit
