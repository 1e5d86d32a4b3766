#pragma once

// Finite point set in R^n, flat row-major storage.

#include <span>
#include <utility>
#include <vector>

#include "mucrit/error.hpp"
#include "mucrit/vec.hpp"

namespace mucrit {

class PointCloud {
public:
    explicit PointCloud(int dim) : dim_(dim) {
        require(dim >= 1, "point dimension must be at least 1");
    }

    static PointCloud from_rows(const std::vector<Vec>& rows) {
        require(!rows.empty(), "empty point list");
        PointCloud c(static_cast<int>(rows.front().size()));
        for (const Vec& r : rows) c.add(r);
        return c;
    }

    void add(std::span<const double> p) {
        require(static_cast<int>(p.size()) == dim_, "dimension mismatch");
        require(all_finite(p), "non-finite coordinate");
        data_.insert(data_.end(), p.begin(), p.end());
    }

    std::span<const double> point(int i) const {
        return {data_.data() + static_cast<std::size_t>(i) * dim_,
                static_cast<std::size_t>(dim_)};
    }

    int size() const { return static_cast<int>(data_.size()) / dim_; }
    int dim() const { return dim_; }
    bool empty() const { return data_.empty(); }
    const std::vector<double>& raw() const { return data_; }

    std::pair<Vec, Vec> bounding_box() const {
        require(!empty(), "bounding box of an empty cloud");
        Vec lo(point(0).begin(), point(0).end());
        Vec hi = lo;
        for (int i = 1; i < size(); ++i) {
            auto p = point(i);
            for (int d = 0; d < dim_; ++d) {
                lo[d] = std::min(lo[d], p[d]);
                hi[d] = std::max(hi[d], p[d]);
            }
        }
        return {lo, hi};
    }

private:
    int dim_;
    std::vector<double> data_;
};

}  // namespace mucrit
