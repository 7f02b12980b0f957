#pragma once

#include "sifs/compact_set.hpp"
#include "sifs/metric.hpp"

namespace sifs {

/// D(A,B) = max over a in A of the distance from a to the set B. Exact for
/// the stored finite sets; zero iff A is a subset of B.
double directed_distance(const MetricSpace& space, const CompactSet& a,
                         const CompactSet& b);

/// h(A,B) = max(D(A,B), D(B,A)); the Hausdorff metric on stored sets.
double hausdorff(const MetricSpace& space, const CompactSet& a, const CompactSet& b);

/// Same value as hausdorff (bit-exact on identical inputs), computed with a
/// uniform spatial bucket grid for nearest-neighbor pruning. Continuous
/// spaces of dimension 1-3 only.
double hausdorff_accelerated(const MetricSpace& space, const CompactSet& a,
                             const CompactSet& b);

/// Picks the accelerated path when the space supports it and the sets are
/// big enough for the grid to pay off; brute force otherwise. Always equal
/// to hausdorff.
double hausdorff_auto(const MetricSpace& space, const CompactSet& a,
                      const CompactSet& b);

/// Nearest-neighbor structure over a fixed point set: buckets on a uniform
/// grid, queried by expanding cell rings. Distances are evaluated with the
/// same expression as the brute-force path, so minima are bit-identical.
class NearestPointGrid {
public:
    NearestPointGrid(const MetricSpace& space, const CompactSet& points);

    /// min over b of d(query, b).
    double nearest_distance(const Point& query) const;

private:
    const MetricSpace& space_;
    const std::vector<Point>& points_;
    std::size_t dim_;
    double cell_size_ = 1.0;
    std::vector<double> origin_;
    std::vector<int> cells_per_axis_;
    std::vector<int> bucket_start_;  // prefix sums into point_order_
    std::vector<int> point_order_;

    int cell_of(const Point& p, std::size_t axis) const;
    std::size_t flat_index(const int* cell) const;
};

}  // namespace sifs
