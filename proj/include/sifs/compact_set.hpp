#pragma once

#include <vector>

#include "sifs/metric.hpp"

namespace sifs {

/// Axis-aligned bounding box of a coordinate point collection.
struct Box {
    std::vector<double> min, max;
    std::size_t dim() const { return min.size(); }
    double extent(std::size_t axis) const { return max[axis] - min[axis]; }
    double diameter() const;  // largest axis extent
    bool contains(const Point& p, double slack = 0.0) const;
};

Box bounding_box(const std::vector<Point>& points);

/// A finite representation of a nonempty compact set: a deduplicated,
/// canonically ordered point set. Continuous-space sets are quantized to a
/// resolution grid; finite-space sets are index sets.
class CompactSet {
public:
    /// Snaps every coordinate to the nearest multiple of `resolution`
    /// (round-half-to-even), deduplicates, sorts. Throws on empty input or
    /// nonpositive resolution.
    static CompactSet quantized(std::vector<Point> points, double resolution);

    /// Keeps exact coordinates (no snapping); deduplication is by exact
    /// equality. Used where the pointwise image of a set must stay exact.
    static CompactSet exact(std::vector<Point> points, double resolution);

    /// Subset of a finite space, given as indices.
    static CompactSet of_indices(std::vector<int> indices);

    const std::vector<Point>& points() const { return points_; }
    double resolution() const { return resolution_; }
    std::size_t size() const { return points_.size(); }
    bool is_index_set() const { return !points_.empty() && points_[0].is_index(); }
    std::size_t dim() const { return points_.empty() ? 0 : points_[0].dim(); }

    bool operator==(const CompactSet& other) const = default;

private:
    CompactSet() = default;
    std::vector<Point> points_;
    double resolution_ = 0.0;
};

double snap(double value, double resolution);

/// Quantized, deduplicated union. All sets must share representation and
/// resolution; throws domain_error otherwise.
CompactSet set_union(const std::vector<CompactSet>& sets);

/// True if every point of the set belongs to the space.
bool belongs(const MetricSpace& space, const CompactSet& set);
void require_belongs(const MetricSpace& space, const CompactSet& set, const char* who);

}  // namespace sifs
