#include "sifs/compact_set.hpp"

#include <algorithm>
#include <cmath>

namespace sifs {

double Box::diameter() const {
    double best = 0.0;
    for (std::size_t i = 0; i < min.size(); ++i) best = std::max(best, extent(i));
    return best;
}

bool Box::contains(const Point& p, double slack) const {
    if (p.coords.size() != min.size()) return false;
    for (std::size_t i = 0; i < min.size(); ++i)
        if (p.coords[i] < min[i] - slack || p.coords[i] > max[i] + slack) return false;
    return true;
}

Box bounding_box(const std::vector<Point>& points) {
    if (points.empty()) throw domain_error("bounding_box: empty point set");
    if (points[0].is_index())
        throw domain_error("bounding_box: index points have no coordinates");
    Box box{points[0].coords, points[0].coords};
    for (const Point& p : points)
        for (std::size_t i = 0; i < box.min.size(); ++i) {
            box.min[i] = std::min(box.min[i], p.coords[i]);
            box.max[i] = std::max(box.max[i], p.coords[i]);
        }
    return box;
}

double snap(double value, double resolution) {
    // nearbyint under the default rounding mode is round-half-to-even,
    // which keeps quantization deterministic across platforms.
    return std::nearbyint(value / resolution) * resolution;
}

namespace {

void sort_dedup(std::vector<Point>& points) {
    std::sort(points.begin(), points.end(), point_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
}

void check_uniform(const std::vector<Point>& points) {
    if (points.empty()) throw domain_error("CompactSet: a compact set is nonempty");
    const bool index = points[0].is_index();
    const std::size_t d = points[0].dim();
    for (const Point& p : points) {
        if (p.is_index() != index || p.dim() != d)
            throw domain_error("CompactSet: mixed point representations");
    }
}

}  // namespace

CompactSet CompactSet::quantized(std::vector<Point> points, double resolution) {
    check_uniform(points);
    if (points[0].is_index())
        throw domain_error("CompactSet::quantized: index points are not quantized");
    if (!(resolution > 0.0))
        throw domain_error("CompactSet::quantized: resolution must be positive");
    for (Point& p : points)
        for (double& c : p.coords) c = snap(c, resolution);
    sort_dedup(points);
    CompactSet s;
    s.points_ = std::move(points);
    s.resolution_ = resolution;
    return s;
}

CompactSet CompactSet::exact(std::vector<Point> points, double resolution) {
    check_uniform(points);
    if (points[0].is_index())
        throw domain_error("CompactSet::exact: use of_indices for finite spaces");
    if (!(resolution > 0.0))
        throw domain_error("CompactSet::exact: resolution must be positive");
    sort_dedup(points);
    CompactSet s;
    s.points_ = std::move(points);
    s.resolution_ = resolution;
    return s;
}

CompactSet CompactSet::of_indices(std::vector<int> indices) {
    if (indices.empty()) throw domain_error("CompactSet: a compact set is nonempty");
    std::vector<Point> points;
    points.reserve(indices.size());
    for (int i : indices) points.push_back(Point::idx(i));
    sort_dedup(points);
    CompactSet s;
    s.points_ = std::move(points);
    s.resolution_ = 0.0;
    return s;
}

CompactSet set_union(const std::vector<CompactSet>& sets) {
    if (sets.empty()) throw domain_error("set_union: no sets given");
    const CompactSet& first = sets.front();
    std::vector<Point> merged;
    for (const CompactSet& s : sets) {
        if (s.is_index_set() != first.is_index_set() || s.dim() != first.dim() ||
            s.resolution() != first.resolution())
            throw domain_error("set_union: mixed spaces or resolutions");
        merged.insert(merged.end(), s.points().begin(), s.points().end());
    }
    if (first.is_index_set()) {
        std::vector<int> indices;
        indices.reserve(merged.size());
        for (const Point& p : merged) indices.push_back(p.index);
        return CompactSet::of_indices(std::move(indices));
    }
    // Members are already on the common grid; exact dedup keeps it.
    return CompactSet::exact(std::move(merged), first.resolution());
}

bool belongs(const MetricSpace& space, const CompactSet& set) {
    for (const Point& p : set.points())
        if (!belongs(space, p)) return false;
    return true;
}

void require_belongs(const MetricSpace& space, const CompactSet& set, const char* who) {
    for (const Point& p : set.points()) require_belongs(space, p, who);
}

}  // namespace sifs
