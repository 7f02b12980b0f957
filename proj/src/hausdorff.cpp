#include "sifs/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sifs {

namespace {

void check_pair(const MetricSpace& space, const CompactSet& a, const CompactSet& b,
                const char* who) {
    require_belongs(space, a, who);
    require_belongs(space, b, who);
    if (a.is_index_set() != b.is_index_set() || a.dim() != b.dim())
        throw domain_error(std::string(who) + ": sets from different spaces");
}

double directed_brute(const MetricSpace& space, const CompactSet& a,
                      const CompactSet& b) {
    double worst = 0.0;
    for (const Point& pa : a.points()) {
        double best = std::numeric_limits<double>::infinity();
        for (const Point& pb : b.points()) best = std::min(best, distance(space, pa, pb));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double directed_distance(const MetricSpace& space, const CompactSet& a,
                         const CompactSet& b) {
    check_pair(space, a, b, "directed_distance");
    return directed_brute(space, a, b);
}

double hausdorff(const MetricSpace& space, const CompactSet& a, const CompactSet& b) {
    check_pair(space, a, b, "hausdorff");
    return std::max(directed_brute(space, a, b), directed_brute(space, b, a));
}

// ---------------------------------------------------------------------------
// Bucket-grid nearest neighbor
// ---------------------------------------------------------------------------

NearestPointGrid::NearestPointGrid(const MetricSpace& space, const CompactSet& points)
    : space_(space), points_(points.points()), dim_(points.dim()) {
    if (space.is_finite() || dim_ < 1 || dim_ > 3)
        throw domain_error("NearestPointGrid: continuous space of dimension 1-3 required");

    const Box box = bounding_box(points_);
    origin_ = box.min;
    // A common cell size on all axes keeps the ring lower bound (r-1)*cell
    // valid in every direction.
    const int n = static_cast<int>(points_.size());
    const int target = std::clamp(
        static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.0 / dim_))), 1, 128);
    double extent = box.diameter();
    if (extent <= 0.0) extent = 1.0;
    cell_size_ = extent / target;

    cells_per_axis_.resize(dim_);
    std::size_t total = 1;
    for (std::size_t ax = 0; ax < dim_; ++ax) {
        cells_per_axis_[ax] =
            std::max(1, static_cast<int>(std::floor(box.extent(ax) / cell_size_)) + 1);
        total *= static_cast<std::size_t>(cells_per_axis_[ax]);
    }

    // Counting sort of point indices into buckets.
    bucket_start_.assign(total + 1, 0);
    std::vector<int> cell(dim_);
    for (const Point& p : points_) {
        for (std::size_t ax = 0; ax < dim_; ++ax) cell[ax] = cell_of(p, ax);
        ++bucket_start_[flat_index(cell.data()) + 1];
    }
    for (std::size_t i = 1; i <= total; ++i) bucket_start_[i] += bucket_start_[i - 1];
    point_order_.resize(points_.size());
    std::vector<int> cursor(bucket_start_.begin(), bucket_start_.end() - 1);
    for (int i = 0; i < n; ++i) {
        for (std::size_t ax = 0; ax < dim_; ++ax) cell[ax] = cell_of(points_[i], ax);
        point_order_[cursor[flat_index(cell.data())]++] = i;
    }
}

int NearestPointGrid::cell_of(const Point& p, std::size_t axis) const {
    const int raw = static_cast<int>(std::floor((p.coords[axis] - origin_[axis]) / cell_size_));
    return std::clamp(raw, 0, cells_per_axis_[axis] - 1);
}

std::size_t NearestPointGrid::flat_index(const int* cell) const {
    std::size_t idx = 0;
    for (std::size_t ax = 0; ax < dim_; ++ax)
        idx = idx * static_cast<std::size_t>(cells_per_axis_[ax]) +
              static_cast<std::size_t>(cell[ax]);
    return idx;
}

double NearestPointGrid::nearest_distance(const Point& query) const {
    int home[3] = {0, 0, 0};
    int max_ring = 0;
    for (std::size_t ax = 0; ax < dim_; ++ax) {
        home[ax] = cell_of(query, ax);
        max_ring = std::max(max_ring,
                            std::max(home[ax], cells_per_axis_[ax] - 1 - home[ax]));
    }

    double best = std::numeric_limits<double>::infinity();
    const auto scan_cell = [&](const int* cell) {
        const std::size_t f = flat_index(cell);
        for (int k = bucket_start_[f]; k < bucket_start_[f + 1]; ++k)
            best = std::min(best, distance(space_, query, points_[point_order_[k]]));
    };

    for (int ring = 0; ring <= max_ring; ++ring) {
        // A point whose cell is at Chebyshev cell-distance >= ring is more
        // than (ring-1)*cell_size away in every supported metric. One extra
        // ring of margin absorbs rounding in the cell classification, so the
        // pruned minimum matches brute force bit for bit.
        if (ring >= 2 && best <= (ring - 2) * cell_size_) break;

        int cell[3] = {0, 0, 0};
        const auto in_bounds = [&](std::size_t ax, int c) {
            return c >= 0 && c < cells_per_axis_[ax];
        };
        if (dim_ == 1) {
            for (int dx : {-ring, ring}) {
                cell[0] = home[0] + dx;
                if (in_bounds(0, cell[0])) scan_cell(cell);
                if (ring == 0) break;
            }
        } else if (dim_ == 2) {
            for (int dx = -ring; dx <= ring; ++dx)
                for (int dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    cell[0] = home[0] + dx;
                    cell[1] = home[1] + dy;
                    if (in_bounds(0, cell[0]) && in_bounds(1, cell[1])) scan_cell(cell);
                }
        } else {
            for (int dx = -ring; dx <= ring; ++dx)
                for (int dy = -ring; dy <= ring; ++dy)
                    for (int dz = -ring; dz <= ring; ++dz) {
                        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) != ring)
                            continue;
                        cell[0] = home[0] + dx;
                        cell[1] = home[1] + dy;
                        cell[2] = home[2] + dz;
                        if (in_bounds(0, cell[0]) && in_bounds(1, cell[1]) &&
                            in_bounds(2, cell[2]))
                            scan_cell(cell);
                    }
        }
    }
    return best;
}

double hausdorff_accelerated(const MetricSpace& space, const CompactSet& a,
                             const CompactSet& b) {
    check_pair(space, a, b, "hausdorff_accelerated");
    if (space.is_finite())
        throw domain_error("hausdorff_accelerated: continuous spaces only");
    if (space.dimension < 1 || space.dimension > 3)
        throw domain_error("hausdorff_accelerated: dimension 1-3 required");

    const NearestPointGrid grid_b(space, b);
    double d_ab = 0.0;
    for (const Point& p : a.points()) d_ab = std::max(d_ab, grid_b.nearest_distance(p));

    const NearestPointGrid grid_a(space, a);
    double d_ba = 0.0;
    for (const Point& p : b.points()) d_ba = std::max(d_ba, grid_a.nearest_distance(p));

    return std::max(d_ab, d_ba);
}

double hausdorff_auto(const MetricSpace& space, const CompactSet& a,
                      const CompactSet& b) {
    constexpr std::size_t kGridThreshold = 64;
    if (!space.is_finite() && space.dimension >= 1 && space.dimension <= 3 &&
        a.size() >= kGridThreshold && b.size() >= kGridThreshold)
        return hausdorff_accelerated(space, a, b);
    return hausdorff(space, a, b);
}

}  // namespace sifs
