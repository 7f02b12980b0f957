#include "sifs/contraction.hpp"

#include <algorithm>
#include <cmath>

namespace sifs {

namespace {

// Tolerance for matching a computed image against a finite space's labels.
constexpr double kLabelSnapTol = 1e-9;

void check_matrix(const std::vector<std::vector<double>>& matrix,
                  const std::vector<double>& offset) {
    const std::size_t d = matrix.size();
    if (d == 0) throw domain_error("affine rule: empty matrix");
    for (const auto& row : matrix)
        if (row.size() != d) throw domain_error("affine rule: matrix is not square");
    if (offset.size() != d)
        throw domain_error("affine rule: offset dimension does not match matrix");
}

std::vector<double> apply_coords(const ContractionMap& map,
                                 const std::vector<double>& x) {
    if (const auto* aff = std::get_if<AffineRule>(&map.rule)) {
        const std::size_t d = aff->matrix.size();
        if (x.size() != d)
            throw domain_error("apply_map: point dimension does not match affine rule");
        std::vector<double> y(d, 0.0);
        for (std::size_t i = 0; i < d; ++i) {
            double acc = aff->offset[i];
            for (std::size_t j = 0; j < d; ++j) acc += aff->matrix[i][j] * x[j];
            y[i] = acc;
        }
        return y;
    }
    const auto& pw = std::get<PiecewiseRule>(map.rule);
    for (const auto& branch : pw.branches) {
        if (!branch.guard.eval(x)) continue;
        std::vector<double> y(branch.image.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = branch.image[i].eval(x);
        return y;
    }
    throw domain_error("apply_map: no piecewise branch matched the point");
}

int snap_to_label(const MetricSpace& space, const std::vector<double>& y) {
    for (std::size_t i = 0; i < space.point_labels.size(); ++i) {
        const auto& label = space.point_labels[i];
        if (label.size() != y.size()) continue;
        double err = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j)
            err = std::max(err, std::abs(label[j] - y[j]));
        if (err <= kLabelSnapTol) return static_cast<int>(i);
    }
    return -1;
}

}  // namespace

ContractionMap make_affine_map(std::vector<std::vector<double>> matrix,
                               std::vector<double> offset,
                               std::optional<double> declared_m) {
    check_matrix(matrix, offset);
    ContractionMap m;
    m.rule = AffineRule{std::move(matrix), std::move(offset)};
    m.declared_m = declared_m;
    m.continuous = true;
    return m;
}

ContractionMap make_table_map(std::vector<int> images,
                              std::optional<double> declared_m, bool continuous) {
    const int n = static_cast<int>(images.size());
    for (int img : images)
        if (img < 0 || img >= n)
            throw domain_error("table rule: image index " + std::to_string(img) +
                               " outside [0," + std::to_string(n) + ")");
    ContractionMap m;
    m.rule = TableRule{std::move(images)};
    m.declared_m = declared_m;
    m.continuous = continuous;
    return m;
}

ContractionMap make_piecewise_map(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& branches,
    std::optional<double> declared_m, bool continuous) {
    if (branches.empty()) throw domain_error("piecewise rule: no branches");
    PiecewiseRule rule;
    for (const auto& [guard_text, image_texts] : branches) {
        PiecewiseBranch b{Guard::parse(guard_text), {}};
        for (const auto& t : image_texts) b.image.push_back(Expr::parse(t));
        if (b.image.empty()) throw domain_error("piecewise rule: branch with empty image");
        rule.branches.push_back(std::move(b));
    }
    ContractionMap m;
    m.rule = std::move(rule);
    m.declared_m = declared_m;
    m.continuous = continuous;
    return m;
}

Point apply_map(const MetricSpace& space, const ContractionMap& map, const Point& p) {
    require_belongs(space, p, "apply_map");
    if (const auto* table = std::get_if<TableRule>(&map.rule)) {
        if (!space.is_finite())
            throw domain_error("apply_map: table rule needs a finite space");
        if (table->images.size() != space.size())
            throw domain_error("apply_map: table rule size does not match space");
        return Point::idx(table->images[p.index]);
    }
    if (space.is_finite()) {
        // Coordinate rule on a finite space: evaluate on the label, then the
        // image must land on a labeled point of the space.
        if (space.point_labels.empty())
            throw domain_error("apply_map: coordinate rule on a finite space "
                               "without point labels");
        const std::vector<double> y = apply_coords(map, space.point_labels[p.index]);
        const int idx = snap_to_label(space, y);
        if (idx < 0)
            throw domain_error("apply_map: image of point " + std::to_string(p.index) +
                               " is not a point of the finite space");
        return Point::idx(idx);
    }
    std::vector<double> y = apply_coords(map, p.coords);
    if (y.size() != static_cast<std::size_t>(space.dimension))
        throw domain_error("apply_map: image dimension does not match space");
    for (double v : y)
        if (!std::isfinite(v)) throw domain_error("apply_map: image is not finite");
    return Point::at(std::move(y));
}

double operator_norm(const std::vector<std::vector<double>>& matrix, MetricKind kind) {
    const std::size_t d = matrix.size();
    for (const auto& row : matrix)
        if (row.size() != d) throw domain_error("operator_norm: matrix is not square");
    if (d == 0) return 0.0;
    switch (kind) {
        case MetricKind::taxicab: {  // max column abs sum
            double best = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                double s = 0.0;
                for (std::size_t i = 0; i < d; ++i) s += std::abs(matrix[i][j]);
                best = std::max(best, s);
            }
            return best;
        }
        case MetricKind::chebyshev: {  // max row abs sum
            double best = 0.0;
            for (const auto& row : matrix) {
                double s = 0.0;
                for (double v : row) s += std::abs(v);
                best = std::max(best, s);
            }
            return best;
        }
        case MetricKind::euclidean: {
            // Spectral norm via power iteration on A^T A. Deterministic
            // start vector; the iterate count is generous for d <= 4 and
            // still cheap for larger d.
            std::vector<std::vector<double>> ata(d, std::vector<double>(d, 0.0));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    double s = 0.0;
                    for (std::size_t k = 0; k < d; ++k) s += matrix[k][i] * matrix[k][j];
                    ata[i][j] = s;
                }
            std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d)));
            double lambda = 0.0;
            for (int iter = 0; iter < 200; ++iter) {
                std::vector<double> w(d, 0.0);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) w[i] += ata[i][j] * v[j];
                double norm = 0.0;
                for (double x : w) norm += x * x;
                norm = std::sqrt(norm);
                if (norm == 0.0) return 0.0;
                for (double& x : w) x /= norm;
                const double next = norm;
                v = std::move(w);
                if (std::abs(next - lambda) <= 1e-15 * std::max(1.0, next) && iter > 2)
                    return std::sqrt(next);
                lambda = next;
            }
            return std::sqrt(lambda);
        }
        case MetricKind::finite_table:
            throw domain_error("operator_norm: finite_table has no linear operators");
    }
    return 0.0;
}

double empirical_lipschitz(const MetricSpace& space, const ContractionMap& map,
                           const std::vector<Point>& sample) {
    if (sample.empty()) throw domain_error("empirical_lipschitz: empty sample");
    std::vector<Point> images;
    images.reserve(sample.size());
    for (const Point& p : sample) images.push_back(apply_map(space, map, p));
    double best = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i)
        for (std::size_t j = 0; j < sample.size(); ++j) {
            if (i == j) continue;
            const double d_ab = distance(space, sample[i], sample[j]);
            if (d_ab == 0.0) continue;
            best = std::max(best, distance(space, images[i], images[j]) / d_ab);
        }
    return best;
}

}  // namespace sifs
