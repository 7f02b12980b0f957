#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "sifs/expr.hpp"
#include "sifs/metric.hpp"

namespace sifs {

/// y = matrix * x + offset
struct AffineRule {
    std::vector<std::vector<double>> matrix;
    std::vector<double> offset;
};

/// Explicit index-to-index map on a finite space.
struct TableRule {
    std::vector<int> images;
};

/// Ordered guarded branches; the first branch whose guard holds supplies
/// the image expressions, one per output coordinate.
struct PiecewiseBranch {
    Guard guard;
    std::vector<Expr> image;
};

struct PiecewiseRule {
    std::vector<PiecewiseBranch> branches;
};

struct ContractionMap {
    std::variant<AffineRule, TableRule, PiecewiseRule> rule;
    std::optional<double> declared_m;  // contractivity factor in [0,1), if known
    bool continuous = true;

    bool is_affine() const { return std::holds_alternative<AffineRule>(rule); }
    bool is_table() const { return std::holds_alternative<TableRule>(rule); }
    bool is_piecewise() const { return std::holds_alternative<PiecewiseRule>(rule); }
};

ContractionMap make_affine_map(std::vector<std::vector<double>> matrix,
                               std::vector<double> offset,
                               std::optional<double> declared_m = {});
ContractionMap make_table_map(std::vector<int> images,
                              std::optional<double> declared_m = {},
                              bool continuous = true);
ContractionMap make_piecewise_map(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& branches,
    std::optional<double> declared_m = {}, bool continuous = true);

/// Applies the map to a point of the space. Coordinate rules on a labeled
/// finite space evaluate on the point's label and snap the result back to
/// the index of the matching label; an image with no matching label is an
/// error (map output escapes the space). Throws domain_error on mismatch.
Point apply_map(const MetricSpace& space, const ContractionMap& map, const Point& p);

/// Operator norm of the linear part induced by the space's metric kind:
/// max column sum for taxicab, max row sum for chebyshev, spectral norm
/// for euclidean. The exact Lipschitz constant of the affine rule.
double operator_norm(const std::vector<std::vector<double>>& matrix, MetricKind kind);

/// max over ordered sample pairs a != b of d(Ta,Tb)/d(a,b); 0 for a
/// single-point sample.
double empirical_lipschitz(const MetricSpace& space, const ContractionMap& map,
                           const std::vector<Point>& sample);

}  // namespace sifs
