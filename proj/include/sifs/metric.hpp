#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sifs/errors.hpp"

namespace sifs {

enum class MetricKind { euclidean, taxicab, chebyshev, finite_table };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

/// A point is either a coordinate vector (continuous spaces) or a single
/// index into a finite space. Exactly one representation is active.
struct Point {
    std::vector<double> coords;
    int index = -1;  // >= 0 iff this is a finite-space point

    static Point at(std::vector<double> c);
    static Point idx(int i);

    bool is_index() const { return index >= 0; }
    std::size_t dim() const { return coords.size(); }

    bool operator==(const Point& other) const = default;
};

/// Lexicographic order; index points order by index. Used to keep point
/// collections in a canonical order so results never depend on insertion
/// order.
bool point_less(const Point& a, const Point& b);

struct MetricSpace {
    MetricKind kind = MetricKind::euclidean;
    int dimension = 0;                            // continuous kinds only
    std::vector<std::vector<double>> table;       // finite_table only
    std::vector<std::vector<double>> point_labels;  // optional, finite spaces

    bool is_finite() const { return kind == MetricKind::finite_table; }
    std::size_t size() const { return table.size(); }  // finite spaces

    bool operator==(const MetricSpace& other) const = default;
};

MetricSpace make_continuous_space(MetricKind kind, int dimension);
MetricSpace make_finite_space(std::vector<std::vector<double>> table,
                              std::vector<std::vector<double>> labels = {});

/// d(a,b) for the space's kind. Throws domain_error on dimension mismatch
/// or out-of-range index.
double distance(const MetricSpace& space, const Point& a, const Point& b);

/// Distance between raw coordinate vectors under a continuous kind.
double coord_distance(MetricKind kind, const std::vector<double>& a,
                      const std::vector<double>& b);

/// True if the point structurally belongs to the space (matching dimension
/// or in-range index, all coordinates finite).
bool belongs(const MetricSpace& space, const Point& p);
void require_belongs(const MetricSpace& space, const Point& p, const char* who);

// ---------------------------------------------------------------------------
// Metric-axiom validation of explicit distance tables
// ---------------------------------------------------------------------------

struct MetricViolation {
    enum class Kind {
        negative_entry,
        nonzero_diagonal,
        zero_off_diagonal,
        asymmetry,
        triangle,
    };
    Kind kind;
    std::size_t i = 0, j = 0, k = 0;  // witness indices (k used by triangle)
    double lhs = 0.0, rhs = 0.0;      // violated inequality, lhs vs rhs

    std::string describe() const;
};

struct ValidationReport {
    std::vector<MetricViolation> violations;
    bool valid() const { return violations.empty(); }
};

/// Checks every metric axiom on a square table and reports each violation
/// with witness indices. Triangle inequality tolerates absolute violations
/// up to 1e-12 to absorb rounding in user-supplied decimal tables.
/// Throws domain_error for non-square input.
ValidationReport validate_metric(const std::vector<std::vector<double>>& table);

inline constexpr double kTriangleSlack = 1e-12;

}  // namespace sifs
