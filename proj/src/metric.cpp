#include "sifs/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sifs {

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::euclidean: return "euclidean";
        case MetricKind::taxicab: return "taxicab";
        case MetricKind::chebyshev: return "chebyshev";
        case MetricKind::finite_table: return "finite_table";
    }
    return "unknown";
}

MetricKind metric_kind_from_string(const std::string& name) {
    if (name == "euclidean") return MetricKind::euclidean;
    if (name == "taxicab") return MetricKind::taxicab;
    if (name == "chebyshev") return MetricKind::chebyshev;
    if (name == "finite_table") return MetricKind::finite_table;
    throw input_error("unknown metric kind: \"" + name + "\"");
}

Point Point::at(std::vector<double> c) {
    for (double v : c) {
        if (!std::isfinite(v)) throw domain_error("point coordinate is not finite");
    }
    Point p;
    p.coords = std::move(c);
    return p;
}

Point Point::idx(int i) {
    if (i < 0) throw domain_error("finite-space point index must be nonnegative");
    Point p;
    p.index = i;
    return p;
}

bool point_less(const Point& a, const Point& b) {
    if (a.is_index() || b.is_index()) return a.index < b.index;
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(),
                                        b.coords.begin(), b.coords.end());
}

MetricSpace make_continuous_space(MetricKind kind, int dimension) {
    if (kind == MetricKind::finite_table)
        throw domain_error("finite_table spaces need a distance table");
    if (dimension < 1) throw domain_error("dimension must be positive");
    MetricSpace s;
    s.kind = kind;
    s.dimension = dimension;
    return s;
}

MetricSpace make_finite_space(std::vector<std::vector<double>> table,
                              std::vector<std::vector<double>> labels) {
    ValidationReport report = validate_metric(table);
    if (!report.valid()) {
        throw input_error("distance table violates metric axioms: " +
                          report.violations.front().describe());
    }
    if (!labels.empty() && labels.size() != table.size())
        throw input_error("point_labels size does not match table size");
    MetricSpace s;
    s.kind = MetricKind::finite_table;
    s.table = std::move(table);
    s.point_labels = std::move(labels);
    return s;
}

double coord_distance(MetricKind kind, const std::vector<double>& a,
                      const std::vector<double>& b) {
    if (a.size() != b.size()) throw domain_error("distance: dimension mismatch");
    double acc = 0.0;
    switch (kind) {
        case MetricKind::euclidean:
            for (std::size_t i = 0; i < a.size(); ++i) {
                const double d = a[i] - b[i];
                acc += d * d;
            }
            return std::sqrt(acc);
        case MetricKind::taxicab:
            for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(a[i] - b[i]);
            return acc;
        case MetricKind::chebyshev:
            for (std::size_t i = 0; i < a.size(); ++i)
                acc = std::max(acc, std::abs(a[i] - b[i]));
            return acc;
        case MetricKind::finite_table:
            throw domain_error("coord_distance: finite_table has no coordinate metric");
    }
    return acc;
}

bool belongs(const MetricSpace& space, const Point& p) {
    if (space.is_finite()) {
        return p.is_index() && static_cast<std::size_t>(p.index) < space.size();
    }
    if (p.is_index()) return false;
    if (p.coords.size() != static_cast<std::size_t>(space.dimension)) return false;
    for (double v : p.coords)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_belongs(const MetricSpace& space, const Point& p, const char* who) {
    if (belongs(space, p)) return;
    if (space.is_finite()) {
        throw domain_error(std::string(who) + ": point index " +
                           std::to_string(p.index) + " outside table of size " +
                           std::to_string(space.size()));
    }
    throw domain_error(std::string(who) + ": point dimension " +
                       std::to_string(p.dim()) + " does not match space dimension " +
                       std::to_string(space.dimension));
}

double distance(const MetricSpace& space, const Point& a, const Point& b) {
    require_belongs(space, a, "distance");
    require_belongs(space, b, "distance");
    if (space.is_finite()) return space.table[a.index][b.index];
    return coord_distance(space.kind, a.coords, b.coords);
}

std::string MetricViolation::describe() const {
    char buf[160];
    switch (kind) {
        case Kind::negative_entry:
            std::snprintf(buf, sizeof buf, "negative entry d(%zu,%zu) = %g", i, j, lhs);
            break;
        case Kind::nonzero_diagonal:
            std::snprintf(buf, sizeof buf, "nonzero diagonal d(%zu,%zu) = %g", i, i, lhs);
            break;
        case Kind::zero_off_diagonal:
            std::snprintf(buf, sizeof buf,
                          "distinct points %zu,%zu at distance 0", i, j);
            break;
        case Kind::asymmetry:
            std::snprintf(buf, sizeof buf, "asymmetry d(%zu,%zu) = %g vs d(%zu,%zu) = %g",
                          i, j, lhs, j, i, rhs);
            break;
        case Kind::triangle:
            std::snprintf(buf, sizeof buf,
                          "triangle violation (%zu,%zu,%zu): d(%zu,%zu) = %g > %g",
                          i, j, k, i, j, lhs, rhs);
            break;
    }
    return buf;
}

ValidationReport validate_metric(const std::vector<std::vector<double>>& table) {
    const std::size_t n = table.size();
    for (const auto& row : table) {
        if (row.size() != n) throw domain_error("validate_metric: table is not square");
    }
    ValidationReport report;
    using K = MetricViolation::Kind;
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i][i] != 0.0)
            report.violations.push_back({K::nonzero_diagonal, i, i, 0, table[i][i], 0.0});
        for (std::size_t j = 0; j < n; ++j) {
            if (table[i][j] < 0.0)
                report.violations.push_back({K::negative_entry, i, j, 0, table[i][j], 0.0});
            if (i < j) {
                if (table[i][j] == 0.0)
                    report.violations.push_back({K::zero_off_diagonal, i, j, 0, 0.0, 0.0});
                if (table[i][j] != table[j][i])
                    report.violations.push_back(
                        {K::asymmetry, i, j, 0, table[i][j], table[j][i]});
            }
        }
    }
    // Triangle inequality over all index triples, with absolute slack for
    // tables entered as rounded decimals.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                const double direct = table[i][j];
                const double via = table[i][k] + table[k][j];
                if (direct > via + kTriangleSlack)
                    report.violations.push_back({K::triangle, i, j, k, direct, via});
            }
    return report;
}

}  // namespace sifs
