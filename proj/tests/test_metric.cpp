#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sifs/fixtures.hpp"
#include "sifs/metric.hpp"
#include "sifs/sampling.hpp"

using namespace sifs;

namespace {

// Test-local taxicab evaluation, independent of the library path.
double taxicab_oracle(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

Point random_point(Rng& rng, int dim) {
    std::vector<double> c(static_cast<std::size_t>(dim));
    for (double& v : c) v = rng.uniform(-10.0, 10.0);
    return Point::at(std::move(c));
}

}  // namespace

TEST_CASE("distance matches the worked taxicab pair") {
    const MetricSpace space = make_continuous_space(MetricKind::taxicab, 2);
    CHECK(distance(space, Point::at({5, 4}), Point::at({4, 5})) == doctest::Approx(2.0));
}

TEST_CASE("distance of a point to itself is zero for every kind") {
    for (MetricKind kind :
         {MetricKind::euclidean, MetricKind::taxicab, MetricKind::chebyshev}) {
        const MetricSpace space = make_continuous_space(kind, 3);
        const Point p = Point::at({1.25, -3.5, 0.75});
        CHECK(distance(space, p, p) == 0.0);
    }
}

TEST_CASE("euclidean distance recovers the 3-4-5 triangle") {
    const MetricSpace space = make_continuous_space(MetricKind::euclidean, 2);
    CHECK(distance(space, Point::at({0, 0}), Point::at({3, 4})) == doctest::Approx(5.0));
}

TEST_CASE("distance rejects mismatched points") {
    const MetricSpace plane = make_continuous_space(MetricKind::euclidean, 2);
    CHECK_THROWS_AS(distance(plane, Point::at({0, 0}), Point::at({1, 2, 3})),
                    domain_error);
    CHECK_THROWS_AS(distance(plane, Point::at({0, 0}), Point::idx(1)), domain_error);

    const MetricSpace tiny = make_finite_space({{0, 1}, {1, 0}});
    CHECK_THROWS_AS(distance(tiny, Point::idx(0), Point::idx(2)), domain_error);
}

TEST_CASE("the five-point fixture table is the taxicab table of its labels") {
    const MetricSpace space = fixtures::fivepoint_space();
    REQUIRE(space.size() == 5);
    REQUIRE(space.point_labels.size() == 5);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            CHECK(space.table[i][j] ==
                  taxicab_oracle(space.point_labels[i], space.point_labels[j]));

    // Independent triple check of the triangle inequality.
    const ValidationReport report = validate_metric(space.table);
    CHECK(report.valid());
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            for (std::size_t k = 0; k < 5; ++k)
                CHECK(space.table[i][j] <= space.table[i][k] + space.table[k][j] + 1e-12);
}

TEST_CASE("validate_metric reports a triangle violation with its witness") {
    const ValidationReport report =
        validate_metric({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
    REQUIRE_FALSE(report.valid());
    bool found = false;
    for (const MetricViolation& v : report.violations) {
        if (v.kind != MetricViolation::Kind::triangle) continue;
        found = true;
        CHECK(v.lhs == 5.0);
        CHECK(v.rhs == 2.0);
        CHECK(((v.i == 0 && v.j == 2) || (v.i == 2 && v.j == 0)));
        CHECK(v.k == 1);
    }
    CHECK(found);
}

TEST_CASE("validate_metric flags distinct points at distance zero") {
    const ValidationReport report = validate_metric({{0, 0}, {0, 0}});
    REQUIRE_FALSE(report.valid());
    CHECK(report.violations.front().kind == MetricViolation::Kind::zero_off_diagonal);
}

TEST_CASE("validate_metric flags asymmetry, negative entries, nonzero diagonal") {
    const ValidationReport report = validate_metric({{1, 2}, {3, -4}});
    bool saw_asym = false, saw_neg = false, saw_diag = false;
    for (const MetricViolation& v : report.violations) {
        saw_asym |= v.kind == MetricViolation::Kind::asymmetry;
        saw_neg |= v.kind == MetricViolation::Kind::negative_entry;
        saw_diag |= v.kind == MetricViolation::Kind::nonzero_diagonal;
        CHECK_FALSE(v.describe().empty());
    }
    CHECK(saw_asym);
    CHECK(saw_neg);
    CHECK(saw_diag);
}

TEST_CASE("validate_metric rejects non-square input") {
    CHECK_THROWS_AS(validate_metric({{0, 1}, {1}}), domain_error);
}

TEST_CASE("metric axioms hold on random points for every continuous kind") {
    Rng rng(20240811);
    for (MetricKind kind :
         {MetricKind::euclidean, MetricKind::taxicab, MetricKind::chebyshev}) {
        for (int dim = 1; dim <= 3; ++dim) {
            const MetricSpace space = make_continuous_space(kind, dim);
            for (int trial = 0; trial < 200; ++trial) {
                const Point a = random_point(rng, dim);
                const Point b = random_point(rng, dim);
                const Point c = random_point(rng, dim);
                const double ab = distance(space, a, b);
                CHECK(ab >= 0.0);
                CHECK(ab == distance(space, b, a));
                CHECK(distance(space, a, a) == 0.0);
                CHECK(ab <= distance(space, a, c) + distance(space, c, b) + 1e-12);
            }
        }
    }
}

TEST_CASE("tables passing validation behave as metrics downstream") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        // Random tables built from embedded point clouds are metrics by
        // construction; validation must agree and downstream triples hold.
        const int n = rng.uniform_int(3, 8);
        const MetricSpace ambient = make_continuous_space(
            trial % 2 ? MetricKind::taxicab : MetricKind::euclidean, 2);
        std::vector<Point> cloud;
        for (int i = 0; i < n; ++i)
            cloud.push_back(Point::at({rng.uniform(0, 5), rng.uniform(0, 5)}));
        std::vector<std::vector<double>> table(n, std::vector<double>(n, 0.0));
        bool degenerate = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                table[i][j] = distance(ambient, cloud[i], cloud[j]);
                if (i != j && table[i][j] == 0.0) degenerate = true;
            }
        if (degenerate) continue;
        REQUIRE(validate_metric(table).valid());
        const MetricSpace space = make_finite_space(table);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double ij = distance(space, Point::idx(i), Point::idx(j));
                    const double ik = distance(space, Point::idx(i), Point::idx(k));
                    const double kj = distance(space, Point::idx(k), Point::idx(j));
                    CHECK(ij <= ik + kj + 1e-12);
                }
    }
}

TEST_CASE("points reject non-finite coordinates") {
    CHECK_THROWS_AS(Point::at({1.0, std::nan("")}), domain_error);
    CHECK_THROWS_AS(Point::at({std::numeric_limits<double>::infinity()}), domain_error);
}
