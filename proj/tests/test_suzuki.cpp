#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sifs/fixtures.hpp"
#include "sifs/sampling.hpp"
#include "sifs/suzuki.hpp"

using namespace sifs;

namespace {

// ---------------------------------------------------------------------------
// Independent five-point oracle: its own labels, distances, images, and
// threshold formula, sharing nothing with the library path it checks.
// ---------------------------------------------------------------------------
struct FivepointOracle {
    double label[5][2] = {{0, 0}, {4, 0}, {0, 4}, {4, 5}, {5, 4}};
    int image[5];
    double dist[5][5];

    FivepointOracle() {
        for (int i = 0; i < 5; ++i) {
            // fold rule: (x1,0) when x1 <= x2, else (0,x2)
            double img[2];
            if (label[i][0] <= label[i][1]) {
                img[0] = label[i][0];
                img[1] = 0;
            } else {
                img[0] = 0;
                img[1] = label[i][1];
            }
            image[i] = -1;
            for (int j = 0; j < 5; ++j)
                if (label[j][0] == img[0] && label[j][1] == img[1]) image[i] = j;
            REQUIRE(image[i] >= 0);
        }
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                dist[i][j] = std::abs(label[i][0] - label[j][0]) +
                             std::abs(label[i][1] - label[j][1]);
    }

    static double threshold(double m) {
        const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
        if (m <= phi) return 1.0;
        if (m <= 1.0 / std::sqrt(2.0)) return (1.0 - m) / (m * m);
        return 1.0 / (1.0 + m);
    }

    bool suzuki_pass(double m) const {
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                const double premise_lhs = threshold(m) * dist[i][image[i]];
                if (premise_lhs <= dist[i][j] &&
                    dist[image[i]][image[j]] > m * dist[i][j] + 1e-12)
                    return false;
            }
        return true;
    }

    double minimal_suzuki() const {
        double lo = 0.0, hi = 1.0 - 1e-12;
        REQUIRE(suzuki_pass(hi));
        REQUIRE_FALSE(suzuki_pass(lo));
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            (suzuki_pass(mid) ? hi : lo) = mid;
        }
        return hi;
    }
};

MetricSpace two_point_space() { return make_finite_space({{0, 1}, {1, 0}}); }

std::vector<Point> unit_grid(int n) {
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back(Point::at({static_cast<double>(i) / (n - 1)}));
    return pts;
}

struct RandomAffineCase {
    MetricSpace space;
    ContractionMap map;
    std::vector<Point> sample;
    double norm;
};

RandomAffineCase random_affine_case(Rng& rng) {
    const int dim = rng.uniform_int(1, 2);
    const MetricKind kind = static_cast<MetricKind>(rng.uniform_int(0, 2));
    std::vector<std::vector<double>> matrix(dim, std::vector<double>(dim));
    for (auto& row : matrix)
        for (double& v : row) v = rng.uniform(-1.0, 1.0);
    const double target = rng.uniform(0.05, 0.95);
    const double raw_norm = operator_norm(matrix, kind);
    if (raw_norm > 0.0)
        for (auto& row : matrix)
            for (double& v : row) v *= target / raw_norm;
    std::vector<double> offset(dim);
    for (double& v : offset) v = rng.uniform(-0.5, 0.5);

    RandomAffineCase c{make_continuous_space(kind, dim),
                       make_affine_map(matrix, offset), {}, 0.0};
    c.norm = operator_norm(matrix, kind);
    const int n = rng.uniform_int(6, 14);
    for (int i = 0; i < n; ++i) {
        std::vector<double> coords(dim);
        for (double& v : coords) v = rng.uniform(-2.0, 2.0);
        c.sample.push_back(Point::at(std::move(coords)));
    }
    return c;
}

struct RandomFiniteCase {
    MetricSpace space;
    ContractionMap map;
    std::vector<Point> sample;
};

RandomFiniteCase random_finite_case(Rng& rng) {
    for (;;) {
        const int n = rng.uniform_int(3, 7);
        const MetricSpace ambient = make_continuous_space(MetricKind::taxicab, 2);
        std::vector<Point> cloud;
        for (int i = 0; i < n; ++i)
            cloud.push_back(Point::at({rng.uniform(0, 4), rng.uniform(0, 4)}));
        std::vector<std::vector<double>> table(n, std::vector<double>(n));
        bool degenerate = false;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                table[i][j] = distance(ambient, cloud[i], cloud[j]);
                if (i != j && table[i][j] == 0.0) degenerate = true;
            }
        if (degenerate) continue;
        std::vector<int> images(n);
        for (int& v : images) v = rng.uniform_int(0, n - 1);
        RandomFiniteCase c{make_finite_space(table), make_table_map(images), {}};
        for (int i = 0; i < n; ++i) c.sample.push_back(Point::idx(i));
        return c;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Q threshold
// ---------------------------------------------------------------------------

TEST_CASE("q_of is 1 on the flat branch") {
    CHECK(q_of(0.0) == 1.0);
    CHECK(q_of(0.5) == 1.0);
    CHECK(q_of(q_breakpoints::first) == 1.0);
}

TEST_CASE("q_of branches agree at the first breakpoint") {
    const double m = q_breakpoints::first;
    CHECK(std::abs((1.0 - m) / (m * m) - 1.0) <= 1e-15);
}

TEST_CASE("q_of branches agree at the second breakpoint") {
    const double m = q_breakpoints::second;
    const double middle = (1.0 - m) / (m * m);
    const double upper = 1.0 / (1.0 + m);
    CHECK(std::abs(middle - upper) <= 1e-15);
    CHECK(q_of(m) == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("q_of evaluates the reciprocal branch") {
    CHECK(q_of(0.8) == doctest::Approx(1.0 / 1.8).epsilon(1e-15));
}

TEST_CASE("q_of rejects factors outside [0,1)") {
    CHECK_THROWS_AS(q_of(-0.1), domain_error);
    CHECK_THROWS_AS(q_of(1.0), domain_error);
    CHECK_THROWS_AS(q_of(std::nan("")), domain_error);
}

TEST_CASE("q_of is non-increasing") {
    Rng rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        double m1 = rng.uniform(0.0, 1.0 - 1e-9);
        double m2 = rng.uniform(0.0, 1.0 - 1e-9);
        if (m1 > m2) std::swap(m1, m2);
        CHECK(q_of(m1) >= q_of(m2) - 1e-15);
    }
}

// ---------------------------------------------------------------------------
// Map plumbing
// ---------------------------------------------------------------------------

TEST_CASE("guards and expressions follow the mini grammar") {
    const Guard g = Guard::parse("x1 <= x2");
    CHECK(g.eval(std::vector<double>{1.0, 2.0}));
    CHECK_FALSE(g.eval(std::vector<double>{2.0, 1.0}));

    const Expr e = Expr::parse("1 - 4/(x1 + 11)");
    CHECK(e.eval(std::vector<double>{9.0}) == doctest::Approx(0.8));

    CHECK(Expr::parse("2*x1 - 0.5").eval(std::vector<double>{3.0}) == 5.5);
    CHECK(Expr::parse("-x1*x1").eval(std::vector<double>{2.0}) == -4.0);
    CHECK_THROWS_AS(Expr::parse("x0"), input_error);
    CHECK_THROWS_AS(Expr::parse("1 +"), input_error);
    CHECK_THROWS_AS(Guard::parse("x1"), input_error);
}

TEST_CASE("the five-point fold map lands on table indices") {
    const MetricSpace space = fixtures::fivepoint_space();
    const ContractionMap map = fixtures::fivepoint_map();
    const int expected[5] = {0, 0, 0, 1, 2};
    for (int i = 0; i < 5; ++i)
        CHECK(apply_map(space, map, Point::idx(i)).index == expected[i]);
}

TEST_CASE("piecewise application fails when no branch matches") {
    const MetricSpace line = fixtures::line_space();
    const ContractionMap ladder = fixtures::ladder_map(2);
    CHECK_THROWS_AS(apply_map(line, ladder, Point::at({2.5})), domain_error);
}

TEST_CASE("coordinate-rule images must land on a labeled point of a finite space") {
    const MetricSpace space = make_finite_space({{0, 1}, {1, 0}}, {{0}, {1}});
    const ContractionMap shift =
        make_piecewise_map({{"x1 >= 0", {"x1 + 1"}}});  // 1 -> 2, off the space
    CHECK(apply_map(space, shift, Point::idx(0)).index == 1);
    CHECK_THROWS_AS(apply_map(space, shift, Point::idx(1)), domain_error);
}

TEST_CASE("operator norms per metric kind") {
    const std::vector<std::vector<double>> m = {{0.5, -0.25}, {0.1, 0.3}};
    CHECK(operator_norm(m, MetricKind::taxicab) == doctest::Approx(0.6));    // col sums
    CHECK(operator_norm(m, MetricKind::chebyshev) == doctest::Approx(0.75)); // row sums
    CHECK(operator_norm({{0.5, 0.0}, {0.0, 0.5}}, MetricKind::euclidean) ==
          doctest::Approx(0.5));
    // Scaled rotation: spectral norm equals the scale.
    const double c = 0.3 * std::cos(0.7), s = 0.3 * std::sin(0.7);
    CHECK(operator_norm({{c, -s}, {s, c}}, MetricKind::euclidean) ==
          doctest::Approx(0.3).epsilon(1e-12));
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

TEST_CASE("five-point fixture: suzuki holds at 0.9, banach never") {
    const MetricSpace space = fixtures::fivepoint_space();
    const ContractionMap map = fixtures::fivepoint_map();
    std::vector<Point> all;
    for (int i = 0; i < 5; ++i) all.push_back(Point::idx(i));

    const CheckResult suzuki = check_suzuki(space, map, all, 0.9);
    CHECK(suzuki.pass);
    CHECK(suzuki.pairs_checked == 25);
    // The worked pair (5,4),(4,5) never activates the premise.
    CHECK(suzuki.vacuous_premises >= 2);

    const CheckResult banach = check_banach(space, map, all, 1.0 - 1e-9);
    REQUIRE_FALSE(banach.pass);
    REQUIRE(banach.witness.has_value());
    CHECK(banach.witness->ratio == 4.0);
    CHECK(banach.witness->d_ab == 2.0);
    CHECK(banach.witness->d_images == 8.0);
    const auto [wa, wb] = std::minmax(banach.witness->a, banach.witness->b);
    CHECK(wa == 3);
    CHECK(wb == 4);

    // Library check agrees with the independent oracle across factors.
    const FivepointOracle oracle;
    const PairCache cache(space, map, all);
    for (double m : {0.1, 0.4, 0.7, 0.79, 0.81, 0.9, 0.99})
        CHECK(check_suzuki(cache, m).pass == oracle.suzuki_pass(m));
}

TEST_CASE("halving map passes both conditions at one half") {
    const MetricSpace line = fixtures::line_space();
    const ContractionMap map = fixtures::halving_map();
    const std::vector<Point> grid = unit_grid(21);
    CHECK(check_banach(line, map, grid, 0.5).pass);
    CHECK(check_suzuki(line, map, grid, 0.5).pass);
}

TEST_CASE("identity map fails suzuki with an explicit witness") {
    const MetricSpace space = two_point_space();
    const ContractionMap identity = make_table_map({0, 1});
    const std::vector<Point> sample = {Point::idx(0), Point::idx(1)};
    for (double m : {0.0, 0.5, 0.99}) {
        const CheckResult r = check_suzuki(space, identity, sample, m);
        REQUIRE_FALSE(r.pass);
        REQUIRE(r.witness.has_value());
        CHECK(r.witness->d_images == r.witness->d_ab);  // premise held, no shrink
    }
}

TEST_CASE("constant map is a banach contraction at zero") {
    const MetricSpace space = two_point_space();
    const ContractionMap constant = make_table_map({0, 0});
    const std::vector<Point> sample = {Point::idx(0), Point::idx(1)};
    CHECK(check_banach(space, constant, sample, 0.0).pass);
}

TEST_CASE("checks reject bad inputs") {
    const MetricSpace line = fixtures::line_space();
    const ContractionMap map = fixtures::halving_map();
    CHECK_THROWS_AS(check_suzuki(line, map, {}, 0.5), domain_error);
    CHECK_THROWS_AS(check_suzuki(line, map, unit_grid(3), 1.0), domain_error);
}

TEST_CASE("premise activation under q_of contains activation under threshold 1") {
    Rng rng(424242);
    for (int trial = 0; trial < 60; ++trial) {
        const RandomAffineCase c = random_affine_case(rng);
        const PairCache cache(c.space, c.map, c.sample);
        const double m = rng.uniform(0.0, 0.999);
        const double q = q_of(m);
        for (std::size_t i = 0; i < cache.size(); ++i)
            for (std::size_t j = 0; j < cache.size(); ++j)
                if (cache.displacement(i) <= cache.dist(i, j))
                    CHECK(q * cache.displacement(i) <= cache.dist(i, j));
    }
}

TEST_CASE("banach pass implies suzuki pass at the same factor") {
    Rng rng(1234);
    int banach_passes = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const RandomAffineCase c = random_affine_case(rng);
        const double m = (trial % 2 == 0) ? std::min(c.norm + 0.02, 0.999)
                                          : rng.uniform(0.0, 0.999);
        const PairCache cache(c.space, c.map, c.sample);
        if (check_banach(cache, m).pass) {
            ++banach_passes;
            CHECK(check_suzuki(cache, m).pass);
        }
    }
    for (int trial = 0; trial < 60; ++trial) {
        const RandomFiniteCase c = random_finite_case(rng);
        const double m = rng.uniform(0.0, 0.999);
        const PairCache cache(c.space, c.map, c.sample);
        if (check_banach(cache, m).pass) {
            ++banach_passes;
            CHECK(check_suzuki(cache, m).pass);
        }
    }
    CHECK(banach_passes > 40);  // the inclusion was actually exercised
}

// ---------------------------------------------------------------------------
// Minimal-factor search and classification
// ---------------------------------------------------------------------------

TEST_CASE("minimal_passing_m finds thresholds of monotone predicates") {
    const MinimalFactorResult r =
        minimal_passing_m([](double m) { return m >= 0.35; });
    REQUIRE(r.minimal_m.has_value());
    CHECK(*r.minimal_m == doctest::Approx(0.35).epsilon(1e-7));
    CHECK_FALSE(r.nonmonotone);

    CHECK_FALSE(minimal_passing_m([](double) { return false; }).minimal_m.has_value());
    CHECK(*minimal_passing_m([](double) { return true; }).minimal_m == 0.0);
}

TEST_CASE("minimal_passing_m flags non-monotone predicates") {
    const MinimalFactorResult r = minimal_passing_m(
        [](double m) { return (m >= 0.2 && m <= 0.3) || m >= 0.5; });
    REQUIRE(r.minimal_m.has_value());
    CHECK(*r.minimal_m == doctest::Approx(0.2).epsilon(1e-7));
    CHECK(r.nonmonotone);
}

TEST_CASE("classification: five-point fixture is suzuki_only") {
    const MetricSpace space = fixtures::fivepoint_space();
    const ContractionMap map = fixtures::fivepoint_map();
    std::vector<Point> all;
    for (int i = 0; i < 5; ++i) all.push_back(Point::idx(i));
    const ClassificationReport report = classify(space, map, all, "all:5");

    CHECK(report.verdict == ClassificationReport::Verdict::suzuki_only);
    CHECK_FALSE(report.minimal_m_banach.has_value());
    REQUIRE(report.banach_witness.has_value());
    CHECK(report.banach_witness->ratio == 4.0);
    REQUIRE(report.minimal_m_suzuki.has_value());

    const FivepointOracle oracle;
    CHECK(*report.minimal_m_suzuki ==
          doctest::Approx(oracle.minimal_suzuki()).epsilon(1e-6));
    CHECK(report.pairs_checked == 25);
}

TEST_CASE("classification: halving map is banach with factor one half") {
    const ClassificationReport report = classify(
        fixtures::line_space(), fixtures::halving_map(), unit_grid(101), "grid:101");
    CHECK(report.verdict == ClassificationReport::Verdict::banach);
    REQUIRE(report.minimal_m_banach.has_value());
    CHECK(std::abs(*report.minimal_m_banach - 0.5) <= 1e-6);
    REQUIRE(report.minimal_m_suzuki.has_value());
    CHECK(*report.minimal_m_suzuki <= *report.minimal_m_banach + 1e-9);
    CHECK_FALSE(report.banach_witness.has_value());
}

TEST_CASE("classification: identity is neither") {
    const MetricSpace space = two_point_space();
    const ClassificationReport report =
        classify(space, make_table_map({0, 1}), {Point::idx(0), Point::idx(1)}, "all:2");
    CHECK(report.verdict == ClassificationReport::Verdict::neither);
    CHECK(report.suzuki_witness.has_value());
    CHECK(report.banach_witness.has_value());
}

// ---------------------------------------------------------------------------
// Picard iteration
// ---------------------------------------------------------------------------

TEST_CASE("halving orbit converges to zero") {
    const auto [point, trace] = fixed_point_iterate(
        fixtures::line_space(), fixtures::halving_map(), Point::at({1.0}), 1e-9, 100);
    CHECK(trace.converged());
    CHECK(std::abs(point.coords[0]) <= 1e-9);
}

TEST_CASE("five-point orbit from the far corner reaches the origin in three steps") {
    const auto [point, trace] = fixed_point_iterate(
        fixtures::fivepoint_space(), fixtures::fivepoint_map(), Point::idx(4), 1e-9, 10);
    CHECK(trace.converged());
    CHECK(point.index == 0);
    CHECK(trace.steps.size() <= 3);
}

TEST_CASE("ladder orbit from 9 steps to 0.8 and then decays by thirds") {
    const MetricSpace line = fixtures::line_space();
    const ContractionMap ladder = fixtures::ladder_map();
    const auto [point, trace] =
        fixed_point_iterate(line, ladder, Point::at({9.0}), 1e-9, 200);
    CHECK(trace.converged());
    CHECK(trace.steps[0].dist == doctest::Approx(8.2));
    CHECK(std::abs(point.coords[0]) <= 1e-9);

    // Walk the orbit manually: after the first step the value is 0.8/3^t.
    Point a = apply_map(line, ladder, Point::at({9.0}));
    CHECK(a.coords[0] == doctest::Approx(0.8).epsilon(1e-15));
    for (int t = 1; t <= 6; ++t) {
        a = apply_map(line, ladder, a);
        CHECK(a.coords[0] ==
              doctest::Approx(0.8 / std::pow(3.0, t)).epsilon(1e-12));
    }
}

TEST_CASE("non-contractive orbit reports max_iter") {
    const MetricSpace space = two_point_space();
    const auto [point, trace] =
        fixed_point_iterate(space, make_table_map({1, 0}), Point::idx(0), 1e-9, 7);
    CHECK(trace.stop_reason == StopReason::max_iter);
    CHECK(trace.steps.size() == 7);
}

TEST_CASE("suzuki maps on finite fixtures have a unique fixed point") {
    Rng rng(5150);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const RandomFiniteCase c = random_finite_case(rng);
        const PairCache cache(c.space, c.map, c.sample);
        const MinimalFactorResult suzuki =
            minimal_passing_m([&](double m) { return check_suzuki(cache, m).pass; });
        if (!suzuki.minimal_m) continue;
        ++checked;
        int fixed = -1;
        for (const Point& start : c.sample) {
            const auto [point, trace] =
                fixed_point_iterate(c.space, c.map, start, 1e-9, 100);
            REQUIRE(trace.converged());
            if (fixed < 0) fixed = point.index;
            CHECK(point.index == fixed);
        }
    }
    CHECK(checked > 5);
}
