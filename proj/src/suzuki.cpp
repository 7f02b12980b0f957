#include "sifs/suzuki.hpp"

#include <cmath>

namespace sifs {

namespace q_breakpoints {
const double first = (std::sqrt(5.0) - 1.0) / 2.0;
const double second = 1.0 / std::sqrt(2.0);
}  // namespace q_breakpoints

double q_of(double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw domain_error("q_of: contractivity factor must lie in [0,1)");
    if (m <= q_breakpoints::first) return 1.0;
    if (m <= q_breakpoints::second) return (1.0 - m) / (m * m);
    return 1.0 / (1.0 + m);
}

// ---------------------------------------------------------------------------
// PairCache
// ---------------------------------------------------------------------------

PairCache::PairCache(const MetricSpace& space, const ContractionMap& map,
                     std::vector<Point> sample)
    : n_(sample.size()), sample_(std::move(sample)) {
    if (n_ == 0) throw domain_error("check: empty sample");
    images_.reserve(n_);
    for (const Point& p : sample_) images_.push_back(apply_map(space, map, p));
    d_.resize(n_ * n_);
    dt_.resize(n_ * n_);
    disp_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        disp_[i] = distance(space, sample_[i], images_[i]);
        for (std::size_t j = 0; j < n_; ++j) {
            d_[i * n_ + j] = distance(space, sample_[i], sample_[j]);
            dt_[i * n_ + j] = distance(space, images_[i], images_[j]);
        }
    }
}

// ---------------------------------------------------------------------------
// Condition checks
// ---------------------------------------------------------------------------

namespace {

void require_factor(double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw domain_error("check: contractivity factor must lie in [0,1)");
}

Witness make_witness(const PairCache& c, std::size_t i, std::size_t j) {
    Witness w;
    w.a = i;
    w.b = j;
    w.d_ab = c.dist(i, j);
    w.d_images = c.image_dist(i, j);
    w.ratio = w.d_ab > 0.0 ? w.d_images / w.d_ab : 0.0;
    return w;
}

}  // namespace

CheckResult check_suzuki(const PairCache& cache, double m) {
    require_factor(m);
    const double q = q_of(m);
    const std::size_t n = cache.size();
    CheckResult result;
    result.pairs_checked = n * n;
    for (std::size_t i = 0; i < n; ++i) {
        const double threshold = q * cache.displacement(i);
        for (std::size_t j = 0; j < n; ++j) {
            const double d_ab = cache.dist(i, j);
            if (!(threshold <= d_ab)) {
                ++result.vacuous_premises;
                continue;
            }
            if (cache.image_dist(i, j) > m * d_ab + kCheckSlack) {
                if (result.pass) {
                    result.pass = false;
                    result.witness = make_witness(cache, i, j);
                }
            }
        }
    }
    return result;
}

CheckResult check_banach(const PairCache& cache, double m) {
    require_factor(m);
    const std::size_t n = cache.size();
    CheckResult result;
    result.pairs_checked = n * (n - 1);
    double worst_ratio = -1.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d_ab = cache.dist(i, j);
            const double d_im = cache.image_dist(i, j);
            if (d_im > m * d_ab + kCheckSlack) {
                result.pass = false;
                const double ratio = d_ab > 0.0 ? d_im / d_ab : 0.0;
                if (ratio > worst_ratio) {
                    worst_ratio = ratio;
                    result.witness = make_witness(cache, i, j);
                }
            }
        }
    return result;
}

CheckResult check_suzuki(const MetricSpace& space, const ContractionMap& map,
                         const std::vector<Point>& sample, double m) {
    return check_suzuki(PairCache(space, map, sample), m);
}

CheckResult check_banach(const MetricSpace& space, const ContractionMap& map,
                         const std::vector<Point>& sample, double m) {
    return check_banach(PairCache(space, map, sample), m);
}

// ---------------------------------------------------------------------------
// Minimal-factor search
// ---------------------------------------------------------------------------

MinimalFactorResult minimal_passing_m(const std::function<bool(double)>& passes) {
    constexpr double kGridStep = 1e-3;
    constexpr double kBisectWidth = 1e-9;
    constexpr double kTopProbe = 1.0 - 1e-9;

    std::vector<double> grid;
    grid.reserve(1001);
    for (int k = 0; k < 1000; ++k) grid.push_back(k * kGridStep);
    grid.push_back(kTopProbe);

    MinimalFactorResult result;
    std::size_t first_pass = grid.size();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const bool ok = passes(grid[k]);
        if (ok && first_pass == grid.size()) first_pass = k;
        if (!ok && first_pass < k) result.nonmonotone = true;
    }
    if (first_pass == grid.size()) return result;
    if (first_pass == 0) {
        result.minimal_m = 0.0;
        return result;
    }
    double lo = grid[first_pass - 1];  // fails
    double hi = grid[first_pass];      // passes
    while (hi - lo > kBisectWidth) {
        const double mid = 0.5 * (lo + hi);
        if (passes(mid))
            hi = mid;
        else
            lo = mid;
    }
    result.minimal_m = hi;
    return result;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

std::string to_string(ClassificationReport::Verdict verdict) {
    switch (verdict) {
        case ClassificationReport::Verdict::banach: return "banach";
        case ClassificationReport::Verdict::suzuki_only: return "suzuki_only";
        case ClassificationReport::Verdict::neither: return "neither";
    }
    return "unknown";
}

ClassificationReport classify(const MetricSpace& space, const ContractionMap& map,
                              const std::vector<Point>& sample,
                              std::string sampling_note) {
    const PairCache cache(space, map, sample);
    constexpr double kTopProbe = 1.0 - 1e-9;

    const MinimalFactorResult banach =
        minimal_passing_m([&](double m) { return check_banach(cache, m).pass; });
    const MinimalFactorResult suzuki =
        minimal_passing_m([&](double m) { return check_suzuki(cache, m).pass; });

    ClassificationReport report;
    report.minimal_m_banach = banach.minimal_m;
    report.minimal_m_suzuki = suzuki.minimal_m;
    report.suzuki_nonmonotone = suzuki.nonmonotone;
    report.sampling = std::move(sampling_note);
    report.pairs_checked = cache.size() * cache.size();

    if (banach.minimal_m) {
        report.verdict = ClassificationReport::Verdict::banach;
    } else {
        report.banach_witness = check_banach(cache, kTopProbe).witness;
        report.verdict = suzuki.minimal_m ? ClassificationReport::Verdict::suzuki_only
                                          : ClassificationReport::Verdict::neither;
    }
    const CheckResult at_reported =
        check_suzuki(cache, suzuki.minimal_m ? *suzuki.minimal_m : kTopProbe);
    report.premise_vacuous_count = at_reported.vacuous_premises;
    if (!suzuki.minimal_m) report.suzuki_witness = at_reported.witness;
    return report;
}

// ---------------------------------------------------------------------------
// Picard iteration
// ---------------------------------------------------------------------------

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::tolerance_met: return "tolerance_met";
        case StopReason::max_iter: return "max_iter";
        case StopReason::stalled: return "stalled";
    }
    return "unknown";
}

std::pair<Point, ConvergenceTrace> fixed_point_iterate(const MetricSpace& space,
                                                       const ContractionMap& map,
                                                       const Point& start, double tol,
                                                       int max_iter) {
    if (!(tol > 0.0)) throw domain_error("fixed_point_iterate: tol must be positive");
    if (max_iter < 1) throw domain_error("fixed_point_iterate: max_iter must be >= 1");
    require_belongs(space, start, "fixed_point_iterate");

    Point a = start;
    ConvergenceTrace trace;
    trace.stop_reason = StopReason::max_iter;
    double prev = 0.0;
    for (int t = 1; t <= max_iter; ++t) {
        Point b = apply_map(space, map, a);
        const double dist = distance(space, a, b);
        TraceStep step;
        step.iter = t;
        step.dist = dist;
        step.ratio = (t > 1 && prev > 0.0) ? dist / prev : 0.0;
        trace.steps.push_back(step);
        if (t > 1 && dist > prev) ++trace.residual_increases;
        a = std::move(b);
        if (dist < tol) {
            trace.stop_reason = StopReason::tolerance_met;
            break;
        }
        prev = dist;
    }
    return {std::move(a), std::move(trace)};
}

}  // namespace sifs
