#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sifs/contraction.hpp"
#include "sifs/metric.hpp"

namespace sifs {

// ---------------------------------------------------------------------------
// Q threshold function
// ---------------------------------------------------------------------------

namespace q_breakpoints {
/// (sqrt(5)-1)/2: below this the threshold is identically 1.
extern const double first;
/// 1/sqrt(2): switch to the 1/(1+m) branch.
extern const double second;
}  // namespace q_breakpoints

/// The non-increasing threshold Q(m) on [0,1):
///   1 on [0, (sqrt(5)-1)/2], (1-m)/m^2 up to 1/sqrt(2), then 1/(1+m).
/// Adjacent branches agree at both breakpoints. Throws domain_error for
/// m outside [0,1).
double q_of(double m);

// ---------------------------------------------------------------------------
// Condition checks over finite samples
// ---------------------------------------------------------------------------

/// Inequalities are checked as <= with this absolute slack.
inline constexpr double kCheckSlack = 1e-12;

struct Witness {
    std::size_t a = 0, b = 0;  // sample indices of the pair
    double d_ab = 0.0;         // d(a,b)
    double d_images = 0.0;     // d(Ta,Tb)
    double ratio = 0.0;        // d(Ta,Tb)/d(a,b), 0 if d_ab == 0
};

struct CheckResult {
    bool pass = true;
    std::optional<Witness> witness;
    std::size_t pairs_checked = 0;
    std::size_t vacuous_premises = 0;  // pairs where the Suzuki premise failed
};

/// Precomputed images and distances for one (space, map, sample) triple so
/// repeated checks at different m are cheap. Pure data; safe to share.
class PairCache {
public:
    PairCache(const MetricSpace& space, const ContractionMap& map,
              std::vector<Point> sample);

    std::size_t size() const { return sample_.size(); }
    const std::vector<Point>& sample() const { return sample_; }
    const Point& image(std::size_t i) const { return images_[i]; }
    double dist(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
    double image_dist(std::size_t i, std::size_t j) const { return dt_[i * n_ + j]; }
    double displacement(std::size_t i) const { return disp_[i]; }  // d(a,Ta)

private:
    std::size_t n_;
    std::vector<Point> sample_;
    std::vector<Point> images_;
    std::vector<double> d_, dt_, disp_;
};

/// Suzuki condition at factor m over all ordered sample pairs: whenever
/// Q(m) d(a,Ta) <= d(a,b), require d(Ta,Tb) <= m d(a,b) + slack. The
/// witness (on failure) is the first violating pair in index order.
CheckResult check_suzuki(const MetricSpace& space, const ContractionMap& map,
                         const std::vector<Point>& sample, double m);
CheckResult check_suzuki(const PairCache& cache, double m);

/// Banach condition at factor m over all ordered pairs with a != b:
/// d(Ta,Tb) <= m d(a,b) + slack. The witness (on failure) is the
/// worst-ratio pair, ties broken by smallest pair index.
CheckResult check_banach(const MetricSpace& space, const ContractionMap& map,
                         const std::vector<Point>& sample, double m);
CheckResult check_banach(const PairCache& cache, double m);

// ---------------------------------------------------------------------------
// Minimal-factor search and classification
// ---------------------------------------------------------------------------

struct MinimalFactorResult {
    std::optional<double> minimal_m;  // empty if the predicate never passes
    bool nonmonotone = false;         // a grid point above the first pass failed
};

/// Smallest m in [0,1) passing the predicate, located on a 1e-3 grid and
/// refined by bisection to 1e-9. The grid is augmented with 1-1e-9 so
/// factors arbitrarily close to 1 are still found. Assumes pass is
/// monotone in m; grid points contradicting that are flagged.
MinimalFactorResult minimal_passing_m(const std::function<bool(double)>& passes);

struct ClassificationReport {
    enum class Verdict { banach, suzuki_only, neither };
    Verdict verdict = Verdict::neither;
    std::optional<double> minimal_m_banach;
    std::optional<double> minimal_m_suzuki;
    std::optional<Witness> banach_witness;  // worst pair when Banach fails
    std::optional<Witness> suzuki_witness;  // violating pair when Suzuki fails
    std::size_t pairs_checked = 0;
    std::size_t premise_vacuous_count = 0;  // at the minimal passing Suzuki m
    bool suzuki_nonmonotone = false;
    std::string sampling;  // reproducibility note, e.g. "grid:100 box=[0,1]"
};

std::string to_string(ClassificationReport::Verdict verdict);

/// Searches for the minimal factors passing each condition on the sample
/// and classifies the map. Minimality is relative to the sample.
ClassificationReport classify(const MetricSpace& space, const ContractionMap& map,
                              const std::vector<Point>& sample,
                              std::string sampling_note = "");

// ---------------------------------------------------------------------------
// Picard iteration
// ---------------------------------------------------------------------------

enum class StopReason { tolerance_met, max_iter, stalled };
std::string to_string(StopReason reason);

struct TraceStep {
    int iter = 0;
    double dist = 0.0;   // successive distance at this step
    double ratio = 0.0;  // dist / previous dist, 0 on the first step
    std::size_t cardinality = 1;
};

struct ConvergenceTrace {
    std::vector<TraceStep> steps;
    StopReason stop_reason = StopReason::max_iter;
    // Steps whose successive distance grew. Logged, not fatal: affine
    // systems should never produce one, nonlinear ones occasionally do.
    std::size_t residual_increases = 0;
    bool converged() const { return stop_reason == StopReason::tolerance_met; }
};

/// Iterates a <- T(a) until d(a_t, a_{t+1}) < tol or max_iter. Returns the
/// post-step point, so on convergence d(result, T(result)) < tol. Hitting
/// max_iter is reported through the trace, not an error.
std::pair<Point, ConvergenceTrace> fixed_point_iterate(const MetricSpace& space,
                                                       const ContractionMap& map,
                                                       const Point& start, double tol,
                                                       int max_iter);

}  // namespace sifs
