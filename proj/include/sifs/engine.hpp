#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "sifs/compact_set.hpp"
#include "sifs/hausdorff.hpp"
#include "sifs/suzuki.hpp"

namespace sifs {

/// A finite family of continuous contraction maps over one space, with
/// per-map contractivity factors (declared or estimated from a sample) and
/// their maximum as the factor of the induced set operator.
struct Sifs {
    MetricSpace space;
    std::vector<ContractionMap> maps;
    std::vector<double> factors;
    std::vector<bool> factor_estimated;  // true where the factor came from a sample
    double combined_factor = 0.0;
    double resolution = 0.0;  // quantization grid for continuous spaces
    std::optional<Box> domain;  // optional bounding domain images must stay in
};

/// Validates and assembles an SIFS: every map must be flagged continuous,
/// and each map must pass the Suzuki check at its factor on the given
/// sample. Maps without a declared factor get one estimated from the
/// sample (pairwise Lipschitz maximum, falling back to the minimal factor
/// passing the Suzuki check). Throws domain_error when no factor below 1
/// works.
Sifs make_sifs(MetricSpace space, std::vector<ContractionMap> maps, double resolution,
               const std::vector<Point>& verification_sample,
               std::optional<Box> domain = {});

/// One application of the set operator A -> union of map images, quantized
/// to the system resolution. Reports (with the map index) any image that
/// escapes the declared bounding domain.
CompactSet hutchinson_apply(const Sifs& sifs, const CompactSet& a);

/// Pointwise image {T(a) : a in A} of a single continuous map, kept exact
/// (no re-quantization): the set map a continuous map induces on compact
/// sets. Throws for maps not flagged continuous.
CompactSet image_set(const MetricSpace& space, const ContractionMap& map,
                     const CompactSet& a);

// ---------------------------------------------------------------------------
// Attractor iteration
// ---------------------------------------------------------------------------

struct AttractorCertificate {
    double self_referential_residual = 0.0;  // h(F, TF) after stopping
    double tolerance = 0.0;
    double start_independence_residual = 0.0;  // max pairwise h across seeds
    double estimated_factor = 0.0;  // max meaningful successive ratio observed
    double combined_factor = 0.0;   // base-space max factor of the system
    StopReason stop_reason = StopReason::max_iter;
    int iterations = 0;
};

struct AttractorResult {
    CompactSet attractor;
    ConvergenceTrace trace;
    AttractorCertificate certificate;
};

/// Iterates the set operator from a0 until successive Hausdorff distance
/// drops below tol. Requires tol >= 2 * resolution on continuous spaces;
/// stopping below the grid scale is meaningless. Hitting max_iter returns
/// the best iterate with stop_reason = max_iter; five consecutive
/// non-contracting steps stop with stop_reason = stalled.
AttractorResult iterate_attractor(const Sifs& sifs, const CompactSet& a0, double tol,
                                  int max_iter);

struct SeedsRunResult {
    std::vector<AttractorResult> per_seed;
    double start_independence_residual = 0.0;
    const AttractorResult& primary() const { return per_seed.front(); }
};

/// Runs iterate_attractor from every seed and fills in the cross-seed
/// agreement residual on every certificate.
SeedsRunResult run_attractor_seeds(const Sifs& sifs, const std::vector<CompactSet>& seeds,
                                   double tol, int max_iter);

// ---------------------------------------------------------------------------
// Hyperspace contraction diagnostics
// ---------------------------------------------------------------------------

/// Probe pairs below this multiple of the resolution are skipped as
/// numerically meaningless.
inline constexpr double kProbeMeaningfulFactor = 10.0;

struct ProbePairReport {
    std::size_t index = 0;
    double h_ab = 0.0;
    double h_images = 0.0;
    double ratio = 0.0;
    bool skipped = false;  // h(A,B) too small to give a meaningful ratio
    bool flagged = false;  // ratio exceeded reference factor + 0.01
};

struct HyperspaceFactorEstimate {
    double max_ratio = 0.0;
    std::size_t flagged = 0;
    std::size_t skipped = 0;
    std::vector<ProbePairReport> pairs;
};

using SetMap = std::function<CompactSet(const CompactSet&)>;

HyperspaceFactorEstimate estimate_hyperspace_factor(
    const MetricSpace& space, const SetMap& set_map,
    const std::vector<std::pair<CompactSet, CompactSet>>& probes,
    double reference_factor, double resolution);

/// Probes the full set operator of the system (reference factor = the
/// system's combined factor).
HyperspaceFactorEstimate estimate_hyperspace_factor(
    const Sifs& sifs, const std::vector<std::pair<CompactSet, CompactSet>>& probes);

/// Probes the exact set map of a single continuous contraction.
HyperspaceFactorEstimate estimate_hyperspace_factor(
    const MetricSpace& space, const ContractionMap& map,
    const std::vector<std::pair<CompactSet, CompactSet>>& probes,
    double reference_factor, double resolution);

/// Precomputed Hausdorff quantities for checking the lifted Suzuki
/// condition at many factors cheaply.
class HyperspaceProbeCache {
public:
    HyperspaceProbeCache(const MetricSpace& space, const ContractionMap& map,
                         std::vector<std::pair<CompactSet, CompactSet>> probes);

    std::size_t size() const { return h_ab_.size(); }
    double h_ab(std::size_t i) const { return h_ab_[i]; }
    double h_a_ta(std::size_t i) const { return h_a_ta_[i]; }
    double h_images(std::size_t i) const { return h_images_[i]; }

private:
    std::vector<double> h_ab_, h_a_ta_, h_images_;
};

struct HyperspaceCheckResult {
    bool pass = true;
    std::optional<std::size_t> witness_index;  // probe index of first violation
    double witness_h_ab = 0.0, witness_h_images = 0.0;
    std::size_t pairs_checked = 0;
    std::size_t vacuous_premises = 0;
};

/// Lifted Suzuki condition on ordered probe pairs: whenever
/// Q(m) h(A,TA) <= h(A,B), require h(TA,TB) <= m h(A,B) + slack.
HyperspaceCheckResult check_suzuki_hyperspace(const HyperspaceProbeCache& cache,
                                              double m);
HyperspaceCheckResult check_suzuki_hyperspace(
    const MetricSpace& space, const ContractionMap& map,
    const std::vector<std::pair<CompactSet, CompactSet>>& probes, double m);

}  // namespace sifs
