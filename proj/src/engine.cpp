#include "sifs/engine.hpp"

#include <algorithm>
#include <cmath>

namespace sifs {

namespace {

constexpr double kDomainSlack = 1e-9;
constexpr int kStallWindow = 5;

double resolve_factor(const MetricSpace& space, const ContractionMap& map,
                      const std::vector<Point>& sample, std::size_t map_index,
                      bool& estimated) {
    if (map.declared_m) {
        estimated = false;
        if (!(*map.declared_m >= 0.0 && *map.declared_m < 1.0))
            throw domain_error("make_sifs: declared factor of map " +
                               std::to_string(map_index) + " outside [0,1)");
        return *map.declared_m;
    }
    estimated = true;
    const double lipschitz = empirical_lipschitz(space, map, sample);
    if (lipschitz < 1.0) return lipschitz;
    // Not a Banach contraction on the sample; fall back to the smallest
    // factor passing the Suzuki check.
    const PairCache cache(space, map, sample);
    const MinimalFactorResult suzuki =
        minimal_passing_m([&](double m) { return check_suzuki(cache, m).pass; });
    if (!suzuki.minimal_m)
        throw domain_error("make_sifs: map " + std::to_string(map_index) +
                           " passes no Suzuki factor below 1 on the sample");
    return *suzuki.minimal_m;
}

}  // namespace

Sifs make_sifs(MetricSpace space, std::vector<ContractionMap> maps, double resolution,
               const std::vector<Point>& verification_sample, std::optional<Box> domain) {
    if (maps.empty()) throw domain_error("make_sifs: at least one map required");
    if (!space.is_finite() && !(resolution > 0.0))
        throw domain_error("make_sifs: continuous spaces need a positive resolution");
    if (verification_sample.empty())
        throw domain_error("make_sifs: empty verification sample");

    Sifs sifs;
    sifs.space = std::move(space);
    sifs.maps = std::move(maps);
    sifs.resolution = sifs.space.is_finite() ? 0.0 : resolution;
    sifs.domain = std::move(domain);

    for (std::size_t i = 0; i < sifs.maps.size(); ++i) {
        const ContractionMap& map = sifs.maps[i];
        if (!map.continuous)
            throw domain_error("make_sifs: map " + std::to_string(i) +
                               " is not flagged continuous; the set operator "
                               "needs continuous maps");
        bool estimated = false;
        const double factor =
            resolve_factor(sifs.space, map, verification_sample, i, estimated);
        const CheckResult check = check_suzuki(sifs.space, map, verification_sample, factor);
        if (!check.pass)
            throw domain_error("make_sifs: map " + std::to_string(i) +
                               " fails the Suzuki check at factor " +
                               std::to_string(factor) + " on the sample");
        sifs.factors.push_back(factor);
        sifs.factor_estimated.push_back(estimated);
    }
    sifs.combined_factor =
        *std::max_element(sifs.factors.begin(), sifs.factors.end());
    return sifs;
}

CompactSet hutchinson_apply(const Sifs& sifs, const CompactSet& a) {
    require_belongs(sifs.space, a, "hutchinson_apply");
    std::vector<Point> images;
    images.reserve(a.size() * sifs.maps.size());
    for (std::size_t i = 0; i < sifs.maps.size(); ++i) {
        for (const Point& p : a.points()) {
            Point image = apply_map(sifs.space, sifs.maps[i], p);
            if (sifs.domain && !sifs.domain->contains(image, kDomainSlack))
                throw domain_error("hutchinson_apply: image of map " + std::to_string(i) +
                                   " escapes the declared bounding domain");
            images.push_back(std::move(image));
        }
    }
    if (sifs.space.is_finite()) {
        std::vector<int> indices;
        indices.reserve(images.size());
        for (const Point& p : images) indices.push_back(p.index);
        return CompactSet::of_indices(std::move(indices));
    }
    return CompactSet::quantized(std::move(images), sifs.resolution);
}

CompactSet image_set(const MetricSpace& space, const ContractionMap& map,
                     const CompactSet& a) {
    if (!map.continuous)
        throw domain_error("image_set: only continuous maps act on compact sets");
    require_belongs(space, a, "image_set");
    std::vector<Point> images;
    images.reserve(a.size());
    for (const Point& p : a.points()) images.push_back(apply_map(space, map, p));
    if (space.is_finite()) {
        std::vector<int> indices;
        indices.reserve(images.size());
        for (const Point& p : images) indices.push_back(p.index);
        return CompactSet::of_indices(std::move(indices));
    }
    const double resolution = a.resolution() > 0.0 ? a.resolution() : 1.0;
    return CompactSet::exact(std::move(images), resolution);
}

// ---------------------------------------------------------------------------
// Attractor iteration
// ---------------------------------------------------------------------------

AttractorResult iterate_attractor(const Sifs& sifs, const CompactSet& a0, double tol,
                                  int max_iter) {
    if (max_iter < 1) throw domain_error("iterate_attractor: max_iter must be >= 1");
    if (!(tol > 0.0)) throw domain_error("iterate_attractor: tol must be positive");
    if (!sifs.space.is_finite() && tol < 2.0 * sifs.resolution)
        throw domain_error("iterate_attractor: tol below twice the grid resolution "
                           "cannot be met by quantized sets");
    require_belongs(sifs.space, a0, "iterate_attractor");

    // Bring the seed onto the system grid so successive distances are
    // between same-grid sets from the first step on.
    CompactSet current = sifs.space.is_finite()
                         ? a0
                         : CompactSet::quantized(a0.points(), sifs.resolution);

    ConvergenceTrace trace;
    trace.stop_reason = StopReason::max_iter;
    double prev = 0.0;
    double estimated_factor = 0.0;
    int consecutive_flat = 0;

    for (int t = 1; t <= max_iter; ++t) {
        CompactSet next = hutchinson_apply(sifs, current);
        const double h = hausdorff_auto(sifs.space, current, next);
        TraceStep step;
        step.iter = t;
        step.dist = h;
        step.ratio = (t > 1 && prev > 0.0) ? h / prev : 0.0;
        step.cardinality = next.size();
        trace.steps.push_back(step);
        if (t > 1 && h > prev) ++trace.residual_increases;

        // Ratios are only meaningful while both distances clear the grid
        // scale; below that, quantization noise dominates.
        const double meaningful = kProbeMeaningfulFactor * sifs.resolution;
        if (t > 1 && prev > meaningful && h > meaningful)
            estimated_factor = std::max(estimated_factor, h / prev);

        current = std::move(next);
        if (h < tol) {
            trace.stop_reason = StopReason::tolerance_met;
            break;
        }
        if (t > 1 && step.ratio >= 1.0) {
            if (++consecutive_flat >= kStallWindow) {
                trace.stop_reason = StopReason::stalled;
                break;
            }
        } else {
            consecutive_flat = 0;
        }
        prev = h;
    }

    AttractorResult result{std::move(current), std::move(trace), {}};
    result.certificate.tolerance = tol;
    result.certificate.combined_factor = sifs.combined_factor;
    result.certificate.estimated_factor = estimated_factor;
    result.certificate.stop_reason = result.trace.stop_reason;
    result.certificate.iterations = static_cast<int>(result.trace.steps.size());
    result.certificate.self_referential_residual =
        hausdorff_auto(sifs.space, result.attractor, hutchinson_apply(sifs, result.attractor));
    return result;
}

SeedsRunResult run_attractor_seeds(const Sifs& sifs, const std::vector<CompactSet>& seeds,
                                   double tol, int max_iter) {
    if (seeds.empty()) throw domain_error("run_attractor_seeds: no seeds");
    SeedsRunResult run;
    for (const CompactSet& seed : seeds)
        run.per_seed.push_back(iterate_attractor(sifs, seed, tol, max_iter));
    for (std::size_t i = 0; i < run.per_seed.size(); ++i)
        for (std::size_t j = i + 1; j < run.per_seed.size(); ++j)
            run.start_independence_residual = std::max(
                run.start_independence_residual,
                hausdorff_auto(sifs.space, run.per_seed[i].attractor,
                               run.per_seed[j].attractor));
    for (AttractorResult& r : run.per_seed)
        r.certificate.start_independence_residual = run.start_independence_residual;
    return run;
}

// ---------------------------------------------------------------------------
// Hyperspace diagnostics
// ---------------------------------------------------------------------------

HyperspaceFactorEstimate estimate_hyperspace_factor(
    const MetricSpace& space, const SetMap& set_map,
    const std::vector<std::pair<CompactSet, CompactSet>>& probes,
    double reference_factor, double resolution) {
    HyperspaceFactorEstimate estimate;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        const auto& [a, b] = probes[i];
        ProbePairReport report;
        report.index = i;
        report.h_ab = hausdorff_auto(space, a, b);
        if (report.h_ab <= kProbeMeaningfulFactor * resolution) {
            report.skipped = true;
            ++estimate.skipped;
            estimate.pairs.push_back(report);
            continue;
        }
        report.h_images = hausdorff_auto(space, set_map(a), set_map(b));
        report.ratio = report.h_images / report.h_ab;
        report.flagged = report.ratio > reference_factor + 0.01;
        if (report.flagged) ++estimate.flagged;
        estimate.max_ratio = std::max(estimate.max_ratio, report.ratio);
        estimate.pairs.push_back(report);
    }
    return estimate;
}

HyperspaceFactorEstimate estimate_hyperspace_factor(
    const Sifs& sifs, const std::vector<std::pair<CompactSet, CompactSet>>& probes) {
    return estimate_hyperspace_factor(
        sifs.space, [&](const CompactSet& s) { return hutchinson_apply(sifs, s); },
        probes, sifs.combined_factor, sifs.resolution);
}

HyperspaceFactorEstimate estimate_hyperspace_factor(
    const MetricSpace& space, const ContractionMap& map,
    const std::vector<std::pair<CompactSet, CompactSet>>& probes,
    double reference_factor, double resolution) {
    return estimate_hyperspace_factor(
        space, [&](const CompactSet& s) { return image_set(space, map, s); }, probes,
        reference_factor, resolution);
}

HyperspaceProbeCache::HyperspaceProbeCache(
    const MetricSpace& space, const ContractionMap& map,
    std::vector<std::pair<CompactSet, CompactSet>> probes) {
    h_ab_.reserve(probes.size());
    h_a_ta_.reserve(probes.size());
    h_images_.reserve(probes.size());
    for (const auto& [a, b] : probes) {
        const CompactSet ta = image_set(space, map, a);
        const CompactSet tb = image_set(space, map, b);
        h_ab_.push_back(hausdorff_auto(space, a, b));
        h_a_ta_.push_back(hausdorff_auto(space, a, ta));
        h_images_.push_back(hausdorff_auto(space, ta, tb));
    }
}

HyperspaceCheckResult check_suzuki_hyperspace(const HyperspaceProbeCache& cache,
                                              double m) {
    if (!(m >= 0.0 && m < 1.0))
        throw domain_error("check_suzuki_hyperspace: factor must lie in [0,1)");
    const double q = q_of(m);
    HyperspaceCheckResult result;
    result.pairs_checked = cache.size();
    for (std::size_t i = 0; i < cache.size(); ++i) {
        if (!(q * cache.h_a_ta(i) <= cache.h_ab(i))) {
            ++result.vacuous_premises;
            continue;
        }
        if (cache.h_images(i) > m * cache.h_ab(i) + kCheckSlack) {
            if (result.pass) {
                result.pass = false;
                result.witness_index = i;
                result.witness_h_ab = cache.h_ab(i);
                result.witness_h_images = cache.h_images(i);
            }
        }
    }
    return result;
}

HyperspaceCheckResult check_suzuki_hyperspace(
    const MetricSpace& space, const ContractionMap& map,
    const std::vector<std::pair<CompactSet, CompactSet>>& probes, double m) {
    return check_suzuki_hyperspace(HyperspaceProbeCache(space, map, probes), m);
}

}  // namespace sifs
