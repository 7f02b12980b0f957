#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sifs/compact_set.hpp"
#include "sifs/metric.hpp"

namespace sifs {

/// Seeded generator producing the same stream on every platform: values
/// are derived from raw mt19937_64 output, never from distribution
/// objects, whose implementations vary.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::mt19937_64 gen_;
};

/// Builds a point sample from a spec string:
///   "grid:N"    N points per axis over the box (continuous spaces)
///   "random:N"  N seeded uniform points in the box
///   "all"       every point of a finite space
/// Finite spaces always sample all indices regardless of spec. Returns the
/// sample and a normalized description for reproducibility notes.
struct SampleSpec {
    std::vector<Point> points;
    std::string description;
};

SampleSpec make_sample(const MetricSpace& space, const std::string& spec, const Box& box,
                       std::uint64_t seed);

/// Default unit box [0,1]^d for a continuous space.
Box unit_box(int dimension);

}  // namespace sifs
