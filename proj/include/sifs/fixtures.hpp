#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sifs/io_json.hpp"

namespace sifs::fixtures {

/// Bundled reference systems, shipped as the same JSON documents the
/// loaders accept:
///   fivepoint   5-point taxicab space with the axis-fold map
///   halving     T(a) = a/2 on the line
///   ladder      x/3 on [0,1] plus the rungs {4n, 4n+1}, truncated
///   cantor      two-map middle-third system on [0,1]
///   sierpinski  three half-scale maps toward triangle vertices
struct FixtureFile {
    std::string name;     // file name, e.g. "cantor.json"
    std::string content;  // JSON text
};

const std::vector<FixtureFile>& fixture_files();

/// FNV-1a hash of the bundled fixture contents; embedded in the version
/// string so a build can be tied to its reference data.
std::uint64_t suite_hash();
std::string suite_hash_hex();

inline constexpr int kLadderDefaultRungs = 25;

MetricSpace fivepoint_space();
ContractionMap fivepoint_map();
MetricSpace line_space();
ContractionMap halving_map();
ContractionMap ladder_map(int max_rungs = kLadderDefaultRungs);

/// Canonical analysis sample for the ladder: a grid on [0,1] plus every
/// rung pair 4n, 4n+1 up to max_rungs.
std::vector<Point> ladder_sample(int max_rungs = kLadderDefaultRungs,
                                 int unit_grid_points = 11);

SifsConfig cantor_config();
SifsConfig sierpinski_config();

}  // namespace sifs::fixtures
