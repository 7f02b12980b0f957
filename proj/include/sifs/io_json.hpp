#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sifs/contraction.hpp"
#include "sifs/engine.hpp"
#include "sifs/metric.hpp"
#include "sifs/suzuki.hpp"

namespace sifs {

using json = nlohmann::json;

// Spaces:  {"kind":"taxicab","dimension":2}
//          {"kind":"finite_table","table":[[...]],"labels":[[x,y],...]}
MetricSpace space_from_json(const json& j);
json space_to_json(const MetricSpace& space);

// Maps:    {"type":"affine","matrix":[[...]],"offset":[...]}
//          {"type":"table","images":[...]}
//          {"type":"piecewise","branches":[{"guard":"x1<=x2","image":["x1","0"]},...]}
// plus optional "m" (declared factor) and "continuous" (default true).
ContractionMap map_from_json(const json& j);
json map_to_json(const ContractionMap& map);

// Points: [x1,...,xd] for continuous spaces, a bare index for finite ones.
Point point_from_json(const json& j);
json point_to_json(const Point& p);

struct SifsConfig {
    MetricSpace space;
    std::vector<ContractionMap> maps;
    double resolution = 1e-3;
    double tolerance = 1e-3;
    int max_iter = 100;
    std::vector<std::vector<Point>> seeds;
    std::optional<Box> domain;
    std::string sample = "";  // verification sample spec; defaulted per dimension
    std::uint64_t rng_seed = 1;
};

SifsConfig config_from_json(const json& j);
json config_to_json(const SifsConfig& config);

/// Assembles the validated system plus quantized seed sets from a config.
struct BuiltSystem {
    Sifs sifs;
    std::vector<CompactSet> seeds;
    std::string sample_description;
};
BuiltSystem build_system(const SifsConfig& config);

/// Reads and parses a JSON file; parse failures carry the file name and
/// byte position.
json load_json_file(const std::string& path);

// Report serialization. Witness pairs are resolved against the sample so
// reports show the actual points (with labels, when the space has them).
json classification_to_json(const ClassificationReport& report,
                            const std::vector<Point>& sample,
                            const MetricSpace& space);
json certificate_to_json(const AttractorCertificate& cert);

}  // namespace sifs
