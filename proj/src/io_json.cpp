#include "sifs/io_json.hpp"

#include <algorithm>
#include <fstream>

#include "sifs/sampling.hpp"

namespace sifs {

namespace {

[[noreturn]] void bad(const std::string& what) { throw input_error(what); }

double number_field(const json& j, const char* key, double fallback,
                    bool required = false) {
    if (!j.contains(key)) {
        if (required) bad(std::string("missing field \"") + key + "\"");
        return fallback;
    }
    if (!j[key].is_number()) bad(std::string("field \"") + key + "\" must be a number");
    return j[key].get<double>();
}

std::vector<std::vector<double>> matrix_field(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        bad(std::string("missing array field \"") + key + "\"");
    std::vector<std::vector<double>> rows;
    for (const auto& row : j[key]) {
        if (!row.is_array()) bad(std::string("field \"") + key + "\" must be a matrix");
        rows.push_back(row.get<std::vector<double>>());
    }
    return rows;
}

}  // namespace

MetricSpace space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        bad("space: expected an object with a \"kind\" string");
    const MetricKind kind = metric_kind_from_string(j["kind"].get<std::string>());
    if (kind == MetricKind::finite_table) {
        std::vector<std::vector<double>> labels;
        if (j.contains("labels")) labels = matrix_field(j, "labels");
        return make_finite_space(matrix_field(j, "table"), std::move(labels));
    }
    const int dimension = static_cast<int>(number_field(j, "dimension", 0, true));
    if (dimension < 1) bad("space: dimension must be a positive integer");
    return make_continuous_space(kind, dimension);
}

json space_to_json(const MetricSpace& space) {
    json j;
    j["kind"] = to_string(space.kind);
    if (space.is_finite()) {
        j["table"] = space.table;
        if (!space.point_labels.empty()) j["labels"] = space.point_labels;
    } else {
        j["dimension"] = space.dimension;
    }
    return j;
}

ContractionMap map_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        bad("map: expected an object with a \"type\" string");
    const std::string type = j["type"].get<std::string>();

    std::optional<double> declared_m;
    if (j.contains("m")) {
        const double m = number_field(j, "m", 0.0, true);
        if (!(m >= 0.0 && m < 1.0)) bad("map: declared factor m must lie in [0,1)");
        declared_m = m;
    }
    const bool continuous = j.value("continuous", true);

    if (type == "affine") {
        if (!j.contains("offset") || !j["offset"].is_array())
            bad("affine map: missing \"offset\" array");
        ContractionMap m = make_affine_map(matrix_field(j, "matrix"),
                                           j["offset"].get<std::vector<double>>(),
                                           declared_m);
        m.continuous = continuous;
        return m;
    }
    if (type == "table") {
        if (!j.contains("images") || !j["images"].is_array())
            bad("table map: missing \"images\" array");
        return make_table_map(j["images"].get<std::vector<int>>(), declared_m, continuous);
    }
    if (type == "piecewise") {
        if (!j.contains("branches") || !j["branches"].is_array())
            bad("piecewise map: missing \"branches\" array");
        std::vector<std::pair<std::string, std::vector<std::string>>> branches;
        for (const auto& b : j["branches"]) {
            if (!b.is_object() || !b.contains("guard") || !b.contains("image"))
                bad("piecewise map: each branch needs \"guard\" and \"image\"");
            branches.emplace_back(b["guard"].get<std::string>(),
                                  b["image"].get<std::vector<std::string>>());
        }
        return make_piecewise_map(branches, declared_m, continuous);
    }
    bad("map: unknown type \"" + type + "\"");
}

json map_to_json(const ContractionMap& map) {
    json j;
    if (const auto* aff = std::get_if<AffineRule>(&map.rule)) {
        j["type"] = "affine";
        j["matrix"] = aff->matrix;
        j["offset"] = aff->offset;
    } else if (const auto* table = std::get_if<TableRule>(&map.rule)) {
        j["type"] = "table";
        j["images"] = table->images;
    } else {
        const auto& pw = std::get<PiecewiseRule>(map.rule);
        j["type"] = "piecewise";
        json branches = json::array();
        for (const auto& b : pw.branches) {
            json branch;
            branch["guard"] = b.guard.source();
            json image = json::array();
            for (const Expr& e : b.image) image.push_back(e.source());
            branch["image"] = image;
            branches.push_back(branch);
        }
        j["branches"] = branches;
    }
    if (map.declared_m) j["m"] = *map.declared_m;
    if (!map.continuous) j["continuous"] = false;
    return j;
}

Point point_from_json(const json& j) {
    if (j.is_number_integer()) return Point::idx(j.get<int>());
    if (j.is_array()) return Point::at(j.get<std::vector<double>>());
    bad("point: expected a coordinate array or an integer index");
}

json point_to_json(const Point& p) {
    if (p.is_index()) return json(p.index);
    return json(p.coords);
}

SifsConfig config_from_json(const json& j) {
    if (!j.is_object()) bad("config: expected a JSON object");
    SifsConfig config;
    if (!j.contains("space")) bad("config: missing \"space\"");
    config.space = space_from_json(j["space"]);
    if (!j.contains("maps") || !j["maps"].is_array() || j["maps"].empty())
        bad("config: \"maps\" must be a nonempty array");
    for (const auto& m : j["maps"]) config.maps.push_back(map_from_json(m));

    config.resolution = number_field(j, "resolution", config.resolution);
    config.tolerance = number_field(j, "tolerance", config.tolerance);
    config.max_iter = static_cast<int>(number_field(j, "max_iter", config.max_iter));
    if (!(config.resolution > 0.0)) bad("config: resolution must be positive");
    if (!(config.tolerance > 0.0)) bad("config: tolerance must be positive");
    if (config.max_iter < 1) bad("config: max_iter must be >= 1");

    if (!j.contains("seeds") || !j["seeds"].is_array() || j["seeds"].empty())
        bad("config: \"seeds\" must be a nonempty array of point sets");
    for (const auto& seed : j["seeds"]) {
        if (!seed.is_array() || seed.empty())
            bad("config: each seed must be a nonempty point array");
        std::vector<Point> points;
        for (const auto& p : seed) points.push_back(point_from_json(p));
        config.seeds.push_back(std::move(points));
    }

    if (j.contains("domain")) {
        const auto& dom = j["domain"];
        if (!dom.is_object() || !dom.contains("min") || !dom.contains("max"))
            bad("config: \"domain\" needs \"min\" and \"max\" arrays");
        Box box;
        box.min = dom["min"].get<std::vector<double>>();
        box.max = dom["max"].get<std::vector<double>>();
        if (box.min.size() != box.max.size()) bad("config: domain min/max sizes differ");
        config.domain = std::move(box);
    }
    config.sample = j.value("sample", std::string());
    config.rng_seed = j.value("rng_seed", std::uint64_t{1});
    return config;
}

json config_to_json(const SifsConfig& config) {
    json j;
    j["space"] = space_to_json(config.space);
    json maps = json::array();
    for (const auto& m : config.maps) maps.push_back(map_to_json(m));
    j["maps"] = maps;
    j["resolution"] = config.resolution;
    j["tolerance"] = config.tolerance;
    j["max_iter"] = config.max_iter;
    json seeds = json::array();
    for (const auto& seed : config.seeds) {
        json s = json::array();
        for (const Point& p : seed) s.push_back(point_to_json(p));
        seeds.push_back(s);
    }
    j["seeds"] = seeds;
    if (config.domain) {
        j["domain"] = json{{"min", config.domain->min}, {"max", config.domain->max}};
    }
    if (!config.sample.empty()) j["sample"] = config.sample;
    if (config.rng_seed != 1) j["rng_seed"] = config.rng_seed;
    return j;
}

BuiltSystem build_system(const SifsConfig& config) {
    // Verification sample: over the declared domain when present, else over
    // the padded bounding box of all seed points.
    Box box;
    if (!config.space.is_finite()) {
        if (config.domain) {
            box = *config.domain;
        } else {
            std::vector<Point> all;
            for (const auto& seed : config.seeds)
                all.insert(all.end(), seed.begin(), seed.end());
            box = bounding_box(all);
            for (std::size_t ax = 0; ax < box.dim(); ++ax) {
                const double pad = 0.05 * std::max(1.0, box.extent(ax));
                box.min[ax] -= pad;
                box.max[ax] += pad;
            }
        }
    }
    std::string spec = config.sample;
    if (spec.empty()) {
        if (config.space.is_finite()) spec = "all";
        else if (config.space.dimension == 1) spec = "grid:64";
        else if (config.space.dimension == 2) spec = "grid:16";
        else spec = "grid:8";
    }
    SampleSpec sample = make_sample(config.space, spec, box, config.rng_seed);

    BuiltSystem built{
        make_sifs(config.space, config.maps, config.resolution, sample.points,
                  config.domain),
        {},
        sample.description};
    for (const auto& seed : config.seeds) {
        if (config.space.is_finite()) {
            std::vector<int> indices;
            for (const Point& p : seed) {
                require_belongs(config.space, p, "config seed");
                indices.push_back(p.index);
            }
            built.seeds.push_back(CompactSet::of_indices(std::move(indices)));
        } else {
            built.seeds.push_back(CompactSet::quantized(seed, config.resolution));
        }
    }
    return built;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

json classification_to_json(const ClassificationReport& report,
                            const std::vector<Point>& sample,
                            const MetricSpace& space) {
    json j;
    j["verdict"] = to_string(report.verdict);
    j["minimal_m_banach"] =
        report.minimal_m_banach ? json(*report.minimal_m_banach) : json(nullptr);
    j["minimal_m_suzuki"] =
        report.minimal_m_suzuki ? json(*report.minimal_m_suzuki) : json(nullptr);
    const auto shown_point = [&](const Point& p) {
        if (p.is_index() && !space.point_labels.empty())
            return json{{"index", p.index}, {"label", space.point_labels[p.index]}};
        return point_to_json(p);
    };
    const auto witness_json = [&](const Witness& w) {
        json wj;
        wj["a"] = shown_point(sample[w.a]);
        wj["b"] = shown_point(sample[w.b]);
        wj["d_ab"] = w.d_ab;
        wj["d_images"] = w.d_images;
        wj["ratio"] = w.ratio;
        return wj;
    };
    j["banach_witness"] =
        report.banach_witness ? witness_json(*report.banach_witness) : json(nullptr);
    j["suzuki_witness"] =
        report.suzuki_witness ? witness_json(*report.suzuki_witness) : json(nullptr);
    j["pairs_checked"] = report.pairs_checked;
    j["premise_vacuous_count"] = report.premise_vacuous_count;
    j["suzuki_nonmonotone"] = report.suzuki_nonmonotone;
    j["sampling"] = report.sampling;
    return j;
}

json certificate_to_json(const AttractorCertificate& cert) {
    json j;
    j["self_referential_residual"] = cert.self_referential_residual;
    j["tolerance"] = cert.tolerance;
    j["start_independence_residual"] = cert.start_independence_residual;
    j["estimated_factor"] = cert.estimated_factor;
    j["combined_factor"] = cert.combined_factor;
    j["stop_reason"] = to_string(cert.stop_reason);
    j["iterations"] = cert.iterations;
    return j;
}

}  // namespace sifs
