#include "sifs/fixtures.hpp"

#include <cmath>
#include <cstdio>

namespace sifs::fixtures {

namespace {

json fivepoint_space_json() {
    json j;
    j["kind"] = "finite_table";
    j["table"] = {{0, 4, 4, 9, 9},
                  {4, 0, 8, 5, 5},
                  {4, 8, 0, 5, 5},
                  {9, 5, 5, 0, 2},
                  {9, 5, 5, 2, 0}};
    j["labels"] = {{0, 0}, {4, 0}, {0, 4}, {4, 5}, {5, 4}};
    return j;
}

json fivepoint_map_json() {
    json j;
    j["type"] = "piecewise";
    j["branches"] = {{{"guard", "x1 <= x2"}, {"image", {"x1", "0"}}},
                     {{"guard", "x2 < x1"}, {"image", {"0", "x2"}}}};
    return j;
}

json line_space_json() { return json{{"kind", "euclidean"}, {"dimension", 1}}; }

json halving_map_json() {
    json j;
    j["type"] = "affine";
    j["matrix"] = {{0.5}};
    j["offset"] = {0.0};
    j["m"] = 0.5;
    return j;
}

json ladder_map_json(int max_rungs) {
    json branches = json::array();
    branches.push_back({{"guard", "x1 <= 1"}, {"image", {"x1 / 3"}}});
    for (int n = 1; n <= max_rungs; ++n) {
        char guard[32];
        std::snprintf(guard, sizeof guard, "x1 == %d", 4 * n);
        branches.push_back({{"guard", guard}, {"image", {"0"}}});
        std::snprintf(guard, sizeof guard, "x1 == %d", 4 * n + 1);
        branches.push_back({{"guard", guard}, {"image", {"1 - 4/(x1 + 11)"}}});
    }
    json j;
    j["type"] = "piecewise";
    j["branches"] = std::move(branches);
    return j;
}

json cantor_config_json() {
    const double third = 1.0 / 3.0;
    json j;
    j["space"] = line_space_json();
    j["maps"] = {json{{"type", "affine"}, {"matrix", {{third}}}, {"offset", {0.0}}, {"m", third}},
                 json{{"type", "affine"},
                      {"matrix", {{third}}},
                      {"offset", {2.0 * third}},
                      {"m", third}}};
    j["resolution"] = 1e-3;
    j["tolerance"] = 2e-3;
    j["max_iter"] = 100;
    j["seeds"] = {{{0.0}, {1.0}}, {{0.5}}, {{0.123}, {0.887}}};
    j["domain"] = {{"min", {-0.01}}, {"max", {1.01}}};
    j["sample"] = "grid:64";
    return j;
}

json sierpinski_config_json() {
    const double apex_x = 0.5;
    const double apex_y = std::sqrt(3.0) / 2.0;
    const json half_scale = {{0.5, 0.0}, {0.0, 0.5}};
    json j;
    j["space"] = json{{"kind", "euclidean"}, {"dimension", 2}};
    j["maps"] = {json{{"type", "affine"}, {"matrix", half_scale}, {"offset", {0.0, 0.0}}, {"m", 0.5}},
                 json{{"type", "affine"}, {"matrix", half_scale}, {"offset", {0.5, 0.0}}, {"m", 0.5}},
                 json{{"type", "affine"},
                      {"matrix", half_scale},
                      {"offset", {apex_x / 2.0, apex_y / 2.0}},
                      {"m", 0.5}}};
    j["resolution"] = 1e-3;
    j["tolerance"] = 5e-3;
    j["max_iter"] = 64;
    j["seeds"] = {{{0.0, 0.0}, {1.0, 0.0}, {apex_x, apex_y}},
                  {{0.33, 0.21}},
                  {{0.1, 0.1}, {0.9, 0.05}, {0.5, 0.7}}};
    j["domain"] = {{"min", {-0.01, -0.01}}, {"max", {1.01, 0.88}}};
    j["sample"] = "grid:16";
    return j;
}

}  // namespace

const std::vector<FixtureFile>& fixture_files() {
    static const std::vector<FixtureFile> files = [] {
        std::vector<FixtureFile> out;
        const auto add = [&](const char* name, const json& j) {
            out.push_back({name, j.dump(2) + "\n"});
        };
        add("fivepoint_space.json", fivepoint_space_json());
        add("fivepoint_map.json", fivepoint_map_json());
        add("halving_space.json", line_space_json());
        add("halving_map.json", halving_map_json());
        add("ladder_space.json", line_space_json());
        add("ladder_map.json", ladder_map_json(kLadderDefaultRungs));
        add("cantor.json", cantor_config_json());
        add("sierpinski.json", sierpinski_config_json());
        return out;
    }();
    return files;
}

std::uint64_t suite_hash() {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a 64
    const auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        h ^= '\n';
        h *= 0x100000001b3ull;
    };
    for (const FixtureFile& f : fixture_files()) {
        mix(f.name);
        mix(f.content);
    }
    return h;
}

std::string suite_hash_hex() {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(suite_hash()));
    return buf;
}

MetricSpace fivepoint_space() { return space_from_json(fivepoint_space_json()); }
ContractionMap fivepoint_map() { return map_from_json(fivepoint_map_json()); }
MetricSpace line_space() { return space_from_json(line_space_json()); }
ContractionMap halving_map() { return map_from_json(halving_map_json()); }
ContractionMap ladder_map(int max_rungs) {
    return map_from_json(ladder_map_json(max_rungs));
}

std::vector<Point> ladder_sample(int max_rungs, int unit_grid_points) {
    std::vector<Point> sample;
    for (int i = 0; i < unit_grid_points; ++i)
        sample.push_back(Point::at({static_cast<double>(i) / (unit_grid_points - 1)}));
    for (int n = 1; n <= max_rungs; ++n) {
        sample.push_back(Point::at({static_cast<double>(4 * n)}));
        sample.push_back(Point::at({static_cast<double>(4 * n + 1)}));
    }
    return sample;
}

SifsConfig cantor_config() { return config_from_json(cantor_config_json()); }
SifsConfig sierpinski_config() { return config_from_json(sierpinski_config_json()); }

}  // namespace sifs::fixtures
