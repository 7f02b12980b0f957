#include "sifs/sampling.hpp"

#include <cmath>
#include <cstdio>

namespace sifs {

Box unit_box(int dimension) {
    Box box;
    box.min.assign(static_cast<std::size_t>(dimension), 0.0);
    box.max.assign(static_cast<std::size_t>(dimension), 1.0);
    return box;
}

namespace {

std::string box_text(const Box& box) {
    std::string out = "box=";
    for (std::size_t i = 0; i < box.dim(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s[%g,%g]", i ? "x" : "", box.min[i], box.max[i]);
        out += buf;
    }
    return out;
}

}  // namespace

SampleSpec make_sample(const MetricSpace& space, const std::string& spec, const Box& box,
                       std::uint64_t seed) {
    SampleSpec sample;
    if (space.is_finite()) {
        for (std::size_t i = 0; i < space.size(); ++i)
            sample.points.push_back(Point::idx(static_cast<int>(i)));
        sample.description = "all:" + std::to_string(space.size());
        return sample;
    }
    if (box.dim() != static_cast<std::size_t>(space.dimension))
        throw domain_error("make_sample: box dimension does not match space");

    const auto parse_count = [&](const std::string& prefix) -> int {
        const std::string text = spec.substr(prefix.size());
        const int n = std::atoi(text.c_str());
        if (n < 1) throw input_error("sample spec \"" + spec + "\": count must be >= 1");
        return n;
    };

    const std::size_t d = static_cast<std::size_t>(space.dimension);
    if (spec.rfind("grid:", 0) == 0) {
        const int per_axis = parse_count("grid:");
        std::vector<std::size_t> idx(d, 0);
        for (;;) {
            std::vector<double> coords(d);
            for (std::size_t ax = 0; ax < d; ++ax) {
                coords[ax] = per_axis == 1
                             ? 0.5 * (box.min[ax] + box.max[ax])
                             : box.min[ax] + box.extent(ax) *
                                   (static_cast<double>(idx[ax]) / (per_axis - 1));
            }
            sample.points.push_back(Point::at(std::move(coords)));
            std::size_t ax = 0;
            while (ax < d && ++idx[ax] == static_cast<std::size_t>(per_axis)) {
                idx[ax] = 0;
                ++ax;
            }
            if (ax == d) break;
        }
        sample.description = spec + " " + box_text(box);
        return sample;
    }
    if (spec.rfind("random:", 0) == 0) {
        const int count = parse_count("random:");
        Rng rng(seed);
        for (int i = 0; i < count; ++i) {
            std::vector<double> coords(d);
            for (std::size_t ax = 0; ax < d; ++ax)
                coords[ax] = rng.uniform(box.min[ax], box.max[ax]);
            sample.points.push_back(Point::at(std::move(coords)));
        }
        sample.description =
            spec + " seed=" + std::to_string(seed) + " " + box_text(box);
        return sample;
    }
    throw input_error("unknown sample spec \"" + spec +
                      "\" (expected grid:N or random:N)");
}

}  // namespace sifs
