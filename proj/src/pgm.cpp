#include "sifs/pgm.hpp"

#include <algorithm>
#include <cmath>

namespace sifs {

std::string encode_pgm(int width, int height, const std::vector<std::uint8_t>& pixels) {
    if (width < 1 || height < 1) throw domain_error("encode_pgm: empty image");
    if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw domain_error("encode_pgm: pixel buffer size mismatch");
    std::string out = "P5\n" + std::to_string(width) + " " + std::to_string(height) +
                      "\n255\n";
    out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
    return out;
}

std::vector<std::uint8_t> rasterize(const CompactSet& set, int width, int height) {
    if (width < 1 || height < 1) throw domain_error("rasterize: empty viewport");
    if (set.is_index_set() || set.dim() < 1 || set.dim() > 2)
        throw domain_error("rasterize: 1- or 2-dimensional coordinate sets only");

    const Box box = bounding_box(set.points());
    const auto to_pixel = [](double v, double lo, double extent, int span) {
        if (extent <= 0.0) return (span - 1) / 2;
        const int p = static_cast<int>(std::llround((v - lo) / extent * (span - 1)));
        return std::clamp(p, 0, span - 1);
    };

    std::vector<std::uint8_t> pixels(
        static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
    for (const Point& p : set.points()) {
        const int px = to_pixel(p.coords[0], box.min[0], box.extent(0), width);
        int py = height / 2;
        if (set.dim() == 2) {
            // Row 0 is the top of the image; larger y draws higher.
            py = height - 1 - to_pixel(p.coords[1], box.min[1], box.extent(1), height);
        }
        pixels[static_cast<std::size_t>(py) * width + px] = 255;
    }
    return pixels;
}

std::string render_pgm(const CompactSet& set, int width, int height) {
    return encode_pgm(width, height, rasterize(set, width, height));
}

}  // namespace sifs
