#include "sifs/io_csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace sifs {

namespace {

std::string format_g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

[[noreturn]] void bad_line(const std::string& origin, std::size_t line,
                           const std::string& why) {
    throw input_error(origin + ":" + std::to_string(line) + ": " + why);
}

}  // namespace

std::string set_to_csv(const CompactSet& set) {
    std::string out = "# resolution=" + format_g12(set.resolution()) +
                      " dim=" + std::to_string(set.is_index_set() ? 0 : set.dim()) + "\n";
    for (const Point& p : set.points()) {
        if (p.is_index()) {
            out += std::to_string(p.index);
        } else {
            for (std::size_t i = 0; i < p.coords.size(); ++i) {
                if (i) out += ',';
                out += format_g12(p.coords[i]);
            }
        }
        out += '\n';
    }
    return out;
}

CompactSet set_from_csv(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) bad_line(origin, 1, "empty file");
    ++lineno;
    double resolution = 0.0;
    int dim = -1;
    if (std::sscanf(line.c_str(), "# resolution=%lf dim=%d", &resolution, &dim) != 2)
        bad_line(origin, lineno, "expected header '# resolution=<eps> dim=<d>'");
    if (dim < 0) bad_line(origin, lineno, "negative dimension in header");

    std::vector<Point> points;
    std::vector<int> indices;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const char* cursor = line.c_str();
        if (dim == 0) {
            char* end = nullptr;
            const long idx = std::strtol(cursor, &end, 10);
            if (end == cursor || *end != '\0' || idx < 0)
                bad_line(origin, lineno, "expected a nonnegative point index");
            indices.push_back(static_cast<int>(idx));
            continue;
        }
        std::vector<double> coords;
        for (int i = 0; i < dim; ++i) {
            char* end = nullptr;
            const double v = std::strtod(cursor, &end);
            if (end == cursor) bad_line(origin, lineno, "expected a coordinate");
            coords.push_back(v);
            cursor = end;
            if (i + 1 < dim) {
                if (*cursor != ',') bad_line(origin, lineno, "expected ','");
                ++cursor;
            }
        }
        if (*cursor != '\0') bad_line(origin, lineno, "unexpected trailing text");
        points.push_back(Point::at(std::move(coords)));
    }

    try {
        if (dim == 0) return CompactSet::of_indices(std::move(indices));
        // Stored points are already on the grid; exact keeps them bit-intact.
        return CompactSet::exact(std::move(points), resolution);
    } catch (const domain_error& e) {
        throw input_error(origin + ": " + e.what());
    }
}

CompactSet load_set_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return set_from_csv(buf.str(), path);
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
    std::string out = "iter,h_succ,ratio,cardinality\n";
    for (const TraceStep& s : trace.steps) {
        out += std::to_string(s.iter);
        out += ',';
        out += format_g12(s.dist);
        out += ',';
        out += format_g12(s.ratio);
        out += ',';
        out += std::to_string(s.cardinality);
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw input_error(tmp + ": cannot open for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw input_error(tmp + ": write failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw input_error(path + ": rename failed: " + ec.message());
}

}  // namespace sifs
