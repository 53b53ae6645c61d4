#include "regioncert/region_export.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "regioncert/error.hpp"

namespace regioncert {

namespace {

constexpr std::size_t kStripRows = 16;

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

struct Plane {
    std::size_t width = 0;
    std::size_t height = 0;
};

Plane plane_of(const RegionMap& map) {
    const auto& r = map.spec.resolution;
    return {r[0], map.dim() >= 2 ? r[1] : 1};
}

}  // namespace

std::uint8_t class_gray(std::int32_t label, std::size_t class_count) noexcept {
    if (label < 0) return 0;
    if (class_count <= 1) return 255;
    return static_cast<std::uint8_t>(64 + (191 * static_cast<std::size_t>(label)) / (class_count - 1));
}

std::string region_pgm(const RegionMap& map) {
    const Plane p = plane_of(map);
    const std::size_t layers = map.dim() == 3 ? map.spec.resolution[2] : 1;
    const std::size_t rows_per_layer = map.dim() == 1 ? kStripRows : p.height;
    const std::size_t height = rows_per_layer * layers;

    std::string out = "P5\n" + std::to_string(p.width) + " " + std::to_string(height) + "\n255\n";
    const std::size_t header = out.size();
    out.resize(header + p.width * height);
    char* pixels = out.data() + header;
    for (std::size_t z = 0; z < layers; ++z) {
        for (std::size_t row = 0; row < rows_per_layer; ++row) {
            const std::size_t y = map.dim() == 1 ? 0 : p.height - 1 - row;
            const std::size_t base = (z * p.height + y) * p.width;
            char* dst = pixels + (z * rows_per_layer + row) * p.width;
            for (std::size_t x = 0; x < p.width; ++x)
                dst[x] = static_cast<char>(class_gray(map.labels[base + x], map.class_count));
        }
    }
    return out;
}

std::string region_svg(const RegionMap& map) {
    if (map.dim() > 2) throw InvalidInput("SVG export supports 1-D and 2-D scans only");
    const Plane p = plane_of(map);
    const long w = static_cast<long>(p.width);
    const long h = static_cast<long>(p.height);

    // Directed outline edges per component, counter-clockwise around each
    // cell (y up), so outer loops and holes come out with opposite turns.
    struct Edge {
        long x0, y0, x1, y1;
    };
    std::vector<std::vector<Edge>> edges(map.components.size());
    auto comp_at = [&](long x, long y) -> std::int32_t {
        if (x < 0 || y < 0 || x >= w || y >= h) return -1;
        return map.component[static_cast<std::size_t>(y * w + x)];
    };
    for (long y = 0; y < h; ++y) {
        for (long x = 0; x < w; ++x) {
            const std::int32_t c = comp_at(x, y);
            if (c < 0) continue;
            auto& e = edges[static_cast<std::size_t>(c)];
            if (comp_at(x, y - 1) != c) e.push_back({x, y, x + 1, y});
            if (comp_at(x + 1, y) != c) e.push_back({x + 1, y, x + 1, y + 1});
            if (comp_at(x, y + 1) != c) e.push_back({x + 1, y + 1, x, y + 1});
            if (comp_at(x - 1, y) != c) e.push_back({x, y + 1, x, y});
        }
    }

    const long pixel = std::max(1L, 512L / std::max(w, h));
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w * pixel << "\" height=\""
        << h * pixel << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h << "\" fill=\"#000000\"/>\n";

    for (std::size_t c = 0; c < edges.size(); ++c) {
        const auto& list = edges[c];
        std::unordered_multimap<long, std::size_t> by_start;
        by_start.reserve(list.size());
        auto key = [&](long x, long y) { return y * (w + 1) + x; };
        for (std::size_t i = 0; i < list.size(); ++i) by_start.emplace(key(list[i].x0, list[i].y0), i);
        std::vector<bool> used(list.size(), false);

        const std::int32_t label = map.components[c].label;
        svg << "<path data-class=\"" << label << "\" data-component=\"" << c << "\" fill=\""
            << kPalette[static_cast<std::size_t>(label) % std::size(kPalette)]
            << "\" fill-rule=\"evenodd\" stroke=\"#ffffff\" stroke-width=\"0.1\" d=\"";
        for (std::size_t start = 0; start < list.size(); ++start) {
            if (used[start]) continue;
            std::size_t cur = start;
            svg << 'M' << list[cur].x0 << ' ' << h - list[cur].y0;
            while (true) {
                used[cur] = true;
                const Edge& e = list[cur];
                svg << 'L' << e.x1 << ' ' << h - e.y1;
                std::size_t next = list.size();
                auto [lo, hi] = by_start.equal_range(key(e.x1, e.y1));
                for (auto it = lo; it != hi; ++it) {
                    if (!used[it->second]) {
                        next = it->second;
                        break;
                    }
                }
                if (next == list.size()) break;
                cur = next;
            }
            svg << 'Z';
        }
        svg << "\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string region_summary_json(const RegionMap& map) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : summarize(map)) {
        arr.push_back({{"class", s.label},
                       {"components", s.components},
                       {"cells", s.cells},
                       {"touches_boundary", s.touches_boundary}});
    }
    return arr.dump(2) + "\n";
}

std::string region_summary_text(const RegionMap& map) {
    std::string out;
    for (const auto& s : summarize(map)) {
        out += "class " + std::to_string(s.label) + ": " + std::to_string(s.components) +
               (s.components == 1 ? " component" : " components");
        if (s.touches_boundary) out += " (open at boundary)";
        out += "\n";
    }
    out += "boundary cells: " + std::to_string(map.boundary_cells()) + "\n";
    return out;
}

}  // namespace regioncert
