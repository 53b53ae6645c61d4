#include "regioncert/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <string>

#include "regioncert/error.hpp"
#include "regioncert/parallel.hpp"

namespace regioncert {

namespace {

// Union-find with path halving over cell indices. The smaller root always
// wins, so every set is rooted at its lowest cell index.
class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::uint32_t{0});
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::uint32_t> parent_;
};

std::vector<std::size_t> strides_of(const GridSpec& spec) {
    std::vector<std::size_t> s(spec.dim());
    std::size_t acc = 1;
    for (std::size_t a = 0; a < spec.dim(); ++a) {
        s[a] = acc;
        acc *= spec.resolution[a];
    }
    return s;
}

}  // namespace

std::size_t GridSpec::cell_count() const noexcept {
    std::size_t n = resolution.empty() ? 0 : 1;
    for (std::size_t r : resolution) n *= r;
    return n;
}

GridSpec GridSpec::cube(std::size_t dim, double lo, double hi, std::size_t res) {
    GridSpec g;
    g.box = Rect{Vector(dim, lo), Vector(dim, hi), true};
    g.resolution.assign(dim, res);
    return g;
}

void validate_grid(const GridSpec& spec, std::size_t input_dim) {
    const std::size_t k = spec.dim();
    if (k == 0 || k > 3) throw InvalidInput("grid: scan dimension must be 1, 2 or 3");
    if (spec.box.upper.size() != k) throw InvalidInput("grid: box bounds have different lengths");
    if (spec.resolution.size() != k) {
        throw InvalidInput("grid: expected " + std::to_string(k) + " resolution values, got " +
                           std::to_string(spec.resolution.size()));
    }
    for (std::size_t a = 0; a < k; ++a) {
        if (spec.resolution[a] < 2) throw InvalidInput("grid: resolution must be at least 2 per axis");
        if (!std::isfinite(spec.box.lower[a]) || !std::isfinite(spec.box.upper[a]) ||
            !(spec.box.lower[a] < spec.box.upper[a])) {
            throw InvalidInput("grid: box axis " + std::to_string(a) + " must be a finite interval lo < hi");
        }
    }
    if (spec.cell_count() > std::size_t{1} << 31) throw InvalidInput("grid: too many cells");
    if (!spec.slice) {
        if (k != input_dim) {
            throw InvalidInput("grid: box has " + std::to_string(k) + " axes but the network takes " +
                               std::to_string(input_dim) + " inputs (use a slice for d > 3)");
        }
        return;
    }
    const Slice& s = *spec.slice;
    if (s.origin.size() != input_dim) throw InvalidInput("grid: slice origin has the wrong dimension");
    if (s.directions.size() != k) throw InvalidInput("grid: slice needs one direction per box axis");
    Matrix dirs(k, input_dim);
    for (std::size_t j = 0; j < k; ++j) {
        if (s.directions[j].size() != input_dim) throw InvalidInput("grid: slice direction has the wrong dimension");
        for (std::size_t i = 0; i < input_dim; ++i) dirs(j, i) = s.directions[j][i];
    }
    if (!all_finite(s.origin) || rank(dirs, 1e-9) != k) {
        throw InvalidInput("grid: slice directions must be linearly independent");
    }
}

Vector scan_to_input(const GridSpec& spec, std::span<const double> point) {
    if (!spec.slice) return Vector(point.begin(), point.end());
    Vector x = spec.slice->origin;
    for (std::size_t j = 0; j < point.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += point[j] * spec.slice->directions[j][i];
    return x;
}

std::vector<std::size_t> RegionMap::cell_coords(std::size_t index) const {
    std::vector<std::size_t> c(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
        c[a] = index % spec.resolution[a];
        index /= spec.resolution[a];
    }
    return c;
}

std::size_t RegionMap::cell_index(std::span<const std::size_t> coords) const {
    std::size_t idx = 0;
    for (std::size_t a = dim(); a-- > 0;) idx = idx * spec.resolution[a] + coords[a];
    return idx;
}

Vector RegionMap::cell_center(std::size_t index) const {
    const auto c = cell_coords(index);
    Vector p(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
        const double h = (spec.box.upper[a] - spec.box.lower[a]) / static_cast<double>(spec.resolution[a]);
        p[a] = spec.box.lower[a] + (static_cast<double>(c[a]) + 0.5) * h;
    }
    return p;
}

std::optional<std::size_t> RegionMap::locate(std::span<const double> point) const {
    if (point.size() != dim()) throw InvalidInput("locate: point has the wrong dimension");
    std::vector<std::size_t> c(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
        const double lo = spec.box.lower[a], hi = spec.box.upper[a];
        if (!(point[a] >= lo && point[a] <= hi)) return std::nullopt;
        const double t = (point[a] - lo) / (hi - lo) * static_cast<double>(spec.resolution[a]);
        c[a] = std::min(static_cast<std::size_t>(t), spec.resolution[a] - 1);
    }
    return cell_index(c);
}

Vector RegionMap::to_input(std::span<const double> point) const { return scan_to_input(spec, point); }

std::size_t RegionMap::boundary_cells() const noexcept {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), kBoundaryLabel));
}

RegionMap grid_scan(const Network& net, const GridSpec& spec, const ScanOptions& opts) {
    validate_grid(spec, net.input_dim());
    const std::size_t k = spec.dim();
    const std::size_t cells = spec.cell_count();
    const std::size_t classes = net.class_count();
    std::vector<std::int32_t> labels(cells, kBoundaryLabel);

    std::vector<double> step(k);
    for (std::size_t a = 0; a < k; ++a) {
        step[a] = (spec.box.upper[a] - spec.box.lower[a]) / static_cast<double>(spec.resolution[a]);
    }

    parallel_for(cells, opts.threads, [&](std::size_t begin, std::size_t end) {
        ForwardEvaluator eval(net);
        Vector scan(k), input(net.input_dim()), out(classes);
        std::vector<std::size_t> c(k);
        for (std::size_t idx = begin; idx < end; ++idx) {
            std::size_t rest = idx;
            for (std::size_t a = 0; a < k; ++a) {
                c[a] = rest % spec.resolution[a];
                rest /= spec.resolution[a];
                scan[a] = spec.box.lower[a] + (static_cast<double>(c[a]) + 0.5) * step[a];
            }
            if (spec.slice) {
                input = spec.slice->origin;
                for (std::size_t j = 0; j < k; ++j)
                    for (std::size_t i = 0; i < input.size(); ++i) input[i] += scan[j] * spec.slice->directions[j][i];
                eval(input, out);
            } else {
                eval(scan, out);
            }
            if (auto m = strict_argmax(out, opts.tie_eps)) labels[idx] = static_cast<std::int32_t>(*m);
        }
    });
    return label_components(spec, classes, std::move(labels));
}

RegionMap label_components(GridSpec spec, std::size_t class_count, std::vector<std::int32_t> labels) {
    RegionMap map;
    map.spec = std::move(spec);
    map.class_count = class_count;
    map.labels = std::move(labels);
    const std::size_t cells = map.spec.cell_count();
    if (map.labels.size() != cells) throw InvalidInput("label_components: label count does not match grid");
    const std::size_t k = map.dim();
    const auto strides = strides_of(map.spec);

    DisjointSet ds(cells);
    std::vector<std::size_t> c(k, 0);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        const std::int32_t lab = map.labels[idx];
        if (lab != kBoundaryLabel) {
            for (std::size_t a = 0; a < k; ++a) {
                if (c[a] + 1 < map.spec.resolution[a] && map.labels[idx + strides[a]] == lab) {
                    ds.unite(static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx + strides[a]));
                }
            }
        }
        // advance the odometer
        for (std::size_t a = 0; a < k; ++a) {
            if (++c[a] < map.spec.resolution[a]) break;
            c[a] = 0;
        }
    }

    // roots are the lowest cell of their set, so they are visited first
    map.component.assign(cells, -1);
    std::fill(c.begin(), c.end(), 0);
    for (std::size_t idx = 0; idx < cells; ++idx) {
        const std::int32_t lab = map.labels[idx];
        if (lab != kBoundaryLabel) {
            const std::uint32_t root = ds.find(static_cast<std::uint32_t>(idx));
            if (root == idx) {
                map.component[idx] = static_cast<std::int32_t>(map.components.size());
                map.components.push_back({lab, 0, false});
            }
            const std::int32_t id = map.component[root];
            map.component[idx] = id;
            ComponentInfo& info = map.components[static_cast<std::size_t>(id)];
            ++info.cells;
            for (std::size_t a = 0; a < k && !info.touches_boundary; ++a) {
                if (c[a] == 0 || c[a] + 1 == map.spec.resolution[a]) info.touches_boundary = true;
            }
        }
        for (std::size_t a = 0; a < k; ++a) {
            if (++c[a] < map.spec.resolution[a]) break;
            c[a] = 0;
        }
    }
    return map;
}

std::size_t connected_components(const RegionMap& map, std::size_t m) {
    return static_cast<std::size_t>(std::count_if(map.components.begin(), map.components.end(),
                                                  [m](const ComponentInfo& c) {
                                                      return c.label == static_cast<std::int32_t>(m);
                                                  }));
}

std::vector<ClassSummary> summarize(const RegionMap& map) {
    std::vector<ClassSummary> out(map.class_count);
    for (std::size_t m = 0; m < out.size(); ++m) out[m].label = m;
    for (const auto& c : map.components) {
        if (c.label < 0 || static_cast<std::size_t>(c.label) >= out.size()) continue;
        ClassSummary& s = out[static_cast<std::size_t>(c.label)];
        ++s.components;
        s.cells += c.cells;
        s.touches_boundary = s.touches_boundary || c.touches_boundary;
    }
    return out;
}

PathOutcome find_path(const RegionMap& map, std::span<const double> a, std::span<const double> b) {
    const auto ca = map.locate(a);
    const auto cb = map.locate(b);
    if (!ca || !cb) throw InvalidInput("find_path: endpoint outside the scan box");
    const std::int32_t la = map.labels[*ca];
    const std::int32_t lb = map.labels[*cb];
    if (la == kBoundaryLabel || lb == kBoundaryLabel) return {PathStatus::OnBoundary, std::nullopt};
    if (la != lb) return {PathStatus::DifferentClasses, std::nullopt};
    if (map.component[*ca] != map.component[*cb]) return {PathStatus::Disconnected, std::nullopt};

    // BFS from b so that walking predecessors from a yields the path a -> b
    const std::size_t k = map.dim();
    const auto strides = strides_of(map.spec);
    std::vector<std::int64_t> prev(map.cell_count(), -1);
    std::deque<std::size_t> queue{*cb};
    prev[*cb] = static_cast<std::int64_t>(*cb);
    while (!queue.empty() && prev[*ca] < 0) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        const auto coords = map.cell_coords(cur);
        for (std::size_t ax = 0; ax < k; ++ax) {
            for (int dir : {-1, 1}) {
                if (dir < 0 && coords[ax] == 0) continue;
                if (dir > 0 && coords[ax] + 1 == map.spec.resolution[ax]) continue;
                const std::size_t nb = dir < 0 ? cur - strides[ax] : cur + strides[ax];
                if (prev[nb] >= 0 || map.labels[nb] != la) continue;
                prev[nb] = static_cast<std::int64_t>(cur);
                queue.push_back(nb);
            }
        }
    }
    PathResult path;
    path.label = la;
    for (std::size_t cur = *ca;; cur = static_cast<std::size_t>(prev[cur])) {
        path.waypoints.push_back(map.cell_center(cur));
        if (cur == *cb) break;
    }
    return {PathStatus::Found, std::move(path)};
}

}  // namespace regioncert
