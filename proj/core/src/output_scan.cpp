#include "regioncert/output_scan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "regioncert/error.hpp"
#include "regioncert/parallel.hpp"

namespace regioncert {

namespace {

// Occupancy grid over the bounding box of a point cloud in <= 3 dimensions.
class BucketGrid {
public:
    BucketGrid(const std::vector<Vector>& points, std::size_t res) : dim_(points.front().size()) {
        lo_.assign(dim_, std::numeric_limits<double>::infinity());
        Vector hi(dim_, -std::numeric_limits<double>::infinity());
        for (const auto& p : points) {
            for (std::size_t a = 0; a < dim_; ++a) {
                lo_[a] = std::min(lo_[a], p[a]);
                hi[a] = std::max(hi[a], p[a]);
            }
        }
        res_.resize(dim_);
        scale_.resize(dim_);
        for (std::size_t a = 0; a < dim_; ++a) {
            const double extent = hi[a] - lo_[a];
            // a flat axis collapses to one bucket
            res_[a] = extent > 0.0 ? res : 1;
            scale_[a] = extent > 0.0 ? static_cast<double>(res) / extent : 0.0;
        }
        spec_.box = Rect{lo_, hi, true};
        spec_.resolution = res_;
        occupied_.assign(spec_.cell_count(), kBoundaryLabel);
    }

    Vector continuous(const Vector& p) const {
        Vector q(dim_);
        for (std::size_t a = 0; a < dim_; ++a) q[a] = (p[a] - lo_[a]) * scale_[a];
        return q;
    }

    std::vector<std::size_t> bucket(const Vector& q) const {
        std::vector<std::size_t> b(dim_);
        for (std::size_t a = 0; a < dim_; ++a) {
            const double f = std::floor(q[a]);
            b[a] = f <= 0.0 ? 0 : std::min(static_cast<std::size_t>(f), res_[a] - 1);
        }
        return b;
    }

    void mark(const std::vector<std::size_t>& b) {
        std::size_t idx = 0;
        for (std::size_t a = dim_; a-- > 0;) idx = idx * res_[a] + b[a];
        occupied_[idx] = 0;
    }

    // Marks the buckets crossed by the segment p0 -> p1, filling diagonal
    // steps one axis at a time so the trace is face-connected.
    void trace(const Vector& p0, const Vector& p1) {
        const Vector q0 = continuous(p0), q1 = continuous(p1);
        double span = 0.0;
        for (std::size_t a = 0; a < dim_; ++a) span = std::max(span, std::abs(q1[a] - q0[a]));
        const auto steps = static_cast<std::size_t>(std::ceil(2.0 * span)) + 1;
        auto prev = bucket(q0);
        mark(prev);
        Vector q(dim_);
        for (std::size_t s = 1; s <= steps; ++s) {
            const double t = static_cast<double>(s) / static_cast<double>(steps);
            for (std::size_t a = 0; a < dim_; ++a) q[a] = q0[a] + (q1[a] - q0[a]) * t;
            const auto next = bucket(q);
            for (std::size_t a = 0; a < dim_; ++a) {
                while (prev[a] != next[a]) {
                    prev[a] += prev[a] < next[a] ? 1 : -1;
                    mark(prev);
                }
            }
        }
    }

    OutputScanResult count() {
        OutputScanResult r;
        r.occupied_buckets = static_cast<std::size_t>(std::count(occupied_.begin(), occupied_.end(), 0));
        const RegionMap map = label_components(spec_, 1, std::move(occupied_));
        r.components = connected_components(map, 0);
        return r;
    }

private:
    std::size_t dim_;
    Vector lo_;
    Vector scale_;
    std::vector<std::size_t> res_;
    GridSpec spec_;
    std::vector<std::int32_t> occupied_;
};

}  // namespace

OutputScanResult output_space_scan(const Network& net, const GridSpec& spec, std::size_t m,
                                   const OutputScanOptions& opts) {
    validate_grid(spec, net.input_dim());
    const std::size_t classes = net.class_count();
    if (m >= classes) throw InvalidInput("output_space_scan: class index out of range");
    const std::size_t cells = spec.cell_count();
    const std::size_t k = spec.dim();

    std::vector<double> outputs(cells * classes);
    std::vector<std::uint8_t> member(cells, 0);
    RegionMap geometry;  // only for cell centres
    geometry.spec = spec;
    parallel_for(cells, opts.threads, [&](std::size_t begin, std::size_t end) {
        ForwardEvaluator eval(net);
        for (std::size_t idx = begin; idx < end; ++idx) {
            const Vector x = scan_to_input(spec, geometry.cell_center(idx));
            std::span<double> o(outputs.data() + idx * classes, classes);
            eval(x, o);
            member[idx] = output_membership(o, m) ? 1 : 0;
        }
    });

    OutputScanResult result;
    result.sample_count = static_cast<std::size_t>(std::count(member.begin(), member.end(), 1));
    if (result.sample_count == 0) return result;

    std::vector<std::vector<std::size_t>> projections;
    if (classes <= 3) {
        std::vector<std::size_t> all(classes);
        for (std::size_t j = 0; j < classes; ++j) all[j] = j;
        projections.push_back(std::move(all));
    } else {
        result.projected = true;
        for (std::size_t j = 0; j < classes; ++j)
            if (j != m) projections.push_back({m, j});
    }

    std::size_t res = opts.bucket_resolution;
    if (res == 0) res = *std::max_element(spec.resolution.begin(), spec.resolution.end());

    std::vector<std::size_t> strides(k);
    for (std::size_t a = 0, acc = 1; a < k; ++a) {
        strides[a] = acc;
        acc *= spec.resolution[a];
    }

    for (const auto& coords : projections) {
        auto image = [&](std::size_t idx) {
            Vector p(coords.size());
            for (std::size_t a = 0; a < coords.size(); ++a) p[a] = outputs[idx * classes + coords[a]];
            return p;
        };
        std::vector<Vector> cloud;
        cloud.reserve(result.sample_count);
        for (std::size_t idx = 0; idx < cells; ++idx)
            if (member[idx]) cloud.push_back(image(idx));

        BucketGrid buckets(cloud, res);
        std::vector<std::size_t> c(k, 0);
        for (std::size_t idx = 0; idx < cells; ++idx) {
            if (member[idx]) {
                const Vector p = image(idx);
                buckets.trace(p, p);
                for (std::size_t a = 0; a < k; ++a) {
                    if (c[a] + 1 < spec.resolution[a] && member[idx + strides[a]]) {
                        buckets.trace(p, image(idx + strides[a]));
                    }
                }
            }
            for (std::size_t a = 0; a < k; ++a) {
                if (++c[a] < spec.resolution[a]) break;
                c[a] = 0;
            }
        }
        const OutputScanResult r = buckets.count();
        if (r.components > result.components) {
            result.components = r.components;
            result.occupied_buckets = r.occupied_buckets;
        }
    }
    return result;
}

}  // namespace regioncert
