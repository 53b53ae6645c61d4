#pragma once

#include <cstddef>

#include "regioncert/grid.hpp"
#include "regioncert/network.hpp"

namespace regioncert {

struct OutputScanOptions {
    /// Buckets per output axis; 0 = the largest input resolution.
    std::size_t bucket_resolution = 0;
    std::size_t threads = 0;
};

struct OutputScanResult {
    std::size_t components = 0;
    std::size_t occupied_buckets = 0;
    std::size_t sample_count = 0;  // input cells whose image lies in D_m
    bool projected = false;        // M > 3: max over (o_m, o_j) projections
};

/// Estimates the number of connected pieces of f_L(box) intersected with D_m.
///
/// Every input cell centre is pushed through the network; images inside D_m
/// are bucketed on a grid over their bounding box, and the image of each
/// face-adjacent pair of such cells is approximated by the straight segment
/// between their images (which stays in D_m, a convex set). Occupied
/// buckets are then grouped by face adjacency. This is a heuristic: the
/// point cloud is not the true image set. For M > 3 the count is the
/// maximum over the 2-D projections onto (o_m, o_j), j != m.
OutputScanResult output_space_scan(const Network& net, const GridSpec& spec, std::size_t m,
                                   const OutputScanOptions& opts = {});

}  // namespace regioncert
