#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "regioncert/linalg.hpp"
#include "regioncert/network.hpp"
#include "regioncert/rect.hpp"

namespace regioncert {

/// Affine k-plane x = origin + sum_j s_j * directions[j] through input
/// space, scanned over the GridSpec box in (s_1..s_k) coordinates.
struct Slice {
    Vector origin;
    std::vector<Vector> directions;
};

/// Finite scan window, cells per axis, and an optional slice for inputs
/// of dimension > 3. The scan dimension is box.dim() (at most 3).
struct GridSpec {
    Rect box;
    std::vector<std::size_t> resolution;
    std::optional<Slice> slice;

    std::size_t dim() const noexcept { return box.dim(); }
    std::size_t cell_count() const noexcept;

    /// Same resolution on every axis of a [lo, hi]^dim box.
    static GridSpec cube(std::size_t dim, double lo, double hi, std::size_t res);
};

/// Throws InvalidInput unless spec can scan `input_dim`-dimensional inputs.
void validate_grid(const GridSpec& spec, std::size_t input_dim);

inline constexpr std::int32_t kBoundaryLabel = -1;

struct ComponentInfo {
    std::int32_t label = kBoundaryLabel;
    std::size_t cells = 0;
    bool touches_boundary = false;  // contains a cell on the edge of the scan box
};

/// Labelled scan of a network's decision regions. Cells are stored with
/// axis 0 varying fastest. Components use face adjacency (2*dim neighbours);
/// component ids are ordered by their lowest cell index.
struct RegionMap {
    GridSpec spec;
    std::size_t class_count = 0;
    std::vector<std::int32_t> labels;     // class index or kBoundaryLabel
    std::vector<std::int32_t> component;  // component id or -1 for boundary cells
    std::vector<ComponentInfo> components;

    std::size_t dim() const noexcept { return spec.dim(); }
    std::size_t cell_count() const noexcept { return labels.size(); }

    std::vector<std::size_t> cell_coords(std::size_t index) const;
    std::size_t cell_index(std::span<const std::size_t> coords) const;
    /// Scan-space centre of a cell.
    Vector cell_center(std::size_t index) const;
    /// Cell containing a scan-space point; nullopt outside the closed box.
    std::optional<std::size_t> locate(std::span<const double> point) const;
    /// Maps scan-space coordinates to network input space (identity unless sliced).
    Vector to_input(std::span<const double> point) const;

    std::size_t boundary_cells() const noexcept;
};

/// Maps a scan-space point to input space for a spec (identity unless sliced).
Vector scan_to_input(const GridSpec& spec, std::span<const double> point);

struct ScanOptions {
    double tie_eps = 0.0;
    /// 0 = use default_thread_count()
    std::size_t threads = 0;
};

/// Classifies every cell centre, then groups same-label face-adjacent
/// cells with union-find. Deterministic for a fixed spec regardless of
/// thread count.
RegionMap grid_scan(const Network& net, const GridSpec& spec, const ScanOptions& opts = {});

/// Groups the labels of an already-classified grid into components.
/// Used by grid_scan; exposed for hand-built label grids.
RegionMap label_components(GridSpec spec, std::size_t class_count, std::vector<std::int32_t> labels);

/// Number of components labelled m.
std::size_t connected_components(const RegionMap& map, std::size_t m);

struct ClassSummary {
    std::size_t label = 0;
    std::size_t components = 0;
    std::size_t cells = 0;
    bool touches_boundary = false;  // any component touches the box edge
};

std::vector<ClassSummary> summarize(const RegionMap& map);

struct PathResult {
    std::vector<Vector> waypoints;  // scan-space cell centres
    std::int32_t label = kBoundaryLabel;
};

enum class PathStatus { Found, DifferentClasses, Disconnected, OnBoundary };

struct PathOutcome {
    PathStatus status = PathStatus::Disconnected;
    std::optional<PathResult> path;
};

/// Shortest face-adjacent cell path between the cells containing a and b,
/// through cells of their common label. Throws InvalidInput if either
/// point lies outside the box.
PathOutcome find_path(const RegionMap& map, std::span<const double> a, std::span<const double> b);

}  // namespace regioncert
