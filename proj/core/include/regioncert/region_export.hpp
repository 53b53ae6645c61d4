#pragma once

#include <cstdint>
#include <string>

#include "regioncert/grid.hpp"

namespace regioncert {

/// Gray level of a label in PGM output: boundary cells are 0 (black);
/// class m of M maps to 64 + floor(191 * m / (M - 1)), or 255 when M = 1.
std::uint8_t class_gray(std::int32_t label, std::size_t class_count) noexcept;

/// Binary PGM (P5, maxval 255), one byte per cell. The first image row is
/// the highest value of scan axis 1. A 1-D scan is repeated over 16 rows;
/// a 3-D scan stacks its axis-2 layers top to bottom in increasing order.
std::string region_pgm(const RegionMap& map);

/// SVG 1.1 drawing of a 1-D or 2-D scan: a black background for boundary
/// cells and one filled <path> per component tracing its outline.
/// Throws InvalidInput for 3-D scans.
std::string region_svg(const RegionMap& map);

/// JSON array with one {class, components, cells, touches_boundary}
/// object per class.
std::string region_summary_json(const RegionMap& map);

/// "class m: k components" lines, with " (open at boundary)" appended when
/// a component touches the edge of the scan box.
std::string region_summary_text(const RegionMap& map);

}  // namespace regioncert
