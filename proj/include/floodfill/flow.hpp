#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "floodfill/raster.hpp"

namespace floodfill {

/// Flow direction codes: 0 drains off the grid, 1..8 point at the neighbor
/// in N, E, S, W, NE, SE, SW, NW order, -1 marks NoData.
inline constexpr std::int8_t kFlowOffGrid = 0;
inline constexpr std::int8_t kFlowNoData = -1;

struct FlowField {
  GridHeader header;
  std::vector<std::int8_t> dirs;

  std::int32_t rows() const { return header.nrows; }
  std::int32_t cols() const { return header.ncols; }
  std::size_t index(CellIndex c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(header.ncols) +
           static_cast<std::size_t>(c.col);
  }
  std::int8_t at(CellIndex c) const { return dirs[index(c)]; }

  friend bool operator==(const FlowField&, const FlowField&) = default;
};

/**
  @brief D8/D4 flow directions that carve through depressions.

  Floods inward from the edge with a total-order priority queue keyed on the
  unmodified elevations. Every neighbor newly reached from the popped cell is
  pointed at it. Depressions are entered through their lowest outlet and
  drain back out along the path the flood took in, so no elevation is
  changed. Cardinal neighbors are visited before diagonals.

  Data cells on the perimeter get code 0. A data cell first reached from a
  NoData cell points into it.
*/
FlowField priority_flood_flowdirs(const Raster& dem, Connectivity conn);

/**
  Follows flow pointers from `start` until a cell drains off the grid
  (code 0) or into a NoData cell. The returned path holds data cells only.

  Throws FlowError on a NoData start, an invalid code, a pointer off the
  grid, or a cycle.
*/
std::vector<CellIndex> trace_path(const FlowField& field, CellIndex start);

/// ESRI power-of-two codes (E=1, SE=2, S=4, SW=8, W=16, NW=32, N=64, NE=128);
/// off-grid stays 0 and NoData stays -1.
std::vector<std::int32_t> to_esri_codes(const FlowField& field);
std::vector<std::int32_t> to_int_codes(const FlowField& field);

enum class FlowEncoding { Compact, Esri };

void save_flow_field(const FlowField& field, const std::filesystem::path& path,
                     FlowEncoding encoding = FlowEncoding::Compact);

}  // namespace floodfill
