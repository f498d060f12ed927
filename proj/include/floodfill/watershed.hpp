#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "floodfill/raster.hpp"

namespace floodfill {

// Transient states during labeling; a finished field holds only positive
// labels and kLabelNoData.
inline constexpr std::int32_t kLabelCandidate = 0;
inline constexpr std::int32_t kLabelQueued = -1;
inline constexpr std::int32_t kLabelNoData = -9999;

struct LabelField {
  GridHeader header;
  std::vector<std::int32_t> labels;
  /// Number of labels minted; labels run 1..count.
  std::int32_t count = 0;

  std::int32_t rows() const { return header.nrows; }
  std::int32_t cols() const { return header.ncols; }
  std::int32_t at(CellIndex c) const {
    return labels[static_cast<std::size_t>(c.row) * static_cast<std::size_t>(header.ncols) +
                  static_cast<std::size_t>(c.col)];
  }

  friend bool operator==(const LabelField&, const LabelField&) = default;
};

struct WatershedResult {
  LabelField labels;
  /// Depression-filled DEM from the same sweep, when requested.
  std::optional<Raster> filled;
  /// outlets[k] is the cell that minted label k + 1.
  std::vector<CellIndex> outlets;
};

/**
  @brief Labels every data cell with the watershed of the edge outlet it drains to.

  The improved flood, carrying labels instead of raising cells: the flood
  starts from the perimeter, each cell inherits the label of the cell that
  reached it, and cells inside a depression are queued at the depression's
  spill elevation. A new label is minted whenever a queued data cell that has
  not inherited one is popped: perimeter data cells, and data cells reached
  from NoData. Ties pop in insertion order, so labels are reproducible.

  With also_fill, the result also carries the depression-filled raster
  (identical to improved_priority_flood).
*/
WatershedResult priority_flood_watersheds(const Raster& dem, Connectivity conn, bool also_fill = false);

/// Cells with a neighbor bearing a higher positive label. Each interface is
/// marked on its lower-labeled side. Throws InvariantError on unfinished fields.
std::vector<std::uint8_t> watershed_boundaries(const LabelField& field,
                                               Connectivity conn = Connectivity::Eight);

/// Renumbers positive labels 1..k in row-major order of first appearance.
LabelField canonicalize_labels(const LabelField& field);

void save_label_field(const LabelField& field, const std::filesystem::path& path);

}  // namespace floodfill
