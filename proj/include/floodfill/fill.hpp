#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "floodfill/raster.hpp"

namespace floodfill {

/// Which Open-queue implementation to run. Auto picks Bucket for integral
/// rasters whose elevation range fits under the bucket cap.
enum class QueueBackend { Heap, Bucket, Auto };

std::string_view backend_name(QueueBackend backend);
QueueBackend parse_backend(std::string_view name);

struct FillReport {
  std::size_t cells_raised = 0;
  /// Sum of elevation increases times cell area.
  double volume_added = 0.0;
  double max_raise = 0.0;
  /// Epsilon fill only: cells raised above terrain that was higher than the pit outlet.
  std::size_t pit_warnings = 0;

  std::size_t pushes = 0;
  std::size_t pops = 0;
  /// Priorities popped from the priority queue never decreased.
  bool open_pops_monotone = true;
  QueueBackend backend = QueueBackend::Heap;
  std::vector<std::string> notes;
};

struct FillResult {
  Raster filled;
  FillReport report;
};

/**
  @brief Fills all depressions so every cell drains to the grid edge.

  Floods inward from the perimeter with a priority queue, raising each newly
  reached cell to at least the elevation of the cell that reached it. The
  result is the lowest surface with no undrainable depressions; flats may
  remain. NoData cells behave as terrain lower than any data and keep their
  sentinel in the output.
*/
FillResult priority_flood(const Raster& dem, Connectivity conn, QueueBackend backend = QueueBackend::Auto);

/**
  @brief priority_flood with a plain FIFO for cells inside depressions.

  A cell raised to the level of the cell that reached it would pop from the
  priority queue immediately anyway, so it goes to a FIFO instead. Output is
  bit-identical to priority_flood.
*/
FillResult improved_priority_flood(const Raster& dem, Connectivity conn,
                                   QueueBackend backend = QueueBackend::Auto);

/**
  @brief Fill that leaves a strictly descending path from every cell.

  Raised cells get the next representable value above the cell that reached
  them, so filled depressions keep a gradient toward their outlet. Always
  runs on the total-order heap. When a raise lifts a cell that stood above
  the pit's outlet level, a warning is counted in FillReport::pit_warnings:
  the DEM is too close to its storage precision for the gradient to stay
  inside the depression.

  Integer-typed rasters cannot take sub-unit increments; they get the plain
  improved fill and a note pointing at flow-direction carving instead.
*/
FillResult priority_flood_epsilon(const Raster& dem, Connectivity conn);

}  // namespace floodfill
