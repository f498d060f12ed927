#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "floodfill/raster.hpp"

namespace floodfill {

/**
  ESRI ASCII grid reader and writer.

  Header keys (`ncols`, `nrows`, `xllcorner`, `yllcorner`, `cellsize`,
  `NODATA_value`) are matched case-insensitively; NODATA_value is optional on
  input (default -9999) and always written. Data follow as nrows lines of
  ncols numbers, top row first.

  A grid whose data tokens are all integer literals loads as
  ValueType::Integer. Real rasters are written with shortest round-trip
  decimal representations, with a trailing ".0" on integral values so the
  type survives a save/load cycle.
*/
Raster parse_ascii_grid(std::string_view text);
Raster load_ascii_grid(const std::filesystem::path& path);

std::string format_ascii_grid(const Raster& raster);
void save_ascii_grid(const Raster& raster, const std::filesystem::path& path);

/// Integer grids (flow directions, labels). The header's nodata is replaced by `nodata`.
std::string format_int_grid(const GridHeader& header, std::span<const std::int32_t> values,
                            std::int32_t nodata);
void save_int_grid(const GridHeader& header, std::span<const std::int32_t> values,
                   std::int32_t nodata, const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `value`.
std::string format_real(double value);

}  // namespace floodfill
