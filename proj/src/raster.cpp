#include "floodfill/raster.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floodfill/error.hpp"

namespace floodfill {

namespace {

void validate(const GridHeader& h, std::span<const double> values, ValueType type) {
  if (h.ncols <= 0 || h.nrows <= 0) {
    throw InvariantError("raster dimensions must be positive");
  }
  if (!(h.cellsize > 0.0) || !std::isfinite(h.cellsize)) {
    throw InvariantError("cellsize must be a positive finite number");
  }
  if (std::isnan(h.nodata_value)) {
    throw InvariantError("nodata_value must not be NaN");
  }
  const auto expected = static_cast<std::size_t>(h.ncols) * static_cast<std::size_t>(h.nrows);
  if (values.size() != expected) {
    throw InvariantError("raster holds " + std::to_string(values.size()) + " values, expected " +
                         std::to_string(expected));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (v == h.nodata_value) continue;
    if (!std::isfinite(v)) {
      throw InvariantError("cell " + std::to_string(i) + " is not finite");
    }
    if (type == ValueType::Integer && v != std::trunc(v)) {
      throw InvariantError("cell " + std::to_string(i) + " is not integral in an integer raster");
    }
  }
}

}  // namespace

Raster::Raster(GridHeader header, std::vector<double> values, ValueType type)
    : header_(header), values_(std::move(values)), type_(type) {
  validate(header_, values_, type_);
}

Raster Raster::constant(GridHeader header, double value, ValueType type) {
  const auto n = static_cast<std::size_t>(std::max(header.ncols, 0)) *
                 static_cast<std::size_t>(std::max(header.nrows, 0));
  return Raster(header, std::vector<double>(n, value), type);
}

std::vector<double> Raster::keys() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = key(i);
  return out;
}

bool Raster::is_edge(std::size_t i) const {
  const auto c = cell(i);
  return c.row == 0 || c.col == 0 || c.row == header_.nrows - 1 || c.col == header_.ncols - 1;
}

std::size_t Raster::data_cell_count() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [&](double v) { return v != header_.nodata_value; }));
}

bool Raster::has_integral_values() const {
  return std::all_of(values_.begin(), values_.end(),
                     [&](double v) { return v == header_.nodata_value || v == std::trunc(v); });
}

Raster Raster::with_values(std::vector<double> values) const {
  return Raster(header_, std::move(values), type_);
}

Raster Raster::from_keys(std::span<const double> keys) const {
  std::vector<double> out(keys.begin(), keys.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (is_nodata(i)) out[i] = header_.nodata_value;
  }
  return with_values(std::move(out));
}

Neighborhood::Neighborhood(std::int32_t rows, std::int32_t cols, Connectivity conn)
    : ncols_(static_cast<std::size_t>(cols)), nrows_(rows), count_(neighbor_count(conn)) {
  for (int d = 1; d <= 8; ++d) {
    offset_[d] = static_cast<std::int64_t>(kRowOffset[d]) * cols + kColOffset[d];
  }
}

std::size_t Neighborhood::step(std::size_t cell, int dir) const {
  if (dir < 1 || dir > 8) return kOffGrid;
  const auto r = static_cast<std::int64_t>(cell / ncols_) + kRowOffset[dir];
  const auto c = static_cast<std::int64_t>(cell % ncols_) + kColOffset[dir];
  if (r < 0 || c < 0 || r >= nrows_ || c >= static_cast<std::int64_t>(ncols_)) return kOffGrid;
  return static_cast<std::size_t>(r) * ncols_ + static_cast<std::size_t>(c);
}

std::vector<CellIndex> neighbors(const Raster& r, CellIndex c, Connectivity conn) {
  std::vector<CellIndex> out;
  out.reserve(static_cast<std::size_t>(neighbor_count(conn)));
  for (int d = 1; d <= neighbor_count(conn); ++d) {
    const CellIndex n{c.row + kRowOffset[d], c.col + kColOffset[d]};
    if (r.contains(n)) out.push_back(n);
  }
  return out;
}

std::vector<std::size_t> edge_indices(std::int32_t rows, std::int32_t cols) {
  std::vector<std::size_t> out;
  if (rows <= 0 || cols <= 0) return out;
  const auto ncols = static_cast<std::size_t>(cols);
  const auto last_row = static_cast<std::size_t>(rows - 1);
  out.reserve(rows > 1 && cols > 1 ? 2 * static_cast<std::size_t>(rows + cols) - 4
                                   : static_cast<std::size_t>(rows) * ncols);
  for (std::size_t c = 0; c < ncols; ++c) out.push_back(c);
  if (rows > 1) {
    for (std::size_t c = 0; c < ncols; ++c) out.push_back(last_row * ncols + c);
  }
  for (std::size_t r = 1; r < last_row; ++r) out.push_back(r * ncols);
  if (cols > 1) {
    for (std::size_t r = 1; r < last_row; ++r) out.push_back(r * ncols + ncols - 1);
  }
  return out;
}

std::vector<CellIndex> edge_cells(const Raster& r) {
  std::vector<CellIndex> out;
  for (const auto i : edge_indices(r.rows(), r.cols())) out.push_back(r.cell(i));
  return out;
}

}  // namespace floodfill
