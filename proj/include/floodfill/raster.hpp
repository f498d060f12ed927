#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace floodfill {

enum class Connectivity : std::uint8_t { Four = 4, Eight = 8 };

/// Whether cell values are meant as reals or as integers. Integer rasters
/// hold integral doubles; the tag decides formatting and epsilon behavior.
enum class ValueType : std::uint8_t { Real, Integer };

struct CellIndex {
  std::int32_t row = 0;
  std::int32_t col = 0;

  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

struct GridHeader {
  std::int32_t ncols = 0;
  std::int32_t nrows = 0;
  double xllcorner = 0.0;
  double yllcorner = 0.0;
  double cellsize = 1.0;
  double nodata_value = -9999.0;

  friend bool operator==(const GridHeader&, const GridHeader&) = default;
};

inline constexpr double kNoDataKey = -std::numeric_limits<double>::infinity();

/**
  A rectangular grid of elevations stored row-major, row 0 at the top.

  Every value is either finite or exactly the header's nodata value. The
  ordering used by the flooding algorithms never looks at the sentinel's
  magnitude: key() maps NoData cells to negative infinity so they sort below
  every data value, whatever the sentinel is.
*/
class Raster {
 public:
  Raster(GridHeader header, std::vector<double> values, ValueType type = ValueType::Real);

  /// A raster with every cell set to `value`.
  static Raster constant(GridHeader header, double value, ValueType type = ValueType::Real);

  const GridHeader& header() const { return header_; }
  std::int32_t rows() const { return header_.nrows; }
  std::int32_t cols() const { return header_.ncols; }
  std::size_t size() const { return values_.size(); }
  ValueType value_type() const { return type_; }
  double nodata_value() const { return header_.nodata_value; }

  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(CellIndex c) const { return values_[index(c)]; }

  bool is_nodata(std::size_t i) const { return values_[i] == header_.nodata_value; }
  double key(std::size_t i) const { return is_nodata(i) ? kNoDataKey : values_[i]; }
  /// Ordering keys for every cell (NoData mapped to -inf).
  std::vector<double> keys() const;

  std::size_t index(CellIndex c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(header_.ncols) +
           static_cast<std::size_t>(c.col);
  }
  CellIndex cell(std::size_t i) const {
    const auto ncols = static_cast<std::size_t>(header_.ncols);
    return {static_cast<std::int32_t>(i / ncols), static_cast<std::int32_t>(i % ncols)};
  }
  bool contains(CellIndex c) const {
    return c.row >= 0 && c.row < header_.nrows && c.col >= 0 && c.col < header_.ncols;
  }
  bool is_edge(std::size_t i) const;

  std::size_t data_cell_count() const;
  /// True when every data value is an integer (regardless of the type tag).
  bool has_integral_values() const;

  /// Same header and type, new values. Values are validated.
  Raster with_values(std::vector<double> values) const;

  /// Rebuild a raster from working keys: -inf positions become NoData again.
  Raster from_keys(std::span<const double> keys) const;

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  GridHeader header_;
  std::vector<double> values_;
  ValueType type_;
};

// Direction codes 1..8 in the fixed neighbor order N, E, S, W, NE, SE, SW, NW.
// Index 0 is unused so that codes index the tables directly.
inline constexpr std::array<int, 9> kRowOffset{0, -1, 0, 1, 0, -1, 1, 1, -1};
inline constexpr std::array<int, 9> kColOffset{0, 0, 1, 0, -1, 1, 1, -1, -1};

constexpr int neighbor_count(Connectivity conn) { return static_cast<int>(conn); }

constexpr int opposite_direction(int dir) {
  constexpr std::array<int, 9> opposite{0, 3, 4, 1, 2, 7, 8, 5, 6};
  return opposite[static_cast<std::size_t>(dir)];
}

constexpr bool is_diagonal(int dir) { return dir > 4; }

/**
  Flat-index neighbor iteration used by the algorithms' inner loops. Interior
  cells use precomputed offsets; perimeter cells are bounds-checked.
*/
class Neighborhood {
 public:
  Neighborhood(std::int32_t rows, std::int32_t cols, Connectivity conn);

  /// Calls f(neighbor_index, direction_code) in the fixed order.
  template <class F>
  void for_each(std::size_t cell, F&& f) const {
    const auto r = static_cast<std::int64_t>(cell / ncols_);
    const auto c = static_cast<std::int64_t>(cell % ncols_);
    if (r > 0 && c > 0 && r + 1 < nrows_ && c + 1 < static_cast<std::int64_t>(ncols_)) {
      for (int d = 1; d <= count_; ++d) {
        f(static_cast<std::size_t>(static_cast<std::int64_t>(cell) + offset_[d]), d);
      }
      return;
    }
    for (int d = 1; d <= count_; ++d) {
      const auto rr = r + kRowOffset[d];
      const auto cc = c + kColOffset[d];
      if (rr < 0 || cc < 0 || rr >= nrows_ || cc >= static_cast<std::int64_t>(ncols_)) continue;
      f(static_cast<std::size_t>(static_cast<std::int64_t>(cell) + offset_[d]), d);
    }
  }

  /// Index of the neighbor in direction `dir`, or kOffGrid.
  std::size_t step(std::size_t cell, int dir) const;

  int count() const { return count_; }

 private:
  std::size_t ncols_;
  std::int64_t nrows_;
  int count_;
  std::array<std::int64_t, 9> offset_{};
};

inline constexpr std::size_t kOffGrid = static_cast<std::size_t>(-1);

/// In-bounds neighbors of `c` in the fixed order (cardinals first).
std::vector<CellIndex> neighbors(const Raster& r, CellIndex c, Connectivity conn);

/// Perimeter cells: top row, bottom row, then left and right columns top to bottom.
std::vector<CellIndex> edge_cells(const Raster& r);

/// Flat-index version of edge_cells for a grid of the given shape.
std::vector<std::size_t> edge_indices(std::int32_t rows, std::int32_t cols);

}  // namespace floodfill
