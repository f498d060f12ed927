#include "floodfill/flow.hpp"

#include <array>
#include <string>

#include "floodfill/ascii_grid.hpp"
#include "floodfill/error.hpp"
#include "floodfill/queues.hpp"

namespace floodfill {

FlowField priority_flood_flowdirs(const Raster& dem, Connectivity conn) {
  FlowField field{dem.header(), std::vector<std::int8_t>(dem.size(), kFlowNoData)};
  const Neighborhood nbrs(dem.rows(), dem.cols(), conn);
  std::vector<std::uint8_t> closed(dem.size(), 0);
  TotalOrderHeap open;

  for (const auto c : edge_indices(dem.rows(), dem.cols())) {
    open.push(dem.key(c), c);
    closed[c] = 1;
    field.dirs[c] = dem.is_nodata(c) ? kFlowNoData : kFlowOffGrid;
  }

  while (!open.empty()) {
    const auto c = open.pop().cell;
    nbrs.for_each(c, [&](std::size_t n, int dir) {
      if (closed[n]) return;
      closed[n] = 1;
      field.dirs[n] = dem.is_nodata(n) ? kFlowNoData : static_cast<std::int8_t>(opposite_direction(dir));
      open.push(dem.key(n), n);
    });
  }
  return field;
}

std::vector<CellIndex> trace_path(const FlowField& field, CellIndex start) {
  const auto rows = field.rows();
  const auto cols = field.cols();
  const auto cell_count = field.dirs.size();
  const auto in_grid = [&](CellIndex c) { return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols; };
  if (!in_grid(start)) throw FlowError("start cell is outside the grid");
  if (field.at(start) == kFlowNoData) throw FlowError("start cell is NoData");

  std::vector<CellIndex> path{start};
  auto current = start;
  while (true) {
    const auto code = field.at(current);
    if (code == kFlowOffGrid) break;
    if (code < 1 || code > 8) {
      throw FlowError("invalid flow code " + std::to_string(code) + " at (" +
                      std::to_string(current.row) + ", " + std::to_string(current.col) + ")");
    }
    const CellIndex next{current.row + kRowOffset[code], current.col + kColOffset[code]};
    if (!in_grid(next)) {
      throw FlowError("flow leaves the grid from an interior code at (" + std::to_string(current.row) +
                      ", " + std::to_string(current.col) + ")");
    }
    if (field.at(next) == kFlowNoData) break;
    path.push_back(next);
    if (path.size() > cell_count) {
      throw FlowError("cycle detected starting from (" + std::to_string(start.row) + ", " +
                      std::to_string(start.col) + ")");
    }
    current = next;
  }
  return path;
}

std::vector<std::int32_t> to_int_codes(const FlowField& field) {
  return {field.dirs.begin(), field.dirs.end()};
}

std::vector<std::int32_t> to_esri_codes(const FlowField& field) {
  // Indexed by our code: -, N, E, S, W, NE, SE, SW, NW.
  constexpr std::array<std::int32_t, 9> esri{0, 64, 1, 4, 16, 128, 2, 8, 32};
  std::vector<std::int32_t> out(field.dirs.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto d = field.dirs[i];
    out[i] = d < 0 ? -1 : esri[static_cast<std::size_t>(d)];
  }
  return out;
}

void save_flow_field(const FlowField& field, const std::filesystem::path& path, FlowEncoding encoding) {
  const auto codes = encoding == FlowEncoding::Esri ? to_esri_codes(field) : to_int_codes(field);
  save_int_grid(field.header, codes, kFlowNoData, path);
}

}  // namespace floodfill
