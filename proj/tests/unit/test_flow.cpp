#include <doctest.h>

#include <random>
#include <set>

#include "floodfill/ascii_grid.hpp"
#include "floodfill/error.hpp"
#include "floodfill/fill.hpp"
#include "floodfill/flow.hpp"
#include "test_support.hpp"

using namespace floodfill;
using namespace floodfill::testing;

namespace {

constexpr std::int8_t N = 1, E = 2, S = 3, W = 4;

bool on_perimeter(const FlowField& f, CellIndex c) {
  return c.row == 0 || c.col == 0 || c.row == f.rows() - 1 || c.col == f.cols() - 1;
}

}  // namespace

TEST_CASE("a three-column slope points east at the middle cell") {
  const auto dem = grid({{2, 1, 0}, {2, 1, 0}, {2, 1, 0}});
  CHECK(priority_flood_flowdirs(dem, Connectivity::Four).at({1, 1}) == E);

  // With diagonals the top-right corner is seeded before the east cell and
  // claims the middle first; either way the target is a column-2 cell at 0.
  const auto f = priority_flood_flowdirs(dem, Connectivity::Eight);
  CHECK(f.at({1, 1}) == 5);
  const auto path = trace_path(f, {1, 1});
  REQUIRE(path.size() == 2);
  CHECK(path.back().col == 2);
  for (std::int32_t r = 0; r < 3; ++r) {
    for (std::int32_t c = 0; c < 3; ++c) {
      if (r == 1 && c == 1) continue;
      CHECK(f.at({r, c}) == kFlowOffGrid);
    }
  }
}

TEST_CASE("the single-pit center drains out through the west outlet") {
  const auto dem = single_pit();
  const auto f = priority_flood_flowdirs(dem, Connectivity::Eight);
  CHECK(f.at({2, 2}) == W);
  const auto path = trace_path(f, {2, 2});
  REQUIRE(path.size() == 3);
  CHECK(path[1] == CellIndex{2, 1});
  CHECK(path.back().col == 0);
  CHECK(on_perimeter(f, path.back()));
  CHECK(dem == single_pit());
}

TEST_CASE("a depression with a left outlet drains through it, cells to the right lead to the sink") {
  // Row 2 is a trough: outlet at column 1 (elevation 4), sink at column 3,
  // cells further right slope down toward the sink.
  const auto dem = grid({{9, 9, 9, 9, 9, 9, 9, 9},
                         {9, 8, 8, 8, 8, 8, 8, 9},
                         {3, 4, 2, 1, 2.5, 3, 3.5, 9},
                         {9, 8, 8, 8, 8, 8, 8, 9},
                         {9, 9, 9, 9, 9, 9, 9, 9}});
  const auto f = priority_flood_flowdirs(dem, Connectivity::Eight);
  const auto sink_path = trace_path(f, {2, 3});
  CHECK(sink_path.back() == CellIndex{2, 0});
  CHECK(std::find(sink_path.begin(), sink_path.end(), CellIndex{2, 1}) != sink_path.end());
  for (std::int32_t c = 4; c <= 6; ++c) {
    CHECK(f.at({2, c}) == W);
    const auto p = trace_path(f, {2, c});
    CHECK(std::find(p.begin(), p.end(), CellIndex{2, 3}) != p.end());
  }
}

TEST_CASE("cardinal neighbors are claimed before diagonals") {
  const auto dem = grid({{0, 5, 5, 5}, {5, 5, 5, 5}, {5, 5, 5, 5}, {5, 5, 5, 5}});
  CHECK(priority_flood_flowdirs(dem, Connectivity::Eight).at({1, 1}) == 8);

  // A flat interior below a single low notch: the notch reaches S, SE, SW in
  // that order, so the cell straight below it pops first and claims the whole next row.
  const auto flat = grid({{9, 9, 0, 9, 9}, {9, 5, 5, 5, 9}, {9, 5, 5, 5, 9}, {9, 5, 5, 5, 9}, {9, 9, 9, 9, 9}});
  const auto g = priority_flood_flowdirs(flat, Connectivity::Eight);
  CHECK(g.at({1, 2}) == N);
  CHECK(g.at({1, 1}) == 5);
  CHECK(g.at({1, 3}) == 8);
  CHECK(g.at({2, 2}) == N);
  CHECK(g.at({2, 1}) == 5);
  CHECK(g.at({2, 3}) == 8);
}

TEST_CASE("the first cell of a pit to get a direction is its lowest outlet neighbor") {
  const auto dem = single_pit();
  const auto f = priority_flood_flowdirs(dem, Connectivity::Four);
  // The outlet 3 points at the perimeter; everything else in the ring is reached later.
  CHECK(f.at({2, 1}) == W);
  CHECK(f.at({2, 2}) == W);
  CHECK(f.at({1, 1}) == N);
}

TEST_CASE("NoData cells get -1 and data reached from NoData points into it") {
  const auto dem = grid({{5, -9999, 5}, {5, 1, 5}, {5, 5, 5}});
  const auto f = priority_flood_flowdirs(dem, Connectivity::Four);
  CHECK(f.at({0, 1}) == kFlowNoData);
  CHECK(f.at({1, 1}) == N);
  CHECK(trace_path(f, {1, 1}) == std::vector<CellIndex>{{1, 1}});
  CHECK_THROWS_AS(trace_path(f, {0, 1}), FlowError);
}

TEST_CASE("trace_path basics") {
  FlowField f{shape(1, 3), {0, W, W}};
  CHECK(trace_path(f, {0, 0}) == std::vector<CellIndex>{{0, 0}});
  CHECK(trace_path(f, {0, 1}) == std::vector<CellIndex>{{0, 1}, {0, 0}});
  CHECK(trace_path(f, {0, 2}).size() == 3);

  FlowField cycle{shape(1, 3), {0, E, W}};
  CHECK_THROWS_AS(trace_path(cycle, {0, 1}), FlowError);

  FlowField off{shape(1, 2), {N, 0}};
  CHECK_THROWS_AS(trace_path(off, {0, 0}), FlowError);

  FlowField bad{shape(1, 2), {9, 0}};
  CHECK_THROWS_AS(trace_path(bad, {0, 0}), FlowError);
  CHECK_THROWS_AS(trace_path(f, {3, 3}), FlowError);
}

TEST_CASE("every data cell of random rasters traces to an edge") {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 500; ++i) {
    const auto dem = random_dem(rng, 2, 32);
    const auto conn = i % 2 == 0 ? Connectivity::Eight : Connectivity::Four;
    const auto copy = dem;
    const auto f = priority_flood_flowdirs(dem, conn);
    REQUIRE(dem == copy);
    for (std::size_t c = 0; c < dem.size(); ++c) {
      const auto cell = dem.cell(c);
      if (dem.is_nodata(c)) {
        REQUIRE(f.dirs[c] == kFlowNoData);
        continue;
      }
      REQUIRE(f.dirs[c] >= 0);
      REQUIRE(f.dirs[c] <= (conn == Connectivity::Eight ? 8 : 4));
      if (f.dirs[c] == kFlowOffGrid) REQUIRE(on_perimeter(f, cell));
      const auto path = trace_path(f, cell);
      const auto end = path.back();
      // Paths end on the perimeter or beside a NoData cell.
      const auto code = f.at(end);
      if (code == kFlowOffGrid) {
        REQUIRE(on_perimeter(f, end));
      } else {
        const CellIndex next{end.row + kRowOffset[code], end.col + kColOffset[code]};
        REQUIRE(f.at(next) == kFlowNoData);
      }
    }
  }
}

TEST_CASE("flow paths never climb above the filled surface") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto dem = random_dem(rng, 3, 24, false);
    const auto filled = improved_priority_flood(dem, Connectivity::Eight).filled;
    const auto f = priority_flood_flowdirs(dem, Connectivity::Eight);
    for (std::size_t c = 0; c < dem.size(); ++c) {
      const auto code = f.dirs[c];
      if (code <= 0) continue;
      const auto n = filled.index({dem.cell(c).row + kRowOffset[code], dem.cell(c).col + kColOffset[code]});
      REQUIRE(filled[n] <= filled[c]);
    }
  }
}

TEST_CASE("ESRI code conversion") {
  FlowField f{shape(1, 10), {0, 1, 2, 3, 4, 5, 6, 7, 8, -1}};
  CHECK(to_esri_codes(f) == std::vector<std::int32_t>{0, 64, 1, 4, 16, 128, 2, 8, 32, -1});
  CHECK(to_int_codes(f) == std::vector<std::int32_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, -1});
}

TEST_CASE("flow fields serialize as integer grids") {
  const auto f = priority_flood_flowdirs(single_pit(), Connectivity::Eight);
  const auto path = std::filesystem::temp_directory_path() / "floodfill_test_flow.asc";
  save_flow_field(f, path);
  const auto back = load_ascii_grid(path);
  CHECK(back.value_type() == ValueType::Integer);
  CHECK(back.at({2, 2}) == W);
  CHECK(back.nodata_value() == -1.0);
  std::filesystem::remove(path);
}
