#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "floodfill/ascii_grid.hpp"
#include "floodfill/error.hpp"
#include "floodfill/fill.hpp"
#include "floodfill/flow.hpp"
#include "floodfill/oracles.hpp"
#include "floodfill/watershed.hpp"

namespace py = pybind11;
using namespace floodfill;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Connectivity to_conn(int conn) {
  if (conn == 4) return Connectivity::Four;
  if (conn == 8) return Connectivity::Eight;
  throw py::value_error("conn must be 4 or 8");
}

// Integer numpy input becomes an Integer raster.
Raster to_raster(const py::array& input, double nodata) {
  if (input.ndim() != 2) throw py::value_error("expected a 2-D array");
  const bool integral = py::isinstance<py::array_t<std::int64_t>>(input) ||
                        py::isinstance<py::array_t<std::int32_t>>(input) ||
                        py::isinstance<py::array_t<std::int16_t>>(input) ||
                        py::isinstance<py::array_t<std::uint8_t>>(input) ||
                        py::isinstance<py::array_t<std::uint16_t>>(input);
  const auto arr = DoubleArray::ensure(input);
  GridHeader h;
  h.nrows = static_cast<std::int32_t>(arr.shape(0));
  h.ncols = static_cast<std::int32_t>(arr.shape(1));
  h.nodata_value = nodata;
  std::vector<double> values(arr.data(), arr.data() + arr.size());
  return Raster(h, std::move(values), integral ? ValueType::Integer : ValueType::Real);
}

DoubleArray to_array(const Raster& r) {
  DoubleArray out({static_cast<py::ssize_t>(r.rows()), static_cast<py::ssize_t>(r.cols())});
  std::copy(r.values().begin(), r.values().end(), out.mutable_data());
  return out;
}

template <class T, class Src>
py::array_t<T> grid_array(const Src& src, std::int32_t rows, std::int32_t cols) {
  py::array_t<T> out({static_cast<py::ssize_t>(rows), static_cast<py::ssize_t>(cols)});
  std::copy(src.begin(), src.end(), out.mutable_data());
  return out;
}

py::dict report_dict(const FillReport& r) {
  py::dict d;
  d["cells_raised"] = r.cells_raised;
  d["volume_added"] = r.volume_added;
  d["max_raise"] = r.max_raise;
  d["pit_warnings"] = r.pit_warnings;
  d["backend"] = std::string(backend_name(r.backend));
  d["notes"] = r.notes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Depression filling, flow directions and watershed labels for raster DEMs";

  py::register_exception<Error>(m, "FloodfillError", PyExc_ValueError);

  m.def(
      "fill",
      [](const py::array& dem, int conn, const std::string& backend, const std::string& algorithm,
         double nodata) {
        const auto raster = to_raster(dem, nodata);
        const auto queue = parse_backend(backend);
        FillResult result = algorithm == "original" ? priority_flood(raster, to_conn(conn), queue)
                                                    : improved_priority_flood(raster, to_conn(conn), queue);
        return py::make_tuple(to_array(result.filled), report_dict(result.report));
      },
      py::arg("dem"), py::arg("conn") = 8, py::arg("backend") = "auto", py::arg("algorithm") = "improved",
      py::arg("nodata") = -9999.0, "Fill depressions; returns (filled, report).");

  m.def(
      "fill_epsilon",
      [](const py::array& dem, int conn, double nodata) {
        const auto result = priority_flood_epsilon(to_raster(dem, nodata), to_conn(conn));
        return py::make_tuple(to_array(result.filled), report_dict(result.report));
      },
      py::arg("dem"), py::arg("conn") = 8, py::arg("nodata") = -9999.0,
      "Fill depressions with next-representable-value gradients; returns (filled, report).");

  m.def(
      "flowdirs",
      [](const py::array& dem, int conn, double nodata) {
        const auto field = priority_flood_flowdirs(to_raster(dem, nodata), to_conn(conn));
        return grid_array<std::int8_t>(field.dirs, field.rows(), field.cols());
      },
      py::arg("dem"), py::arg("conn") = 8, py::arg("nodata") = -9999.0,
      "Depression-carving flow directions (0 off-grid, 1..8 = N,E,S,W,NE,SE,SW,NW, -1 NoData).");

  m.def(
      "trace_path",
      [](const py::array_t<std::int8_t, py::array::c_style | py::array::forcecast>& dirs, int row, int col) {
        if (dirs.ndim() != 2) throw py::value_error("expected a 2-D array");
        FlowField field;
        field.header.nrows = static_cast<std::int32_t>(dirs.shape(0));
        field.header.ncols = static_cast<std::int32_t>(dirs.shape(1));
        field.dirs.assign(dirs.data(), dirs.data() + dirs.size());
        std::vector<std::pair<int, int>> out;
        for (const auto c : trace_path(field, {row, col})) out.emplace_back(c.row, c.col);
        return out;
      },
      py::arg("dirs"), py::arg("row"), py::arg("col"));

  m.def(
      "watersheds",
      [](const py::array& dem, int conn, bool also_fill, double nodata) -> py::object {
        const auto raster = to_raster(dem, nodata);
        const auto result = priority_flood_watersheds(raster, to_conn(conn), also_fill);
        auto labels = grid_array<std::int32_t>(result.labels.labels, raster.rows(), raster.cols());
        if (also_fill) return py::make_tuple(labels, to_array(*result.filled));
        return labels;
      },
      py::arg("dem"), py::arg("conn") = 8, py::arg("also_fill") = false, py::arg("nodata") = -9999.0,
      "Watershed labels (NoData = -9999); with also_fill returns (labels, filled).");

  m.def(
      "watershed_boundaries",
      [](const py::array_t<std::int32_t, py::array::c_style | py::array::forcecast>& labels, int conn) {
        if (labels.ndim() != 2) throw py::value_error("expected a 2-D array");
        LabelField field;
        field.header.nrows = static_cast<std::int32_t>(labels.shape(0));
        field.header.ncols = static_cast<std::int32_t>(labels.shape(1));
        field.labels.assign(labels.data(), labels.data() + labels.size());
        const auto mask = watershed_boundaries(field, to_conn(conn));
        return grid_array<bool>(mask, field.rows(), field.cols());
      },
      py::arg("labels"), py::arg("conn") = 8);

  m.def(
      "planchon_darboux",
      [](const py::array& dem, int conn, double eps, double nodata) {
        return to_array(planchon_darboux_fill(to_raster(dem, nodata), to_conn(conn), eps));
      },
      py::arg("dem"), py::arg("conn") = 8, py::arg("eps") = 0.0, py::arg("nodata") = -9999.0);

  m.def(
      "verify",
      [](const py::array& z, const py::array& w, int conn, bool strict, double nodata) {
        const auto r = verify_fill(to_raster(z, nodata), to_raster(w, nodata), to_conn(conn), strict);
        py::dict d;
        d["ok"] = r.ok();
        d["criterion1_ok"] = r.criterion1_ok;
        d["criterion2_ok"] = r.criterion2_ok;
        d["criterion3_ok"] = r.criterion3_ok;
        d["criterion3_checked"] = r.criterion3_checked;
        if (r.first_failure) {
          d["first_failure"] = py::make_tuple(r.first_failure->cell.row, r.first_failure->cell.col,
                                              r.first_failure->reason);
        } else {
          d["first_failure"] = py::none();
        }
        return d;
      },
      py::arg("z"), py::arg("w"), py::arg("conn") = 8, py::arg("strict") = false, py::arg("nodata") = -9999.0);

  m.def(
      "synth",
      [](const std::string& kind, int rows, int cols, std::uint64_t seed, std::optional<int> pits) {
        return to_array(synth_dem(parse_synth_kind(kind), rows, cols, seed, pits));
      },
      py::arg("kind"), py::arg("rows"), py::arg("cols"), py::arg("seed") = 1, py::arg("pits") = py::none());

  m.def(
      "load_ascii_grid",
      [](const std::string& path) {
        const auto r = load_ascii_grid(path);
        const auto& h = r.header();
        py::dict header;
        header["xllcorner"] = h.xllcorner;
        header["yllcorner"] = h.yllcorner;
        header["cellsize"] = h.cellsize;
        header["nodata"] = h.nodata_value;
        header["integer"] = r.value_type() == ValueType::Integer;
        return py::make_tuple(to_array(r), header);
      },
      py::arg("path"), "Returns (values, header).");

  m.def(
      "save_ascii_grid",
      [](const std::string& path, const py::array& values, double xllcorner, double yllcorner,
         double cellsize, double nodata) {
        auto r = to_raster(values, nodata);
        GridHeader h = r.header();
        h.xllcorner = xllcorner;
        h.yllcorner = yllcorner;
        h.cellsize = cellsize;
        save_ascii_grid(Raster(h, std::vector<double>(r.values().begin(), r.values().end()), r.value_type()),
                        path);
      },
      py::arg("path"), py::arg("values"), py::arg("xllcorner") = 0.0, py::arg("yllcorner") = 0.0,
      py::arg("cellsize") = 1.0, py::arg("nodata") = -9999.0);
}
