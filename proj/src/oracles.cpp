#include "floodfill/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "floodfill/error.hpp"

namespace floodfill {

Raster planchon_darboux_fill(const Raster& dem, Connectivity conn, double eps,
                             std::optional<std::uint64_t> shuffle_seed) {
  if (!(eps >= 0.0)) throw InvariantError("eps must be a non-negative number");
  const auto z = dem.keys();
  const auto n = dem.size();
  std::vector<double> w(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dem.is_edge(i)) {
      w[i] = z[i];
    } else {
      order.push_back(i);
    }
  }

  const Neighborhood nbrs(dem.rows(), dem.cols(), conn);
  const auto relax = [&](std::size_t c) {
    double lowest = std::numeric_limits<double>::infinity();
    nbrs.for_each(c, [&](std::size_t nb, int) { lowest = std::min(lowest, w[nb] + eps); });
    const double v = std::max(z[c], lowest);
    if (v < w[c]) {
      w[c] = v;
      return true;
    }
    return false;
  };

  std::mt19937_64 rng(shuffle_seed.value_or(0));
  const std::size_t max_sweeps = 4 * n + 4;
  bool changed = true;
  std::size_t sweep = 0;
  while (changed) {
    if (sweep == max_sweeps) throw Error("fixpoint fill did not converge within 4n sweeps");
    changed = false;
    if (shuffle_seed) {
      std::shuffle(order.begin(), order.end(), rng);
      for (const auto c : order) changed |= relax(c);
    } else if (sweep % 2 == 0) {
      for (const auto c : order) changed |= relax(c);
    } else {
      for (auto it = order.rbegin(); it != order.rend(); ++it) changed |= relax(*it);
    }
    ++sweep;
  }
  return dem.from_keys(w);
}

VerificationResult verify_fill(const Raster& z, const Raster& w, Connectivity conn, bool strict) {
  if (z.rows() != w.rows() || z.cols() != w.cols()) {
    throw InvariantError("rasters differ in shape");
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z.is_nodata(i) != w.is_nodata(i)) {
      throw InvariantError("NoData masks differ at cell " + std::to_string(i));
    }
  }

  VerificationResult result;
  const auto fail = [&](std::size_t i, std::string reason) {
    if (!result.first_failure) result.first_failure = VerificationFailure{z.cell(i), std::move(reason)};
  };

  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!z.is_nodata(i) && w[i] < z[i]) {
      result.criterion1_ok = false;
      fail(i, "filled elevation is below the original");
      break;
    }
  }

  // Reverse flood from the drains, climbing only along steps water could
  // take downhill.
  const Neighborhood nbrs(z.rows(), z.cols(), conn);
  std::vector<std::uint8_t> drained(z.size(), 0);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (w.is_nodata(i)) continue;
    bool seed = w.is_edge(i);
    if (!seed) nbrs.for_each(i, [&](std::size_t nb, int) { seed = seed || w.is_nodata(nb); });
    if (seed) {
      drained[i] = 1;
      stack.push_back(i);
    }
  }
  while (!stack.empty()) {
    const auto a = stack.back();
    stack.pop_back();
    nbrs.for_each(a, [&](std::size_t b, int) {
      if (drained[b] || w.is_nodata(b)) return;
      if (strict ? w[b] > w[a] : w[b] >= w[a]) {
        drained[b] = 1;
        stack.push_back(b);
      }
    });
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!w.is_nodata(i) && !drained[i]) {
      result.criterion2_ok = false;
      fail(i, strict ? "no strictly descending path to a drain" : "no non-ascending path to a drain");
      break;
    }
  }

  if (!strict) {
    result.criterion3_checked = true;
    const auto minimal = planchon_darboux_fill(z, conn, 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (w[i] != minimal[i]) {
        result.criterion3_ok = false;
        fail(i, w[i] > minimal[i] ? "filled higher than the minimal surface"
                                  : "filled lower than the minimal surface");
        break;
      }
    }
  }
  return result;
}

std::string_view synth_kind_name(SynthKind kind) {
  switch (kind) {
    case SynthKind::Slope:
      return "slope";
    case SynthKind::Pits:
      return "pits";
    case SynthKind::Nested:
      return "nested";
    case SynthKind::Plateau:
      return "plateau";
    case SynthKind::Noise:
      return "noise";
  }
  return "unknown";
}

SynthKind parse_synth_kind(std::string_view name) {
  for (const auto kind : {SynthKind::Slope, SynthKind::Pits, SynthKind::Nested, SynthKind::Plateau,
                          SynthKind::Noise}) {
    if (synth_kind_name(kind) == name) return kind;
  }
  throw InvariantError("unknown synthetic DEM kind '" + std::string(name) + "'");
}

double max_pit_radius(std::int32_t rows, std::int32_t cols) {
  return std::max(2.0, std::min(rows, cols) / 8.0);
}

namespace {

// Distance to the nearest grid edge, in cells.
double edge_distance(std::int32_t r, std::int32_t c, std::int32_t rows, std::int32_t cols) {
  return static_cast<double>(std::min({r, c, rows - 1 - r, cols - 1 - c}));
}

// Pyramid draining to the edges. The noise stays below one step of the
// pyramid, so every interior cell keeps a strictly lower neighbor.
std::vector<double> noisy_pyramid(std::int32_t rows, std::int32_t cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> noise(0.0, 0.4);
  std::vector<double> z(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) {
      z[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)] =
          edge_distance(r, c, rows, cols) + noise(rng);
    }
  }
  return z;
}

std::vector<double> synth_pits(std::int32_t rows, std::int32_t cols, std::int32_t count, std::mt19937_64& rng) {
  auto z = noisy_pyramid(rows, cols, rng);
  const double max_radius = max_pit_radius(rows, cols);
  std::uniform_real_distribution<double> radius_dist(2.0, max_radius);
  std::uniform_real_distribution<double> noise(0.0, 0.4);
  // Centers keep the whole disc off the perimeter when the grid allows it,
  // so every basin is a closed depression.
  const auto center = [&](std::int32_t extent, std::int32_t reach) {
    auto lo = reach + 1;
    auto hi = extent - 2 - reach;
    if (lo > hi) {
      lo = 0;
      hi = extent - 1;
    }
    return std::uniform_int_distribution<std::int32_t>(lo, hi)(rng);
  };
  for (std::int32_t k = 0; k < count; ++k) {
    const double radius = radius_dist(rng);
    const auto cr = center(rows, static_cast<std::int32_t>(std::ceil(radius)));
    const auto cc = center(cols, static_cast<std::int32_t>(std::ceil(radius)));
    // Deep enough that the whole disc sits below its lowest rim point.
    const double depth = 3.0 * radius + 2.0;
    const double floor = edge_distance(cr, cc, rows, cols) - depth;
    const auto reach = static_cast<std::int32_t>(std::ceil(radius));
    for (auto r = std::max(0, cr - reach); r <= std::min(rows - 1, cr + reach); ++r) {
      for (auto c = std::max(0, cc - reach); c <= std::min(cols - 1, cc + reach); ++c) {
        const double d = std::hypot(r - cr, c - cc);
        if (d >= radius) continue;
        const double bowl = floor + 0.5 * depth * (d / radius) * (d / radius) + noise(rng);
        auto& cell = z[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
        cell = std::min(cell, bowl);
      }
    }
  }
  return z;
}

std::vector<double> synth_nested(std::int32_t rows, std::int32_t cols, std::mt19937_64& rng) {
  auto z = noisy_pyramid(rows, cols, rng);
  const double cr = (rows - 1) / 2.0;
  const double cc = (cols - 1) / 2.0;
  const double r1 = 0.45 * std::min(rows, cols);
  const std::array<double, 3> radii{r1, 0.6 * r1, 0.3 * r1};
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) {
      const double d = std::hypot(r - cr, c - cc);
      auto& cell = z[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)];
      for (const double radius : radii) {
        if (d < radius) cell -= 2.5 * radius + 3.0;
      }
    }
  }
  return z;
}

std::vector<double> synth_plateau(std::int32_t rows, std::int32_t cols, std::mt19937_64& rng) {
  const std::int32_t block = std::max(2, std::min(rows, cols) / 8);
  const auto block_rows = (rows + block - 1) / block;
  const auto block_cols = (cols + block - 1) / block;
  std::uniform_int_distribution<int> level(0, 7);
  std::vector<double> levels(static_cast<std::size_t>(block_rows) * static_cast<std::size_t>(block_cols));
  for (auto& l : levels) l = 0.5 + 1.25 * level(rng);
  std::vector<double> z(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (std::int32_t r = 0; r < rows; ++r) {
    for (std::int32_t c = 0; c < cols; ++c) {
      z[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)] =
          levels[static_cast<std::size_t>(r / block) * static_cast<std::size_t>(block_cols) +
                 static_cast<std::size_t>(c / block)];
    }
  }
  return z;
}

}  // namespace

Raster synth_dem(SynthKind kind, std::int32_t rows, std::int32_t cols, std::uint64_t seed,
                 std::optional<std::int32_t> pit_count) {
  if (rows < 2 || cols < 2) throw InvariantError("synthetic DEMs need at least 2x2 cells");
  GridHeader h;
  h.nrows = rows;
  h.ncols = cols;
  std::mt19937_64 rng(seed);
  std::vector<double> z;
  switch (kind) {
    case SynthKind::Slope:
      z.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
      for (std::int32_t r = 0; r < rows; ++r) {
        for (std::int32_t c = 0; c < cols; ++c) {
          z[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)] =
              1.0 + c + 0.001 * r;
        }
      }
      break;
    case SynthKind::Pits: {
      const auto count = pit_count.value_or(std::max(1, rows * cols / 256));
      if (count < 0) throw InvariantError("pit count must be non-negative");
      z = synth_pits(rows, cols, count, rng);
      break;
    }
    case SynthKind::Nested:
      z = synth_nested(rows, cols, rng);
      break;
    case SynthKind::Plateau:
      z = synth_plateau(rows, cols, rng);
      break;
    case SynthKind::Noise: {
      std::uniform_real_distribution<double> u(0.0, 100.0);
      z.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
      for (auto& v : z) v = u(rng);
      break;
    }
  }
  return Raster(h, std::move(z));
}

Raster round_to_integer(const Raster& dem) {
  std::vector<double> values(dem.values().begin(), dem.values().end());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!dem.is_nodata(i)) values[i] = std::round(values[i]);
  }
  return Raster(dem.header(), std::move(values), ValueType::Integer);
}

}  // namespace floodfill
