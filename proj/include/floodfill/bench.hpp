#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "floodfill/fill.hpp"
#include "floodfill/raster.hpp"

namespace floodfill {

struct BenchRecord {
  std::string algorithm;
  std::string raster_id;
  std::size_t cells = 0;
  /// Share of data cells raised by the fill, in percent.
  double pct_depression = 0.0;
  std::string backend;
  double wall_s = 0.0;
};

struct BenchConfig {
  std::vector<std::int32_t> sizes{256};
  std::vector<double> depression_percents{0.0, 5.0, 20.0, 40.0, 60.0};
  int repeats = 5;
  std::uint64_t seed = 1;
  Connectivity conn = Connectivity::Eight;
  bool include_planchon = true;
};

/// Median wall time in seconds over `repeats` runs, after one discarded warm-up run.
double median_seconds(const std::function<void()>& fn, int repeats);

/// cells_raised over data cells, in percent.
double depression_percent(const Raster& dem, const FillReport& report);

struct SynthWithDepressions {
  Raster dem;
  double pct_depression = 0.0;
};

/**
  A pits DEM whose share of depression cells is close to `target_percent`.
  The pit count is tuned by a few rounds of proportional correction against
  the measured fill. A target of 0 gives the pit-free pyramid.
*/
SynthWithDepressions synth_with_depression_percent(std::int32_t rows, std::int32_t cols,
                                                   double target_percent, std::uint64_t seed,
                                                   Connectivity conn = Connectivity::Eight);

/**
  Times, per size and depression target:
    - priority_flood vs improved_priority_flood (heap, real-valued input);
    - improved_priority_flood heap vs bucket on the rounded integer copy;
    - improved_priority_flood vs planchon_darboux_fill, when enabled.
  Sizes below 64 or fewer than 3 repeats are rejected.
*/
std::vector<BenchRecord> bench_suite(const BenchConfig& config, std::ostream* progress = nullptr);

/// CSV with header `algorithm,raster_id,cells,pct_depression,backend,wall_s`.
std::string bench_csv(const std::vector<BenchRecord>& records);

struct SpeedupPoint {
  std::string raster_id;
  double pct_depression = 0.0;
  /// (t_priority_flood / t_improved - 1) * 100.
  double speedup_pct = 0.0;
};

/// Improved-vs-unimproved speedup per raster, from heap records on real-valued rasters.
std::vector<SpeedupPoint> improved_speedup_series(const std::vector<BenchRecord>& records);

}  // namespace floodfill
