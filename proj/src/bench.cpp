#include "floodfill/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include "floodfill/ascii_grid.hpp"
#include "floodfill/error.hpp"
#include "floodfill/oracles.hpp"

namespace floodfill {

double median_seconds(const std::function<void()>& fn, int repeats) {
  using clock = std::chrono::steady_clock;
  fn();
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(repeats));
  for (int i = 0; i < repeats; ++i) {
    const auto start = clock::now();
    fn();
    times.push_back(std::chrono::duration<double>(clock::now() - start).count());
  }
  std::sort(times.begin(), times.end());
  const auto mid = times.size() / 2;
  const double median = times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
  return std::max(median, 1e-9);
}

double depression_percent(const Raster& dem, const FillReport& report) {
  const auto data = dem.data_cell_count();
  if (data == 0) return 0.0;
  return 100.0 * static_cast<double>(report.cells_raised) / static_cast<double>(data);
}

SynthWithDepressions synth_with_depression_percent(std::int32_t rows, std::int32_t cols,
                                                   double target_percent, std::uint64_t seed,
                                                   Connectivity conn) {
  if (!(target_percent >= 0.0 && target_percent < 100.0)) {
    throw InvariantError("depression target must be in [0, 100)");
  }
  const auto measure = [&](std::int32_t pits) {
    auto dem = synth_dem(SynthKind::Pits, rows, cols, seed, pits);
    const auto fill = improved_priority_flood(dem, conn, QueueBackend::Heap);
    const double pct = depression_percent(dem, fill.report);
    return SynthWithDepressions{std::move(dem), pct};
  };
  if (target_percent == 0.0) return measure(0);

  // Coverage of randomly placed discs saturates like 1 - exp(-k a / n); fit
  // the effective disc area a from each measurement and solve for k.
  const double n = static_cast<double>(rows) * static_cast<double>(cols);
  const double lo = 2.0;
  const double hi = max_pit_radius(rows, cols);
  const double area = std::numbers::pi * (lo * lo + lo * hi + hi * hi) / 3.0;
  const double target = target_percent / 100.0;
  auto pits = std::max(1, static_cast<std::int32_t>(std::lround(-n * std::log1p(-target) / area)));

  auto best = measure(pits);
  for (int round = 0; round < 8; ++round) {
    const double got = std::clamp(best.pct_depression / 100.0, 1e-6, 0.999);
    if (std::abs(best.pct_depression - target_percent) <= std::max(0.5, 0.05 * target_percent)) break;
    const double effective_area = -n * std::log1p(-got) / pits;
    const auto next = std::max(1, static_cast<std::int32_t>(std::lround(-n * std::log1p(-target) / effective_area)));
    if (next == pits) break;
    pits = next;
    auto candidate = measure(pits);
    if (std::abs(candidate.pct_depression - target_percent) < std::abs(best.pct_depression - target_percent)) {
      best = std::move(candidate);
    }
  }
  return best;
}

namespace {

std::string raster_id(std::int32_t size, double target) {
  std::ostringstream ss;
  ss << "pits-" << size << "-d" << target;
  return ss.str();
}

}  // namespace

std::vector<BenchRecord> bench_suite(const BenchConfig& config, std::ostream* progress) {
  if (config.repeats < 3) throw InvariantError("bench needs at least 3 repeats");
  for (const auto s : config.sizes) {
    if (s < 64) throw InvariantError("bench sizes must be at least 64");
  }

  std::vector<BenchRecord> records;
  for (const auto size : config.sizes) {
    for (const auto target : config.depression_percents) {
      const auto synth = synth_with_depression_percent(size, size, target, config.seed, config.conn);
      const auto& dem = synth.dem;
      const auto id = raster_id(size, target);
      const auto cells = dem.size();
      const double pct = synth.pct_depression;
      const auto record = [&](std::string algorithm, std::string id_used, std::string backend, double t) {
        records.push_back({std::move(algorithm), std::move(id_used), cells, pct, std::move(backend), t});
        if (progress) {
          const auto& r = records.back();
          *progress << r.algorithm << ' ' << r.raster_id << ' ' << r.backend << ' ' << r.wall_s << " s\n";
        }
      };

      record("priority_flood", id, "heap", median_seconds([&] {
               (void)priority_flood(dem, config.conn, QueueBackend::Heap);
             }, config.repeats));
      record("improved_priority_flood", id, "heap", median_seconds([&] {
               (void)improved_priority_flood(dem, config.conn, QueueBackend::Heap);
             }, config.repeats));

      const auto integral = round_to_integer(dem);
      for (const auto backend : {QueueBackend::Heap, QueueBackend::Bucket}) {
        record("improved_priority_flood", id + "-int", std::string(backend_name(backend)),
               median_seconds([&] { (void)improved_priority_flood(integral, config.conn, backend); },
                              config.repeats));
      }

      if (config.include_planchon) {
        record("planchon_darboux", id, "none", median_seconds([&] {
                 (void)planchon_darboux_fill(dem, config.conn, 0.0);
               }, config.repeats));
      }
    }
  }
  return records;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::string out = "algorithm,raster_id,cells,pct_depression,backend,wall_s\n";
  for (const auto& r : records) {
    out += r.algorithm + ',' + r.raster_id + ',' + std::to_string(r.cells) + ',' +
           format_real(r.pct_depression) + ',' + r.backend + ',' + format_real(r.wall_s) + '\n';
  }
  return out;
}

std::vector<SpeedupPoint> improved_speedup_series(const std::vector<BenchRecord>& records) {
  struct Pair {
    double pct = 0.0;
    double original = 0.0;
    double improved = 0.0;
  };
  std::map<std::string, Pair> by_raster;
  std::vector<std::string> order;
  for (const auto& r : records) {
    if (r.backend != "heap") continue;
    if (r.algorithm != "priority_flood" && r.algorithm != "improved_priority_flood") continue;
    if (r.raster_id.ends_with("-int")) continue;
    auto [it, inserted] = by_raster.try_emplace(r.raster_id);
    if (inserted) order.push_back(r.raster_id);
    it->second.pct = r.pct_depression;
    (r.algorithm == "priority_flood" ? it->second.original : it->second.improved) = r.wall_s;
  }
  std::vector<SpeedupPoint> out;
  for (const auto& id : order) {
    const auto& p = by_raster.at(id);
    if (p.original > 0.0 && p.improved > 0.0) {
      out.push_back({id, p.pct, (p.original / p.improved - 1.0) * 100.0});
    }
  }
  return out;
}

}  // namespace floodfill
