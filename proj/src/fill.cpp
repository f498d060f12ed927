#include "floodfill/fill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "floodfill/error.hpp"
#include "floodfill/queues.hpp"

namespace floodfill {

namespace {

struct IntegralRange {
  std::int64_t lowest = 0;
  std::int64_t highest = 0;
};

// Integer elevation range of the data cells, if every data value is integral
// and representable.
std::optional<IntegralRange> integral_range(const Raster& dem) {
  constexpr double kLimit = 4.0e18;
  IntegralRange range{std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::min()};
  bool any = false;
  for (std::size_t i = 0; i < dem.size(); ++i) {
    if (dem.is_nodata(i)) continue;
    const double v = dem[i];
    if (v != std::trunc(v) || std::abs(v) > kLimit) return std::nullopt;
    const auto iv = static_cast<std::int64_t>(v);
    range.lowest = std::min(range.lowest, iv);
    range.highest = std::max(range.highest, iv);
    any = true;
  }
  if (!any) return IntegralRange{};
  return range;
}

struct ResolvedBackend {
  QueueBackend backend = QueueBackend::Heap;
  IntegralRange range;
};

ResolvedBackend resolve_backend(const Raster& dem, QueueBackend requested, FillReport& report) {
  if (requested == QueueBackend::Heap) return {};
  const auto range = integral_range(dem);
  if (!range) {
    if (requested == QueueBackend::Bucket) {
      throw InvariantError("bucket backend requires integer-valued elevations");
    }
    return {};
  }
  if (!BucketQueue::fits(range->lowest, range->highest)) {
    if (requested == QueueBackend::Bucket) {
      report.notes.push_back("elevation range " + std::to_string(range->lowest) + ".." +
                             std::to_string(range->highest) +
                             " exceeds the bucket cap; using the heap backend");
    }
    return {};
  }
  return {QueueBackend::Bucket, *range};
}

class MonotoneWatch {
 public:
  void observe(double priority, FillReport& report) {
    if (priority < last_) report.open_pops_monotone = false;
    last_ = priority;
  }

 private:
  double last_ = -std::numeric_limits<double>::infinity();
};

template <class Open>
void seed_edges(const Raster& dem, const std::vector<double>& work, std::vector<std::uint8_t>& closed,
                Open& open, FillReport& report) {
  for (const auto c : edge_indices(dem.rows(), dem.cols())) {
    open.push(work[c], c);
    closed[c] = 1;
    ++report.pushes;
  }
}

template <class Open>
void flood_original(const Raster& dem, std::vector<double>& work, Connectivity conn, Open& open,
                    FillReport& report) {
  const Neighborhood nbrs(dem.rows(), dem.cols(), conn);
  std::vector<std::uint8_t> closed(dem.size(), 0);
  seed_edges(dem, work, closed, open, report);
  MonotoneWatch watch;
  while (!open.empty()) {
    const auto top = open.pop();
    ++report.pops;
    watch.observe(top.priority, report);
    const auto c = top.cell;
    const double level = work[c];
    nbrs.for_each(c, [&](std::size_t n, int) {
      if (closed[n]) return;
      closed[n] = 1;
      if (work[n] < level) work[n] = level;
      open.push(work[n], n);
      ++report.pushes;
    });
  }
}

template <class Open>
void flood_improved(const Raster& dem, std::vector<double>& work, Connectivity conn, Open& open,
                    FillReport& report) {
  const Neighborhood nbrs(dem.rows(), dem.cols(), conn);
  std::vector<std::uint8_t> closed(dem.size(), 0);
  RingQueue<std::size_t> pit;
  seed_edges(dem, work, closed, open, report);
  MonotoneWatch watch;
  while (!open.empty() || !pit.empty()) {
    std::size_t c = 0;
    if (!pit.empty()) {
      c = pit.pop();
    } else {
      const auto top = open.pop();
      watch.observe(top.priority, report);
      c = top.cell;
    }
    ++report.pops;
    const double level = work[c];
    nbrs.for_each(c, [&](std::size_t n, int) {
      if (closed[n]) return;
      closed[n] = 1;
      if (work[n] <= level) {
        work[n] = level;
        pit.push(n);
      } else {
        open.push(work[n], n);
      }
      ++report.pushes;
    });
  }
}

FillResult finish(const Raster& dem, const std::vector<double>& work, FillReport report) {
  double volume = 0.0;
  for (std::size_t i = 0; i < dem.size(); ++i) {
    if (dem.is_nodata(i)) continue;
    const double raise = work[i] - dem[i];
    if (raise > 0.0) {
      ++report.cells_raised;
      volume += raise;
      report.max_raise = std::max(report.max_raise, raise);
    }
  }
  const double cellsize = dem.header().cellsize;
  report.volume_added = volume * cellsize * cellsize;
  return {dem.from_keys(work), std::move(report)};
}

template <template <class> class Flood>
FillResult run_fill(const Raster& dem, Connectivity conn, QueueBackend requested) {
  FillReport report;
  const auto resolved = resolve_backend(dem, requested, report);
  report.backend = resolved.backend;
  auto work = dem.keys();
  if (resolved.backend == QueueBackend::Bucket) {
    BucketQueue open(resolved.range.lowest, resolved.range.highest);
    Flood<BucketQueue>{}(dem, work, conn, open, report);
  } else {
    TotalOrderHeap open;
    Flood<TotalOrderHeap>{}(dem, work, conn, open, report);
  }
  return finish(dem, work, std::move(report));
}

template <class Open>
struct OriginalFlood {
  void operator()(const Raster& dem, std::vector<double>& work, Connectivity conn, Open& open,
                  FillReport& report) const {
    flood_original(dem, work, conn, open, report);
  }
};

template <class Open>
struct ImprovedFlood {
  void operator()(const Raster& dem, std::vector<double>& work, Connectivity conn, Open& open,
                  FillReport& report) const {
    flood_improved(dem, work, conn, open, report);
  }
};

}  // namespace

std::string_view backend_name(QueueBackend backend) {
  switch (backend) {
    case QueueBackend::Heap:
      return "heap";
    case QueueBackend::Bucket:
      return "bucket";
    case QueueBackend::Auto:
      return "auto";
  }
  return "unknown";
}

QueueBackend parse_backend(std::string_view name) {
  if (name == "heap") return QueueBackend::Heap;
  if (name == "bucket") return QueueBackend::Bucket;
  if (name == "auto") return QueueBackend::Auto;
  throw InvariantError("unknown queue backend '" + std::string(name) + "'");
}

FillResult priority_flood(const Raster& dem, Connectivity conn, QueueBackend backend) {
  return run_fill<OriginalFlood>(dem, conn, backend);
}

FillResult improved_priority_flood(const Raster& dem, Connectivity conn, QueueBackend backend) {
  return run_fill<ImprovedFlood>(dem, conn, backend);
}

FillResult priority_flood_epsilon(const Raster& dem, Connectivity conn) {
  if (dem.value_type() == ValueType::Integer) {
    auto result = improved_priority_flood(dem, conn, QueueBackend::Auto);
    result.report.notes.push_back(
        "integer raster: epsilon gradients need fractional increments, so depressions were filled "
        "flat; use flow-direction carving (flowdirs) to route across them");
    return result;
  }

  FillReport report;
  report.backend = QueueBackend::Heap;
  auto work = dem.keys();
  const Neighborhood nbrs(dem.rows(), dem.cols(), conn);
  std::vector<std::uint8_t> closed(dem.size(), 0);
  TotalOrderHeap open;
  RingQueue<std::size_t> pit;
  seed_edges(dem, work, closed, open, report);

  constexpr double kUp = std::numeric_limits<double>::infinity();
  constexpr double kNoTop = std::numeric_limits<double>::quiet_NaN();
  double pit_top = kNoTop;
  MonotoneWatch watch;
  while (!open.empty() || !pit.empty()) {
    std::size_t c = 0;
    const auto open_top = open.peek_min_priority();
    if (open_top && !pit.empty() && *open_top == work[pit.front()]) {
      const auto top = open.pop();
      watch.observe(top.priority, report);
      c = top.cell;
      pit_top = kNoTop;
    } else if (!pit.empty()) {
      c = pit.pop();
      // NoData keys (-inf) would make every later raise look like an overtop.
      if (std::isnan(pit_top) && !dem.is_nodata(c)) pit_top = work[c];
    } else {
      const auto top = open.pop();
      watch.observe(top.priority, report);
      c = top.cell;
      pit_top = kNoTop;
    }
    ++report.pops;

    const double raised = std::nextafter(work[c], kUp);
    nbrs.for_each(c, [&](std::size_t n, int) {
      if (closed[n]) return;
      closed[n] = 1;
      ++report.pushes;
      if (dem.is_nodata(n)) {
        pit.push(n);
      } else if (work[n] <= raised) {
        if (pit_top < work[n] && raised >= work[n]) ++report.pit_warnings;
        work[n] = raised;
        pit.push(n);
      } else {
        open.push(work[n], n);
      }
    });
  }
  return finish(dem, work, std::move(report));
}

}  // namespace floodfill
