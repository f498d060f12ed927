#include "floodfill/watershed.hpp"

#include <unordered_map>

#include "floodfill/ascii_grid.hpp"
#include "floodfill/error.hpp"
#include "floodfill/queues.hpp"

namespace floodfill {

namespace {

struct PitEntry {
  std::size_t cell = 0;
  double z = 0.0;  // spill elevation of the cell that queued it
};

}  // namespace

WatershedResult priority_flood_watersheds(const Raster& dem, Connectivity conn, bool also_fill) {
  WatershedResult result;
  auto& field = result.labels;
  field.header = dem.header();
  field.labels.assign(dem.size(), kLabelCandidate);

  const Neighborhood nbrs(dem.rows(), dem.cols(), conn);
  std::vector<double> work;
  if (also_fill) work = dem.keys();

  TotalOrderHeap open;
  RingQueue<PitEntry> pit;
  for (const auto c : edge_indices(dem.rows(), dem.cols())) {
    open.push(dem.key(c), c);
    field.labels[c] = kLabelQueued;
  }

  std::int32_t next_label = 1;
  while (!open.empty() || !pit.empty()) {
    PitEntry current;
    if (!pit.empty()) {
      current = pit.pop();
    } else {
      const auto top = open.pop();
      current = {top.cell, top.priority};
    }
    const auto c = current.cell;
    if (field.labels[c] == kLabelQueued && !dem.is_nodata(c)) {
      field.labels[c] = next_label++;
      result.outlets.push_back(dem.cell(c));
    }
    const auto label = field.labels[c];
    nbrs.for_each(c, [&](std::size_t n, int) {
      if (field.labels[n] != kLabelCandidate) return;
      field.labels[n] = label;
      if (dem.key(n) <= current.z) {
        if (also_fill) work[n] = current.z;
        pit.push({n, current.z});
      } else {
        open.push(dem.key(n), n);
      }
    });
  }

  for (std::size_t i = 0; i < dem.size(); ++i) {
    if (dem.is_nodata(i)) field.labels[i] = kLabelNoData;
  }
  field.count = next_label - 1;
  if (also_fill) result.filled = dem.from_keys(work);
  return result;
}

std::vector<std::uint8_t> watershed_boundaries(const LabelField& field, Connectivity conn) {
  std::vector<std::uint8_t> mask(field.labels.size(), 0);
  for (const auto l : field.labels) {
    if (l != kLabelNoData && l <= 0) throw InvariantError("label field is not finalized");
  }
  const Neighborhood nbrs(field.rows(), field.cols(), conn);
  for (std::size_t c = 0; c < field.labels.size(); ++c) {
    const auto l = field.labels[c];
    if (l <= 0) continue;
    nbrs.for_each(c, [&](std::size_t n, int) {
      if (field.labels[n] > l) mask[c] = 1;
    });
  }
  return mask;
}

LabelField canonicalize_labels(const LabelField& field) {
  LabelField out = field;
  std::unordered_map<std::int32_t, std::int32_t> remap;
  for (auto& l : out.labels) {
    if (l <= 0) continue;
    const auto [it, inserted] = remap.try_emplace(l, static_cast<std::int32_t>(remap.size()) + 1);
    l = it->second;
  }
  out.count = static_cast<std::int32_t>(remap.size());
  return out;
}

void save_label_field(const LabelField& field, const std::filesystem::path& path) {
  save_int_grid(field.header, field.labels, kLabelNoData, path);
}

}  // namespace floodfill
