#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "floodfill/raster.hpp"

namespace floodfill {

/**
  @brief Depression fill by fixpoint iteration ("flood everything, then drain").

  Edge cells keep their elevation; every other cell starts at +inf and is
  lowered to max(Z(c), min over neighbors of W(n) + eps) by repeated
  full-grid sweeps, alternating forward and backward scans, until a sweep
  changes nothing. O(n^1.5) in practice. Kept as an independent check on
  the flooding algorithms and as a benchmark baseline.

  With `shuffle_seed`, every sweep visits cells in a fresh random order
  instead; for eps == 0 the result does not depend on the order.

  NoData cells take part as terrain at -inf and keep their sentinel in the
  output. Throws InvariantError for a negative or NaN eps and Error if the
  sweep cap (4n) is reached.
*/
Raster planchon_darboux_fill(const Raster& dem, Connectivity conn, double eps = 0.0,
                             std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct VerificationFailure {
  CellIndex cell;
  std::string reason;
};

struct VerificationResult {
  bool criterion1_ok = true;  // W >= Z everywhere
  bool criterion2_ok = true;  // every data cell drains
  bool criterion3_ok = true;  // W is the minimal such surface
  bool criterion3_checked = false;
  std::optional<VerificationFailure> first_failure;

  bool ok() const { return criterion1_ok && criterion2_ok && criterion3_ok; }
};

/**
  Checks a filled surface `w` against its source `z`:
    1. w >= z on every data cell;
    2. every data cell reaches the grid edge, or a NoData cell, by
       non-ascending steps (strictly descending when `strict`), found by a
       reverse flood from those drains;
    3. when not strict, w equals planchon_darboux_fill(z, conn, 0) exactly.
  Throws InvariantError when shapes or NoData masks differ.
*/
VerificationResult verify_fill(const Raster& z, const Raster& w, Connectivity conn, bool strict);

enum class SynthKind { Slope, Pits, Nested, Plateau, Noise };

std::string_view synth_kind_name(SynthKind kind);
SynthKind parse_synth_kind(std::string_view name);

/**
  Deterministic synthetic DEMs for tests and benchmarks.

  - Slope: rows rise strictly from west to east; no depressions.
  - Pits: a noisy pyramid draining to the edges with `pit_count` bowl-shaped
    basins carved in (default one per 256 cells), radii drawn from
    [2, max_pit_radius(rows, cols)].
  - Nested: three concentric basins, each spilling into the next.
  - Plateau: square blocks of equal elevation.
  - Noise: independent uniform values in [0, 100).
*/
Raster synth_dem(SynthKind kind, std::int32_t rows, std::int32_t cols, std::uint64_t seed,
                 std::optional<std::int32_t> pit_count = std::nullopt);

/// Upper bound on the radius of a basin planted by the Pits generator.
double max_pit_radius(std::int32_t rows, std::int32_t cols);

/// Rounds every data value to the nearest integer and tags the raster Integer.
Raster round_to_integer(const Raster& dem);

}  // namespace floodfill
