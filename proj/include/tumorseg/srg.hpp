#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tumorseg/raster.hpp"

namespace tumorseg {

struct Seed {
  int x = 0;
  int y = 0;
  /// Seeds sharing an id grow one region together.
  int region_id = 1;
};

/// Growth halts once the smallest available deviation exceeds this value.
/// std::nullopt grows until every reachable pixel is assigned.
using StopDelta = std::optional<double>;

/// One grown pixel, in acceptance order. Seeds are not recorded.
struct GrowStep {
  std::size_t pixel;
  int region_id;
  /// |g(x) - region mean| at the moment of acceptance.
  double delta;
};

/// Seeded region growing. Every step takes, over all unassigned pixels that
/// 4-touch a region, the (pixel, region) pair with the smallest deviation of
/// the pixel's gray value from the region's running mean; ties go to the
/// lower row-major index, then the lower region id. Region means are kept as
/// exact integer sums so comparisons never depend on rounding.
///
/// Returns a LabelMap holding the seeds' region ids (0 = unassigned). When
/// `trace` is given every acceptance is appended to it.
///
/// Throws kNoSeeds, kSeedOutOfBounds, kDuplicateSeed, or kInvalidArgument
/// (non-positive region id, stop delta outside [0, 255]).
LabelMap grow(const GrayImage& img, std::span<const Seed> seeds, StopDelta stop_delta,
              std::vector<GrowStep>* trace = nullptr);

/// The region grown from a single seed, as a mask.
BinaryMask grow_single(const GrayImage& img, const Seed& seed, StopDelta stop_delta);

/// Union of all regions grown from `seeds`.
BinaryMask grow_mask(const GrayImage& img, std::span<const Seed> seeds, StopDelta stop_delta);

}  // namespace tumorseg
