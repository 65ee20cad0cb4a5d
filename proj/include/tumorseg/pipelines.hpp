#pragma once

#include <span>

#include "tumorseg/morphology.hpp"
#include "tumorseg/srg.hpp"
#include "tumorseg/threshold.hpp"

namespace tumorseg {

/// Default region-growing tolerance used when a caller gives none.
inline constexpr double kDefaultStopDelta = 40.0;

struct GlobalThresholdOptions {
  /// Regrow each thresholded component from the pixel closest to its centroid.
  bool srg_refine = true;
  StopDelta stop_delta = kDefaultStopDelta;
};

/// Global thresholding followed by open/close cleanup and, optionally, a
/// region-growing refinement.
///
/// No thresholds: Otsu's level on the image histogram, upper class kept.
/// One threshold: inclusive thresholding at that level. In both cases only
/// the largest component survives. Several thresholds: the cleaned masks of
/// every level are OR-ed and all components are kept, so disjoint parts of
/// different brightness can be captured together.
BinaryMask global_threshold_pipeline(const GrayImage& img, std::span<const ThresholdValue> thresholds,
                                     const StructuringElement& se, const GlobalThresholdOptions& options = {});

/// For each component of `mask`, the member pixel nearest to the component's
/// centroid (lowest row-major index on ties); region ids follow labels.
std::vector<Seed> centroid_seeds(const BinaryMask& mask);

}  // namespace tumorseg
