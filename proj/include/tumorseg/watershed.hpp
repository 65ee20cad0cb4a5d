#pragma once

#include <optional>

#include "tumorseg/filters.hpp"
#include "tumorseg/morphology.hpp"
#include "tumorseg/raster.hpp"
#include "tumorseg/threshold.hpp"

namespace tumorseg {

struct WatershedResult {
  /// Catchment labels 1..K; 0 on ridge pixels.
  LabelMap catchments;
  /// Pixels where floods from different labels meet.
  BinaryMask ridge_mask;
};

/// Priority flooding from labelled markers in increasing relief order. Equal
/// relief is served first-in first-out, and a pixel is labelled when popped:
/// if its labelled 4-neighbours disagree it becomes a ridge pixel and stops
/// the flood there. Pixels that no flood reaches are reported as ridge too.
///
/// Throws kDimensionMismatch when the marker map does not match the relief
/// and kNoMarkers when it carries no positive label.
WatershedResult watershed_flood(const GrayImage& relief, const LabelMap& markers);

/// 4-connected plateaus with no strictly lower neighbour, labelled 1..K in
/// row-major order of first encounter.
LabelMap regional_minima(const GrayImage& relief);

/// Flooding seeded from every regional minimum.
WatershedResult watershed_flood_minima(const GrayImage& relief);

enum class ReliefSource {
  /// median3x3(highpass(gray)), the edge-strength surface.
  kFiltered,
  /// The gray image itself.
  kIntensity,
};

enum class MarkerSource {
  /// Threshold the filtered (high-pass + median) image.
  kFiltered,
  /// Threshold the gray image.
  kIntensity,
};

enum class BackgroundMarker {
  /// Border pixels outside the foreground components.
  kBorder,
  /// Every pixel outside the foreground dilated by the structuring element.
  kOutsideDilation,
};

struct WatershedConfig {
  Kernel3x3 kernel = kHighPassMask;
  ReliefSource relief = ReliefSource::kFiltered;
  MarkerSource markers = MarkerSource::kIntensity;
  BackgroundMarker background = BackgroundMarker::kOutsideDilation;
};

/// Everything the pipeline computed, for inspection and the CLI.
struct WatershedTrace {
  GrayImage relief;
  ThresholdValue level;
  int foreground_markers;
  WatershedResult flood;
};

/// Gray image -> high-pass -> median -> threshold -> watershed -> cleanup.
///
/// The thresholded image (gray by default, see MarkerSource) yields one marker
/// per foreground component plus one background marker. With `th` unset the
/// level is Otsu's and the foreground is the upper class; an explicit `th`
/// thresholds inclusively. The filtered image is flooded from those markers,
/// and the union of foreground catchments goes through open/close cleanup and
/// largest-component selection (skipped with `keep_all_components`). When the
/// threshold leaves no foreground the result is an empty mask.
BinaryMask watershed_pipeline(const GrayImage& img, std::optional<ThresholdValue> th,
                              const StructuringElement& se, const WatershedConfig& config = {},
                              bool keep_all_components = false, WatershedTrace* trace = nullptr);
BinaryMask watershed_pipeline(const RgbImage& img, std::optional<ThresholdValue> th,
                              const StructuringElement& se, const WatershedConfig& config = {},
                              bool keep_all_components = false, WatershedTrace* trace = nullptr);

}  // namespace tumorseg
