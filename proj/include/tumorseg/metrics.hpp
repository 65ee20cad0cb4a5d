#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tumorseg/raster.hpp"

namespace tumorseg {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
  bool operator==(const ConfusionCounts&) const = default;
};

/// Metrics with a zero denominator are std::nullopt ("undefined").
struct MetricSet {
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> precision;
  std::optional<double> fscore;
  double pixel_accuracy = 0.0;
};

struct AreaResult {
  /// Weight of one pixel, 1 / (width * height).
  double p = 0.0;
  std::uint64_t white_pixels = 0;
  /// Foreground fraction of the image.
  double area = 0.0;
  /// Filled only when requested; component order follows connected_components.
  std::vector<std::uint64_t> per_component_pixels;
  std::vector<double> per_component_areas;
};

/// Throws kDimensionMismatch when the masks differ in size.
ConfusionCounts confusion(const BinaryMask& gt, const BinaryMask& pred);

/// Sensitivity, specificity, precision and their harmonic F-score. When tp is
/// 0 but something was predicted the F-score is 0 rather than undefined.
MetricSet metric_set(const ConfusionCounts& c);

AreaResult tumor_area(const BinaryMask& mask, bool per_component = false);

/// 100 * (1 - |pred - gt| / gt), floored at 0. Throws kInvalidArgument when
/// the reference area is zero.
double area_accuracy(const AreaResult& pred, const AreaResult& gt);

}  // namespace tumorseg
