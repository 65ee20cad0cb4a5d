#include <algorithm>

#include "tumorseg/watershed.hpp"

namespace tumorseg {

namespace {

// Foreground components become markers 1..K; border pixels outside them form
// background marker K + 1.
LabelMap build_markers(const BinaryMask& foreground, const StructuringElement& se, BackgroundMarker mode,
                       int& fg_count) {
  const Components cc = connected_components(foreground);
  fg_count = cc.count();
  std::vector<std::int32_t> labels(cc.labels.values().begin(), cc.labels.values().end());
  const int w = foreground.width();
  const int h = foreground.height();
  const std::int32_t bg = fg_count + 1;
  if (mode == BackgroundMarker::kOutsideDilation) {
    const BinaryMask grown = dilate(foreground, se);
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (!grown[i]) labels[i] = bg;
    return LabelMap(w, h, std::move(labels));
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool border = x == 0 || y == 0 || x == w - 1 || y == h - 1;
      const std::size_t i = foreground.index(x, y);
      if (border && labels[i] == 0) labels[i] = bg;
    }
  }
  return LabelMap(w, h, std::move(labels));
}

}  // namespace

BinaryMask watershed_pipeline(const GrayImage& img, std::optional<ThresholdValue> th, const StructuringElement& se,
                              const WatershedConfig& config, bool keep_all_components, WatershedTrace* trace) {
  const GrayImage filtered = median3x3(convolve_highpass(img, config.kernel));
  const GrayImage& marker_source = config.markers == MarkerSource::kFiltered ? filtered : img;
  const GrayImage& relief = config.relief == ReliefSource::kFiltered ? filtered : img;

  const ThresholdValue level = th ? *th : otsu_threshold(histogram(marker_source));
  const BinaryMask foreground = th ? apply_threshold(marker_source, level) : threshold_above(marker_source, level);

  int fg_count = 0;
  const LabelMap markers = build_markers(foreground, se, config.background, fg_count);
  BinaryMask tumor(img.width(), img.height(), 0);
  WatershedResult flood{LabelMap(img.width(), img.height(), 0), BinaryMask(img.width(), img.height(), 0)};
  if (fg_count > 0) {
    flood = watershed_flood(relief, markers);
    std::vector<std::uint8_t> bits(img.size(), 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
      const auto l = flood.catchments[i];
      bits[i] = (l > 0 && l <= fg_count) ? 1 : 0;
    }
    tumor = BinaryMask(img.width(), img.height(), std::move(bits));
  }
  if (trace) *trace = WatershedTrace{relief, level, fg_count, flood};

  const BinaryMask cleaned = open_close_cleanup(tumor, se);
  return keep_all_components ? cleaned : largest_component(cleaned);
}

BinaryMask watershed_pipeline(const RgbImage& img, std::optional<ThresholdValue> th, const StructuringElement& se,
                              const WatershedConfig& config, bool keep_all_components, WatershedTrace* trace) {
  return watershed_pipeline(rgb_to_gray(img), th, se, config, keep_all_components, trace);
}

}  // namespace tumorseg
