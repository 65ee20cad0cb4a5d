#include <limits>

#include "tumorseg/pipelines.hpp"

namespace tumorseg {

std::vector<Seed> centroid_seeds(const BinaryMask& mask) {
  const Components cc = connected_components(mask);
  const auto k = static_cast<std::size_t>(cc.count());
  std::vector<double> sx(k, 0.0), sy(k, 0.0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const auto l = cc.labels(x, y);
      if (l == 0) continue;
      sx[static_cast<std::size_t>(l - 1)] += x;
      sy[static_cast<std::size_t>(l - 1)] += y;
    }
  }
  std::vector<Seed> seeds(k);
  std::vector<double> best(k, std::numeric_limits<double>::infinity());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const auto l = cc.labels(x, y);
      if (l == 0) continue;
      const auto c = static_cast<std::size_t>(l - 1);
      const double n = static_cast<double>(cc.sizes[c]);
      const double dx = x - sx[c] / n;
      const double dy = y - sy[c] / n;
      const double d2 = dx * dx + dy * dy;
      if (d2 < best[c]) {
        best[c] = d2;
        seeds[c] = Seed{x, y, l};
      }
    }
  }
  return seeds;
}

BinaryMask global_threshold_pipeline(const GrayImage& img, std::span<const ThresholdValue> thresholds,
                                     const StructuringElement& se, const GlobalThresholdOptions& options) {
  const bool multi = thresholds.size() > 1;
  BinaryMask mask(img.width(), img.height(), 0);
  if (thresholds.empty()) {
    mask = open_close_cleanup(threshold_above(img, otsu_threshold(histogram(img))), se);
  } else {
    for (const auto& th : thresholds) mask = mask_union(mask, open_close_cleanup(apply_threshold(img, th), se));
  }
  if (!multi) mask = largest_component(mask);
  if (!options.srg_refine || count_foreground(mask) == 0) return mask;
  const std::vector<Seed> seeds = centroid_seeds(mask);
  return grow_mask(img, seeds, options.stop_delta);
}

}  // namespace tumorseg
