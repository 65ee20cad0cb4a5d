#include "tumorseg/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "tumorseg/morphology.hpp"

namespace tumorseg {

ConfusionCounts confusion(const BinaryMask& gt, const BinaryMask& pred) {
  if (!gt.same_shape(pred)) throw Error(ErrorCode::kDimensionMismatch, "confusion: mask sizes differ");
  ConfusionCounts c;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const bool g = gt[i] != 0;
    const bool p = pred[i] != 0;
    if (g && p) {
      ++c.tp;
    } else if (!g && p) {
      ++c.fp;
    } else if (g) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

namespace {
std::optional<double> ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace

MetricSet metric_set(const ConfusionCounts& c) {
  MetricSet m;
  m.sensitivity = ratio(c.tp, c.tp + c.fn);
  m.specificity = ratio(c.tn, c.tn + c.fp);
  m.precision = ratio(c.tp, c.tp + c.fp);
  if (c.tp == 0 && c.tp + c.fp > 0) {
    m.fscore = 0.0;
  } else if (m.sensitivity && m.precision && *m.sensitivity + *m.precision > 0.0) {
    m.fscore = 2.0 * (*m.sensitivity * *m.precision) / (*m.sensitivity + *m.precision);
  }
  const std::uint64_t total = c.total();
  m.pixel_accuracy = total == 0 ? 0.0 : static_cast<double>(c.tp + c.tn) / static_cast<double>(total);
  return m;
}

AreaResult tumor_area(const BinaryMask& mask, bool per_component) {
  AreaResult r;
  const double pixels = static_cast<double>(mask.size());
  r.p = 1.0 / pixels;
  r.white_pixels = count_foreground(mask);
  r.area = static_cast<double>(r.white_pixels) / pixels;
  if (per_component) {
    const Components cc = connected_components(mask);
    for (auto size : cc.sizes) {
      r.per_component_pixels.push_back(size);
      r.per_component_areas.push_back(static_cast<double>(size) / pixels);
    }
  }
  return r;
}

double area_accuracy(const AreaResult& pred, const AreaResult& gt) {
  if (gt.area <= 0.0) throw Error(ErrorCode::kInvalidArgument, "area_accuracy: reference area is zero");
  return std::max(0.0, 100.0 * (1.0 - std::abs(pred.area - gt.area) / gt.area));
}

}  // namespace tumorseg
