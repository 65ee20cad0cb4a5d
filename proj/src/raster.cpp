#include "tumorseg/raster.hpp"

#include <algorithm>
#include <cmath>

namespace tumorseg {

std::uint64_t Histogram::total() const noexcept {
  std::uint64_t sum = 0;
  for (auto c : bins_) sum += c;
  return sum;
}

int Histogram::occupied_levels() const noexcept {
  return static_cast<int>(std::count_if(bins_.begin(), bins_.end(), [](auto c) { return c > 0; }));
}

int Histogram::min_level() const noexcept {
  for (int j = 0; j < kGrayLevels; ++j)
    if (bins_[j] > 0) return j;
  return -1;
}

int Histogram::max_level() const noexcept {
  for (int j = kGrayLevels - 1; j >= 0; --j)
    if (bins_[j] > 0) return j;
  return -1;
}

GrayImage rgb_to_gray(const RgbImage& img) {
  std::vector<std::uint8_t> out(img.size());
  const auto px = img.values();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double luma = 0.299 * px[i].r + 0.587 * px[i].g + 0.114 * px[i].b;
    out[i] = static_cast<std::uint8_t>(std::clamp(std::lround(luma), 0L, 255L));
  }
  return GrayImage(img.width(), img.height(), std::move(out));
}

Histogram histogram(const GrayImage& img) {
  Histogram h;
  for (auto v : img.values()) h.add(v);
  return h;
}

BinaryMask complement(const BinaryMask& mask) {
  std::vector<std::uint8_t> out(mask.size());
  const auto in = mask.values();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = in[i] ? 0 : 1;
  return BinaryMask(mask.width(), mask.height(), std::move(out));
}

std::size_t count_foreground(const BinaryMask& mask) {
  const auto v = mask.values();
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), std::uint8_t{1}));
}

BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::kDimensionMismatch, "mask_union: shapes differ");
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] | b[i];
  return BinaryMask(a.width(), a.height(), std::move(out));
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
  if (!a.same_shape(b)) throw Error(ErrorCode::kDimensionMismatch, "is_subset: shapes differ");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

namespace {
template <typename R>
R flip(const R& r) {
  std::vector<typename R::value_type> out(r.size());
  for (int y = 0; y < r.height(); ++y)
    for (int x = 0; x < r.width(); ++x) out[r.index(r.width() - 1 - x, y)] = r(x, y);
  return R(r.width(), r.height(), std::move(out));
}
}  // namespace

GrayImage flip_horizontal(const GrayImage& img) { return flip(img); }
BinaryMask flip_horizontal(const BinaryMask& mask) { return flip(mask); }

}  // namespace tumorseg
