#include "tumorseg/threshold.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>

namespace tumorseg {

namespace mp = boost::multiprecision;

ThresholdValue::ThresholdValue(int level) : level_(level) {
  if (level < 0 || level > 255) throw Error(ErrorCode::kInvalidArgument, "threshold level outside [0, 255]");
}

BinaryMask apply_threshold(const GrayImage& img, ThresholdValue th) {
  std::vector<std::uint8_t> out(img.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = img[i] >= th.level() ? 1 : 0;
  return BinaryMask(img.width(), img.height(), std::move(out));
}

BinaryMask threshold_above(const GrayImage& img, ThresholdValue t) {
  if (t.level() == 255) return BinaryMask(img.width(), img.height(), 0);
  return apply_threshold(img, ThresholdValue(t.level() + 1));
}

ThresholdValue otsu_threshold(const Histogram& hist) {
  const std::uint64_t total = hist.total();
  if (total == 0) throw Error(ErrorCode::kEmptyHistogram, "otsu_threshold: histogram has no mass");
  if (total > (std::uint64_t{1} << 32))
    throw Error(ErrorCode::kInvalidArgument, "otsu_threshold: histogram mass above 2^32");

  __extension__ typedef __int128 i128;
  i128 sum_all = 0;
  for (int j = 0; j < kGrayLevels; ++j) sum_all += static_cast<i128>(j) * hist[j];

  // sigma_B^2 is proportional to (N*s0 - n0*S)^2 / (n0*n1); compare those
  // ratios by cross-multiplication so ties are detected exactly.
  mp::int256_t best_num2 = 0;
  mp::int256_t best_den = 1;
  int best_t = -1;
  i128 n0 = 0;
  i128 s0 = 0;
  const i128 n = static_cast<i128>(total);
  for (int t = 0; t < kGrayLevels; ++t) {
    n0 += hist[t];
    s0 += static_cast<i128>(t) * hist[t];
    if (n0 == 0) continue;
    const i128 n1 = n - n0;
    mp::int256_t num2 = 0;
    mp::int256_t den = 1;
    if (n1 > 0) {
      const mp::int256_t num = mp::int256_t(n * s0 - n0 * sum_all);
      num2 = num * num;
      den = mp::int256_t(n0) * mp::int256_t(n1);
    }
    if (best_t < 0 || num2 * best_den > best_num2 * den) {
      best_num2 = num2;
      best_den = den;
      best_t = t;
    }
  }
  return ThresholdValue(best_t);
}

ThresholdValue initial_threshold(const Histogram& hist) {
  const int max_level = hist.max_level();
  return ThresholdValue(max_level < 0 ? 0 : max_level / 2);
}

ThresholdValue initial_threshold(const GrayImage& img) { return initial_threshold(histogram(img)); }

const char* to_string(Side side) { return side == Side::kLeft ? "left" : "right"; }

CropBox bounding_box(const BinaryMask& mask) {
  CropBox box{mask.width(), mask.height(), -1, -1};
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(x, y)) continue;
      box.x0 = std::min(box.x0, x);
      box.y0 = std::min(box.y0, y);
      box.x1 = std::max(box.x1, x);
      box.y1 = std::max(box.y1, y);
    }
  }
  if (box.x1 < 0) return CropBox{};
  return box;
}

std::pair<Histogram, Histogram> half_histograms(const GrayImage& img) {
  if (img.width() < 2) throw Error(ErrorCode::kInvalidArgument, "symmetry split needs at least 2 columns");
  const int half = img.width() / 2;
  const int right_start = img.width() - half;
  Histogram left;
  Histogram right;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < half; ++x) left.add(img(x, y));
    for (int x = right_start; x < img.width(); ++x) right.add(img(x, y));
  }
  return {left, right};
}

namespace {

std::uint64_t intensity_sum(const Histogram& h) {
  std::uint64_t s = 0;
  for (int j = 0; j < kGrayLevels; ++j) s += static_cast<std::uint64_t>(j) * h[j];
  return s;
}

}  // namespace

SymmetryResult symmetry_threshold(const GrayImage& img, const StructuringElement& se, SymmetrySource source) {
  const auto [left, right] = half_histograms(img);
  if (left == right) throw Error(ErrorCode::kNoAsymmetry, "no asymmetry detected between image halves");

  Histogram compared;
  if (source == SymmetrySource::kDifference) {
    for (int j = 0; j < kGrayLevels; ++j) compared.add(j, left[j] > right[j] ? left[j] - right[j] : right[j] - left[j]);
  } else {
    compared = intensity_sum(left) >= intensity_sum(right) ? left : right;
  }

  const ThresholdValue level = otsu_threshold(compared);
  const BinaryMask mask = largest_component(open_close_cleanup(threshold_above(img, level), se));

  const int half = img.width() / 2;
  const int right_start = img.width() - half;
  std::size_t left_count = 0;
  std::size_t right_count = 0;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask(x, y)) continue;
      if (x < half) ++left_count;
      if (x >= right_start) ++right_count;
    }
  }
  const Side side = right_count > left_count ? Side::kRight : Side::kLeft;
  return SymmetryResult{mask, side, level, bounding_box(mask), compared};
}

}  // namespace tumorseg
