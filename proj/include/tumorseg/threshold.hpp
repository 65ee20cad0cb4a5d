#pragma once

#include "tumorseg/morphology.hpp"
#include "tumorseg/raster.hpp"

namespace tumorseg {

/// A gray level in [0, 255] used as a decision threshold.
class ThresholdValue {
 public:
  explicit ThresholdValue(int level);
  int level() const noexcept { return level_; }
  bool operator==(const ThresholdValue&) const = default;
  auto operator<=>(const ThresholdValue&) const = default;

 private:
  int level_;
};

/// Foreground iff pixel >= th (boundary inclusive).
BinaryMask apply_threshold(const GrayImage& img, ThresholdValue th);

/// Foreground iff pixel > t, i.e. the upper class of an Otsu split at t.
/// Equivalent to apply_threshold(img, t + 1), and empty when t = 255.
BinaryMask threshold_above(const GrayImage& img, ThresholdValue t);

/// Otsu's two-class split: returns the last level t of the lower class
/// [0..t] maximising the between-class variance. Candidates start at the
/// lowest occupied level, and ties resolve to the smallest t. Comparisons are
/// exact (integer arithmetic), so equal variances really compare equal.
/// Throws kEmptyHistogram for a zero-mass histogram.
ThresholdValue otsu_threshold(const Histogram& hist);

/// floor(max pixel / 2).
ThresholdValue initial_threshold(const GrayImage& img);
ThresholdValue initial_threshold(const Histogram& hist);

enum class Side { kLeft, kRight };
const char* to_string(Side side);

/// Inclusive pixel bounds. An empty mask yields the degenerate (0,0,0,0).
struct CropBox {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;
  bool operator==(const CropBox&) const = default;
};

CropBox bounding_box(const BinaryMask& mask);

enum class SymmetrySource {
  /// Otsu on the bin-wise absolute difference of the two half histograms.
  kDifference,
  /// Otsu on the histogram of the half with the larger intensity sum.
  kBrighterHalf,
};

struct SymmetryResult {
  BinaryMask mask;
  Side tumor_side;
  ThresholdValue chosen_threshold;
  CropBox crop_box;
  Histogram compared;
};

/// Splits the image at column floor(width/2) (an odd centre column belongs to
/// neither half), thresholds the whole image above the Otsu level of the
/// compared histogram, then cleans up and keeps the largest component.
/// Throws kInvalidArgument for width < 2 and kNoAsymmetry when the halves'
/// histograms are identical.
SymmetryResult symmetry_threshold(const GrayImage& img, const StructuringElement& se,
                                  SymmetrySource source = SymmetrySource::kDifference);

/// The two half histograms compared by symmetry_threshold.
std::pair<Histogram, Histogram> half_histograms(const GrayImage& img);

}  // namespace tumorseg
