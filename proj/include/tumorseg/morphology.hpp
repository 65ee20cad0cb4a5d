#pragma once

#include <cstddef>
#include <vector>

#include "tumorseg/raster.hpp"

namespace tumorseg {

/// Binary probe shape with its origin at the centre cell.
class StructuringElement {
 public:
  /// Throws kInvalidArgument for even dimensions or an all-zero grid.
  StructuringElement(int width, int height, std::vector<std::uint8_t> bits);

  /// size x size block of ones (size must be odd).
  static StructuringElement square(int size);
  /// 4-connected cross of the given odd size.
  static StructuringElement cross(int size);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int radius_x() const noexcept { return width_ / 2; }
  int radius_y() const noexcept { return height_ / 2; }
  /// Membership of the cell at offset (dx, dy) from the origin.
  bool at(int dx, int dy) const;
  bool contains_origin() const { return at(0, 0); }
  StructuringElement reflect() const;

  bool operator==(const StructuringElement&) const = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> bits_;
};

/// Output z is set iff the reflected element translated to z meets the
/// foreground. Cells falling outside the image are ignored.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);
/// Output z is set iff the element translated to z lies entirely inside the
/// foreground. Cells outside the image count as background, so borders erode.
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);

inline BinaryMask opening(const BinaryMask& mask, const StructuringElement& se) { return dilate(erode(mask, se), se); }
/// Dilation then erosion, evaluated as if the background continued past the
/// image edge: the dilated intermediate is not clipped, so shapes touching
/// the border are not eaten by the erosion step. Extensive for elements that
/// contain their origin.
BinaryMask closing(const BinaryMask& mask, const StructuringElement& se);

/// Opening followed by closing with the same element.
BinaryMask open_close_cleanup(const BinaryMask& mask, const StructuringElement& se);

struct Components {
  LabelMap labels;
  /// sizes[k] = pixel count of label k + 1.
  std::vector<std::size_t> sizes;

  int count() const noexcept { return static_cast<int>(sizes.size()); }
};

/// 4-connected labelling; labels 1..K in order of first row-major encounter.
Components connected_components(const BinaryMask& mask);
/// Keeps only the biggest component (ties go to the lowest label).
BinaryMask largest_component(const BinaryMask& mask);
BinaryMask component_mask(const LabelMap& labels, int label);

}  // namespace tumorseg
