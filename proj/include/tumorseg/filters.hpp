#pragma once

#include <array>

#include "tumorseg/raster.hpp"

namespace tumorseg {

/// Nine signed coefficients in row-major order; (0,0) is the top-left tap.
struct Kernel3x3 {
  std::array<int, 9> taps{};

  int operator()(int dx, int dy) const { return taps[static_cast<std::size_t>((dy + 1) * 3 + (dx + 1))]; }
  int sum() const;
};

/// The high-pass mask used ahead of watershed flooding.
inline constexpr Kernel3x3 kHighPassMask{{-1, 2, -1, 0, 0, 0, 1, -2, 1}};
/// Standard 8-neighbour Laplacian, kept for comparison with kHighPassMask.
inline constexpr Kernel3x3 kLaplacian8{{1, 1, 1, 1, -8, 1, 1, 1, 1}};

/// Correlates (no kernel flip) with edge replication and returns
/// clamp(|response|, 0, 255).
GrayImage correlate_abs(const GrayImage& img, const Kernel3x3& kernel);

inline GrayImage convolve_highpass(const GrayImage& img, const Kernel3x3& kernel = kHighPassMask) {
  return correlate_abs(img, kernel);
}

GrayImage median3x3(const GrayImage& img);

}  // namespace tumorseg
