#include "tumorseg/filters.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace tumorseg {

namespace {
int clamp_coord(int v, int hi) { return std::clamp(v, 0, hi - 1); }
}  // namespace

int Kernel3x3::sum() const { return std::accumulate(taps.begin(), taps.end(), 0); }

GrayImage correlate_abs(const GrayImage& img, const Kernel3x3& kernel) {
  const int w = img.width();
  const int h = img.height();
  std::vector<std::uint8_t> out(img.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int acc = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          acc += kernel(dx, dy) * img(clamp_coord(x + dx, w), clamp_coord(y + dy, h));
      out[img.index(x, y)] = static_cast<std::uint8_t>(std::min(std::abs(acc), 255));
    }
  }
  return GrayImage(w, h, std::move(out));
}

GrayImage median3x3(const GrayImage& img) {
  const int w = img.width();
  const int h = img.height();
  std::vector<std::uint8_t> out(img.size());
  std::array<std::uint8_t, 9> window{};
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::size_t k = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) window[k++] = img(clamp_coord(x + dx, w), clamp_coord(y + dy, h));
      std::nth_element(window.begin(), window.begin() + 4, window.end());
      out[img.index(x, y)] = window[4];
    }
  }
  return GrayImage(w, h, std::move(out));
}

}  // namespace tumorseg
