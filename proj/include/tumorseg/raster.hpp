#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tumorseg/error.hpp"

namespace tumorseg {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

namespace detail {
struct GrayTag {
  static constexpr bool valid(std::uint8_t) { return true; }
  static constexpr const char* name = "GrayImage";
};
struct RgbTag {
  static constexpr bool valid(const Rgb&) { return true; }
  static constexpr const char* name = "RgbImage";
};
struct MaskTag {
  static constexpr bool valid(std::uint8_t v) { return v <= 1; }
  static constexpr const char* name = "BinaryMask";
};
struct LabelTag {
  static constexpr bool valid(std::int32_t v) { return v >= 0; }
  static constexpr const char* name = "LabelMap";
};
}  // namespace detail

/// Row-major 2-D raster. The tag type fixes the admissible value set, so a
/// BinaryMask can never hold anything but 0/1 and a LabelMap never a
/// negative label.
template <typename T, typename Tag>
class Raster {
 public:
  using value_type = T;

  Raster(int width, int height, T fill = T{}) : width_(width), height_(height) {
    check_dims(width, height);
    check_value(fill);
    values_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  Raster(int width, int height, std::vector<T> values)
      : width_(width), height_(height), values_(std::move(values)) {
    check_dims(width, height);
    if (values_.size() != static_cast<std::size_t>(width) * height) {
      throw Error(ErrorCode::kDimensionMismatch,
                  std::string(Tag::name) + ": value count does not match width*height");
    }
    for (const T& v : values_) check_value(v);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const T> values() const noexcept { return values_; }

  const T& operator()(int x, int y) const { return values_[index(x, y)]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  void set(int x, int y, T v) {
    check_value(v);
    values_[index(x, y)] = v;
  }
  void set(std::size_t i, T v) {
    check_value(v);
    values_[i] = v;
  }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }
  bool same_shape(int w, int h) const noexcept { return w == width_ && h == height_; }
  template <typename U, typename V>
  bool same_shape(const Raster<U, V>& other) const noexcept {
    return other.width() == width_ && other.height() == height_;
  }

  bool operator==(const Raster&) const = default;

 private:
  static void check_dims(int w, int h) {
    if (w < 1 || h < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(Tag::name) + ": width and height must be >= 1");
    }
  }
  static void check_value(const T& v) {
    if (!Tag::valid(v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(Tag::name) + ": value outside admissible range");
    }
  }

  int width_;
  int height_;
  std::vector<T> values_;
};

using GrayImage = Raster<std::uint8_t, detail::GrayTag>;
using RgbImage = Raster<Rgb, detail::RgbTag>;
using BinaryMask = Raster<std::uint8_t, detail::MaskTag>;
using LabelMap = Raster<std::int32_t, detail::LabelTag>;

inline constexpr int kGrayLevels = 256;

class Histogram {
 public:
  Histogram() { bins_.fill(0); }
  explicit Histogram(const std::array<std::uint64_t, kGrayLevels>& bins) : bins_(bins) {}

  std::uint64_t operator[](int level) const { return bins_.at(static_cast<std::size_t>(level)); }
  void add(int level, std::uint64_t count = 1) { bins_.at(static_cast<std::size_t>(level)) += count; }
  const std::array<std::uint64_t, kGrayLevels>& bins() const noexcept { return bins_; }

  std::uint64_t total() const noexcept;
  /// Number of levels with a non-zero count.
  int occupied_levels() const noexcept;
  /// Lowest/highest occupied level; -1 when the histogram is empty.
  int min_level() const noexcept;
  int max_level() const noexcept;

  bool operator==(const Histogram&) const = default;

 private:
  std::array<std::uint64_t, kGrayLevels> bins_;
};

GrayImage rgb_to_gray(const RgbImage& img);
Histogram histogram(const GrayImage& img);

BinaryMask complement(const BinaryMask& mask);
std::size_t count_foreground(const BinaryMask& mask);
/// Pixel-wise OR; shapes must match.
BinaryMask mask_union(const BinaryMask& a, const BinaryMask& b);
/// a is a subset of b (every foreground pixel of a is foreground in b).
bool is_subset(const BinaryMask& a, const BinaryMask& b);
GrayImage flip_horizontal(const GrayImage& img);
BinaryMask flip_horizontal(const BinaryMask& mask);

// File I/O. PGM (P2/P5, maxval <= 255) is read and written; PNG is read only.
GrayImage load_image(const std::filesystem::path& path);
/// Load a file that may be RGB without collapsing it to gray. PGM inputs are
/// returned with r = g = b.
RgbImage load_rgb(const std::filesystem::path& path);
void save_image(const GrayImage& img, const std::filesystem::path& path);
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);
/// Reads a {0,255} mask file (anything >= 128 is foreground).
BinaryMask load_mask(const std::filesystem::path& path);

// In-memory PGM codec used by the file functions above.
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

}  // namespace tumorseg
