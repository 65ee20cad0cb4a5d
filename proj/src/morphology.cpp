#include "tumorseg/morphology.hpp"

#include <algorithm>
#include <deque>

namespace tumorseg {

StructuringElement::StructuringElement(int width, int height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  if (width < 1 || height < 1 || width % 2 == 0 || height % 2 == 0)
    throw Error(ErrorCode::kInvalidArgument, "structuring element dimensions must be odd and positive");
  if (bits_.size() != static_cast<std::size_t>(width) * height)
    throw Error(ErrorCode::kDimensionMismatch, "structuring element bit count does not match its shape");
  for (auto& b : bits_) {
    if (b > 1) throw Error(ErrorCode::kInvalidArgument, "structuring element bits must be 0 or 1");
  }
  if (std::none_of(bits_.begin(), bits_.end(), [](auto b) { return b != 0; }))
    throw Error(ErrorCode::kInvalidArgument, "structuring element needs at least one set cell");
}

StructuringElement StructuringElement::square(int size) {
  if (size < 1) throw Error(ErrorCode::kInvalidArgument, "structuring element size must be positive");
  return StructuringElement(size, size, std::vector<std::uint8_t>(static_cast<std::size_t>(size) * size, 1));
}

StructuringElement StructuringElement::cross(int size) {
  if (size < 1) throw Error(ErrorCode::kInvalidArgument, "structuring element size must be positive");
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(size) * size, 0);
  const int c = size / 2;
  for (int i = 0; i < size; ++i) {
    bits[static_cast<std::size_t>(c * size + i)] = 1;
    bits[static_cast<std::size_t>(i * size + c)] = 1;
  }
  return StructuringElement(size, size, std::move(bits));
}

bool StructuringElement::at(int dx, int dy) const {
  const int x = dx + radius_x();
  const int y = dy + radius_y();
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return false;
  return bits_[static_cast<std::size_t>(y * width_ + x)] != 0;
}

StructuringElement StructuringElement::reflect() const {
  std::vector<std::uint8_t> out(bits_.rbegin(), bits_.rend());
  return StructuringElement(width_, height_, std::move(out));
}

namespace {

struct Offset {
  int dx;
  int dy;
};

std::vector<Offset> offsets(const StructuringElement& se) {
  std::vector<Offset> out;
  for (int dy = -se.radius_y(); dy <= se.radius_y(); ++dy)
    for (int dx = -se.radius_x(); dx <= se.radius_x(); ++dx)
      if (se.at(dx, dy)) out.push_back({dx, dy});
  return out;
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
  // (B^)_z meets A  <=>  exists b in B with z - b in A.
  const auto offs = offsets(se);
  std::vector<std::uint8_t> out(mask.size(), 0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      for (const auto& o : offs) {
        const int sx = x - o.dx;
        const int sy = y - o.dy;
        if (mask.contains(sx, sy) && mask(sx, sy)) {
          out[mask.index(x, y)] = 1;
          break;
        }
      }
    }
  }
  return BinaryMask(mask.width(), mask.height(), std::move(out));
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
  const auto offs = offsets(se);
  std::vector<std::uint8_t> out(mask.size(), 0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      bool fits = true;
      for (const auto& o : offs) {
        const int sx = x + o.dx;
        const int sy = y + o.dy;
        if (!mask.contains(sx, sy) || !mask(sx, sy)) {
          fits = false;
          break;
        }
      }
      out[mask.index(x, y)] = fits ? 1 : 0;
    }
  }
  return BinaryMask(mask.width(), mask.height(), std::move(out));
}

BinaryMask closing(const BinaryMask& mask, const StructuringElement& se) {
  const int rx = se.radius_x();
  const int ry = se.radius_y();
  const int pw = mask.width() + 2 * rx;
  BinaryMask padded(pw, mask.height() + 2 * ry, 0);
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) padded.set(x + rx, y + ry, mask(x, y));
  const BinaryMask closed = erode(dilate(padded, se), se);
  BinaryMask out(mask.width(), mask.height(), 0);
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) out.set(x, y, closed(x + rx, y + ry));
  return out;
}

BinaryMask open_close_cleanup(const BinaryMask& mask, const StructuringElement& se) {
  return closing(opening(mask, se), se);
}

Components connected_components(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  std::vector<std::int32_t> labels(mask.size(), 0);
  std::vector<std::size_t> sizes;
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (!mask[start] || labels[start] != 0) continue;
    const auto label = static_cast<std::int32_t>(sizes.size() + 1);
    std::size_t size = 0;
    labels[start] = label;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t p = queue.front();
      queue.pop_front();
      ++size;
      const int x = static_cast<int>(p % w);
      const int y = static_cast<int>(p / w);
      const std::pair<int, int> nbrs[4] = {{x, y - 1}, {x - 1, y}, {x + 1, y}, {x, y + 1}};
      for (auto [nx, ny] : nbrs) {
        if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
        const std::size_t q = mask.index(nx, ny);
        if (mask[q] && labels[q] == 0) {
          labels[q] = label;
          queue.push_back(q);
        }
      }
    }
    sizes.push_back(size);
  }
  return {LabelMap(w, h, std::move(labels)), std::move(sizes)};
}

BinaryMask component_mask(const LabelMap& labels, int label) {
  std::vector<std::uint8_t> out(labels.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = labels[i] == label ? 1 : 0;
  return BinaryMask(labels.width(), labels.height(), std::move(out));
}

BinaryMask largest_component(const BinaryMask& mask) {
  const Components cc = connected_components(mask);
  if (cc.sizes.empty()) return mask;
  // max_element returns the first maximum, i.e. the lowest label on ties.
  const auto best = std::max_element(cc.sizes.begin(), cc.sizes.end()) - cc.sizes.begin();
  return component_mask(cc.labels, static_cast<int>(best) + 1);
}

}  // namespace tumorseg
