#include "tumorseg/phantom.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace tumorseg {

namespace {

void check(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidGeometry, "phantom: " + what);
}

}  // namespace

Phantom gen_phantom(const PhantomSpec& spec) {
  check(spec.width >= 1 && spec.height >= 1, "image size must be positive");
  check(!spec.disks.empty(), "at least one disk is required");
  check(spec.background >= 0 && spec.background <= 255, "background intensity outside [0, 255]");
  check(spec.noise >= 0, "noise amplitude must be non-negative");
  for (const auto& d : spec.disks) {
    const int value = d.intensity.value_or(spec.foreground);
    check(value >= 0 && value <= 255, "disk intensity outside [0, 255]");
    check(value > spec.background, "disk intensity must exceed the background");
    check(d.radius >= 0, "disk radius must be non-negative");
    check(d.cx - d.radius >= 0 && d.cy - d.radius >= 0 && d.cx + d.radius < spec.width &&
              d.cy + d.radius < spec.height,
          "disk does not fit inside the image");
  }

  std::vector<int> clean(static_cast<std::size_t>(spec.width) * spec.height, spec.background);
  std::vector<std::uint8_t> truth(clean.size(), 0);
  for (const auto& d : spec.disks) {
    const int value = d.intensity.value_or(spec.foreground);
    const long r2 = static_cast<long>(d.radius) * d.radius;
    for (int y = d.cy - d.radius; y <= d.cy + d.radius; ++y) {
      for (int x = d.cx - d.radius; x <= d.cx + d.radius; ++x) {
        const long dx = x - d.cx;
        const long dy = y - d.cy;
        if (dx * dx + dy * dy > r2) continue;
        const std::size_t i = static_cast<std::size_t>(y) * spec.width + x;
        clean[i] = value;
        truth[i] = 1;
      }
    }
  }

  std::vector<std::uint8_t> px(clean.size());
  std::mt19937 rng(spec.seed);
  const auto span = static_cast<std::uint32_t>(2 * spec.noise + 1);
  for (std::size_t i = 0; i < px.size(); ++i) {
    int v = clean[i];
    if (spec.noise > 0) v += static_cast<int>(rng() % span) - spec.noise;
    px[i] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
  }
  return {GrayImage(spec.width, spec.height, std::move(px)), BinaryMask(spec.width, spec.height, std::move(truth))};
}

}  // namespace tumorseg
