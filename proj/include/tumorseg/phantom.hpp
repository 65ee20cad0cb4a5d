#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tumorseg/raster.hpp"

namespace tumorseg {

struct Disk {
  int cx = 0;
  int cy = 0;
  int radius = 0;
  /// Overrides PhantomSpec::foreground for this disk.
  std::optional<int> intensity;
};

struct PhantomSpec {
  int width = 64;
  int height = 64;
  std::vector<Disk> disks;
  int foreground = 200;
  int background = 40;
  /// Uniform integer noise in [-noise, noise], added then clamped.
  int noise = 0;
  std::uint32_t seed = 0;
};

struct Phantom {
  GrayImage image;
  BinaryMask truth;
};

/// A pixel belongs to a disk iff its squared distance to the centre is at
/// most radius^2. Later disks paint over earlier ones. The truth mask is
/// noise-free; the noise stream is mt19937 seeded with `seed` and consumed
/// one draw per pixel in row-major order.
///
/// Throws kInvalidGeometry for disks leaving the image, bad intensities, or a
/// negative noise amplitude.
Phantom gen_phantom(const PhantomSpec& spec);

}  // namespace tumorseg
