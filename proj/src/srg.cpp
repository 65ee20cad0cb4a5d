#include "tumorseg/srg.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace tumorseg {

namespace {

__extension__ typedef __int128 i128;
using PixelHeap = std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>>;

struct Region {
  int id;
  std::int64_t sum = 0;
  std::int64_t count = 0;
  // Candidate pixels adjacent to this region, bucketed by gray level. Entries
  // become stale once their pixel is assigned and are dropped on inspection.
  std::array<PixelHeap, kGrayLevels> boundary;
};

// delta = numer / count with numer = |g*count - sum|.
struct Candidate {
  std::size_t pixel;
  std::size_t region;
  std::int64_t numer;
  std::int64_t count;
};

// True when a should be taken before b.
bool precedes(const Candidate& a, const Candidate& b) {
  const i128 lhs = static_cast<i128>(a.numer) * b.count;
  const i128 rhs = static_cast<i128>(b.numer) * a.count;
  if (lhs != rhs) return lhs < rhs;
  if (a.pixel != b.pixel) return a.pixel < b.pixel;
  return a.region < b.region;
}

void validate(const GrayImage& img, std::span<const Seed> seeds, StopDelta stop_delta) {
  if (seeds.empty()) throw Error(ErrorCode::kNoSeeds, "region growing needs at least one seed");
  if (stop_delta && (*stop_delta < 0.0 || *stop_delta > 255.0))
    throw Error(ErrorCode::kInvalidArgument, "stop delta must lie in [0, 255]");
  std::set<std::size_t> used;
  for (const auto& s : seeds) {
    if (!img.contains(s.x, s.y))
      throw Error(ErrorCode::kSeedOutOfBounds,
                  "seed (" + std::to_string(s.x) + "," + std::to_string(s.y) + ") lies outside the image");
    if (s.region_id <= 0) throw Error(ErrorCode::kInvalidArgument, "seed region ids must be positive");
    if (!used.insert(img.index(s.x, s.y)).second)
      throw Error(ErrorCode::kDuplicateSeed,
                  "two seeds share pixel (" + std::to_string(s.x) + "," + std::to_string(s.y) + ")");
  }
}

}  // namespace

LabelMap grow(const GrayImage& img, std::span<const Seed> seeds, StopDelta stop_delta, std::vector<GrowStep>* trace) {
  validate(img, seeds, stop_delta);
  const int w = img.width();
  const int h = img.height();

  // Dense region indices follow ascending region id, so the index tie-break
  // below is the region-id tie-break.
  std::map<int, std::size_t> dense;
  for (const auto& s : seeds) dense.emplace(s.region_id, 0);
  std::vector<Region> regions;
  regions.reserve(dense.size());
  for (auto& [id, idx] : dense) {
    idx = regions.size();
    regions.emplace_back().id = id;
  }

  std::vector<std::int32_t> owner(img.size(), -1);

  auto push_neighbours = [&](std::size_t p, std::size_t r) {
    const int x = static_cast<int>(p % w);
    const int y = static_cast<int>(p / w);
    const std::pair<int, int> nbrs[4] = {{x, y - 1}, {x - 1, y}, {x + 1, y}, {x, y + 1}};
    for (auto [nx, ny] : nbrs) {
      if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
      const std::size_t q = img.index(nx, ny);
      if (owner[q] < 0) regions[r].boundary[img[q]].push(q);
    }
  };

  auto assign = [&](std::size_t p, std::size_t r) {
    owner[p] = static_cast<std::int32_t>(r);
    regions[r].sum += img[p];
    regions[r].count += 1;
  };

  // Seeds first (they carry no deviation), then their neighbourhoods, so a
  // seed pixel is never queued as a candidate of another region.
  for (const auto& s : seeds) assign(img.index(s.x, s.y), dense.at(s.region_id));
  for (const auto& s : seeds) push_neighbours(img.index(s.x, s.y), dense.at(s.region_id));

  for (;;) {
    std::optional<Candidate> best;
    for (std::size_t r = 0; r < regions.size(); ++r) {
      Region& reg = regions[r];
      for (int level = 0; level < kGrayLevels; ++level) {
        PixelHeap& heap = reg.boundary[level];
        while (!heap.empty() && owner[heap.top()] >= 0) heap.pop();
        if (heap.empty()) continue;
        const std::int64_t numer = std::abs(static_cast<std::int64_t>(level) * reg.count - reg.sum);
        const Candidate c{heap.top(), r, numer, reg.count};
        if (!best || precedes(c, *best)) best = c;
      }
    }
    if (!best) break;
    const double delta = static_cast<double>(best->numer) / static_cast<double>(best->count);
    if (stop_delta &&
        static_cast<long double>(best->numer) > static_cast<long double>(*stop_delta) * best->count) {
      break;
    }
    assign(best->pixel, best->region);
    if (trace) trace->push_back({best->pixel, regions[best->region].id, delta});
    push_neighbours(best->pixel, best->region);
  }

  std::vector<std::int32_t> labels(img.size(), 0);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (owner[i] >= 0) labels[i] = regions[static_cast<std::size_t>(owner[i])].id;
  return LabelMap(w, h, std::move(labels));
}

BinaryMask grow_single(const GrayImage& img, const Seed& seed, StopDelta stop_delta) {
  const LabelMap labels = grow(img, std::span<const Seed>(&seed, 1), stop_delta);
  std::vector<std::uint8_t> bits(labels.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = labels[i] == seed.region_id ? 1 : 0;
  return BinaryMask(img.width(), img.height(), std::move(bits));
}

BinaryMask grow_mask(const GrayImage& img, std::span<const Seed> seeds, StopDelta stop_delta) {
  const LabelMap labels = grow(img, seeds, stop_delta);
  std::vector<std::uint8_t> bits(labels.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = labels[i] > 0 ? 1 : 0;
  return BinaryMask(img.width(), img.height(), std::move(bits));
}

}  // namespace tumorseg
