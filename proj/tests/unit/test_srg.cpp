#include <doctest.h>

#include <random>
#include <set>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "tumorseg/srg.hpp"

using namespace tumorseg;

namespace {

GrayImage strips() {
  GrayImage img(5, 5, 10);
  for (int y = 0; y < 5; ++y)
    for (int x = 3; x < 5; ++x) img.set(x, y, 200);
  return img;
}

ErrorCode grow_error(const GrayImage& img, std::vector<Seed> seeds, StopDelta stop) {
  try {
    grow(img, seeds, stop);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("grow accepted bad input");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("region growing examples") {
  const std::vector<Seed> one{{2, 1, 4}};
  CHECK(grow(GrayImage(6, 4, 90), one, std::nullopt) == LabelMap(6, 4, 4));
  CHECK(grow_single(GrayImage(6, 4, 90), one[0], std::nullopt) == BinaryMask(6, 4, 1));

  const BinaryMask left = grow_single(strips(), Seed{0, 0, 1}, 50.0);
  CHECK(count_foreground(left) == 15);
  CHECK(left == oracle::flood_fill(strips(), 0, 0, 50.0));

  const std::vector<Seed> two{{0, 0, 1}, {4, 4, 2}};
  const LabelMap both = grow(strips(), two, std::nullopt);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) CHECK(both(x, y) == (x < 3 ? 1 : 2));

  GrayImage spot(7, 7, 20);
  spot.set(3, 3, 240);
  BinaryMask just(7, 7, 0);
  just.set(3, 3, 1);
  CHECK(grow_single(spot, Seed{3, 3, 1}, 0.0) == just);
}

TEST_CASE("region growing errors") {
  const GrayImage img(4, 4, 0);
  CHECK(grow_error(img, {}, std::nullopt) == ErrorCode::kNoSeeds);
  CHECK(grow_error(img, {{4, 0, 1}}, std::nullopt) == ErrorCode::kSeedOutOfBounds);
  CHECK(grow_error(img, {{-1, 0, 1}}, std::nullopt) == ErrorCode::kSeedOutOfBounds);
  CHECK(grow_error(img, {{1, 1, 1}, {1, 1, 2}}, std::nullopt) == ErrorCode::kDuplicateSeed);
  CHECK(grow_error(img, {{1, 1, 0}}, std::nullopt) == ErrorCode::kInvalidArgument);
  CHECK(grow_error(img, {{1, 1, 1}}, -1.0) == ErrorCode::kInvalidArgument);
  CHECK(grow_error(img, {{1, 1, 1}}, 300.0) == ErrorCode::kInvalidArgument);
}

TEST_CASE("single-seed growth equals flood fill on plateau images") {
  std::mt19937 rng(53);
  for (int i = 0; i < 40; ++i) {
    const int stop = gen::uniform(rng, 0, 30);
    const GrayImage img = gen::plateau_image(rng, gen::uniform(rng, 4, 32), gen::uniform(rng, 4, 32),
                                             gen::uniform(rng, 2, 12), gen::uniform(rng, 0, 9), stop + 1);
    const Seed s{gen::uniform(rng, 0, img.width() - 1), gen::uniform(rng, 0, img.height() - 1), 1};
    INFO("case " << i);
    REQUIRE(grow_single(img, s, static_cast<double>(stop)) == oracle::flood_fill(img, s.x, s.y, stop));
  }
}

TEST_CASE("every step takes the global minimum, matching the rescan reference") {
  std::mt19937 rng(59);
  for (int i = 0; i < 60; ++i) {
    const int w = gen::uniform(rng, 1, 9), h = gen::uniform(rng, 1, 9);
    // Narrow value ranges make ties common.
    const int hi = gen::uniform(rng, 0, 1) ? 4 : 255;
    const GrayImage img = gen::random_image(rng, w, h, 0, hi);
    std::vector<Seed> seeds;
    std::set<std::pair<int, int>> used;
    const int n = gen::uniform(rng, 1, std::min(4, w * h));
    while (static_cast<int>(seeds.size()) < n) {
      const int x = gen::uniform(rng, 0, w - 1), y = gen::uniform(rng, 0, h - 1);
      if (!used.insert({x, y}).second) continue;
      seeds.push_back({x, y, gen::uniform(rng, 1, 3)});
    }
    StopDelta stop;
    if (gen::uniform(rng, 0, 1)) stop = gen::uniform(rng, 0, 2 * hi) / 2.0;

    std::vector<GrowStep> trace;
    std::vector<oracle::SrgStep> ref_trace;
    const LabelMap got = grow(img, seeds, stop, &trace);
    const LabelMap ref = oracle::srg_reference(img, seeds, stop, &ref_trace);
    INFO("case " << i);
    REQUIRE(got == ref);
    REQUIRE(trace.size() == ref_trace.size());
    std::set<std::size_t> seen;
    for (std::size_t k = 0; k < trace.size(); ++k) {
      REQUIRE(trace[k].pixel == ref_trace[k].pixel);
      REQUIRE(trace[k].region_id == ref_trace[k].region_id);
      REQUIRE(trace[k].delta == doctest::Approx(static_cast<double>(ref_trace[k].delta)).epsilon(1e-12));
      if (stop) REQUIRE(trace[k].delta <= *stop);
      // Once assigned a pixel never comes back.
      REQUIRE(seen.insert(trace[k].pixel).second);
      REQUIRE(got[trace[k].pixel] == trace[k].region_id);
    }
    // Regions are connected and hold their seeds.
    for (const auto& s : seeds) REQUIRE(got(s.x, s.y) == s.region_id);
    for (int id = 1; id <= 3; ++id) {
      std::vector<std::uint8_t> bits(got.size());
      for (std::size_t p = 0; p < got.size(); ++p) bits[p] = got[p] == id;
      std::set<std::pair<int, int>> own;
      const BinaryMask region(w, h, std::move(bits));
      const auto roots = oracle::component_roots(region);
      std::set<std::size_t> distinct;
      for (std::size_t p = 0; p < region.size(); ++p)
        if (region[p]) distinct.insert(roots[p]);
      std::size_t seeds_here = 0;
      for (const auto& s : seeds) seeds_here += s.region_id == id;
      // Shared-id seeds may start apart and never merge; each piece still has a seed.
      REQUIRE(distinct.size() <= seeds_here);
      for (std::size_t root : distinct) {
        bool has_seed = false;
        for (const auto& s : seeds) has_seed |= s.region_id == id && roots[img.index(s.x, s.y)] == root;
        REQUIRE(has_seed);
      }
    }
    REQUIRE(grow(img, seeds, stop) == got);
  }
}

TEST_CASE("grow_mask is the union of regions") {
  const std::vector<Seed> two{{0, 0, 1}, {4, 4, 2}};
  CHECK(grow_mask(strips(), two, 5.0) == BinaryMask(5, 5, 1));
  const std::vector<Seed> one{{4, 0, 7}};
  CHECK(count_foreground(grow_mask(strips(), one, 5.0)) == 10);
}
