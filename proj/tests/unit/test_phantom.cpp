#include <doctest.h>

#include "../support/oracles.hpp"
#include "tumorseg/json_io.hpp"
#include "tumorseg/morphology.hpp"
#include "tumorseg/phantom.hpp"

using namespace tumorseg;

TEST_CASE("phantom geometry") {
  PhantomSpec s;
  s.disks = {Disk{32, 32, 10, {}}};
  const Phantom ph = gen_phantom(s);
  CHECK(count_foreground(ph.truth) == oracle::disk_lattice_points(32, 32, 10, 64, 64));
  for (std::size_t p = 0; p < ph.image.size(); ++p) CHECK(ph.image[p] == (ph.truth[p] ? 200 : 40));

  s.disks = {Disk{5, 7, 0, {}}};
  CHECK(count_foreground(gen_phantom(s).truth) == 1);

  s.disks = {Disk{15, 15, 6, {}}, Disk{45, 45, 8, 170}};
  const Phantom two = gen_phantom(s);
  CHECK(connected_components(two.truth).count() == 2);
  CHECK(two.image(45, 45) == 170);
}

TEST_CASE("phantom noise is bounded and reproducible") {
  PhantomSpec s;
  s.disks = {Disk{30, 30, 12, {}}};
  s.noise = 10;
  s.seed = 9;
  const Phantom a = gen_phantom(s), b = gen_phantom(s);
  CHECK(a.image == b.image);
  CHECK(a.truth == gen_phantom(PhantomSpec{64, 64, s.disks, 200, 40, 0, 0}).truth);
  bool varied = false;
  for (std::size_t p = 0; p < a.image.size(); ++p) {
    const int base = a.truth[p] ? 200 : 40;
    CHECK(std::abs(a.image[p] - base) <= 10);
    varied |= a.image[p] != base;
  }
  CHECK(varied);
  s.seed = 10;
  CHECK_FALSE(gen_phantom(s).image == a.image);
}

TEST_CASE("phantom validation") {
  PhantomSpec s;
  s.disks = {Disk{3, 30, 5, {}}};
  CHECK_THROWS_AS(gen_phantom(s), Error);
  s.disks = {Disk{30, 30, 5, {}}};
  s.foreground = 40;
  CHECK_THROWS_AS(gen_phantom(s), Error);
  s.foreground = 300;
  CHECK_THROWS_AS(gen_phantom(s), Error);
  s.foreground = 200;
  s.noise = -1;
  CHECK_THROWS_AS(gen_phantom(s), Error);
}

TEST_CASE("phantom spec json round trip") {
  PhantomSpec s;
  s.width = 48;
  s.height = 40;
  s.disks = {Disk{10, 11, 4, {}}, Disk{30, 20, 6, 180}};
  s.noise = 7;
  s.seed = 1234;
  const PhantomSpec back = phantom_spec_from_json(nlohmann::json::parse(phantom_spec_to_json(s).dump()));
  CHECK(back.width == 48);
  CHECK(back.height == 40);
  CHECK(back.noise == 7);
  CHECK(back.seed == 1234);
  REQUIRE(back.disks.size() == 2);
  CHECK(back.disks[1].intensity == 180);
  CHECK(gen_phantom(back).image == gen_phantom(s).image);
  CHECK_THROWS_AS(phantom_spec_from_json(nlohmann::json::parse(R"({"disks": 3})")), Error);
  CHECK_THROWS_AS(phantom_spec_from_json(nlohmann::json::parse(R"({"width": "wide", "disks": []})")), Error);
}
