#include <doctest.h>

#include <stdexcept>

#include "rcdyn/config.hpp"
#include "rcdyn/rng.hpp"

using namespace rcdyn;

TEST_CASE("hex serialization golden values") {
  RcConfig c(4);
  c.set(0, true);
  c.set(3, true);
  CHECK(c.to_hex() == "4:9");

  RcConfig d(6);
  d.set(0, true);
  d.set(5, true);
  CHECK(d.to_hex() == "6:84");

  CHECK(RcConfig(4).to_hex() == "4:0");
  CHECK(RcConfig::all_open(4).to_hex() == "4:f");
  CHECK(RcConfig::all_open(12).to_hex() == "12:fff");
}

TEST_CASE("hex round trip on random configurations") {
  const CounterRng rng(17);
  for (int m : {1, 4, 7, 24, 63, 64, 65, 130}) {
    RcConfig c(m);
    for (int e = 0; e < m; ++e) c.set(e, rng.uniform(m * 1000 + e) < 0.5);
    CHECK(RcConfig::from_hex(c.to_hex()) == c);
  }
}

TEST_CASE("malformed hex strings are rejected") {
  CHECK_THROWS_AS(RcConfig::from_hex("4"), std::invalid_argument);
  CHECK_THROWS_AS(RcConfig::from_hex("4:ff"), std::invalid_argument);
  CHECK_THROWS_AS(RcConfig::from_hex("8:f"), std::invalid_argument);
  CHECK_THROWS_AS(RcConfig::from_hex("4:g"), std::invalid_argument);
}

TEST_CASE("bit operations") {
  RcConfig a(70), b(70);
  a.set(0, true);
  a.set(69, true);
  CHECK(a.open_count() == 2);
  CHECK(a.hamming_distance(b) == 2);
  CHECK(b.subset_of(a));
  CHECK_FALSE(a.subset_of(b));
  b.set(69, true);
  CHECK(b.subset_of(a));
  a.toggle(69);
  CHECK_FALSE(b.subset_of(a));
  CHECK(a.open_count() == 1);

  const RcConfig m = RcConfig::from_mask(8, 0xa5);
  CHECK(m.low_mask() == 0xa5);
  CHECK(m.open(0));
  CHECK_FALSE(m.open(1));
  CHECK(m.open(7));
}
