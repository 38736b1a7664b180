#include "doctest.h"

#include "../common/fixtures.hpp"
#include "hts/error.hpp"
#include "hts/hierarchy.hpp"
#include "hts/sampling.hpp"

using namespace hts;
using fixtures::spec;

TEST_CASE("address text round trip") {
  const Address a = parse_address("2,0/1,1/0,3");
  REQUIRE(a.size() == 3);
  CHECK(a[0] == std::make_pair(2, 0));
  CHECK(a[2] == std::make_pair(0, 3));
  CHECK(to_string(a) == "2,0/1,1/0,3");
  for (const char* bad : {"", "1", "1,", ",2", "1,2/", "a,b", "-1,0", "1,2,3"}) {
    CHECK_THROWS_AS(parse_address(bad), Error);
  }
}

TEST_CASE("partition cuts every m-1 cells with a short last block") {
  const auto blocks = partition_subdomains(fixtures::unit_lines(5), fixtures::unit_lines(6), 3, 3);
  REQUIRE(blocks.size() == 9);
  CHECK(blocks[0].columns() == 2);
  CHECK(blocks[2].columns() == 1);
  CHECK(blocks[2].rows() == 2);
  CHECK(blocks[8].rect.x1 == 5);
  CHECK(blocks[8].rect.y1 == 6);
  CHECK(blocks[4].address == Address{{1, 1}});
  CHECK_FALSE(blocks[4].boundary);
  CHECK(blocks[3].boundary);
}

TEST_CASE("partition for m = 4, n = 3") {
  const auto blocks = partition_subdomains(fixtures::unit_lines(6), fixtures::unit_lines(6), 4, 3);
  // 6 cells in steps of 3 and 6 cells in steps of 2
  CHECK(blocks.size() == 2 * 3);
  for (const auto& b : blocks) {
    CHECK(b.columns() == 3);
    CHECK(b.rows() == 2);
  }
}

TEST_CASE("partition with exact multiple keeps full last block") {
  const auto blocks = partition_subdomains(fixtures::unit_lines(4), fixtures::unit_lines(2), 3, 2);
  CHECK(blocks.size() == 2 * 2);
  CHECK(blocks.back().columns() == 2);
  CHECK(blocks.back().rows() == 1);
}

TEST_CASE("degrees below two are rejected") {
  CHECK_THROWS_AS(generate(spec(1, 3, 3, 3, {})), Error);
  CHECK_THROWS_AS(partition_subdomains(fixtures::unit_lines(3), fixtures::unit_lines(3), 3, 1), Error);
}

TEST_CASE("subdividing adds level tagged midlines") {
  const Hierarchy h = generate(spec(3, 3, 4, 4, {{"0,0"}}));
  // block 0,0 is 2x2 cells; each cell becomes four
  CHECK(h.mesh.cells().size() == 16 - 4 + 16);
  int level1 = 0;
  for (const auto& e : h.mesh.ledges()) level1 += e.level.value_or(0) == 1;
  CHECK(level1 == 4);
  // the next level is partitioned only when the script reaches it
  CHECK(h.forest.at_level(1).empty());
}

TEST_CASE("script errors") {
  SUBCASE("repeated block") {
    CHECK_THROWS_WITH_AS(generate(spec(3, 3, 4, 4, {{"0,0", "0,0"}})), doctest::Contains("AlreadySubdivided"), Error);
  }
  SUBCASE("missing block") {
    CHECK_THROWS_WITH_AS(generate(spec(3, 3, 4, 4, {{"5,0"}})), doctest::Contains("StaleAddress"), Error);
  }
  SUBCASE("wrong depth") {
    CHECK_THROWS_WITH_AS(generate(spec(3, 3, 4, 4, {{"0,0/0,0"}})), doctest::Contains("StaleAddress"), Error);
  }
  SUBCASE("child of a block never split") {
    CHECK_THROWS_WITH_AS(generate(spec(3, 3, 4, 4, {{"0,0"}, {"1,1/0,0"}})), doctest::Contains("StaleAddress"),
                         Error);
  }
  SUBCASE("bad coordinates") {
    HierSpec s = spec(3, 3, 2, 2, {});
    s.x_coords = fixtures::coords({0, 2, 1});
    CHECK_THROWS_AS(generate(s), Error);
    s.x_coords = fixtures::coords({0, 1});
    CHECK_THROWS_AS(generate(s), Error);
  }
}

TEST_CASE("level-1 blocks carry the parent address") {
  const Hierarchy h = generate(spec(3, 3, 5, 6, {{"2,0", "1,1"}, {"1,1/0,0"}}));
  const auto ids = h.forest.at_level(1);
  // block 2,0 is 1x2 cells (2x4 after splitting), block 1,1 is 2x2 (4x4)
  CHECK(ids.size() == 2 + 4);
  CHECK(h.forest.find(parse_address("2,0/0,1")).has_value());
  CHECK_FALSE(h.forest.find(parse_address("2,0/1,0")).has_value());
  CHECK(h.forest.find(parse_address("1,1/1,1")).has_value());
  for (int id : ids) {
    const Subdomain& s = h.forest.subdomains[id];
    CHECK(h.forest.subdomains[s.parent].subdivided);
    CHECK(s.address.size() == 2);
  }
}

TEST_CASE("three-level bicubic isolation counts") {
  const Hierarchy h = generate(fixtures::bicubic_three_levels());
  const auto c = isolated_counts(h.forest);
  CHECK(c.total == 3);
  REQUIRE(c.per_level.size() >= 2);
  CHECK(c.per_level[0] == 1);
  CHECK(c.per_level[1] == 2);
  CHECK(h.mesh.cells().size() == 84);
}

TEST_CASE("isolation needs a side, not a corner") {
  SUBCASE("diagonal neighbours stay isolated") {
    const Hierarchy h = generate(spec(2, 2, 5, 5, {{"1,1", "2,2"}}));
    CHECK(isolated_counts(h.forest).total == 2);
  }
  SUBCASE("edge neighbours are not isolated") {
    const Hierarchy h = generate(spec(2, 2, 5, 5, {{"1,1", "2,1"}}));
    CHECK(isolated_counts(h.forest).total == 0);
  }
  SUBCASE("boundary blocks are not isolated") {
    const Hierarchy h = generate(spec(2, 2, 5, 5, {{"0,2"}}));
    CHECK(isolated_counts(h.forest).total == 0);
  }
}

TEST_CASE("share_side") {
  const Rect a{0, 1, 0, 1};
  CHECK(share_side(a, Rect{1, 2, 0, 1}));
  CHECK(share_side(a, Rect{0, 1, 1, 3}));
  CHECK_FALSE(share_side(a, Rect{1, 2, 1, 2}));
  CHECK_FALSE(share_side(a, Rect{2, 3, 0, 1}));
}

TEST_CASE("random specs always generate") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    SpecSampler s;
    s.m = 2 + i % 3;
    s.n = 2 + (i / 3) % 2;
    const HierSpec spec = random_spec(rng, s);
    CHECK(spec.p <= s.max_p);
    CHECK(static_cast<int>(spec.script.size()) <= s.max_levels);
    CHECK_NOTHROW(generate(spec));
  }
}
