#include "doctest.h"

#include <random>

#include "../common/fixtures.hpp"
#include "hts/basis.hpp"
#include "hts/dimension.hpp"
#include "hts/error.hpp"
#include "hts/sampling.hpp"

using namespace hts;
using fixtures::spec;

namespace {

struct Built {
  Hierarchy h;
  TMesh ext;
  Census census;
  OrderedLEdges order;
};

Built build(const HierSpec& s, TieBreak tie = TieBreak::Least, TrivialPolicy policy = TrivialPolicy::TrivialFirst) {
  Hierarchy h = generate(s);
  TMesh ext = extend(h.mesh, s.m, s.n);
  Census c = census(ext, h.forest);
  OrderedLEdges o = order_ledges(ext, h.forest, s.m, s.n, tie, policy);
  return {std::move(h), std::move(ext), std::move(c), std::move(o)};
}

long long dim_total(const OrderedLEdges& o) {
  long long s = 0;
  for (const auto& st : o.steps) s += st.dim;
  return s;
}

}  // namespace

TEST_CASE("A-set labels") {
  LEdge v;
  v.orientation = Orientation::Vertical;
  LEdge h;
  h.orientation = Orientation::Horizontal;
  // m = 4, n = 3
  CHECK(classify_A(v, 1, 4, 3) == ASet::A1);
  CHECK(classify_A(v, 2, 4, 3) == ASet::A3);
  CHECK(classify_A(v, 3, 4, 3) == ASet::A5);
  CHECK(classify_A(h, 1, 4, 3) == ASet::A2);
  CHECK(classify_A(h, 2, 4, 3) == ASet::A4);
  CHECK_THROWS_WITH_AS(classify_A(h, 3, 4, 3), doctest::Contains("UnlabeledEdge"), Error);
  // m = n = 2: only A4 and A5
  CHECK(classify_A(v, 1, 2, 2) == ASet::A5);
  CHECK(classify_A(h, 1, 2, 2) == ASet::A4);
  CHECK_THROWS_AS(classify_A(v, 0, 2, 2), Error);
}

TEST_CASE("position labels count from the left and from the top") {
  const Built b = build(spec(4, 3, 6, 6, {{"0,0"}}));
  std::vector<int> vertical, horizontal;
  for (const auto& e : b.ext.ledges()) {
    if (!e.interior || e.level.value_or(0) != 1) continue;
    const auto labels = position_labels(b.ext, e, b.h.forest);
    REQUIRE(labels.size() == 1);
    (e.orientation == Orientation::Vertical ? vertical : horizontal).push_back(labels[0]);
    if (e.orientation == Orientation::Vertical) {
      CHECK(Coord(labels[0]) == e.fixed + Coord(1, 2));
    }
  }
  std::sort(vertical.begin(), vertical.end());
  std::sort(horizontal.begin(), horizontal.end());
  CHECK(vertical == std::vector<int>{1, 2, 3});
  CHECK(horizontal == std::vector<int>{1, 2});
  for (const auto& e : b.ext.ledges()) {
    if (e.interior && e.orientation == Orientation::Horizontal && e.level == 1) {
      // top midline y = 3/2 comes first
      CHECK(position_label(b.ext, e, b.h.forest) == (e.fixed == Coord(3, 2) ? 1 : 2));
    }
  }
  LEdge level0 = b.ext.ledges().front();
  level0.level = 0;
  CHECK_THROWS_WITH_AS(position_labels(b.ext, level0, b.h.forest), doctest::Contains("NoParentSubdomain"), Error);
}

TEST_CASE("level partition covers the interior l-edges") {
  const Built b = build(fixtures::bicubic_three_levels());
  const auto groups = level_partition(b.ext);
  REQUIRE(groups.size() == 3);
  std::size_t total = 0;
  for (const auto& g : groups) total += g.size();
  CHECK(static_cast<long long>(total) == b.census.E_H + b.census.E_V);
}

TEST_CASE("removal order runs high levels first") {
  const Built b = build(fixtures::bicubic_three_levels());
  int last = b.order.steps.front().level;
  for (const auto& st : b.order.steps) {
    CHECK(st.level <= last);
    last = st.level;
    CHECK(st.vertices >= st.vplus + 2);
  }
  CHECK(last == 0);
  for (const auto& e : b.order.remainder->ledges()) CHECK_FALSE(e.interior);
}

TEST_CASE("three-level bicubic basis: 72 + 7 + 14 = 93") {
  const Built b = build(fixtures::bicubic_three_levels());
  const auto fns = construct_basis(b.order);
  std::vector<int> per(3);
  for (const auto& f : fns) ++per.at(f.level);
  CHECK(per == std::vector<int>{72, 7, 14});
  const auto rep = verify_basis(fns, b.ext, 3, 3, 93);
  CHECK(rep.count_ok());
  CHECK(rep.independent());
  CHECK(rep.conformal());
  CHECK(rep.span_ok());

  SUBCASE("dropping a function breaks count and span") {
    auto fewer = fns;
    fewer.pop_back();
    const auto r = verify_basis(fewer, b.ext, 3, 3, 93);
    CHECK_FALSE(r.count_ok());
    CHECK_FALSE(r.span_ok());
    CHECK(r.independent());
  }
  SUBCASE("duplicating a function breaks independence") {
    auto more = fns;
    more.push_back(fns.front());
    const auto r = verify_basis(more, b.ext, 3, 3, 94);
    CHECK_FALSE(r.independent());
  }
}

TEST_CASE("basis functions are normalized to minimal integers") {
  const Built b = build(fixtures::bicubic_three_levels());
  for (const auto& f : construct_basis(b.order)) {
    Integer g = 0;
    for (const auto& [pt, k] : f.factors) {
      CHECK(k.get_den() == 1);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), k.get_num().get_mpz_t());
    }
    CHECK(g == 1);
  }
}

TEST_CASE("telescoping ledger balances level by level") {
  const Built b = build(fixtures::bicubic_three_levels());
  const auto ledger = telescoping_ledger(b.order, b.census.delta_per_level);
  REQUIRE(ledger.size() == 3);
  CHECK(ledger[0].dim_sum == 72);
  CHECK(ledger[0].correction == 4);
  CHECK(ledger[1].dim_sum == 7);
  CHECK(ledger[1].correction == 1);
  CHECK(ledger[2].dim_sum == 14);
  CHECK(ledger[2].correction == 2);
  for (const auto& l : ledger) CHECK(l.balanced());
}

TEST_CASE("tie-break policy does not change the totals") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 8; ++trial) {
    SpecSampler s;
    s.m = 2 + trial % 3;
    s.n = 2 + trial % 2;
    s.max_p = s.max_q = 6;
    s.max_levels = 2;
    const HierSpec sp = random_spec(rng, s);
    const Built lo = build(sp, TieBreak::Least);
    const Built hi = build(sp, TieBreak::Greatest);
    CHECK(dim_total(lo.order) == dim_total(hi.order));
    CHECK(dim_total(lo.order) == dim_conformality_oracle(lo.ext, sp.m, sp.n));
  }
}

TEST_CASE("m = n = 2 isolated cell: the level-1 l-edges are trivial") {
  const Built b = build(spec(2, 2, 3, 3, {{"1,1"}}));
  REQUIRE(b.order.steps.size() > 2);
  const RemovalStep& first = b.order.steps.front();
  CHECK(first.level == 1);
  CHECK(first.trivial);
  CHECK(first.dim == 0);
  CHECK(first.vertices < 4);
  for (const auto& st : b.order.steps) {
    if (st.level == 1) CHECK(st.trivial);
  }
  const auto fns = construct_basis(b.order);
  for (const auto& f : fns) CHECK(f.level == 0);
  CHECK(verify_basis(fns, b.ext, 2, 2, dim_formula(b.census, 2, 2)).all());
}

TEST_CASE("phased removal over-counts where short l-edges cross") {
  const HierSpec s = spec(2, 2, 4, 4, {{"0,0", "3,0", "1,1", "2,1", "3,1", "0,3"}});
  const Built phased = build(s, TieBreak::Least, TrivialPolicy::Phased);
  const Built first = build(s);
  const long long dim = dim_conformality_oracle(first.ext, 2, 2);
  CHECK(dim == 50);
  CHECK(dim_total(phased.order) == 52);
  CHECK(dim_total(first.order) == dim);
  CHECK_THROWS_WITH_AS(construct_basis(phased.order), doctest::Contains("UnhandledConfiguration"), Error);
  CHECK(verify_basis(construct_basis(first.order), first.ext, 2, 2, dim).all());
  for (const auto& l : telescoping_ledger(first.order, first.census.delta_per_level)) CHECK(l.balanced());
}

TEST_CASE("each removal lowers the dimension by dim W[E]") {
  const Built b = build(spec(3, 2, 5, 4, {{"1,0", "1,1"}, {"1,1/0,0"}}));
  for (const auto& st : b.order.steps) {
    const long long before = dim_conformality_oracle(*st.before, 3, 2);
    const TMesh after = remove_ledge(*st.before, [&] {
      for (const auto& e : st.before->ledges()) {
        if (e.segment().same_line(st.ledge)) return e.id;
      }
      return -1;
    }());
    CHECK(before - dim_conformality_oracle(after, 3, 2) == st.dim);
  }
}

TEST_CASE("tensor factors and vertex lookup") {
  const TensorGrid g{fixtures::coords({0, 1, 2}), fixtures::coords({0, 1, 2, 3})};
  const auto f = tensor_factors(g, 1, 2);
  CHECK(f.size() == 12);
  CHECK(f.at({Coord(1), Coord(0)}) == -2);
  const TMesh t = tensor_mesh(g.xs, g.ys);
  CHECK(in_W(t, to_vector(t, f), 1, 2));
  const TMesh small = tensor_mesh(fixtures::coords({0, 1}), fixtures::coords({0, 1}));
  CHECK_THROWS_AS(to_vector(small, f), Error);
}

TEST_CASE("policy names") {
  CHECK(parse_trivial_policy("phased") == TrivialPolicy::Phased);
  CHECK(to_string(TrivialPolicy::TrivialFirst) == "trivial-first");
  CHECK_THROWS_AS(parse_trivial_policy("any"), Error);
}
