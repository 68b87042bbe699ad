#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace zhakit;
using testing::el;

namespace {

// imp on a grid by scanning every element; deliberately not Zha::imp.
Element grid_imp(int l, int r, Element u, Element w) {
  Element best{0, 0};
  for (int a = 0; a <= l; ++a)
    for (int b = 0; b <= r; ++b) {
      const Element x{std::min(a, u.a), std::min(b, u.b)};
      if (x.a <= w.a && x.b <= w.b) best = {std::max(best.a, a), std::max(best.b, b)};
    }
  return best;
}

}  // namespace

TEST_CASE("points and elements print and parse") {
  CHECK(parse_point("L4").glyph() == "4_");
  CHECK(parse_point("R5").glyph() == ".5");
  CHECK(parse_point("R12").token() == "R12");
  CHECK_THROWS_AS(parse_point("X1"), ParseError);
  CHECK_THROWS_AS(parse_point("L0"), ParseError);
  CHECK(el("23") == Element{2, 3});
  CHECK(el("[10]3") == Element{10, 3});
  CHECK(Element{10, 3}.to_string() == "[10]3");
  CHECK_THROWS_AS(parse_element("2"), ParseError);
}

TEST_CASE("piles") {
  const TwoColumnGraph g(2, 5);
  const PointSet p = pile(g, 2, 5);
  std::vector<std::string> names;
  for (const Point& x : g.points_of(p)) names.push_back(x.glyph());
  CHECK(names == std::vector<std::string>{"1_", "2_", ".1", ".2", ".3", ".4", ".5"});
  CHECK(pile(g, 0, 0).empty());
  CHECK(pile(g, 2, 5) == g.all_points());
  CHECK_THROWS_AS(pile(g, 3, 0), RangeError);
  CHECK_THROWS_AS(pile(g, 0, -1), RangeError);
}

TEST_CASE("openness on the running graph") {
  const TwoColumnGraph g = testing::load_fixture("running.2cg");
  CHECK_FALSE(is_open(g, pile(g, 2, 1)));
  CHECK(is_open(g, PointSet{}));
  CHECK(is_open(g, pile(g, 0, 4)));
  const TwoColumnGraph bare(3, 3);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) CHECK(is_open(bare, pile(bare, a, b)));
}

TEST_CASE("the 13-element example") {
  const Zha h = zha_from_2cg(testing::load_fixture("sub1_example.2cg"));
  std::set<Element> got(h.elements().begin(), h.elements().end());
  std::set<Element> want;
  for (const char* s : {"33", "32", "23", "22", "13", "21", "12", "20", "11", "02", "10", "01", "00"})
    want.insert(el(s));
  CHECK(got == want);
  CHECK(h.size() == 13);
}

TEST_CASE("arrowless graphs give full grids") {
  for (int n = 0; n <= 4; ++n) {
    const Zha h = zha_from_2cg(TwoColumnGraph(n, n));
    CHECK(h.size() == static_cast<std::size_t>((n + 1) * (n + 1)));
    CHECK(h.is_grid());
    CHECK(h == Zha::grid(n, n));
  }
  CHECK(Zha::grid(0, 0).size() == 1);
}

TEST_CASE("grid operations against a scan") {
  const Zha h = Zha::grid(4, 4);
  CHECK(h.meet(el("30"), el("03")) == el("00"));
  CHECK(h.join(el("30"), el("03")) == el("33"));
  CHECK(grid_imp(4, 4, el("30"), el("03")) == el("04"));
  CHECK(h.imp(el("30"), el("03")) == el("04"));
  const Element n1 = grid_imp(4, 4, el("30"), el("00"));
  CHECK(grid_imp(4, 4, n1, el("00")) == el("40"));
  CHECK(h.neg(h.neg(el("30"))) == el("40"));
  for (const Element& u : h.elements())
    for (const Element& w : h.elements()) CHECK(h.imp(u, w) == grid_imp(4, 4, u, w));
  CHECK_THROWS_AS(h.meet(el("50"), el("00")), DomainError);
  CHECK_THROWS_AS(h.index_of(el("05")), DomainError);
}

TEST_CASE("operations agree with open-set semantics on random graphs") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 60; ++round) {
    const TwoColumnGraph g = testing::random_2cg(rng, 4, 4);
    const testing::OpenSetOracle oracle(g);
    const Zha h = zha_from_2cg(g);
    const auto opens = oracle.all_open();
    REQUIRE(h.size() == opens.size());
    auto bits = [&](Element x) { return testing::pile_bits(g.left_count(), x.a, x.b); };
    for (const Element& x : h.elements()) {
      CHECK(oracle.open(bits(x)));
      for (const Element& y : h.elements()) {
        CHECK(bits(h.meet(x, y)) == (bits(x) & bits(y)));
        CHECK(bits(h.join(x, y)) == (bits(x) | bits(y)));
        CHECK(bits(h.imp(x, y)) == oracle.imp(bits(x), bits(y)));
      }
    }
  }
}

TEST_CASE("Heyting laws on every acyclic graph up to l, r = 4") {
  std::size_t hosts = 0;
  for (const TwoColumnGraph& g : all_acyclic_zha_graphs(4, 4)) {
    REQUIRE(is_acyclic(g));
    const Zha h = zha_from_2cg(g);
    ++hosts;
    const std::size_t n = h.size();
    REQUIRE(h.contains(Element{0, 0}));
    REQUIRE(h.contains(Element{h.l(), h.r()}));
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y) {
        ok = ok && h.leq_index(h.meet_index(x, y), x) && h.leq_index(x, h.join_index(x, y));
        const Element mx = h.meet(h.element(x), h.element(y)), jx = h.join(h.element(x), h.element(y));
        ok = ok && h.contains(mx) && h.contains(jx);
        for (std::size_t z = 0; z < n && ok; ++z)
          ok = ok && (h.leq_index(h.meet_index(x, y), z) == h.leq_index(x, h.imp_index(y, z)));
      }
    for (std::size_t x = 0; x < n; ++x) ok = ok && h.neg(h.element(x)) == h.imp(h.element(x), h.bottom());
    CHECK_MESSAGE(ok, write_2cg(g));
  }
  CHECK(hosts > 100);
}

TEST_CASE("every open set is a pile") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    const TwoColumnGraph g = testing::random_2cg(rng, 4, 4);
    if (g.point_count() > 8) continue;
    const testing::OpenSetOracle oracle(g);
    std::set<std::uint64_t> piles;
    for (int a = 0; a <= g.left_count(); ++a)
      for (int b = 0; b <= g.right_count(); ++b) piles.insert(testing::pile_bits(g.left_count(), a, b));
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.point_count()); ++s) {
      CHECK(oracle.open(s) == is_open(g, PointSet(s)));
      if (oracle.open(s)) CHECK(piles.count(s) == 1);
    }
    const auto opens = open_sets(g);
    CHECK(opens.size() == oracle.all_open().size());
  }
}

TEST_CASE("cycles are detected") {
  const TwoColumnGraph g(2, 2, {{{Column::left, 1}, {Column::right, 2}}, {{Column::right, 1}, {Column::left, 2}}});
  CHECK_FALSE(is_acyclic(g));
  CHECK(is_acyclic(TwoColumnGraph(2, 2, {{{Column::left, 2}, {Column::right, 1}}})));
}

TEST_CASE("from_elements validates") {
  CHECK_THROWS_AS(Zha::from_elements({el("00"), el("10"), el("01")}), DomainError);
  CHECK_NOTHROW(Zha::from_elements({el("00"), el("10"), el("01"), el("11")}));
}
