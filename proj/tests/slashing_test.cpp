#include <doctest.h>

#include <map>
#include <set>

#include "support.hpp"

using namespace zhakit;
using testing::el;

namespace {

// a ~ b iff no cut lies in (min, max].
bool picc_oracle_equiv(const std::vector<int>& cuts, int a, int b) {
  const int lo = std::min(a, b), hi = std::max(a, b);
  for (int c : cuts)
    if (c > lo && c <= hi) return false;
  return true;
}

Element top_oracle(const Slashing& s, Element x) {
  const CutSet cs = s.cuts();
  Element best = x;
  for (const Element& y : s.host().elements())
    if (picc_oracle_equiv(cs.left, x.a, y.a) && picc_oracle_equiv(cs.right, x.b, y.b))
      best = {std::max(best.a, y.a), std::max(best.b, y.b)};
  return best;
}

Slashing running_slashing() {
  const TwoColumnGraph g = testing::load_fixture("running.2cg");
  return parse_slashing(zha_from_2cg(g), "(0|1234, 0123|45|6)");
}

}  // namespace

TEST_CASE("picc text forms") {
  const Picc p = parse_picc("0|123|45");
  CHECK(p.n() == 5);
  CHECK(p.cuts() == std::vector<int>{1, 4});
  CHECK(parse_picc("012345").cuts().empty());
  CHECK(parse_picc("0|1|2|3").cuts() == std::vector<int>{1, 2, 3});
  CHECK(parse_picc("0|123456789[10]").n() == 10);
  CHECK(parse_picc("0|123456789[10]").to_string() == "0|123456789[10]");
  CHECK_THROWS_AS(parse_picc("0|12[10]"), ParseError);
  CHECK(parse_picc("0|123|45").to_string() == "0|123|45");
  CHECK(parse_picc("0|1234").to_slash_string(Column::left) == "4321/0");
  CHECK(parse_picc("0123|45|6").to_slash_string(Column::right) == "0123\\45\\6");
  CHECK_THROWS_AS(parse_picc("0|1245|3"), ParseError);
  CHECK_THROWS_AS(parse_picc("0|1|1"), ParseError);
  CHECK_THROWS_AS(parse_picc("12"), ParseError);
  CHECK_THROWS_AS(parse_picc("0||1"), ParseError);
}

TEST_CASE("picc tops") {
  const Picc l = parse_picc("0|1234");
  CHECK(l.top(2) == 4);
  CHECK(l.class_of(2) == std::vector<int>{1, 2, 3, 4});
  for (int a = 0; a <= 5; ++a) CHECK(Picc::discrete(5).top(a) == a);
  CHECK(Picc::trivial(6).top(0) == 6);
  CHECK_THROWS_AS(l.top(5), RangeError);
  CHECK_THROWS_AS(l.top(-1), RangeError);
}

TEST_CASE("picc classes are runs without internal cuts") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 200; ++round) {
    const int n = static_cast<int>(rng() % 8);
    const Picc p = testing::random_picc(rng, n);
    CHECK(parse_picc(p.to_string()) == p);
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) CHECK(p.equiv(a, b) == picc_oracle_equiv(p.cuts(), a, b));
  }
}

TEST_CASE("the running slashing") {
  const Slashing s = running_slashing();
  CHECK(s.equiv(el("11"), el("23")));
  CHECK_FALSE(s.equiv(el("23"), el("14")));
  CHECK(s.equiv(el("34"), el("34")));
  CHECK(s.top(el("22")) == el("23"));
  CHECK(s.region(el("22")) == std::vector<Element>{el("11"), el("12"), el("13"), el("22"), el("23")});
  CHECK(s.to_string() == "(0|1234, 0123|45|6)");
  CHECK(s.to_slash_string() == "(4321/0, 0123\\45\\6)");
}

TEST_CASE("trivial and discrete slashings") {
  const Zha h = zha_from_2cg(testing::load_fixture("sub1_example.2cg"));
  const Slashing none(h, Picc::trivial(h.l()), Picc::trivial(h.r()));
  const Slashing all(h, Picc::discrete(h.l()), Picc::discrete(h.r()));
  for (const Element& x : h.elements()) {
    CHECK(none.top(x) == h.top());
    CHECK(all.top(x) == x);
  }
  CHECK_THROWS_AS(Slashing(h, Picc::trivial(2), Picc::trivial(3)), ShapeError);
}

TEST_CASE("Q-equivalence on the running graph") {
  const TwoColumnGraph g = testing::load_fixture("running.2cg");
  CHECK(q_equiv(g, el("23"), el("13")));
  CHECK_FALSE(q_equiv(g, el("13"), el("14")));
  const TwoColumnGraph everything = g.with_questions(g.all_points());
  const Zha h = zha_from_2cg(g);
  for (const Element& x : h.elements())
    for (const Element& y : h.elements()) CHECK(q_equiv(everything, x, y));
}

TEST_CASE("question marks and slashings") {
  const TwoColumnGraph g = testing::load_fixture("running.2cg");
  const Slashing s = slashing_from_questions(g);
  CHECK(s.to_string() == "(0|1234, 0123|45|6)");
  CHECK_FALSE(s.left().has_cut(4));
  CHECK(s.right().has_cut(6));
  const PointSet q = questions_from_slashing(g, running_slashing());
  std::vector<std::string> missing;
  for (const Point& p : g.points_of(g.all_points() - q)) missing.push_back(p.token());
  CHECK(missing == std::vector<std::string>{"L1", "R4", "R6"});

  const TwoColumnGraph all_q = g.with_questions(g.all_points());
  CHECK(slashing_from_questions(all_q).cuts() == CutSet{});
  const Zha h = zha_from_2cg(g);
  CHECK(questions_from_slashing(g, Slashing(h, Picc::trivial(4), Picc::trivial(6))) == g.all_points());
  CHECK(questions_from_slashing(g, Slashing(h, Picc::discrete(4), Picc::discrete(6))).empty());
  const TwoColumnGraph other(3, 6);
  CHECK_THROWS_AS(questions_from_slashing(other, s), ShapeError);
}

TEST_CASE("~_Q equals ~_S for every graph up to l, r = 4 and every Q") {
  std::size_t pairs = 0;
  bool ok = true;
  for (const TwoColumnGraph& base : all_acyclic_zha_graphs(4, 4)) {
    const Zha h = zha_from_2cg(base);
    const int l = base.left_count();
    const auto els = h.elements();
    std::vector<std::uint64_t> piles;
    for (const Element& x : els) piles.push_back(testing::pile_bits(l, x.a, x.b));
    for (std::uint64_t qbits = 0; qbits < (std::uint64_t{1} << base.point_count()); ++qbits) {
      const TwoColumnGraph g = base.with_questions(PointSet(qbits));
      const Slashing s = slashing_from_questions(g);
      REQUIRE(questions_from_slashing(g, s) == PointSet(qbits));
      for (std::size_t i = 0; i < els.size(); ++i)
        for (std::size_t j = 0; j < els.size(); ++j) {
          const bool seen = (piles[i] & ~qbits) == (piles[j] & ~qbits);
          ok = ok && seen == s.equiv(els[i], els[j]);
          ++pairs;
        }
    }
    if (!ok) {
      FAIL_CHECK(write_2cg(base));
      break;
    }
  }
  CHECK(ok);
  CHECK(pairs > 100000000);
}

TEST_CASE("q_equiv agrees with the pile oracle on random questions") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    const TwoColumnGraph g = testing::random_2cg(rng, 4, 4, true);
    const Zha h = zha_from_2cg(g);
    const std::uint64_t q = g.questions().bits();
    for (const Element& x : h.elements())
      for (const Element& y : h.elements())
        CHECK(q_equiv(g, x, y) == ((testing::pile_bits(g.left_count(), x.a, x.b) & ~q) ==
                                   (testing::pile_bits(g.left_count(), y.a, y.b) & ~q)));
  }
}

TEST_CASE("slashings round-trip through question marks") {
  for (const TwoColumnGraph& g : all_acyclic_zha_graphs(3, 3)) {
    for (const Slashing& s : Slashing::all(zha_from_2cg(g))) {
      const TwoColumnGraph gq = g.with_questions(questions_from_slashing(g, s));
      CHECK(slashing_from_questions(gq) == s);
    }
  }
}

TEST_CASE("tops, regions and recognition on every slashing up to l, r = 3") {
  for (const TwoColumnGraph& g : all_acyclic_zha_graphs(3, 3)) {
    const Zha h = zha_from_2cg(g);
    for (const Slashing& s : Slashing::all(h)) {
      bool ok = true;
      for (const Element& x : h.elements()) {
        const Element t = s.top(x);
        ok = ok && t == top_oracle(s, x) && s.equiv(x, t) && pair_leq(x, t);
        // each region is an interval closed under meet and join
        const auto region = s.region(x);
        Element lo = region.front(), hi = region.front();
        for (const Element& y : region) {
          lo = h.meet(lo, y);
          hi = h.join(hi, y);
          for (const Element& z : region) ok = ok && s.equiv(h.meet(y, z), x) && s.equiv(h.join(y, z), x);
        }
        for (const Element& y : h.elements())
          if (h.leq(lo, y) && h.leq(y, hi)) ok = ok && s.equiv(x, y);
      }
      const SlashRecognition r = recognize_slash_operator(s.slash_operator());
      ok = ok && std::holds_alternative<Slashing>(r) && std::get<Slashing>(r) == s;
      CHECK_MESSAGE(ok, s.to_string() << " on " << write_2cg(g));
    }
  }
}

TEST_CASE("recognition examples") {
  const Slashing s = running_slashing();
  const SlashRecognition r = recognize_slash_operator(s.slash_operator());
  REQUIRE(std::holds_alternative<Slashing>(r));
  CHECK(std::get<Slashing>(r) == s);

  const Zha grid = Zha::grid(4, 4);
  const OperatorTable and22 = OperatorTable::tabulate(grid, [&](Element p) { return grid.meet(p, el("22")); });
  CHECK(std::holds_alternative<SlashRejection>(recognize_slash_operator(and22)));

  const SlashRecognition id = recognize_slash_operator(OperatorTable::identity(grid));
  REQUIRE(std::holds_alternative<Slashing>(id));
  CHECK(std::get<Slashing>(id) == Slashing(grid, Picc::discrete(4), Picc::discrete(4)));
}

TEST_CASE("random tables are recognized only when they are slash operators") {
  std::mt19937_64 rng(9);
  const Zha h = Zha::grid(2, 2);
  std::set<std::vector<std::size_t>> slash_tables;
  for (const Slashing& s : Slashing::all(h)) {
    const OperatorTable t = s.slash_operator();
    slash_tables.insert({t.images().begin(), t.images().end()});
  }
  std::uniform_int_distribution<std::size_t> pick(0, h.size() - 1);
  for (int round = 0; round < 2000; ++round) {
    std::vector<Element> values;
    for (std::size_t i = 0; i < h.size(); ++i) values.push_back(h.element(i));
    // perturb a slash operator in one place, or take a fully random table
    if (round % 2 == 0) {
      const auto& all = Slashing::all(h);
      const OperatorTable t = all[static_cast<std::size_t>(round / 2) % all.size()].slash_operator();
      for (std::size_t i = 0; i < h.size(); ++i) values[i] = t(h.element(i));
      values[pick(rng)] = h.element(pick(rng));
    } else {
      for (auto& v : values) v = h.element(pick(rng));
    }
    const OperatorTable t(h, values);
    const bool is_slash = slash_tables.count({t.images().begin(), t.images().end()}) == 1;
    CHECK(std::holds_alternative<Slashing>(recognize_slash_operator(t)) == is_slash);
  }
}

TEST_CASE("unit paths read off the positional cuts") {
  const TwoColumnGraph g = testing::load_fixture("running.2cg");
  const std::vector<Element> path{el("00"), el("01"), el("02"), el("03"), el("04"), el("14"),
                                  el("24"), el("34"), el("35"), el("36"), el("46")};
  CHECK(cuts_along_path(g, path) == slashing_from_questions(g).cuts());
  CHECK_THROWS_AS(cuts_along_path(g, std::vector<Element>{el("00"), el("11")}), DomainError);
  CHECK_THROWS_AS(cuts_along_path(g, std::vector<Element>{el("00"), el("01")}), DomainError);

  std::mt19937_64 rng(21);
  for (const TwoColumnGraph& base : all_acyclic_zha_graphs(3, 3)) {
    const TwoColumnGraph gq =
        base.with_questions(PointSet(rng() & ((std::uint64_t{1} << base.point_count()) - 1)));
    const CutSet want = slashing_from_questions(gq).cuts();
    for (const auto& p : all_unit_paths(zha_from_2cg(gq))) CHECK(cuts_along_path(gq, p) == want);
  }
}
