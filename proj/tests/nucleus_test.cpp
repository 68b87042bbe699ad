#include <doctest.h>

#include <set>

#include "support.hpp"
#include "zhakit/nucleus.hpp"

using namespace zhakit;
using testing::el;

namespace {

struct Oracle {
  bool j1 = true, j2 = true, j3 = true;
};

Oracle j_oracle(const OperatorTable& t) {
  const Zha& h = t.host();
  Oracle o;
  for (const Element& p : h.elements()) {
    const Element s = t(p);
    o.j1 = o.j1 && p.a <= s.a && p.b <= s.b;
    o.j2 = o.j2 && t(s) == s;
    for (const Element& q : h.elements()) {
      const Element m{std::min(p.a, q.a), std::min(p.b, q.b)};
      const Element sq = t(q);
      o.j3 = o.j3 && t(m) == Element{std::min(s.a, sq.a), std::min(s.b, sq.b)};
    }
  }
  return o;
}

std::vector<std::size_t> images(const OperatorTable& t) { return {t.images().begin(), t.images().end()}; }

OperatorTable or_const(const Zha& h, Element c) {
  return OperatorTable::tabulate(h, [&](Element p) { return h.join(p, c); });
}

}  // namespace

TEST_CASE("J1-J3 verdicts") {
  const Zha h = Zha::grid(4, 4);
  CHECK(check_j123(or_const(h, el("22"))).ok());
  CHECK(check_j123(OperatorTable::identity(h)).ok());

  const OperatorTable and22 = OperatorTable::tabulate(h, [&](Element p) { return h.meet(p, el("22")); });
  const JVerdict v = check_j123(and22);
  CHECK_FALSE(v.j1_ok);
  CHECK(v.j2_ok);
  CHECK(v.j3_ok);
  REQUIRE(v.j1_witness);
  // The first failure in (a, b) order; 44 fails too, but later.
  CHECK(*v.j1_witness == el("03"));
  CHECK_FALSE(h.leq(el("44"), and22(el("44"))));
  CHECK(v.describe() == "J1 fails at 03");

  // Witness present iff flag false.
  const OperatorTable bottom = OperatorTable::constant(h, el("00"));
  const JVerdict b = check_j123(bottom);
  CHECK(b.j1_witness.has_value() == !b.j1_ok);
  CHECK(b.j2_witness.has_value() == !b.j2_ok);
  CHECK(b.j3_witness.has_value() == !b.j3_ok);
}

TEST_CASE("verdicts agree with a direct oracle on random tables") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 400; ++round) {
    const TwoColumnGraph g = testing::random_2cg(rng, 3, 3);
    const Zha h = zha_from_2cg(g);
    std::uniform_int_distribution<std::size_t> pick(0, h.size() - 1);
    std::vector<Element> values;
    const bool near_slash = round % 2 == 0;
    const Slashing s(h, testing::random_picc(rng, h.l()), testing::random_picc(rng, h.r()));
    for (std::size_t i = 0; i < h.size(); ++i) values.push_back(near_slash ? s.top(h.element(i)) : h.element(pick(rng)));
    if (near_slash && round % 4 == 0) values[pick(rng)] = h.element(pick(rng));
    const OperatorTable t(h, values);
    const JVerdict v = check_j123(t);
    const Oracle o = j_oracle(t);
    CHECK(v.j1_ok == o.j1);
    CHECK(v.j2_ok == o.j2);
    CHECK(v.j3_ok == o.j3);
    CHECK(v.j1_witness.has_value() == !v.j1_ok);
    CHECK(v.j3_witness.has_value() == !v.j3_ok);
  }
}

TEST_CASE("derived rules on (v 22)") {
  const Zha h = Zha::grid(4, 4);
  const OperatorTable t = or_const(h, el("22"));
  CHECK(t(el("11")) == el("22"));
  CHECK(t(el("34")) == el("34"));
  CHECK(h.leq(t(el("11")), t(el("34"))));
  for (const RuleCheck& r : derived_rule_suite(t)) CHECK_MESSAGE(r.holds, r.name);
  for (const RuleCheck& r : derived_rule_suite(OperatorTable::identity(h))) CHECK_MESSAGE(r.holds, r.name);
  std::vector<std::string> names;
  for (const RuleCheck& r : derived_rule_suite(t)) names.push_back(r.name);
  CHECK(names == std::vector<std::string>{"Mo", "Sand", "ECand", "ECor", "ECS"});
}

TEST_CASE("derived rules and the no-midway-cut rules hold for every slashing up to l, r = 3") {
  for (const TwoColumnGraph& g : all_acyclic_zha_graphs(3, 3)) {
    for (const Slashing& s : Slashing::all(zha_from_2cg(g))) {
      const OperatorTable t = s.slash_operator();
      bool ok = check_j123(t).ok();
      for (const RuleCheck& r : derived_rule_suite(t)) ok = ok && r.holds;
      for (const RuleCheck& r : no_midway_cut_rules(t)) ok = ok && r.holds;
      CHECK_MESSAGE(ok, s.to_string());
    }
  }
}

TEST_CASE("derived rules hold for every slashing up to l, r = 4") {
  for (const TwoColumnGraph& g : all_acyclic_zha_graphs(4, 4))
    for (const Slashing& s : Slashing::all(zha_from_2cg(g))) {
      bool ok = true;
      for (const RuleCheck& r : derived_rule_suite(s.slash_operator())) ok = ok && r.holds;
      CHECK_MESSAGE(ok, s.to_string());
    }
}

TEST_CASE("a non-nucleus breaks a derived rule") {
  const Zha h = Zha::grid(2, 2);
  // Monotone but not idempotent: climb one step.
  const OperatorTable up = OperatorTable::tabulate(h, [&](Element p) { return Element{std::min(p.a + 1, 2), p.b}; });
  CHECK_FALSE(check_j123(up).j2_ok);
  const OperatorTable swap = OperatorTable::tabulate(h, [&](Element p) { return Element{2 - p.a, 2 - p.b}; });
  const auto rules = derived_rule_suite(swap);
  CHECK_FALSE(rules[0].holds);
  CHECK(rules[0].witness.size() == 2);
}

TEST_CASE("J-regions") {
  const Zha h = Zha::grid(4, 4);
  const IntervalPartition p = j_regions(or_const(h, el("22")));
  const std::size_t k = p.block_index_of(h.index_of(el("00")));
  CHECK(p.block_min(k) == el("00"));
  CHECK(p.block_max(k) == el("22"));
  CHECK(p.block(k).size() == 9);

  const IntervalPartition id = j_regions(OperatorTable::identity(h));
  CHECK(id.block_count() == h.size());

  const TwoColumnGraph g = testing::load_fixture("running.2cg");
  const Slashing s = slashing_from_questions(g);
  const IntervalPartition r = j_regions(s.slash_operator());
  const Zha& rh = s.host();
  std::vector<Element> region;
  for (std::size_t i : r.block(r.block_index_of(rh.index_of(el("22"))))) region.push_back(rh.element(i));
  CHECK(region == std::vector<Element>{el("11"), el("12"), el("13"), el("22"), el("23")});

  CHECK_THROWS_AS(j_regions(OperatorTable::constant(h, el("00"))), ContractError);
}

TEST_CASE("every J-region is the interval between its meet and join") {
  for (const TwoColumnGraph& g : all_acyclic_zha_graphs(3, 3)) {
    const Zha h = zha_from_2cg(g);
    for (const Slashing& s : Slashing::all(h)) {
      const OperatorTable t = s.slash_operator();
      const IntervalPartition p = j_regions(t);
      for (std::size_t k = 0; k < p.block_count(); ++k) {
        Element lo = h.top(), hi = h.bottom();
        for (std::size_t i : p.block(k)) {
          lo = h.meet(lo, h.element(i));
          hi = h.join(hi, h.element(i));
        }
        std::size_t inside = 0;
        for (const Element& x : h.elements())
          if (h.leq(lo, x) && h.leq(x, hi)) {
            ++inside;
            CHECK(t(x) == hi);
          }
        CHECK(inside == p.block(k).size());
      }
    }
  }
}

TEST_CASE("interval partitions reject non-intervals") {
  const Zha h = Zha::grid(1, 1);
  // {00, 11} without 01 and 10 is not an interval.
  CHECK_THROWS_AS(IntervalPartition(h, {0, 1, 2, 0}), ContractError);
  CHECK_NOTHROW(IntervalPartition(h, {0, 0, 1, 1}));
}

TEST_CASE("a Y-cut fragment") {
  const Zha h = Zha::grid(2, 2);
  // 11 ~ 12, everything else alone: the square 11, 21, 12, 22 has its lower
  // right-step edge uncut and the upper one cut.
  std::vector<int> labels;
  for (const Element& x : h.elements()) labels.push_back(x == el("12") ? h.index_of(el("11")) : static_cast<int>(h.index_of(x)));
  const IntervalPartition p(h, labels);
  CHECK(h.join(el("21"), el("12")) == el("22"));
  const auto cuts = detect_forbidden_cuts(p);
  std::size_t y = 0;
  for (const ForbiddenCut& c : cuts)
    if (c.shape == CutShape::y_cut) {
      ++y;
      CHECK(c.bottom == el("11"));
      CHECK(c.top == el("22"));
      CHECK(c.step == Column::right);
    }
  CHECK(y == 1);
  CHECK_FALSE(check_j123(p.top_operator()).j3_ok);
  CHECK(detect_forbidden_cuts(j_regions(OperatorTable::identity(h))).empty());
}

TEST_CASE("slashing partitions have no forbidden cuts") {
  for (const TwoColumnGraph& g : all_acyclic_zha_graphs(3, 3))
    for (const Slashing& s : Slashing::all(zha_from_2cg(g)))
      CHECK_MESSAGE(detect_forbidden_cuts(j_regions(s.slash_operator())).empty(), s.to_string());
}

TEST_CASE("forbidden cuts force a J3 failure") {
  std::size_t partitions = 0, with_cuts = 0;
  for (const Zha& h : {Zha::grid(2, 2), Zha::grid(2, 3), zha_from_2cg(testing::load_fixture("sub1_example.2cg"))}) {
    for_each_interval_partition(h, [&](const IntervalPartition& p) {
      ++partitions;
      if (detect_forbidden_cuts(p).empty()) return;
      ++with_cuts;
      CHECK_FALSE(check_j123(p.top_operator()).j3_ok);
    });
  }
  CHECK(with_cuts > 0);
  CHECK(partitions > with_cuts);
}

TEST_CASE("J-operators are exactly the slashings") {
  auto check_host = [](const Zha& h) {
    std::set<std::vector<std::size_t>> want;
    for (const Slashing& s : Slashing::all(h)) want.insert(images(s.slash_operator()));
    std::set<std::vector<std::size_t>> got;
    for (const OperatorTable& t : enumerate_j_operators(h, 16)) {
      CHECK(j_oracle(t).j1);
      got.insert(images(t));
    }
    CHECK(got == want);
    return got.size();
  };
  CHECK(check_host(Zha::grid(2, 2)) == 16);
  for (int l = 0; l <= 5; ++l) CHECK(check_host(Zha::grid(l, 0)) == (std::size_t{1} << l));
  CHECK(check_host(Zha::grid(0, 0)) == 1);
  const auto one = enumerate_j_operators(Zha::grid(0, 0));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == OperatorTable::identity(Zha::grid(0, 0)));
  for (const TwoColumnGraph& g : all_acyclic_zha_graphs(2, 2)) check_host(zha_from_2cg(g));
  check_host(zha_from_2cg(testing::load_fixture("sub1_example.2cg")));
}

TEST_CASE("enumeration refuses large hosts") {
  CHECK_THROWS_AS(enumerate_j_operators(Zha::grid(3, 3)), RefusalError);
  CHECK_THROWS_AS(enumerate_j_operators(Zha::grid(4, 2), 14), RefusalError);
}
