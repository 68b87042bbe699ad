#include "zhakit/nucleus.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace zhakit {

std::string JVerdict::describe() const {
  if (!j1_ok) return "J1 fails at " + j1_witness->to_string();
  if (!j2_ok) return "J2 fails at " + j2_witness->to_string();
  if (!j3_ok) return "J3 fails at " + j3_witness->first.to_string() + ", " + j3_witness->second.to_string();
  return "ok";
}

JVerdict check_j123(const OperatorTable& t) {
  const Zha& h = t.host();
  const std::size_t n = h.size();
  JVerdict v;
  // Host indices are already in lexicographic (a, b) order.
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t sp = t.apply_index(p);
    if (v.j1_ok && !h.leq_index(p, sp)) {
      v.j1_ok = false;
      v.j1_witness = h.element(p);
    }
    if (v.j2_ok && t.apply_index(sp) != sp) {
      v.j2_ok = false;
      v.j2_witness = h.element(p);
    }
  }
  for (std::size_t p = 0; p < n && v.j3_ok; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (t.apply_index(h.meet_index(p, q)) != h.meet_index(t.apply_index(p), t.apply_index(q))) {
        v.j3_ok = false;
        v.j3_witness = std::pair{h.element(p), h.element(q)};
        break;
      }
    }
  }
  return v;
}

std::vector<RuleCheck> derived_rule_suite(const OperatorTable& t) {
  const Zha& h = t.host();
  const std::size_t n = h.size();
  auto star = [&](std::size_t i) { return t.apply_index(i); };
  std::vector<RuleCheck> out{{"Mo", true, {}}, {"Sand", true, {}}, {"ECand", true, {}}, {"ECor", true, {}}, {"ECS", true, {}}};
  auto fail = [](RuleCheck& rule, std::vector<Element> witness) {
    if (!rule.holds) return;
    rule.holds = false;
    rule.witness = std::move(witness);
  };
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const Element P = h.element(p), Q = h.element(q);
      if (h.leq_index(p, q) && !h.leq_index(star(p), star(q))) fail(out[0], {P, Q});
      if (h.leq_index(p, q) && h.leq_index(q, star(p)) && star(p) != star(q)) fail(out[1], {P, Q});
      if (star(p) == star(q)) {
        if (star(h.meet_index(p, q)) != star(p)) fail(out[2], {P, Q});
        if (star(h.join_index(p, q)) != star(p)) fail(out[3], {P, Q});
      }
      if (!h.leq_index(p, q)) continue;
      for (std::size_t r = 0; r < n; ++r) {
        if (h.leq_index(q, r) && star(p) == star(r) && star(q) != star(p))
          fail(out[4], {P, Q, h.element(r)});
      }
    }
  }
  return out;
}

std::vector<RuleCheck> no_midway_cut_rules(const OperatorTable& t) {
  const Zha& h = t.host();
  const std::size_t n = h.size();
  std::vector<RuleCheck> out{{"NoYcuts", true, {}}, {"NoLambdacuts", true, {}}};
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (t.apply_index(p) != t.apply_index(q)) continue;
      for (std::size_t r = 0; r < n; ++r) {
        std::vector<Element> w{h.element(p), h.element(q), h.element(r)};
        if (out[0].holds && t.apply_index(h.join_index(p, r)) != t.apply_index(h.join_index(q, r))) {
          out[0].holds = false;
          out[0].witness = w;
        }
        if (out[1].holds && t.apply_index(h.meet_index(p, r)) != t.apply_index(h.meet_index(q, r))) {
          out[1].holds = false;
          out[1].witness = w;
        }
      }
    }
  }
  return out;
}

// --- IntervalPartition ---------------------------------------------------------

IntervalPartition::IntervalPartition(Zha host, const std::vector<int>& block_of) : host_(std::move(host)) {
  const std::size_t n = host_.size();
  if (block_of.size() != n) throw ShapeError("partition labels do not match the host size");
  std::map<int, std::size_t> renumber;
  block_of_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = renumber.try_emplace(block_of[i], blocks_.size());
    if (inserted) blocks_.emplace_back();
    block_of_[i] = it->second;
    blocks_[it->second].push_back(i);
  }
  for (const auto& block : blocks_) {
    std::size_t lo = block.front(), hi = block.front();
    for (std::size_t i : block) {
      lo = host_.meet_index(lo, i);
      hi = host_.join_index(hi, i);
    }
    std::size_t interval_size = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (host_.leq_index(lo, i) && host_.leq_index(i, hi)) ++interval_size;
    const bool ends_inside = block_of_[lo] == block_of_[block.front()] && block_of_[hi] == block_of_[block.front()];
    bool all_inside = ends_inside;
    for (std::size_t i : block)
      all_inside = all_inside && host_.leq_index(lo, i) && host_.leq_index(i, hi);
    if (!all_inside || interval_size != block.size())
      throw ContractError("block containing " + host_.element(block.front()).to_string() +
                          " is not an interval");
  }
}

bool IntervalPartition::same_block(Element x, Element y) const {
  return block_of_[host_.index_of(x)] == block_of_[host_.index_of(y)];
}

Element IntervalPartition::block_min(std::size_t k) const {
  std::size_t lo = blocks_.at(k).front();
  for (std::size_t i : blocks_[k]) lo = host_.meet_index(lo, i);
  return host_.element(lo);
}

Element IntervalPartition::block_max(std::size_t k) const {
  std::size_t hi = blocks_.at(k).front();
  for (std::size_t i : blocks_[k]) hi = host_.join_index(hi, i);
  return host_.element(hi);
}

OperatorTable IntervalPartition::top_operator() const {
  std::vector<Element> values;
  values.reserve(host_.size());
  std::vector<Element> tops;
  for (std::size_t k = 0; k < blocks_.size(); ++k) tops.push_back(block_max(k));
  for (std::size_t i = 0; i < host_.size(); ++i) values.push_back(tops[block_of_[i]]);
  return OperatorTable(host_, std::move(values));
}

IntervalPartition j_regions(const OperatorTable& t) {
  const JVerdict v = check_j123(t);
  if (!v.ok()) throw ContractError("not a J-operator: " + v.describe());
  std::vector<int> labels;
  for (std::size_t i = 0; i < t.host().size(); ++i) labels.push_back(static_cast<int>(t.apply_index(i)));
  return IntervalPartition(t.host(), labels);
}

std::string ForbiddenCut::describe() const {
  const char* kind = shape == CutShape::y_cut ? "Y-cut" : "lambda-cut";
  return std::string(kind) + " in square " + bottom.to_string() + " " + left.to_string() + " " +
         right.to_string() + " " + top.to_string() + " (" + (step == Column::left ? "left" : "right") +
         " steps)";
}

std::vector<ForbiddenCut> detect_forbidden_cuts(const IntervalPartition& p) {
  const Zha& h = p.host();
  std::vector<ForbiddenCut> out;
  for (const Element& d : h.elements()) {
    const Element left{d.a + 1, d.b}, right{d.a, d.b + 1}, top{d.a + 1, d.b + 1};
    if (!h.contains(left) || !h.contains(right)) continue;
    auto classify = [&](Element lower_from, Element lower_to, Element upper_from, Element upper_to, Column step) {
      const bool lower_same = p.same_block(lower_from, lower_to);
      const bool upper_same = p.same_block(upper_from, upper_to);
      if (lower_same && !upper_same) out.push_back({CutShape::y_cut, d, left, right, top, step});
      if (!lower_same && upper_same) out.push_back({CutShape::lambda_cut, d, left, right, top, step});
    };
    classify(d, left, right, top, Column::left);
    classify(d, right, left, top, Column::right);
  }
  return out;
}

void for_each_interval_partition(const Zha& host,
                                 const std::function<void(const IntervalPartition&)>& visit) {
  const std::size_t n = host.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const Element x = host.element(i), y = host.element(j);
    return std::pair{x.a + x.b, x.a} < std::pair{y.a + y.b, y.a};
  });
  std::vector<int> label(n, -1);
  int next_label = 0;
  std::function<void(std::size_t)> grow = [&](std::size_t cursor) {
    while (cursor < n && label[order[cursor]] >= 0) ++cursor;
    if (cursor == n) {
      visit(IntervalPartition(host, label));
      return;
    }
    const std::size_t m = order[cursor];
    for (std::size_t t = 0; t < n; ++t) {
      if (!host.leq_index(m, t)) continue;
      std::vector<std::size_t> block;
      bool free = true;
      for (std::size_t i = 0; i < n && free; ++i) {
        if (host.leq_index(m, i) && host.leq_index(i, t)) {
          free = label[i] < 0;
          block.push_back(i);
        }
      }
      if (!free) continue;
      for (std::size_t i : block) label[i] = next_label;
      ++next_label;
      grow(cursor + 1);
      --next_label;
      for (std::size_t i : block) label[i] = -1;
    }
  };
  grow(0);
}

std::vector<OperatorTable> enumerate_j_operators(const Zha& host, std::size_t max_elements) {
  if (host.size() > max_elements)
    throw RefusalError("host has " + std::to_string(host.size()) + " elements; enumeration guard is " +
                       std::to_string(max_elements));
  std::vector<OperatorTable> out;
  for_each_interval_partition(host, [&](const IntervalPartition& p) {
    OperatorTable t = p.top_operator();
    if (check_j123(t).ok()) out.push_back(std::move(t));
  });
  return out;
}

}  // namespace zhakit
