#pragma once

// J-operators (nuclei) on ZHAs: the axioms, the derived rules, their regions,
// and the brute-force enumeration that matches them against slashings.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhakit/slashing.hpp"

namespace zhakit {

/// Outcome of checking J1 (P <= P*), J2 (P* = P**) and J3 ((P∧Q)* = P*∧Q*).
/// Witnesses are the first failures in lexicographic (a, b) order.
struct JVerdict {
  bool j1_ok = true;
  bool j2_ok = true;
  bool j3_ok = true;
  std::optional<Element> j1_witness;
  std::optional<Element> j2_witness;
  std::optional<std::pair<Element, Element>> j3_witness;

  bool ok() const { return j1_ok && j2_ok && j3_ok; }
  /// "J1 fails at 44", or "ok".
  std::string describe() const;
};

JVerdict check_j123(const OperatorTable& t);

struct RuleCheck {
  std::string name;
  bool holds = true;
  std::vector<Element> witness;  // the instantiation that broke the rule
};

/// Checks Mo, Sand, EC∧ (named "ECand"), EC∨ ("ECor") and ECS universally over the host.
std::vector<RuleCheck> derived_rule_suite(const OperatorTable& t);

/// Checks the two rules that forbid cuts stopping midway, over all triples:
/// P* = Q* implies (P∨R)* = (Q∨R)* and (P∧R)* = (Q∧R)*.
/// Named "NoYcuts" and "NoLambdacuts".
std::vector<RuleCheck> no_midway_cut_rules(const OperatorTable& t);

/// A partition of a ZHA whose blocks are intervals [min, max].
class IntervalPartition {
 public:
  /// `block_of[i]` labels host element i; labels are renumbered in order of
  /// first appearance. Throws ContractError if a block is not an interval.
  IntervalPartition(Zha host, const std::vector<int>& block_of);

  const Zha& host() const { return host_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::size_t>& block(std::size_t k) const { return blocks_[k]; }
  std::size_t block_index_of(std::size_t element_index) const { return block_of_[element_index]; }
  bool same_block(Element x, Element y) const;
  Element block_min(std::size_t k) const;
  Element block_max(std::size_t k) const;

  /// x ↦ max of x's block.
  OperatorTable top_operator() const;

  bool operator==(const IntervalPartition&) const = default;

 private:
  Zha host_;
  std::vector<std::size_t> block_of_;
  std::vector<std::vector<std::size_t>> blocks_;
};

/// The ~_J classes of a J-operator; ContractError unless J123 holds.
IntervalPartition j_regions(const OperatorTable& t);

enum class CutShape { y_cut, lambda_cut };

/// A unit square bottom, bottom+(1,0) = left, bottom+(0,1) = right, top in
/// which one edge is uncut while the parallel edge is cut. For a Y-cut the
/// lower edge is the uncut one; for a λ-cut it is the upper edge.
struct ForbiddenCut {
  CutShape shape;
  Element bottom;
  Element left;
  Element right;
  Element top;
  /// Direction of the parallel edge pair: left step (a+1) or right step (b+1).
  Column step;

  bool operator==(const ForbiddenCut&) const = default;
  std::string describe() const;
};

std::vector<ForbiddenCut> detect_forbidden_cuts(const IntervalPartition& p);

/// Calls `visit` for every partition of the host into intervals. Each block is
/// grown from the first unassigned element in (a+b, a) order, which is minimal
/// among the unassigned ones, by choosing its top.
void for_each_interval_partition(const Zha& host, const std::function<void(const IntervalPartition&)>& visit);

/// Top-of-block operators of all interval partitions that pass J123, in
/// enumeration order. RefusalError if the host has more than `max_elements`.
std::vector<OperatorTable> enumerate_j_operators(const Zha& host, std::size_t max_elements = 14);

}  // namespace zhakit
