#pragma once

// Two-column graphs, their order topology, and the planar Heyting algebra
// (ZHA) of open piles.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zhakit/errors.hpp"

namespace zhakit {

enum class Column : std::uint8_t { left, right };

/// A point `La` or `Rb` of a two-column graph; indices are 1-based.
struct Point {
  Column column = Column::left;
  int index = 1;

  auto operator<=>(const Point&) const = default;

  /// Machine token: "L4", "R5".
  std::string token() const;
  /// Human-facing glyph: "4_", ".5".
  std::string glyph() const;
};

Point parse_point(std::string_view token);

/// A set of points of one graph, as a bitmask over the graph's point indices.
class PointSet {
 public:
  constexpr PointSet() = default;
  constexpr explicit PointSet(std::uint64_t bits) : bits_(bits) {}

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(int bit) const { return (bits_ >> bit) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const;
  constexpr bool subset_of(PointSet other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr PointSet with(int bit) const { return PointSet(bits_ | (std::uint64_t{1} << bit)); }
  constexpr PointSet without(int bit) const { return PointSet(bits_ & ~(std::uint64_t{1} << bit)); }

  friend constexpr PointSet operator&(PointSet x, PointSet y) { return PointSet(x.bits_ & y.bits_); }
  friend constexpr PointSet operator|(PointSet x, PointSet y) { return PointSet(x.bits_ | y.bits_); }
  friend constexpr PointSet operator-(PointSet x, PointSet y) { return PointSet(x.bits_ & ~y.bits_); }
  constexpr auto operator<=>(const PointSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

/// An explicit arrow `from -> to`: an open set containing `from` contains `to`.
struct Arrow {
  Point from;
  Point to;
  auto operator<=>(const Arrow&) const = default;
};

class TwoColumnGraph {
 public:
  static constexpr int max_points = 64;

  TwoColumnGraph(int left_count, int right_count, std::vector<Arrow> arrows = {},
                 std::vector<Point> questions = {});

  int left_count() const { return left_; }
  int right_count() const { return right_; }
  int point_count() const { return left_ + right_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  PointSet questions() const { return questions_; }

  /// Bit position of a point: L1..Ll occupy 0..l-1, R1..Rr occupy l..l+r-1.
  int bit(Point p) const;
  Point point_at(int bit) const;
  bool has_point(Point p) const;
  PointSet all_points() const;
  std::vector<Point> points_of(PointSet s) const;
  PointSet set_of(std::span<const Point> points) const;

  TwoColumnGraph with_questions(PointSet questions) const;

  /// Implicit column arrows plus explicit arrows, as (from, to) bit pairs.
  std::vector<std::pair<int, int>> all_arrows() const;

  bool operator==(const TwoColumnGraph&) const = default;

 private:
  int left_;
  int right_;
  std::vector<Arrow> arrows_;
  PointSet questions_;
};

/// A ZHA element, written as the digit pair `ab`.
struct Element {
  int a = 0;
  int b = 0;

  auto operator<=>(const Element&) const = default;

  /// "23", or "[10]3" when a digit exceeds 9.
  std::string to_string() const;
};

/// Parses "23" or "[10]3"-style digit pairs.
Element parse_element(std::string_view text);

/// Componentwise order on digit pairs.
constexpr bool pair_leq(Element x, Element y) { return x.a <= y.a && x.b <= y.b; }

/// The lattice of open piles of a two-column graph, with its Heyting
/// operations. Copies share the immutable element tables.
class Zha {
 public:
  /// Validates: contains 00 and lr, closed under componentwise min and max,
  /// and every implication has a maximum witness.
  static Zha from_elements(std::vector<Element> elements);
  static Zha grid(int l, int r);

  int l() const;
  int r() const;
  std::size_t size() const;
  /// Elements in lexicographic (a, b) order; index positions refer to this order.
  std::span<const Element> elements() const;
  Element element(std::size_t index) const;
  bool contains(Element x) const;
  /// Throws DomainError for elements outside the algebra.
  std::size_t index_of(Element x) const;

  Element top() const;
  Element bottom() const;
  bool is_grid() const;

  bool leq(Element x, Element y) const;
  Element meet(Element x, Element y) const;
  Element join(Element x, Element y) const;
  Element imp(Element x, Element y) const;
  Element neg(Element x) const;

  // Index-level operations; no domain checks beyond the index range.
  bool leq_index(std::size_t i, std::size_t j) const;
  std::size_t meet_index(std::size_t i, std::size_t j) const;
  std::size_t join_index(std::size_t i, std::size_t j) const;
  std::size_t imp_index(std::size_t i, std::size_t j) const;

  bool operator==(const Zha& other) const;

 private:
  struct Data;
  explicit Zha(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

/// {L1..La} ∪ {R1..Rb}; not necessarily open.
PointSet pile(const TwoColumnGraph& graph, int a, int b);
PointSet pile(const TwoColumnGraph& graph, Element x);

/// Down-closed under every implicit column arrow and every explicit arrow.
bool is_open(const TwoColumnGraph& graph, PointSet s);

/// All open subsets of the order topology, found by brute force over subsets.
std::vector<PointSet> open_sets(const TwoColumnGraph& graph);

Zha zha_from_2cg(const TwoColumnGraph& graph);

/// True when the graph's arrows, together with the column arrows, contain no cycle.
bool is_acyclic(const TwoColumnGraph& graph);

/// One acyclic graph per distinct ZHA with l <= max_l and r <= max_r, in
/// (l, r, element list) order. Each graph carries at most one outgoing cross
/// arrow per point.
std::vector<TwoColumnGraph> all_acyclic_zha_graphs(int max_l, int max_r);

}  // namespace zhakit
