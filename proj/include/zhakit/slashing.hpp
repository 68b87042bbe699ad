#pragma once

// Piccs, slashings, operator tables, and the correspondence between sets of
// question marks and slashings.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "zhakit/lattice.hpp"

namespace zhakit {

/// A partition of {0..n} into contiguous classes, stored as its cut
/// positions: a cut at i separates i-1 from i.
class Picc {
 public:
  explicit Picc(int n, const std::vector<int>& cuts = {});

  /// All cuts: 0|1|...|n.
  static Picc discrete(int n);
  /// No cuts: 01...n.
  static Picc trivial(int n);
  /// Every picc on {0..n}, ordered by cut bitmask.
  static std::vector<Picc> all(int n);

  int n() const { return n_; }
  bool has_cut(int position) const;
  std::vector<int> cuts() const;

  /// Maximum of the class of a.
  int top(int a) const;
  /// Minimum of the class of a.
  int bottom(int a) const;
  std::vector<int> class_of(int a) const;
  bool equiv(int a, int b) const;

  /// "0|123|45"
  std::string to_string() const;
  /// "4321/0" for a left picc, "0123\45\6" for a right picc.
  std::string to_slash_string(Column side) const;

  auto operator<=>(const Picc&) const = default;

 private:
  int n_;
  std::vector<bool> cut_;  // index i in 1..n
};

/// Parses "0|123|45"; digits above 9 are written "[10]".
Picc parse_picc(std::string_view text);

inline int picc_top(const Picc& p, int a) { return p.top(a); }

/// A function from a ZHA to itself, tabulated over the host's elements.
class OperatorTable {
 public:
  /// `values[i]` is the image of `host.element(i)`.
  OperatorTable(Zha host, std::vector<Element> values);

  static OperatorTable tabulate(const Zha& host, const std::function<Element(Element)>& f);
  static OperatorTable identity(const Zha& host);
  static OperatorTable constant(const Zha& host, Element value);

  const Zha& host() const { return host_; }
  Element operator()(Element x) const;
  std::size_t apply_index(std::size_t i) const { return images_[i]; }
  std::span<const std::size_t> images() const { return images_; }

  bool operator==(const OperatorTable& other) const;

 private:
  Zha host_;
  std::vector<std::size_t> images_;
};

/// Left and right cut positions of a slashing (or of a pair of piccs).
struct CutSet {
  std::vector<int> left;
  std::vector<int> right;
  auto operator<=>(const CutSet&) const = default;
};

/// A pair of piccs cutting a ZHA into regions.
class Slashing {
 public:
  /// Throws ShapeError unless left.n() == host.l() and right.n() == host.r().
  Slashing(Zha host, Picc left, Picc right);

  /// Every slashing on the host, left picc major.
  static std::vector<Slashing> all(const Zha& host);

  const Zha& host() const { return host_; }
  const Picc& left() const { return left_; }
  const Picc& right() const { return right_; }

  bool equiv(Element x, Element y) const;
  /// Componentwise maximum of the region of x within the host.
  Element top(Element x) const;
  /// Region of x, in host order.
  std::vector<Element> region(Element x) const;
  /// The slash operator x ↦ top(x).
  OperatorTable slash_operator() const;
  CutSet cuts() const;

  /// "(0|1234, 0123|45|6)"
  std::string to_string() const;
  /// "(4321/0, 0123\45\6)"
  std::string to_slash_string() const;

  bool operator==(const Slashing& other) const;

 private:
  Zha host_;
  Picc left_;
  Picc right_;
};

/// Parses "(<left>, <right>)" against a host ZHA.
Slashing parse_slashing(const Zha& host, std::string_view text);

inline bool s_equiv(const Slashing& s, Element x, Element y) { return s.equiv(x, y); }
inline Element s_top(const Slashing& s, Element x) { return s.top(x); }

/// pile(x) \ Q == pile(y) \ Q, with Q the graph's question marks.
bool q_equiv(const TwoColumnGraph& graph, Element x, Element y);

/// Left cut at a iff La ∉ Q; right cut at b iff Rb ∉ Q.
Slashing slashing_from_questions(const TwoColumnGraph& graph);

/// Inverse of slashing_from_questions; ShapeError if the picc sizes do not
/// match the graph's columns.
PointSet questions_from_slashing(const TwoColumnGraph& graph, const Slashing& s);

/// Reads the cuts off a bottom-to-top unit-step path: a step is a cut
/// exactly when its endpoints are not Q-equivalent. DomainError if the path
/// is not such a path in the graph's ZHA.
CutSet cuts_along_path(const TwoColumnGraph& graph, std::span<const Element> path);

/// Checks that consecutive elements differ by one unit step and that the path
/// runs from 00 to the top, inside the host.
void validate_unit_path(const Zha& host, std::span<const Element> path);

/// Every bottom-to-top unit-step path of the host, in lexicographic order.
std::vector<std::vector<Element>> all_unit_paths(const Zha& host);

struct SlashRejection {
  enum class Reason { left_not_contiguous, right_not_contiguous, not_top_of_region };
  Reason reason;
  Element witness;

  std::string describe() const;
};

using SlashRecognition = std::variant<Slashing, SlashRejection>;

/// Decides whether a table is the slash operator of some slashing, by closing
/// the digit relations it induces and comparing with the resulting tops.
SlashRecognition recognize_slash_operator(const OperatorTable& table);

}  // namespace zhakit
