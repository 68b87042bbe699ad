#pragma once

// Polynomials in one variable P over a ZHA, the catalog of named quotients,
// the meet/join algebra of slash-operators and piccs, and the translation of
// an arbitrary slashing into a polynomial.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zhakit/nucleus.hpp"
#include "zhakit/slashing.hpp"

namespace zhakit {

class PolyExpr {
 public:
  enum class Kind { variable, constant, top, bottom, negation, meet, join, implies };

  static PolyExpr variable();
  static PolyExpr constant(Element value);
  static PolyExpr top();
  static PolyExpr bottom();
  static PolyExpr negation(PolyExpr x);
  static PolyExpr meet(PolyExpr x, PolyExpr y);
  static PolyExpr join(PolyExpr x, PolyExpr y);
  static PolyExpr implies(PolyExpr x, PolyExpr y);

  Kind kind() const;
  /// Only meaningful for Kind::constant.
  Element value() const;
  const PolyExpr& lhs() const;
  const PolyExpr& rhs() const;
  /// Every constant literal, in left-to-right order.
  std::vector<Element> constants() const;

  bool operator==(const PolyExpr& other) const;

 private:
  struct Node;
  explicit PolyExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Atoms P, T, F and constants ("22", "[10]3"); operators !, &, |, -> with
/// precedence ! > & > | > ->, and -> associating to the right. A parenthesised
/// section list such as "(v 42 & -> 24)" stands for the meet of the sections
/// (v c) = P | c, (-> c) = c -> P, (->-> c) = (P -> c) -> c and (!!) = !!P.
PolyExpr parse_poly(std::string_view text);
/// Prints in the same grammar with the fewest parentheses; sections come back expanded.
std::string to_string(const PolyExpr& e);

/// DomainError if p or a constant of e is not in the host.
Element eval_poly(const PolyExpr& e, const Zha& host, Element p);
OperatorTable tabulate_poly(const PolyExpr& e, const Zha& host);

enum class NamedKind { neg_neg, or_const, imp_const, imp_imp_const, forcing, mixed };

NamedKind parse_named_kind(std::string_view name);
std::string to_string(NamedKind kind);
std::size_t named_arity(NamedKind kind);

/// neg_neg: ¬¬P. or_const(Q): P ∨ Q. imp_const(R): R → P. imp_imp_const(R):
/// (P → R) → R. forcing(Q, R): (P ∨ Q) ∧ (R → P). mixed(a): (P → a) → P.
/// ShapeError when the number of constants does not match the kind.
PolyExpr named_expr(NamedKind kind, const std::vector<Element>& constants);
OperatorTable named_operator(const Zha& host, NamedKind kind, const std::vector<Element>& constants);

/// Pointwise meet. ShapeError on a host mismatch.
OperatorTable op_meet(const OperatorTable& j, const OperatorTable& k);
/// The slashing whose cuts are the cuts common to both. ShapeError on a host mismatch.
Slashing op_join_slash(const Slashing& j, const Slashing& k);
/// The slashing whose cuts are all the cuts of either.
Slashing op_meet_slash(const Slashing& j, const Slashing& k);

inline CutSet cuts_of(const Slashing& s) { return s.cuts(); }
/// RangeError if a cut lies outside 1..l or 1..r.
Slashing slashing_from_cuts(const Zha& host, const CutSet& cuts);

/// Union of cuts.
Picc picc_meet(const Picc& p, const Picc& q);
/// Intersection of cuts.
Picc picc_join(const Picc& p, const Picc& q);
/// Cuts of q ⊆ cuts of p.
bool picc_leq(const Picc& p, const Picc& q);
/// a^p <= a^q for every a.
bool picc_leq_pointwise(const Picc& p, const Picc& q);

struct FsIdentity {
  std::string label;      // "(i)"
  std::string statement;  // "J_a | J_b = J_(a|b)"
  bool holds = true;
  std::size_t instances = 0;
  std::optional<std::pair<Element, Element>> witness;
};

/// Checks (i)-(vi) for every a, b in the host. Meets are compared pointwise;
/// joins are taken on the recognized slashings.
std::vector<FsIdentity> fs_identities(const Zha& host);

/// The meet over the cuts of s of (P → c) → c, where c is the top of the
/// lower region of that single cut; the constant ⊤ when s has no cuts.
PolyExpr slashing_to_polynomial(const Slashing& s);

/// Tabulates e on the host and runs check_j123.
JVerdict is_polynomial_j(const PolyExpr& e, const Zha& host);

}  // namespace zhakit
