#pragma once

// The presheaf topos Set^(P,A) over a finite poset: the classifier Ω, the
// truth arrow, characteristic maps, local operators induced by J-operators,
// closure of subobjects, and sheafification by right Kan extension along the
// inclusion of the points without question marks.
//
// Orientation: an arrow p -> q of the DAG is a morphism of the category, and
// functors are covariant along it. The down-set ↓p is everything reachable
// from p (p included). Ω(p) is the set of down-closed subsets of ↓p, and
// Ω(p -> q) intersects with ↓q.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zhakit/lattice.hpp"
#include "zhakit/nucleus.hpp"

namespace zhakit {

class FinitePoset {
 public:
  /// `arrows` are (from, to) index pairs. DomainError if they contain a cycle.
  static FinitePoset from_dag(std::vector<std::string> names, const std::vector<std::pair<int, int>>& arrows);
  /// Points are the graph's points in bit order, named by token (L1, R2, ...).
  static FinitePoset from_2cg(const TwoColumnGraph& graph);

  std::size_t size() const { return names_.size(); }
  const std::string& name(int p) const { return names_.at(static_cast<std::size_t>(p)); }
  int index_of(std::string_view name) const;

  /// True when q is reachable from p (q ∈ ↓p).
  bool reaches(int p, int q) const { return down_[static_cast<std::size_t>(p)].contains(q); }
  PointSet down_set(int p) const { return down_.at(static_cast<std::size_t>(p)); }
  PointSet all_points() const;
  /// Covering edges p -> q (Hasse diagram), sorted.
  const std::vector<std::pair<int, int>>& covers() const { return covers_; }
  const std::vector<int>& covered_by(int p) const { return covered_by_[static_cast<std::size_t>(p)]; }
  /// Every point appears after all points of its strict down-set.
  const std::vector<int>& bottom_up() const { return bottom_up_; }

  bool is_down_closed(PointSet s) const;
  /// Down-closed subsets of `within`, ordered by (size, bits).
  std::vector<PointSet> down_closed_subsets(PointSet within) const;
  std::string set_name(PointSet s) const;

  bool operator==(const FinitePoset& other) const { return names_ == other.names_ && down_ == other.down_; }

 private:
  std::vector<std::string> names_;
  std::vector<PointSet> down_;
  std::vector<std::pair<int, int>> covers_;
  std::vector<std::vector<int>> covered_by_;
  std::vector<int> bottom_up_;
};

inline PointSet down_set(const FinitePoset& poset, int p) { return poset.down_set(p); }

FinitePoset poset_from_dag(std::vector<std::string> names, const std::vector<std::pair<int, int>>& arrows);

/// A set-valued covariant functor on a finite poset. Maps are given on
/// covering edges; composites along every path are derived and must agree.
class Presheaf {
 public:
  using EdgeMaps = std::map<std::pair<int, int>, std::vector<int>>;

  /// DomainError on a missing or ill-sized edge map, or a non-commuting diamond.
  Presheaf(FinitePoset poset, std::vector<std::vector<std::string>> fibers, const EdgeMaps& edge_maps);

  static Presheaf terminal(const FinitePoset& poset);
  /// {*} over the points of an open set, ∅ elsewhere.
  static Presheaf subterminal(const FinitePoset& poset, PointSet open);

  const FinitePoset& poset() const { return poset_; }
  std::size_t fiber_size(int p) const { return fibers_[static_cast<std::size_t>(p)].size(); }
  const std::vector<std::string>& fiber(int p) const { return fibers_[static_cast<std::size_t>(p)]; }
  int element_index(int p, std::string_view name) const;
  /// Image of element k of F(p) under F(p -> q); requires q ∈ ↓p.
  int restrict(int p, int q, int k) const;
  /// The stored map on a covering edge.
  const std::vector<int>& edge_map(int p, int q) const;

  bool operator==(const Presheaf& other) const;

 private:
  FinitePoset poset_;
  std::vector<std::vector<std::string>> fibers_;
  EdgeMaps edge_maps_;
  // composite_[p][q] for q ∈ ↓p
  std::vector<std::vector<std::vector<int>>> composite_;
};

struct NaturalityFailure {
  int from;
  int to;
  int element;
};

/// A morphism of presheaves given by its components.
class NatTrans {
 public:
  /// Validates component shapes only; naturality is a separate check.
  NatTrans(Presheaf source, Presheaf target, std::vector<std::vector<int>> components);

  const Presheaf& source() const { return source_; }
  const Presheaf& target() const { return target_; }
  int apply(int p, int k) const { return components_[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)]; }
  const std::vector<std::vector<int>>& components() const { return components_; }

  std::optional<NaturalityFailure> naturality_failure() const;
  bool is_natural() const { return !naturality_failure().has_value(); }
  bool is_componentwise_bijective() const;
  /// Explicit inverse; ContractError unless every component is bijective.
  NatTrans inverse() const;
  /// `after ∘ *this`.
  NatTrans then(const NatTrans& after) const;

  bool operator==(const NatTrans& other) const;

 private:
  Presheaf source_;
  Presheaf target_;
  std::vector<std::vector<int>> components_;
};

/// True when the map is natural, componentwise bijective, and its explicitly
/// constructed inverse is natural with both composites identities.
bool is_natural_iso(const NatTrans& t);

/// A canonical subobject: per-point subsets closed under the host's maps.
class Subfunctor {
 public:
  /// ContractError if the subsets are not closed under the host's maps.
  Subfunctor(Presheaf host, std::vector<std::vector<bool>> members);

  static Subfunctor whole(const Presheaf& host);
  static Subfunctor empty(const Presheaf& host);
  /// Every subfunctor, enumerated point by point in bottom-up order.
  static std::vector<Subfunctor> all(const Presheaf& host);

  const Presheaf& host() const { return host_; }
  bool contains(int p, int k) const { return members_[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)]; }
  const std::vector<std::vector<bool>>& members() const { return members_; }
  bool subset_of(const Subfunctor& other) const;
  /// The subobject as a presheaf in its own right, with the inclusion into the host.
  Presheaf as_presheaf() const;
  NatTrans inclusion() const;
  /// For subfunctors of the terminal: the points where it is inhabited.
  PointSet support() const;

  bool operator==(const Subfunctor& other) const { return members_ == other.members_ && host_ == other.host_; }

 private:
  Presheaf host_;
  std::vector<std::vector<bool>> members_;
};

/// Subfunctors of the terminal presheaf, in Subfunctor::all order.
std::vector<Subfunctor> sub1_lattice(const FinitePoset& poset);

/// The subobject classifier with its values kept as point sets.
class Omega {
 public:
  explicit Omega(const FinitePoset& poset);

  const FinitePoset& poset() const { return presheaf_.poset(); }
  const Presheaf& presheaf() const { return presheaf_; }
  PointSet value(int p, int k) const { return values_[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)]; }
  int index_of(int p, PointSet s) const;
  const std::vector<PointSet>& values(int p) const { return values_[static_cast<std::size_t>(p)]; }

 private:
  std::vector<std::vector<PointSet>> values_;
  Presheaf presheaf_;
};

inline Omega omega(const FinitePoset& poset) { return Omega(poset); }

/// ⊤ : 1 -> Ω, * ↦ ↓p.
NatTrans true_nat(const Omega& omega);

/// χ_B : C -> Ω, c ↦ {r ∈ ↓p | C(p -> r)(c) ∈ B(r)}.
NatTrans chi(const Subfunctor& sub, const Omega& omega);

/// {c | m(p)(c) = ↓p}: the pullback of ⊤ along m : C -> Ω.
Subfunctor pullback_of_true(const NatTrans& to_omega, const Omega& omega);

/// Every natural transformation source -> target, built point by point in
/// bottom-up order; each element's image is filtered by naturality against
/// the already-fixed components below it.
std::vector<NatTrans> all_nat_trans(const Presheaf& source, const Presheaf& target);

struct ClassifierReport {
  std::size_t sub_count = 0;
  std::size_t hom_count = 0;
  bool chi_natural = true;
  bool chi_injective = true;
  bool chi_surjective = true;
  bool pullback_recovers_sub = true;
  bool chi_of_pullback_recovers_map = true;

  bool ok() const {
    return chi_natural && chi_injective && chi_surjective && pullback_recovers_sub &&
           chi_of_pullback_recovers_map && sub_count == hom_count;
  }
};

/// Enumerates Sub(C) and Hom(C, Ω) and checks that χ is a bijection between them.
ClassifierReport classifier_bijection_check(const Presheaf& c);

/// A function on the truth values (open sets) of a poset.
class TruthOperator {
 public:
  /// `image` maps open sets to open sets; DomainError unless it is total on
  /// the poset's open sets with open values.
  TruthOperator(const FinitePoset& poset, std::map<PointSet, PointSet> image);

  /// Reads an operator table on the ZHA of a 2CG through the pile correspondence.
  static TruthOperator from_table(const TwoColumnGraph& graph, const OperatorTable& table);

  PointSet operator()(PointSet open) const;
  const std::map<PointSet, PointSet>& image() const { return image_; }
  /// The same operator as a table on the graph's ZHA.
  OperatorTable to_table(const TwoColumnGraph& graph) const;

  /// Empty when J1-J3 hold (J3 with intersection as meet), else a description.
  std::optional<std::string> nucleus_violation() const;

  bool operator==(const TruthOperator&) const = default;

 private:
  std::map<PointSet, PointSet> image_;
};

/// j(p)(R) = R* ∧ ↓p. ContractError if J is not a nucleus.
NatTrans local_operator(const Omega& omega, const TruthOperator& j_op);

struct LocalOperatorLaws {
  bool preserves_true = true;  // j ∘ ⊤ = ⊤
  bool idempotent = true;      // j ∘ j = j
  bool preserves_meet = true;  // j ∘ ∧ = ∧ ∘ (j × j)
  bool natural = true;
  bool ok() const { return preserves_true && idempotent && preserves_meet && natural; }
};

LocalOperatorLaws check_local_operator_laws(const Omega& omega, const NatTrans& j);

/// B̄(p) = {c ∈ C(p) | j(p)(χ_B(p)(c)) = ↓p}.
Subfunctor closure(const Subfunctor& sub, const NatTrans& j, const Omega& omega);

/// The same closure found as the largest subfunctor T of C on which j ∘ χ_B
/// factors through ⊤, by enumerating all subfunctors of C.
Subfunctor closure_by_pullback_enumeration(const Subfunctor& sub, const NatTrans& j, const Omega& omega);

struct NaturalityReport {
  std::size_t presheaves = 0;
  std::size_t subobjects = 0;
  std::size_t squares_checked = 0;
  // One flag per square of the Q-shaped diagram: B -> 1, B -> C, ⊤, χ_B, j.
  bool to_terminal = true;
  bool inclusion = true;
  bool truth = true;
  bool characteristic = true;
  bool local_operator = true;
  bool ok() const { return to_terminal && inclusion && truth && characteristic && local_operator; }
};

/// Checks every naturality square of the Q-shaped diagram for every canonical
/// subobject of every presheaf in the battery. ContractError if J is not a nucleus.
NaturalityReport naturality_suite(const Omega& omega, const TruthOperator& j_op, const std::vector<Presheaf>& battery);

/// J(j): R ↦ the pullback of ⊤ along j ∘ χ_R, for every truth value R.
TruthOperator restrict_to_sub1(const Omega& omega, const NatTrans& j);

/// The full subposet on a set of points, with its embedding.
class SubposetInclusion {
 public:
  /// The full subposet on `points`.
  SubposetInclusion(const FinitePoset& whole, PointSet points);
  /// An explicit subposet; ContractError unless the embedding is injective and monotone.
  SubposetInclusion(const FinitePoset& whole, const FinitePoset& sub, std::vector<int> embedding);

  const FinitePoset& whole() const { return whole_; }
  const FinitePoset& sub() const { return sub_; }
  PointSet image() const { return image_; }
  int embed(int a) const { return embedding_[static_cast<std::size_t>(a)]; }
  /// True when the subposet's order is the restriction of the whole order.
  bool is_full() const;

 private:
  FinitePoset whole_;
  FinitePoset sub_;
  PointSet image_;
  std::vector<int> embedding_;
};

/// f^*: precomposition with the inclusion.
Presheaf restrict_along(const SubposetInclusion& f, const Presheaf& c);

struct RightKan {
  Presheaf extension;
  /// ε : f^*(Ran_f D) -> D.
  NatTrans counit;
};

/// (Ran_f D)(b) = compatible families (x_a ∈ D(a)) over {a | f(a) ∈ ↓b},
/// built by backtracking through the index points in bottom-up order.
RightKan right_kan(const SubposetInclusion& f, const Presheaf& d);

/// Independent oracle: per point, the cartesian product of the fibers filtered
/// by compatibility. Families per point, in lexicographic order.
std::vector<std::vector<std::vector<int>>> right_kan_families_brute_force(const SubposetInclusion& f,
                                                                          const Presheaf& d);
/// The families computed by right_kan, in the same layout as the oracle.
std::vector<std::vector<std::vector<int>>> right_kan_families(const SubposetInclusion& f, const Presheaf& d);

/// η : C -> Ran_f(f^* C), c ↦ (C(b -> f(a))(c))_a.
NatTrans kan_unit(const SubposetInclusion& f, const Presheaf& c);

struct Sheafification {
  SubposetInclusion inclusion;
  Presheaf restricted;   // f^* C
  RightKan kan;          // Ran_f f^* C with its counit
  NatTrans unit;         // C -> f_* f^* C
  const Presheaf& sheaf() const { return kan.extension; }
};

/// Sheafification of C for the question marks Q: right Kan extension along the
/// full inclusion of P \ Q. ContractError if `f` is not the full inclusion of P \ Q.
Sheafification kan_sheafify(const SubposetInclusion& f, PointSet questions, const Presheaf& c);
Sheafification kan_sheafify(const FinitePoset& poset, PointSet questions, const Presheaf& c);

}  // namespace zhakit
