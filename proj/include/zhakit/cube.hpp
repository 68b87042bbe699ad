#pragma once

// The and/or/implication cubes: eight ways of starring the two arguments and
// the result of a connective, ordered by provability (the theorem preorder)
// and by evaluation in models (the semantic preorder).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "zhakit/slashing.hpp"

namespace zhakit {

enum class Connective { conj, disj, impl };

/// "and", "or", "imp".
Connective parse_connective(std::string_view name);
std::string to_string(Connective c);

/// Bit 1 stars the first argument, bit 2 the second, bit 4 the result.
struct CubeNode {
  Connective connective;
  int bits;

  CubeNode(Connective c, int bits);
  /// "(P* & Q)*"-style rendering, in the polynomial grammar.
  std::string formula() const;
};

struct Model {
  Slashing slashing;
  Element p;
  Element q;

  const Zha& zha() const { return slashing.host(); }
  /// "H = {00,01,10,11}, J = (0|1, 01), P = 10, Q = 01"
  std::string describe() const;
};

Element node_eval(const CubeNode& n, const Model& m);

/// A preorder on the eight nodes of one cube.
class Preorder {
 public:
  Preorder();  // the identity relation

  bool leq(int i, int j) const { return rel_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  void set(int i, int j) { rel_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true; }
  bool equivalent(int i, int j) const { return leq(i, j) && leq(j, i); }
  /// Reflexive-transitive closure.
  Preorder closure() const;
  bool subset_of(const Preorder& other) const;
  /// Pairs (i, j) with i <= j and i != j, in lexicographic order.
  std::vector<std::pair<int, int>> strict_pairs() const;
  /// Equivalence classes, each sorted, ordered by smallest member.
  std::vector<std::vector<int>> classes() const;

  bool operator==(const Preorder&) const = default;

 private:
  std::array<std::array<bool, 8>, 8> rel_{};
};

/// Generators: adding a star to either argument or to the result goes up, except
/// that starring the antecedent of → goes down; plus the extended rules
/// 3 = 4 = 7 for ∧, 7 <= 4 for ∨, and 6 <= 3 for →. Returns their closure.
Preorder theorem_preorder(Connective c);
/// The generators alone, before closure.
std::vector<std::pair<int, int>> theorem_generators(Connective c);

/// i <= j when node i evaluates below node j in every model. ContractError on
/// an empty collection.
Preorder semantic_preorder(Connective c, const std::vector<Model>& models);
/// The preorder one model induces.
Preorder model_preorder(Connective c, const Model& m);

/// Visits models in a fixed order: hosts from all_acyclic_zha_graphs(bound,
/// bound), then Slashing::all order, then (P, Q) in host order. With a seed,
/// the (slashing, P, Q) order inside each host is a reproducible shuffle.
/// Stops as soon as `visit` returns false; returns false if stopped.
bool for_each_model(int bound, const std::function<bool(const Model&)>& visit,
                    std::optional<std::uint64_t> seed = std::nullopt);

/// The semantic preorder over every model within the bound, computed without
/// materialising models.
Preorder semantic_preorder_up_to(Connective c, int bound);

/// First model in for_each_model order where node i is not below node j.
/// ContractError if (i, j) is in the theorem preorder.
std::optional<Model> countermodel_search(Connective c, int i, int j, int bound,
                                         std::optional<std::uint64_t> seed = std::nullopt);

/// First model whose induced preorder equals the theorem preorder.
std::optional<Model> separating_valuation_search(Connective c, int bound,
                                                 std::optional<std::uint64_t> seed = std::nullopt);

struct SimplifiedCube {
  std::vector<std::vector<int>> classes;
  /// Hasse edges between classes, as (lower, upper) class indices.
  std::vector<std::pair<int, int>> edges;

  /// The preorder on nodes generated by the classes and edges.
  Preorder closure() const;
};

/// Transitive reduction of the theorem preorder modulo its equivalence classes.
SimplifiedCube simplified_cube(Connective c);

/// Classes, Hasse edges, a separating model, and one countermodel per
/// non-theorem pair, in a stable text layout.
std::string cube_report(Connective c, int bound, std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace zhakit
