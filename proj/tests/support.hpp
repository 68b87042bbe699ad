#pragma once

// Oracles and generators shared by the test binaries. Nothing here calls the
// library code it is used to check.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "zhakit/formats.hpp"
#include "zhakit/lattice.hpp"
#include "zhakit/slashing.hpp"
#include "zhakit/topos.hpp"

namespace testing {

using namespace zhakit;

inline std::string fixture(const std::string& name) { return std::string(ZHAKIT_FIXTURES) + "/" + name; }

inline TwoColumnGraph load_fixture(const std::string& name) { return parse_2cg(read_file(fixture(name))); }

inline Element el(const char* s) { return parse_element(s); }

// Open sets by reachability over the raw arrow list.
struct OpenSetOracle {
  int n = 0;
  std::vector<std::uint64_t> below;  // points every point forces, itself included

  explicit OpenSetOracle(const TwoColumnGraph& g) : n(g.point_count()), below(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) below[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
    auto add = [&](Point from, Point to) {
      below[static_cast<std::size_t>(g.bit(from))] |= std::uint64_t{1} << g.bit(to);
    };
    for (int a = 2; a <= g.left_count(); ++a) add({Column::left, a}, {Column::left, a - 1});
    for (int b = 2; b <= g.right_count(); ++b) add({Column::right, b}, {Column::right, b - 1});
    for (const Arrow& ar : g.arrows()) add(ar.from, ar.to);
    for (int round = 0; round < n; ++round)
      for (auto& m : below)
        for (int j = 0; j < n; ++j)
          if ((m >> j) & 1U) m |= below[static_cast<std::size_t>(j)];
  }

  bool open(std::uint64_t s) const {
    for (int i = 0; i < n; ++i)
      if (((s >> i) & 1U) && (below[static_cast<std::size_t>(i)] & ~s)) return false;
    return true;
  }

  std::vector<std::uint64_t> all_open() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
      if (open(s)) out.push_back(s);
    return out;
  }

  // Largest open U with U & x contained in y.
  std::uint64_t imp(std::uint64_t x, std::uint64_t y) const {
    std::uint64_t best = 0;
    for (std::uint64_t u : all_open())
      if ((u & x & ~y) == 0) best |= u;
    return best;
  }
};

inline std::uint64_t pile_bits(int l, int a, int b) {
  return ((std::uint64_t{1} << a) - 1) | (((std::uint64_t{1} << b) - 1) << l);
}

// A random acyclic 2CG: cross arrows only go from a higher rank to a strictly
// lower one in a random linear extension, so cycles are impossible.
inline TwoColumnGraph random_2cg(std::mt19937_64& rng, int max_l, int max_r, bool with_questions = false) {
  std::uniform_int_distribution<int> dl(0, max_l), dr(0, max_r);
  const int l = dl(rng), r = dr(rng);
  std::vector<Arrow> arrows;
  std::bernoulli_distribution coin(0.3);
  // Rank: La has rank 2a, Rb has rank 2b+1 or 2b-1 by a coin per graph.
  const bool right_higher = coin(rng);
  auto rank = [&](Point p) { return 2 * p.index + (p.column == Column::right ? (right_higher ? 1 : -1) : 0); };
  for (int a = 1; a <= l; ++a)
    for (int b = 1; b <= r; ++b) {
      const Point L{Column::left, a}, R{Column::right, b};
      if (!coin(rng)) continue;
      if (rank(L) > rank(R))
        arrows.push_back({L, R});
      else
        arrows.push_back({R, L});
    }
  std::vector<Point> q;
  if (with_questions) {
    std::bernoulli_distribution half(0.5);
    for (int a = 1; a <= l; ++a)
      if (half(rng)) q.push_back({Column::left, a});
    for (int b = 1; b <= r; ++b)
      if (half(rng)) q.push_back({Column::right, b});
  }
  return TwoColumnGraph(l, r, arrows, q);
}

inline Picc random_picc(std::mt19937_64& rng, int n) {
  std::vector<int> cuts;
  std::bernoulli_distribution half(0.5);
  for (int i = 1; i <= n; ++i)
    if (half(rng)) cuts.push_back(i);
  return Picc(n, cuts);
}

// A random DAG on n points: arrows only from higher to lower index.
inline FinitePoset random_poset(std::mt19937_64& rng, int n, double density = 0.35) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
  std::vector<std::pair<int, int>> arrows;
  std::bernoulli_distribution coin(density);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (coin(rng)) arrows.push_back({i, j});
  return FinitePoset::from_dag(names, arrows);
}

// A random functor: points sinks first; each element of F(p) is a random
// compatible family over the strict down-set, so composites agree by design.
inline Presheaf random_presheaf(std::mt19937_64& rng, const FinitePoset& poset, int max_fiber = 2) {
  const int n = static_cast<int>(poset.size());
  std::vector<std::vector<std::string>> fibers(static_cast<std::size_t>(n));
  // restrict_to[p][k][q]: image of element k of F(p) in F(q) for q below p
  std::vector<std::vector<std::vector<int>>> image(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> size_dist(0, max_fiber);
  for (int p : poset.bottom_up()) {
    const auto up = static_cast<std::size_t>(p);
    const int want = size_dist(rng);
    for (int k = 0; k < want; ++k) {
      std::vector<int> fam(static_cast<std::size_t>(n), -1);
      bool ok = true;
      // Choose values on maximal points of the strict down-set first by
      // walking it top-down; each choice pins everything below it.
      std::vector<int> order(poset.bottom_up().rbegin(), poset.bottom_up().rend());
      for (int q : order) {
        if (q == p || !poset.reaches(p, q) || fam[static_cast<std::size_t>(q)] >= 0) continue;
        const auto& options = fibers[static_cast<std::size_t>(q)];
        std::vector<int> compatible;
        for (int x = 0; x < static_cast<int>(options.size()); ++x) {
          bool good = true;
          for (int s = 0; s < n && good; ++s) {
            if (s == q || !poset.reaches(q, s)) continue;
            const int pinned = fam[static_cast<std::size_t>(s)];
            if (pinned >= 0 && image[static_cast<std::size_t>(q)][static_cast<std::size_t>(x)][static_cast<std::size_t>(s)] != pinned) good = false;
          }
          if (good) compatible.push_back(x);
        }
        if (compatible.empty()) {
          ok = false;
          break;
        }
        std::uniform_int_distribution<std::size_t> pick(0, compatible.size() - 1);
        const int x = compatible[pick(rng)];
        fam[static_cast<std::size_t>(q)] = x;
        for (int s = 0; s < n; ++s)
          if (s != q && poset.reaches(q, s))
            fam[static_cast<std::size_t>(s)] = image[static_cast<std::size_t>(q)][static_cast<std::size_t>(x)][static_cast<std::size_t>(s)];
      }
      if (!ok) break;
      fibers[up].push_back(poset.name(p) + "_" + std::to_string(k));
      image[up].push_back(fam);
    }
  }
  Presheaf::EdgeMaps maps;
  for (const auto& [p, q] : poset.covers()) {
    if (fibers[static_cast<std::size_t>(p)].empty()) continue;
    std::vector<int> m;
    for (const auto& fam : image[static_cast<std::size_t>(p)]) m.push_back(fam[static_cast<std::size_t>(q)]);
    maps.emplace(std::pair{p, q}, std::move(m));
  }
  return Presheaf(poset, fibers, maps);
}

}  // namespace testing
