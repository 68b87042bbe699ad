#include "zhakit/cube.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <tuple>

namespace zhakit {

Connective parse_connective(std::string_view name) {
  if (name == "and") return Connective::conj;
  if (name == "or") return Connective::disj;
  if (name == "imp") return Connective::impl;
  throw DomainError("unknown connective '" + std::string(name) + "' (expected and, or, imp)");
}

std::string to_string(Connective c) {
  switch (c) {
    case Connective::conj: return "and";
    case Connective::disj: return "or";
    case Connective::impl: return "imp";
  }
  return "?";
}

CubeNode::CubeNode(Connective c, int b) : connective(c), bits(b) {
  if (b < 0 || b > 7) throw RangeError("cube node " + std::to_string(b) + " outside 0..7");
}

std::string CubeNode::formula() const {
  const char* op = connective == Connective::conj ? " & " : connective == Connective::disj ? " | " : " -> ";
  std::string s = std::string(bits & 1 ? "P*" : "P") + op + (bits & 2 ? "Q*" : "Q");
  return bits & 4 ? "(" + s + ")*" : s;
}

std::string Model::describe() const {
  std::string hosts = "{";
  for (const Element& x : zha().elements()) hosts += (hosts.size() > 1 ? "," : "") + x.to_string();
  return "H = " + hosts + "}, J = " + slashing.to_string() + ", P = " + p.to_string() + ", Q = " + q.to_string();
}

namespace {

std::size_t eval_index(Connective c, int bits, const Zha& h, const OperatorTable& star, std::size_t p, std::size_t q) {
  if (bits & 1) p = star.apply_index(p);
  if (bits & 2) q = star.apply_index(q);
  std::size_t r = c == Connective::conj ? h.meet_index(p, q) : c == Connective::disj ? h.join_index(p, q) : h.imp_index(p, q);
  return bits & 4 ? star.apply_index(r) : r;
}

// One (host, slashing, P, Q) case, by index.
using CaseVisitor = std::function<bool(const Slashing&, const OperatorTable&, std::size_t, std::size_t)>;

bool for_each_case(int bound, std::optional<std::uint64_t> seed, const CaseVisitor& visit) {
  std::optional<std::mt19937_64> rng;
  if (seed) rng.emplace(*seed);
  for (const TwoColumnGraph& g : all_acyclic_zha_graphs(bound, bound)) {
    const Zha host = zha_from_2cg(g);
    const std::vector<Slashing> slashings = Slashing::all(host);
    std::vector<OperatorTable> stars;
    for (const Slashing& s : slashings) stars.push_back(s.slash_operator());
    const std::size_t n = host.size();
    if (!rng) {
      for (std::size_t s = 0; s < slashings.size(); ++s)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q)
            if (!visit(slashings[s], stars[s], p, q)) return false;
      continue;
    }
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> order;
    for (std::size_t s = 0; s < slashings.size(); ++s)
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) order.emplace_back(s, p, q);
    std::shuffle(order.begin(), order.end(), *rng);
    for (const auto& [s, p, q] : order)
      if (!visit(slashings[s], stars[s], p, q)) return false;
  }
  return true;
}

Model make_model(const Slashing& s, std::size_t p, std::size_t q) {
  return Model{s, s.host().element(p), s.host().element(q)};
}

Preorder preorder_of_values(const std::array<std::size_t, 8>& v, const Zha& h) {
  Preorder r;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (h.leq_index(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)])) r.set(i, j);
  return r;
}

std::array<std::size_t, 8> node_values(Connective c, const Zha& h, const OperatorTable& star, std::size_t p, std::size_t q) {
  std::array<std::size_t, 8> v{};
  for (int b = 0; b < 8; ++b) v[static_cast<std::size_t>(b)] = eval_index(c, b, h, star, p, q);
  return v;
}

}  // namespace

Element node_eval(const CubeNode& n, const Model& m) {
  const Zha& h = m.zha();
  const OperatorTable star = m.slashing.slash_operator();
  return h.element(eval_index(n.connective, n.bits, h, star, h.index_of(m.p), h.index_of(m.q)));
}

// --- Preorder --------------------------------------------------------------------

Preorder::Preorder() {
  for (int i = 0; i < 8; ++i) set(i, i);
}

Preorder Preorder::closure() const {
  Preorder c = *this;
  for (int i = 0; i < 8; ++i) c.set(i, i);
  for (int k = 0; k < 8; ++k)
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (c.leq(i, k) && c.leq(k, j)) c.set(i, j);
  return c;
}

bool Preorder::subset_of(const Preorder& other) const {
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (leq(i, j) && !other.leq(i, j)) return false;
  return true;
}

std::vector<std::pair<int, int>> Preorder::strict_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (i != j && leq(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::vector<int>> Preorder::classes() const {
  std::vector<std::vector<int>> out;
  std::array<bool, 8> placed{};
  for (int i = 0; i < 8; ++i) {
    if (placed[static_cast<std::size_t>(i)]) continue;
    std::vector<int> cls;
    for (int j = i; j < 8; ++j)
      if (equivalent(i, j)) {
        cls.push_back(j);
        placed[static_cast<std::size_t>(j)] = true;
      }
    out.push_back(std::move(cls));
  }
  return out;
}

// --- theorem and semantic orders ------------------------------------------------

std::vector<std::pair<int, int>> theorem_generators(Connective c) {
  std::vector<std::pair<int, int>> g;
  for (int n = 0; n < 8; ++n) {
    for (int bit : {1, 2, 4}) {
      if (n & bit) continue;
      if (c == Connective::impl && bit == 1)
        g.emplace_back(n | bit, n);
      else
        g.emplace_back(n, n | bit);
    }
  }
  switch (c) {
    case Connective::conj:
      for (auto [x, y] : {std::pair{3, 4}, {4, 3}, {4, 7}, {7, 4}}) g.emplace_back(x, y);
      break;
    case Connective::disj: g.emplace_back(7, 4); break;
    case Connective::impl: g.emplace_back(6, 3); break;
  }
  return g;
}

Preorder theorem_preorder(Connective c) {
  Preorder p;
  for (auto [i, j] : theorem_generators(c)) p.set(i, j);
  return p.closure();
}

Preorder model_preorder(Connective c, const Model& m) {
  const Zha& h = m.zha();
  return preorder_of_values(node_values(c, h, m.slashing.slash_operator(), h.index_of(m.p), h.index_of(m.q)), h);
}

Preorder semantic_preorder(Connective c, const std::vector<Model>& models) {
  if (models.empty()) throw ContractError("semantic preorder over an empty model collection");
  Preorder r = model_preorder(c, models.front());
  for (const Model& m : models) {
    const Preorder one = model_preorder(c, m);
    Preorder both;
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        if (r.leq(i, j) && one.leq(i, j)) both.set(i, j);
    r = both;
  }
  return r;
}

bool for_each_model(int bound, const std::function<bool(const Model&)>& visit, std::optional<std::uint64_t> seed) {
  return for_each_case(bound, seed, [&](const Slashing& s, const OperatorTable&, std::size_t p, std::size_t q) {
    return visit(make_model(s, p, q));
  });
}

Preorder semantic_preorder_up_to(Connective c, int bound) {
  std::array<std::array<bool, 8>, 8> rel;
  for (auto& row : rel) row.fill(true);
  for_each_case(bound, std::nullopt, [&](const Slashing& s, const OperatorTable& star, std::size_t p, std::size_t q) {
    const Zha& h = s.host();
    const auto v = node_values(c, h, star, p, q);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        if (rel[i][j] && !h.leq_index(v[i], v[j])) rel[i][j] = false;
    return true;
  });
  Preorder r;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) r.set(i, j);
  return r;
}

std::optional<Model> countermodel_search(Connective c, int i, int j, int bound, std::optional<std::uint64_t> seed) {
  CubeNode(c, i);
  CubeNode(c, j);
  if (theorem_preorder(c).leq(i, j))
    throw ContractError(std::to_string(i) + " <= " + std::to_string(j) + " is a theorem; it has no countermodel");
  std::optional<Model> found;
  for_each_case(bound, seed, [&](const Slashing& s, const OperatorTable& star, std::size_t p, std::size_t q) {
    const Zha& h = s.host();
    if (h.leq_index(eval_index(c, i, h, star, p, q), eval_index(c, j, h, star, p, q))) return true;
    found = make_model(s, p, q);
    return false;
  });
  return found;
}

std::optional<Model> separating_valuation_search(Connective c, int bound, std::optional<std::uint64_t> seed) {
  const Preorder want = theorem_preorder(c);
  std::optional<Model> found;
  for_each_case(bound, seed, [&](const Slashing& s, const OperatorTable& star, std::size_t p, std::size_t q) {
    const Zha& h = s.host();
    if (!(preorder_of_values(node_values(c, h, star, p, q), h) == want)) return true;
    found = make_model(s, p, q);
    return false;
  });
  return found;
}

// --- simplified cubes -------------------------------------------------------------

Preorder SimplifiedCube::closure() const {
  Preorder p;
  for (const auto& cls : classes)
    for (int x : cls)
      for (int y : cls) p.set(x, y);
  for (auto [lo, hi] : edges)
    for (int x : classes[static_cast<std::size_t>(lo)])
      for (int y : classes[static_cast<std::size_t>(hi)]) p.set(x, y);
  return p.closure();
}

SimplifiedCube simplified_cube(Connective c) {
  const Preorder t = theorem_preorder(c);
  SimplifiedCube out;
  out.classes = t.classes();
  const int k = static_cast<int>(out.classes.size());
  auto below = [&](int a, int b) {
    return a != b && t.leq(out.classes[static_cast<std::size_t>(a)].front(), out.classes[static_cast<std::size_t>(b)].front());
  };
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (!below(a, b)) continue;
      bool covering = true;
      for (int m = 0; m < k && covering; ++m)
        if (below(a, m) && below(m, b)) covering = false;
      if (covering) out.edges.emplace_back(a, b);
    }
  return out;
}

std::string cube_report(Connective c, int bound, std::optional<std::uint64_t> seed) {
  std::ostringstream out;
  const Preorder t = theorem_preorder(c);
  const SimplifiedCube sc = simplified_cube(c);
  auto class_name = [&](int k) {
    std::string s = "{";
    for (int n : sc.classes[static_cast<std::size_t>(k)]) s += (s.size() > 1 ? "," : "") + std::to_string(n);
    return s + "}";
  };
  out << "cube: " << to_string(c) << "\n";
  out << "classes:\n";
  for (int k = 0; k < static_cast<int>(sc.classes.size()); ++k) {
    out << "  " << class_name(k) << ":";
    for (int n : sc.classes[static_cast<std::size_t>(k)]) out << "  " << CubeNode(c, n).formula();
    out << "\n";
  }
  out << "hasse edges:\n";
  for (auto [lo, hi] : sc.edges) out << "  " << class_name(lo) << " <= " << class_name(hi) << "\n";
  out << "separating model:";
  if (auto m = separating_valuation_search(c, bound, seed))
    out << " " << m->describe() << "\n";
  else
    out << " none within bound " << bound << "\n";
  out << "countermodels:\n";
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (t.leq(i, j)) continue;
      out << "  " << i << " </= " << j << ": ";
      if (auto m = countermodel_search(c, i, j, bound, seed)) {
        out << m->describe() << "; " << i << " = " << node_eval(CubeNode(c, i), *m).to_string() << ", " << j
            << " = " << node_eval(CubeNode(c, j), *m).to_string() << "\n";
      } else {
        out << "none within bound " << bound << "\n";
      }
    }
  return out.str();
}

}  // namespace zhakit
