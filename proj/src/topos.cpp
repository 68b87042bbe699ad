#include "zhakit/topos.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace zhakit {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

}  // namespace

// --- FinitePoset ---------------------------------------------------------------

FinitePoset FinitePoset::from_dag(std::vector<std::string> names, const std::vector<std::pair<int, int>>& arrows) {
  const int n = static_cast<int>(names.size());
  if (n > TwoColumnGraph::max_points) throw RangeError("posets are limited to 64 points");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (names[at(i)] == names[at(j)]) throw DomainError("duplicate point name " + names[at(i)]);
  std::vector<std::vector<int>> out(at(n));
  std::vector<int> pending(at(n), 0);  // outgoing arrows not yet resolved
  for (const auto& [from, to] : arrows) {
    if (from < 0 || from >= n || to < 0 || to >= n) throw RangeError("arrow endpoint out of range");
    if (std::find(out[at(from)].begin(), out[at(from)].end(), to) != out[at(from)].end()) continue;
    out[at(from)].push_back(to);
    ++pending[at(from)];
  }
  std::vector<std::vector<int>> in(at(n));
  for (int p = 0; p < n; ++p)
    for (int q : out[at(p)]) in[at(q)].push_back(p);

  FinitePoset poset;
  poset.names_ = std::move(names);
  poset.down_.assign(at(n), PointSet{});
  // Sinks first; among the ready points always take the smallest index.
  std::set<int> ready;
  for (int p = 0; p < n; ++p)
    if (pending[at(p)] == 0) ready.insert(p);
  while (!ready.empty()) {
    const int p = *ready.begin();
    ready.erase(ready.begin());
    PointSet d = PointSet{}.with(p);
    for (int q : out[at(p)]) d = d | poset.down_[at(q)];
    poset.down_[at(p)] = d;
    poset.bottom_up_.push_back(p);
    for (int r : in[at(p)])
      if (--pending[at(r)] == 0) ready.insert(r);
  }
  if (static_cast<int>(poset.bottom_up_.size()) != n) throw DomainError("the arrows contain a cycle");

  poset.covered_by_.assign(at(n), {});
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q || !poset.reaches(p, q)) continue;
      bool direct = true;
      for (int r = 0; r < n && direct; ++r)
        if (r != p && r != q && poset.reaches(p, r) && poset.reaches(r, q)) direct = false;
      if (direct) {
        poset.covers_.emplace_back(p, q);
        poset.covered_by_[at(p)].push_back(q);
      }
    }
  }
  return poset;
}

FinitePoset FinitePoset::from_2cg(const TwoColumnGraph& graph) {
  std::vector<std::string> names;
  for (int i = 0; i < graph.point_count(); ++i) names.push_back(graph.point_at(i).token());
  return from_dag(std::move(names), graph.all_arrows());
}

FinitePoset poset_from_dag(std::vector<std::string> names, const std::vector<std::pair<int, int>>& arrows) {
  return FinitePoset::from_dag(std::move(names), arrows);
}

int FinitePoset::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw DomainError("no point named " + std::string(name));
}

PointSet FinitePoset::all_points() const {
  return PointSet(size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1);
}

bool FinitePoset::is_down_closed(PointSet s) const {
  for (std::size_t p = 0; p < size(); ++p)
    if (s.contains(static_cast<int>(p)) && !down_[p].subset_of(s)) return false;
  return true;
}

std::vector<PointSet> FinitePoset::down_closed_subsets(PointSet within) const {
  std::vector<int> order;
  for (int p : bottom_up_)
    if (within.contains(p)) order.push_back(p);
  std::vector<PointSet> out;
  std::function<void(std::size_t, PointSet)> grow = [&](std::size_t i, PointSet s) {
    if (i == order.size()) {
      out.push_back(s);
      return;
    }
    const int p = order[i];
    grow(i + 1, s);
    if (down_[at(p)].without(p).subset_of(s)) grow(i + 1, s.with(p));
  };
  grow(0, PointSet{});
  std::sort(out.begin(), out.end(), [](PointSet x, PointSet y) {
    return std::pair{x.size(), x.bits()} < std::pair{y.size(), y.bits()};
  });
  return out;
}

std::string FinitePoset::set_name(PointSet s) const {
  std::string out = "{";
  for (std::size_t p = 0; p < size(); ++p) {
    if (!s.contains(static_cast<int>(p))) continue;
    if (out.size() > 1) out += ",";
    out += names_[p];
  }
  return out + "}";
}

// --- Presheaf ------------------------------------------------------------------

Presheaf::Presheaf(FinitePoset poset, std::vector<std::vector<std::string>> fibers, const EdgeMaps& edge_maps)
    : poset_(std::move(poset)), fibers_(std::move(fibers)) {
  const std::size_t n = poset_.size();
  if (fibers_.size() != n) throw DomainError("presheaf has " + std::to_string(fibers_.size()) +
                                             " fibers for " + std::to_string(n) + " points");
  for (const auto& [edge, map] : edge_maps) {
    const auto& covers = poset_.covers();
    if (std::find(covers.begin(), covers.end(), edge) == covers.end())
      throw DomainError("map given on a non-covering edge");
  }
  for (const auto& [p, q] : poset_.covers()) {
    auto it = edge_maps.find({p, q});
    std::vector<int> map;
    if (it != edge_maps.end()) {
      map = it->second;
    } else if (!fibers_[at(p)].empty()) {
      throw DomainError("missing map " + poset_.name(p) + " -> " + poset_.name(q));
    }
    if (map.size() != fibers_[at(p)].size())
      throw DomainError("map " + poset_.name(p) + " -> " + poset_.name(q) + " has the wrong length");
    for (int v : map)
      if (v < 0 || at(v) >= fibers_[at(q)].size())
        throw DomainError("map " + poset_.name(p) + " -> " + poset_.name(q) + " leaves the target fiber");
    edge_maps_.emplace(std::pair{p, q}, std::move(map));
  }

  composite_.assign(n, std::vector<std::vector<int>>(n));
  for (int p : poset_.bottom_up()) {
    auto& row = composite_[at(p)];
    row[at(p)].resize(fibers_[at(p)].size());
    std::iota(row[at(p)].begin(), row[at(p)].end(), 0);
    for (int q = 0; q < static_cast<int>(n); ++q) {
      if (q == p || !poset_.reaches(p, q)) continue;
      bool first = true;
      for (int c : poset_.covered_by(p)) {
        if (!poset_.reaches(c, q)) continue;
        const auto& step = edge_maps_.at({p, c});
        std::vector<int> via(step.size());
        for (std::size_t k = 0; k < step.size(); ++k) via[k] = composite_[at(c)][at(q)][at(step[k])];
        if (first) {
          row[at(q)] = std::move(via);
          first = false;
        } else if (row[at(q)] != via) {
          throw DomainError("maps from " + poset_.name(p) + " to " + poset_.name(q) + " do not commute");
        }
      }
    }
  }
}

Presheaf Presheaf::terminal(const FinitePoset& poset) {
  std::vector<std::vector<std::string>> fibers(poset.size(), {"*"});
  EdgeMaps maps;
  for (const auto& e : poset.covers()) maps.emplace(e, std::vector<int>{0});
  return Presheaf(poset, std::move(fibers), maps);
}

Presheaf Presheaf::subterminal(const FinitePoset& poset, PointSet open) {
  if (!open.subset_of(poset.all_points()) || !poset.is_down_closed(open))
    throw DomainError(poset.set_name(open) + " is not down-closed");
  std::vector<std::vector<std::string>> fibers(poset.size());
  EdgeMaps maps;
  for (std::size_t p = 0; p < poset.size(); ++p)
    if (open.contains(static_cast<int>(p))) fibers[p] = {"*"};
  for (const auto& [p, q] : poset.covers())
    if (open.contains(p)) maps.emplace(std::pair{p, q}, std::vector<int>{0});
  return Presheaf(poset, std::move(fibers), maps);
}

int Presheaf::element_index(int p, std::string_view name) const {
  const auto& f = fiber(p);
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f[k] == name) return static_cast<int>(k);
  throw DomainError("no element " + std::string(name) + " at " + poset_.name(p));
}

int Presheaf::restrict(int p, int q, int k) const {
  if (!poset_.reaches(p, q)) throw DomainError(poset_.name(q) + " is not below " + poset_.name(p));
  return composite_[at(p)][at(q)].at(at(k));
}

const std::vector<int>& Presheaf::edge_map(int p, int q) const {
  auto it = edge_maps_.find({p, q});
  if (it == edge_maps_.end()) throw DomainError("not a covering edge");
  return it->second;
}

bool Presheaf::operator==(const Presheaf& other) const {
  return poset_ == other.poset_ && fibers_ == other.fibers_ && edge_maps_ == other.edge_maps_;
}

// --- NatTrans ------------------------------------------------------------------

NatTrans::NatTrans(Presheaf source, Presheaf target, std::vector<std::vector<int>> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!(source_.poset() == target_.poset())) throw ShapeError("source and target live on different posets");
  if (components_.size() != source_.poset().size()) throw ShapeError("wrong number of components");
  for (std::size_t p = 0; p < components_.size(); ++p) {
    if (components_[p].size() != source_.fiber_size(static_cast<int>(p)))
      throw ShapeError("component at " + source_.poset().name(static_cast<int>(p)) + " has the wrong length");
    for (int v : components_[p])
      if (v < 0 || at(v) >= target_.fiber_size(static_cast<int>(p)))
        throw ShapeError("component at " + source_.poset().name(static_cast<int>(p)) + " leaves the target");
  }
}

std::optional<NaturalityFailure> NatTrans::naturality_failure() const {
  for (const auto& [p, q] : source_.poset().covers())
    for (int k = 0; k < static_cast<int>(source_.fiber_size(p)); ++k)
      if (target_.restrict(p, q, apply(p, k)) != apply(q, source_.restrict(p, q, k)))
        return NaturalityFailure{p, q, k};
  return std::nullopt;
}

bool NatTrans::is_componentwise_bijective() const {
  for (std::size_t p = 0; p < components_.size(); ++p) {
    if (components_[p].size() != target_.fiber_size(static_cast<int>(p))) return false;
    std::vector<bool> hit(components_[p].size(), false);
    for (int v : components_[p]) {
      if (hit[at(v)]) return false;
      hit[at(v)] = true;
    }
  }
  return true;
}

NatTrans NatTrans::inverse() const {
  if (!is_componentwise_bijective()) throw ContractError("not componentwise bijective");
  std::vector<std::vector<int>> inv(components_.size());
  for (std::size_t p = 0; p < components_.size(); ++p) {
    inv[p].resize(components_[p].size());
    for (std::size_t k = 0; k < components_[p].size(); ++k) inv[p][at(components_[p][k])] = static_cast<int>(k);
  }
  return NatTrans(target_, source_, std::move(inv));
}

NatTrans NatTrans::then(const NatTrans& after) const {
  if (!(target_ == after.source_)) throw ShapeError("composite of mismatched transformations");
  std::vector<std::vector<int>> comp(components_.size());
  for (std::size_t p = 0; p < components_.size(); ++p)
    for (int v : components_[p]) comp[p].push_back(after.apply(static_cast<int>(p), v));
  return NatTrans(source_, after.target_, std::move(comp));
}

bool NatTrans::operator==(const NatTrans& other) const {
  return components_ == other.components_ && source_ == other.source_ && target_ == other.target_;
}

namespace {

NatTrans identity_on(const Presheaf& f) {
  std::vector<std::vector<int>> comp(f.poset().size());
  for (std::size_t p = 0; p < comp.size(); ++p) {
    comp[p].resize(f.fiber_size(static_cast<int>(p)));
    std::iota(comp[p].begin(), comp[p].end(), 0);
  }
  return NatTrans(f, f, std::move(comp));
}

NatTrans to_terminal(const Presheaf& f) {
  std::vector<std::vector<int>> comp(f.poset().size());
  for (std::size_t p = 0; p < comp.size(); ++p) comp[p].assign(f.fiber_size(static_cast<int>(p)), 0);
  return NatTrans(f, Presheaf::terminal(f.poset()), std::move(comp));
}

}  // namespace

bool is_natural_iso(const NatTrans& t) {
  if (!t.is_natural() || !t.is_componentwise_bijective()) return false;
  const NatTrans inv = t.inverse();
  return inv.is_natural() && t.then(inv) == identity_on(t.source()) && inv.then(t) == identity_on(t.target());
}

// --- Subfunctor ----------------------------------------------------------------

Subfunctor::Subfunctor(Presheaf host, std::vector<std::vector<bool>> members)
    : host_(std::move(host)), members_(std::move(members)) {
  const FinitePoset& poset = host_.poset();
  if (members_.size() != poset.size()) throw ShapeError("wrong number of member sets");
  for (std::size_t p = 0; p < members_.size(); ++p)
    if (members_[p].size() != host_.fiber_size(static_cast<int>(p))) throw ShapeError("member set of wrong size");
  for (const auto& [p, q] : poset.covers())
    for (int k = 0; k < static_cast<int>(host_.fiber_size(p)); ++k)
      if (contains(p, k) && !contains(q, host_.restrict(p, q, k)))
        throw ContractError("not closed under " + poset.name(p) + " -> " + poset.name(q) + ": " +
                            host_.fiber(p)[at(k)] + " leaves the subset");
}

Subfunctor Subfunctor::whole(const Presheaf& host) {
  std::vector<std::vector<bool>> m;
  for (std::size_t p = 0; p < host.poset().size(); ++p) m.emplace_back(host.fiber_size(static_cast<int>(p)), true);
  return Subfunctor(host, std::move(m));
}

Subfunctor Subfunctor::empty(const Presheaf& host) {
  std::vector<std::vector<bool>> m;
  for (std::size_t p = 0; p < host.poset().size(); ++p) m.emplace_back(host.fiber_size(static_cast<int>(p)), false);
  return Subfunctor(host, std::move(m));
}

std::vector<Subfunctor> Subfunctor::all(const Presheaf& host) {
  const FinitePoset& poset = host.poset();
  const auto& order = poset.bottom_up();
  std::vector<std::vector<bool>> m;
  for (std::size_t p = 0; p < poset.size(); ++p) m.emplace_back(host.fiber_size(static_cast<int>(p)), false);
  std::vector<Subfunctor> out;
  std::function<void(std::size_t)> grow = [&](std::size_t i) {
    if (i == order.size()) {
      out.emplace_back(host, m);
      return;
    }
    const int p = order[i];
    std::vector<int> allowed;
    for (int k = 0; k < static_cast<int>(host.fiber_size(p)); ++k) {
      bool ok = true;
      for (int q : poset.covered_by(p)) ok = ok && m[at(q)][at(host.restrict(p, q, k))];
      if (ok) allowed.push_back(k);
    }
    const std::size_t choices = std::size_t{1} << allowed.size();
    for (std::size_t mask = 0; mask < choices; ++mask) {
      for (std::size_t j = 0; j < allowed.size(); ++j) m[at(p)][at(allowed[j])] = (mask >> j) & 1U;
      grow(i + 1);
    }
    for (int k : allowed) m[at(p)][at(k)] = false;
  };
  grow(0);
  return out;
}

bool Subfunctor::subset_of(const Subfunctor& other) const {
  for (std::size_t p = 0; p < members_.size(); ++p)
    for (std::size_t k = 0; k < members_[p].size(); ++k)
      if (members_[p][k] && !other.members_[p][k]) return false;
  return true;
}

Presheaf Subfunctor::as_presheaf() const {
  const FinitePoset& poset = host_.poset();
  std::vector<std::vector<std::string>> fibers(poset.size());
  std::vector<std::vector<int>> position(poset.size());
  for (std::size_t p = 0; p < poset.size(); ++p) {
    position[p].assign(members_[p].size(), -1);
    for (std::size_t k = 0; k < members_[p].size(); ++k) {
      if (!members_[p][k]) continue;
      position[p][k] = static_cast<int>(fibers[p].size());
      fibers[p].push_back(host_.fiber(static_cast<int>(p))[k]);
    }
  }
  Presheaf::EdgeMaps maps;
  for (const auto& [p, q] : poset.covers()) {
    std::vector<int> m;
    for (std::size_t k = 0; k < members_[at(p)].size(); ++k)
      if (members_[at(p)][k]) m.push_back(position[at(q)][at(host_.restrict(p, q, static_cast<int>(k)))]);
    maps.emplace(std::pair{p, q}, std::move(m));
  }
  return Presheaf(poset, std::move(fibers), maps);
}

NatTrans Subfunctor::inclusion() const {
  std::vector<std::vector<int>> comp(members_.size());
  for (std::size_t p = 0; p < members_.size(); ++p)
    for (std::size_t k = 0; k < members_[p].size(); ++k)
      if (members_[p][k]) comp[p].push_back(static_cast<int>(k));
  return NatTrans(as_presheaf(), host_, std::move(comp));
}

PointSet Subfunctor::support() const {
  PointSet s;
  for (std::size_t p = 0; p < members_.size(); ++p)
    if (std::find(members_[p].begin(), members_[p].end(), true) != members_[p].end()) s = s.with(static_cast<int>(p));
  return s;
}

std::vector<Subfunctor> sub1_lattice(const FinitePoset& poset) { return Subfunctor::all(Presheaf::terminal(poset)); }

// --- Ω, ⊤, χ ------------------------------------------------------------------

namespace {

std::vector<std::vector<PointSet>> omega_values(const FinitePoset& poset) {
  std::vector<std::vector<PointSet>> v;
  for (std::size_t p = 0; p < poset.size(); ++p) v.push_back(poset.down_closed_subsets(poset.down_set(static_cast<int>(p))));
  return v;
}

int find_value(const std::vector<PointSet>& values, PointSet s) {
  const auto it = std::find(values.begin(), values.end(), s);
  return it == values.end() ? -1 : static_cast<int>(it - values.begin());
}

Presheaf omega_presheaf(const FinitePoset& poset, const std::vector<std::vector<PointSet>>& values) {
  std::vector<std::vector<std::string>> fibers(poset.size());
  for (std::size_t p = 0; p < poset.size(); ++p)
    for (PointSet s : values[p]) fibers[p].push_back(poset.set_name(s));
  Presheaf::EdgeMaps maps;
  for (const auto& [p, q] : poset.covers()) {
    std::vector<int> m;
    for (PointSet s : values[at(p)]) m.push_back(find_value(values[at(q)], s & poset.down_set(q)));
    maps.emplace(std::pair{p, q}, std::move(m));
  }
  return Presheaf(poset, std::move(fibers), maps);
}

}  // namespace

Omega::Omega(const FinitePoset& poset) : values_(omega_values(poset)), presheaf_(omega_presheaf(poset, values_)) {}

int Omega::index_of(int p, PointSet s) const {
  const int k = find_value(values_.at(at(p)), s);
  if (k < 0) throw DomainError(poset().set_name(s) + " is not a truth value at " + poset().name(p));
  return k;
}

NatTrans true_nat(const Omega& omega) {
  const FinitePoset& poset = omega.poset();
  std::vector<std::vector<int>> comp;
  for (std::size_t p = 0; p < poset.size(); ++p)
    comp.push_back({omega.index_of(static_cast<int>(p), poset.down_set(static_cast<int>(p)))});
  return NatTrans(Presheaf::terminal(poset), omega.presheaf(), std::move(comp));
}

NatTrans chi(const Subfunctor& sub, const Omega& omega) {
  const Presheaf& c = sub.host();
  const FinitePoset& poset = c.poset();
  if (!(poset == omega.poset())) throw ShapeError("subobject and classifier live on different posets");
  std::vector<std::vector<int>> comp(poset.size());
  for (int p = 0; p < static_cast<int>(poset.size()); ++p) {
    for (int k = 0; k < static_cast<int>(c.fiber_size(p)); ++k) {
      PointSet s;
      for (int r = 0; r < static_cast<int>(poset.size()); ++r)
        if (poset.reaches(p, r) && sub.contains(r, c.restrict(p, r, k))) s = s.with(r);
      comp[at(p)].push_back(omega.index_of(p, s));
    }
  }
  return NatTrans(c, omega.presheaf(), std::move(comp));
}

Subfunctor pullback_of_true(const NatTrans& to_omega, const Omega& omega) {
  if (!(to_omega.target() == omega.presheaf())) throw ShapeError("map does not land in Ω");
  const Presheaf& c = to_omega.source();
  std::vector<std::vector<bool>> m(c.poset().size());
  for (int p = 0; p < static_cast<int>(m.size()); ++p)
    for (int k = 0; k < static_cast<int>(c.fiber_size(p)); ++k)
      m[at(p)].push_back(omega.value(p, to_omega.apply(p, k)) == c.poset().down_set(p));
  return Subfunctor(c, std::move(m));
}

std::vector<NatTrans> all_nat_trans(const Presheaf& source, const Presheaf& target) {
  const FinitePoset& poset = source.poset();
  if (!(poset == target.poset())) throw ShapeError("presheaves live on different posets");
  // Slots in bottom-up order; each slot's image only depends on slots below it.
  std::vector<std::pair<int, int>> slots;
  for (int p : poset.bottom_up())
    for (int k = 0; k < static_cast<int>(source.fiber_size(p)); ++k) slots.emplace_back(p, k);
  std::vector<std::vector<int>> comp(poset.size());
  for (std::size_t p = 0; p < poset.size(); ++p) comp[p].assign(source.fiber_size(static_cast<int>(p)), -1);
  std::vector<NatTrans> out;
  std::function<void(std::size_t)> grow = [&](std::size_t i) {
    if (i == slots.size()) {
      out.emplace_back(source, target, comp);
      return;
    }
    const auto [p, k] = slots[i];
    for (int v = 0; v < static_cast<int>(target.fiber_size(p)); ++v) {
      bool ok = true;
      for (int q : poset.covered_by(p))
        ok = ok && target.restrict(p, q, v) == comp[at(q)][at(source.restrict(p, q, k))];
      if (!ok) continue;
      comp[at(p)][at(k)] = v;
      grow(i + 1);
    }
    comp[at(p)][at(k)] = -1;
  };
  grow(0);
  return out;
}

ClassifierReport classifier_bijection_check(const Presheaf& c) {
  const Omega om(c.poset());
  const auto subs = Subfunctor::all(c);
  const auto homs = all_nat_trans(c, om.presheaf());
  ClassifierReport r;
  r.sub_count = subs.size();
  r.hom_count = homs.size();
  std::set<std::vector<std::vector<int>>> images;
  for (const auto& b : subs) {
    const NatTrans x = chi(b, om);
    r.chi_natural = r.chi_natural && x.is_natural();
    r.pullback_recovers_sub = r.pullback_recovers_sub && pullback_of_true(x, om) == b;
    r.chi_injective = images.insert(x.components()).second && r.chi_injective;
  }
  for (const auto& m : homs) {
    r.chi_surjective = r.chi_surjective && images.contains(m.components());
    r.chi_of_pullback_recovers_map = r.chi_of_pullback_recovers_map && chi(pullback_of_true(m, om), om) == m;
  }
  return r;
}

// --- Truth operators and local operators ----------------------------------------

TruthOperator::TruthOperator(const FinitePoset& poset, std::map<PointSet, PointSet> image) : image_(std::move(image)) {
  const auto opens = poset.down_closed_subsets(poset.all_points());
  if (image_.size() != opens.size()) throw DomainError("operator must be given on exactly the open sets");
  for (PointSet u : opens) {
    auto it = image_.find(u);
    if (it == image_.end()) throw DomainError("no image for " + poset.set_name(u));
    if (!it->second.subset_of(poset.all_points()) || !poset.is_down_closed(it->second))
      throw DomainError("image of " + poset.set_name(u) + " is not open");
  }
}

TruthOperator TruthOperator::from_table(const TwoColumnGraph& graph, const OperatorTable& table) {
  if (!(table.host() == zha_from_2cg(graph))) throw ShapeError("table is not on the graph's ZHA");
  std::map<PointSet, PointSet> image;
  for (const Element& x : table.host().elements()) image.emplace(pile(graph, x), pile(graph, table(x)));
  return TruthOperator(FinitePoset::from_2cg(graph), std::move(image));
}

PointSet TruthOperator::operator()(PointSet open) const {
  auto it = image_.find(open);
  if (it == image_.end()) throw DomainError("not a truth value");
  return it->second;
}

OperatorTable TruthOperator::to_table(const TwoColumnGraph& graph) const {
  const Zha host = zha_from_2cg(graph);
  std::map<PointSet, Element> element_of;
  for (const Element& x : host.elements()) element_of.emplace(pile(graph, x), x);
  return OperatorTable::tabulate(host, [&](Element x) {
    auto it = element_of.find((*this)(pile(graph, x)));
    if (it == element_of.end()) throw DomainError("operator leaves the piles");
    return it->second;
  });
}

std::optional<std::string> TruthOperator::nucleus_violation() const {
  auto name = [](PointSet s) { return std::to_string(s.bits()); };
  for (const auto& [u, ju] : image_) {
    if (!u.subset_of(ju)) return "J1 fails at " + name(u);
    if ((*this)(ju) != ju) return "J2 fails at " + name(u);
  }
  for (const auto& [u, ju] : image_)
    for (const auto& [v, jv] : image_)
      if ((*this)(u & v) != (ju & jv)) return "J3 fails at " + name(u) + ", " + name(v);
  return std::nullopt;
}

NatTrans local_operator(const Omega& omega, const TruthOperator& j_op) {
  if (auto bad = j_op.nucleus_violation()) throw ContractError("not a J-operator: " + *bad);
  const FinitePoset& poset = omega.poset();
  std::vector<std::vector<int>> comp(poset.size());
  for (int p = 0; p < static_cast<int>(poset.size()); ++p)
    for (PointSet r : omega.values(p)) comp[at(p)].push_back(omega.index_of(p, j_op(r) & poset.down_set(p)));
  return NatTrans(omega.presheaf(), omega.presheaf(), std::move(comp));
}

LocalOperatorLaws check_local_operator_laws(const Omega& omega, const NatTrans& j) {
  LocalOperatorLaws laws;
  const FinitePoset& poset = omega.poset();
  laws.natural = j.is_natural();
  for (int p = 0; p < static_cast<int>(poset.size()); ++p) {
    const auto& vals = omega.values(p);
    const int top = omega.index_of(p, poset.down_set(p));
    laws.preserves_true = laws.preserves_true && j.apply(p, top) == top;
    for (int k = 0; k < static_cast<int>(vals.size()); ++k) {
      laws.idempotent = laws.idempotent && j.apply(p, j.apply(p, k)) == j.apply(p, k);
      for (int m = 0; m < static_cast<int>(vals.size()); ++m) {
        const int meet = omega.index_of(p, vals[at(k)] & vals[at(m)]);
        const PointSet lhs = omega.value(p, j.apply(p, meet));
        const PointSet rhs = omega.value(p, j.apply(p, k)) & omega.value(p, j.apply(p, m));
        laws.preserves_meet = laws.preserves_meet && lhs == rhs;
      }
    }
  }
  return laws;
}

Subfunctor closure(const Subfunctor& sub, const NatTrans& j, const Omega& omega) {
  const NatTrans x = chi(sub, omega);
  const Presheaf& c = sub.host();
  std::vector<std::vector<bool>> m(c.poset().size());
  for (int p = 0; p < static_cast<int>(m.size()); ++p)
    for (int k = 0; k < static_cast<int>(c.fiber_size(p)); ++k)
      m[at(p)].push_back(omega.value(p, j.apply(p, x.apply(p, k))) == c.poset().down_set(p));
  return Subfunctor(c, std::move(m));
}

Subfunctor closure_by_pullback_enumeration(const Subfunctor& sub, const NatTrans& j, const Omega& omega) {
  const NatTrans jx = chi(sub, omega).then(j);
  const NatTrans top = true_nat(omega);
  const Presheaf& c = sub.host();
  std::optional<Subfunctor> best;
  std::size_t best_count = 0;
  std::vector<Subfunctor> factoring;
  for (const Subfunctor& t : Subfunctor::all(c)) {
    // j ∘ χ_B ∘ incl_T must equal ⊤ ∘ (T -> 1).
    const NatTrans lhs = t.inclusion().then(jx);
    const NatTrans rhs = to_terminal(t.as_presheaf()).then(top);
    if (!(lhs == rhs)) continue;
    std::size_t count = 0;
    for (const auto& row : t.members()) count += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
    if (!best || count > best_count) {
      best = t;
      best_count = count;
    }
    factoring.push_back(t);
  }
  for (const auto& t : factoring)
    if (!t.subset_of(*best)) throw ContractError("no largest subobject factors through ⊤");
  return *best;
}

NaturalityReport naturality_suite(const Omega& omega, const TruthOperator& j_op, const std::vector<Presheaf>& battery) {
  const NatTrans j = local_operator(omega, j_op);
  const NatTrans top = true_nat(omega);
  const std::size_t covers = omega.poset().covers().size();
  NaturalityReport r;
  r.truth = top.is_natural();
  r.local_operator = j.is_natural();
  r.squares_checked += 2 * covers;
  for (const Presheaf& c : battery) {
    if (!(c.poset() == omega.poset())) throw ShapeError("battery presheaf on a different poset");
    ++r.presheaves;
    for (const Subfunctor& b : Subfunctor::all(c)) {
      ++r.subobjects;
      const NatTrans incl = b.inclusion();
      const NatTrans bang = to_terminal(b.as_presheaf());
      const NatTrans x = chi(b, omega);
      r.to_terminal = r.to_terminal && bang.is_natural();
      r.inclusion = r.inclusion && incl.is_natural();
      // χ_B natural, and the pullback square χ_B ∘ incl = ⊤ ∘ ! commutes.
      r.characteristic = r.characteristic && x.is_natural() && incl.then(x) == bang.then(top);
      r.local_operator = r.local_operator && x.then(j).is_natural();
      r.squares_checked += 4 * covers;
    }
  }
  return r;
}

TruthOperator restrict_to_sub1(const Omega& omega, const NatTrans& j) {
  const FinitePoset& poset = omega.poset();
  const Presheaf one = Presheaf::terminal(poset);
  std::map<PointSet, PointSet> image;
  for (PointSet r : poset.down_closed_subsets(poset.all_points())) {
    std::vector<std::vector<bool>> m(poset.size());
    for (int p = 0; p < static_cast<int>(poset.size()); ++p) m[at(p)] = {r.contains(p)};
    const Subfunctor sub(one, std::move(m));
    image.emplace(r, pullback_of_true(chi(sub, omega).then(j), omega).support());
  }
  return TruthOperator(poset, std::move(image));
}

// --- Kan extension -------------------------------------------------------------

SubposetInclusion::SubposetInclusion(const FinitePoset& whole, PointSet points)
    : whole_(whole), sub_(FinitePoset::from_dag({}, {})), image_(points) {
  if (!points.subset_of(whole.all_points())) throw RangeError("points outside the poset");
  std::vector<std::string> names;
  std::vector<int> local(whole.size(), -1);
  for (int p = 0; p < static_cast<int>(whole.size()); ++p) {
    if (!points.contains(p)) continue;
    local[at(p)] = static_cast<int>(embedding_.size());
    embedding_.push_back(p);
    names.push_back(whole.name(p));
  }
  std::vector<std::pair<int, int>> arrows;
  for (int p : embedding_)
    for (int q : embedding_)
      if (p != q && whole.reaches(p, q)) arrows.emplace_back(local[at(p)], local[at(q)]);
  sub_ = FinitePoset::from_dag(std::move(names), arrows);
}

SubposetInclusion::SubposetInclusion(const FinitePoset& whole, const FinitePoset& sub, std::vector<int> embedding)
    : whole_(whole), sub_(sub), embedding_(std::move(embedding)) {
  if (embedding_.size() != sub_.size()) throw ShapeError("embedding has the wrong length");
  for (std::size_t a = 0; a < embedding_.size(); ++a) {
    const int p = embedding_[a];
    if (p < 0 || at(p) >= whole_.size()) throw RangeError("embedding leaves the poset");
    if (image_.contains(p)) throw ContractError("embedding is not injective");
    image_ = image_.with(p);
  }
  for (int a = 0; a < static_cast<int>(sub_.size()); ++a)
    for (int b = 0; b < static_cast<int>(sub_.size()); ++b)
      if (sub_.reaches(a, b) && !whole_.reaches(embed(a), embed(b))) throw ContractError("embedding is not monotone");
}

bool SubposetInclusion::is_full() const {
  for (int a = 0; a < static_cast<int>(sub_.size()); ++a)
    for (int b = 0; b < static_cast<int>(sub_.size()); ++b)
      if (whole_.reaches(embed(a), embed(b)) != sub_.reaches(a, b)) return false;
  return true;
}

Presheaf restrict_along(const SubposetInclusion& f, const Presheaf& c) {
  if (!(c.poset() == f.whole())) throw ShapeError("presheaf is not on the inclusion's codomain");
  const FinitePoset& sub = f.sub();
  std::vector<std::vector<std::string>> fibers;
  for (int a = 0; a < static_cast<int>(sub.size()); ++a) fibers.push_back(c.fiber(f.embed(a)));
  Presheaf::EdgeMaps maps;
  for (const auto& [a, b] : sub.covers()) {
    std::vector<int> m;
    for (int k = 0; k < static_cast<int>(c.fiber_size(f.embed(a))); ++k) m.push_back(c.restrict(f.embed(a), f.embed(b), k));
    maps.emplace(std::pair{a, b}, std::move(m));
  }
  return Presheaf(sub, std::move(fibers), maps);
}

namespace {

// Sub points lying below b, ascending.
std::vector<int> index_points(const SubposetInclusion& f, int b) {
  std::vector<int> out;
  for (int a = 0; a < static_cast<int>(f.sub().size()); ++a)
    if (f.whole().reaches(b, f.embed(a))) out.push_back(a);
  return out;
}

struct KanData {
  std::vector<std::vector<int>> index;                  // per b
  std::vector<std::vector<std::vector<int>>> families;  // per b, sorted
  std::vector<std::map<std::vector<int>, int>> lookup;  // per b
};

KanData kan_data(const SubposetInclusion& f, const Presheaf& d) {
  if (!(d.poset() == f.sub())) throw ShapeError("presheaf is not on the inclusion's domain");
  const FinitePoset& sub = f.sub();
  KanData k;
  for (int b = 0; b < static_cast<int>(f.whole().size()); ++b) {
    const std::vector<int> idx = index_points(f, b);
    std::vector<int> position(sub.size(), -1);
    for (std::size_t i = 0; i < idx.size(); ++i) position[at(idx[i])] = static_cast<int>(i);
    std::vector<int> order;
    for (int a : sub.bottom_up())
      if (position[at(a)] >= 0) order.push_back(a);
    std::vector<int> family(idx.size(), -1);
    std::vector<std::vector<int>> found;
    std::function<void(std::size_t)> grow = [&](std::size_t i) {
      if (i == order.size()) {
        found.push_back(family);
        return;
      }
      const int a = order[i];
      for (int x = 0; x < static_cast<int>(d.fiber_size(a)); ++x) {
        bool ok = true;
        for (int below : sub.covered_by(a)) ok = ok && d.restrict(a, below, x) == family[at(position[at(below)])];
        if (!ok) continue;
        family[at(position[at(a)])] = x;
        grow(i + 1);
      }
      family[at(position[at(a)])] = -1;
    };
    grow(0);
    std::sort(found.begin(), found.end());
    std::map<std::vector<int>, int> lookup;
    for (std::size_t i = 0; i < found.size(); ++i) lookup.emplace(found[i], static_cast<int>(i));
    k.index.push_back(idx);
    k.families.push_back(std::move(found));
    k.lookup.push_back(std::move(lookup));
  }
  return k;
}

std::vector<int> restrict_family(const KanData& k, int b, int c, const std::vector<int>& family) {
  std::vector<int> out;
  const auto& from = k.index[at(b)];
  for (int a : k.index[at(c)]) out.push_back(family[at(std::find(from.begin(), from.end(), a) - from.begin())]);
  return out;
}

Presheaf kan_presheaf(const SubposetInclusion& f, const Presheaf& d, const KanData& k) {
  const FinitePoset& whole = f.whole();
  std::vector<std::vector<std::string>> fibers(whole.size());
  for (std::size_t b = 0; b < whole.size(); ++b) {
    for (const auto& family : k.families[b]) {
      // Kept free of the separators used by the .psh format.
      std::string name = "[";
      for (std::size_t i = 0; i < family.size(); ++i) {
        const int a = k.index[b][i];
        if (i) name += ";";
        name += f.sub().name(a) + "=" + d.fiber(a)[at(family[i])];
      }
      fibers[b].push_back(name + "]");
    }
  }
  Presheaf::EdgeMaps maps;
  for (const auto& [b, c] : whole.covers()) {
    std::vector<int> m;
    for (const auto& family : k.families[at(b)]) m.push_back(k.lookup[at(c)].at(restrict_family(k, b, c, family)));
    maps.emplace(std::pair{b, c}, std::move(m));
  }
  return Presheaf(whole, std::move(fibers), maps);
}

}  // namespace

RightKan right_kan(const SubposetInclusion& f, const Presheaf& d) {
  const KanData k = kan_data(f, d);
  Presheaf ext = kan_presheaf(f, d, k);
  const Presheaf pulled = restrict_along(f, ext);
  std::vector<std::vector<int>> comp(f.sub().size());
  for (int a = 0; a < static_cast<int>(f.sub().size()); ++a) {
    const int b = f.embed(a);
    const auto& idx = k.index[at(b)];
    const auto pos = at(std::find(idx.begin(), idx.end(), a) - idx.begin());
    for (const auto& family : k.families[at(b)]) comp[at(a)].push_back(family[pos]);
  }
  NatTrans counit(pulled, d, std::move(comp));
  return RightKan{std::move(ext), std::move(counit)};
}

std::vector<std::vector<std::vector<int>>> right_kan_families(const SubposetInclusion& f, const Presheaf& d) {
  return kan_data(f, d).families;
}

std::vector<std::vector<std::vector<int>>> right_kan_families_brute_force(const SubposetInclusion& f,
                                                                          const Presheaf& d) {
  if (!(d.poset() == f.sub())) throw ShapeError("presheaf is not on the inclusion's domain");
  const FinitePoset& sub = f.sub();
  std::vector<std::vector<std::vector<int>>> out;
  for (int b = 0; b < static_cast<int>(f.whole().size()); ++b) {
    const std::vector<int> idx = index_points(f, b);
    std::vector<std::vector<int>> found;
    bool inhabited = true;
    for (int a : idx) inhabited = inhabited && d.fiber_size(a) > 0;
    std::vector<int> family(idx.size(), 0);
    while (inhabited) {
      bool compatible = true;
      for (std::size_t i = 0; i < idx.size() && compatible; ++i)
        for (std::size_t j = 0; j < idx.size() && compatible; ++j)
          if (i != j && sub.reaches(idx[i], idx[j]))
            compatible = d.restrict(idx[i], idx[j], family[i]) == family[j];
      if (compatible) found.push_back(family);
      std::size_t pos = idx.size();
      while (pos > 0) {
        --pos;
        if (++family[pos] < static_cast<int>(d.fiber_size(idx[pos]))) break;
        family[pos] = 0;
        if (pos == 0) inhabited = false;
      }
      if (idx.empty()) inhabited = false;
    }
    std::sort(found.begin(), found.end());
    out.push_back(std::move(found));
  }
  return out;
}

NatTrans kan_unit(const SubposetInclusion& f, const Presheaf& c) {
  const Presheaf d = restrict_along(f, c);
  const KanData k = kan_data(f, d);
  Presheaf ext = kan_presheaf(f, d, k);
  std::vector<std::vector<int>> comp(f.whole().size());
  for (int b = 0; b < static_cast<int>(f.whole().size()); ++b) {
    for (int x = 0; x < static_cast<int>(c.fiber_size(b)); ++x) {
      std::vector<int> family;
      for (int a : k.index[at(b)]) family.push_back(c.restrict(b, f.embed(a), x));
      comp[at(b)].push_back(k.lookup[at(b)].at(family));
    }
  }
  return NatTrans(c, std::move(ext), std::move(comp));
}

Sheafification kan_sheafify(const SubposetInclusion& f, PointSet questions, const Presheaf& c) {
  if (!(c.poset() == f.whole())) throw ShapeError("presheaf is not on the inclusion's codomain");
  if (!f.is_full()) throw ContractError("the inclusion is not full");
  if (f.image() != f.whole().all_points() - questions)
    throw ContractError("the inclusion does not hit exactly the points without question marks");
  Presheaf restricted = restrict_along(f, c);
  RightKan kan = right_kan(f, restricted);
  NatTrans unit = kan_unit(f, c);
  return Sheafification{f, std::move(restricted), std::move(kan), std::move(unit)};
}

Sheafification kan_sheafify(const FinitePoset& poset, PointSet questions, const Presheaf& c) {
  return kan_sheafify(SubposetInclusion(poset, poset.all_points() - questions), questions, c);
}

}  // namespace zhakit
