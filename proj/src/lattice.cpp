#include "zhakit/lattice.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <set>

namespace zhakit {

namespace {

std::string digit_text(int d) {
  return d <= 9 ? std::to_string(d) : "[" + std::to_string(d) + "]";
}

// Reads one digit, either a bare 0-9 or a bracketed number.
bool read_digit(std::string_view text, std::size_t& pos, int& out) {
  if (pos >= text.size()) return false;
  if (text[pos] >= '0' && text[pos] <= '9') {
    out = text[pos] - '0';
    ++pos;
    return true;
  }
  if (text[pos] != '[') return false;
  const std::size_t close = text.find(']', pos);
  if (close == std::string_view::npos || close == pos + 1) return false;
  const auto digits = text.substr(pos + 1, close - pos - 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return false;
  pos = close + 1;
  return true;
}

}  // namespace

std::string Point::token() const {
  return (column == Column::left ? "L" : "R") + std::to_string(index);
}

std::string Point::glyph() const {
  return column == Column::left ? std::to_string(index) + "_" : "." + std::to_string(index);
}

Point parse_point(std::string_view token) {
  if (token.size() < 2 || (token[0] != 'L' && token[0] != 'R'))
    throw ParseError("bad point token '" + std::string(token) + "'");
  int index = 0;
  auto rest = token.substr(1);
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), index);
  if (ec != std::errc{} || ptr != rest.data() + rest.size() || index < 1)
    throw ParseError("bad point token '" + std::string(token) + "'");
  return Point{token[0] == 'L' ? Column::left : Column::right, index};
}

int PointSet::size() const { return std::popcount(bits_); }

TwoColumnGraph::TwoColumnGraph(int left_count, int right_count, std::vector<Arrow> arrows,
                               std::vector<Point> questions)
    : left_(left_count), right_(right_count), arrows_(std::move(arrows)) {
  if (left_ < 0 || right_ < 0) throw RangeError("column heights must be non-negative");
  if (left_ + right_ > max_points) throw RangeError("at most 64 points are supported");
  for (const Arrow& arrow : arrows_) {
    if (!has_point(arrow.from) || !has_point(arrow.to))
      throw RangeError("arrow " + arrow.from.token() + " -> " + arrow.to.token() +
                       " has an endpoint outside the graph");
    if (arrow.from.column == arrow.to.column)
      throw DomainError("arrow " + arrow.from.token() + " -> " + arrow.to.token() +
                        " joins points of the same column");
  }
  std::sort(arrows_.begin(), arrows_.end());
  arrows_.erase(std::unique(arrows_.begin(), arrows_.end()), arrows_.end());
  for (const Point& q : questions) {
    if (!has_point(q)) throw RangeError("question mark on missing point " + q.token());
    questions_ = questions_.with(bit(q));
  }
}

bool TwoColumnGraph::has_point(Point p) const {
  return p.index >= 1 && p.index <= (p.column == Column::left ? left_ : right_);
}

int TwoColumnGraph::bit(Point p) const {
  if (!has_point(p)) throw RangeError("no point " + p.token() + " in graph");
  return p.column == Column::left ? p.index - 1 : left_ + p.index - 1;
}

Point TwoColumnGraph::point_at(int bit) const {
  if (bit < 0 || bit >= point_count()) throw RangeError("point index out of range");
  return bit < left_ ? Point{Column::left, bit + 1} : Point{Column::right, bit - left_ + 1};
}

PointSet TwoColumnGraph::all_points() const {
  const int n = point_count();
  return PointSet(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

std::vector<Point> TwoColumnGraph::points_of(PointSet s) const {
  std::vector<Point> out;
  for (int i = 0; i < point_count(); ++i)
    if (s.contains(i)) out.push_back(point_at(i));
  return out;
}

PointSet TwoColumnGraph::set_of(std::span<const Point> points) const {
  PointSet s;
  for (const Point& p : points) s = s.with(bit(p));
  return s;
}

TwoColumnGraph TwoColumnGraph::with_questions(PointSet questions) const {
  if (!questions.subset_of(all_points())) throw RangeError("question set outside the graph");
  TwoColumnGraph copy = *this;
  copy.questions_ = questions;
  return copy;
}

std::vector<std::pair<int, int>> TwoColumnGraph::all_arrows() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 2; a <= left_; ++a) out.emplace_back(a - 1, a - 2);
  for (int b = 2; b <= right_; ++b) out.emplace_back(left_ + b - 1, left_ + b - 2);
  for (const Arrow& arrow : arrows_) out.emplace_back(bit(arrow.from), bit(arrow.to));
  return out;
}

std::string Element::to_string() const { return digit_text(a) + digit_text(b); }

Element parse_element(std::string_view text) {
  Element x;
  std::size_t pos = 0;
  if (!read_digit(text, pos, x.a) || !read_digit(text, pos, x.b) || pos != text.size())
    throw ParseError("bad element '" + std::string(text) + "'");
  return x;
}

// ---------------------------------------------------------------------------

struct Zha::Data {
  int l = 0;
  int r = 0;
  std::vector<Element> elements;
  std::vector<int> index;  // (l+1)*(r+1) grid, -1 where absent
  std::vector<std::uint16_t> meet;
  std::vector<std::uint16_t> join;
  std::vector<std::uint16_t> imp;

  int lookup(Element x) const {
    if (x.a < 0 || x.b < 0 || x.a > l || x.b > r) return -1;
    return index[static_cast<std::size_t>(x.a * (r + 1) + x.b)];
  }
};

Zha::Zha(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

Zha Zha::from_elements(std::vector<Element> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || elements.front() != Element{0, 0})
    throw DomainError("a ZHA must contain 00");
  auto data = std::make_shared<Data>();
  for (const Element& x : elements) {
    if (x.a < 0 || x.b < 0) throw DomainError("negative digit in " + x.to_string());
    data->l = std::max(data->l, x.a);
    data->r = std::max(data->r, x.b);
  }
  if (elements.size() > 65535) throw RangeError("ZHA too large");
  data->elements = std::move(elements);
  const auto& els = data->elements;
  const std::size_t n = els.size();
  data->index.assign(static_cast<std::size_t>((data->l + 1) * (data->r + 1)), -1);
  for (std::size_t i = 0; i < n; ++i)
    data->index[static_cast<std::size_t>(els[i].a * (data->r + 1) + els[i].b)] = static_cast<int>(i);
  if (data->lookup(Element{data->l, data->r}) < 0)
    throw DomainError("a ZHA must contain its top " + Element{data->l, data->r}.to_string());

  data->meet.resize(n * n);
  data->join.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Element lo{std::min(els[i].a, els[j].a), std::min(els[i].b, els[j].b)};
      const Element hi{std::max(els[i].a, els[j].a), std::max(els[i].b, els[j].b)};
      const int m = data->lookup(lo);
      const int k = data->lookup(hi);
      if (m < 0 || k < 0)
        throw DomainError("element set is not closed under min/max at " + els[i].to_string() +
                          ", " + els[j].to_string());
      data->meet[i * n + j] = static_cast<std::uint16_t>(m);
      data->join[i * n + j] = static_cast<std::uint16_t>(k);
    }
  }

  // imp(u, w) = maximum of {x | x ∧ u <= w}, found by scanning.
  data->imp.resize(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = 0; w < n; ++w) {
      Element best{-1, -1};
      for (std::size_t x = 0; x < n; ++x) {
        if (pair_leq(els[data->meet[x * n + u]], els[w]))
          best = Element{std::max(best.a, els[x].a), std::max(best.b, els[x].b)};
      }
      const int bi = data->lookup(best);
      if (bi < 0 || !pair_leq(els[data->meet[static_cast<std::size_t>(bi) * n + u]], els[w]))
        throw DomainError("no Heyting implication for " + els[u].to_string() + " -> " +
                          els[w].to_string());
      data->imp[u * n + w] = static_cast<std::uint16_t>(bi);
    }
  }
  return Zha(std::move(data));
}

Zha Zha::grid(int l, int r) {
  if (l < 0 || r < 0) throw RangeError("grid dimensions must be non-negative");
  std::vector<Element> els;
  for (int a = 0; a <= l; ++a)
    for (int b = 0; b <= r; ++b) els.push_back(Element{a, b});
  return from_elements(std::move(els));
}

int Zha::l() const { return data_->l; }
int Zha::r() const { return data_->r; }
std::size_t Zha::size() const { return data_->elements.size(); }
std::span<const Element> Zha::elements() const { return data_->elements; }
Element Zha::element(std::size_t index) const { return data_->elements.at(index); }
bool Zha::contains(Element x) const { return data_->lookup(x) >= 0; }

std::size_t Zha::index_of(Element x) const {
  const int i = data_->lookup(x);
  if (i < 0) throw DomainError(x.to_string() + " is not an element of the ZHA");
  return static_cast<std::size_t>(i);
}

Element Zha::top() const { return Element{data_->l, data_->r}; }
Element Zha::bottom() const { return Element{0, 0}; }
bool Zha::is_grid() const {
  return size() == static_cast<std::size_t>((data_->l + 1) * (data_->r + 1));
}

bool Zha::leq(Element x, Element y) const {
  index_of(x);
  index_of(y);
  return pair_leq(x, y);
}
Element Zha::meet(Element x, Element y) const {
  return element(meet_index(index_of(x), index_of(y)));
}
Element Zha::join(Element x, Element y) const {
  return element(join_index(index_of(x), index_of(y)));
}
Element Zha::imp(Element x, Element y) const {
  return element(imp_index(index_of(x), index_of(y)));
}
Element Zha::neg(Element x) const { return imp(x, bottom()); }

bool Zha::leq_index(std::size_t i, std::size_t j) const {
  return pair_leq(data_->elements[i], data_->elements[j]);
}
std::size_t Zha::meet_index(std::size_t i, std::size_t j) const {
  return data_->meet[i * size() + j];
}
std::size_t Zha::join_index(std::size_t i, std::size_t j) const {
  return data_->join[i * size() + j];
}
std::size_t Zha::imp_index(std::size_t i, std::size_t j) const {
  return data_->imp[i * size() + j];
}

bool Zha::operator==(const Zha& other) const {
  return data_ == other.data_ || data_->elements == other.data_->elements;
}

// ---------------------------------------------------------------------------

PointSet pile(const TwoColumnGraph& graph, int a, int b) {
  if (a < 0 || a > graph.left_count() || b < 0 || b > graph.right_count())
    throw RangeError("pile(" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
  const std::uint64_t left = (std::uint64_t{1} << a) - 1;
  const std::uint64_t right = ((std::uint64_t{1} << b) - 1) << graph.left_count();
  return PointSet(left | right);
}

PointSet pile(const TwoColumnGraph& graph, Element x) { return pile(graph, x.a, x.b); }

bool is_open(const TwoColumnGraph& graph, PointSet s) {
  for (const auto& [from, to] : graph.all_arrows())
    if (s.contains(from) && !s.contains(to)) return false;
  return true;
}

std::vector<PointSet> open_sets(const TwoColumnGraph& graph) {
  if (graph.point_count() > 24) throw RefusalError("open-set enumeration limited to 24 points");
  std::vector<PointSet> out;
  const std::uint64_t limit = std::uint64_t{1} << graph.point_count();
  for (std::uint64_t bits = 0; bits < limit; ++bits)
    if (is_open(graph, PointSet(bits))) out.emplace_back(bits);
  return out;
}

Zha zha_from_2cg(const TwoColumnGraph& graph) {
  std::vector<Element> els;
  for (int a = 0; a <= graph.left_count(); ++a)
    for (int b = 0; b <= graph.right_count(); ++b)
      if (is_open(graph, pile(graph, a, b))) els.push_back(Element{a, b});
  return Zha::from_elements(std::move(els));
}

bool is_acyclic(const TwoColumnGraph& graph) {
  const int n = graph.point_count();
  std::vector<std::vector<int>> next(static_cast<std::size_t>(n));
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (const auto& [from, to] : graph.all_arrows()) {
    next[static_cast<std::size_t>(from)].push_back(to);
    ++indegree[static_cast<std::size_t>(to)];
  }
  std::vector<int> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[static_cast<std::size_t>(i)] == 0) ready.push_back(i);
  int seen = 0;
  while (!ready.empty()) {
    const int p = ready.back();
    ready.pop_back();
    ++seen;
    for (int q : next[static_cast<std::size_t>(p)])
      if (--indegree[static_cast<std::size_t>(q)] == 0) ready.push_back(q);
  }
  return seen == n;
}

namespace {

// All nondecreasing sequences of length n with values in 0..max.
void monotone_sequences(int n, int max, std::vector<int>& current,
                        std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == n) {
    out.push_back(current);
    return;
  }
  const int start = current.empty() ? 0 : current.back();
  for (int v = start; v <= max; ++v) {
    current.push_back(v);
    monotone_sequences(n, max, current, out);
    current.pop_back();
  }
}

}  // namespace

std::vector<TwoColumnGraph> all_acyclic_zha_graphs(int max_l, int max_r) {
  // A ZHA is fixed by, for each left height a, the right height it forces
  // (need_right[a-1]) and symmetrically need_left for right heights.
  std::vector<TwoColumnGraph> out;
  for (int l = 0; l <= max_l; ++l) {
    for (int r = 0; r <= max_r; ++r) {
      std::vector<std::vector<int>> lefts, rights;
      std::vector<int> scratch;
      monotone_sequences(l, r, scratch, lefts);
      monotone_sequences(r, l, scratch, rights);
      std::map<std::vector<Element>, TwoColumnGraph> by_elements;
      for (const auto& need_right : lefts) {
        for (const auto& need_left : rights) {
          std::vector<Arrow> arrows;
          for (int a = 1; a <= l; ++a) {
            const int b = need_right[static_cast<std::size_t>(a - 1)];
            const int prev = a > 1 ? need_right[static_cast<std::size_t>(a - 2)] : 0;
            if (b > prev) arrows.push_back(Arrow{{Column::left, a}, {Column::right, b}});
          }
          for (int b = 1; b <= r; ++b) {
            const int a = need_left[static_cast<std::size_t>(b - 1)];
            const int prev = b > 1 ? need_left[static_cast<std::size_t>(b - 2)] : 0;
            if (a > prev) arrows.push_back(Arrow{{Column::right, b}, {Column::left, a}});
          }
          TwoColumnGraph graph(l, r, std::move(arrows));
          if (!is_acyclic(graph)) continue;
          const Zha zha = zha_from_2cg(graph);
          if (zha.l() != l || zha.r() != r) continue;
          std::vector<Element> key(zha.elements().begin(), zha.elements().end());
          by_elements.try_emplace(std::move(key), std::move(graph));
        }
      }
      for (auto& [key, graph] : by_elements) out.push_back(std::move(graph));
    }
  }
  return out;
}

}  // namespace zhakit
