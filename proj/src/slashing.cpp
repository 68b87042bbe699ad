#include "zhakit/slashing.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace zhakit {

namespace {

std::string digit_text(int d) {
  return d <= 9 ? std::to_string(d) : "[" + std::to_string(d) + "]";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); }
};

// Picc from an equivalence on {0..n}, or the first digit whose class has a gap.
std::variant<Picc, int> picc_from_classes(DisjointSets& sets, int n) {
  for (int a = 0; a <= n; ++a) {
    int lo = a, hi = a;
    for (int c = 0; c <= n; ++c) {
      if (sets.find(c) == sets.find(a)) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
      }
    }
    for (int c = lo; c <= hi; ++c)
      if (sets.find(c) != sets.find(a)) return a;
  }
  std::vector<int> cuts;
  for (int i = 1; i <= n; ++i)
    if (sets.find(i) != sets.find(i - 1)) cuts.push_back(i);
  return Picc(n, cuts);
}

}  // namespace

// --- Picc ------------------------------------------------------------------

Picc::Picc(int n, const std::vector<int>& cuts) : n_(n), cut_(static_cast<std::size_t>(n + 1), false) {
  if (n < 0) throw RangeError("picc size must be non-negative");
  for (int c : cuts) {
    if (c < 1 || c > n) throw RangeError("cut position " + std::to_string(c) + " outside 1.." + std::to_string(n));
    cut_[static_cast<std::size_t>(c)] = true;
  }
}

Picc Picc::discrete(int n) {
  std::vector<int> cuts(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(cuts.begin(), cuts.end(), 1);
  return Picc(n, cuts);
}

Picc Picc::trivial(int n) { return Picc(n); }

std::vector<Picc> Picc::all(int n) {
  if (n > 20) throw RefusalError("picc enumeration limited to n <= 20");
  std::vector<Picc> out;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    std::vector<int> cuts;
    for (int i = 1; i <= n; ++i)
      if ((mask >> (i - 1)) & 1U) cuts.push_back(i);
    out.emplace_back(n, cuts);
  }
  return out;
}

bool Picc::has_cut(int position) const {
  if (position < 1 || position > n_) throw RangeError("cut position out of range");
  return cut_[static_cast<std::size_t>(position)];
}

std::vector<int> Picc::cuts() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i)
    if (cut_[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

int Picc::top(int a) const {
  if (a < 0 || a > n_) throw RangeError("digit " + std::to_string(a) + " outside 0.." + std::to_string(n_));
  int t = a;
  while (t < n_ && !cut_[static_cast<std::size_t>(t + 1)]) ++t;
  return t;
}

int Picc::bottom(int a) const {
  if (a < 0 || a > n_) throw RangeError("digit " + std::to_string(a) + " outside 0.." + std::to_string(n_));
  int b = a;
  while (b > 0 && !cut_[static_cast<std::size_t>(b)]) --b;
  return b;
}

std::vector<int> Picc::class_of(int a) const {
  std::vector<int> out;
  for (int c = bottom(a); c <= top(a); ++c) out.push_back(c);
  return out;
}

bool Picc::equiv(int a, int b) const { return top(a) == top(b); }

std::string Picc::to_string() const {
  std::string out;
  for (int i = 0; i <= n_; ++i) {
    if (i > 0 && cut_[static_cast<std::size_t>(i)]) out += '|';
    out += digit_text(i);
  }
  return out;
}

std::string Picc::to_slash_string(Column side) const {
  std::string out;
  if (side == Column::left) {
    for (int i = n_; i >= 0; --i) {
      out += digit_text(i);
      if (i > 0 && cut_[static_cast<std::size_t>(i)]) out += '/';
    }
  } else {
    for (int i = 0; i <= n_; ++i) {
      if (i > 0 && cut_[static_cast<std::size_t>(i)]) out += '\\';
      out += digit_text(i);
    }
  }
  return out;
}

Picc parse_picc(std::string_view text) {
  const std::string shown(text);
  std::vector<int> cuts;
  int expected = 0;
  bool pending_cut = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '|') {
      if (expected == 0 || pending_cut) throw ParseError("misplaced '|' in picc '" + shown + "'");
      pending_cut = true;
      ++pos;
      continue;
    }
    int digit = 0;
    if (c >= '0' && c <= '9') {
      digit = c - '0';
      ++pos;
    } else if (c == '[') {
      const auto close = text.find(']', pos);
      if (close == std::string_view::npos) throw ParseError("unclosed '[' in picc '" + shown + "'");
      const auto body = text.substr(pos + 1, close - pos - 1);
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), digit);
      if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size())
        throw ParseError("bad bracketed digit in picc '" + shown + "'");
      pos = close + 1;
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) + "' in picc '" + shown + "'");
    }
    if (digit != expected)
      throw ParseError("picc '" + shown + "' lists " + std::to_string(digit) + " where " +
                       std::to_string(expected) + " was expected");
    if (pending_cut) cuts.push_back(digit);
    pending_cut = false;
    ++expected;
  }
  if (expected == 0) throw ParseError("empty picc");
  if (pending_cut) throw ParseError("trailing '|' in picc '" + shown + "'");
  return Picc(expected - 1, cuts);
}

// --- OperatorTable -----------------------------------------------------------

OperatorTable::OperatorTable(Zha host, std::vector<Element> values) : host_(std::move(host)) {
  if (values.size() != host_.size())
    throw ShapeError("operator table has " + std::to_string(values.size()) + " entries for " +
                     std::to_string(host_.size()) + " elements");
  images_.reserve(values.size());
  for (const Element& v : values) images_.push_back(host_.index_of(v));
}

OperatorTable OperatorTable::tabulate(const Zha& host, const std::function<Element(Element)>& f) {
  std::vector<Element> values;
  values.reserve(host.size());
  for (const Element& x : host.elements()) values.push_back(f(x));
  return OperatorTable(host, std::move(values));
}

OperatorTable OperatorTable::identity(const Zha& host) {
  return tabulate(host, [](Element x) { return x; });
}

OperatorTable OperatorTable::constant(const Zha& host, Element value) {
  return tabulate(host, [value](Element) { return value; });
}

Element OperatorTable::operator()(Element x) const {
  return host_.element(images_[host_.index_of(x)]);
}

bool OperatorTable::operator==(const OperatorTable& other) const {
  return host_ == other.host_ && images_ == other.images_;
}

// --- Slashing ----------------------------------------------------------------

Slashing::Slashing(Zha host, Picc left, Picc right)
    : host_(std::move(host)), left_(std::move(left)), right_(std::move(right)) {
  if (left_.n() != host_.l() || right_.n() != host_.r())
    throw ShapeError("slashing piccs on {0.." + std::to_string(left_.n()) + "} x {0.." +
                     std::to_string(right_.n()) + "} do not match host top " +
                     host_.top().to_string());
}

std::vector<Slashing> Slashing::all(const Zha& host) {
  std::vector<Slashing> out;
  const auto lefts = Picc::all(host.l());
  const auto rights = Picc::all(host.r());
  out.reserve(lefts.size() * rights.size());
  for (const Picc& left : lefts)
    for (const Picc& right : rights) out.emplace_back(host, left, right);
  return out;
}

bool Slashing::equiv(Element x, Element y) const {
  host_.index_of(x);
  host_.index_of(y);
  return left_.equiv(x.a, y.a) && right_.equiv(x.b, y.b);
}

Element Slashing::top(Element x) const {
  host_.index_of(x);
  Element best = x;
  for (const Element& y : host_.elements()) {
    if (left_.equiv(x.a, y.a) && right_.equiv(x.b, y.b))
      best = Element{std::max(best.a, y.a), std::max(best.b, y.b)};
  }
  return best;
}

std::vector<Element> Slashing::region(Element x) const {
  std::vector<Element> out;
  for (const Element& y : host_.elements())
    if (equiv(x, y)) out.push_back(y);
  return out;
}

OperatorTable Slashing::slash_operator() const {
  return OperatorTable::tabulate(host_, [this](Element x) { return top(x); });
}

CutSet Slashing::cuts() const { return CutSet{left_.cuts(), right_.cuts()}; }

std::string Slashing::to_string() const {
  return "(" + left_.to_string() + ", " + right_.to_string() + ")";
}

std::string Slashing::to_slash_string() const {
  return "(" + left_.to_slash_string(Column::left) + ", " + right_.to_slash_string(Column::right) + ")";
}

bool Slashing::operator==(const Slashing& other) const {
  return host_ == other.host_ && left_ == other.left_ && right_ == other.right_;
}

Slashing parse_slashing(const Zha& host, std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw ParseError("slashing must be written (<left picc>, <right picc>)");
  text = text.substr(1, text.size() - 2);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("slashing needs two piccs separated by ','");
  return Slashing(host, parse_picc(trim(text.substr(0, comma))), parse_picc(trim(text.substr(comma + 1))));
}

// --- Question marks ------------------------------------------------------------

bool q_equiv(const TwoColumnGraph& graph, Element x, Element y) {
  const PointSet q = graph.questions();
  return (pile(graph, x) - q) == (pile(graph, y) - q);
}

Slashing slashing_from_questions(const TwoColumnGraph& graph) {
  std::vector<int> left_cuts, right_cuts;
  const PointSet q = graph.questions();
  for (int a = 1; a <= graph.left_count(); ++a)
    if (!q.contains(graph.bit(Point{Column::left, a}))) left_cuts.push_back(a);
  for (int b = 1; b <= graph.right_count(); ++b)
    if (!q.contains(graph.bit(Point{Column::right, b}))) right_cuts.push_back(b);
  return Slashing(zha_from_2cg(graph), Picc(graph.left_count(), left_cuts),
                  Picc(graph.right_count(), right_cuts));
}

PointSet questions_from_slashing(const TwoColumnGraph& graph, const Slashing& s) {
  if (s.left().n() != graph.left_count() || s.right().n() != graph.right_count())
    throw ShapeError("slashing " + s.to_string() + " does not fit a graph with l=" +
                     std::to_string(graph.left_count()) + ", r=" + std::to_string(graph.right_count()));
  PointSet q;
  for (int a = 1; a <= graph.left_count(); ++a)
    if (!s.left().has_cut(a)) q = q.with(graph.bit(Point{Column::left, a}));
  for (int b = 1; b <= graph.right_count(); ++b)
    if (!s.right().has_cut(b)) q = q.with(graph.bit(Point{Column::right, b}));
  return q;
}

void validate_unit_path(const Zha& host, std::span<const Element> path) {
  if (path.empty() || path.front() != host.bottom() || path.back() != host.top())
    throw DomainError("path must run from 00 to " + host.top().to_string());
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!host.contains(path[i])) throw DomainError("path element " + path[i].to_string() + " is not in the ZHA");
    if (i == 0) continue;
    const Element d{path[i].a - path[i - 1].a, path[i].b - path[i - 1].b};
    if (d != Element{1, 0} && d != Element{0, 1})
      throw DomainError("step " + path[i - 1].to_string() + " -> " + path[i].to_string() + " is not a unit step");
  }
}

CutSet cuts_along_path(const TwoColumnGraph& graph, std::span<const Element> path) {
  validate_unit_path(zha_from_2cg(graph), path);
  CutSet cuts;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (q_equiv(graph, path[i - 1], path[i])) continue;
    if (path[i].a != path[i - 1].a)
      cuts.left.push_back(path[i].a);
    else
      cuts.right.push_back(path[i].b);
  }
  std::sort(cuts.left.begin(), cuts.left.end());
  std::sort(cuts.right.begin(), cuts.right.end());
  return cuts;
}

std::vector<std::vector<Element>> all_unit_paths(const Zha& host) {
  std::vector<std::vector<Element>> out;
  std::vector<Element> current{host.bottom()};
  std::function<void()> extend = [&] {
    const Element last = current.back();
    if (last == host.top()) {
      out.push_back(current);
      return;
    }
    for (const Element next : {Element{last.a, last.b + 1}, Element{last.a + 1, last.b}}) {
      if (!host.contains(next)) continue;
      current.push_back(next);
      extend();
      current.pop_back();
    }
  };
  extend();
  std::sort(out.begin(), out.end());
  return out;
}

// --- Recognition ---------------------------------------------------------------

std::string SlashRejection::describe() const {
  switch (reason) {
    case Reason::left_not_contiguous:
      return "left classes are not contiguous (witness " + witness.to_string() + ")";
    case Reason::right_not_contiguous:
      return "right classes are not contiguous (witness " + witness.to_string() + ")";
    case Reason::not_top_of_region:
      return "f differs from the top of its region at " + witness.to_string();
  }
  return {};
}

SlashRecognition recognize_slash_operator(const OperatorTable& table) {
  const Zha& host = table.host();
  DisjointSets left(host.l() + 1), right(host.r() + 1);
  for (std::size_t i = 0; i < host.size(); ++i) {
    const Element x = host.element(i);
    const Element fx = host.element(table.apply_index(i));
    left.unite(x.a, fx.a);
    right.unite(x.b, fx.b);
  }
  auto first_with_digit = [&](int digit, bool on_left) {
    for (const Element& x : host.elements())
      if ((on_left ? x.a : x.b) == digit) return x;
    return host.bottom();
  };
  auto left_picc = picc_from_classes(left, host.l());
  if (const int* bad = std::get_if<int>(&left_picc))
    return SlashRejection{SlashRejection::Reason::left_not_contiguous, first_with_digit(*bad, true)};
  auto right_picc = picc_from_classes(right, host.r());
  if (const int* bad = std::get_if<int>(&right_picc))
    return SlashRejection{SlashRejection::Reason::right_not_contiguous, first_with_digit(*bad, false)};

  Slashing s(host, std::get<Picc>(left_picc), std::get<Picc>(right_picc));
  for (const Element& x : host.elements())
    if (table(x) != s.top(x)) return SlashRejection{SlashRejection::Reason::not_top_of_region, x};
  return s;
}

}  // namespace zhakit
