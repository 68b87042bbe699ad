#include "zhakit/poly.hpp"

#include <algorithm>
#include <cctype>

namespace zhakit {

struct PolyExpr::Node {
  Kind kind;
  Element value;
  std::optional<PolyExpr> lhs;
  std::optional<PolyExpr> rhs;
};

PolyExpr PolyExpr::variable() { return PolyExpr(std::make_shared<const Node>(Node{Kind::variable, {}, {}, {}})); }
PolyExpr PolyExpr::constant(Element v) { return PolyExpr(std::make_shared<const Node>(Node{Kind::constant, v, {}, {}})); }
PolyExpr PolyExpr::top() { return PolyExpr(std::make_shared<const Node>(Node{Kind::top, {}, {}, {}})); }
PolyExpr PolyExpr::bottom() { return PolyExpr(std::make_shared<const Node>(Node{Kind::bottom, {}, {}, {}})); }
PolyExpr PolyExpr::negation(PolyExpr x) {
  return PolyExpr(std::make_shared<const Node>(Node{Kind::negation, {}, std::move(x), {}}));
}
PolyExpr PolyExpr::meet(PolyExpr x, PolyExpr y) {
  return PolyExpr(std::make_shared<const Node>(Node{Kind::meet, {}, std::move(x), std::move(y)}));
}
PolyExpr PolyExpr::join(PolyExpr x, PolyExpr y) {
  return PolyExpr(std::make_shared<const Node>(Node{Kind::join, {}, std::move(x), std::move(y)}));
}
PolyExpr PolyExpr::implies(PolyExpr x, PolyExpr y) {
  return PolyExpr(std::make_shared<const Node>(Node{Kind::implies, {}, std::move(x), std::move(y)}));
}

PolyExpr::Kind PolyExpr::kind() const { return node_->kind; }
Element PolyExpr::value() const { return node_->value; }
const PolyExpr& PolyExpr::lhs() const { return *node_->lhs; }
const PolyExpr& PolyExpr::rhs() const { return *node_->rhs; }

std::vector<Element> PolyExpr::constants() const {
  std::vector<Element> out;
  if (kind() == Kind::constant) out.push_back(value());
  if (node_->lhs)
    for (Element c : lhs().constants()) out.push_back(c);
  if (node_->rhs)
    for (Element c : rhs().constants()) out.push_back(c);
  return out;
}

bool PolyExpr::operator==(const PolyExpr& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  if (kind() == Kind::constant) return value() == other.value();
  if (node_->lhs && !(lhs() == other.lhs())) return false;
  if (node_->rhs && !(rhs() == other.rhs())) return false;
  return true;
}

// --- parser ----------------------------------------------------------------------

namespace {

enum class Tok { lparen, rparen, bang, amp, bar, arrow, vee, var, top, bottom, constant, end };

struct Token {
  Tok kind;
  std::size_t column;
  Element value{};
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto digit_unit = [&](std::size_t& pos, int& v) {
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = s[pos++] - '0';
      return true;
    }
    if (pos < s.size() && s[pos] == '[') {
      std::size_t end = s.find(']', pos);
      if (end == std::string_view::npos || end == pos + 1) return false;
      v = 0;
      for (std::size_t k = pos + 1; k < end; ++k) {
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
        v = v * 10 + (s[k] - '0');
      }
      pos = end + 1;
      return true;
    }
    return false;
  };
  while (i < s.size()) {
    const char c = s[i];
    const std::size_t col = i + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Tok::arrow, col});
      i += 2;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '[') {
      Token t{Tok::constant, col};
      std::size_t pos = i;
      if (!digit_unit(pos, t.value.a) || !digit_unit(pos, t.value.b))
        throw ParseError("bad constant at column " + std::to_string(col));
      if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '['))
        throw ParseError("constant with more than two digits at column " + std::to_string(col));
      out.push_back(t);
      i = pos;
      continue;
    }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::lparen; break;
      case ')': kind = Tok::rparen; break;
      case '!': kind = Tok::bang; break;
      case '&': kind = Tok::amp; break;
      case '|': kind = Tok::bar; break;
      case 'v': kind = Tok::vee; break;
      case 'P': kind = Tok::var; break;
      case 'T': kind = Tok::top; break;
      case 'F': kind = Tok::bottom; break;
      default: throw ParseError("unexpected '" + std::string(1, c) + "' at column " + std::to_string(col));
    }
    out.push_back({kind, col});
    ++i;
  }
  out.push_back({Tok::end, s.size() + 1});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  PolyExpr parse() {
    PolyExpr e = implication();
    if (peek().kind != Tok::end) fail("unexpected trailing input");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at column " + std::to_string(peek().column));
  }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    next();
  }

  PolyExpr implication() {
    PolyExpr lhs = disjunction();
    if (peek().kind != Tok::arrow) return lhs;
    next();
    return PolyExpr::implies(std::move(lhs), implication());
  }
  PolyExpr disjunction() {
    PolyExpr e = conjunction();
    while (peek().kind == Tok::bar) {
      next();
      e = PolyExpr::join(std::move(e), conjunction());
    }
    return e;
  }
  PolyExpr conjunction() {
    PolyExpr e = unary();
    while (peek().kind == Tok::amp) {
      next();
      e = PolyExpr::meet(std::move(e), unary());
    }
    return e;
  }
  PolyExpr unary() {
    if (peek().kind == Tok::bang) {
      next();
      return PolyExpr::negation(unary());
    }
    return atom();
  }
  PolyExpr atom() {
    const Token t = next();
    switch (t.kind) {
      case Tok::var: return PolyExpr::variable();
      case Tok::top: return PolyExpr::top();
      case Tok::bottom: return PolyExpr::bottom();
      case Tok::constant: return PolyExpr::constant(t.value);
      case Tok::lparen: {
        PolyExpr e = starts_section() ? sections() : implication();
        expect(Tok::rparen, "')'");
        return e;
      }
      default:
        --pos_;
        fail("expected an atom");
    }
  }

  bool starts_section() const {
    const Tok k = peek().kind;
    if (k == Tok::vee || k == Tok::arrow) return true;
    return k == Tok::bang && peek(1).kind == Tok::bang && (peek(2).kind == Tok::rparen || peek(2).kind == Tok::amp);
  }
  Element section_constant() {
    if (peek().kind != Tok::constant) fail("expected a constant");
    return next().value;
  }
  PolyExpr section() {
    const PolyExpr p = PolyExpr::variable();
    switch (peek().kind) {
      case Tok::vee:
        next();
        return PolyExpr::join(p, PolyExpr::constant(section_constant()));
      case Tok::arrow:
        next();
        if (peek().kind == Tok::arrow) {
          next();
          const PolyExpr c = PolyExpr::constant(section_constant());
          return PolyExpr::implies(PolyExpr::implies(p, c), c);
        }
        return PolyExpr::implies(PolyExpr::constant(section_constant()), p);
      case Tok::bang:
        next();
        expect(Tok::bang, "'!!'");
        return PolyExpr::negation(PolyExpr::negation(p));
      default:
        fail("expected a section 'v c', '-> c', '->-> c' or '!!'");
    }
  }
  PolyExpr sections() {
    PolyExpr e = section();
    while (peek().kind == Tok::amp) {
      next();
      e = PolyExpr::meet(std::move(e), section());
    }
    return e;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(PolyExpr::Kind k) {
  switch (k) {
    case PolyExpr::Kind::implies: return 1;
    case PolyExpr::Kind::join: return 2;
    case PolyExpr::Kind::meet: return 3;
    case PolyExpr::Kind::negation: return 4;
    default: return 5;
  }
}

std::string print(const PolyExpr& e, int context) {
  using K = PolyExpr::Kind;
  std::string s;
  switch (e.kind()) {
    case K::variable: return "P";
    case K::top: return "T";
    case K::bottom: return "F";
    case K::constant: return e.value().to_string();
    case K::negation: s = "!" + print(e.lhs(), 4); break;
    // Left operands of right-associative -> need parentheses at equal
    // precedence; right operands of the left-associative & and | do.
    case K::implies: s = print(e.lhs(), 2) + " -> " + print(e.rhs(), 1); break;
    case K::join: s = print(e.lhs(), 2) + " | " + print(e.rhs(), 3); break;
    case K::meet: s = print(e.lhs(), 3) + " & " + print(e.rhs(), 4); break;
  }
  return precedence(e.kind()) < context ? "(" + s + ")" : s;
}

std::size_t eval_index(const PolyExpr& e, const Zha& h, std::size_t p) {
  using K = PolyExpr::Kind;
  switch (e.kind()) {
    case K::variable: return p;
    case K::constant: return h.index_of(e.value());
    case K::top: return h.size() - 1;
    case K::bottom: return 0;
    case K::negation: return h.imp_index(eval_index(e.lhs(), h, p), 0);
    case K::meet: return h.meet_index(eval_index(e.lhs(), h, p), eval_index(e.rhs(), h, p));
    case K::join: return h.join_index(eval_index(e.lhs(), h, p), eval_index(e.rhs(), h, p));
    case K::implies: return h.imp_index(eval_index(e.lhs(), h, p), eval_index(e.rhs(), h, p));
  }
  return p;
}

void check_constants(const PolyExpr& e, const Zha& host) {
  for (Element c : e.constants())
    if (!host.contains(c)) throw DomainError("constant " + c.to_string() + " is not in the host");
}

}  // namespace

PolyExpr parse_poly(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const PolyExpr& e) { return print(e, 0); }

Element eval_poly(const PolyExpr& e, const Zha& host, Element p) {
  check_constants(e, host);
  return host.element(eval_index(e, host, host.index_of(p)));
}

OperatorTable tabulate_poly(const PolyExpr& e, const Zha& host) {
  check_constants(e, host);
  std::vector<Element> values;
  for (std::size_t i = 0; i < host.size(); ++i) values.push_back(host.element(eval_index(e, host, i)));
  return OperatorTable(host, std::move(values));
}

// --- named operators -------------------------------------------------------------

namespace {

constexpr std::pair<NamedKind, const char*> kind_names[] = {
    {NamedKind::neg_neg, "neg_neg"}, {NamedKind::or_const, "or_const"},
    {NamedKind::imp_const, "imp_const"}, {NamedKind::imp_imp_const, "imp_imp_const"},
    {NamedKind::forcing, "forcing"}, {NamedKind::mixed, "mixed"},
};

}  // namespace

NamedKind parse_named_kind(std::string_view name) {
  for (const auto& [k, n] : kind_names)
    if (name == n) return k;
  throw DomainError("unknown operator kind '" + std::string(name) + "'");
}

std::string to_string(NamedKind kind) {
  for (const auto& [k, n] : kind_names)
    if (k == kind) return n;
  return "?";
}

std::size_t named_arity(NamedKind kind) {
  switch (kind) {
    case NamedKind::neg_neg: return 0;
    case NamedKind::forcing: return 2;
    default: return 1;
  }
}

PolyExpr named_expr(NamedKind kind, const std::vector<Element>& constants) {
  if (constants.size() != named_arity(kind))
    throw ShapeError(to_string(kind) + " takes " + std::to_string(named_arity(kind)) + " constant(s), got " +
                     std::to_string(constants.size()));
  const PolyExpr p = PolyExpr::variable();
  auto c = [&](std::size_t i) { return PolyExpr::constant(constants[i]); };
  switch (kind) {
    case NamedKind::neg_neg: return PolyExpr::negation(PolyExpr::negation(p));
    case NamedKind::or_const: return PolyExpr::join(p, c(0));
    case NamedKind::imp_const: return PolyExpr::implies(c(0), p);
    case NamedKind::imp_imp_const: return PolyExpr::implies(PolyExpr::implies(p, c(0)), c(0));
    case NamedKind::forcing: return PolyExpr::meet(PolyExpr::join(p, c(0)), PolyExpr::implies(c(1), p));
    case NamedKind::mixed: return PolyExpr::implies(PolyExpr::implies(p, c(0)), p);
  }
  return p;
}

OperatorTable named_operator(const Zha& host, NamedKind kind, const std::vector<Element>& constants) {
  return tabulate_poly(named_expr(kind, constants), host);
}

// --- operator and picc algebra --------------------------------------------------

OperatorTable op_meet(const OperatorTable& j, const OperatorTable& k) {
  if (!(j.host() == k.host())) throw ShapeError("operators live on different hosts");
  const Zha& h = j.host();
  std::vector<Element> values;
  for (std::size_t i = 0; i < h.size(); ++i) values.push_back(h.element(h.meet_index(j.apply_index(i), k.apply_index(i))));
  return OperatorTable(h, std::move(values));
}

Picc picc_meet(const Picc& p, const Picc& q) {
  if (p.n() != q.n()) throw ShapeError("piccs of different sizes");
  std::vector<int> cuts;
  for (int i = 1; i <= p.n(); ++i)
    if (p.has_cut(i) || q.has_cut(i)) cuts.push_back(i);
  return Picc(p.n(), cuts);
}

Picc picc_join(const Picc& p, const Picc& q) {
  if (p.n() != q.n()) throw ShapeError("piccs of different sizes");
  std::vector<int> cuts;
  for (int i = 1; i <= p.n(); ++i)
    if (p.has_cut(i) && q.has_cut(i)) cuts.push_back(i);
  return Picc(p.n(), cuts);
}

bool picc_leq(const Picc& p, const Picc& q) {
  if (p.n() != q.n()) throw ShapeError("piccs of different sizes");
  for (int i = 1; i <= p.n(); ++i)
    if (q.has_cut(i) && !p.has_cut(i)) return false;
  return true;
}

bool picc_leq_pointwise(const Picc& p, const Picc& q) {
  if (p.n() != q.n()) throw ShapeError("piccs of different sizes");
  for (int a = 0; a <= p.n(); ++a)
    if (p.top(a) > q.top(a)) return false;
  return true;
}

Slashing op_join_slash(const Slashing& j, const Slashing& k) {
  if (!(j.host() == k.host())) throw ShapeError("slashings live on different hosts");
  return Slashing(j.host(), picc_join(j.left(), k.left()), picc_join(j.right(), k.right()));
}

Slashing op_meet_slash(const Slashing& j, const Slashing& k) {
  if (!(j.host() == k.host())) throw ShapeError("slashings live on different hosts");
  return Slashing(j.host(), picc_meet(j.left(), k.left()), picc_meet(j.right(), k.right()));
}

Slashing slashing_from_cuts(const Zha& host, const CutSet& cuts) {
  return Slashing(host, Picc(host.l(), cuts.left), Picc(host.r(), cuts.right));
}

// --- Fourman-Scott identities -----------------------------------------------------

std::vector<FsIdentity> fs_identities(const Zha& host) {
  std::vector<FsIdentity> out{
      {"(i)", "J_a | J_b = J_(a|b)", true, 0, {}},    {"(ii)", "J^a | J^b = J^(a&b)", true, 0, {}}, {"(iii)", "J_a & J_b = J_(a&b)", true, 0, {}},
      {"(iv)", "J^a & J^b = J^(a|b)", true, 0, {}},  {"(v)", "J_a & J^a = id", true, 0, {}},         {"(vi)", "J_a | J^a = top", true, 0, {}},
  };
  std::vector<OperatorTable> lower, upper;  // J_a and J^a per host element
  std::vector<std::optional<Slashing>> lower_s, upper_s;
  for (const Element& a : host.elements()) {
    lower.push_back(named_operator(host, NamedKind::or_const, {a}));
    upper.push_back(named_operator(host, NamedKind::imp_const, {a}));
    auto as_slashing = [](const OperatorTable& t) -> std::optional<Slashing> {
      auto r = recognize_slash_operator(t);
      if (auto* s = std::get_if<Slashing>(&r)) return *s;
      return std::nullopt;
    };
    lower_s.push_back(as_slashing(lower.back()));
    upper_s.push_back(as_slashing(upper.back()));
  }
  const OperatorTable identity = OperatorTable::identity(host);
  const OperatorTable top = OperatorTable::constant(host, host.top());

  auto record = [](FsIdentity& id, bool ok, Element a, Element b) {
    ++id.instances;
    if (ok || !id.holds) return;
    id.holds = false;
    id.witness = std::pair{a, b};
  };
  auto join_equals = [](const std::optional<Slashing>& x, const std::optional<Slashing>& y, const OperatorTable& want) {
    return x && y && op_join_slash(*x, *y).slash_operator() == want;
  };

  const std::size_t n = host.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Element a = host.element(i);
    for (std::size_t k = 0; k < n; ++k) {
      const Element b = host.element(k);
      const std::size_t jn = host.join_index(i, k), mt = host.meet_index(i, k);
      record(out[0], join_equals(lower_s[i], lower_s[k], lower[jn]), a, b);
      record(out[1], join_equals(upper_s[i], upper_s[k], upper[mt]), a, b);
      record(out[2], op_meet(lower[i], lower[k]) == lower[mt], a, b);
      record(out[3], op_meet(upper[i], upper[k]) == upper[jn], a, b);
    }
    record(out[4], op_meet(lower[i], upper[i]) == identity, a, a);
    record(out[5], join_equals(lower_s[i], upper_s[i], top), a, a);
  }
  return out;
}

// --- slashings as polynomials ----------------------------------------------------

PolyExpr slashing_to_polynomial(const Slashing& s) {
  const Zha& h = s.host();
  std::vector<Element> tops;
  for (int c : s.left().cuts())
    tops.push_back(Slashing(h, Picc(h.l(), {c}), Picc::trivial(h.r())).top(h.bottom()));
  for (int c : s.right().cuts())
    tops.push_back(Slashing(h, Picc::trivial(h.l()), Picc(h.r(), {c})).top(h.bottom()));
  if (tops.empty()) return PolyExpr::top();
  std::optional<PolyExpr> e;
  for (Element c : tops) {
    PolyExpr factor = named_expr(NamedKind::imp_imp_const, {c});
    e = e ? PolyExpr::meet(*e, factor) : factor;
  }
  return *e;
}

JVerdict is_polynomial_j(const PolyExpr& e, const Zha& host) { return check_j123(tabulate_poly(e, host)); }

}  // namespace zhakit
