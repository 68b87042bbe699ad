#include "zhakit/formats.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "zhakit/topos.hpp"

namespace zhakit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

// Calls `each(line_number, content)` for every non-blank line, comments removed.
template <typename F>
void for_each_line(std::string_view text, F&& each) {
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    ++number;
    std::string_view line = text.substr(pos, end - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) each(number, line);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

int parse_count(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size() || v < 0) throw ParseError("bad count '" + s + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad count '" + s + "'", line);
  }
}

template <typename T, typename F>
T at_line(int line, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    if (e.line() > 0) throw;
    throw ParseError(e.what(), line);
  } catch (const Error& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

TwoColumnGraph parse_2cg(std::string_view text) {
  std::optional<int> left, right;
  std::vector<Arrow> arrows;
  std::vector<Point> questions;
  std::vector<std::pair<Point, int>> mentioned;  // checked once both counts are known
  for_each_line(text, [&](int line, std::string_view content) {
    const auto w = words(content);
    const std::string& key = w[0];
    if (key == "left" || key == "right") {
      if (w.size() != 2) throw ParseError("expected '" + key + " <count>'", line);
      auto& slot = key == "left" ? left : right;
      if (slot) throw ParseError("duplicate '" + key + "' line", line);
      slot = parse_count(w[1], line);
    } else if (key == "arrow") {
      if (w.size() != 3) throw ParseError("expected 'arrow <from> <to>'", line);
      arrows.push_back(at_line<Arrow>(line, [&] { return Arrow{parse_point(w[1]), parse_point(w[2])}; }));
      mentioned.emplace_back(arrows.back().from, line);
      mentioned.emplace_back(arrows.back().to, line);
    } else if (key == "questions") {
      for (std::size_t i = 1; i < w.size(); ++i)
      {
        questions.push_back(at_line<Point>(line, [&] { return parse_point(w[i]); }));
        mentioned.emplace_back(questions.back(), line);
      }
    } else {
      throw ParseError("unknown keyword '" + key + "'", line);
    }
  });
  if (!left || !right) throw ParseError("missing 'left' or 'right' line");
  for (const auto& [p, line] : mentioned)
    if (p.index < 1 || p.index > (p.column == Column::left ? *left : *right))
      throw ParseError("point " + p.token() + " is outside the graph", line);
  return TwoColumnGraph(*left, *right, std::move(arrows), std::move(questions));
}

std::string write_2cg(const TwoColumnGraph& graph) {
  std::ostringstream out;
  out << "left " << graph.left_count() << "\n";
  out << "right " << graph.right_count() << "\n";
  for (const Arrow& a : graph.arrows()) out << "arrow " << a.from.token() << " " << a.to.token() << "\n";
  if (!graph.questions().empty()) {
    out << "questions";
    for (const Point& p : graph.points_of(graph.questions())) out << " " << p.token();
    out << "\n";
  }
  return out.str();
}

OperatorTable parse_operator_table(const Zha& host, std::string_view text) {
  std::vector<std::optional<Element>> values(host.size());
  for_each_line(text, [&](int line, std::string_view content) {
    const auto arrow = content.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected '<ab> -> <cd>'", line);
    const Element from = at_line<Element>(line, [&] { return parse_element(trim(content.substr(0, arrow))); });
    const Element to = at_line<Element>(line, [&] { return parse_element(trim(content.substr(arrow + 2))); });
    const std::size_t i = at_line<std::size_t>(line, [&] { return host.index_of(from); });
    at_line<std::size_t>(line, [&] { return host.index_of(to); });
    if (values[i]) throw ParseError("element " + from.to_string() + " listed twice", line);
    values[i] = to;
  });
  std::vector<Element> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) throw ParseError("no image given for " + host.element(i).to_string());
    out.push_back(*values[i]);
  }
  return OperatorTable(host, std::move(out));
}

std::string write_operator_table(const OperatorTable& table) {
  std::ostringstream out;
  const Zha& h = table.host();
  for (std::size_t i = 0; i < h.size(); ++i)
    out << h.element(i).to_string() << " -> " << h.element(table.apply_index(i)).to_string() << "\n";
  return out.str();
}

Presheaf parse_psh(const FinitePoset& poset, std::string_view text) {
  std::vector<std::vector<std::string>> fibers(poset.size());
  std::vector<bool> seen(poset.size(), false);
  std::vector<std::tuple<int, int, int, std::string>> pending;  // line, p, q, body
  for_each_line(text, [&](int line, std::string_view content) {
    const auto colon = content.find(':');
    if (colon == std::string_view::npos) throw ParseError("expected ':'", line);
    const auto head = words(content.substr(0, colon));
    const std::string_view body = trim(content.substr(colon + 1));
    auto point = [&](const std::string& name) {
      return at_line<int>(line, [&] { return poset.index_of(name); });
    };
    if (head.size() == 2 && head[0] == "point") {
      const int p = point(head[1]);
      if (seen[static_cast<std::size_t>(p)]) throw ParseError("point " + head[1] + " listed twice", line);
      seen[static_cast<std::size_t>(p)] = true;
      auto& fiber = fibers[static_cast<std::size_t>(p)];
      for (auto& e : words(body)) {
        if (std::find(fiber.begin(), fiber.end(), e) != fiber.end())
          throw ParseError("element " + e + " repeated at " + head[1], line);
        fiber.push_back(std::move(e));
      }
    } else if (head.size() == 4 && head[0] == "map" && head[2] == "->") {
      pending.emplace_back(line, point(head[1]), point(head[3]), std::string(body));
    } else {
      throw ParseError("expected 'point <name>:' or 'map <p> -> <q>:'", line);
    }
  });

  Presheaf::EdgeMaps maps;
  for (const auto& [line, p, q, body] : pending) {
    const auto& covers = poset.covers();
    if (std::find(covers.begin(), covers.end(), std::pair{p, q}) == covers.end())
      throw ParseError(poset.name(p) + " -> " + poset.name(q) + " is not a covering edge", line);
    if (maps.contains({p, q})) throw ParseError("map listed twice", line);
    const auto& src = fibers[static_cast<std::size_t>(p)];
    const auto& dst = fibers[static_cast<std::size_t>(q)];
    std::vector<int> m(src.size(), -1);
    std::string entries = body;
    std::replace(entries.begin(), entries.end(), ',', ' ');
    for (const auto& entry : words(entries)) {
      const auto arrow = entry.find("->");
      if (arrow == std::string::npos) throw ParseError("expected '<x>-><y>' in '" + entry + "'", line);
      const std::string x = entry.substr(0, arrow), y = entry.substr(arrow + 2);
      const auto xi = std::find(src.begin(), src.end(), x);
      const auto yi = std::find(dst.begin(), dst.end(), y);
      if (xi == src.end()) throw ParseError("no element " + x + " at " + poset.name(p), line);
      if (yi == dst.end()) throw ParseError("no element " + y + " at " + poset.name(q), line);
      int& slot = m[static_cast<std::size_t>(xi - src.begin())];
      if (slot >= 0) throw ParseError("element " + x + " mapped twice", line);
      slot = static_cast<int>(yi - dst.begin());
    }
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] < 0) throw ParseError("no image for " + src[k] + " along " + poset.name(p) + " -> " + poset.name(q), line);
    maps.emplace(std::pair{p, q}, std::move(m));
  }
  return Presheaf(poset, std::move(fibers), maps);
}

std::string write_psh(const Presheaf& presheaf) {
  const FinitePoset& poset = presheaf.poset();
  std::ostringstream out;
  for (std::size_t p = 0; p < poset.size(); ++p) {
    out << "point " << poset.name(static_cast<int>(p)) << ":";
    for (const auto& e : presheaf.fiber(static_cast<int>(p))) out << " " << e;
    out << "\n";
  }
  for (const auto& [p, q] : poset.covers()) {
    if (presheaf.fiber_size(p) == 0) continue;
    out << "map " << poset.name(p) << " -> " << poset.name(q) << ":";
    const auto& m = presheaf.edge_map(p, q);
    for (std::size_t k = 0; k < m.size(); ++k)
      out << (k ? ", " : " ") << presheaf.fiber(p)[k] << "->" << presheaf.fiber(q)[static_cast<std::size_t>(m[k])];
    out << "\n";
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace zhakit
