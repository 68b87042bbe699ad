#include <algorithm>
#include <sstream>

#include "zhakit/cli.hpp"

namespace zhakit {

namespace {

std::string rstrip(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string padded(const std::string& s, std::size_t width) {
  // Width counts bytes; every cell is ASCII.
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

}  // namespace

std::string render_zha(const Zha& zha, const std::optional<Slashing>& slashing, const RenderConfig& config) {
  if (slashing && !(slashing->host() == zha)) throw ShapeError("slashing is not hosted on this ZHA");
  int xmin = 0, xmax = 0, ymax = 0;
  for (const Element& e : zha.elements()) {
    xmin = std::min(xmin, e.b - e.a);
    xmax = std::max(xmax, e.b - e.a);
    ymax = std::max(ymax, e.a + e.b);
  }
  // Cells are two characters wide; a one-step diagonal moves two columns.
  std::size_t width = 0;
  for (const Element& e : zha.elements()) width = std::max(width, e.to_string().size());
  const std::size_t step = std::max<std::size_t>(width, 2);
  const std::size_t columns = static_cast<std::size_t>(xmax - xmin) * step + step + 1;
  std::vector<std::string> rows(static_cast<std::size_t>(2 * ymax + 1), std::string(columns, ' '));
  auto column_of = [&](const Element& e) { return static_cast<std::size_t>(e.b - e.a - xmin) * step; };
  auto row_of = [&](const Element& e) { return static_cast<std::size_t>(2 * (ymax - e.a - e.b)); };
  for (const Element& e : zha.elements()) {
    const std::string cell = e.to_string();
    rows[row_of(e)].replace(column_of(e), cell.size(), cell);
  }
  if (slashing && config.show_cuts) {
    for (const Element& e : zha.elements()) {
      const std::size_t c = column_of(e), r = row_of(e);
      if (r == 0) continue;
      if (zha.contains({e.a + 1, e.b}) && slashing->left().has_cut(e.a + 1)) rows[r - 1][c] = '/';
      if (zha.contains({e.a, e.b + 1}) && slashing->right().has_cut(e.b + 1)) rows[r - 1][c + step - 1] = '\\';
    }
  }
  std::string out;
  for (auto& row : rows) out += rstrip(row) + "\n";
  return out;
}

std::string render_2cg(const TwoColumnGraph& graph, const RenderConfig& config) {
  const PointSet q = graph.questions();
  auto cell = [&](Point p) {
    std::string s = p.glyph();
    if (config.show_questions && q.contains(graph.bit(p))) s += "?";
    return s;
  };
  std::ostringstream out;
  const int height = std::max(graph.left_count(), graph.right_count());
  for (int i = height; i >= 1; --i) {
    std::string left = i <= graph.left_count() ? cell({Column::left, i}) : "";
    std::string right = i <= graph.right_count() ? cell({Column::right, i}) : "";
    out << rstrip(padded(left, 8) + right) << "\n";
  }
  if (!graph.arrows().empty()) {
    out << "arrows:";
    for (const Arrow& a : graph.arrows()) out << " " << a.from.glyph() << "->" << a.to.glyph();
    out << "\n";
  }
  if (config.show_questions && !q.empty()) {
    out << "questions:";
    for (const Point& p : graph.points_of(q)) out << " " << p.glyph();
    out << "\n";
  }
  return out.str();
}

std::string render_path_table(const TwoColumnGraph& graph, std::span<const Element> path, const RenderConfig& config) {
  validate_unit_path(zha_from_2cg(graph), path);
  const PointSet q = graph.questions();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = path.size() - 1; i >= 1; --i) {
    const Element x = path[i - 1], y = path[i];
    const bool left_step = y.a != x.a;
    const Point added = left_step ? Point{Column::left, y.a} : Point{Column::right, y.b};
    const bool same = q_equiv(graph, x, y);
    const bool in_q = q.contains(graph.bit(added));
    const int hi = left_step ? y.a : y.b;
    const std::string lo_s = std::to_string(hi - 1), hi_s = std::to_string(hi);
    const std::string rel = std::string(same ? " ~_" : " !~_") + (left_step ? "L " : "R ");
    std::string fragment;
    if (left_step)
      fragment = same ? hi_s + lo_s : hi_s + "/" + lo_s;
    else
      fragment = same ? lo_s + hi_s : lo_s + "\\" + hi_s;
    rows.push_back({x.to_string() + " -> " + y.to_string(), "+" + added.glyph(),
                    added.glyph() + (in_q ? " in Q" : " not in Q"),
                    x.to_string() + (same ? " ~_Q " : " !~_Q ") + y.to_string(), lo_s + rel + hi_s, fragment});
  }
  const std::vector<std::string> header{"step", "adds", "question", "~_Q", "picc", "cut"};
  std::ostringstream out;
  if (config.style == RenderConfig::Style::tsv) {
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "\t" : "") << header[c];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "\t" : "") << row[c];
      out << "\n";
    }
    return out.str();
  }
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = header[c].size();
    for (const auto& row : rows) widths[c] = std::max(widths[c], row[c].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) line += padded(row[c], widths[c] + 2);
    out << rstrip(line) << "\n";
  };
  emit(header);
  for (const auto& row : rows) emit(row);
  return out.str();
}

std::vector<Element> parse_path(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<Element> out;
  for (std::string w; in >> w;) out.push_back(parse_element(w));
  if (out.empty()) throw ParseError("empty path");
  return out;
}

}  // namespace zhakit
