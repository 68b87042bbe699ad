#include "zhakit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "zhakit/cube.hpp"
#include "zhakit/formats.hpp"
#include "zhakit/nucleus.hpp"
#include "zhakit/poly.hpp"
#include "zhakit/topos.hpp"

namespace zhakit {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Either --grid L R or --2cg FILE names the host ZHA.
struct HostArgs {
  std::vector<int> grid;
  std::string graph_file;

  void attach(CLI::App* app) {
    app->add_option("--grid", grid, "full grid [00, LR]")->expected(2);
    app->add_option("--2cg", graph_file, "2CG file whose ZHA is the host");
  }

  Zha host() const {
    if (grid.empty() == graph_file.empty()) throw UsageError("give exactly one of --grid L R and --2cg FILE");
    if (!grid.empty()) {
      if (grid[0] < 0 || grid[1] < 0) throw RangeError("grid sizes must be non-negative");
      return Zha::grid(grid[0], grid[1]);
    }
    return zha_from_2cg(parse_2cg(read_file(graph_file)));
  }
};

TwoColumnGraph load_graph(const std::string& file) { return parse_2cg(read_file(file)); }

std::string join_elements(std::span<const Element> xs, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i].to_string();
  return out;
}

std::string join_points(const std::vector<Point>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? " " : "") + ps[i].token();
  return out;
}

std::optional<std::uint64_t> optional_seed(const CLI::Option* opt, std::uint64_t value) {
  if (opt->count() == 0) return std::nullopt;
  return value;
}

// The element of the graph's ZHA whose pile is `open`.
Element element_of_pile(const TwoColumnGraph& graph, PointSet open) {
  const Zha h = zha_from_2cg(graph);
  for (const Element& e : h.elements())
    if (pile(graph, e) == open) return e;
  throw DomainError("not an open pile");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Planar Heyting algebras, slashings, J-operators and their presheaf topos", "zhakit"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::function<void()> action;
  auto on = [&](CLI::App* sub, std::function<void()> f) { sub->callback([&action, f] { action = f; }); };

  // zha
  auto* zha = app.add_subcommand("zha", "planar Heyting algebras")->require_subcommand(1);
  std::string file, file2, text, text2;
  bool no_cuts = false;
  auto* zha_from = zha->add_subcommand("from-2cg", "render a 2CG and its ZHA");
  zha_from->add_option("FILE", file)->required();
  zha_from->add_flag("--no-cuts", no_cuts, "omit the cuts induced by the question marks");
  on(zha_from, [&] {
    const TwoColumnGraph g = load_graph(file);
    const Zha h = zha_from_2cg(g);
    out << render_2cg(g) << "\n";
    std::optional<Slashing> s;
    if (!no_cuts && !g.questions().empty()) s = slashing_from_questions(g);
    out << render_zha(h, s);
    out << "elements: " << h.size() << "\n";
  });
  std::vector<int> lr;
  auto* zha_grid = zha->add_subcommand("grid", "render the full grid [00, LR]");
  zha_grid->add_option("SIZES", lr, "L R")->expected(2)->required();
  on(zha_grid, [&] {
    if (lr[0] < 0 || lr[1] < 0) throw RangeError("grid sizes must be non-negative");
    out << render_zha(Zha::grid(lr[0], lr[1]));
  });
  HostArgs eval_host;
  std::vector<std::string> operands;
  auto* zha_eval = zha->add_subcommand("eval", "evaluate meet, join, imp, neg or leq");
  eval_host.attach(zha_eval);
  zha_eval->add_option("OP", text)->required()->check(CLI::IsMember({"meet", "join", "imp", "neg", "leq"}));
  zha_eval->add_option("ARGS", operands)->required()->expected(1, 2);
  on(zha_eval, [&] {
    const Zha h = eval_host.host();
    const std::size_t want = text == "neg" ? 1 : 2;
    if (operands.size() != want) throw UsageError(text + " takes " + std::to_string(want) + " operand(s)");
    const Element x = parse_element(operands[0]);
    const Element y = want == 2 ? parse_element(operands[1]) : Element{};
    h.index_of(x);
    if (want == 2) h.index_of(y);
    if (text == "leq")
      out << (h.leq(x, y) ? "true" : "false") << "\n";
    else if (text == "neg")
      out << h.neg(x).to_string() << "\n";
    else
      out << (text == "meet" ? h.meet(x, y) : text == "join" ? h.join(x, y) : h.imp(x, y)).to_string() << "\n";
  });
  HostArgs list_host;
  auto* zha_list = zha->add_subcommand("elements", "list the elements");
  list_host.attach(zha_list);
  on(zha_list, [&] { out << join_elements(list_host.host().elements()) << "\n"; });

  // slash
  auto* slash = app.add_subcommand("slash", "slashings and question marks")->require_subcommand(1);
  auto* slash_fq = slash->add_subcommand("from-questions", "the slashing induced by a 2CG's question marks");
  slash_fq->add_option("FILE", file)->required();
  on(slash_fq, [&] {
    const TwoColumnGraph g = load_graph(file);
    const Slashing s = slashing_from_questions(g);
    out << "slashing: " << s.to_string() << "\n";
    out << "cuts: " << s.to_slash_string() << "\n\n";
    out << render_zha(s.host(), s);
  });
  auto* slash_tq = slash->add_subcommand("to-questions", "the question marks inducing a slashing");
  slash_tq->add_option("FILE", file)->required();
  slash_tq->add_option("SLASHING", text)->required();
  on(slash_tq, [&] {
    const TwoColumnGraph g = load_graph(file);
    const Slashing s = parse_slashing(zha_from_2cg(g), text);
    out << "questions: " << join_points(g.points_of(questions_from_slashing(g, s))) << "\n";
  });
  HostArgs top_host;
  auto* slash_top = slash->add_subcommand("top", "the top and region of an element");
  top_host.attach(slash_top);
  slash_top->add_option("SLASHING", text)->required();
  slash_top->add_option("ELEMENT", text2)->required();
  on(slash_top, [&] {
    const Slashing s = parse_slashing(top_host.host(), text);
    const Element x = parse_element(text2);
    s.host().index_of(x);
    out << "top: " << s.top(x).to_string() << "\n";
    out << "region: " << join_elements(s.region(x)) << "\n";
  });
  std::string format = "ascii";
  auto* slash_path = slash->add_subcommand("path", "tabulate what Q sees along a unit path");
  slash_path->add_option("FILE", file)->required();
  slash_path->add_option("PATH", text)->required();
  slash_path->add_option("--format", format)->check(CLI::IsMember({"ascii", "tsv"}));
  on(slash_path, [&] {
    RenderConfig config;
    if (format == "tsv") config.style = RenderConfig::Style::tsv;
    const std::vector<Element> path = parse_path(text);
    out << render_path_table(load_graph(file), path, config);
  });
  HostArgs rec_host;
  auto* slash_rec = slash->add_subcommand("recognize", "decide whether a table is a slash operator");
  rec_host.attach(slash_rec);
  slash_rec->add_option("TABLE", file)->required();
  on(slash_rec, [&] {
    const OperatorTable t = parse_operator_table(rec_host.host(), read_file(file));
    const SlashRecognition r = recognize_slash_operator(t);
    if (const auto* s = std::get_if<Slashing>(&r))
      out << "slash operator: " << s->to_string() << "\n";
    else
      out << "not a slash operator: " << std::get<SlashRejection>(r).describe() << "\n";
  });

  // jop
  auto* jop = app.add_subcommand("jop", "J-operators")->require_subcommand(1);
  HostArgs check_host;
  auto* jop_check = jop->add_subcommand("check", "check J1-J3 and the derived rules");
  check_host.attach(jop_check);
  jop_check->add_option("TABLE", file)->required();
  on(jop_check, [&] {
    const OperatorTable t = parse_operator_table(check_host.host(), read_file(file));
    const JVerdict v = check_j123(t);
    out << "J1-J3: " << v.describe() << "\n";
    std::vector<RuleCheck> rules = derived_rule_suite(t);
    for (RuleCheck& r : no_midway_cut_rules(t)) rules.push_back(std::move(r));
    for (const RuleCheck& r : rules) {
      out << r.name << ": " << (r.holds ? "holds" : "fails");
      if (!r.holds) out << " at " << join_elements(r.witness, ",");
      out << "\n";
    }
    if (v.ok()) {
      const IntervalPartition p = j_regions(t);
      out << "regions:";
      for (std::size_t k = 0; k < p.block_count(); ++k)
        out << " [" << p.block_min(k).to_string() << "," << p.block_max(k).to_string() << "]";
      out << "\n";
    }
  });
  HostArgs enum_host;
  std::size_t max_elements = 16;
  auto* jop_enum = jop->add_subcommand("enumerate", "every J-operator of a host, as slashings");
  enum_host.attach(jop_enum);
  jop_enum->add_option("--max-elements", max_elements, "refuse larger hosts");
  on(jop_enum, [&] {
    const std::vector<OperatorTable> js = enumerate_j_operators(enum_host.host(), max_elements);
    out << "J-operators: " << js.size() << "\n";
    for (const OperatorTable& j : js) {
      const SlashRecognition r = recognize_slash_operator(j);
      if (const auto* s = std::get_if<Slashing>(&r))
        out << s->to_string() << "\n";
      else
        out << "unrecognized: " << std::get<SlashRejection>(r).describe() << "\n";
    }
  });

  // poly
  auto* poly = app.add_subcommand("poly", "polynomial operators")->require_subcommand(1);
  HostArgs poly_host;
  bool show_table = false;
  auto* poly_check = poly->add_subcommand("check", "is a polynomial a J-operator?");
  poly_check->add_option("EXPR", text)->required();
  poly_host.attach(poly_check);
  poly_check->add_flag("--table", show_table, "also print the operator table");
  on(poly_check, [&] {
    const Zha h = poly_host.host();
    const PolyExpr e = parse_poly(text);
    const JVerdict v = is_polynomial_j(e, h);
    out << "J-operator: " << (v.ok() ? std::string("yes") : "no (" + v.describe() + ")") << "\n";
    if (show_table) out << write_operator_table(tabulate_poly(e, h));
  });
  auto* poly_table = poly->add_subcommand("table", "tabulate a polynomial");
  poly_table->add_option("EXPR", text)->required();
  poly_host.attach(poly_table);
  on(poly_table, [&] { out << write_operator_table(tabulate_poly(parse_poly(text), poly_host.host())); });
  auto* poly_fs = poly->add_subcommand("from-slashing", "a polynomial whose table is the slash operator");
  poly_fs->add_option("SLASHING", text)->required();
  poly_host.attach(poly_fs);
  on(poly_fs, [&] { out << to_string(slashing_to_polynomial(parse_slashing(poly_host.host(), text))) << "\n"; });
  auto* poly_id = poly->add_subcommand("identities", "check the meet/join identities of J_a and J^a");
  poly_host.attach(poly_id);
  on(poly_id, [&] {
    for (const FsIdentity& id : fs_identities(poly_host.host())) {
      out << id.label << " " << id.statement << ": " << (id.holds ? "holds" : "fails") << " (" << id.instances
          << " instances)";
      if (id.witness) out << " at a = " << id.witness->first.to_string() << ", b = " << id.witness->second.to_string();
      out << "\n";
    }
  });

  // cube
  auto* cube = app.add_subcommand("cube", "the and/or/implication cubes")->require_subcommand(1);
  std::string connective;
  int bound = 3;
  std::uint64_t seed = 0;
  auto* cube_report_cmd = cube->add_subcommand("report", "classes, Hasse edges and countermodels");
  cube_report_cmd->add_option("--connective", connective)->required()->check(CLI::IsMember({"and", "or", "imp"}));
  cube_report_cmd->add_option("--bound", bound, "largest l and r of the model hosts")->check(CLI::Range(0, 4));
  auto* report_seed = cube_report_cmd->add_option("--seed", seed, "shuffle the search order");
  on(cube_report_cmd, [&] {
    out << cube_report(parse_connective(connective), bound, optional_seed(report_seed, seed));
  });
  std::vector<int> pair;
  auto* cube_search = cube->add_subcommand("search", "a countermodel to node I <= node J");
  cube_search->add_option("--connective", connective)->required()->check(CLI::IsMember({"and", "or", "imp"}));
  cube_search->add_option("NODES", pair, "I J")->expected(2)->required()->check(CLI::Range(0, 7));
  cube_search->add_option("--bound", bound)->check(CLI::Range(0, 4));
  auto* search_seed = cube_search->add_option("--seed", seed);
  on(cube_search, [&] {
    const Connective c = parse_connective(connective);
    const auto m = countermodel_search(c, pair[0], pair[1], bound, optional_seed(search_seed, seed));
    if (!m) {
      out << "no countermodel within bound " << bound << "\n";
      return;
    }
    out << m->describe() << "\n";
    out << pair[0] << " = " << node_eval(CubeNode(c, pair[0]), *m).to_string() << ", " << pair[1] << " = "
        << node_eval(CubeNode(c, pair[1]), *m).to_string() << "\n";
  });

  // topos
  auto* topos = app.add_subcommand("topos", "the presheaf topos over a 2CG")->require_subcommand(1);
  auto* topos_omega = topos->add_subcommand("omega", "the subobject classifier");
  topos_omega->add_option("FILE", file)->required();
  on(topos_omega, [&] {
    const FinitePoset poset = FinitePoset::from_2cg(load_graph(file));
    const Omega om(poset);
    for (int p = 0; p < static_cast<int>(poset.size()); ++p) {
      out << "Omega(" << poset.name(p) << "):";
      for (PointSet s : om.values(p)) out << " " << poset.set_name(s);
      out << "\n";
    }
  });
  auto* topos_j = topos->add_subcommand("j", "the local operator of the 2CG's question marks");
  topos_j->add_option("FILE", file)->required();
  on(topos_j, [&] {
    const TwoColumnGraph g = load_graph(file);
    const FinitePoset poset = FinitePoset::from_2cg(g);
    const Omega om(poset);
    const TruthOperator jt = TruthOperator::from_table(g, slashing_from_questions(g).slash_operator());
    const NatTrans j = local_operator(om, jt);
    for (int p = 0; p < static_cast<int>(poset.size()); ++p) {
      out << "j(" << poset.name(p) << "):";
      for (int k = 0; k < static_cast<int>(om.values(p).size()); ++k) {
        const PointSet v = om.value(p, k), w = om.value(p, j.apply(p, k));
        if (v != w) out << " " << poset.set_name(v) << "->" << poset.set_name(w);
      }
      out << "\n";
    }
    out << "laws: " << (check_local_operator_laws(om, j).ok() ? "ok" : "fail") << "\n";
    out << "on truth values:\n" << write_operator_table(restrict_to_sub1(om, j).to_table(g));
  });
  auto* topos_closure = topos->add_subcommand("closure", "close the subterminal pile(SUB) inside pile(OF)");
  topos_closure->add_option("FILE", file)->required();
  topos_closure->add_option("--sub", text)->required();
  topos_closure->add_option("--of", text2)->required();
  on(topos_closure, [&] {
    const TwoColumnGraph g = load_graph(file);
    const Zha h = zha_from_2cg(g);
    const Element b = parse_element(text), c = parse_element(text2);
    h.index_of(b);
    h.index_of(c);
    if (!h.leq(b, c)) throw DomainError(b.to_string() + " is not below " + c.to_string());
    const FinitePoset poset = FinitePoset::from_2cg(g);
    const Presheaf host = Presheaf::subterminal(poset, pile(g, c));
    const PointSet inside = pile(g, b);
    std::vector<std::vector<bool>> members(poset.size());
    for (int p = 0; p < static_cast<int>(poset.size()); ++p)
      members[static_cast<std::size_t>(p)].assign(host.fiber_size(p), inside.contains(p));
    const Subfunctor sub(host, members);
    const Omega om(poset);
    const NatTrans j = local_operator(om, TruthOperator::from_table(g, slashing_from_questions(g).slash_operator()));
    const Subfunctor closed = closure(sub, j, om);
    const Element top = element_of_pile(g, closed.support());
    out << "closure: " << top.to_string() << " " << poset.set_name(closed.support()) << "\n";
  });
  auto* topos_sh = topos->add_subcommand("sheafify", "sheafify a presheaf for the 2CG's question marks");
  topos_sh->add_option("FILE", file)->required();
  topos_sh->add_option("PSH", file2)->required();
  on(topos_sh, [&] {
    const TwoColumnGraph g = load_graph(file);
    const FinitePoset poset = FinitePoset::from_2cg(g);
    const Presheaf c = parse_psh(poset, read_file(file2));
    out << write_psh(kan_sheafify(poset, g.questions(), c).sheaf());
  });

  std::vector<const char*> argv{"zhakit"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    if (action) action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace zhakit
