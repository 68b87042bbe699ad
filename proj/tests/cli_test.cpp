#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "zhakit/cli.hpp"

using namespace zhakit;
using testing::el;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  for (auto& a : args)
    if (a.starts_with("@")) a = testing::fixture(a.substr(1));
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

bool ascii_only(const std::string& s) {
  for (char c : s)
    if (static_cast<unsigned char>(c) >= 128) return false;
  return true;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

// `@name` expands to a fixture path. Set ZHAKIT_UPDATE_GOLDEN=1 to rewrite.
const std::vector<std::pair<std::string, std::vector<std::string>>> golden_cases = {
    {"zha_from_2cg", {"zha", "from-2cg", "@running.2cg"}},
    {"zha_from_2cg_plain", {"zha", "from-2cg", "@sub1_example.2cg", "--no-cuts"}},
    {"zha_grid", {"zha", "grid", "2", "3"}},
    {"zha_eval_imp", {"zha", "eval", "--2cg", "@running.2cg", "imp", "24", "15"}},
    {"zha_elements", {"zha", "elements", "--grid", "1", "2"}},
    {"slash_from_questions", {"slash", "from-questions", "@running.2cg"}},
    {"slash_to_questions", {"slash", "to-questions", "@sub1_example.2cg", "(0|123, 01|23)"}},
    {"slash_top", {"slash", "top", "--2cg", "@running.2cg", "(0|1234, 0123|45|6)", "22"}},
    {"slash_path", {"slash", "path", "@running.2cg", "00,01,11,12,22,23,24,34,35,36,46"}},
    {"slash_path_tsv", {"slash", "path", "@running.2cg", "00 01 11 12 22 23 24 34 35 36 46", "--format", "tsv"}},
    {"jop_enumerate", {"jop", "enumerate", "--grid", "1", "1"}},
    {"poly_check_yes", {"poly", "check", "(v 22)", "--grid", "4", "4"}},
    {"poly_check_no", {"poly", "check", "P&22", "--grid", "4", "4"}},
    {"poly_identities", {"poly", "identities", "--grid", "2", "2"}},
    {"cube_report_and", {"cube", "report", "--connective", "and", "--bound", "2"}},
    {"topos_omega", {"topos", "omega", "@marked.2cg"}},
    {"topos_j", {"topos", "j", "@marked.2cg"}},
    {"topos_closure", {"topos", "closure", "@marked.2cg", "--sub", "21", "--of", "33"}},
    {"topos_sheafify", {"topos", "sheafify", "@marked.2cg", "@marked.psh"}},
};

}  // namespace

TEST_CASE("golden outputs") {
  const bool update = std::getenv("ZHAKIT_UPDATE_GOLDEN") != nullptr;
  for (const auto& [name, args] : golden_cases) {
    CAPTURE(name);
    const Run r = run(args);
    CHECK(r.status == 0);
    CHECK(r.err.empty());
    CHECK(ascii_only(r.out));
    CHECK(run(args).out == r.out);
    const std::string path = std::string(ZHAKIT_GOLDEN) + "/" + name + ".txt";
    if (update) {
      std::ofstream(path, std::ios::binary) << r.out;
      continue;
    }
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in, "missing golden file " << path);
    std::ostringstream want;
    want << in.rdbuf();
    CHECK(r.out == want.str());
  }
}

TEST_CASE("exit statuses") {
  CHECK(run({"--help"}).status == 0);
  CHECK(run({"zha", "--help"}).status == 0);
  CHECK(run({"bogus"}).status == 2);
  CHECK(run({}).status == 2);
  CHECK(run({"zha", "elements"}).status == 2);  // no host
  CHECK(run({"zha", "elements", "--grid", "1", "1", "--2cg", "@running.2cg"}).status == 2);
  CHECK(run({"cube", "report", "--connective", "and", "--bound", "9"}).status == 2);

  const Run missing = run({"zha", "from-2cg", "/nonexistent/x.2cg"});
  CHECK(missing.status == 1);
  CHECK(missing.out.empty());
  CHECK(count_lines(missing.err) == 1);
  CHECK(missing.err.starts_with("error: "));
  CHECK(run({"slash", "path", "@running.2cg", "00,10"}).status == 1);
  CHECK(run({"zha", "eval", "meet", "33", "00", "--grid", "2", "2"}).status == 1);
  CHECK(run({"poly", "check", "P &&", "--grid", "2", "2"}).status == 1);
}

TEST_CASE("the running path table") {
  const Run r = run({"slash", "path", "@running.2cg", "00,01,11,12,22,23,24,34,35,36,46"});
  REQUIRE(r.status == 0);
  std::istringstream lines(r.out);
  std::vector<std::string> rows;
  for (std::string line; std::getline(lines, line);) rows.push_back(line);
  REQUIRE(rows.size() == 11);  // header and ten steps
  CHECK(rows[1].starts_with("36 -> 46"));
  CHECK(rows[1].find("3 ~_L 4") != std::string::npos);
  CHECK(rows[2].starts_with("35 -> 36"));
  CHECK(rows[2].find("5\\6") != std::string::npos);
  CHECK(rows[9].find("1/0") != std::string::npos);

  const TwoColumnGraph one(0, 1);
  const std::vector<Element> path{el("00"), el("01")};
  CHECK(count_lines(render_path_table(one, path)) == 2);
  CHECK_THROWS_AS(render_path_table(one, std::vector<Element>{el("00")}), DomainError);
  CHECK_THROWS_AS(parse_path(""), ParseError);
  CHECK(parse_path("00, 01 ,11") == std::vector<Element>{el("00"), el("01"), el("11")});
}

TEST_CASE("ZHA renders") {
  const std::string one = render_zha(Zha::grid(0, 0));
  CHECK(one == "00\n");

  const Zha square = Zha::grid(2, 2);
  const std::string g = render_zha(square);
  std::size_t cells = 0;
  for (const Element& x : square.elements()) cells += g.find(x.to_string()) != std::string::npos;
  CHECK(cells == 9);
  CHECK(g.find('/') == std::string::npos);

  // The running slashing cuts one left step and two right steps; each run of
  // cuts shows up as a diagonal of glyphs.
  const TwoColumnGraph running = testing::load_fixture("running.2cg");
  const Zha h = zha_from_2cg(running);
  const std::string r = render_zha(h, slashing_from_questions(running));
  CHECK(r.find('/') != std::string::npos);
  CHECK(r.find('\\') != std::string::npos);
  CHECK(ascii_only(r));
  RenderConfig plain;
  plain.show_cuts = false;
  const std::string bare = render_zha(h, slashing_from_questions(running), plain);
  CHECK(bare.find('/') == std::string::npos);
  CHECK(bare.find('\\') == std::string::npos);
  for (const Element& x : h.elements()) CHECK(bare.find(x.to_string()) != std::string::npos);
}

TEST_CASE("every subcommand's output is ASCII and deterministic") {
  std::mt19937_64 rng(2);
  for (int round = 0; round < 30; ++round) {
    const TwoColumnGraph g = testing::random_2cg(rng, 3, 3, true);
    const Zha h = zha_from_2cg(g);
    const Slashing s = slashing_from_questions(g);
    CHECK(ascii_only(render_zha(h, s)));
    CHECK(ascii_only(render_2cg(g)));
    CHECK(render_zha(h, s) == render_zha(h, s));
  }
}
