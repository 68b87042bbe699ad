#pragma once

// Text rendering of ZHAs, graphs and path tables, and the command-line driver.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zhakit/slashing.hpp"

namespace zhakit {

struct RenderConfig {
  enum class Style { ascii, tsv };
  Style style = Style::ascii;
  bool show_cuts = true;
  bool show_questions = true;
};

/// Lozenge layout: element ab sits in column b-a of row a+b, top row first.
/// Spacer rows carry '/' on cut left-steps and '\' on cut right-steps.
std::string render_zha(const Zha& zha, const std::optional<Slashing>& slashing = std::nullopt,
                       const RenderConfig& config = {});

/// The two columns top-down with human glyphs, then arrows and question marks.
std::string render_2cg(const TwoColumnGraph& graph, const RenderConfig& config = {});

/// One row per step of a bottom-to-top unit path, top step first: the point the
/// step adds, whether it is a question mark, the ~_Q verdict, the ~_L or ~_R
/// verdict, and the slashing fragment. DomainError on an invalid path.
std::string render_path_table(const TwoColumnGraph& graph, std::span<const Element> path,
                              const RenderConfig& config = {});

/// Parses "00,01,02" or "00 01 02".
std::vector<Element> parse_path(std::string_view text);

/// Runs the command line. Exit status 0 on success, 1 on an input or domain
/// error (one line on `err`), 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zhakit
