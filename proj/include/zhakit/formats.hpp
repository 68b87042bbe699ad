#pragma once

// Line-oriented text formats: `.2cg` graphs, operator tables, `.psh` presheaves.

#include <filesystem>
#include <string>
#include <string_view>

#include "zhakit/lattice.hpp"
#include "zhakit/slashing.hpp"

namespace zhakit {

class FinitePoset;
class Presheaf;

/// `left <l>`, `right <r>`, `arrow <src> <dst>`, `questions <tok>...`; `#` starts a comment.
TwoColumnGraph parse_2cg(std::string_view text);
std::string write_2cg(const TwoColumnGraph& graph);

/// One `<ab> -> <cd>` line per element, any order; every element exactly once.
OperatorTable parse_operator_table(const Zha& host, std::string_view text);
/// Sorted by source element.
std::string write_operator_table(const OperatorTable& table);

/// `point <name>: <elem> ...` lines, then `map <p> -> <q>: <x>-><y>, ...` lines
/// for the covering edges of the poset.
Presheaf parse_psh(const FinitePoset& poset, std::string_view text);
std::string write_psh(const Presheaf& presheaf);

std::string read_file(const std::filesystem::path& path);

}  // namespace zhakit
