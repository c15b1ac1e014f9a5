#pragma once

// Plain-text structure files: a group recipe, optional aliases, two tuples
// (or two types for a search) and optional expectations.  See
// docs/file-format.md for the grammar.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "isoprod/groups.hpp"
#include "isoprod/ramification.hpp"
#include "isoprod/surface.hpp"

namespace isoprod
{

// A piece of the file with its 0-based offset, kept for diagnostics.
struct Located
{
  std::string text;
  std::size_t offset = 0;
};

struct StructureFile
{
  std::string source;
  std::optional<std::string> name;
  Located group;
  std::vector<std::pair<Located, Located>> aliases; // name, definition
  std::optional<std::vector<Located>> tuple_c;
  std::optional<std::vector<Located>> tuple_d;
  std::optional<OrderType> type_c;
  std::optional<OrderType> type_d;
  std::optional<std::pair<long, long>> expect_genus;
  std::optional<SurfaceType> expect_type;
};

// Throws ParseError carrying line and column; what() reads "line:col: message".
StructureFile parse_structure_file(std::string_view text);

struct LoadedStructure
{
  GroupPtr group;
  AliasMap aliases;
  std::vector<Index> c; // empty when the file has no tuple C
  std::vector<Index> d;
};

// Builds the group and evaluates aliases and tuple entries.  Entries are words
// in the aliases (g1, g2, ... are predefined) or element labels in
// parentheses such as "(1,2)".  Errors are ParseErrors pointing into the file.
LoadedStructure resolve_structure(StructureFile const &f, BuildOptions const &opts = {});

// validate_spherical on both tuples (named "tuple C", "tuple D") plus the
// disjointness check.  Throws ValidationError.
RamificationStructure validate_structure(LoadedStructure const &s);

// Shortest positive word in the group's generators, powers collapsed:
// "g1*g4^2", "id" for the identity.
std::vector<std::string> element_words(FiniteGroup const &g);

// Structure file text that parses back to `s`.
std::string write_structure_file(RamificationStructure const &s, std::string const &name = {});

// "line:col" of a 0-based offset in `text`.
std::pair<int, int> line_column(std::string_view text, std::size_t offset);

} // namespace isoprod
