#pragma once

// Built-in catalog: every row of the classification table of regular
// surfaces with chi = 2, five of them backed by a structure (explicit tuples
// or a bounded search), the rest recorded at type level only.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "isoprod/surface.hpp"

namespace isoprod
{

struct ExpectedRow
{
  std::string group;        // display name
  std::size_t order = 0;
  std::string small_group;  // "<order,id>" in the small groups library
  long genus_c = 0;
  long genus_d = 0;
  SurfaceType type = SurfaceType::a;
};

enum class EntrySource
{
  tuples,    // explicit generating vectors
  search,    // first canonical structure of the given types
  type_only  // no structure shipped
};

char const *to_string(EntrySource s);

struct CatalogEntry
{
  std::string name;
  ExpectedRow expected;
  EntrySource source = EntrySource::type_only;
  std::string recipe;                        // empty for type-only rows
  std::vector<std::string> tuple_c, tuple_d; // words or "(..)" labels
  OrderType type_c, type_d;                  // search entries
};

std::vector<CatalogEntry> const &catalog();
// nullptr when absent.
CatalogEntry const *find_entry(std::string_view name);

// Character table through an optional on-disk cache keyed by the recipe.
// Cached tables are re-verified on import; a corrupt cache file is
// recomputed and overwritten.
TablePtr load_table(GroupPtr const &g, std::optional<std::filesystem::path> const &cache_dir);
std::string cache_key(std::string_view recipe);

struct CatalogOptions
{
  bool parallel = true;
  std::optional<std::filesystem::path> cache_dir;
  SearchLimits search;
};

struct EntryReport
{
  CatalogEntry const *entry = nullptr;
  std::string status; // "ok", "mismatch", "error", "structure not shipped"
  std::optional<SurfaceAnalysis> analysis;
  std::size_t search_total = 0;                   // search entries: all canonical structures
  std::map<std::string, std::size_t> search_types; // type -> count over those structures
  std::vector<std::string> failures;              // expectation mismatches and errors
};

// Entries whose name equals `filter` (all when empty), in catalog order.
// Failures are collected per entry, never thrown.
std::vector<EntryReport> run_catalog(std::string_view filter, CatalogOptions const &opts = {});

// Compares an analysis with a table row; returns the mismatches.
std::vector<std::string> check_expected(SurfaceAnalysis const &a, ExpectedRow const &row);

} // namespace isoprod
