#pragma once

// JSON and plain-text renderings of analyses, catalog runs and tables.
// Output is deterministic: no timings, no thread counts.

#include <string>
#include <vector>

#include <json.hpp>

#include "isoprod/catalog.hpp"
#include "isoprod/surface.hpp"

namespace isoprod
{

nlohmann::json analysis_json(SurfaceAnalysis const &a);
std::string analysis_text(SurfaceAnalysis const &a);

nlohmann::json catalog_json(std::vector<EntryReport> const &reports);
std::string catalog_text(std::vector<EntryReport> const &reports);

nlohmann::json table_json(CharacterTable const &t);
std::string table_text(CharacterTable const &t);

} // namespace isoprod
