// isoprod: command-line front end.
//
// Exit status: 0 success, 1 validation or assertion failure or refused
// search, 2 usage, parse or input errors.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "isoprod/catalog.hpp"
#include "isoprod/report.hpp"
#include "isoprod/structure_file.hpp"

using namespace isoprod;

namespace
{

struct Failure
{
  int code;
  std::string message;
};

std::string read_file(std::string const &path)
{
  std::ifstream in{path};
  if (!in)
    throw Failure{2, "cannot read " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<std::filesystem::path> cache_dir(std::string const &opt)
{
  if (!opt.empty())
    return opt;
  if (char const *env = std::getenv("ISOPROD_CACHE"); env && *env)
    return std::filesystem::path{env};
  return std::nullopt;
}

struct Loaded
{
  StructureFile file;
  LoadedStructure structure;
};

Loaded load(std::string const &path, bool parallel)
{
  auto text = read_file(path);
  Loaded l;
  try {
    l.file = parse_structure_file(text);
    BuildOptions bo;
    bo.parallel = parallel;
    l.structure = resolve_structure(l.file, bo);
  } catch (ParseError const &e) {
    throw Failure{2, path + ":" + e.what()};
  } catch (GroupError const &e) {
    throw Failure{2, path + ": group: " + e.what()};
  }
  return l;
}

int run_analyze(std::string const &path, bool json, bool parallel, std::string const &cache)
{
  auto l = load(path, parallel);
  if (!l.file.tuple_c || !l.file.tuple_d)
    throw Failure{2, path + ": analyze needs both tuples (use 'search' for type-only files)"};
  RamificationStructure s;
  try {
    s = validate_structure(l.structure);
  } catch (ValidationError const &e) {
    throw Failure{1, path + ": " + e.what()};
  }
  auto a = analyze(s, load_table(s.c.group, cache_dir(cache)));
  if (json)
    std::cout << analysis_json(a).dump(2) << "\n";
  else
    std::cout << analysis_text(a);

  int status = a.consistent ? 0 : 1;
  if (auto g = l.file.expect_genus; g && (g->first != a.genus_c || g->second != a.genus_d)) {
    std::cerr << path << ": expected genera (" << g->first << ", " << g->second << "), got (" << a.genus_c << ", "
              << a.genus_d << ")\n";
    status = 1;
  }
  if (auto t = l.file.expect_type; t && *t != a.classification.type) {
    std::cerr << path << ": expected type " << to_string(*t) << ", got " << to_string(a.classification.type) << "\n";
    status = 1;
  }
  return status;
}

int run_validate(std::string const &path, bool parallel)
{
  auto l = load(path, parallel);
  if (!l.file.tuple_c || !l.file.tuple_d)
    throw Failure{2, path + ": validate needs both tuples"};
  try {
    auto s = validate_structure(l.structure);
    std::cout << path << ": ok, " << describe_group(*s.c.group) << ", C " << format_type(s.c.type()) << " genus "
              << genus(s.c) << ", D " << format_type(s.d.type()) << " genus " << genus(s.d) << "\n";
  } catch (ValidationError const &e) {
    throw Failure{1, path + ": " + e.what()};
  }
  return 0;
}

int run_search(std::string const &path, SearchLimits lim, bool json, bool parallel)
{
  auto l = load(path, parallel);
  auto const &f = l.file;
  OrderType tc, td;
  if (f.type_c && f.type_d) {
    tc = *f.type_c;
    td = *f.type_d;
  } else if (f.tuple_c && f.tuple_d) {
    tc = SphericalSystem{l.structure.group, l.structure.c}.type();
    td = SphericalSystem{l.structure.group, l.structure.d}.type();
  } else {
    throw Failure{2, path + ": search needs 'type C' and 'type D'"};
  }
  lim.parallel = parallel;
  SearchResult r;
  try {
    r = search_structures(l.structure.group, tc, td, lim);
  } catch (SearchError const &e) {
    throw Failure{1, path + ": " + e.what()};
  }
  if (json) {
    nlohmann::json out = {{"type_C", format_type(tc)}, {"type_D", format_type(td)}, {"total", r.total}};
    nlohmann::json list = nlohmann::json::array();
    for (auto const &s : r.structures) {
      nlohmann::json c, d;
      for (Index x : s.c.entries)
        c.push_back(s.c.group->label(x));
      for (Index x : s.d.entries)
        d.push_back(s.d.group->label(x));
      list.push_back({{"C", c}, {"D", d}});
    }
    out["structures"] = list;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << r.total << " structure(s) of type (" << format_type(tc) << ", " << format_type(td)
              << ") up to simultaneous conjugation\n";
    for (auto const &s : r.structures) {
      std::cout << "C:";
      for (Index x : s.c.entries)
        std::cout << " " << s.c.group->label(x);
      std::cout << "  D:";
      for (Index x : s.d.entries)
        std::cout << " " << s.d.group->label(x);
      std::cout << "\n";
    }
  }
  return 0;
}

GroupPtr group_from(std::string const &arg, bool parallel)
{
  BuildOptions bo;
  bo.parallel = parallel;
  if (auto const *e = find_entry(arg); e && !e->recipe.empty())
    return build_group(e->recipe, bo);
  if (std::filesystem::is_regular_file(arg)) {
    auto l = load(arg, parallel);
    return l.structure.group;
  }
  try {
    return build_group(arg, bo);
  } catch (ParseError const &e) {
    throw Failure{2, std::string("recipe: ") + e.what()};
  } catch (GroupError const &e) {
    throw Failure{2, std::string("group: ") + e.what()};
  }
}

int run_chartab(std::string const &arg, bool json, bool parallel, std::string const &cache)
{
  auto g = group_from(arg, parallel);
  auto t = load_table(g, cache_dir(cache));
  if (json)
    std::cout << table_json(*t).dump(2) << "\n";
  else
    std::cout << table_text(*t);
  return 0;
}

int run_catalog_cmd(std::string const &entry, bool assert_rows, bool json, bool parallel, std::string const &cache,
                    bool list)
{
  if (list) {
    for (auto const &e : catalog())
      std::cout << e.name << "  " << e.expected.group << "  " << to_string(e.source) << "\n";
    return 0;
  }
  if (!entry.empty() && !find_entry(entry))
    throw Failure{2, "no catalog entry named '" + entry + "'"};
  CatalogOptions opts;
  opts.parallel = parallel;
  opts.cache_dir = cache_dir(cache);
  auto reports = run_catalog(entry, opts);
  if (json)
    std::cout << catalog_json(reports).dump(2) << "\n";
  else
    std::cout << catalog_text(reports);
  if (assert_rows)
    for (auto const &r : reports)
      if (!r.failures.empty())
        return 1;
  return 0;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Regular product-quotient surfaces: character tables, ramification structures, Picard data"};
  app.require_subcommand(1);
  int threads = 0;
  std::string cache;
  app.add_option("--threads", threads, "OpenMP threads; 1 runs the serial kernels")->check(CLI::NonNegativeNumber);
  app.add_option("--cache", cache, "character table cache directory (default: $ISOPROD_CACHE)");

  std::string file;
  bool json = false;

  auto *an = app.add_subcommand("analyze", "analyze a structure file");
  an->add_option("file", file)->required();
  an->add_flag("--json", json);

  auto *va = app.add_subcommand("validate", "check a structure file's tuples");
  va->add_option("file", file)->required();

  SearchLimits lim;
  auto *se = app.add_subcommand("search", "enumerate structures of the file's types up to conjugation");
  se->add_option("file", file)->required();
  se->add_option("--bound", lim.candidate_bound, "refuse when the candidate estimate exceeds this");
  se->add_option("--limit", lim.limit, "print at most this many structures (0: all)");
  se->add_flag("--json", json);

  std::string group_arg;
  auto *ct = app.add_subcommand("chartab", "character table of a group");
  ct->add_option("group", group_arg, "structure file, catalog entry name or group recipe")->required();
  ct->add_flag("--json", json);

  std::string entry;
  bool assert_rows = false, list = false;
  auto *ca = app.add_subcommand("catalog", "run the built-in catalog");
  ca->add_option("--entry", entry, "run one entry");
  ca->add_flag("--assert", assert_rows, "exit 1 when an entry disagrees with its expected row");
  ca->add_flag("--list", list, "list entry names");
  ca->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (threads > 0)
    omp_set_num_threads(threads);
  bool parallel = threads != 1;

  try {
    if (*an)
      return run_analyze(file, json, parallel, cache);
    if (*va)
      return run_validate(file, parallel);
    if (*se)
      return run_search(file, lim, json, parallel);
    if (*ct)
      return run_chartab(group_arg, json, parallel, cache);
    if (*ca)
      return run_catalog_cmd(entry, assert_rows, json, parallel, cache, list);
  } catch (Failure const &f) {
    std::cerr << "isoprod: " << f.message << "\n";
    return f.code;
  } catch (std::exception const &e) {
    std::cerr << "isoprod: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
