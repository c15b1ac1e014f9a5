#include "isoprod/catalog.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "isoprod/structure_file.hpp"

namespace isoprod
{

char const *to_string(EntrySource s)
{
  switch (s) {
  case EntrySource::tuples: return "tuples";
  case EntrySource::search: return "search";
  case EntrySource::type_only: break;
  }
  return "type-only";
}

namespace
{

using T = SurfaceType;

CatalogEntry type_only(std::string name, std::string group, std::size_t order, std::string sgl, long gc, long gd,
                       SurfaceType t)
{
  CatalogEntry e;
  e.name = std::move(name);
  e.expected = {std::move(group), order, std::move(sgl), gc, gd, t};
  return e;
}

std::vector<CatalogEntry> build_catalog()
{
  std::vector<CatalogEntry> c;

  CatalogEntry z3;
  z3.name = "Z3xZ3";
  z3.expected = {"(Z3)^2", 9, "<9,2>", 7, 4, T::c};
  z3.source = EntrySource::tuples;
  z3.recipe = "product(cyclic(3), cyclic(3))";
  z3.tuple_c = {"(1,1)", "(2,1)", "(1,1)", "(1,2)", "(1,1)"};
  z3.tuple_d = {"(0,2)", "(0,1)", "(1,0)", "(2,0)"};

  CatalogEntry g128;
  g128.name = "G128-36";
  g128.expected = {"G(128,36)", 128, "<128,36>", 17, 17, T::b};
  g128.source = EntrySource::tuples;
  g128.recipe = "pc([2,2,2,2,2,2,2], g1^2 = g4, g2^2 = g5, g2^g1 = g2*g3, g3^g1 = g3*g6, g3^g2 = g3*g7, "
                "g4^g2 = g4*g6, g5^g1 = g5*g7)";
  g128.tuple_c = {"g1*g2*g4*g6", "g1*g4*g5*g6", "g2*g3*g4*g7"};
  g128.tuple_d = {"g1*g2*g3*g6*g7", "g2*g5*g7", "g1*g3*g4*g7"};

  CatalogEntry z2z4;
  z2z4.name = "Z2^3xZ4";
  z2z4.expected = {"(Z2)^3 x| Z4", 32, "<32,22>", 9, 9, T::d};
  z2z4.source = EntrySource::tuples;
  z2z4.recipe = "semidirect(product(cyclic(2), cyclic(2), cyclic(2)), cyclic(4), [g1*g3, g2, g3])";
  z2z4.tuple_c = {"g1*g4^2", "g1*g2*g3*g4^2", "g2*g4", "g3*g4^3"};
  z2z4.tuple_d = {"g1*g2", "g1", "g1*g4^3", "g1*g2*g3*g4"};

  auto psl = [](std::string name, long gc, long gd, OrderType a, OrderType b) {
    CatalogEntry e;
    e.name = std::move(name);
    e.expected = {"PSL(2,7)", 168, "<168,42>", gc, gd, T::a};
    e.source = EntrySource::search;
    e.recipe = "perm((1,2,3,4,5,6,7), (2,3,5)(4,7,6), (1,8)(2,7)(3,4)(5,6))";
    e.type_c = std::move(a);
    e.type_d = std::move(b);
    return e;
  };

  // Table order: decreasing group order.
  c.push_back(type_only("PSL27xZ2", "PSL(2,7) x Z2", 336, "<336,209>", 17, 43, T::a));
  c.push_back(type_only("Z2^3xS4", "(Z2)^3 x| S4", 192, "<192,995>", 49, 9, T::a));
  c.push_back(psl("PSL27-1", 49, 8, {7, 7, 7}, {3, 3, 4}));
  c.push_back(psl("PSL27-2", 17, 22, {3, 3, 7}, {4, 4, 4}));
  c.push_back(type_only("Z2^4xD5", "(Z2)^4 x| D5", 160, "<160,234>", 5, 81, T::a));
  c.push_back(std::move(g128));
  c.push_back(type_only("S5", "S5", 120, "<120,34>", 9, 31, T::a));
  c.push_back(type_only("Z2^4xD3-phi", "(Z2)^4 x|phi D3", 96, "<96,195>", 5, 49, T::c));
  c.push_back(type_only("Z2^4xD3-psi", "(Z2)^4 x|psi D3", 96, "<96,227>", 25, 9, T::a));
  c.push_back(type_only("Z2^3xD4", "(Z2)^3 x| D4", 64, "<64,73>", 9, 17, T::a));
  c.push_back(type_only("U42", "U(4,2)", 64, "<64,138>", 9, 17, T::a));
  c.push_back(type_only("A5-1", "A5", 60, "<60,5>", 13, 11, T::a));
  c.push_back(type_only("A5-2", "A5", 60, "<60,5>", 41, 4, T::a));
  c.push_back(type_only("A5-3", "A5", 60, "<60,5>", 9, 16, T::a));
  c.push_back(type_only("A5-4", "A5", 60, "<60,5>", 5, 31, T::a));
  c.push_back(type_only("S4xZ2-1", "S4 x Z2", 48, "<48,48>", 5, 25, T::a));
  c.push_back(type_only("S4xZ2-2", "S4 x Z2", 48, "<48,48>", 9, 13, T::a));
  c.push_back(type_only("S4xZ2-3", "S4 x Z2", 48, "<48,48>", 13, 9, T::a));
  c.push_back(type_only("S4xZ2-4", "S4 x Z2", 48, "<48,48>", 3, 49, T::a));
  c.push_back(std::move(z2z4));
  c.push_back(type_only("D4xZ2^2", "D4 x (Z2)^2", 32, "<32,46>", 9, 9, T::a));
  c.push_back(type_only("Z2^4xZ2-1", "(Z2)^4 x| Z2", 32, "<32,27>", 17, 5, T::a));
  c.push_back(type_only("Z2^4xZ2-2", "(Z2)^4 x| Z2", 32, "<32,27>", 9, 9, T::a));
  c.push_back(type_only("S4-1", "S4", 24, "<24,12>", 5, 13, T::a));
  c.push_back(type_only("S4-2", "S4", 24, "<24,12>", 3, 25, T::a));
  c.push_back(type_only("D4xZ2-1", "D4 x Z2", 16, "<16,11>", 9, 5, T::a));
  c.push_back(type_only("Z2^2xZ4", "(Z2)^2 x| Z4", 16, "<16,3>", 9, 5, T::a));
  c.push_back(type_only("Z2^4", "(Z2)^4", 16, "<16,14>", 9, 5, T::a));
  c.push_back(type_only("D4xZ2-2", "D4 x Z2", 16, "<16,11>", 3, 17, T::a));
  c.push_back(std::move(z3));
  c.push_back(type_only("Z2^3-1", "(Z2)^3", 8, "<8,5>", 5, 5, T::a));
  c.push_back(type_only("Z2^3-2", "(Z2)^3", 8, "<8,5>", 3, 9, T::a));
  return c;
}

} // namespace

std::vector<CatalogEntry> const &catalog()
{
  static std::vector<CatalogEntry> const c = build_catalog();
  return c;
}

CatalogEntry const *find_entry(std::string_view name)
{
  for (auto const &e : catalog())
    if (e.name == name)
      return &e;
  return nullptr;
}

std::string cache_key(std::string_view recipe)
{
  std::uint64_t h = 1469598103934665603ULL; // FNV-1a
  for (unsigned char c : recipe) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TablePtr load_table(GroupPtr const &g, std::optional<std::filesystem::path> const &cache_dir)
{
  if (!cache_dir)
    return std::make_shared<CharacterTable const>(character_table(g));
  auto path = *cache_dir / (cache_key(g->recipe()) + ".chartab");
  if (std::ifstream in{path}) {
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      return std::make_shared<CharacterTable const>(import_table(g, buf.str()));
    } catch (std::exception const &) {
      // stale or corrupt: fall through and rewrite
    }
  }
  auto t = std::make_shared<CharacterTable const>(character_table(g));
  static std::atomic<unsigned> counter{0};
  std::filesystem::create_directories(*cache_dir);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  {
    std::ofstream out{tmp};
    out << export_table(*t);
  }
  std::filesystem::rename(tmp, path);
  return t;
}

std::vector<std::string> check_expected(SurfaceAnalysis const &a, ExpectedRow const &row)
{
  std::vector<std::string> f;
  auto expect = [&](bool ok, std::string msg) {
    if (!ok)
      f.push_back(std::move(msg));
  };
  auto const &inv = a.invariants;
  std::size_t order = a.structure.c.group->order();
  expect(order == row.order, "order " + std::to_string(order) + ", expected " + std::to_string(row.order));
  expect(a.genus_c == row.genus_c && a.genus_d == row.genus_d,
         "genera (" + std::to_string(a.genus_c) + ", " + std::to_string(a.genus_d) + "), expected (" +
           std::to_string(row.genus_c) + ", " + std::to_string(row.genus_d) + ")");
  expect(inv.chi == 2, "chi = " + std::to_string(inv.chi) + ", expected 2");
  expect(inv.e == 8, "e = " + std::to_string(inv.e) + ", expected 8");
  expect(inv.k2 == 16, "K^2 = " + std::to_string(inv.k2) + ", expected 16");
  expect(inv.q == 0, "q = " + std::to_string(inv.q) + ", expected 0");
  expect(a.z.dim == 4, "dim Z = " + std::to_string(a.z.dim) + ", expected 4");
  expect(a.classification.type == row.type, std::string("type ") + to_string(a.classification.type) +
                                              ", expected " + to_string(row.type));
  expect(a.consistent, "internal consistency checks failed");
  return f;
}

namespace
{

EntryReport run_entry(CatalogEntry const &e, CatalogOptions const &opts)
{
  EntryReport r;
  r.entry = &e;
  if (e.source == EntrySource::type_only) {
    r.status = "structure not shipped";
    // The row itself must at least be arithmetically consistent.
    long num = (e.expected.genus_c - 1) * (e.expected.genus_d - 1);
    if (num != 2 * static_cast<long>(e.expected.order))
      r.failures.push_back("row does not give chi = 2");
    return r;
  }
  try {
    BuildOptions bo;
    bo.parallel = opts.parallel;
    auto g = build_group(e.recipe, bo);
    auto table = load_table(g, opts.cache_dir);
    RamificationStructure s;
    if (e.source == EntrySource::tuples) {
      LoadedStructure loaded;
      loaded.group = g;
      auto al = generator_aliases(*g);
      auto eval = [&](std::string const &w) {
        if (w.front() == '(') {
          if (auto x = g->find(w))
            return *x;
          throw std::runtime_error("unknown element label " + w);
        }
        return evaluate_word(*g, parse_word(w), al);
      };
      for (auto const &w : e.tuple_c)
        loaded.c.push_back(eval(w));
      for (auto const &w : e.tuple_d)
        loaded.d.push_back(eval(w));
      s = validate_structure(loaded);
    } else {
      SearchLimits lim = opts.search;
      lim.parallel = opts.parallel;
      auto res = search_structures(g, e.type_c, e.type_d, lim);
      if (res.structures.empty())
        throw std::runtime_error("search found no structure of type (" + format_type(e.type_c) + ", " +
                                 format_type(e.type_d) + ")");
      r.search_total = res.total;
      auto orbits = galois_orbits(*table);
      std::map<std::vector<Index>, BroughtonTable> memo;
      auto bt = [&](SphericalSystem const &t) -> BroughtonTable const & {
        auto it = memo.find(t.entries);
        if (it == memo.end())
          it = memo.emplace(t.entries, broughton(t, *table, orbits)).first;
        return it->second;
      };
      if (lim.limit == 0 || res.total == res.structures.size())
        for (auto const &st : res.structures)
          ++r.search_types[to_string(classify_type(dim_z(bt(st.c), bt(st.d), orbits)).type)];
      s = res.structures.front();
    }
    r.analysis = analyze(s, table);
    r.failures = check_expected(*r.analysis, e.expected);
    for (auto const &[t, n] : r.search_types)
      if (t != to_string(e.expected.type))
        r.failures.push_back(std::to_string(n) + " searched structure(s) of type " + t);
    r.status = r.failures.empty() ? "ok" : "mismatch";
  } catch (std::exception const &ex) {
    r.status = "error";
    r.failures.push_back(ex.what());
  }
  return r;
}

} // namespace

std::vector<EntryReport> run_catalog(std::string_view filter, CatalogOptions const &opts)
{
  std::vector<CatalogEntry const *> picked;
  for (auto const &e : catalog())
    if (filter.empty() || e.name == filter)
      picked.push_back(&e);
  std::vector<EntryReport> out(picked.size());
  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < picked.size(); ++i)
      out[i] = run_entry(*picked[i], opts);
  } else {
    for (std::size_t i = 0; i < picked.size(); ++i)
      out[i] = run_entry(*picked[i], opts);
  }
  return out;
}

} // namespace isoprod
