#include "isoprod/report.hpp"

#include <sstream>

namespace isoprod
{

using nlohmann::json;

namespace
{

json labels(FiniteGroup const &g, std::vector<Index> const &xs)
{
  json out = json::array();
  for (Index x : xs)
    out.push_back(g.label(x));
  return out;
}

json system_json(SphericalSystem const &t, long genus)
{
  return {{"entries", labels(*t.group, t.entries)}, {"type", format_type(t.type())}, {"genus", genus}};
}

json curve_json(FiniteGroup const &q, QuotientCurve const &c)
{
  return {{"entries", labels(q, c.entries)},
          {"dropped", c.dropped},
          {"type", c.entries.size() < 2 ? "[]" : format_type(c.type)},
          {"genus", c.genus}};
}

std::string join(std::vector<std::string> const &xs, char const *sep)
{
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i)
    s += (i ? sep : "") + xs[i];
  return s;
}

std::string tuple_text(SphericalSystem const &t)
{
  std::vector<std::string> xs;
  for (Index x : t.entries)
    xs.push_back(t.group->label(x));
  return join(xs, " ");
}

template <class T> std::string list(std::vector<T> const &xs, T shift = 0)
{
  std::vector<std::string> s;
  for (auto const &x : xs)
    s.push_back(std::to_string(x + shift));
  return "(" + join(s, ", ") + ")";
}

} // namespace

json analysis_json(SurfaceAnalysis const &a)
{
  auto const &g = *a.structure.c.group;
  auto const &inv = a.invariants;
  json j;
  j["group"] = {{"recipe", g.recipe()}, {"order", g.order()}, {"description", describe_group(g)}};
  j["C"] = system_json(a.structure.c, a.genus_c);
  j["D"] = system_json(a.structure.d, a.genus_d);
  j["invariants"] = {{"chi", inv.chi}, {"e", inv.e},   {"K2", inv.k2},   {"q", inv.q},
                     {"pg", inv.pg},   {"h11", inv.h11}, {"higher_product", inv.higher_product},
                     {"hodge_diamond", inv.diamond}};
  json orbits = json::array();
  for (std::size_t j2 = 0; j2 < a.orbits.size(); ++j2) {
    auto const &o = a.orbits[j2];
    orbits.push_back({{"rows", o.constituents},
                      {"degree", o.degree},
                      {"field_degree", o.field_degree},
                      {"schur_index", o.schur_index},
                      {"schur_basis", to_string(o.schur_basis)},
                      {"indicator", o.indicator},
                      {"n_C", a.broughton_c.rational[j2]},
                      {"n_D", a.broughton_d.rational[j2]}});
  }
  j["orbits"] = orbits;
  j["broughton"] = {{"C", a.broughton_c.complex}, {"D", a.broughton_d.complex}};
  json contribs = json::array();
  for (auto const &c : a.z.contributions)
    contribs.push_back({{"orbit", c.orbit},
                        {"n_C", c.n_c},
                        {"n_D", c.n_d},
                        {"tensor_trivial", c.tensor_trivial},
                        {"contribution", c.contribution()}});
  j["Z"] = {{"dim", a.z.dim}, {"contributions", contribs}};
  j["type"] = to_string(a.classification.type);
  j["diagnosis"] = a.classification.diagnosis;
  json qs = json::array();
  for (auto const &q : a.quotients)
    qs.push_back({{"orbit", q.orbit},
                  {"kernel", labels(g, q.kernel.generators)},
                  {"kernel_order", q.kernel.order()},
                  {"quotient", q.quotient_name},
                  {"quotient_order", q.quotient->order()},
                  {"quaternion", q.quotient_is_q8},
                  {"cyclic", q.quotient_cyclic},
                  {"C", curve_json(*q.quotient, q.c)},
                  {"D", curve_json(*q.quotient, q.d)},
                  {"n_C", q.quotient_n_c},
                  {"n_D", q.quotient_n_d},
                  {"consistent", q.consistent}});
  j["quotients"] = qs;
  if (a.picard)
    j["picard"] = {{"exact", a.picard->exact}, {"values", a.picard->values}, {"reason", a.picard->reason}};
  else
    j["picard"] = nullptr;
  j["consistent"] = a.consistent;
  j["notes"] = a.notes;
  return j;
}

std::string analysis_text(SurfaceAnalysis const &a)
{
  auto const &g = *a.structure.c.group;
  auto const &inv = a.invariants;
  std::ostringstream os;
  os << "group: " << describe_group(g) << " (order " << g.order() << ")\n";
  os << "C: " << format_type(a.structure.c.type()) << " genus " << a.genus_c << ": " << tuple_text(a.structure.c)
     << "\n";
  os << "D: " << format_type(a.structure.d.type()) << " genus " << a.genus_d << ": " << tuple_text(a.structure.d)
     << "\n";
  os << "chi: " << inv.chi << "  e: " << inv.e << "  K^2: " << inv.k2 << "  q: " << inv.q << "  pg: " << inv.pg
     << "  h11: " << inv.h11 << "\n";
  os << "Broughton C: " << list(a.broughton_c.complex) << "\n";
  os << "Broughton D: " << list(a.broughton_d.complex) << "\n";
  os << "dim Z: " << a.z.dim << "\n";
  for (auto const &c : a.z.contributions) {
    auto const &o = a.orbits[c.orbit];
    os << "  orbit " << c.orbit + 1 << " rows " << list(o.constituents, std::size_t{1}) << ": n_C=" << c.n_c << " n_D=" << c.n_d
       << " s=" << c.schur_index << " [K:Q]=" << c.field_degree << " -> " << c.contribution() << "\n";
  }
  os << "type: " << to_string(a.classification.type) << "\n";
  if (!a.classification.diagnosis.empty())
    os << "  " << a.classification.diagnosis << "\n";
  for (auto const &q : a.quotients) {
    os << "quotient for orbit " << q.orbit + 1 << ": G/H = " << q.quotient_name << ", |H| = " << q.kernel.order()
       << "\n";
    for (auto const &[name, c] : {std::pair{"C", &q.c}, std::pair{"D", &q.d}}) {
      os << "  " << name << "/H: genus " << c->genus;
      if (c->entries.size() >= 2)
        os << " type " << format_type(c->type);
      os << "\n";
      if (!c->dropped.empty())
        os << "  dropped " << name << " entries at positions " << list(c->dropped, std::size_t{1}) << " (trivial in G/H)\n";
    }
    os << "  multiplicities on the quotient: n_C=" << q.quotient_n_c << " n_D=" << q.quotient_n_d
       << (q.consistent ? "" : "  INCONSISTENT") << "\n";
  }
  if (a.picard) {
    os << "Picard number: ";
    if (a.picard->exact)
      os << a.picard->values.front();
    else
      os << "one of " << list(a.picard->values);
    os << "\n  " << a.picard->reason << "\n";
  }
  os << "consistent: " << (a.consistent ? "yes" : "no") << "\n";
  for (auto const &n : a.notes)
    os << "note: " << n << "\n";
  return os.str();
}

json catalog_json(std::vector<EntryReport> const &reports)
{
  json entries = json::array();
  std::size_t ok = 0, failed = 0, unshipped = 0;
  for (auto const &r : reports) {
    auto const &e = *r.entry;
    auto const &x = e.expected;
    json j = {{"name", e.name},
              {"source", to_string(e.source)},
              {"status", r.status},
              {"expected",
               {{"group", x.group},
                {"order", x.order},
                {"small_group", x.small_group},
                {"genus_C", x.genus_c},
                {"genus_D", x.genus_d},
                {"type", to_string(x.type)}}},
              {"failures", r.failures}};
    if (e.source == EntrySource::search) {
      j["search"] = {{"type_C", format_type(e.type_c)},
                     {"type_D", format_type(e.type_d)},
                     {"structures", r.search_total},
                     {"types", r.search_types}};
    }
    j["analysis"] = r.analysis ? analysis_json(*r.analysis) : json(nullptr);
    entries.push_back(std::move(j));
    if (r.status == "structure not shipped")
      ++unshipped;
    (r.failures.empty() ? ok : failed) += r.status != "structure not shipped";
  }
  return {{"format", "isoprod-catalog"},
          {"version", 1},
          {"summary", {{"entries", reports.size()}, {"ok", ok}, {"failed", failed}, {"type_only", unshipped}}},
          {"entries", entries}};
}

std::string catalog_text(std::vector<EntryReport> const &reports)
{
  std::ostringstream os;
  for (auto const &r : reports) {
    auto const &e = *r.entry;
    auto const &x = e.expected;
    os << e.name << ": " << x.group << " " << x.small_group << " g=(" << x.genus_c << ", " << x.genus_d << ") type "
       << to_string(x.type) << ": " << r.status;
    if (r.analysis)
      os << " [dim Z: " << r.analysis->z.dim << ", type: " << to_string(r.analysis->classification.type) << "]";
    if (e.source == EntrySource::search) {
      os << " [" << r.search_total << " structures";
      for (auto const &[t, n] : r.search_types)
        os << ", " << n << " of type " << t;
      os << "]";
    }
    os << "\n";
    for (auto const &f : r.failures)
      os << "  " << f << "\n";
  }
  return os.str();
}

json table_json(CharacterTable const &t)
{
  auto const &g = *t.group();
  json classes = json::array();
  for (auto const &c : g.classes())
    classes.push_back({{"representative", g.label(c.representative)},
                       {"size", c.members.size()},
                       {"order", c.element_order}});
  json rows = json::array();
  for (auto const &chi : t.characters()) {
    json r = json::array();
    for (auto const &v : chi.values)
      r.push_back(v.to_string());
    rows.push_back(r);
  }
  json orbits = json::array();
  for (auto const &o : galois_orbits(t))
    orbits.push_back({{"rows", o.constituents},
                      {"field_degree", o.field_degree},
                      {"schur_index", o.schur_index},
                      {"schur_basis", to_string(o.schur_basis)},
                      {"indicator", o.indicator}});
  return {{"group", {{"recipe", g.recipe()}, {"order", g.order()}, {"description", describe_group(g)}}},
          {"classes", classes},
          {"characters", rows},
          {"orbits", orbits}};
}

std::string table_text(CharacterTable const &t)
{
  auto const &g = *t.group();
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> head{""}, sizes{""};
  for (auto const &c : g.classes()) {
    head.push_back(std::to_string(c.element_order) + (c.representative ? "" : "(id)"));
    sizes.push_back(std::to_string(c.members.size()));
  }
  cells.push_back(head);
  cells.push_back(sizes);
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::vector<std::string> row{"X." + std::to_string(i + 1)};
    for (auto const &v : t[i].values)
      row.push_back(v.to_string());
    cells.push_back(row);
  }
  std::vector<std::size_t> width(head.size(), 0);
  for (auto const &r : cells)
    for (std::size_t k = 0; k < r.size(); ++k)
      width[k] = std::max(width[k], r[k].size());
  std::ostringstream os;
  os << describe_group(g) << ", order " << g.order() << ", " << g.class_count() << " classes\n";
  for (auto const &r : cells) {
    for (std::size_t k = 0; k < r.size(); ++k)
      os << (k ? "  " : "") << std::string(width[k] - r[k].size(), ' ') << r[k];
    os << "\n";
  }
  return os.str();
}

} // namespace isoprod
