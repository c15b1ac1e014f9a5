#include "isoprod/surface.hpp"

#include <map>
#include <stdexcept>

namespace isoprod
{

BroughtonTable broughton(SphericalSystem const &t, CharacterTable const &table,
                         std::vector<RationalCharacter> const &orbits)
{
  auto const &g = *t.group;
  if (table.group().get() != t.group.get())
    throw std::invalid_argument("character table belongs to a different group");
  long r = static_cast<long>(t.entries.size());
  std::size_t m = table.size();

  // l_g(rho_i) only depends on the class of g.
  std::map<std::size_t, std::vector<long>> restriction;
  for (Index x : t.entries) {
    auto [it, fresh] = restriction.try_emplace(g.class_of(x));
    if (fresh)
      for (std::size_t i = 0; i < m; ++i)
        it->second.push_back(trivial_restriction_multiplicity(table[i], x));
  }

  BroughtonTable out;
  out.complex.assign(m, 0);
  for (std::size_t i = 1; i < m; ++i) {
    long n = table[i].degree() * (r - 2);
    for (Index x : t.entries)
      n -= restriction[g.class_of(x)][i];
    if (n < 0)
      throw std::logic_error("negative Broughton multiplicity for row " + std::to_string(i));
    out.complex[i] = n;
  }
  for (auto const &o : orbits) {
    long n = out.complex[o.constituents[0]];
    for (auto i : o.constituents)
      if (out.complex[i] != n)
        throw std::logic_error("Broughton multiplicities differ inside a Galois orbit");
    if (n % o.schur_index)
      throw std::logic_error("Broughton multiplicity not divisible by the Schur index");
    out.rational.push_back(n / o.schur_index);
  }
  return out;
}

SurfaceInvariants surface_invariants(std::size_t order, long genus_c, long genus_d)
{
  long num = (genus_c - 1) * (genus_d - 1);
  long d = static_cast<long>(order);
  if (num % d)
    throw std::domain_error("(g(C)-1)(g(D)-1) = " + std::to_string(num) + " is not divisible by |G| = " +
                            std::to_string(d));
  SurfaceInvariants s;
  s.chi = num / d;
  s.e = 4 * s.chi;
  s.k2 = 8 * s.chi;
  s.q = 0;
  s.pg = s.chi - 1 + s.q;
  s.h11 = s.e - 2 + 4 * s.q - 2 * s.pg;
  s.higher_product = genus_c >= 2 && genus_d >= 2;
  s.diamond = {{1}, {s.q, s.q}, {s.pg, s.h11, s.pg}, {s.q, s.q}, {1}};
  return s;
}

ZBreakdown dim_z(BroughtonTable const &c, BroughtonTable const &d, std::vector<RationalCharacter> const &orbits)
{
  ZBreakdown z;
  for (std::size_t j = 0; j < orbits.size(); ++j) {
    if (!c.rational[j] || !d.rational[j])
      continue;
    auto const &o = orbits[j];
    OrbitContribution oc;
    oc.orbit = j;
    oc.n_c = c.rational[j];
    oc.n_d = d.rational[j];
    oc.schur_index = o.schur_index;
    oc.field_degree = o.field_degree;
    oc.schur_basis = o.schur_basis;
    oc.tensor_trivial = o.schur_index * o.schur_index * o.field_degree;
    z.dim += oc.contribution();
    z.contributions.push_back(oc);
  }
  return z;
}

char const *to_string(SurfaceType t)
{
  switch (t) {
  case SurfaceType::a: return "a";
  case SurfaceType::b: return "b";
  case SurfaceType::c: return "c";
  case SurfaceType::d: return "d";
  case SurfaceType::unclassified: break;
  }
  return "unclassified";
}

namespace
{

bool absolutely_irreducible(OrbitContribution const &o) { return o.schur_index == 1 && o.field_degree == 1; }
bool doubled(OrbitContribution const &o) { return o.schur_index == 2 && o.field_degree == 1; }
bool conjugate_pair(OrbitContribution const &o) { return o.schur_index == 1 && o.field_degree == 2; }

std::string schur_note(OrbitContribution const &o)
{
  std::string where = "orbit " + std::to_string(o.orbit + 1);
  switch (o.schur_basis) {
  case SchurBasis::quaternionic:
    return where + ": Schur index 2 from indicator -1 on a real character (policy, not a local computation)";
  case SchurBasis::real_witness:
    return where + ": Schur index 1 assumed, indicator +1 is only a witness";
  case SchurBasis::heuristic:
    return where + ": Schur index 1 assumed without justification (indicator 0)";
  case SchurBasis::linear:
    break;
  }
  return {};
}

} // namespace

Classification classify_type(ZBreakdown const &z)
{
  Classification out;
  auto const &cs = z.contributions;
  if (z.dim != 4) {
    out.diagnosis = "dim Z = " + std::to_string(z.dim) + "; the a/b/c/d cases need dim Z = 4";
    return out;
  }
  if (cs.size() == 1) {
    auto const &o = cs[0];
    if (o.n_c == 2 && o.n_d == 2 && absolutely_irreducible(o))
      out.type = SurfaceType::a;
    else if (o.n_c == 1 && o.n_d == 1 && doubled(o))
      out.type = SurfaceType::b;
    // the orientation of (1, 2) is not fixed: accept both
    else if (((o.n_c == 1 && o.n_d == 2) || (o.n_c == 2 && o.n_d == 1)) && conjugate_pair(o))
      out.type = SurfaceType::c;
  } else if (cs.size() == 2) {
    bool ok = true;
    for (auto const &o : cs)
      ok = ok && o.n_c == 1 && o.n_d == 1 && conjugate_pair(o);
    if (ok)
      out.type = SurfaceType::d;
  }
  if (out.type == SurfaceType::unclassified) {
    out.diagnosis = "multiplicity pattern matches none of the four cases:";
    for (auto const &o : cs)
      out.diagnosis += " orbit " + std::to_string(o.orbit + 1) + " (n_C=" + std::to_string(o.n_c) +
                       ", n_D=" + std::to_string(o.n_d) + ", s=" + std::to_string(o.schur_index) +
                       ", [K:Q]=" + std::to_string(o.field_degree) + ")";
    return out;
  }
  for (auto const &o : cs) {
    auto note = schur_note(o);
    if (!note.empty()) {
      if (!out.diagnosis.empty())
        out.diagnosis += "; ";
      out.diagnosis += note;
    }
  }
  return out;
}

namespace
{

QuotientCurve project(SphericalSystem const &t, QuotientGroup const &q)
{
  auto qs = quotient_system(t, q);
  return {qs.entries, qs.dropped, qs.type, qs.genus};
}

// Row of the quotient table whose inflation to G is `chi`.
std::size_t inflated_row(CharacterTable const &qt, QuotientGroup const &q, Character const &chi)
{
  auto const &g = *chi.group;
  auto const &qg = *q.group;
  for (std::size_t i = 0; i < qt.size(); ++i) {
    bool same = true;
    for (std::size_t c = 0; c < g.class_count() && same; ++c)
      same = qt[i][qg.class_of(q.projection[g.classes()[c].representative])] == chi[c];
    if (same)
      return i;
  }
  throw std::logic_error("character does not factor through the quotient by its kernel");
}

} // namespace

QuotientAnalysis quotient_analysis(RamificationStructure const &s, CharacterTable const &table,
                                   std::vector<RationalCharacter> const &orbits, OrbitContribution const &contribution)
{
  auto const &gp = s.c.group;
  auto const &orbit = orbits.at(contribution.orbit);
  auto const &chi = table[orbit.constituents[0]];

  QuotientAnalysis qa;
  qa.orbit = contribution.orbit;
  qa.kernel = kernel_of_character(chi);
  auto q = quotient(gp, qa.kernel);
  qa.quotient = q.group;
  qa.quotient_name = describe_group(*q.group);
  qa.quotient_is_q8 = q.group->order() == 8 && is_quaternion_q8(*q.group);
  qa.quotient_cyclic = is_cyclic(*q.group);
  qa.c = project(s.c, q);
  qa.d = project(s.d, q);

  if (q.group->order() == 1) {
    qa.consistent = contribution.n_c == 0 && contribution.n_d == 0;
    return qa;
  }
  auto qt = character_table(q.group);
  auto qorbits = galois_orbits(qt);
  std::size_t qo = orbit_of(qorbits, inflated_row(qt, q, chi));
  auto bc = broughton({q.group, qa.c.entries}, qt, qorbits);
  auto bd = broughton({q.group, qa.d.entries}, qt, qorbits);
  qa.quotient_n_c = bc.rational[qo];
  qa.quotient_n_d = bd.rational[qo];
  qa.consistent = qa.quotient_n_c == contribution.n_c && qa.quotient_n_d == contribution.n_d;
  return qa;
}

PicardVerdict picard_verdict(SurfaceType t)
{
  switch (t) {
  case SurfaceType::b:
    return {true, {4}, "H^2(S,Q) is that of E x E with E = C/(Z + sqrt(-2) Z), which has CM"};
  case SurfaceType::d:
    return {true, {4}, "H^2(S,Q) is that of E x E with E = C/(Z + i Z), which has CM"};
  case SurfaceType::a:
  case SurfaceType::c:
    return {false,
            {2, 3, 4},
            "rho(E_C x E_D) is 4 if E_C ~ E_D with CM, 3 if E_C ~ E_D without CM, 2 otherwise; "
            "no witness decides which"};
  case SurfaceType::unclassified:
    break;
  }
  throw std::invalid_argument("no Picard verdict for an unclassified surface");
}

SurfaceAnalysis analyze(RamificationStructure const &s, TablePtr table)
{
  auto const &gp = s.c.group;
  if (!table)
    table = std::make_shared<CharacterTable const>(character_table(gp));
  SurfaceAnalysis a;
  a.structure = s;
  a.table = table;
  a.orbits = galois_orbits(*table);
  a.genus_c = genus(s.c);
  a.genus_d = genus(s.d);
  a.invariants = surface_invariants(gp->order(), a.genus_c, a.genus_d);
  if (!a.invariants.higher_product)
    a.notes.push_back("a curve has genus below 2: not a higher product");

  a.broughton_c = broughton(s.c, *table, a.orbits);
  a.broughton_d = broughton(s.d, *table, a.orbits);
  for (auto const *b : {&a.broughton_c, &a.broughton_d}) {
    long dim = 0;
    for (std::size_t i = 0; i < table->size(); ++i)
      dim += b->complex[i] * (*table)[i].degree();
    long want = 2 * (b == &a.broughton_c ? a.genus_c : a.genus_d);
    if (dim != want) {
      a.consistent = false;
      a.notes.push_back("Broughton dimension " + std::to_string(dim) + " differs from 2g = " + std::to_string(want));
    }
  }

  a.z = dim_z(a.broughton_c, a.broughton_d, a.orbits);
  auto const &inv = a.invariants;
  if (a.z.dim != inv.h11 - 2 + 2 * inv.pg) {
    a.consistent = false;
    a.notes.push_back("dim Z = " + std::to_string(a.z.dim) + " disagrees with h11 - 2 + 2 pg = " +
                      std::to_string(inv.h11 - 2 + 2 * inv.pg));
  }
  for (auto const &c : a.z.contributions)
    if (c.contribution() % 2) {
      a.consistent = false;
      a.notes.push_back("odd contribution from orbit " + std::to_string(c.orbit + 1));
    }

  a.classification = classify_type(a.z);
  for (auto const &c : a.z.contributions) {
    a.quotients.push_back(quotient_analysis(s, *table, a.orbits, c));
    if (!a.quotients.back().consistent) {
      a.consistent = false;
      a.notes.push_back("quotient multiplicities disagree for orbit " + std::to_string(c.orbit + 1));
    }
  }
  if (a.classification.type != SurfaceType::unclassified)
    a.picard = picard_verdict(a.classification.type);
  return a;
}

} // namespace isoprod
