#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "isoprod/surface.hpp"
#include "fixtures.hpp"
#include "reference_tables.hpp"

using namespace isoprod;

namespace
{

std::vector<Index> by_label(FiniteGroup const &g, std::vector<char const *> const &labels)
{
  std::vector<Index> out;
  for (auto l : labels)
    out.push_back(*g.find(l));
  return out;
}

template <std::size_t N>
std::vector<Index> by_words(FiniteGroup const &g, char const *const (&words)[N])
{
  auto al = generator_aliases(g);
  std::vector<Index> out;
  for (auto w : words)
    out.push_back(evaluate_word(g, parse_word(w), al));
  return out;
}

RamificationStructure z3sq_structure()
{
  auto z = build_group(fixtures::z3xz3);
  return make_structure(validate_spherical(z, by_label(*z, reference::z3sq_tc())),
                        validate_spherical(z, by_label(*z, reference::z3sq_td())));
}

RamificationStructure g128_structure()
{
  auto g = build_group(fixtures::g128_36);
  return make_structure(validate_spherical(g, by_words(*g, fixtures::g128_tc)),
                        validate_spherical(g, by_words(*g, fixtures::g128_td)));
}

RamificationStructure z2cube_z4_structure()
{
  auto g = build_group(fixtures::z2cube_z4);
  return make_structure(validate_spherical(g, by_words(*g, fixtures::z2cube_z4_tc)),
                        validate_spherical(g, by_words(*g, fixtures::z2cube_z4_td)));
}

// Properties every Broughton table must have.
void check_broughton(SphericalSystem const &t, CharacterTable const &table,
                     std::vector<RationalCharacter> const &orbits)
{
  auto b = broughton(t, table, orbits);
  CHECK(b.complex[0] == 0);
  long dim = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    dim += b.complex[i] * table[i].degree();
    if (table[i].is_real())
      CHECK(b.complex[i] % 2 == 0);
  }
  CHECK(dim == 2 * genus(t));
  for (std::size_t j = 0; j < orbits.size(); ++j)
    for (auto i : orbits[j].constituents)
      CHECK(b.complex[i] == b.rational[j] * orbits[j].schur_index);
}

} // namespace

TEST_CASE("Broughton multiplicities for (Z3)^2")
{
  auto s = z3sq_structure();
  auto t = character_table(s.c.group);
  auto orbits = galois_orbits(t);
  auto bc = broughton(s.c, t, orbits);
  auto bd = broughton(s.d, t, orbits);

  std::vector<long> want_c = {0, 3, 3, 3, 1, 0, 3, 0, 1}, want_d = {0, 0, 0, 0, 2, 2, 0, 2, 2};
  for (std::size_t j = 0; j < 9; ++j) {
    auto row = reference::z3sq_row(t, j);
    REQUIRE(row < t.size());
    CHECK(bc.complex[row] == want_c[j]);
    CHECK(bd.complex[row] == want_d[j]);
  }
  // tau_1..tau_5 are the orbits of rho_1, rho_2, rho_4, rho_5, rho_6.
  std::vector<std::size_t> tau = {0, 1, 3, 4, 5};
  std::vector<long> rat_c = {0, 3, 3, 1, 0}, rat_d = {0, 0, 0, 2, 2};
  for (std::size_t j = 0; j < 5; ++j) {
    auto o = orbit_of(orbits, reference::z3sq_row(t, tau[j]));
    CHECK(bc.rational[o] == rat_c[j]);
    CHECK(bd.rational[o] == rat_d[j]);
  }
  check_broughton(s.c, t, orbits);
  check_broughton(s.d, t, orbits);
}

TEST_CASE("surface invariants")
{
  auto inv = surface_invariants(9, 7, 4);
  CHECK(inv.chi == 2);
  CHECK(inv.e == 8);
  CHECK(inv.k2 == 16);
  CHECK(inv.q == 0);
  CHECK(inv.pg == 1);
  CHECK(inv.h11 == 4);
  CHECK(inv.higher_product);
  CHECK(inv.diamond == std::vector<std::vector<long>>{{1}, {0, 0}, {1, 4, 1}, {0, 0}, {1}});
  CHECK(surface_invariants(128, 17, 17).chi == 2);
  CHECK(surface_invariants(168, 49, 8).chi == 2);
  CHECK(surface_invariants(168, 17, 22).chi == 2);
  CHECK(surface_invariants(32, 9, 9).chi == 2);
  CHECK(surface_invariants(8, 3, 5).chi == 1);
  CHECK_FALSE(surface_invariants(4, 1, 5).higher_product);
  CHECK_THROWS_AS(surface_invariants(9, 7, 5), std::domain_error);
}

TEST_CASE("dim Z and classification of the exceptional structures")
{
  struct Case
  {
    RamificationStructure s;
    long gc, gd;
    SurfaceType type;
    std::multiset<std::vector<long>> breakdown; // (n_C, n_D, tensor) per orbit
  };
  std::vector<Case> cases = {
    {z3sq_structure(), 7, 4, SurfaceType::c, {{1, 2, 2}}},
    {g128_structure(), 17, 17, SurfaceType::b, {{1, 1, 4}}},
    {z2cube_z4_structure(), 9, 9, SurfaceType::d, {{1, 1, 2}, {1, 1, 2}}},
  };
  for (auto const &k : cases) {
    CAPTURE(k.s.c.group->recipe());
    auto a = analyze(k.s);
    CHECK(a.genus_c == k.gc);
    CHECK(a.genus_d == k.gd);
    CHECK(a.invariants.chi == 2);
    CHECK(a.z.dim == 4);
    std::multiset<std::vector<long>> got;
    for (auto const &c : a.z.contributions) {
      got.insert({c.n_c, c.n_d, c.tensor_trivial});
      auto const &o = a.orbits[c.orbit];
      CHECK(c.tensor_trivial == tensor_trivial_multiplicity(*a.table, o, o));
    }
    CHECK(got == k.breakdown);
    CHECK(a.classification.type == k.type);
    CHECK(a.consistent);
    REQUIRE(a.picard.has_value());
    for (auto const &q : a.quotients)
      CHECK(q.consistent);
  }
}

TEST_CASE("type b verdict records the Schur policy")
{
  auto a = analyze(g128_structure());
  CHECK(a.classification.diagnosis.find("Schur index 2") != std::string::npos);
  REQUIRE(a.z.contributions.size() == 1);
  CHECK(a.z.contributions[0].schur_basis == SchurBasis::quaternionic);
}

TEST_CASE("quotient analyses")
{
  SUBCASE("(Z3)^2")
  {
    auto s = z3sq_structure();
    auto a = analyze(s);
    REQUIRE(a.quotients.size() == 1);
    auto const &q = a.quotients[0];
    auto const &g = *s.c.group;
    auto h = by_label(g, {"(0,0)", "(2,1)", "(1,2)"});
    std::sort(h.begin(), h.end());
    CHECK(q.kernel.members == h);
    CHECK(q.quotient_name == "Z3");
    CHECK(q.quotient_cyclic);
    CHECK(q.c.genus == 1);
    CHECK(q.d.genus == 2);
    CHECK(q.c.dropped.size() == 2);
    CHECK(q.quotient_n_c == 1);
    CHECK(q.quotient_n_d == 2);
  }
  SUBCASE("G(128,36)")
  {
    auto s = g128_structure();
    auto a = analyze(s);
    REQUIRE(a.quotients.size() == 1);
    auto const &q = a.quotients[0];
    auto h = subgroup_generated(s.c.group, by_words(*s.c.group, fixtures::g128_kernel));
    CHECK(q.kernel.order() == 16);
    CHECK(q.kernel.members == h.members);
    CHECK(q.quotient_is_q8);
    CHECK(q.quotient_name == "Q8");
    CHECK(q.c.genus == 2);
    CHECK(q.d.genus == 2);
  }
  SUBCASE("(Z2)^3 x| Z4")
  {
    auto s = z2cube_z4_structure();
    auto a = analyze(s);
    REQUIRE(a.quotients.size() == 2);
    auto const &g = s.c.group;
    std::set<std::vector<Index>> want = {subgroup_generated(g, by_words(*g, fixtures::z2cube_z4_h1)).members,
                                         subgroup_generated(g, by_words(*g, fixtures::z2cube_z4_h2)).members};
    std::set<std::vector<Index>> got;
    for (auto const &q : a.quotients) {
      got.insert(q.kernel.members);
      CHECK(q.quotient_name == "Z4");
      CHECK(q.c.genus == 1);
      CHECK(q.d.genus == 1);
    }
    CHECK(got == want);
  }
}

TEST_CASE("PSL(2,7) structures from the search are of type a")
{
  auto g = build_group(fixtures::psl27);
  auto table = std::make_shared<CharacterTable const>(character_table(g));
  auto orbits = galois_orbits(*table);
  REQUIRE(orbits.size() == 5);

  struct Case
  {
    OrderType c, d;
    long gc, gd;
    std::vector<long> rational_d;
  };
  for (auto const &k : {Case{{7, 7, 7}, {3, 3, 4}, 49, 8, {0, 0, 0, 0, 2}},
                        Case{{3, 3, 7}, {4, 4, 4}, 17, 22, {0, 0, 0, 4, 2}}}) {
    auto res = search_structures(g, k.c, k.d);
    REQUIRE(res.total > 0);
    auto a = analyze(res.structures.front(), table);
    CHECK(a.genus_c == k.gc);
    CHECK(a.genus_d == k.gd);
    CHECK(a.invariants.chi == 2);
    CHECK(a.broughton_d.rational == k.rational_d);
    CHECK(a.classification.type == SurfaceType::a);
    REQUIRE(a.z.contributions.size() == 1);
    CHECK(a.z.contributions[0].n_c == 2);
    CHECK(a.z.contributions[0].n_d == 2);
    CHECK(a.z.contributions[0].tensor_trivial == 1);
    CHECK(a.consistent);

    // Every structure found gives the same verdict.
    std::set<std::vector<Index>> systems;
    for (auto const &s : res.structures) {
      auto bc = broughton(s.c, *table, orbits);
      auto bd = broughton(s.d, *table, orbits);
      CHECK(bd.rational == k.rational_d);
      auto z = dim_z(bc, bd, orbits);
      CHECK(z.dim == 4);
      CHECK(classify_type(z).type == SurfaceType::a);
      systems.insert(s.c.entries);
      systems.insert(s.d.entries);
    }
    for (auto const &t : systems)
      check_broughton({g, t}, *table, orbits);
  }
}

TEST_CASE("classification edge cases")
{
  ZBreakdown empty;
  auto c = classify_type(empty);
  CHECK(c.type == SurfaceType::unclassified);
  CHECK(c.diagnosis.find("dim Z = 0") != std::string::npos);

  // Disjoint supports give nothing.
  BroughtonTable x{{0, 2, 0}, {0, 2, 0}}, y{{0, 0, 4}, {0, 0, 4}};
  std::vector<RationalCharacter> orbits(3);
  for (std::size_t i = 0; i < 3; ++i)
    orbits[i].constituents = {i};
  CHECK(dim_z(x, y, orbits).dim == 0);
  CHECK(dim_z(x, x, orbits).dim == 4);
  CHECK(classify_type(dim_z(x, x, orbits)).type == SurfaceType::a);

  // Right dimension, wrong shape.
  ZBreakdown odd;
  odd.dim = 4;
  OrbitContribution oc;
  oc.n_c = 4;
  oc.n_d = 1;
  oc.tensor_trivial = 1;
  odd.contributions.push_back(oc);
  auto r = classify_type(odd);
  CHECK(r.type == SurfaceType::unclassified);
  CHECK(r.diagnosis.find("n_C=4") != std::string::npos);

  // Type c is accepted with either curve carrying the double multiplicity.
  ZBreakdown swapped;
  swapped.dim = 4;
  oc = {};
  oc.n_c = 2;
  oc.n_d = 1;
  oc.field_degree = 2;
  oc.tensor_trivial = 2;
  swapped.contributions.push_back(oc);
  CHECK(classify_type(swapped).type == SurfaceType::c);
}

TEST_CASE("Picard verdicts")
{
  CHECK(picard_verdict(SurfaceType::b).exact);
  CHECK(picard_verdict(SurfaceType::b).values == std::vector<int>{4});
  CHECK(picard_verdict(SurfaceType::d).values == std::vector<int>{4});
  CHECK_FALSE(picard_verdict(SurfaceType::a).exact);
  CHECK(picard_verdict(SurfaceType::a).values == std::vector<int>{2, 3, 4});
  CHECK(picard_verdict(SurfaceType::c).values == std::vector<int>{2, 3, 4});
  CHECK_THROWS_AS(picard_verdict(SurfaceType::unclassified), std::invalid_argument);
}

TEST_CASE("Broughton properties on random systems up to order 96")
{
  std::mt19937 rng(11);
  char const *recipes[] = {"symmetric(4)", "dihedral(5)", "alternating(4)", fixtures::z2cube_z4, "cyclic(12)",
                           "product(cyclic(3), symmetric(3))", "product(alternating(4), cyclic(2))",
                           "semidirect(product(cyclic(2), cyclic(2), cyclic(2), cyclic(2)), symmetric(3), "
                           "[g2, g1, g3, g4], [g2, g3, g1, g4])",
                           "pc([2,2,2,2,2,3], g1^2 = g4, g2^2 = g5, g2^g1 = g2*g3, g6^g1 = g6^2)"};
  for (auto r : recipes) {
    CAPTURE(r);
    auto g = build_group(r);
    REQUIRE(g->order() <= 96);
    auto table = character_table(g);
    auto orbits = galois_orbits(table);
    int found = 0;
    for (int trial = 0; trial < 300 && found < 10; ++trial) {
      std::size_t len = 2 + rng() % 4;
      std::vector<Index> t;
      Index p = 0;
      for (std::size_t i = 0; i + 1 < len; ++i) {
        Index x = 1 + static_cast<Index>(rng() % (g->order() - 1));
        t.push_back(x);
        p = g->mul(p, x);
      }
      t.push_back(g->inv(p));
      SphericalSystem sys;
      try {
        sys = validate_spherical(g, t);
        genus(sys);
      } catch (std::exception const &) {
        continue;
      }
      ++found;
      check_broughton(sys, table, orbits);
    }
    CHECK(found > 0);
  }
}
