#include <doctest.h>

#include <chrono>
#include <numeric>
#include <random>
#include <set>

#include "isoprod/chartab.hpp"
#include "isoprod/kernels.hpp"
#include "fixtures.hpp"
#include "reference_tables.hpp"

using namespace isoprod;

namespace
{

GroupPtr q8() { return build_group("pc([2,2,2], g1^2 = g3, g2^2 = g3, g2^g1 = g2*g3)"); }

// All homomorphisms G -> roots of unity of order dividing exp(G), built by
// assigning images to generators and extending along the Cayley graph.
std::set<std::vector<Cyclotomic>> dual_group(FiniteGroup const &g)
{
  long e = g.exponent();
  std::size_t ng = g.generators().size();
  std::set<std::vector<Cyclotomic>> out;
  std::vector<long> img(ng, 0);
  for (;;) {
    std::vector<long> val(g.order(), -1);
    val[0] = 0;
    std::vector<Index> queue{0};
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i)
      for (std::size_t s = 0; s < ng && ok; ++s) {
        Index y = g.mul(queue[i], g.generators()[s]);
        long v = (val[queue[i]] + img[s]) % e;
        if (val[y] < 0) {
          val[y] = v;
          queue.push_back(y);
        } else if (val[y] != v) {
          ok = false;
        }
      }
    if (ok) {
      std::vector<Cyclotomic> row(g.class_count());
      for (Index x = 0; x < g.order(); ++x)
        row[g.class_of(x)] = Cyclotomic::root_of_unity(e, val[x]);
      out.insert(row);
    }
    std::size_t s = 0;
    while (s < ng && ++img[s] == e)
      img[s++] = 0;
    if (s == ng)
      break;
  }
  return out;
}

void check_table_properties(CharacterTable const &t)
{
  auto const &g = *t.group();
  CHECK(verify_orthogonality(t));
  CHECK(t.size() == g.class_count());
  CHECK(t[0].values == std::vector<Cyclotomic>(g.class_count(), Cyclotomic(1)));
  for (auto const &chi : t.characters())
    for (auto const &v : chi.values)
      CHECK(g.exponent() % v.conductor() == 0);

  // Every Galois automorphism permutes the rows.
  std::set<std::vector<Cyclotomic>> rows;
  for (auto const &chi : t.characters())
    rows.insert(chi.values);
  long e = g.exponent();
  std::vector<long> units;
  for (long u = 1; u < e && units.size() < 6; ++u)
    if (std::gcd(u, e) == 1)
      units.push_back(u);
  units.push_back(e - 1);
  for (long u : units) {
    std::set<std::vector<Cyclotomic>> image;
    for (auto const &chi : t.characters()) {
      std::vector<Cyclotomic> r;
      for (auto const &v : chi.values)
        r.push_back(v.galois(u));
      image.insert(r);
    }
    CHECK(image == rows);
  }

  auto orbits = galois_orbits(t);
  std::vector<std::size_t> covered;
  for (auto const &o : orbits) {
    for (auto i : o.constituents) {
      covered.push_back(i);
      CHECK(t[i].degree() == o.degree);
    }
    CHECK(o.dimension() == o.schur_index * o.degree * static_cast<long>(o.constituents.size()));
    auto q = rational_idempotent(t, o);
    CHECK(q * q == q);
    CHECK(q.is_central());
    CHECK(tensor_trivial_multiplicity(t, o, o) == o.schur_index * o.schur_index * o.field_degree);
  }
  std::sort(covered.begin(), covered.end());
  std::vector<std::size_t> all(t.size());
  std::iota(all.begin(), all.end(), 0);
  CHECK(covered == all);
  for (std::size_t a = 0; a < orbits.size(); ++a)
    for (std::size_t b = 0; b < orbits.size(); ++b)
      if (a != b)
        CHECK(tensor_trivial_multiplicity(t, orbits[a], orbits[b]) == 0);

  for (auto const &chi : t.characters()) {
    auto h = kernel_of_character(chi);
    CHECK(is_normal(g, h));
  }
}

} // namespace

TEST_CASE("cyclic of order 2")
{
  auto t = character_table(build_group("cyclic(2)"));
  REQUIRE(t.size() == 2);
  CHECK(t[0].values == std::vector<Cyclotomic>{1, 1});
  CHECK(t[1].values == std::vector<Cyclotomic>{1, -1});
}

TEST_CASE("trivial group")
{
  auto t = character_table(build_group("cyclic(1)"));
  REQUIRE(t.size() == 1);
  CHECK(t[0].degree() == 1);
}

TEST_CASE("dixon prime choice")
{
  CHECK(dixon_prime(168, 84) == 337);
  CHECK(dixon_prime(8, 4) == 13);
  CHECK(dixon_prime(9, 3) == 7);
  CHECK(dixon_prime(2, 2) == 5);
}

TEST_CASE("Q8 table matches the reference table")
{
  auto t = character_table(q8());
  CHECK(reference::matches(t, reference::q8()));
  CHECK(frobenius_schur(t[0]) == 1);
  CHECK(frobenius_schur(t[4]) == -1);
  auto orbits = galois_orbits(t);
  REQUIRE(orbits.size() == 5);
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(orbits[j].schur_index == 1);
    CHECK(orbits[j].schur_certain());
  }
  CHECK(orbits[4].degree == 2);
  CHECK(orbits[4].schur_index == 2);
  CHECK(orbits[4].schur_basis == SchurBasis::quaternionic);
  CHECK(orbits[4].dimension() == 4);
  CHECK(tensor_trivial_multiplicity(t, orbits[4], orbits[4]) == 4);

  // (1/2) e - (1/2) (-1)
  auto q = rational_idempotent(t, orbits[4]);
  Index minus_one = *t.group()->find("g3");
  for (Index x = 0; x < 8; ++x) {
    Rational want = x == 0 ? Rational(1, 2) : (x == minus_one ? Rational(-1, 2) : Rational(0));
    CHECK(q[x] == want);
  }
  CHECK(q * q == q);

  // Restriction to <i>: (2 + 0 - 2 + 0) / 4.
  Index i = *t.group()->find("g1");
  CHECK(trivial_restriction_multiplicity(t[4], i) == 0);
  CHECK(trivial_restriction_multiplicity(t[4], 0) == 2);
}

TEST_CASE("PSL(2,7) table matches the reference table")
{
  auto g = build_group(fixtures::psl27);
  auto start = std::chrono::steady_clock::now();
  auto t = character_table(g);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 10.0);
  CHECK(t.prime() == 337);
  CHECK(reference::matches(t, reference::psl27()));

  std::vector<long> degrees;
  for (auto const &chi : t.characters())
    degrees.push_back(chi.degree());
  CHECK(degrees == std::vector<long>{1, 3, 3, 6, 7, 8});

  // The degree-3 pair takes xi, conj(xi) on the order-7 classes.
  std::vector<std::size_t> sevens;
  for (std::size_t c = 0; c < g->class_count(); ++c)
    if (g->classes()[c].element_order == 7)
      sevens.push_back(c);
  REQUIRE(sevens.size() == 2);
  auto a = t[1][sevens[0]], b = t[1][sevens[1]];
  CHECK(a + b == Cyclotomic(-1));
  CHECK(a * b == Cyclotomic(2));
  CHECK((a == reference::xi7() || b == reference::xi7()));
  CHECK(a.conj() == b);

  CHECK(frobenius_schur(t[1]) == 0);
  auto orbits = galois_orbits(t);
  REQUIRE(orbits.size() == 5);
  CHECK(orbits[0].constituents == std::vector<std::size_t>{0});
  CHECK(orbits[1].constituents == std::vector<std::size_t>{1, 2});
  CHECK(orbits[1].field_degree == 2);
  CHECK(orbits[2].constituents == std::vector<std::size_t>{3});
  CHECK(orbits[3].constituents == std::vector<std::size_t>{4});
  CHECK(orbits[4].constituents == std::vector<std::size_t>{5});
  CHECK(orbits[1].schur_basis == SchurBasis::heuristic);
  for (std::size_t j : {2, 3, 4})
    CHECK(orbits[j].schur_basis == SchurBasis::real_witness);
}

TEST_CASE("(Z3)^2 orbits pair the reference characters")
{
  auto g = build_group(fixtures::z3xz3);
  auto t = character_table(g);
  auto orbits = galois_orbits(t);
  REQUIRE(orbits.size() == 5);
  std::vector<std::size_t> row(9);
  for (std::size_t j = 0; j < 9; ++j) {
    row[j] = reference::z3sq_row(t, j);
    REQUIRE(row[j] < t.size());
  }
  // tau2 = rho2 + rho3, tau3 = rho4 + rho7, tau4 = rho5 + rho9, tau5 = rho6 + rho8
  for (auto [x, y] : {std::pair{1, 2}, {3, 6}, {4, 8}, {5, 7}})
    CHECK(orbit_of(orbits, row[x]) == orbit_of(orbits, row[y]));
  std::set<std::size_t> distinct;
  for (auto x : {0, 1, 3, 4, 5})
    distinct.insert(orbit_of(orbits, row[x]));
  CHECK(distinct.size() == 5);

  // tau4 with itself: 1^2 * 2
  auto const &tau4 = orbits[orbit_of(orbits, row[4])];
  CHECK(tensor_trivial_multiplicity(t, tau4, tau4) == 2);

  // p5 alone has non-rational coefficients, p5 + p9 is rational.
  auto p5 = central_idempotent(t[row[4]]);
  CHECK(std::any_of(p5.begin(), p5.end(), [](auto const &v) { return !v.is_rational(); }));
  auto p9 = central_idempotent(t[row[8]]);
  auto q = rational_idempotent(t, tau4);
  for (Index x = 0; x < 9; ++x)
    CHECK(Cyclotomic(q[x]) == p5[x] + p9[x]);

  // chi2 restricted to <(1,1)>: (1 + z3 + z3^2) / 3 = 0
  CHECK(trivial_restriction_multiplicity(t[row[1]], *g->find("(1,1)")) == 0);

  // Kernel of chi5 = <(2,1)>
  auto h = kernel_of_character(t[row[4]]);
  std::vector<Index> want{0, *g->find("(2,1)"), *g->find("(1,2)")};
  std::sort(want.begin(), want.end());
  CHECK(h.members == want);
  CHECK(kernel_of_character(t[0]).order() == 9);
}

TEST_CASE("trivial orbit idempotent averages the group")
{
  auto t = character_table(q8());
  auto q = rational_idempotent(t, galois_orbits(t)[0]);
  for (Index x = 0; x < 8; ++x)
    CHECK(q[x] == Rational(1, 8));
}

TEST_CASE("G(128,36) has a quaternionic degree-2 character with the stated kernel")
{
  auto g = build_group(fixtures::g128_36);
  auto t = character_table(g);
  check_table_properties(t);
  auto al = generator_aliases(*g);
  auto ev = [&](char const *w) { return evaluate_word(*g, parse_word(w), al); };
  auto h = subgroup_generated(g, {ev("g7"), ev("g6"), ev("g3*g4"), ev("g4*g5")});
  int found = 0;
  for (auto const &chi : t.characters())
    if (chi.degree() == 2 && kernel_of_character(chi).members == h.members) {
      ++found;
      CHECK(frobenius_schur(chi) == -1);
      CHECK(chi.is_rational());
    }
  CHECK(found == 1);
}

TEST_CASE("abelian tables equal the dual group")
{
  for (auto const *r : {"cyclic(1)", "cyclic(7)", "cyclic(12)", "product(cyclic(3), cyclic(3))",
                        "product(cyclic(2), cyclic(4), cyclic(6))", "product(cyclic(9), cyclic(9))",
                        "product(cyclic(3), cyclic(3), cyclic(3), cyclic(3))"}) {
    CAPTURE(r);
    auto g = build_group(r);
    REQUIRE(g->order() <= 81);
    auto t = character_table(g);
    std::set<std::vector<Cyclotomic>> rows;
    for (auto const &chi : t.characters())
      rows.insert(chi.values);
    CHECK(rows == dual_group(*g));
    for (auto const &chi : t.characters())
      CHECK(chi.degree() == 1);
  }
}

TEST_CASE("class constants: parallel matches serial")
{
  for (auto const *r : {fixtures::psl27, fixtures::g128_36, "symmetric(5)"}) {
    auto g = build_group(r);
    std::vector<Index> reps;
    for (auto const &c : g->classes())
      reps.push_back(c.representative);
    kernels::ClassInput in{g->order(), g->table(), g->inverses(), g->class_map(), reps};
    CHECK(kernels::class_constants_serial(in) == kernels::class_constants_parallel(in));
  }
  auto a = character_table(build_group(fixtures::g128_36), {false});
  auto b = character_table(build_group(fixtures::g128_36), {true});
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].values == b[i].values);
}

TEST_CASE("table fixtures round trip and reject corruption")
{
  auto g = build_group(fixtures::psl27);
  auto t = character_table(g);
  auto text = export_table(t);
  auto back = import_table(g, text);
  REQUIRE(back.size() == t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK(back[i].values == t[i].values);

  auto bad = text;
  auto pos = bad.rfind("\n8 ; ");
  REQUIRE(pos != std::string::npos);
  bad.replace(pos + 1, 1, "9");
  CHECK_THROWS_AS(import_table(g, bad), GroupError);
  CHECK_THROWS_AS(import_table(build_group("symmetric(4)"), text), GroupError);
  CHECK_THROWS_AS(import_table(g, "not a table"), ParseError);
}

TEST_CASE("property suite: catalog groups and random small groups")
{
  std::vector<std::string> recipes = {fixtures::z3xz3, fixtures::z2cube_z4, fixtures::psl27,
                                      "pc([2,2,2], g1^2 = g3, g2^2 = g3, g2^g1 = g2*g3)",
                                      "symmetric(4)", "alternating(5)",
                                      "semidirect(cyclic(7), cyclic(3), [g1^2])",
                                      "semidirect(cyclic(5), cyclic(4), [g1^2])",
                                      "product(symmetric(3), cyclic(4))"};
  std::mt19937 rng(31337);
  for (int i = 0; i < 16; ++i) {
    switch (rng() % 4) {
    case 0: recipes.push_back("cyclic(" + std::to_string(1 + rng() % 96) + ")"); break;
    case 1: recipes.push_back("dihedral(" + std::to_string(1 + rng() % 48) + ")"); break;
    case 2:
      recipes.push_back("product(cyclic(" + std::to_string(1 + rng() % 4) + "), dihedral(" +
                        std::to_string(2 + rng() % 10) + "))");
      break;
    default:
      recipes.push_back("semidirect(cyclic(" + std::to_string(3 + 2 * (rng() % 10)) +
                        "), cyclic(2), [g1^-1])");
    }
  }
  for (auto const &r : recipes) {
    CAPTURE(r);
    GroupPtr g;
    try {
      g = build_group(r, BuildOptions{r == fixtures::psl27 ? 168u : 96u, true});
    } catch (GroupError const &) {
      continue;
    }
    check_table_properties(character_table(g));
  }
}
