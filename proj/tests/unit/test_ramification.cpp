#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>

#include "isoprod/ramification.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

using namespace isoprod;
using namespace oracles;

TEST_CASE("Riemann-Hurwitz genus")
{
  CHECK(genus(9, {3, 3, 3, 3, 3}) == 7);
  CHECK(genus(9, {3, 3, 3, 3}) == 4);
  CHECK(genus(128, {4, 4, 4}) == 17);
  CHECK(genus(168, {7, 7, 7}) == 49);
  CHECK(genus(168, {3, 3, 4}) == 8);
  CHECK(genus(1, {}) == 0);
  CHECK(genus(4, {2, 2, 2, 2}) == 1);
  CHECK_THROWS_AS(genus(9, {2, 2}), std::domain_error);    // negative
  CHECK_THROWS_AS(genus(7, {2, 2, 2}), std::domain_error); // not an integer
  CHECK_THROWS_AS(genus(4, {1, 2, 2}), std::domain_error);
}

TEST_CASE("type notation")
{
  CHECK(format_type({3, 3, 4}) == "[3^2,4]");
  CHECK(format_type({7, 7, 7}) == "[7^3]");
  CHECK(format_type({2, 3}) == "[2,3]");
  CHECK(parse_type("[3^2,4]") == OrderType{3, 3, 4});
  CHECK(parse_type(" 4, 3 ,3") == OrderType{3, 3, 4});
  CHECK(parse_type("[2^2,4^2]") == OrderType{2, 2, 4, 4});
  for (auto t : {OrderType{2, 2}, OrderType{3, 5, 5, 7}, OrderType{4, 4, 4}})
    CHECK(parse_type(format_type(t)) == t);
  CHECK_THROWS_AS(parse_type("[3^2,4"), ParseError);
  CHECK_THROWS_AS(parse_type("[1,2]"), ParseError);
  CHECK_THROWS_AS(parse_type("[]"), ParseError);
  CHECK_THROWS_AS(parse_type("[3;4]"), ParseError);
}

TEST_CASE("validate spherical systems")
{
  auto z = build_group(fixtures::z3xz3);
  auto td = validate_spherical(z, by_label(*z, reference::z3sq_td()));
  CHECK(td.type() == OrderType{3, 3, 3, 3});
  CHECK(genus(td) == 4);
  auto tc = validate_spherical(z, by_label(*z, reference::z3sq_tc()));
  CHECK(genus(tc) == 7);

  CHECK_THROWS_WITH_AS(validate_spherical(z, by_label(*z, {"(1,0)", "(2,0)"})), doctest::Contains("generate"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(validate_spherical(z, by_label(*z, {"(1,0)", "(1,0)", "(0,1)"}), "tuple C"),
                       doctest::Contains("tuple C: product"), ValidationError);
  CHECK_THROWS_WITH_AS(validate_spherical(z, by_label(*z, {"(0,0)", "(1,0)", "(2,0)"})),
                       doctest::Contains("identity"), ValidationError);
  CHECK_THROWS_AS(validate_spherical(z, {0}), ValidationError);
  CHECK_THROWS_AS(validate_spherical(z, {1, 99}), ValidationError);

  auto g = build_group(fixtures::g128_36);
  auto c = validate_spherical(g, by_words(*g, fixtures::g128_tc));
  CHECK(c.type() == OrderType{4, 4, 4});
  auto d = validate_spherical(g, by_words(*g, fixtures::g128_td));
  CHECK(genus(c) == 17);
  CHECK(genus(d) == 17);

  auto k = build_group(fixtures::z2cube_z4);
  auto kc = validate_spherical(k, by_words(*k, fixtures::z2cube_z4_tc));
  auto kd = validate_spherical(k, by_words(*k, fixtures::z2cube_z4_td));
  CHECK(kc.type() == OrderType{2, 2, 4, 4});
  CHECK(kd.type() == OrderType{2, 2, 4, 4});
  CHECK(genus(kc) == 9);
  CHECK(genus(kd) == 9);
}

TEST_CASE("Sigma sets and disjointness")
{
  auto z = build_group(fixtures::z3xz3);
  SphericalSystem tc{z, by_label(*z, reference::z3sq_tc())};
  SphericalSystem td{z, by_label(*z, reference::z3sq_td())};
  auto expect_d = by_label(*z, {"(0,0)", "(0,1)", "(0,2)", "(1,0)", "(2,0)"});
  auto expect_c = by_label(*z, {"(0,0)", "(1,1)", "(2,2)", "(2,1)", "(1,2)"});
  std::sort(expect_d.begin(), expect_d.end());
  std::sort(expect_c.begin(), expect_c.end());
  CHECK(sigma_set(td) == expect_d);
  CHECK(sigma_set(tc) == expect_c);
  CHECK(is_disjoint(tc, td));
  CHECK(is_disjoint(td, tc));
  CHECK_FALSE(is_disjoint(tc, tc));
  CHECK_NOTHROW(make_structure(tc, td));
  CHECK_THROWS_WITH_AS(make_structure(td, td), doctest::Contains("not disjoint"), ValidationError);

  auto cyc = build_group("cyclic(6)");
  SphericalSystem t{cyc, {1, cyc->inv(1)}};
  CHECK(sigma_set(t).size() == 6);

  auto g = build_group(fixtures::g128_36);
  SphericalSystem c{g, by_words(*g, fixtures::g128_tc)};
  SphericalSystem d{g, by_words(*g, fixtures::g128_td)};
  CHECK(is_disjoint(c, d));
  CHECK(is_disjoint(d, c));

  auto k = build_group(fixtures::z2cube_z4);
  CHECK(is_disjoint({k, by_words(*k, fixtures::z2cube_z4_tc)}, {k, by_words(*k, fixtures::z2cube_z4_td)}));

  auto other = build_group(fixtures::z3xz3);
  CHECK_THROWS_AS(is_disjoint(tc, SphericalSystem{other, td.entries}), ValidationError);
}

TEST_CASE("Sigma set oracle on random systems up to order 128")
{
  std::mt19937 rng(7);
  char const *recipes[] = {fixtures::z3xz3, fixtures::g128_36, fixtures::z2cube_z4, "symmetric(4)", "dihedral(6)",
                           "alternating(5)", "product(symmetric(3), cyclic(4))", "product(dihedral(4), cyclic(2), cyclic(2))"};
  for (auto r : recipes) {
    auto g = build_group(r);
    REQUIRE(g->order() <= 128);
    int found = 0;
    for (int trial = 0; trial < 400 && found < 12; ++trial) {
      // random prefix, last entry closes the product
      std::size_t len = 2 + rng() % 4;
      std::vector<Index> t;
      Index p = 0;
      for (std::size_t i = 0; i + 1 < len; ++i) {
        Index x = 1 + static_cast<Index>(rng() % (g->order() - 1));
        t.push_back(x);
        p = g->mul(p, x);
      }
      t.push_back(g->inv(p));
      if (t.back() == 0 || !brute_generates(*g, t))
        continue;
      ++found;
      auto sys = validate_spherical(g, t);
      auto s = sigma_set(sys);
      auto b = brute_sigma(*g, t);
      CHECK(std::vector<Index>(b.begin(), b.end()) == s);
      // closed under conjugation and powers
      std::set<Index> ss(s.begin(), s.end());
      for (Index x : s)
        for (Index c : g->generators()) {
          CHECK(ss.count(g->conj(x, c)));
          CHECK(ss.count(g->mul(x, x)));
        }
      // trivial quotient keeps the genus
      auto q = quotient(g, subgroup_generated(g, {}));
      auto qs = quotient_system(sys, q);
      CHECK(qs.dropped.empty());
      CHECK(qs.genus == genus(sys));
    }
    CHECK(found > 0);
  }
}

TEST_CASE("quotient systems")
{
  auto z = build_group(fixtures::z3xz3);
  SphericalSystem tc{z, by_label(*z, reference::z3sq_tc())};
  SphericalSystem td{z, by_label(*z, reference::z3sq_td())};
  auto q = quotient(z, subgroup_generated(z, {*z->find("(2,1)")}));
  CHECK(q.kernel.order() == 3);
  auto qc = quotient_system(tc, q);
  CHECK(qc.entries.size() == 3);
  CHECK(qc.dropped == std::vector<std::size_t>{1, 3});
  CHECK(qc.type == OrderType{3, 3, 3});
  CHECK(qc.genus == 1);
  auto qd = quotient_system(td, q);
  CHECK(qd.dropped.empty());
  CHECK(qd.genus == 2);

  // survivors still multiply to the identity and generate
  Index p = 0;
  for (Index x : qc.entries)
    p = q.group->mul(p, x);
  CHECK(p == 0);
  CHECK(brute_generates(*q.group, qc.entries));

  auto all = quotient(z, subgroup_generated(z, z->generators()));
  auto qa = quotient_system(tc, all);
  CHECK(qa.genus == 0);
  CHECK(qa.entries.empty());
  CHECK(qa.dropped.size() == 5);

  auto g = build_group(fixtures::g128_36);
  auto h = subgroup_generated(g, by_words(*g, fixtures::g128_kernel));
  auto gq = quotient(g, h);
  CHECK(is_quaternion_q8(*gq.group));
  CHECK(quotient_system({g, by_words(*g, fixtures::g128_tc)}, gq).genus == 2);
  CHECK(quotient_system({g, by_words(*g, fixtures::g128_td)}, gq).genus == 2);

  auto k = build_group(fixtures::z2cube_z4);
  for (auto const *hw : {&fixtures::z2cube_z4_h1, &fixtures::z2cube_z4_h2}) {
    auto kq = quotient(k, subgroup_generated(k, by_words(*k, *hw)));
    CHECK(describe_group(*kq.group) == "Z4");
    CHECK(quotient_system({k, by_words(*k, fixtures::z2cube_z4_tc)}, kq).genus == 1);
    CHECK(quotient_system({k, by_words(*k, fixtures::z2cube_z4_td)}, kq).genus == 1);
  }

  // An unvalidated tuple whose image is a single point is rejected.
  SphericalSystem bogus{z, by_label(*z, {"(1,0)", "(2,0)"})};
  auto qz = quotient(z, subgroup_generated(z, {*z->find("(1,0)")}));
  CHECK_THROWS_AS(quotient_system(bogus, qz), ValidationError);
}

TEST_CASE("search: small cases and known structures")
{
  auto z2 = build_group("cyclic(2)");
  auto empty = search_structures(z2, {2, 2}, {2, 2});
  CHECK(empty.total == 0);
  CHECK(empty.structures.empty());

  auto z = build_group(fixtures::z3xz3);
  auto res = search_structures(z, {3, 3, 3, 3, 3}, {3, 3, 3, 3});
  CHECK(res.total > 0);
  auto known_pair = canonical_pair(*z, by_label(*z, reference::z3sq_tc()), by_label(*z, reference::z3sq_td()));
  CHECK(as_set(res).count(known_pair) == 1);
  for (auto const &s : res.structures) {
    CHECK(is_disjoint(s.c, s.d));
    CHECK(genus(s.c) == 7);
    CHECK(genus(s.d) == 4);
  }

  auto psl = build_group(fixtures::psl27);
  auto p1 = search_structures(psl, {7, 7, 7}, {3, 3, 4});
  CHECK(p1.total > 0);
  for (auto const &s : p1.structures) {
    CHECK_NOTHROW(validate_spherical(psl, s.c.entries));
    CHECK_NOTHROW(validate_spherical(psl, s.d.entries));
    CHECK(is_disjoint(s.c, s.d));
    CHECK(genus(s.c) == 49);
    CHECK(genus(s.d) == 8);
    CHECK(canonical_pair(*psl, s.c.entries, s.d.entries) ==
          [&] { auto v = s.c.entries; v.insert(v.end(), s.d.entries.begin(), s.d.entries.end()); return v; }());
  }
  auto p2 = search_structures(psl, {3, 3, 7}, {4, 4, 4});
  CHECK(p2.total > 0);
}

TEST_CASE("search agrees with naive enumeration")
{
  struct Case
  {
    char const *recipe;
    OrderType c, d;
    bool empty = false;
  };
  std::vector<Case> cases = {
    {fixtures::z3xz3, {3, 3, 3, 3}, {3, 3, 3, 3}},
    {fixtures::z3xz3, {3, 3, 3, 3, 3}, {3, 3, 3, 3}},
    {"product(cyclic(2), cyclic(2), cyclic(2))", {2, 2, 2, 2, 2, 2}, {2, 2, 2, 2, 2, 2}},
    {"product(cyclic(2), cyclic(2), cyclic(2))", {2, 2, 2, 2, 2}, {2, 2, 2, 2, 2}, true},
    {"symmetric(4)", {2, 2, 3, 3}, {4, 4, 4, 4}},
    {"dihedral(4)", {2, 2, 2, 2}, {2, 4, 4}, true},
  };
  for (auto const &k : cases) {
    CAPTURE(k.recipe);
    auto g = build_group(k.recipe);
    auto naive = naive_search(*g, k.c, k.d);
    SearchLimits serial;
    serial.parallel = false;
    auto a = search_structures(g, k.c, k.d, serial);
    auto b = search_structures(g, k.c, k.d);
    CHECK(naive.empty() == k.empty);
    CHECK(as_set(a) == naive);
    CHECK(a.total == naive.size());
    CHECK(as_set(b) == as_set(a));
    // deterministic order: sorted, identical between modes
    for (std::size_t i = 0; i < a.structures.size(); ++i)
      CHECK(a.structures[i].c.entries == b.structures[i].c.entries);
  }
}

TEST_CASE("search limits and refusals")
{
  auto z = build_group(fixtures::z3xz3);
  SearchLimits lim;
  lim.limit = 3;
  auto r = search_structures(z, {3, 3, 3, 3}, {3, 3, 3, 3}, lim);
  CHECK(r.structures.size() == 3);
  CHECK(r.total > 3);
  auto full = search_structures(z, {3, 3, 3, 3}, {3, 3, 3, 3});
  CHECK(full.total == r.total);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(full.structures[i].d.entries == r.structures[i].d.entries);

  auto psl = build_group(fixtures::psl27);
  SearchLimits small;
  small.group_bound = 100;
  CHECK_THROWS_WITH_AS(search_structures(psl, {7, 7, 7}, {3, 3, 4}, small), doctest::Contains("refused"),
                       SearchError);
  SearchLimits few;
  few.candidate_bound = 1000;
  CHECK_THROWS_WITH_AS(search_structures(psl, {7, 7, 7}, {3, 3, 4}, few), doctest::Contains("refused"),
                       SearchError);
  CHECK_THROWS_AS(search_structures(z, {3, 3, 3, 3, 3, 3, 3}, {3, 3, 3}), SearchError);
  // orders absent from the group give no systems rather than an error
  CHECK(search_structures(z, {2, 2}, {3, 3, 3}).total == 0);
}
