#pragma once

// Spherical systems of generators, their Sigma sets, Riemann-Hurwitz genera,
// induced systems on quotients and the search for disjoint pairs.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "isoprod/groups.hpp"

namespace isoprod
{

struct ValidationError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Sorted multiset of element orders, e.g. {3,3,4}.
using OrderType = std::vector<int>;

// "[3^2,4]"
std::string format_type(OrderType const &t);
// Accepts "[3^2,4]", "[3,3,4]" or "3^2,4".  Throws ParseError.
OrderType parse_type(std::string_view text);

struct SphericalSystem
{
  GroupPtr group;
  std::vector<Index> entries;

  OrderType type() const;
  std::size_t size() const { return entries.size(); }
};

// Checks r >= 2, no entry of order 1, product = identity and generation.
// `name` prefixes error messages (e.g. "tuple C").
SphericalSystem validate_spherical(GroupPtr const &g, std::vector<Index> const &tuple,
                                   std::string const &name = "tuple");

// 1 - d + sum d (m - 1) / (2m); throws std::domain_error unless a
// non-negative integer.
long genus(std::size_t order, OrderType const &type);
inline long genus(SphericalSystem const &t) { return genus(t.group->order(), t.type()); }

// Conjugates of all powers of the entries, sorted; always contains the identity.
std::vector<Index> sigma_set(SphericalSystem const &t);
// Same set as a mask over conjugacy classes.
std::vector<char> sigma_classes(SphericalSystem const &t);

bool is_disjoint(SphericalSystem const &a, SphericalSystem const &b);

struct RamificationStructure
{
  SphericalSystem c;
  SphericalSystem d;
};

// Throws ValidationError unless the systems share a group and are disjoint.
RamificationStructure make_structure(SphericalSystem c, SphericalSystem d);

struct QuotientSystem
{
  GroupPtr group;                   // G/H
  std::vector<Index> entries;       // images that survive
  std::vector<std::size_t> dropped; // positions whose image is the identity
  OrderType type;
  long genus;
};

// Projects each entry to G/H and drops identity images.  A nontrivial quotient
// left with fewer than two entries is an inconsistency (ValidationError).
QuotientSystem quotient_system(SphericalSystem const &t, QuotientGroup const &q);

struct SearchLimits
{
  std::size_t group_bound = 512;
  std::size_t max_length = 6;
  std::size_t candidate_bound = 20'000'000; // tuples visited per type
  std::size_t limit = 0;                    // structures returned; 0 = all
  bool parallel = true;
};

struct SearchError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct SearchResult
{
  std::vector<RamificationStructure> structures; // canonical, sorted
  std::size_t total = 0;                         // before applying the limit
};

// Every system whose orders are an arrangement of `type`.  With
// first_from_class_reps the first entry ranges over class representatives
// only.  Throws SearchError when the candidate bound would be exceeded.
std::vector<std::vector<Index>> enumerate_systems(FiniteGroup const &g, OrderType const &type,
                                                  bool first_from_class_reps, SearchLimits const &lim);

// Lexicographically least image of (c, d) concatenated under simultaneous
// conjugation.
std::vector<Index> canonical_pair(FiniteGroup const &g, std::vector<Index> const &c, std::vector<Index> const &d);

// All disjoint pairs of the given types up to simultaneous conjugation.
// Refuses (SearchError) rather than truncating when bounds are exceeded.
SearchResult search_structures(GroupPtr const &g, OrderType const &type_c, OrderType const &type_d,
                               SearchLimits const &lim = {});

} // namespace isoprod
