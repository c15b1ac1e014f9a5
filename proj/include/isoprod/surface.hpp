#pragma once

// From a ramification structure to the surface (C x D)/G: Broughton
// multiplicities on H^1 of both curves, numerical invariants, the invariant
// piece Z of H^1(C) (x) H^1(D), its a/b/c/d type, quotient analyses and the
// Picard-number verdict.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isoprod/chartab.hpp"
#include "isoprod/ramification.hpp"

namespace isoprod
{

using TablePtr = std::shared_ptr<CharacterTable const>;

struct BroughtonTable
{
  std::vector<long> complex;  // per table row
  std::vector<long> rational; // per Galois orbit: complex multiplicity / Schur index
};

// Throws std::logic_error on a negative or non-constant-on-orbit
// multiplicity, or one not divisible by the Schur index.
BroughtonTable broughton(SphericalSystem const &t, CharacterTable const &table,
                         std::vector<RationalCharacter> const &orbits);

struct SurfaceInvariants
{
  long chi = 0; // chi(O_S)
  long e = 0;
  long k2 = 0;
  long q = 0;
  long pg = 0;
  long h11 = 0;
  bool higher_product = false; // both genera >= 2
  std::vector<std::vector<long>> diamond; // rows of 1, 2, 3, 2, 1 entries
};

// q = 0 since both quotient curves are P^1.  Throws std::domain_error when
// (g(C)-1)(g(D)-1) is not divisible by |G|.
SurfaceInvariants surface_invariants(std::size_t order, long genus_c, long genus_d);

struct OrbitContribution
{
  std::size_t orbit;     // index into galois_orbits
  long n_c = 0;
  long n_d = 0;
  long tensor_trivial = 0; // multiplicity of tau_1 in tau (x) tau: s^2 [K:Q]
  long schur_index = 1;
  long field_degree = 1;
  SchurBasis schur_basis = SchurBasis::linear;

  long contribution() const { return n_c * n_d * tensor_trivial; }
};

struct ZBreakdown
{
  long dim = 0;
  std::vector<OrbitContribution> contributions; // orbits with n_c * n_d != 0
};

ZBreakdown dim_z(BroughtonTable const &c, BroughtonTable const &d, std::vector<RationalCharacter> const &orbits);

enum class SurfaceType
{
  a,
  b,
  c,
  d,
  unclassified
};

char const *to_string(SurfaceType t);

struct Classification
{
  SurfaceType type = SurfaceType::unclassified;
  std::string diagnosis; // why unclassified, or which Schur annotation was relied on
};

Classification classify_type(ZBreakdown const &z);

struct QuotientCurve
{
  std::vector<Index> entries;       // in G/H
  std::vector<std::size_t> dropped; // positions mapped to the identity
  OrderType type;
  long genus = 0;
};

struct QuotientAnalysis
{
  std::size_t orbit = 0;
  Subgroup kernel;
  GroupPtr quotient;
  std::string quotient_name; // describe_group
  bool quotient_is_q8 = false;
  bool quotient_cyclic = false;
  QuotientCurve c;
  QuotientCurve d;
  // Rational multiplicities of the inflated orbit on the quotient curves; they
  // must equal n_C, n_D on the full curves.
  long quotient_n_c = 0;
  long quotient_n_d = 0;
  bool consistent = false;
};

QuotientAnalysis quotient_analysis(RamificationStructure const &s, CharacterTable const &table,
                                   std::vector<RationalCharacter> const &orbits, OrbitContribution const &contribution);

struct PicardVerdict
{
  bool exact = false;
  std::vector<int> values; // {4} or {2, 3, 4}
  std::string reason;
};

// Throws std::invalid_argument for unclassified surfaces.
PicardVerdict picard_verdict(SurfaceType t);

struct SurfaceAnalysis
{
  RamificationStructure structure;
  TablePtr table;
  std::vector<RationalCharacter> orbits;
  long genus_c = 0;
  long genus_d = 0;
  SurfaceInvariants invariants;
  BroughtonTable broughton_c;
  BroughtonTable broughton_d;
  ZBreakdown z;
  Classification classification;
  std::vector<QuotientAnalysis> quotients; // one per contributing orbit
  std::optional<PicardVerdict> picard;     // absent when unclassified
  bool consistent = true;                  // dim Z vs Hodge numbers and quotient checks
  std::vector<std::string> notes;
};

// `table` may be null, in which case it is computed.
SurfaceAnalysis analyze(RamificationStructure const &s, TablePtr table = nullptr);

} // namespace isoprod
