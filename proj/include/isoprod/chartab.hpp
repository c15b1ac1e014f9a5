#pragma once

// Exact character tables (Dixon's modular method), Galois orbits, rational
// characters and group-algebra idempotents.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "isoprod/exactmath.hpp"
#include "isoprod/groups.hpp"

namespace isoprod
{

struct Character
{
  GroupPtr group;
  std::vector<Cyclotomic> values; // indexed by conjugacy class

  long degree() const { return values.at(0).to_rational().to_long(); }
  Cyclotomic const &operator[](std::size_t cls) const { return values[cls]; }
  Cyclotomic const &at(Index g) const { return values[group->class_of(g)]; }
  bool is_real() const;
  bool is_rational() const;
};

// (1/|G|) sum_g a(g) conj(b(g))
Cyclotomic inner_product(Character const &a, Character const &b);

struct TableOptions
{
  bool parallel = true;
};

class CharacterTable
{
public:
  CharacterTable(GroupPtr group, std::vector<Character> chars, std::uint32_t prime = 0);

  GroupPtr const &group() const { return _group; }
  std::vector<Character> const &characters() const { return _chars; }
  std::size_t size() const { return _chars.size(); }
  Character const &operator[](std::size_t i) const { return _chars[i]; }
  // Prime used by the modular computation, carried through export/import.
  std::uint32_t prime() const { return _prime; }

private:
  GroupPtr _group;
  std::vector<Character> _chars;
  std::uint32_t _prime;
};

// Smallest prime p = 1 mod exponent with p > 2 ceil(sqrt(order)).
std::uint32_t dixon_prime(std::size_t order, long exponent);

// Rows: trivial character first, the rest by (degree, values lexicographic).
// Throws std::logic_error if the modular eigenspace splitting stalls.
CharacterTable character_table(GroupPtr const &g, TableOptions const &opts = {});

// (1/|G|) sum_g chi(g^2), in {-1, 0, 1}.
int frobenius_schur(Character const &chi);

// How the Schur index of a rational character was obtained.
enum class SchurBasis
{
  linear,        // degree 1
  quaternionic,  // indicator -1: s = 2 (real-valued, so exact)
  real_witness,  // indicator +1: s = 1 assumed, the indicator is only a witness
  heuristic      // indicator 0: s = 1 assumed without justification
};

char const *to_string(SchurBasis b);

struct RationalCharacter
{
  std::vector<std::size_t> constituents; // table row indices, ascending
  long degree = 1;                       // complex degree of each constituent
  long field_degree = 1;                 // [K:Q] = orbit size
  long schur_index = 1;
  SchurBasis schur_basis = SchurBasis::linear;
  int indicator = 1;

  long dimension() const { return schur_index * degree * field_degree; }
  bool schur_certain() const
  { return schur_basis == SchurBasis::linear || schur_basis == SchurBasis::quaternionic; }
};

// Orbits ordered by their smallest constituent.
std::vector<RationalCharacter> galois_orbits(CharacterTable const &t);

// Index of the orbit containing row i.
std::size_t orbit_of(std::vector<RationalCharacter> const &orbits, std::size_t row);

// (1/ord g) sum_k chi(g^k); throws std::logic_error when not a non-negative integer.
long trivial_restriction_multiplicity(Character const &chi, Index g);

// Multiplicity of the trivial representation in tau_j (x) tau_k, computed
// from the rational characters s * (sum of the orbit).
long tensor_trivial_multiplicity(CharacterTable const &t, RationalCharacter const &a,
                                 RationalCharacter const &b);

class GroupAlgebraElement
{
public:
  explicit GroupAlgebraElement(GroupPtr g);
  GroupAlgebraElement(GroupPtr g, std::vector<Rational> coeffs);
  static GroupAlgebraElement basis(GroupPtr g, Index x);

  GroupPtr const &group() const { return _group; }
  Rational const &operator[](Index x) const { return _coeffs[x]; }
  std::vector<Rational> const &coefficients() const { return _coeffs; }

  friend GroupAlgebraElement operator*(GroupAlgebraElement const &a, GroupAlgebraElement const &b);
  friend GroupAlgebraElement operator+(GroupAlgebraElement const &a, GroupAlgebraElement const &b);
  friend bool operator==(GroupAlgebraElement const &a, GroupAlgebraElement const &b)
  { return a._coeffs == b._coeffs; }

  // Commutes with every generator of the group.
  bool is_central() const;

private:
  GroupPtr _group;
  std::vector<Rational> _coeffs;
};

// Coefficients of the central idempotent (chi(1)/|G|) sum_g chi(g^-1) g, per element.
std::vector<Cyclotomic> central_idempotent(Character const &chi);

// Sum of the central idempotents over an orbit; throws std::logic_error if a
// coefficient fails to be rational.
GroupAlgebraElement rational_idempotent(CharacterTable const &t, RationalCharacter const &orbit);

// { g : chi(g) = chi(1) }.
Subgroup kernel_of_character(Character const &chi);

// Plain-text table fixture: header, classes (representative label, order,
// size) and one line of values per character in the cyclotomic grammar.
std::string export_table(CharacterTable const &t);
// Checks the fixture against `g` (classes must match) and re-verifies the
// orthogonality relations before accepting it.  Throws ParseError or GroupError.
CharacterTable import_table(GroupPtr const &g, std::string_view text);

// Row orthogonality, column orthogonality and the degree sum.
bool verify_orthogonality(CharacterTable const &t);

} // namespace isoprod
