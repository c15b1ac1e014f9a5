#pragma once

// Fully enumerated finite groups: construction from recipes, conjugacy
// classes, subgroups, quotients and a few small-group recognizers.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace isoprod
{

using Index = std::uint32_t;

struct GroupError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

// Syntax error in a recipe, word or input file; offset is 0-based into the
// parsed text, line/column are 1-based once known.
struct ParseError : std::runtime_error
{
  ParseError(std::string const &what, std::size_t offset_ = 0, int line_ = 0, int column_ = 0)
    : std::runtime_error(what), offset(offset_), line(line_), column(column_)
  {}
  std::size_t offset;
  int line;
  int column;
};

struct ConjugacyClass
{
  Index representative;        // smallest member index
  std::vector<Index> members;  // sorted
  int element_order;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<FiniteGroup const>;

// Everything needed to assemble a FiniteGroup; produced by the enumerators.
struct GroupData
{
  std::size_t order = 0;
  std::vector<Index> table;      // order * order, row-major: table[a*order+b] = a*b
  std::vector<Index> generators;
  std::vector<std::string> generator_names;
  std::vector<std::string> labels;
  std::string recipe;
};

class FiniteGroup
{
public:
  // Validates the group axioms (associativity via (ab)g = a(bg) for every
  // generator g, which covers all triples) and computes classes.
  static GroupPtr make(GroupData data);

  std::size_t order() const { return _order; }
  Index identity() const { return 0; }
  Index mul(Index a, Index b) const { return _table[static_cast<std::size_t>(a) * _order + b]; }
  Index inv(Index a) const { return _inverse[a]; }
  Index pow(Index a, long k) const;
  // g^-1 x g
  Index conj(Index x, Index g) const { return mul(mul(_inverse[g], x), g); }
  int element_order(Index a) const { return _orders[a]; }
  long exponent() const { return _exponent; }
  bool is_abelian() const;

  std::vector<Index> const &generators() const { return _generators; }
  std::vector<std::string> const &generator_names() const { return _generator_names; }
  std::string const &label(Index a) const { return _labels[a]; }
  std::optional<Index> find(std::string_view label) const;
  std::string const &recipe() const { return _recipe; }

  std::vector<ConjugacyClass> const &classes() const { return _classes; }
  std::size_t class_count() const { return _classes.size(); }
  std::size_t class_of(Index a) const { return _class_of[a]; }
  std::size_t class_size(std::size_t c) const { return _classes[c].members.size(); }
  // Class of rep^k.
  std::size_t power_class(std::size_t c, long k) const { return _class_of[pow(_classes[c].representative, k)]; }
  std::size_t inverse_class(std::size_t c) const { return _inverse_class[c]; }

  std::span<Index const> table() const { return _table; }
  std::span<Index const> inverses() const { return _inverse; }
  std::span<std::size_t const> class_map() const { return _class_of; }

private:
  FiniteGroup() = default;
  void compute_classes();

  std::size_t _order = 0;
  std::vector<Index> _table;
  std::vector<Index> _inverse;
  std::vector<int> _orders;
  long _exponent = 1;
  std::vector<Index> _generators;
  std::vector<std::string> _generator_names;
  std::vector<std::string> _labels;
  std::map<std::string, Index, std::less<>> _label_index;
  std::string _recipe;
  std::vector<ConjugacyClass> _classes;
  std::vector<std::size_t> _class_of;
  std::vector<std::size_t> _inverse_class;
};

struct GroupElement
{
  GroupPtr group;
  Index index;

  std::string const &label() const { return group->label(index); }
  int order() const { return group->element_order(index); }
};

// ------------------------------------------------------------------ words

struct WordLetter
{
  std::string name;
  long exponent;
};
using Word = std::vector<WordLetter>;

// "g1*g2^-1*g4^2"; "1" and "id" denote the empty word.
Word parse_word(std::string_view text);
std::string to_string(Word const &w);

using AliasMap = std::map<std::string, Index, std::less<>>;

// Default aliases g1..gn -> generators.
AliasMap generator_aliases(FiniteGroup const &g);
// Throws GroupError on an undefined name.
Index evaluate_word(FiniteGroup const &g, Word const &w, AliasMap const &aliases);

// ---------------------------------------------------------------- recipes

struct PcRelation
{
  int generator;   // 1-based; left-hand side g_generator^...
  int conjugator;  // 0 for a power relation, else g_generator^g_conjugator
  Word rhs;
};

struct GroupRecipe
{
  enum class Kind
  {
    cyclic,
    dihedral,
    symmetric,
    alternating,
    permutation,
    direct,
    semidirect,
    polycyclic
  };

  Kind kind = Kind::cyclic;
  long n = 1;                                   // cyclic, dihedral (order 2n), symmetric, alternating
  std::vector<std::vector<std::vector<int>>> permutations; // generators as lists of cycles
  std::vector<GroupRecipe> factors;             // direct: all factors; semidirect: {K, H}
  std::vector<std::vector<Word>> action;        // semidirect: per generator of H, images of K's generators
  std::vector<long> relative_orders;            // polycyclic
  std::vector<PcRelation> relations;            // polycyclic

  std::string to_string() const;
};

GroupRecipe parse_group_recipe(std::string_view text);

struct BuildOptions
{
  std::size_t order_bound = 2048;
  bool parallel = true;
};

GroupPtr build_group(GroupRecipe const &recipe, BuildOptions const &opts = {});
inline GroupPtr build_group(std::string_view recipe, BuildOptions const &opts = {})
{
  return build_group(parse_group_recipe(recipe), opts);
}

// ------------------------------------------------------------- subgroups

struct Subgroup
{
  GroupPtr parent;
  std::vector<Index> members;     // sorted
  std::vector<Index> generators;

  std::size_t order() const { return members.size(); }
  bool contains(Index a) const;
};

Subgroup subgroup_generated(GroupPtr const &g, std::vector<Index> const &gens);
bool is_normal(FiniteGroup const &g, Subgroup const &h);

struct QuotientGroup
{
  GroupPtr group;                 // G/H
  std::vector<Index> projection;  // parent index -> quotient index
  Subgroup kernel;
};

// Throws GroupError when h is not normal.
QuotientGroup quotient(GroupPtr const &g, Subgroup const &h);

// Throws std::invalid_argument unless |G| = 8.
bool is_quaternion_q8(FiniteGroup const &g);
bool is_cyclic(FiniteGroup const &g);
// Invariant factors d1 | d2 | ...; throws GroupError for nonabelian groups.
std::vector<long> abelian_invariants(FiniteGroup const &g);
// Short isomorphism-type description for reports ("Z4", "Q8", "Z3^2", ...).
std::string describe_group(FiniteGroup const &g);

} // namespace isoprod
