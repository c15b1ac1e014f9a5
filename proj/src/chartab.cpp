#include "isoprod/chartab.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

#include "isoprod/kernels.hpp"

namespace isoprod
{

bool Character::is_real() const
{
  return std::all_of(values.begin(), values.end(), [](auto const &v) { return v.is_real(); });
}

bool Character::is_rational() const
{
  return std::all_of(values.begin(), values.end(), [](auto const &v) { return v.is_rational(); });
}

Cyclotomic inner_product(Character const &a, Character const &b)
{
  auto const &g = *a.group;
  Cyclotomic acc;
  for (std::size_t c = 0; c < g.class_count(); ++c)
    acc += Cyclotomic(static_cast<long>(g.class_size(c))) * a[c] * b[c].conj();
  return acc * Cyclotomic(Rational(1, static_cast<long>(g.order())));
}

CharacterTable::CharacterTable(GroupPtr group, std::vector<Character> chars, std::uint32_t prime)
  : _group(std::move(group)), _chars(std::move(chars)), _prime(prime)
{}

std::uint32_t dixon_prime(std::size_t order, long exponent)
{
  std::uint64_t root = 0;
  while (root * root < order)
    ++root;
  std::uint64_t bound = 2 * root;
  auto e = static_cast<std::uint64_t>(exponent);
  for (std::uint64_t p = e + 1;; p += e) {
    if (p >= (1ull << 31))
      throw std::logic_error("no suitable prime below 2^31");
    if (p > bound && is_prime(p))
      return static_cast<std::uint32_t>(p);
  }
}

namespace
{

using u32 = std::uint32_t;
using Row = std::vector<u32>;
using Mat = std::vector<Row>;

// Reduced row echelon form in place; returns the pivot columns.  Zero rows are
// removed.
std::vector<std::size_t> rref(Mat &m, PrimeField const &f)
{
  std::vector<std::size_t> pivots;
  if (m.empty())
    return pivots;
  std::size_t cols = m[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0)
      ++piv;
    if (piv == m.size())
      continue;
    std::swap(m[r], m[piv]);
    u32 inv = f.inv(m[r][c]);
    for (auto &x : m[r])
      x = f.mul(x, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0)
        continue;
      u32 factor = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = f.sub(m[i][j], f.mul(factor, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

// Basis of { x : A x = 0 }.
Mat nullspace(Mat a, std::size_t cols, PrimeField const &f)
{
  auto pivots = rref(a, f);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots)
    is_pivot[c] = 1;
  Mat out;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free])
      continue;
    Row v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = f.sub(0, a[i][free]);
    out.push_back(std::move(v));
  }
  return out;
}

// Characteristic polynomial via Hessenberg reduction, lowest degree first.
Row charpoly(Mat h, PrimeField const &f)
{
  std::size_t n = h.size();
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t i = j + 1;
    while (i < n && h[i][j] == 0)
      ++i;
    if (i == n)
      continue;
    if (i != j + 1) {
      std::swap(h[i], h[j + 1]);
      for (auto &row : h)
        std::swap(row[i], row[j + 1]);
    }
    u32 inv = f.inv(h[j + 1][j]);
    for (std::size_t r = j + 2; r < n; ++r) {
      u32 u = f.mul(h[r][j], inv);
      if (u == 0)
        continue;
      for (std::size_t c = 0; c < n; ++c)
        h[r][c] = f.sub(h[r][c], f.mul(u, h[j + 1][c]));
      for (std::size_t c = 0; c < n; ++c)
        h[c][j + 1] = f.add(h[c][j + 1], f.mul(u, h[c][r]));
    }
  }
  // p_m = (x - h_mm) p_{m-1} - sum_i (prod of subdiagonal) h_{m-i,m} p_{m-i-1}
  std::vector<Row> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Row next(m + 1, 0);
    for (std::size_t d = 0; d < p[m - 1].size(); ++d) {
      next[d + 1] = f.add(next[d + 1], p[m - 1][d]);
      next[d] = f.sub(next[d], f.mul(h[m - 1][m - 1], p[m - 1][d]));
    }
    u32 t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = f.mul(t, h[m - i][m - i - 1]);
      u32 coef = f.mul(t, h[m - i - 1][m - 1]);
      if (coef == 0)
        continue;
      for (std::size_t d = 0; d < p[m - i - 1].size(); ++d)
        next[d] = f.sub(next[d], f.mul(coef, p[m - i - 1][d]));
    }
    p[m] = std::move(next);
  }
  return p[n];
}

std::vector<u32> roots(Row const &poly, PrimeField const &f)
{
  std::vector<u32> out;
  for (u32 x = 0; x < f.modulus(); ++x) {
    u32 acc = 0;
    for (std::size_t d = poly.size(); d-- > 0;)
      acc = f.add(f.mul(acc, x), poly[d]);
    if (acc == 0)
      out.push_back(x);
  }
  return out;
}

// Subspace spanned by RREF rows.
struct Space
{
  Mat rows;
  std::vector<std::size_t> pivots;
};

class ClassAlgebra
{
public:
  ClassAlgebra(std::vector<u32> constants, std::size_t k, PrimeField const &f)
    : _a(std::move(constants)), _k(k), _f(f)
  {}

  // sum_j c_j M_j applied to w, (M_j)_{il} = a_{ijl}.
  Row apply(std::vector<std::pair<std::size_t, u32>> const &combo, Row const &w) const
  {
    Row out(_k, 0);
    for (auto [j, c] : combo)
      for (std::size_t i = 0; i < _k; ++i) {
        std::uint64_t acc = 0;
        u32 const *row = &_a[(i * _k + j) * _k];
        for (std::size_t l = 0; l < _k; ++l)
          if (w[l] && row[l])
            acc = (acc + static_cast<std::uint64_t>(row[l] % _f.modulus()) * w[l]) % _f.modulus();
        out[i] = _f.add(out[i], _f.mul(c, static_cast<u32>(acc)));
      }
    return out;
  }

  // Splits W along the eigenspaces of the combination, or returns nothing
  // when it acts as a scalar on W.
  std::vector<Space> split(Space const &w, std::vector<std::pair<std::size_t, u32>> const &combo) const
  {
    std::size_t d = w.rows.size();
    Mat a(d, Row(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      Row img = apply(combo, w.rows[i]);
      for (std::size_t m = 0; m < d; ++m)
        a[m][i] = img[w.pivots[m]];
    }
    auto ev = roots(charpoly(a, _f), _f);
    if (ev.size() < 2)
      return {};
    std::vector<Space> parts;
    std::size_t total = 0;
    for (u32 lambda : ev) {
      Mat shifted = a;
      for (std::size_t i = 0; i < d; ++i)
        shifted[i][i] = _f.sub(shifted[i][i], lambda);
      Mat coords = nullspace(shifted, d, _f);
      Space s;
      for (auto const &c : coords) {
        Row v(_k, 0);
        for (std::size_t i = 0; i < d; ++i)
          if (c[i])
            for (std::size_t l = 0; l < _k; ++l)
              v[l] = _f.add(v[l], _f.mul(c[i], w.rows[i][l]));
        s.rows.push_back(std::move(v));
      }
      s.pivots = rref(s.rows, _f);
      total += s.rows.size();
      parts.push_back(std::move(s));
    }
    if (total != d)
      throw std::logic_error("class matrix is not diagonalizable modulo the Dixon prime");
    return parts;
  }

private:
  std::vector<u32> _a;
  std::size_t _k;
  PrimeField const &_f;
};

std::vector<Character> dixon(GroupPtr const &g, TableOptions const &opts, u32 p)
{
  auto const &G = *g;
  std::size_t n = G.order(), k = G.class_count();
  PrimeField f(p);

  std::vector<Index> reps;
  for (auto const &c : G.classes())
    reps.push_back(c.representative);
  kernels::ClassInput in{n, G.table(), G.inverses(), G.class_map(), reps};
  auto constants = opts.parallel ? kernels::class_constants_parallel(in) : kernels::class_constants_serial(in);
  ClassAlgebra alg(std::move(constants), k, f);

  Space full;
  for (std::size_t i = 0; i < k; ++i) {
    Row r(k, 0);
    r[i] = 1;
    full.rows.push_back(std::move(r));
    full.pivots.push_back(i);
  }
  std::vector<Space> work{full}, lines;
  while (!work.empty()) {
    Space w = std::move(work.back());
    work.pop_back();
    if (w.rows.size() == 1) {
      lines.push_back(std::move(w));
      continue;
    }
    std::vector<Space> parts;
    for (std::size_t j = 1; j < k && parts.empty(); ++j)
      parts = alg.split(w, {{j, 1}});
    // Deterministic combinations sum_j (j+1)^t M_j as a fallback.
    for (u32 t = 1; t <= 4 && parts.empty(); ++t) {
      std::vector<std::pair<std::size_t, u32>> combo;
      for (std::size_t j = 1; j < k; ++j)
        combo.emplace_back(j, f.pow(static_cast<u32>(j + 1), t));
      parts = alg.split(w, combo);
    }
    if (parts.empty())
      throw std::logic_error("eigenspace splitting stalled in the character table computation");
    for (auto &s : parts)
      work.push_back(std::move(s));
  }

  long e = G.exponent();
  u32 ze = f.pow(f.primitive_root(), (p - 1) / static_cast<u32>(e));
  std::vector<std::vector<std::size_t>> powers(k);
  for (std::size_t c = 0; c < k; ++c) {
    auto o = static_cast<long>(G.classes()[c].element_order);
    for (long t = 0; t < o; ++t)
      powers[c].push_back(G.power_class(c, t));
  }

  std::vector<Character> chars;
  for (auto const &line : lines) {
    Row const &v = line.rows[0];
    if (v[0] == 0)
      throw std::logic_error("central character vanishes at the identity class");
    u32 scale = f.inv(v[0]);
    Row omega(k);
    for (std::size_t c = 0; c < k; ++c)
      omega[c] = f.mul(v[c], scale);

    // d^2 = |G| / sum_c omega_c omega_{c^-1} / |C|
    u32 s = 0;
    for (std::size_t c = 0; c < k; ++c)
      s = f.add(s, f.mul(f.mul(omega[c], omega[G.inverse_class(c)]),
                         f.inv(f.reduce(static_cast<long long>(G.class_size(c))))));
    if (s == 0)
      throw std::logic_error("degenerate central character");
    u32 target = f.mul(f.reduce(static_cast<long long>(n)), f.inv(s));
    long degree = 0;
    for (long d = 1; static_cast<std::size_t>(d * d) <= n; ++d)
      if (n % static_cast<std::size_t>(d) == 0 && f.reduce(d * d) == target) {
        degree = d;
        break;
      }
    if (degree == 0)
      throw std::logic_error("no admissible character degree");

    Row modval(k);
    for (std::size_t c = 0; c < k; ++c)
      modval[c] = f.mul(f.mul(omega[c], f.reduce(degree)),
                        f.inv(f.reduce(static_cast<long long>(G.class_size(c)))));

    Character chi{g, {}};
    for (std::size_t c = 0; c < k; ++c) {
      auto o = static_cast<long>(G.classes()[c].element_order);
      u32 zo = f.pow(ze, static_cast<std::uint64_t>(e / o));
      u32 zinv = f.inv(zo);
      u32 oinv = f.inv(f.reduce(o));
      std::vector<std::pair<long, Rational>> terms;
      long total = 0;
      for (long a = 0; a < o; ++a) {
        // m_a = (1/o) sum_t chi(g^t) z^(-a t)
        u32 step = f.pow(zinv, static_cast<std::uint64_t>(a)), w = 1, acc = 0;
        for (long t = 0; t < o; ++t) {
          acc = f.add(acc, f.mul(modval[powers[c][static_cast<std::size_t>(t)]], w));
          w = f.mul(w, step);
        }
        long m = f.mul(acc, oinv);
        if (m > degree)
          throw std::logic_error("eigenvalue multiplicity out of range while lifting");
        total += m;
        if (m)
          terms.emplace_back(a, Rational(m));
      }
      if (total != degree)
        throw std::logic_error("lifted eigenvalue multiplicities do not sum to the degree");
      chi.values.push_back(Cyclotomic::from_power_sum(o, terms));
    }
    chars.push_back(std::move(chi));
  }
  return chars;
}

void sort_rows(std::vector<Character> &chars)
{
  auto is_trivial = [](Character const &c) {
    return std::all_of(c.values.begin(), c.values.end(), [](auto const &v) { return v == Cyclotomic(1); });
  };
  auto triv = std::find_if(chars.begin(), chars.end(), is_trivial);
  if (triv == chars.end())
    throw std::logic_error("character table lacks the trivial character");
  std::iter_swap(chars.begin(), triv);
  std::sort(chars.begin() + 1, chars.end(), [](Character const &a, Character const &b) {
    if (a.degree() != b.degree())
      return a.degree() < b.degree();
    return a.values < b.values;
  });
}

} // namespace

CharacterTable character_table(GroupPtr const &g, TableOptions const &opts)
{
  if (g->class_count() == 1)
    return CharacterTable(g, {Character{g, {Cyclotomic(1)}}}, 0);
  u32 p = dixon_prime(g->order(), g->exponent());
  auto chars = dixon(g, opts, p);
  long sum = 0;
  for (auto const &c : chars)
    sum += c.degree() * c.degree();
  if (sum != static_cast<long>(g->order()))
    throw std::logic_error("character degrees do not satisfy sum of squares = |G|");
  sort_rows(chars);
  return CharacterTable(g, std::move(chars), p);
}

int frobenius_schur(Character const &chi)
{
  auto const &g = *chi.group;
  Cyclotomic acc;
  for (std::size_t c = 0; c < g.class_count(); ++c)
    acc += Cyclotomic(static_cast<long>(g.class_size(c))) * chi[g.power_class(c, 2)];
  Rational v = acc.to_rational() / Rational(static_cast<long>(g.order()));
  return static_cast<int>(v.to_long());
}

char const *to_string(SchurBasis b)
{
  switch (b) {
  case SchurBasis::linear: return "linear";
  case SchurBasis::quaternionic: return "indicator -1";
  case SchurBasis::real_witness: return "indicator +1 witness";
  case SchurBasis::heuristic: return "heuristic";
  }
  return "?";
}

std::vector<RationalCharacter> galois_orbits(CharacterTable const &t)
{
  auto const &g = *t.group();
  long e = g.exponent();
  std::map<std::vector<Cyclotomic>, std::size_t> row_of;
  for (std::size_t i = 0; i < t.size(); ++i)
    row_of.emplace(t[i].values, i);

  std::vector<char> seen(t.size(), 0);
  std::vector<RationalCharacter> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (seen[i])
      continue;
    RationalCharacter rc;
    // sigma_u(chi)(C) = chi(C^u) for u prime to the exponent.
    for (long u = 1; u <= e; ++u) {
      if (std::gcd(u, e) != 1)
        continue;
      std::vector<Cyclotomic> img;
      for (std::size_t c = 0; c < g.class_count(); ++c)
        img.push_back(t[i][g.power_class(c, u)]);
      auto it = row_of.find(img);
      if (it == row_of.end())
        throw std::logic_error("Galois image of a character is not a table row");
      if (!seen[it->second]) {
        seen[it->second] = 1;
        rc.constituents.push_back(it->second);
      }
    }
    std::sort(rc.constituents.begin(), rc.constituents.end());
    auto const &chi = t[rc.constituents[0]];
    rc.degree = chi.degree();
    rc.field_degree = static_cast<long>(rc.constituents.size());
    rc.indicator = frobenius_schur(chi);
    if (rc.degree == 1) {
      rc.schur_basis = SchurBasis::linear;
    } else if (rc.indicator == -1) {
      rc.schur_basis = SchurBasis::quaternionic;
      rc.schur_index = 2;
    } else if (rc.indicator == 1) {
      rc.schur_basis = SchurBasis::real_witness;
    } else {
      rc.schur_basis = SchurBasis::heuristic;
    }
    out.push_back(std::move(rc));
  }
  return out;
}

std::size_t orbit_of(std::vector<RationalCharacter> const &orbits, std::size_t row)
{
  for (std::size_t j = 0; j < orbits.size(); ++j)
    for (auto r : orbits[j].constituents)
      if (r == row)
        return j;
  throw std::out_of_range("row not in any orbit");
}

long trivial_restriction_multiplicity(Character const &chi, Index g)
{
  auto const &G = *chi.group;
  long o = G.element_order(g);
  Cyclotomic acc;
  Index x = G.identity();
  for (long k = 0; k < o; ++k) {
    acc += chi.at(x);
    x = G.mul(x, g);
  }
  if (!acc.is_rational())
    throw std::logic_error("restriction multiplicity is not rational: corrupted table");
  Rational m = acc.to_rational() / Rational(o);
  if (!m.is_integer() || m.sign() < 0)
    throw std::logic_error("restriction multiplicity is not a non-negative integer: corrupted table");
  return m.to_long();
}

namespace
{

// Values of s * (orbit sum), one per class.
std::vector<Rational> rational_values(CharacterTable const &t, RationalCharacter const &rc)
{
  std::vector<Rational> out;
  for (std::size_t c = 0; c < t.group()->class_count(); ++c) {
    Cyclotomic acc;
    for (auto i : rc.constituents)
      acc += t[i][c];
    out.push_back(acc.to_rational() * Rational(rc.schur_index));
  }
  return out;
}

} // namespace

long tensor_trivial_multiplicity(CharacterTable const &t, RationalCharacter const &a,
                                 RationalCharacter const &b)
{
  auto const &g = *t.group();
  auto va = rational_values(t, a), vb = rational_values(t, b);
  Rational acc;
  for (std::size_t c = 0; c < g.class_count(); ++c)
    acc += Rational(static_cast<long>(g.class_size(c))) * va[c] * vb[c];
  return (acc / Rational(static_cast<long>(g.order()))).to_long();
}

// -------------------------------------------------------- group algebra

GroupAlgebraElement::GroupAlgebraElement(GroupPtr g) : _group(std::move(g)), _coeffs(_group->order()) {}

GroupAlgebraElement::GroupAlgebraElement(GroupPtr g, std::vector<Rational> coeffs)
  : _group(std::move(g)), _coeffs(std::move(coeffs))
{
  if (_coeffs.size() != _group->order())
    throw std::invalid_argument("group algebra element needs one coefficient per element");
}

GroupAlgebraElement GroupAlgebraElement::basis(GroupPtr g, Index x)
{
  GroupAlgebraElement e(std::move(g));
  e._coeffs.at(x) = Rational(1);
  return e;
}

GroupAlgebraElement operator*(GroupAlgebraElement const &a, GroupAlgebraElement const &b)
{
  auto const &g = *a._group;
  GroupAlgebraElement out(a._group);
  std::vector<Index> sb;
  for (Index y = 0; y < g.order(); ++y)
    if (!b._coeffs[y].is_zero())
      sb.push_back(y);
  for (Index x = 0; x < g.order(); ++x) {
    if (a._coeffs[x].is_zero())
      continue;
    for (auto y : sb)
      out._coeffs[g.mul(x, y)] += a._coeffs[x] * b._coeffs[y];
  }
  return out;
}

GroupAlgebraElement operator+(GroupAlgebraElement const &a, GroupAlgebraElement const &b)
{
  GroupAlgebraElement out(a);
  for (std::size_t i = 0; i < out._coeffs.size(); ++i)
    out._coeffs[i] += b._coeffs[i];
  return out;
}

bool GroupAlgebraElement::is_central() const
{
  auto const &g = *_group;
  // (s a)[y] = a[s^-1 y] and (a s)[y] = a[y s^-1]
  for (auto s : g.generators()) {
    Index si = g.inv(s);
    for (Index y = 0; y < g.order(); ++y)
      if (_coeffs[g.mul(si, y)] != _coeffs[g.mul(y, si)])
        return false;
  }
  return true;
}

std::vector<Cyclotomic> central_idempotent(Character const &chi)
{
  auto const &g = *chi.group;
  Cyclotomic scale(Rational(chi.degree(), static_cast<long>(g.order())));
  std::vector<Cyclotomic> out;
  out.reserve(g.order());
  for (Index x = 0; x < g.order(); ++x)
    out.push_back(scale * chi.at(g.inv(x)));
  return out;
}

GroupAlgebraElement rational_idempotent(CharacterTable const &t, RationalCharacter const &orbit)
{
  auto const &g = *t.group();
  std::vector<Rational> per_class;
  for (std::size_t c = 0; c < g.class_count(); ++c) {
    Cyclotomic acc;
    for (auto i : orbit.constituents)
      acc += t[i][g.inverse_class(c)];
    if (!acc.is_rational())
      throw std::logic_error("orbit sum of idempotent coefficients is not rational");
    per_class.push_back(acc.to_rational() * Rational(orbit.degree, static_cast<long>(g.order())));
  }
  std::vector<Rational> coeffs;
  coeffs.reserve(g.order());
  for (Index x = 0; x < g.order(); ++x)
    coeffs.push_back(per_class[g.class_of(x)]);
  return GroupAlgebraElement(t.group(), std::move(coeffs));
}

Subgroup kernel_of_character(Character const &chi)
{
  auto const &g = chi.group;
  std::vector<Index> members;
  for (Index x = 0; x < g->order(); ++x)
    if (chi.at(x) == chi[0])
      members.push_back(x);
  std::vector<Index> gens;
  Subgroup h = subgroup_generated(g, gens);
  for (auto x : members)
    if (!h.contains(x)) {
      gens.push_back(x);
      h = subgroup_generated(g, gens);
    }
  if (h.members != members)
    throw std::logic_error("character kernel is not a subgroup");
  return h;
}

// ------------------------------------------------------- serialization

std::string export_table(CharacterTable const &t)
{
  auto const &g = *t.group();
  std::ostringstream os;
  os << "isoprod-chartab 1\n";
  os << "recipe " << g.recipe() << "\n";
  os << "order " << g.order() << "\n";
  os << "prime " << t.prime() << "\n";
  os << "classes " << g.class_count() << "\n";
  for (auto const &c : g.classes())
    os << "class " << c.element_order << " " << c.members.size() << " " << g.label(c.representative) << "\n";
  os << "characters " << t.size() << "\n";
  for (auto const &chi : t.characters()) {
    for (std::size_t c = 0; c < chi.values.size(); ++c)
      os << (c ? " ; " : "") << chi.values[c].to_string();
    os << "\n";
  }
  return os.str();
}

CharacterTable import_table(GroupPtr const &g, std::string_view text)
{
  std::vector<std::string> lines;
  {
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line))
      lines.push_back(line);
  }
  std::size_t at = 0;
  auto next = [&](std::string const &key) -> std::string {
    if (at >= lines.size())
      throw ParseError("unexpected end of table fixture, expected '" + key + "'", 0, static_cast<int>(at + 1), 1);
    auto const &l = lines[at++];
    if (l.rfind(key, 0) != 0)
      throw ParseError("expected '" + key + "'", 0, static_cast<int>(at), 1);
    return l.size() > key.size() ? l.substr(key.size() + 1) : std::string();
  };
  auto number = [&](std::string const &key) -> std::size_t {
    auto v = next(key);
    try {
      return std::stoul(v);
    } catch (std::exception const &) {
      throw ParseError("expected a number after '" + key + "'", 0, static_cast<int>(at), 1);
    }
  };
  if (next("isoprod-chartab") != "1")
    throw ParseError("unsupported table fixture version", 0, 1, 1);
  next("recipe");
  if (number("order") != g->order())
    throw GroupError("table fixture is for a group of a different order");
  auto prime = static_cast<std::uint32_t>(number("prime"));
  std::size_t k = number("classes");
  if (k != g->class_count())
    throw GroupError("table fixture has a different number of classes");
  for (std::size_t c = 0; c < k; ++c) {
    auto rest = next("class");
    std::istringstream is(rest);
    long ord = 0;
    std::size_t size = 0;
    std::string label;
    is >> ord >> size;
    std::getline(is >> std::ws, label);
    auto const &cl = g->classes()[c];
    if (ord != cl.element_order || size != cl.members.size() || label != g->label(cl.representative))
      throw GroupError("table fixture class " + std::to_string(c + 1) + " does not match the group");
  }
  if (number("characters") != k)
    throw GroupError("table fixture must list one character per class");
  std::vector<Character> chars;
  for (std::size_t i = 0; i < k; ++i) {
    if (at >= lines.size())
      throw ParseError("missing character rows", 0, static_cast<int>(at + 1), 1);
    std::string const &l = lines[at++];
    Character chi{g, {}};
    std::size_t start = 0;
    for (;;) {
      auto end = l.find(';', start);
      try {
        chi.values.push_back(Cyclotomic::parse(l.substr(start, end == std::string::npos ? end : end - start)));
      } catch (std::invalid_argument const &e) {
        throw ParseError(e.what(), 0, static_cast<int>(at), static_cast<int>(start + 1));
      }
      if (end == std::string::npos)
        break;
      start = end + 1;
    }
    if (chi.values.size() != k)
      throw ParseError("character row has the wrong number of values", 0, static_cast<int>(at), 1);
    chars.push_back(std::move(chi));
  }
  CharacterTable t(g, std::move(chars), prime);
  if (!verify_orthogonality(t))
    throw GroupError("table fixture fails the orthogonality relations");
  return t;
}

namespace
{

// Character values as integer coefficient vectors in Q(z_e); sums of
// products are accumulated unreduced and reduced mod Phi_e once.
class IntegralValues
{
public:
  IntegralValues(CharacterTable const &t, long e) : _phi(cyclotomic_polynomial(e)), _e(e)
  {
    std::size_t k = t.size();
    _deg = _phi.size() - 1;
    _val.resize(k * k);
    _bar.resize(k * k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = 0; c < k; ++c) {
        if (!convert(t[i][c], _val[i * k + c]) || !convert(t[i][c].conj(), _bar[i * k + c]))
          _ok = false;
      }
    _k = k;
  }

  bool ok() const { return _ok; }

  // sum over (i, c, j, d) terms w * val[i][c] * bar[j][d] equals target?
  template <class Terms> bool sum_equals(Terms const &terms, long target) const
  {
    std::vector<__int128> acc(2 * _deg + 1, 0);
    for (auto const &[w, a, b] : terms) {
      auto const &x = _val[a];
      auto const &y = _bar[b];
      for (std::size_t p = 0; p < _deg; ++p)
        if (x[p])
          for (std::size_t q = 0; q < _deg; ++q)
            acc[p + q] += static_cast<__int128>(w) * x[p] * y[q];
    }
    // reduce by the monic cyclotomic polynomial
    for (std::size_t top = acc.size(); top-- > _deg;) {
      __int128 c = acc[top];
      if (c == 0)
        continue;
      for (std::size_t j = 0; j <= _deg; ++j)
        acc[top - _deg + j] -= c * _phi[j];
    }
    if (acc[0] != target)
      return false;
    for (std::size_t p = 1; p < _deg; ++p)
      if (acc[p] != 0)
        return false;
    return true;
  }

  std::size_t index(std::size_t row, std::size_t cls) const { return row * _k + cls; }

private:
  bool convert(Cyclotomic const &v, std::vector<long> &out) const
  {
    auto coeffs = v.coefficients_in(_e);
    out.resize(_deg);
    for (std::size_t p = 0; p < _deg; ++p) {
      if (!coeffs[p].is_integer())
        return false;
      out[p] = coeffs[p].to_long();
    }
    return true;
  }

  std::vector<long> _phi;
  long _e;
  std::size_t _deg = 0, _k = 0;
  std::vector<std::vector<long>> _val, _bar;
  bool _ok = true;
};

} // namespace

bool verify_orthogonality(CharacterTable const &t)
{
  auto const &g = *t.group();
  std::size_t k = g.class_count();
  if (t.size() != k)
    return false;
  long deg2 = 0;
  for (auto const &chi : t.characters()) {
    if (chi.values.size() != k)
      return false;
    deg2 += chi.degree() * chi.degree();
  }
  if (deg2 != static_cast<long>(g.order()))
    return false;
  for (auto const &chi : t.characters())
    for (auto const &v : chi.values)
      if (g.exponent() % v.conductor() != 0)
        return false;

  IntegralValues iv(t, g.exponent());
  if (!iv.ok())
    return false; // character values are algebraic integers
  auto n = static_cast<long>(g.order());
  using Term = std::tuple<long, std::size_t, std::size_t>;
  std::vector<Term> terms;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      terms.clear();
      for (std::size_t c = 0; c < k; ++c)
        terms.emplace_back(static_cast<long>(g.class_size(c)), iv.index(i, c), iv.index(j, c));
      if (!iv.sum_equals(terms, i == j ? n : 0))
        return false;
    }
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t d = c; d < k; ++d) {
      terms.clear();
      for (std::size_t i = 0; i < k; ++i)
        terms.emplace_back(1L, iv.index(i, c), iv.index(i, d));
      long want = c == d ? n / static_cast<long>(g.class_size(c)) : 0;
      if (!iv.sum_equals(terms, want))
        return false;
    }
  return true;
}

} // namespace isoprod
