#include "isoprod/groups.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "isoprod/exactmath.hpp"
#include "isoprod/kernels.hpp"

namespace isoprod
{

// ------------------------------------------------------------ FiniteGroup

GroupPtr FiniteGroup::make(GroupData data)
{
  std::size_t n = data.order;
  if (n == 0)
    throw GroupError("group must have at least one element");
  if (data.table.size() != n * n)
    throw GroupError("multiplication table has wrong size");
  if (data.labels.size() != n)
    throw GroupError("label count does not match group order");

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->_order = n;
  g->_table = std::move(data.table);
  g->_generators = std::move(data.generators);
  g->_generator_names = std::move(data.generator_names);
  g->_labels = std::move(data.labels);
  g->_recipe = std::move(data.recipe);
  auto const &t = g->_table;

  for (auto x : t)
    if (x >= n)
      throw GroupError("multiplication table entry out of range");
  for (auto x : g->_generators)
    if (x >= n)
      throw GroupError("generator out of range");
  for (std::size_t a = 0; a < n; ++a)
    if (t[a] != a || t[a * n] != a)
      throw GroupError("element 0 is not a two-sided identity");

  // Latin square: every row and column is a permutation.
  std::vector<std::uint32_t> seen(n, 0);
  std::uint32_t stamp = 0;
  for (std::size_t a = 0; a < n; ++a) {
    ++stamp;
    for (std::size_t b = 0; b < n; ++b) {
      auto &s = seen[t[a * n + b]];
      if (s == stamp)
        throw GroupError("multiplication table row is not a permutation");
      s = stamp;
    }
    ++stamp;
    for (std::size_t b = 0; b < n; ++b) {
      auto &s = seen[t[b * n + a]];
      if (s == stamp)
        throw GroupError("multiplication table column is not a permutation");
      s = stamp;
    }
  }

  // The generators must generate; then (ab)g = a(bg) for every generator g
  // implies associativity for all triples by induction on word length.
  {
    std::vector<char> reached(n, 0);
    std::vector<Index> queue{0};
    reached[0] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (auto s : g->_generators) {
        Index y = t[queue[i] * n + s];
        if (!reached[y]) {
          reached[y] = 1;
          queue.push_back(y);
        }
      }
    if (queue.size() != n)
      throw GroupError("generators do not generate the group");
  }
  for (auto s : g->_generators)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (t[t[a * n + b] * n + s] != t[a * n + t[b * n + s]])
          throw GroupError("multiplication is not associative");

  g->_inverse.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (t[a * n + b] == 0) {
        g->_inverse[a] = static_cast<Index>(b);
        break;
      }

  g->_orders.assign(n, 1);
  long exponent = 1;
  for (std::size_t a = 1; a < n; ++a) {
    Index x = static_cast<Index>(a);
    int k = 1;
    while (x != 0) {
      x = t[x * n + a];
      ++k;
    }
    g->_orders[a] = k;
    exponent = std::lcm(exponent, static_cast<long>(k));
  }
  g->_exponent = exponent;

  for (std::size_t a = 0; a < n; ++a)
    g->_label_index.emplace(g->_labels[a], static_cast<Index>(a));

  g->compute_classes();
  return g;
}

Index FiniteGroup::pow(Index a, long k) const
{
  long o = _orders[a];
  long e = ((k % o) + o) % o;
  Index r = 0;
  Index base = a;
  while (e > 0) {
    if (e & 1)
      r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

bool FiniteGroup::is_abelian() const
{
  for (auto a : _generators)
    for (auto b : _generators)
      if (mul(a, b) != mul(b, a))
        return false;
  return true;
}

std::optional<Index> FiniteGroup::find(std::string_view label) const
{
  auto it = _label_index.find(label);
  if (it == _label_index.end())
    return std::nullopt;
  return it->second;
}

void FiniteGroup::compute_classes()
{
  std::size_t n = _order;
  std::vector<long> cls(n, -1);
  std::vector<ConjugacyClass> found;
  for (std::size_t x = 0; x < n; ++x) {
    if (cls[x] >= 0)
      continue;
    long id = static_cast<long>(found.size());
    ConjugacyClass c{static_cast<Index>(x), {static_cast<Index>(x)}, _orders[x]};
    cls[x] = id;
    for (std::size_t i = 0; i < c.members.size(); ++i)
      for (auto s : _generators) {
        Index y = conj(c.members[i], s);
        if (cls[y] < 0) {
          cls[y] = id;
          c.members.push_back(y);
        }
      }
    std::sort(c.members.begin(), c.members.end());
    found.push_back(std::move(c));
  }
  // Representatives are the smallest members and were met in increasing order,
  // so a stable sort on element order gives (order, smallest index).
  std::stable_sort(found.begin(), found.end(),
                   [](auto const &a, auto const &b) { return a.element_order < b.element_order; });
  _classes = std::move(found);
  _class_of.assign(n, 0);
  for (std::size_t c = 0; c < _classes.size(); ++c)
    for (auto m : _classes[c].members)
      _class_of[m] = c;
  _inverse_class.resize(_classes.size());
  for (std::size_t c = 0; c < _classes.size(); ++c)
    _inverse_class[c] = _class_of[_inverse[_classes[c].representative]];
}

// ------------------------------------------------------------------ parsing

namespace
{

class Cursor
{
public:
  explicit Cursor(std::string_view text) : _text(text) {}

  void skip_ws()
  {
    while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
      ++_pos;
  }
  bool at_end()
  {
    skip_ws();
    return _pos >= _text.size();
  }
  char peek()
  {
    skip_ws();
    return _pos < _text.size() ? _text[_pos] : '\0';
  }
  bool accept(char c)
  {
    if (peek() == c) {
      ++_pos;
      return true;
    }
    return false;
  }
  void expect(char c)
  {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }
  std::string ident()
  {
    skip_ws();
    std::size_t start = _pos;
    while (_pos < _text.size() &&
           (std::isalnum(static_cast<unsigned char>(_text[_pos])) || _text[_pos] == '_'))
      ++_pos;
    if (start == _pos || std::isdigit(static_cast<unsigned char>(_text[start])))
      fail_at(start, "expected a name");
    return std::string(_text.substr(start, _pos - start));
  }
  long integer()
  {
    skip_ws();
    std::size_t start = _pos;
    if (_pos < _text.size() && (_text[_pos] == '-' || _text[_pos] == '+'))
      ++_pos;
    std::size_t digits = _pos;
    while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos])))
      ++_pos;
    if (digits == _pos)
      fail_at(start, "expected an integer");
    if (_pos - digits > 12)
      fail_at(start, "integer too large");
    return std::stol(std::string(_text.substr(start, _pos - start)));
  }
  bool next_is_digit()
  {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+';
  }
  std::size_t pos() const { return _pos; }
  [[noreturn]] void fail(std::string const &msg) { fail_at(_pos, msg); }
  [[noreturn]] void fail_at(std::size_t at, std::string const &msg)
  {
    throw ParseError(msg + " at offset " + std::to_string(at), at);
  }

private:
  std::string_view _text;
  std::size_t _pos = 0;
};

// word := '1' | 'id' | letter ('*' letter)* ; letter := name ['^' int]
Word parse_word_at(Cursor &cur)
{
  Word w;
  if (cur.peek() == '1') {
    cur.integer();
    return w;
  }
  for (;;) {
    std::size_t at = cur.pos();
    std::string name = cur.ident();
    if (name == "id") {
      if (!w.empty())
        cur.fail_at(at, "'id' cannot appear inside a product");
      return w;
    }
    long e = 1;
    if (cur.accept('^'))
      e = cur.integer();
    w.push_back({std::move(name), e});
    if (!cur.accept('*'))
      break;
  }
  return w;
}

int generator_number(std::string const &name, Cursor &cur, std::size_t at)
{
  if (name.size() < 2 || name[0] != 'g' ||
      !std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    cur.fail_at(at, "expected a generator name g1, g2, ...");
  return std::stoi(name.substr(1));
}

std::vector<int> parse_cycles(Cursor &cur)
{
  // One generator: sequence of cycles "(1,2,3)(4,5)" or "()".
  std::vector<int> flat;
  if (cur.peek() != '(')
    cur.fail("expected a permutation in cycle notation");
  while (cur.peek() == '(') {
    cur.expect('(');
    if (cur.accept(')'))
      continue;
    do {
      std::size_t at = cur.pos();
      long p = cur.integer();
      if (p < 1 || p > 65535)
        cur.fail_at(at, "permutation point out of range");
      flat.push_back(static_cast<int>(p));
    } while (cur.accept(','));
    cur.expect(')');
    flat.push_back(0); // cycle separator
  }
  return flat;
}

GroupRecipe parse_recipe_at(Cursor &cur)
{
  GroupRecipe r;
  std::size_t at = cur.pos();
  std::string head = cur.ident();
  cur.expect('(');
  auto positive = [&](long v, std::size_t where) {
    if (v < 1)
      cur.fail_at(where, "expected a positive integer");
    return v;
  };
  if (head == "cyclic" || head == "dihedral" || head == "symmetric" || head == "alternating") {
    r.kind = head == "cyclic"      ? GroupRecipe::Kind::cyclic
             : head == "dihedral"  ? GroupRecipe::Kind::dihedral
             : head == "symmetric" ? GroupRecipe::Kind::symmetric
                                   : GroupRecipe::Kind::alternating;
    std::size_t w = cur.pos();
    r.n = positive(cur.integer(), w);
  } else if (head == "perm") {
    r.kind = GroupRecipe::Kind::permutation;
    if (cur.peek() != ')') {
      do {
        auto flat = parse_cycles(cur);
        std::vector<std::vector<int>> cycles;
        std::vector<int> cycle;
        for (int p : flat) {
          if (p == 0) {
            cycles.push_back(std::move(cycle));
            cycle.clear();
          } else {
            cycle.push_back(p);
          }
        }
        r.permutations.push_back(std::move(cycles));
      } while (cur.accept(','));
    }
  } else if (head == "product") {
    r.kind = GroupRecipe::Kind::direct;
    do
      r.factors.push_back(parse_recipe_at(cur));
    while (cur.accept(','));
  } else if (head == "semidirect") {
    r.kind = GroupRecipe::Kind::semidirect;
    r.factors.push_back(parse_recipe_at(cur));
    cur.expect(',');
    r.factors.push_back(parse_recipe_at(cur));
    while (cur.accept(',')) {
      cur.expect('[');
      std::vector<Word> images;
      if (cur.peek() != ']') {
        do
          images.push_back(parse_word_at(cur));
        while (cur.accept(','));
      }
      cur.expect(']');
      r.action.push_back(std::move(images));
    }
  } else if (head == "pc") {
    r.kind = GroupRecipe::Kind::polycyclic;
    cur.expect('[');
    do {
      std::size_t w = cur.pos();
      long p = cur.integer();
      if (p < 2)
        cur.fail_at(w, "relative orders must be at least 2");
      r.relative_orders.push_back(p);
    } while (cur.accept(','));
    cur.expect(']');
    while (cur.accept(',')) {
      PcRelation rel{};
      std::size_t w = cur.pos();
      rel.generator = generator_number(cur.ident(), cur, w);
      cur.expect('^');
      if (cur.next_is_digit()) {
        std::size_t e_at = cur.pos();
        long e = cur.integer();
        std::size_t g = static_cast<std::size_t>(rel.generator);
        if (g >= 1 && g <= r.relative_orders.size() && e != r.relative_orders[g - 1])
          cur.fail_at(e_at, "power relation exponent must equal the relative order");
        rel.conjugator = 0;
      } else {
        std::size_t c_at = cur.pos();
        rel.conjugator = generator_number(cur.ident(), cur, c_at);
      }
      cur.expect('=');
      rel.rhs = parse_word_at(cur);
      r.relations.push_back(std::move(rel));
    }
  } else {
    cur.fail_at(at, "unknown group constructor '" + head + "'");
  }
  cur.expect(')');
  return r;
}

} // namespace

Word parse_word(std::string_view text)
{
  Cursor cur(text);
  Word w = parse_word_at(cur);
  if (!cur.at_end())
    cur.fail("unexpected trailing text in word");
  return w;
}

std::string to_string(Word const &w)
{
  if (w.empty())
    return "id";
  std::string out;
  for (auto const &l : w) {
    if (!out.empty())
      out += '*';
    out += l.name;
    if (l.exponent != 1)
      out += "^" + std::to_string(l.exponent);
  }
  return out;
}

AliasMap generator_aliases(FiniteGroup const &g)
{
  AliasMap m;
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    m.emplace(g.generator_names()[i], g.generators()[i]);
  return m;
}

Index evaluate_word(FiniteGroup const &g, Word const &w, AliasMap const &aliases)
{
  Index r = g.identity();
  for (auto const &l : w) {
    auto it = aliases.find(l.name);
    if (it == aliases.end())
      throw GroupError("undefined generator or alias '" + l.name + "'");
    r = g.mul(r, g.pow(it->second, l.exponent));
  }
  return r;
}

GroupRecipe parse_group_recipe(std::string_view text)
{
  Cursor cur(text);
  GroupRecipe r = parse_recipe_at(cur);
  if (!cur.at_end())
    cur.fail("unexpected trailing text after group recipe");
  return r;
}

std::string GroupRecipe::to_string() const
{
  std::ostringstream os;
  switch (kind) {
  case Kind::cyclic: os << "cyclic(" << n << ")"; break;
  case Kind::dihedral: os << "dihedral(" << n << ")"; break;
  case Kind::symmetric: os << "symmetric(" << n << ")"; break;
  case Kind::alternating: os << "alternating(" << n << ")"; break;
  case Kind::permutation:
    os << "perm(";
    for (std::size_t i = 0; i < permutations.size(); ++i) {
      if (i)
        os << ", ";
      if (permutations[i].empty())
        os << "()";
      for (auto const &c : permutations[i]) {
        os << "(";
        for (std::size_t j = 0; j < c.size(); ++j)
          os << (j ? "," : "") << c[j];
        os << ")";
      }
    }
    os << ")";
    break;
  case Kind::direct:
    os << "product(";
    for (std::size_t i = 0; i < factors.size(); ++i)
      os << (i ? ", " : "") << factors[i].to_string();
    os << ")";
    break;
  case Kind::semidirect:
    os << "semidirect(" << factors[0].to_string() << ", " << factors[1].to_string();
    for (auto const &imgs : action) {
      os << ", [";
      for (std::size_t i = 0; i < imgs.size(); ++i)
        os << (i ? ", " : "") << isoprod::to_string(imgs[i]);
      os << "]";
    }
    os << ")";
    break;
  case Kind::polycyclic:
    os << "pc([";
    for (std::size_t i = 0; i < relative_orders.size(); ++i)
      os << (i ? ", " : "") << relative_orders[i];
    os << "]";
    for (auto const &rel : relations) {
      os << ", g" << rel.generator << "^";
      if (rel.conjugator == 0)
        os << relative_orders.at(static_cast<std::size_t>(rel.generator - 1));
      else
        os << "g" << rel.conjugator;
      os << " = " << isoprod::to_string(rel.rhs);
    }
    os << ")";
    break;
  }
  return os.str();
}

// ------------------------------------------------------------- enumeration

namespace
{

struct VectorHash
{
  template <class T> std::size_t operator()(std::vector<T> const &v) const
  {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v)
      h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

// Breadth-first enumeration from the identity under right multiplication by
// the generators.  right_mul(x, k) returns x * generator k.
template <class Elem, class Hash, class RightMul, class Labeler>
GroupData enumerate(Elem identity, std::size_t ngens, RightMul &&right_mul, Labeler &&label,
                    BuildOptions const &opts)
{
  std::vector<Elem> elems{identity};
  std::unordered_map<Elem, Index, Hash> index;
  index.emplace(identity, 0);
  std::vector<std::uint32_t> parent{0}, gen_of{0}, right;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t k = 0; k < ngens; ++k) {
      Elem y = right_mul(elems[i], k);
      auto it = index.find(y);
      Index yi;
      if (it == index.end()) {
        if (elems.size() >= opts.order_bound)
          throw GroupError("group order exceeds the bound " + std::to_string(opts.order_bound));
        yi = static_cast<Index>(elems.size());
        index.emplace(y, yi);
        elems.push_back(std::move(y));
        parent.push_back(static_cast<std::uint32_t>(i));
        gen_of.push_back(static_cast<std::uint32_t>(k));
      } else {
        yi = it->second;
      }
      right.push_back(yi);
    }
  }

  GroupData d;
  d.order = elems.size();
  d.table.assign(d.order * d.order, 0);
  kernels::TableInput in{d.order, ngens, right, parent, gen_of};
  if (opts.parallel)
    kernels::multiplication_table_parallel(in, d.table);
  else
    kernels::multiplication_table_serial(in, d.table);
  for (std::size_t k = 0; k < ngens; ++k) {
    d.generators.push_back(right[k]);
    d.generator_names.push_back("g" + std::to_string(k + 1));
  }
  d.labels.reserve(d.order);
  for (auto const &e : elems)
    d.labels.push_back(label(e));
  return d;
}

using Perm = std::vector<std::uint16_t>;

std::string cycle_string(Perm const &p)
{
  std::string out;
  std::vector<char> done(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i)
      continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = 1;
      if (!first)
        out += ',';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

GroupData enumerate_perms(std::vector<Perm> const &gens, std::size_t degree, BuildOptions const &opts)
{
  Perm id(degree);
  std::iota(id.begin(), id.end(), 0);
  // i^(xg) = (i^x)^g
  auto right = [&](Perm const &x, std::size_t k) {
    Perm y(degree);
    for (std::size_t i = 0; i < degree; ++i)
      y[i] = gens[k][x[i]];
    return y;
  };
  return enumerate<Perm, VectorHash>(id, gens.size(), right, cycle_string, opts);
}

Perm perm_from_cycles(std::vector<std::vector<int>> const &cycles, std::size_t degree)
{
  Perm p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> used(degree, 0);
  for (auto const &c : cycles)
    for (std::size_t j = 0; j < c.size(); ++j) {
      auto a = static_cast<std::size_t>(c[j] - 1);
      if (used[a])
        throw GroupError("point " + std::to_string(c[j]) + " repeated in a permutation");
      used[a] = 1;
      p[a] = static_cast<std::uint16_t>(c[(j + 1) % c.size()] - 1);
    }
  return p;
}

GroupData build_symmetric(long n, bool alternating, BuildOptions const &opts)
{
  auto deg = static_cast<std::size_t>(n);
  std::vector<Perm> gens;
  if (alternating) {
    for (long k = 3; k <= n; ++k)
      gens.push_back(perm_from_cycles({{1, 2, static_cast<int>(k)}}, deg));
  } else if (n >= 2) {
    gens.push_back(perm_from_cycles({{1, 2}}, deg));
    std::vector<int> all(deg);
    std::iota(all.begin(), all.end(), 1);
    gens.push_back(perm_from_cycles({all}, deg));
  }
  return enumerate_perms(gens, deg, opts);
}

GroupData build_cyclic(long n, BuildOptions const &opts)
{
  auto right = [n](long x, std::size_t) { return (x + 1) % n; };
  auto label = [](long x) { return std::to_string(x); };
  return enumerate<long, std::hash<long>>(0L, 1, right, label, opts);
}

GroupData build_direct(std::vector<GroupPtr> const &fs, BuildOptions const &opts)
{
  std::vector<std::pair<std::size_t, Index>> gens; // factor, generator element
  for (std::size_t f = 0; f < fs.size(); ++f)
    for (auto s : fs[f]->generators())
      gens.emplace_back(f, s);
  std::vector<Index> id(fs.size(), 0);
  auto right = [&](std::vector<Index> const &x, std::size_t k) {
    auto y = x;
    auto [f, s] = gens[k];
    y[f] = fs[f]->mul(x[f], s);
    return y;
  };
  auto label = [&](std::vector<Index> const &x) {
    std::string out = "(";
    for (std::size_t f = 0; f < x.size(); ++f)
      out += (f ? "," : "") + fs[f]->label(x[f]);
    return out + ")";
  };
  return enumerate<std::vector<Index>, VectorHash>(id, gens.size(), right, label, opts);
}

// Extends generator images to a map on all of `g` along the Cayley graph,
// verifying consistency on every edge (which makes it a homomorphism).
std::vector<Index> extend_homomorphism(FiniteGroup const &g, FiniteGroup const &target,
                                       std::vector<Index> const &images, char const *what)
{
  std::vector<Index> img(g.order(), 0);
  std::vector<char> set(g.order(), 0);
  set[0] = 1;
  std::vector<Index> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Index x = queue[i];
    for (std::size_t k = 0; k < images.size(); ++k) {
      Index y = g.mul(x, g.generators()[k]);
      Index v = target.mul(img[x], images[k]);
      if (!set[y]) {
        set[y] = 1;
        img[y] = v;
        queue.push_back(y);
      } else if (img[y] != v) {
        throw GroupError(std::string(what) + " does not define a homomorphism");
      }
    }
  }
  return img;
}

GroupData build_semidirect(GroupRecipe const &r, GroupPtr const &K, GroupPtr const &H,
                           BuildOptions const &opts)
{
  std::size_t nk = K->order(), nh = H->order();
  if (r.action.size() != H->generators().size())
    throw GroupError("semidirect action needs one image list per generator of the acting group (" +
                     std::to_string(H->generators().size()) + ")");
  auto kal = generator_aliases(*K);
  std::vector<std::vector<Index>> autos; // per H generator, full map on K
  for (auto const &imgs : r.action) {
    if (imgs.size() != K->generators().size())
      throw GroupError("semidirect action must give an image for each of the " +
                       std::to_string(K->generators().size()) + " normal-factor generators");
    std::vector<Index> gi;
    for (auto const &w : imgs)
      gi.push_back(evaluate_word(*K, w, kal));
    auto a = extend_homomorphism(*K, *K, gi, "semidirect action image");
    std::vector<char> hit(nk, 0);
    for (auto v : a)
      hit[v] = 1;
    if (std::count(hit.begin(), hit.end(), 1) != static_cast<long>(nk))
      throw GroupError("semidirect action image is not an automorphism");
    autos.push_back(std::move(a));
  }
  // phi[h] as a map on K, with phi(h t) = phi(h) o phi(t).
  std::vector<Index> phi(nh * nk, 0);
  std::vector<char> set(nh, 0);
  for (std::size_t x = 0; x < nk; ++x)
    phi[x] = static_cast<Index>(x);
  set[0] = 1;
  std::vector<Index> queue{0};
  std::vector<Index> cand(nk);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Index h = queue[i];
    for (std::size_t t = 0; t < autos.size(); ++t) {
      Index y = H->mul(h, H->generators()[t]);
      for (std::size_t x = 0; x < nk; ++x)
        cand[x] = phi[h * nk + autos[t][x]];
      if (!set[y]) {
        set[y] = 1;
        std::copy(cand.begin(), cand.end(), phi.begin() + static_cast<long>(y * nk));
        queue.push_back(y);
      } else if (!std::equal(cand.begin(), cand.end(), phi.begin() + static_cast<long>(y * nk))) {
        throw GroupError("semidirect action is not a homomorphism from the acting group");
      }
    }
  }

  std::size_t gk = K->generators().size();
  std::size_t ngens = gk + H->generators().size();
  // element (k, h) encoded as k * nh + h
  auto right = [&](std::uint64_t x, std::size_t s) -> std::uint64_t {
    std::uint64_t k = x / nh, h = x % nh;
    if (s < gk)
      return static_cast<std::uint64_t>(K->mul(static_cast<Index>(k), phi[h * nk + K->generators()[s]])) * nh + h;
    return k * nh + H->mul(static_cast<Index>(h), H->generators()[s - gk]);
  };
  auto label = [&](std::uint64_t x) {
    return "(" + K->label(static_cast<Index>(x / nh)) + "," + H->label(static_cast<Index>(x % nh)) + ")";
  };
  return enumerate<std::uint64_t, std::hash<std::uint64_t>>(0, ngens, right, label, opts);
}

class PcCollector
{
public:
  explicit PcCollector(GroupRecipe const &r) : _rel(r.relative_orders), _n(r.relative_orders.size())
  {
    _weight.assign(_n, 1);
    for (std::size_t i = _n; i-- > 1;)
      _weight[i - 1] = _weight[i] * static_cast<std::uint64_t>(_rel[i]);
    _order = _weight[0] * static_cast<std::uint64_t>(_rel[0]);

    _power.assign(_n, {});
    _conj.assign(_n, std::vector<std::vector<int>>(_n));
    for (std::size_t j = 0; j < _n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        _conj[j][i] = {static_cast<int>(j)};
    std::vector<std::vector<char>> given(_n, std::vector<char>(_n + 1, 0));
    for (auto const &rel : r.relations) {
      auto g = rel.generator, c = rel.conjugator;
      if (g < 1 || static_cast<std::size_t>(g) > _n || c < 0 || static_cast<std::size_t>(c) > _n)
        throw GroupError("pc relation refers to a generator beyond g" + std::to_string(_n));
      if (c != 0 && c >= g)
        throw GroupError("pc relation g" + std::to_string(g) + "^g" + std::to_string(c) +
                         " must conjugate by an earlier generator");
      if (given[g - 1][c])
        throw GroupError("duplicate pc relation for g" + std::to_string(g));
      given[g - 1][c] = 1;
      int floor = c == 0 ? g : c; // letters must come strictly after this generator
      std::vector<int> letters;
      for (auto const &l : rel.rhs) {
        int m = -1;
        if (l.name.size() > 1 && l.name[0] == 'g')
          m = std::atoi(l.name.c_str() + 1);
        if (m < 1 || static_cast<std::size_t>(m) > _n)
          throw GroupError("pc relation uses unknown generator '" + l.name + "'");
        if (m <= floor)
          throw GroupError("pc relation right-hand side must use generators after g" + std::to_string(floor));
        if (l.exponent < 0)
          throw GroupError("pc relation right-hand sides need non-negative exponents");
        for (long e = 0; e < l.exponent; ++e)
          letters.push_back(m - 1);
      }
      if (c == 0)
        _power[static_cast<std::size_t>(g - 1)] = std::move(letters);
      else
        _conj[static_cast<std::size_t>(g - 1)][static_cast<std::size_t>(c - 1)] = std::move(letters);
    }
  }

  std::uint64_t order() const { return _order; }
  std::size_t rank() const { return _n; }

  void prepare() { _memo.assign(_order * _n, -1); }

  // x * g_k by collection to the left.
  std::uint64_t mul_gen(std::uint64_t x, std::size_t k)
  {
    auto &slot = _memo[x * _n + k];
    if (slot >= 0)
      return static_cast<std::uint64_t>(slot);
    std::vector<long> e = decode(x);
    std::vector<int> letters;
    std::vector<long> y(e.begin(), e.end());
    for (std::size_t j = k + 1; j < _n; ++j)
      y[j] = 0;
    if (++y[k] == _rel[k]) {
      y[k] = 0;
      letters = _power[k];
    }
    // g_j^e g_k = g_k (g_j^g_k)^e
    for (std::size_t j = k + 1; j < _n; ++j)
      for (long r = 0; r < e[j]; ++r)
        letters.insert(letters.end(), _conj[j][k].begin(), _conj[j][k].end());
    std::uint64_t out = encode(y);
    for (int m : letters)
      out = mul_gen(out, static_cast<std::size_t>(m));
    _memo[x * _n + k] = static_cast<long long>(out);
    return out;
  }

  std::string label(std::uint64_t x) const
  {
    auto e = decode(x);
    std::string out;
    for (std::size_t i = 0; i < _n; ++i) {
      if (e[i] == 0)
        continue;
      if (!out.empty())
        out += '*';
      out += "g" + std::to_string(i + 1);
      if (e[i] != 1)
        out += "^" + std::to_string(e[i]);
    }
    return out.empty() ? "id" : out;
  }

private:
  std::vector<long> decode(std::uint64_t x) const
  {
    std::vector<long> e(_n);
    for (std::size_t i = 0; i < _n; ++i) {
      e[i] = static_cast<long>(x / _weight[i]);
      x %= _weight[i];
    }
    return e;
  }
  std::uint64_t encode(std::vector<long> const &e) const
  {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < _n; ++i)
      x += static_cast<std::uint64_t>(e[i]) * _weight[i];
    return x;
  }

  std::vector<long> _rel;
  std::size_t _n;
  std::vector<std::uint64_t> _weight;
  std::uint64_t _order = 1;
  std::vector<std::vector<int>> _power;
  std::vector<std::vector<std::vector<int>>> _conj; // [j][i]: g_j^g_i
  std::vector<long long> _memo;
};

GroupData build_polycyclic(GroupRecipe const &r, BuildOptions const &opts)
{
  if (r.relative_orders.empty())
    throw GroupError("pc presentation needs at least one generator");
  long double predicted = 1;
  for (auto p : r.relative_orders)
    predicted *= static_cast<long double>(p);
  if (predicted > static_cast<long double>(opts.order_bound))
    throw GroupError("group order exceeds the bound " + std::to_string(opts.order_bound));
  PcCollector pc(r);
  pc.prepare();
  auto right = [&](std::uint64_t x, std::size_t k) { return pc.mul_gen(x, k); };
  auto label = [&](std::uint64_t x) { return pc.label(x); };
  auto d = enumerate<std::uint64_t, std::hash<std::uint64_t>>(0, pc.rank(), right, label, opts);
  if (d.order != pc.order())
    throw GroupError("inconsistent pc presentation: collected group has order " +
                     std::to_string(d.order) + ", expected " + std::to_string(pc.order()));
  return d;
}

GroupData build_data(GroupRecipe const &r, BuildOptions const &opts)
{
  using K = GroupRecipe::Kind;
  switch (r.kind) {
  case K::cyclic:
    if (r.n < 1)
      throw GroupError("cyclic group order must be positive");
    if (static_cast<std::size_t>(r.n) > opts.order_bound)
      throw GroupError("group order exceeds the bound " + std::to_string(opts.order_bound));
    return build_cyclic(r.n, opts);
  case K::dihedral: {
    if (r.n < 1)
      throw GroupError("dihedral parameter must be positive");
    GroupRecipe sd;
    sd.kind = K::semidirect;
    sd.factors.resize(2);
    sd.factors[0].kind = K::cyclic;
    sd.factors[0].n = r.n;
    sd.factors[1].kind = K::cyclic;
    sd.factors[1].n = 2;
    sd.action = {{Word{{"g1", -1}}}};
    return build_data(sd, opts);
  }
  case K::symmetric:
  case K::alternating:
    if (r.n < 1 || r.n > 12)
      throw GroupError("symmetric/alternating degree must be between 1 and 12");
    return build_symmetric(r.n, r.kind == K::alternating, opts);
  case K::permutation: {
    int degree = 1;
    for (auto const &g : r.permutations)
      for (auto const &c : g)
        for (int p : c)
          degree = std::max(degree, p);
    std::vector<Perm> gens;
    for (auto const &g : r.permutations)
      gens.push_back(perm_from_cycles(g, static_cast<std::size_t>(degree)));
    return enumerate_perms(gens, static_cast<std::size_t>(degree), opts);
  }
  case K::direct: {
    std::vector<GroupPtr> fs;
    for (auto const &f : r.factors)
      fs.push_back(build_group(f, opts));
    return build_direct(fs, opts);
  }
  case K::semidirect: {
    auto Kg = build_group(r.factors.at(0), opts);
    auto Hg = build_group(r.factors.at(1), opts);
    return build_semidirect(r, Kg, Hg, opts);
  }
  case K::polycyclic:
    return build_polycyclic(r, opts);
  }
  throw GroupError("unknown recipe kind");
}

} // namespace

GroupPtr build_group(GroupRecipe const &recipe, BuildOptions const &opts)
{
  GroupData d = build_data(recipe, opts);
  d.recipe = recipe.to_string();
  return FiniteGroup::make(std::move(d));
}

// -------------------------------------------------------------- subgroups

bool Subgroup::contains(Index a) const
{
  return std::binary_search(members.begin(), members.end(), a);
}

Subgroup subgroup_generated(GroupPtr const &g, std::vector<Index> const &gens)
{
  Subgroup h{g, {0}, gens};
  std::vector<char> in(g->order(), 0);
  in[0] = 1;
  for (std::size_t i = 0; i < h.members.size(); ++i)
    for (auto s : gens) {
      Index y = g->mul(h.members[i], s);
      if (!in[y]) {
        in[y] = 1;
        h.members.push_back(y);
      }
    }
  std::sort(h.members.begin(), h.members.end());
  return h;
}

bool is_normal(FiniteGroup const &g, Subgroup const &h)
{
  for (auto s : g.generators())
    for (auto x : h.members)
      if (!h.contains(g.conj(x, s)))
        return false;
  return true;
}

QuotientGroup quotient(GroupPtr const &g, Subgroup const &h)
{
  if (!is_normal(*g, h))
    throw GroupError("subgroup is not normal");
  std::size_t n = g->order();
  std::vector<Index> coset(n, 0);
  std::vector<char> set(n, 0);
  std::vector<Index> reps;
  for (std::size_t x = 0; x < n; ++x) {
    if (set[x])
      continue;
    auto c = static_cast<Index>(reps.size());
    reps.push_back(static_cast<Index>(x));
    for (auto m : h.members) {
      Index y = g->mul(m, static_cast<Index>(x));
      set[y] = 1;
      coset[y] = c;
    }
  }
  std::size_t q = reps.size();
  GroupData d;
  d.order = q;
  d.table.resize(q * q);
  for (std::size_t a = 0; a < q; ++a)
    for (std::size_t b = 0; b < q; ++b)
      d.table[a * q + b] = coset[g->mul(reps[a], reps[b])];
  for (std::size_t i = 0; i < g->generators().size(); ++i) {
    d.generators.push_back(coset[g->generators()[i]]);
    d.generator_names.push_back(g->generator_names()[i]);
  }
  for (auto r : reps)
    d.labels.push_back("[" + g->label(r) + "]");
  std::string hg;
  for (auto s : h.generators)
    hg += (hg.empty() ? "" : ", ") + g->label(s);
  d.recipe = g->recipe() + " / <" + hg + ">";
  return QuotientGroup{FiniteGroup::make(std::move(d)), std::move(coset), h};
}

bool is_quaternion_q8(FiniteGroup const &g)
{
  if (g.order() != 8)
    throw std::invalid_argument("Q8 test needs a group of order 8");
  if (g.is_abelian())
    return false;
  int involutions = 0;
  for (std::size_t a = 0; a < 8; ++a)
    involutions += g.element_order(static_cast<Index>(a)) == 2;
  return involutions == 1;
}

bool is_cyclic(FiniteGroup const &g)
{
  return g.exponent() == static_cast<long>(g.order());
}

std::vector<long> abelian_invariants(FiniteGroup const &g)
{
  if (!g.is_abelian())
    throw GroupError("abelian invariants requested for a nonabelian group");
  auto n = static_cast<long>(g.order());
  // For each prime p: if c_k = log_p #{x : x^(p^k) = 1}, then c_k - c_(k-1)
  // cyclic p-factors have exponent >= k.
  std::vector<std::vector<long>> primary; // descending prime powers per prime
  for (long p : prime_factors(n)) {
    std::vector<long> at_least{0};
    long prev = 0;
    for (long pk = p; n % pk == 0; pk *= p) {
      long count = 0;
      for (std::size_t a = 0; a < g.order(); ++a)
        count += pk % g.element_order(static_cast<Index>(a)) == 0;
      long lg = 0;
      for (long c = count; c > 1; c /= p)
        ++lg;
      at_least.push_back(lg - prev);
      prev = lg;
    }
    std::vector<long> factors;
    long pe = 1;
    for (std::size_t k = 1; k < at_least.size(); ++k) {
      pe *= p;
      long exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
      for (long i = 0; i < exact; ++i)
        factors.push_back(pe);
    }
    std::sort(factors.rbegin(), factors.rend());
    primary.push_back(std::move(factors));
  }
  std::size_t len = 0;
  for (auto const &f : primary)
    len = std::max(len, f.size());
  // Largest invariant factor first, then reverse to d1 | d2 | ...
  std::vector<long> inv(len, 1);
  for (auto const &f : primary)
    for (std::size_t i = 0; i < f.size(); ++i)
      inv[i] *= f[i];
  std::reverse(inv.begin(), inv.end());
  return inv;
}

std::string describe_group(FiniteGroup const &g)
{
  if (g.order() == 1)
    return "1";
  if (g.is_abelian()) {
    auto inv = abelian_invariants(g);
    std::string out;
    for (std::size_t i = 0; i < inv.size();) {
      std::size_t j = i;
      while (j < inv.size() && inv[j] == inv[i])
        ++j;
      if (!out.empty())
        out += " x ";
      out += "Z" + std::to_string(inv[i]);
      if (j - i > 1)
        out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }
  if (g.order() == 6)
    return "S3";
  if (g.order() == 8)
    return is_quaternion_q8(g) ? "Q8" : "D4";
  return "nonabelian group of order " + std::to_string(g.order());
}

} // namespace isoprod
