#include "isoprod/ramification.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "isoprod/exactmath.hpp"
#include "isoprod/kernels.hpp"

namespace isoprod
{

std::string format_type(OrderType const &t)
{
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i])
      ++j;
    if (i)
      out << ',';
    out << t[i];
    if (j - i > 1)
      out << '^' << (j - i);
    i = j;
  }
  out << ']';
  return out.str();
}

OrderType parse_type(std::string_view text)
{
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto number = [&]() -> long {
    skip();
    std::size_t start = pos;
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1'000'000)
        throw ParseError("number too large in type", start);
      ++pos;
    }
    if (pos == start)
      throw ParseError("expected a number in type", start);
    return v;
  };
  skip();
  bool bracket = pos < text.size() && text[pos] == '[';
  if (bracket)
    ++pos;
  OrderType t;
  for (;;) {
    std::size_t at = pos;
    long m = number();
    long k = 1;
    skip();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      k = number();
      skip();
    }
    if (m < 2)
      throw ParseError("orders in a type must be at least 2", at);
    if (k < 1 || k > 64)
      throw ParseError("bad multiplicity in type", at);
    t.insert(t.end(), static_cast<std::size_t>(k), static_cast<int>(m));
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  if (bracket) {
    if (pos >= text.size() || text[pos] != ']')
      throw ParseError("expected ']' in type", pos);
    ++pos;
  }
  skip();
  if (pos != text.size())
    throw ParseError("unexpected character in type", pos);
  std::sort(t.begin(), t.end());
  return t;
}

OrderType SphericalSystem::type() const
{
  OrderType t;
  for (Index x : entries)
    t.push_back(group->element_order(x));
  std::sort(t.begin(), t.end());
  return t;
}

namespace
{

bool generates(FiniteGroup const &g, std::vector<Index> const &gens, std::vector<char> &seen,
               std::vector<Index> &queue)
{
  std::size_t n = g.order();
  seen.assign(n, 0);
  queue.clear();
  seen[0] = 1;
  queue.push_back(0);
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (Index s : gens) {
      Index y = g.mul(queue[h], s);
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  return queue.size() == n;
}

bool generates(FiniteGroup const &g, std::vector<Index> const &gens)
{
  std::vector<char> seen;
  std::vector<Index> queue;
  return generates(g, gens, seen, queue);
}

} // namespace

SphericalSystem validate_spherical(GroupPtr const &g, std::vector<Index> const &tuple, std::string const &name)
{
  if (tuple.size() < 2)
    throw ValidationError(name + " needs at least 2 entries");
  Index prod = g->identity();
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= g->order())
      throw ValidationError(name + " entry " + std::to_string(i + 1) + " is not a group element");
    if (tuple[i] == g->identity())
      throw ValidationError(name + " entry " + std::to_string(i + 1) + " is the identity");
    prod = g->mul(prod, tuple[i]);
  }
  if (prod != g->identity())
    throw ValidationError(name + ": product of entries is " + g->label(prod) + ", not the identity");
  if (!generates(*g, tuple))
    throw ValidationError(name + ": entries do not generate the group");
  return {g, tuple};
}

long genus(std::size_t order, OrderType const &type)
{
  Rational d(static_cast<long>(order));
  Rational g = Rational(1) - d;
  for (int m : type) {
    if (m < 2)
      throw std::domain_error("branching order below 2 in type " + format_type(type));
    g += d * Rational(m - 1, 2L * m);
  }
  if (!g.is_integer() || g.sign() < 0)
    throw std::domain_error("Riemann-Hurwitz gives genus " + g.to_string() + " for order " +
                            std::to_string(order) + " and type " + format_type(type));
  return g.to_long();
}

std::vector<char> sigma_classes(SphericalSystem const &t)
{
  auto const &g = *t.group;
  std::vector<char> mask(g.class_count(), 0);
  mask[g.class_of(g.identity())] = 1;
  for (Index x : t.entries) {
    std::size_t c = g.class_of(x);
    for (long k = 1; k < g.element_order(x); ++k)
      mask[g.power_class(c, k)] = 1;
  }
  return mask;
}

std::vector<Index> sigma_set(SphericalSystem const &t)
{
  auto mask = sigma_classes(t);
  std::vector<Index> out;
  for (std::size_t c = 0; c < mask.size(); ++c)
    if (mask[c])
      out.insert(out.end(), t.group->classes()[c].members.begin(), t.group->classes()[c].members.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_disjoint(SphericalSystem const &a, SphericalSystem const &b)
{
  if (a.group != b.group)
    throw ValidationError("systems live in different groups");
  auto ma = sigma_classes(a), mb = sigma_classes(b);
  for (std::size_t c = 1; c < ma.size(); ++c)
    if (ma[c] && mb[c])
      return false;
  return true;
}

RamificationStructure make_structure(SphericalSystem c, SphericalSystem d)
{
  if (!is_disjoint(c, d))
    throw ValidationError("tuples C and D are not disjoint: their Sigma sets share a nontrivial element");
  return {std::move(c), std::move(d)};
}

QuotientSystem quotient_system(SphericalSystem const &t, QuotientGroup const &q)
{
  QuotientSystem out;
  out.group = q.group;
  for (std::size_t i = 0; i < t.entries.size(); ++i) {
    Index y = q.projection[t.entries[i]];
    if (y == q.group->identity())
      out.dropped.push_back(i);
    else
      out.entries.push_back(y);
  }
  for (Index y : out.entries)
    out.type.push_back(q.group->element_order(y));
  std::sort(out.type.begin(), out.type.end());
  if (q.group->order() == 1) {
    out.genus = 0;
    return out;
  }
  if (out.entries.size() < 2)
    throw ValidationError("quotient of order " + std::to_string(q.group->order()) + " keeps only " +
                          std::to_string(out.entries.size()) + " branch point(s)");
  out.genus = genus(q.group->order(), out.type);
  return out;
}

// ------------------------------------------------------------------ search

namespace
{

struct Unit
{
  std::vector<int> arrangement;
  Index first;
};

void extend(FiniteGroup const &g, std::vector<std::vector<Index>> const &by_order, std::vector<int> const &arr,
            std::vector<Index> &cur, Index prod, std::vector<std::vector<Index>> &out, std::vector<char> &seen,
            std::vector<Index> &queue)
{
  std::size_t r = arr.size();
  if (cur.size() + 1 == r) {
    Index last = g.inv(prod);
    if (g.element_order(last) != arr.back())
      return;
    cur.push_back(last);
    if (generates(g, cur, seen, queue))
      out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (Index x : by_order[static_cast<std::size_t>(arr[cur.size()])]) {
    cur.push_back(x);
    extend(g, by_order, arr, cur, g.mul(prod, x), out, seen, queue);
    cur.pop_back();
  }
}

} // namespace

std::vector<std::vector<Index>> enumerate_systems(FiniteGroup const &g, OrderType const &type_in,
                                                  bool first_from_class_reps, SearchLimits const &lim)
{
  OrderType type = type_in;
  std::sort(type.begin(), type.end());
  if (type.size() < 2)
    throw SearchError("type " + format_type(type) + " is too short");
  if (type.size() > lim.max_length)
    throw SearchError("search refused: type " + format_type(type) + " is longer than " +
                      std::to_string(lim.max_length));
  if (type.front() < 2)
    throw SearchError("type " + format_type(type) + " contains an order below 2");

  std::vector<std::vector<Index>> by_order(static_cast<std::size_t>(g.exponent()) + 1);
  for (Index x = 0; x < g.order(); ++x)
    by_order[static_cast<std::size_t>(g.element_order(x))].push_back(x);
  for (int m : type)
    if (m > g.exponent() || by_order[static_cast<std::size_t>(m)].empty())
      return {};

  std::vector<Unit> units;
  double estimate = 0;
  std::vector<int> arr = type;
  do {
    std::vector<Index> firsts;
    if (first_from_class_reps) {
      for (auto const &c : g.classes())
        if (c.element_order == arr[0])
          firsts.push_back(c.representative);
    } else {
      firsts = by_order[static_cast<std::size_t>(arr[0])];
    }
    double branch = 1;
    for (std::size_t i = 1; i + 1 < arr.size(); ++i)
      branch *= static_cast<double>(by_order[static_cast<std::size_t>(arr[i])].size());
    estimate += branch * static_cast<double>(firsts.size());
    for (Index f : firsts)
      units.push_back({arr, f});
  } while (std::next_permutation(arr.begin(), arr.end()));

  if (estimate > static_cast<double>(lim.candidate_bound)) {
    std::ostringstream msg;
    msg << "search refused: about " << static_cast<unsigned long long>(estimate) << " candidate tuples of type "
        << format_type(type) << " exceed the bound " << lim.candidate_bound;
    throw SearchError(msg.str());
  }

  std::vector<std::vector<std::vector<Index>>> buckets(units.size());
  auto run = [&](std::size_t u, std::vector<char> &seen, std::vector<Index> &queue) {
    std::vector<Index> cur{units[u].first};
    extend(g, by_order, units[u].arrangement, cur, units[u].first, buckets[u], seen, queue);
  };
  if (lim.parallel) {
#pragma omp parallel
    {
      std::vector<char> seen;
      std::vector<Index> queue;
#pragma omp for schedule(dynamic)
      for (std::size_t u = 0; u < units.size(); ++u)
        run(u, seen, queue);
    }
  } else {
    std::vector<char> seen;
    std::vector<Index> queue;
    for (std::size_t u = 0; u < units.size(); ++u)
      run(u, seen, queue);
  }
  std::vector<std::vector<Index>> out;
  for (auto &b : buckets)
    for (auto &t : b)
      out.push_back(std::move(t));
  return out;
}

std::vector<Index> canonical_pair(FiniteGroup const &g, std::vector<Index> const &c, std::vector<Index> const &d)
{
  std::vector<Index> best = c;
  best.insert(best.end(), d.begin(), d.end());
  if (best.empty())
    return best;
  // The minimal image starts with the least member of the first entry's class,
  // so only conjugators achieving that need a full comparison.
  Index target = g.classes()[g.class_of(best[0])].representative;
  std::vector<Index> img(best.size());
  bool have = false;
  for (Index x = 0; x < g.order(); ++x) {
    if (g.conj(best[0], x) != target)
      continue;
    for (std::size_t i = 0; i < img.size(); ++i)
      img[i] = g.conj(i < c.size() ? c[i] : d[i - c.size()], x);
    if (!have || img < best) {
      best = img;
      have = true;
    }
  }
  return best;
}

namespace
{

std::vector<std::uint64_t> masks_of(FiniteGroup const &g, GroupPtr const &gp,
                                    std::vector<std::vector<Index>> const &systems, std::size_t words)
{
  std::vector<std::uint64_t> out(systems.size() * words, 0);
  for (std::size_t s = 0; s < systems.size(); ++s) {
    auto m = sigma_classes({gp, systems[s]});
    for (std::size_t c = 1; c < g.class_count(); ++c)
      if (m[c])
        out[s * words + c / 64] |= std::uint64_t{1} << (c % 64);
  }
  return out;
}

} // namespace

SearchResult search_structures(GroupPtr const &gp, OrderType const &type_c, OrderType const &type_d,
                               SearchLimits const &lim)
{
  auto const &g = *gp;
  if (g.order() > lim.group_bound)
    throw SearchError("search refused: group order " + std::to_string(g.order()) + " exceeds the bound " +
                      std::to_string(lim.group_bound));

  auto left = enumerate_systems(g, type_c, true, lim);
  auto right = enumerate_systems(g, type_d, false, lim);

  std::size_t words = (g.class_count() + 63) / 64;
  auto lm = masks_of(g, gp, left, words);
  auto rm = masks_of(g, gp, right, words);
  kernels::PairingInput in{words, lm, rm};
  auto pairs = lim.parallel ? kernels::disjoint_pairs_parallel(in) : kernels::disjoint_pairs_serial(in);

  std::vector<std::vector<Index>> canon(pairs.size());
  auto work = [&](std::size_t i) { canon[i] = canonical_pair(g, left[pairs[i].first], right[pairs[i].second]); };
  if (lim.parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t i = 0; i < pairs.size(); ++i)
      work(i);
  } else {
    for (std::size_t i = 0; i < pairs.size(); ++i)
      work(i);
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());

  SearchResult res;
  res.total = canon.size();
  std::size_t keep = lim.limit ? std::min(lim.limit, canon.size()) : canon.size();
  std::size_t rc = type_c.size();
  for (std::size_t i = 0; i < keep; ++i) {
    std::vector<Index> c(canon[i].begin(), canon[i].begin() + static_cast<std::ptrdiff_t>(rc));
    std::vector<Index> d(canon[i].begin() + static_cast<std::ptrdiff_t>(rc), canon[i].end());
    res.structures.push_back({{gp, std::move(c)}, {gp, std::move(d)}});
  }
  return res;
}

} // namespace isoprod
