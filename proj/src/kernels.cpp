#include "isoprod/kernels.hpp"

#include <omp.h>

namespace isoprod::kernels
{

namespace
{

void fill_row(TableInput const &in, std::size_t a, std::uint32_t *row)
{
  row[0] = static_cast<std::uint32_t>(a);
  for (std::size_t b = 1; b < in.n; ++b)
    row[b] = in.right[static_cast<std::size_t>(row[in.parent[b]]) * in.ngens + in.gen_of[b]];
}

// Contribution of x in C_i: y = x^-1 z lies in C_j.  Adds into a row block of
// size k*k indexed [j][l] for the class i = class_of[x].
void class_contribution(ClassInput const &in, std::size_t k, std::size_t x, std::uint32_t *block)
{
  std::size_t xi = in.inverse[x];
  for (std::size_t l = 0; l < k; ++l) {
    std::size_t y = in.table[xi * in.n + in.representatives[l]];
    block[in.class_of[y] * k + l] += 1;
  }
}

bool disjoint(std::uint64_t const *a, std::uint64_t const *b, std::size_t words)
{
  for (std::size_t w = 0; w < words; ++w)
    if (a[w] & b[w])
      return false;
  return true;
}

} // namespace

void multiplication_table_serial(TableInput const &in, std::span<std::uint32_t> table)
{
  for (std::size_t a = 0; a < in.n; ++a)
    fill_row(in, a, table.data() + a * in.n);
}

void multiplication_table_parallel(TableInput const &in, std::span<std::uint32_t> table)
{
  auto n = static_cast<long long>(in.n);
#pragma omp parallel for schedule(static)
  for (long long a = 0; a < n; ++a)
    fill_row(in, static_cast<std::size_t>(a), table.data() + static_cast<std::size_t>(a) * in.n);
}

std::vector<std::uint32_t> class_constants_serial(ClassInput const &in)
{
  std::size_t k = in.representatives.size();
  std::vector<std::uint32_t> out(k * k * k, 0);
  for (std::size_t x = 0; x < in.n; ++x)
    class_contribution(in, k, x, out.data() + in.class_of[x] * k * k);
  return out;
}

std::vector<std::uint32_t> class_constants_parallel(ClassInput const &in)
{
  std::size_t k = in.representatives.size();
  std::vector<std::uint32_t> out(k * k * k, 0);
  auto n = static_cast<long long>(in.n);
#pragma omp parallel
  {
    std::vector<std::uint32_t> local(k * k * k, 0);
#pragma omp for schedule(static) nowait
    for (long long x = 0; x < n; ++x)
      class_contribution(in, k, static_cast<std::size_t>(x), local.data() + in.class_of[static_cast<std::size_t>(x)] * k * k);
#pragma omp critical
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] += local[i];
  }
  return out;
}

std::vector<IndexPair> disjoint_pairs_serial(PairingInput const &in)
{
  std::vector<IndexPair> out;
  if (in.words == 0)
    return out;
  std::size_t na = in.left.size() / in.words, nb = in.right.size() / in.words;
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < nb; ++b)
      if (disjoint(in.left.data() + a * in.words, in.right.data() + b * in.words, in.words))
        out.emplace_back(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b));
  return out;
}

std::vector<IndexPair> disjoint_pairs_parallel(PairingInput const &in)
{
  if (in.words == 0)
    return {};
  std::size_t na = in.left.size() / in.words, nb = in.right.size() / in.words;
  // One bucket per left index keeps the output order independent of scheduling.
  std::vector<std::vector<std::uint32_t>> buckets(na);
  auto sna = static_cast<long long>(na);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long a = 0; a < sna; ++a) {
    auto const *la = in.left.data() + static_cast<std::size_t>(a) * in.words;
    for (std::size_t b = 0; b < nb; ++b)
      if (disjoint(la, in.right.data() + b * in.words, in.words))
        buckets[static_cast<std::size_t>(a)].push_back(static_cast<std::uint32_t>(b));
  }
  std::vector<IndexPair> out;
  for (std::size_t a = 0; a < na; ++a)
    for (auto b : buckets[a])
      out.emplace_back(static_cast<std::uint32_t>(a), b);
  return out;
}

} // namespace isoprod::kernels
