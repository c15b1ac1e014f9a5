#pragma once

// Hot loops with a serial reference and an OpenMP version each.  The serial
// versions are what the tests compare against; results must be identical.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace isoprod::kernels
{

// Elements are numbered in BFS order from the identity (index 0), element b > 0
// being parent[b] * generator gen_of[b].  right[x * ngens + k] is x * gen k.
// Fills table[a * n + b] = a * b.
struct TableInput
{
  std::size_t n;
  std::size_t ngens;
  std::span<std::uint32_t const> right;
  std::span<std::uint32_t const> parent;
  std::span<std::uint32_t const> gen_of;
};

void multiplication_table_serial(TableInput const &in, std::span<std::uint32_t> table);
void multiplication_table_parallel(TableInput const &in, std::span<std::uint32_t> table);

// Class structure constants a[i][j][l] = #{ (x, y) : x in C_i, y in C_j, x y = z_l }
// for a fixed representative z_l of C_l, stored at ((i * k) + j) * k + l.
struct ClassInput
{
  std::size_t n;
  std::span<std::uint32_t const> table;          // n * n
  std::span<std::uint32_t const> inverse;        // n
  std::span<std::size_t const> class_of;         // n
  std::span<std::uint32_t const> representatives; // k
};

std::vector<std::uint32_t> class_constants_serial(ClassInput const &in);
std::vector<std::uint32_t> class_constants_parallel(ClassInput const &in);

// For every a in [0, na) and b in [0, nb) with (left[a] & right[b]) == 0 over
// all words, emit the pair (a, b).  Masks are `words` 64-bit words each.
// Output is ordered by a, then b.
struct PairingInput
{
  std::size_t words;
  std::span<std::uint64_t const> left;   // na * words
  std::span<std::uint64_t const> right;  // nb * words
};

using IndexPair = std::pair<std::uint32_t, std::uint32_t>;

std::vector<IndexPair> disjoint_pairs_serial(PairingInput const &in);
std::vector<IndexPair> disjoint_pairs_parallel(PairingInput const &in);

} // namespace isoprod::kernels
