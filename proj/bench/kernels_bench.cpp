// Serial vs OpenMP timings for the hot kernels, best of several runs.
// Usage: isoprod_bench [repeats]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include <omp.h>

#include "isoprod/chartab.hpp"
#include "isoprod/kernels.hpp"
#include "isoprod/ramification.hpp"

using namespace isoprod;
namespace k = isoprod::kernels;

namespace
{

int repeats = 5;

double best_ms(std::function<void()> const &f)
{
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    auto t = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count());
  }
  return best;
}

void row(char const *kernel, std::string const &input, double serial, double parallel, bool same)
{
  std::printf("%-18s %-28s %10.3f %10.3f %8.2fx  %s\n", kernel, input.c_str(), serial, parallel, serial / parallel,
              same ? "same" : "DIFFERENT");
}

// BFS numbering of g from the identity by right multiplication with the
// generators, in the form the table kernel expects.
struct Bfs
{
  std::vector<std::uint32_t> right, parent, gen_of;
};

Bfs bfs(FiniteGroup const &g)
{
  std::size_t n = g.order(), ng = g.generators().size();
  std::vector<std::uint32_t> order{0}, pos(n, UINT32_MAX);
  Bfs b;
  b.parent.assign(n, 0);
  b.gen_of.assign(n, 0);
  pos[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t s = 0; s < ng; ++s) {
      Index y = g.mul(order[i], g.generators()[s]);
      if (pos[y] == UINT32_MAX) {
        pos[y] = static_cast<std::uint32_t>(order.size());
        b.parent[order.size()] = static_cast<std::uint32_t>(i);
        b.gen_of[order.size()] = static_cast<std::uint32_t>(s);
        order.push_back(y);
      }
    }
  b.right.resize(n * ng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < ng; ++s)
      b.right[i * ng + s] = pos[g.mul(order[i], g.generators()[s])];
  return b;
}

void bench_group(char const *name, char const *recipe)
{
  auto g = build_group(recipe);
  std::size_t n = g->order();
  auto b = bfs(*g);
  k::TableInput ti{n, g->generators().size(), b.right, b.parent, b.gen_of};
  std::vector<std::uint32_t> ts(n * n), tp(n * n);
  double s = best_ms([&] { k::multiplication_table_serial(ti, ts); });
  double p = best_ms([&] { k::multiplication_table_parallel(ti, tp); });
  row("table", std::string(name) + " n=" + std::to_string(n), s, p, ts == tp);

  std::vector<std::uint32_t> reps;
  for (auto const &c : g->classes())
    reps.push_back(c.representative);
  k::ClassInput ci{n, g->table(), g->inverses(), g->class_map(), reps};
  std::vector<std::uint32_t> cs, cp;
  s = best_ms([&] { cs = k::class_constants_serial(ci); });
  p = best_ms([&] { cp = k::class_constants_parallel(ci); });
  row("class constants", std::string(name) + " k=" + std::to_string(reps.size()), s, p, cs == cp);

  TableOptions so, po;
  so.parallel = false;
  po.parallel = true;
  std::string es, ep;
  s = best_ms([&] { es = export_table(character_table(g, so)); });
  p = best_ms([&] { ep = export_table(character_table(g, po)); });
  row("character table", name, s, p, es == ep);
}

void bench_pairs(std::size_t na, std::size_t nb, std::size_t words)
{
  std::mt19937_64 rng(5);
  std::vector<std::uint64_t> l(na * words), r(nb * words);
  // sparse masks so that a fair share of pairs is disjoint
  auto sparse = [&] { return rng() & rng() & rng() & rng(); };
  for (auto &x : l)
    x = sparse();
  for (auto &x : r)
    x = sparse();
  k::PairingInput in{words, l, r};
  std::vector<k::IndexPair> a, b;
  double s = best_ms([&] { a = k::disjoint_pairs_serial(in); });
  double p = best_ms([&] { b = k::disjoint_pairs_parallel(in); });
  row("disjoint pairs", std::to_string(na) + "x" + std::to_string(nb) + " w=" + std::to_string(words), s, p, a == b);
}

void bench_search(char const *name, char const *recipe, OrderType tc, OrderType td)
{
  auto g = build_group(recipe);
  SearchLimits ls, lp;
  ls.parallel = false;
  SearchResult a, b;
  double s = best_ms([&] { a = search_structures(g, tc, td, ls); });
  double p = best_ms([&] { b = search_structures(g, tc, td, lp); });
  bool same = a.total == b.total;
  for (std::size_t i = 0; same && i < a.structures.size(); ++i)
    same = a.structures[i].c.entries == b.structures[i].c.entries &&
           a.structures[i].d.entries == b.structures[i].d.entries;
  row("search", std::string(name) + " " + format_type(tc) + " " + format_type(td), s, p, same);
}

} // namespace

int main(int argc, char **argv)
{
  if (argc > 1)
    repeats = std::max(1, std::atoi(argv[1]));
  std::printf("threads: %d, best of %d\n", omp_get_max_threads(), repeats);
  std::printf("%-18s %-28s %10s %10s %9s\n", "kernel", "input", "serial ms", "omp ms", "speedup");
  bench_group("PSL(2,7)", "perm((1,2,3,4,5,6,7), (2,3,5)(4,7,6), (1,8)(2,7)(3,4)(5,6))");
  bench_group("G(128,36)", "pc([2,2,2,2,2,2,2], g1^2 = g4, g2^2 = g5, g2^g1 = g2*g3, g3^g1 = g3*g6, "
                           "g3^g2 = g3*g7, g4^g2 = g4*g6, g5^g1 = g5*g7)");
  bench_group("S6", "symmetric(6)");
  bench_pairs(2000, 2000, 3);
  bench_pairs(8000, 4000, 8);
  bench_search("PSL(2,7)", "perm((1,2,3,4,5,6,7), (2,3,5)(4,7,6), (1,8)(2,7)(3,4)(5,6))", {7, 7, 7}, {3, 3, 4});
  bench_search("S4", "symmetric(4)", {2, 2, 3, 3}, {4, 4, 4, 4});
}
