// Extremal and counterexample constructions used by tightness tests,
// plus a seeded G(n,p) sampler. Vertex numbering is block-contiguous in
// the order the blocks are named here; see README.
#pragma once

#include <vector>

#include "cgr/graph.hpp"
#include "cgr/rng.hpp"

namespace cgr {

inline Graph disjoint_cliques(const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) {
    if (s < 1) throw input_error("disjoint_cliques: sizes must be >= 1");
    n += s;
  }
  Graph g(n);
  int base = 0;
  for (int s : sizes) {
    for (int a = 0; a < s; ++a)
      for (int b = a + 1; b < s; ++b) g.add_edge(base + a, base + b);
    base += s;
  }
  return g;
}

// Vertices a_1..a_n (ids 0..n-1, a stable set) and b_1..b_n (ids n..2n-1,
// a clique); a_i ~ b_j iff i <= j.
inline Graph half_graph(int two_n) {
  if (two_n < 2 || two_n % 2 != 0) throw input_error("half_graph: need an even count >= 2");
  int n = two_n / 2;
  Graph g(two_n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(n + i, n + j);
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) g.add_edge(i - 1, n + j - 1);
  return g;
}

struct CounterexK {
  Graph g;
  int k, m, n;
};

// k+1 disjoint cliques: C0 of size n, C1..Ck of size m*n, with
// k = floor(1/eps) and m minimal subject to (1-k*eps)*m >= 1.
inline CounterexK counterex_k(const Rat& eps, int n) {
  if (eps <= 0 || eps >= Rat(1, 2)) throw input_error("counterex_k: need 0 < eps < 1/2");
  if (Rat(1) / eps == rat_floor(Rat(1) / eps))
    throw input_error("counterex_k: 1/eps must not be an integer");
  if (n < 1) throw input_error("counterex_k: n must be >= 1");
  long k = rat_floor_l(Rat(1) / eps);
  Rat gap = Rat(1) - Rat(k) * eps;  // > 0 since k < 1/eps
  long m = rat_ceil_l(Rat(1) / gap);
  std::vector<int> sizes{n};
  for (long i = 0; i < k; ++i) sizes.push_back(static_cast<int>(m) * n);
  return {disjoint_cliques(sizes), static_cast<int>(k), static_cast<int>(m), n};
}

// Stable sets A (2n), B (3n), C (4n) pairwise complete, plus a clique D
// (5n) anticomplete to the rest.
inline Graph counterex3(int n) {
  if (n < 1) throw input_error("counterex3: n must be >= 1");
  int a = 2 * n, b = 3 * n, c = 4 * n, d = 5 * n;
  Graph g(a + b + c + d);
  auto block = [&](int lo, int hi, int lo2, int hi2) {
    for (int u = lo; u < hi; ++u)
      for (int v = lo2; v < hi2; ++v) g.add_edge(u, v);
  };
  block(0, a, a, a + b);
  block(0, a, a + b, a + b + c);
  block(a, a + b, a + b, a + b + c);
  for (int u = a + b + c; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph random_graph(int n, const Rat& p, std::uint64_t seed) {
  if (n < 0 || p < 0 || p > 1) throw input_error("random_graph: bad parameters");
  SplitMix64 rng(seed);
  Graph g(n);
  unsigned long den = p.get_den().get_ui();
  unsigned long num = p.get_num().get_ui();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.below(den) < num) g.add_edge(u, v);
  return g;
}

}  // namespace cgr
