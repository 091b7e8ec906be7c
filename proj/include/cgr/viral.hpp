// Induced-copy counting, vertex substitution, substitution-closure
// sampling, and the empirical checker for the "many copies or a large
// sparse/dense subset" disjunction.
#pragma once

#include <algorithm>
#include <vector>

#include "cgr/cotree.hpp"
#include "cgr/extract.hpp"
#include "cgr/graph.hpp"
#include "cgr/oracle.hpp"
#include "cgr/rng.hpp"

namespace cgr {

constexpr int kPatternCap = 8;

// Exact number of isomorphisms from H onto induced subgraphs of G (counts
// all injective maps preserving edges and non-edges, i.e. inducing-subset
// count times |Aut(H)|). Backtracking with bitset candidate pruning.
inline Int count_copies(const Graph& h, const Graph& g, int vertex_cap = 2500) {
  if (h.n < 1) throw input_error("count_copies: empty pattern");
  if (h.n > kPatternCap) throw input_error("count_copies: pattern larger than 8 vertices");
  if (h.n >= 4 && g.n > vertex_cap)
    throw budget_error("count_copies: host graph over the " + std::to_string(vertex_cap) +
                       "-vertex cap (raise --budget)");
  if (h.n > g.n) return 0;
  Bitset all = g.vertices();
  std::vector<int> map(h.n, -1);
  std::vector<Bitset> cand(h.n, Bitset(g.n));
  Int count = 0;
  auto rec = [&](auto&& self, int i, const Bitset& used) -> void {
    // candidates: adjacency to each mapped j must match the pattern
    Bitset c = all - used;
    for (int j = 0; j < i; ++j) {
      if (h.has_edge(i, j)) {
        c &= g.adj[map[j]];
      } else {
        c -= g.adj[map[j]];
      }
      if (c.none()) return;
    }
    if (i == h.n - 1) {
      count += static_cast<unsigned long>(c.count());
      return;
    }
    Bitset next_used = used;
    c.for_each([&](std::size_t v) {
      map[i] = static_cast<int>(v);
      next_used.set(v);
      self(self, i + 1, next_used);
      next_used.reset(v);
    });
  };
  rec(rec, 0, Bitset(g.n));
  return count;
}

inline Graph p4() { return from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}}); }

inline Int automorphism_count(const Graph& h) { return count_copies(h, h, 100000); }

// Replace vertex v of h1 by the whole of h2: h1 minus v keeps relative
// order, h2's vertices are appended, and every h2 vertex is joined to the
// former neighbourhood of v.
inline Graph substitute(const Graph& h1, int v, const Graph& h2) {
  if (v < 0 || v >= h1.n) throw input_error("substitute: vertex out of range");
  if (h2.n < 1) throw input_error("substitute: empty replacement graph");
  int n = h1.n - 1 + h2.n;
  Graph g(n);
  auto old_id = [&](int u) { return u < v ? u : u + 1; };
  for (int a = 0; a < h1.n - 1; ++a)
    for (int b = a + 1; b < h1.n - 1; ++b)
      if (h1.has_edge(old_id(a), old_id(b))) g.add_edge(a, b);
  int base = h1.n - 1;
  for (int a = 0; a < h2.n; ++a)
    for (int b = a + 1; b < h2.n; ++b)
      if (h2.has_edge(a, b)) g.add_edge(base + a, base + b);
  for (int a = 0; a < h1.n - 1; ++a)
    if (h1.has_edge(old_id(a), v))
      for (int b = 0; b < h2.n; ++b) g.add_edge(a, base + b);
  return g;
}

// `draws` substitution results over the growing pool, deterministic in the
// seed. The pool admits results of at most kPatternCap vertices, deduped
// by exact adjacency; the returned list keeps every draw.
inline std::vector<Graph> substitution_closure_sample(const std::vector<Graph>& base,
                                                      int draws, std::uint64_t seed) {
  if (draws < 0) throw input_error("substitution_closure_sample: negative draw count");
  for (const auto& b : base)
    if (b.n < 1 || b.n > kPatternCap)
      throw input_error("substitution_closure_sample: base pattern outside 1..8 vertices");
  if (base.empty()) throw input_error("substitution_closure_sample: empty base");
  SplitMix64 rng(seed);
  std::vector<Graph> pool = base;
  std::vector<Graph> out;
  out.reserve(draws);
  auto same = [](const Graph& a, const Graph& b) {
    if (a.n != b.n) return false;
    for (int v = 0; v < a.n; ++v)
      if (!(a.adj[v] == b.adj[v])) return false;
    return true;
  };
  for (int step = 0; step < draws; ++step) {
    const Graph& h1 = pool[rng.below(pool.size())];
    int v = static_cast<int>(rng.below(h1.n));
    const Graph& h2 = pool[rng.below(pool.size())];
    Graph r = substitute(h1, v, h2);
    out.push_back(r);
    if (r.n <= kPatternCap &&
        std::none_of(pool.begin(), pool.end(), [&](const Graph& p) { return same(p, r); }))
      pool.push_back(std::move(r));
  }
  return out;
}

// Exponent for a substituted pattern from its parts' exponents.
inline Rat substitution_exponent(const Rat& d1, const Rat& d2, int h2_vertices) {
  return Rat(h2_vertices + 1) * (d1 + 1) + d2;
}

struct RestrictedDensityCertificate {
  Bitset set;
  Side side = Side::graph;
  Rat density;
};

enum class ViralBranch { many_copies, sparse_or_dense_set, undecided };

// threshold = base^(1/root), kept exact; compare t^root against base.
struct PowThreshold {
  Rat base;
  unsigned long root = 1;
};

struct ViralVerdict {
  ViralBranch branch = ViralBranch::undecided;
  Int copy_count;
  PowThreshold threshold;  // eps^d * |G|^|H|
  std::optional<RestrictedDensityCertificate> witness;
};

namespace detail {

inline Rat side_density(const Graph& g, const Bitset& x, Side side) {
  std::size_t sz = x.count();
  if (sz < 2) return Rat(0);
  Int pairs = binom2(Int(static_cast<unsigned long>(sz)));
  unsigned long twice = 0;
  x.for_each([&](std::size_t v) { twice += g.adj[v].and_count(x); });
  Int edges(twice / 2);
  if (side == Side::complement) edges = pairs - edges;
  Rat d(edges, pairs);
  d.canonicalize();
  return d;
}

// |x| >= eps^d * n and one side density <= eps; checks both sides,
// preferred side first.
inline std::optional<RestrictedDensityCertificate> density_witness(
    const Graph& g, const Bitset& x, const Rat& eps, const Rat& d, Side prefer) {
  if (!x.any()) return std::nullopt;
  if (!ge_pow(Rat(static_cast<long>(x.count())), eps, d, Rat(g.n))) return std::nullopt;
  for (Side s : {prefer, other(prefer)}) {
    Rat den = side_density(g, x, s);
    if (den <= eps) return RestrictedDensityCertificate{x, s, den};
  }
  return std::nullopt;
}

}  // namespace detail

// Soundness only: a non-undecided verdict always carries an exact
// certificate; undecided makes no claim. For cographs the extractor
// certifies one side whenever the copy count is below threshold.
inline ViralVerdict viral_check(const Graph& g, const Graph& h, const Rat& eps, const Rat& d,
                                int count_cap = 2500, int oracle_cap = 16) {
  if (eps <= 0 || eps > Rat(1, 2)) throw input_error("viral_check: eps outside (0,1/2]");
  if (d <= 0) throw input_error("viral_check: d must be positive");
  ViralVerdict v;
  v.copy_count = count_copies(h, g, count_cap);
  unsigned long a = d.get_num().get_ui(), b = d.get_den().get_ui();
  v.threshold = PowThreshold{
      rat_pow(eps, a) * rat_pow(Rat(int_pow(Int(g.n), static_cast<unsigned long>(h.n))), b), b};
  if (g.n > 0 && rat_pow(Rat(v.copy_count), b) >= v.threshold.base) {
    v.branch = ViralBranch::many_copies;
    return v;
  }
  if (g.n == 0) return v;
  auto accept = [&](std::optional<RestrictedDensityCertificate> w) {
    if (w) {
      v.branch = ViralBranch::sparse_or_dense_set;
      v.witness = std::move(w);
    }
    return v.branch == ViralBranch::sparse_or_dense_set;
  };
  // whole vertex set first: free when G is globally sparse or dense
  if (g.n >= 2 &&
      accept(detail::density_witness(g, g.vertices(), eps, d, Side::graph)))
    return v;
  auto rec = build_cotree(g);
  if (auto* t = std::get_if<Cotree>(&rec)) {
    RestrictedCertificate c = restricted_extract(g, *t, eps);
    if (accept(detail::density_witness(g, c.set, eps, d, c.side))) return v;
    // slightly smaller parameter buys max degree <= eps*(|X|-1), which
    // turns the degree bound into a density bound
    Rat shrunk = eps - Rat(2, g.n);
    if (shrunk > 0) {
      RestrictedCertificate c2 = restricted_extract(g, *t, shrunk);
      if (accept(detail::density_witness(g, c2.set, eps, d, c2.side))) return v;
    }
  } else {
    // heuristics: peel the max-degree vertex, checking every prefix
    for (Side side : {Side::graph, Side::complement}) {
      Bitset x = g.vertices();
      while (x.count() >= 2) {
        if (accept(detail::density_witness(g, x, eps, d, side))) return v;
        long worst = -1;
        std::size_t worst_v = 0;
        x.for_each([&](std::size_t u) {
          long deg = side_degree(g, static_cast<int>(u), x, side);
          if (deg > worst) {
            worst = deg;
            worst_v = u;
          }
        });
        x.reset(worst_v);
      }
    }
  }
  if (g.n <= oracle_cap) {
    auto adj = detail::adj_masks(g);
    std::uint32_t full = (1u << g.n) - 1;
    for (std::uint32_t mask = full; mask >= 1; --mask) {
      Bitset x = detail::mask_to_set(mask, g.n);
      if (accept(detail::density_witness(g, x, eps, d, Side::graph))) return v;
    }
  }
  return v;
}

}  // namespace cgr
