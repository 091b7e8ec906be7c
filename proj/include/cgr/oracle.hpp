// Exponential-time reference searches for small instances: exact maximum
// restricted set, exact minimum restricted partition, and copy counting by
// plain injection enumeration. Anything over budget is refused, never
// silently truncated.
#pragma once

#include <vector>

#include "cgr/graph.hpp"

namespace cgr {

struct OracleBudget {
  int max_vertices_subset = 16;
  int max_vertices_partition = 14;
};

namespace detail {

inline std::vector<std::uint32_t> adj_masks(const Graph& g) {
  std::vector<std::uint32_t> m(g.n, 0);
  for (int v = 0; v < g.n; ++v)
    g.adj[v].for_each([&](std::size_t u) { m[v] |= 1u << u; });
  return m;
}

inline Bitset mask_to_set(std::uint32_t mask, int n) {
  Bitset b(n);
  for (int v = 0; v < n; ++v)
    if (mask >> v & 1) b.set(v);
  return b;
}

// true iff one side of G restricted to mask has max degree <= cap
inline bool mask_restricted(const std::vector<std::uint32_t>& adj, std::uint32_t mask,
                            const Rat& cap_graph, const Rat& cap_comp) {
  int sz = std::popcount(mask);
  int max_g = 0;
  for (std::uint32_t m = mask; m;) {
    int v = std::countr_zero(m);
    m &= m - 1;
    max_g = std::max(max_g, std::popcount(adj[v] & mask));
  }
  if (Rat(max_g) <= cap_graph) return true;
  // complement degrees are sz-1-deg, so the max flips to the min
  int min_g = sz;
  for (std::uint32_t m = mask; m;) {
    int v = std::countr_zero(m);
    m &= m - 1;
    min_g = std::min(min_g, std::popcount(adj[v] & mask));
  }
  return Rat(sz - 1 - min_g) <= cap_comp;
}

}  // namespace detail

struct MaxRestrictedSet {
  std::size_t size = 0;
  Bitset witness;
};

// Exact maximum |X| over nonempty X such that one side of G on X has max
// degree <= eps*|X| (or <= absolute_bound when supplied). Plain subset
// enumeration; the budget keeps it honest.
inline MaxRestrictedSet max_restricted_set(const Graph& g, const Rat& eps,
                                           std::optional<Rat> absolute_bound = std::nullopt,
                                           const OracleBudget& budget = {}) {
  if (g.n > budget.max_vertices_subset)
    throw budget_error("max_restricted_set: " + std::to_string(g.n) +
                       " vertices over budget " + std::to_string(budget.max_vertices_subset));
  if (g.n == 0) throw input_error("max_restricted_set: empty graph");
  auto adj = detail::adj_masks(g);
  MaxRestrictedSet best;
  std::uint32_t full = g.n == 32 ? ~0u : (1u << g.n) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::size_t sz = static_cast<std::size_t>(std::popcount(mask));
    if (sz <= best.size) continue;
    Rat cap = absolute_bound ? *absolute_bound : eps * Rat(static_cast<long>(sz));
    if (detail::mask_restricted(adj, mask, cap, cap)) {
      best.size = sz;
      best.witness = detail::mask_to_set(mask, g.n);
    }
  }
  return best;
}

struct MinRestrictedPartition {
  int parts = 0;
  std::vector<Bitset> partition;
};

// Exact minimum number of parts in a partition of V(G) into eps-restricted
// sets, by subset DP over the 2^n feasibility table.
inline MinRestrictedPartition min_restricted_partition(const Graph& g, const Rat& eps,
                                                       const OracleBudget& budget = {}) {
  if (g.n > budget.max_vertices_partition)
    throw budget_error("min_restricted_partition: " + std::to_string(g.n) +
                       " vertices over budget " +
                       std::to_string(budget.max_vertices_partition));
  if (g.n == 0) return {0, {}};
  auto adj = detail::adj_masks(g);
  std::uint32_t full = (1u << g.n) - 1;
  std::vector<bool> ok(full + 1, false);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    Rat cap = eps * Rat(std::popcount(mask));
    ok[mask] = detail::mask_restricted(adj, mask, cap, cap);
  }
  std::vector<int> dp(full + 1, g.n + 1);
  std::vector<std::uint32_t> choice(full + 1, 0);
  dp[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t low = mask & -mask;
    for (std::uint32_t sub = mask;; sub = (sub - 1) & mask) {
      if ((sub & low) && ok[sub] && dp[mask ^ sub] + 1 < dp[mask]) {
        dp[mask] = dp[mask ^ sub] + 1;
        choice[mask] = sub;
      }
      if (sub == 0) break;
    }
  }
  MinRestrictedPartition r;
  r.parts = dp[full];
  for (std::uint32_t mask = full; mask;) {
    r.partition.push_back(detail::mask_to_set(choice[mask], g.n));
    mask ^= choice[mask];
  }
  return r;
}

// Copies of H in G by enumerating every injective map and checking edge
// and non-edge preservation directly. Cross-check for the fast counter.
inline Int count_copies_reference(const Graph& h, const Graph& g, int budget_vertices = 10) {
  if (g.n > budget_vertices)
    throw budget_error("count_copies_reference: over budget");
  if (h.n > g.n) return 0;
  std::vector<int> map(h.n, -1);
  std::vector<bool> used(g.n, false);
  Int count = 0;
  auto rec = [&](auto&& self, int i) -> void {
    if (i == h.n) {
      ++count;
      return;
    }
    for (int v = 0; v < g.n; ++v) {
      if (used[v]) continue;
      bool fits = true;
      for (int j = 0; j < i && fits; ++j)
        if (h.has_edge(i, j) != g.has_edge(v, map[j])) fits = false;
      if (!fits) continue;
      used[v] = true;
      map[i] = v;
      self(self, i + 1);
      used[v] = false;
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace cgr
