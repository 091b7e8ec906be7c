// Graph core: simple undirected graphs over 0..n-1 with bitset adjacency
// rows, complement/induced views, side degrees, exact edge density, the
// restricted-set checker, and the `n m` / `u v` text format.
#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cgr/bitset.hpp"
#include "cgr/rational.hpp"

namespace cgr {

enum class Side { graph, complement };

inline Side other(Side s) { return s == Side::graph ? Side::complement : Side::graph; }
inline char side_char(Side s) { return s == Side::graph ? 'g' : 'c'; }

struct Graph {
  int n = 0;
  std::vector<Bitset> adj;

  explicit Graph(int n_ = 0) : n(n_), adj(n_, Bitset(n_)) {}

  void add_edge(int u, int v) {
    adj[u].set(v);
    adj[v].set(u);
  }
  bool has_edge(int u, int v) const { return u != v && adj[u].test(v); }

  Bitset vertices() const { return Bitset::full(n); }
};

using VertexSet = Bitset;

inline Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw input_error("negative vertex count");
  Graph g(n);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw input_error("edge " + std::to_string(i + 1) + ": endpoint out of range");
    if (u == v) throw input_error("edge " + std::to_string(i + 1) + ": self-loop");
    g.add_edge(u, v);  // duplicates collapse in the bitset
  }
  return g;
}

inline Graph complement(const Graph& g) {
  Graph c(g.n);
  Bitset all = Bitset::full(g.n);
  for (int v = 0; v < g.n; ++v) {
    c.adj[v] = all - g.adj[v];
    c.adj[v].reset(v);
  }
  return c;
}

// Neighbours of v within X on the chosen side.
inline Bitset side_row(const Graph& g, int v, const Bitset& x, Side side) {
  if (side == Side::graph) return g.adj[v] & x;
  Bitset r = x - g.adj[v];
  r.reset(v);
  return r;
}

inline long side_degree(const Graph& g, int v, const Bitset& x, Side side) {
  long dg = static_cast<long>(g.adj[v].and_count(x));
  if (side == Side::graph) return dg;
  long in = x.test(v) ? 1 : 0;
  return static_cast<long>(x.count()) - in - dg;
}

inline long side_max_degree(const Graph& g, const Bitset& x, Side side) {
  long sz = static_cast<long>(x.count());
  if (sz == 0) return 0;
  long best = 0;
  x.for_each([&](std::size_t v) {
    long dg = static_cast<long>(g.adj[v].and_count(x));
    long d = side == Side::graph ? dg : sz - 1 - dg;
    if (d > best) best = d;
  });
  return best;
}

inline Int edge_count(const Graph& g) {
  std::size_t twice = 0;
  for (int v = 0; v < g.n; ++v) twice += g.adj[v].count();
  return Int(static_cast<unsigned long>(twice / 2));
}

inline Rat edge_density(const Graph& g) {
  if (g.n <= 1) throw input_error("edge_density needs at least 2 vertices");
  Rat d(edge_count(g), binom2(Int(g.n)));
  d.canonicalize();
  return d;
}

struct InducedGraph {
  Graph g;
  std::vector<int> vertex_map;  // new id -> original id, ascending
};

inline InducedGraph induced(const Graph& g, const Bitset& x) {
  if (x.size() != static_cast<std::size_t>(g.n) && g.n > 0)
    throw input_error("induced: vertex set has wrong universe");
  InducedGraph r;
  r.vertex_map = x.to_vector();
  int k = static_cast<int>(r.vertex_map.size());
  r.g = Graph(k);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (g.has_edge(r.vertex_map[a], r.vertex_map[b])) r.g.add_edge(a, b);
  return r;
}

// Connected components of the chosen side induced on X, ordered by
// smallest member; their disjoint union is X.
inline std::vector<Bitset> components(const Graph& g, const Bitset& x, Side side) {
  std::vector<Bitset> comps;
  Bitset left = x;
  for (std::size_t seed = left.next(); seed != Bitset::npos; seed = left.next()) {
    Bitset comp(x.size());
    Bitset frontier(x.size());
    frontier.set(seed);
    while (frontier.any()) {
      comp |= frontier;
      left -= frontier;
      Bitset nxt(x.size());
      frontier.for_each([&](std::size_t v) {
        nxt |= side_row(g, static_cast<int>(v), left, side);
      });
      nxt &= left;
      frontier = nxt;
    }
    comps.push_back(comp);
  }
  return comps;
}

inline bool is_complete_between(const Graph& g, const Bitset& a, const Bitset& b) {
  std::size_t need = b.count();
  bool ok = true;
  a.for_each([&](std::size_t v) {
    if (ok && g.adj[v].and_count(b) != need) ok = false;
  });
  return ok;
}

inline bool is_anticomplete_between(const Graph& g, const Bitset& a, const Bitset& b) {
  bool ok = true;
  a.for_each([&](std::size_t v) {
    if (ok && g.adj[v].intersects(b)) ok = false;
  });
  return ok;
}

struct RestrictedCertificate {
  Bitset set;
  Side side = Side::graph;
  Rat degree_bound;            // measured max degree of the chosen side on set
  std::optional<Rat> epsilon;  // present when the certificate claims eps-restriction
};

// The set X itself, if one side of G restricted to X has max degree
// <= eps*|X|. Graph side preferred when both qualify.
inline std::optional<RestrictedCertificate> check_restricted(const Graph& g, const Bitset& x,
                                                             const Rat& eps) {
  std::size_t sz = x.count();
  if (sz == 0) throw input_error("check_restricted: empty set");
  Rat cap = eps * Rat(static_cast<long>(sz));
  long dg = side_max_degree(g, x, Side::graph);
  if (Rat(dg) <= cap) return RestrictedCertificate{x, Side::graph, Rat(dg), eps};
  long dc = side_max_degree(g, x, Side::complement);
  if (Rat(dc) <= cap) return RestrictedCertificate{x, Side::complement, Rat(dc), eps};
  return std::nullopt;
}

// Builds the certificate for a set already known to be restricted on `side`;
// throws if the claimed bound fails.
inline RestrictedCertificate certify_restricted(const Graph& g, const Bitset& x, Side side,
                                                const Rat& eps) {
  long d = side_max_degree(g, x, side);
  if (Rat(d) > eps * Rat(static_cast<long>(x.count())))
    throw std::logic_error("certify_restricted: claimed side exceeds eps*|X|");
  return RestrictedCertificate{x, side, Rat(d), eps};
}

// ---- text format: first line "n m", then m lines "u v" ----

struct GraphReadResult {
  Graph g;
  int duplicate_edges = 0;  // collapsed with a warning by callers
};

inline GraphReadResult read_graph(std::istream& in) {
  std::string line;
  long n = -1, m = -1;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    if (n < 0) {
      if (!(ls >> n >> m) || n < 0 || m < 0)
        throw input_error("line " + std::to_string(lineno) + ": expected 'n m'");
      break;
    }
  }
  if (n < 0) throw input_error("empty graph input");
  GraphReadResult r;
  r.g = Graph(static_cast<int>(n));
  long seen = 0;
  while (seen < m && std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    long u, v;
    if (!(ls >> u >> v))
      throw input_error("line " + std::to_string(lineno) + ": expected 'u v'");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw input_error("line " + std::to_string(lineno) + ": endpoint out of range");
    if (u == v) throw input_error("line " + std::to_string(lineno) + ": self-loop");
    if (r.g.has_edge(static_cast<int>(u), static_cast<int>(v))) ++r.duplicate_edges;
    r.g.add_edge(static_cast<int>(u), static_cast<int>(v));
    ++seen;
  }
  if (seen < m) throw input_error("graph input ended before " + std::to_string(m) + " edges");
  return r;
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.n << ' ' << edge_count(g).get_str() << '\n';
  for (int u = 0; u < g.n; ++u) {
    g.adj[u].for_each([&](std::size_t v) {
      if (static_cast<int>(v) > u) out << u << ' ' << v << '\n';
    });
  }
}

}  // namespace cgr
