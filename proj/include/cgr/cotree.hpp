// Cograph recognition by recursive component / co-component splitting,
// the cotree it produces, clique/stable DP, restriction to a vertex
// subset, a seeded random-cograph generator, and the parenthesised text
// format "(U ...)" / "(J ...)".
#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cgr/graph.hpp"
#include "cgr/rng.hpp"

namespace cgr {

enum class NodeType { leaf, unite, join };

struct Cotree {
  struct Node {
    NodeType type = NodeType::leaf;
    int vertex = -1;                // for leaves
    std::vector<int> children;      // sorted by smallest contained leaf
    Bitset leaves;
  };

  std::vector<Node> nodes;
  int root = -1;
  int n = 0;  // universe size of the leaf bitsets

  int add_leaf(int v) {
    Node nd;
    nd.type = NodeType::leaf;
    nd.vertex = v;
    nd.leaves = Bitset::single(n, v);
    nodes.push_back(std::move(nd));
    return static_cast<int>(nodes.size()) - 1;
  }

  int add_internal(NodeType t, std::vector<int> children) {
    Node nd;
    nd.type = t;
    nd.leaves = Bitset(n);
    for (int c : children) nd.leaves |= nodes[c].leaves;
    std::sort(children.begin(), children.end(), [&](int a, int b) {
      return nodes[a].leaves.next() < nodes[b].leaves.next();
    });
    nd.children = std::move(children);
    nodes.push_back(std::move(nd));
    return static_cast<int>(nodes.size()) - 1;
  }

  const Bitset& span() const { return nodes[root].leaves; }
  std::size_t span_size() const { return nodes[root].leaves.count(); }
};

struct P4Witness {
  int a, b, c, d;  // path order: edges ab, bc, cd
};

// Induced P4 inside X, assuming one exists. Tries a shortest path of
// length 3 on either side first (shortest paths are induced, and an
// induced P4 of the complement is an induced P4 of the graph after
// reordering), then falls back to scanning 4-subsets in ascending order.
inline std::optional<P4Witness> find_p4(const Graph& g, const Bitset& x) {
  for (Side side : {Side::graph, Side::complement}) {
    for (std::size_t u = x.next(); u != Bitset::npos; u = x.next(u + 1)) {
      // three BFS levels from u
      Bitset l0 = Bitset::single(x.size(), u);
      Bitset seen = l0;
      Bitset l1(x.size()), l2(x.size()), l3(x.size());
      auto expand = [&](const Bitset& from) {
        Bitset nxt(x.size());
        from.for_each([&](std::size_t v) {
          nxt |= side_row(g, static_cast<int>(v), x, side);
        });
        nxt -= seen;
        seen |= nxt;
        return nxt;
      };
      l1 = expand(l0);
      l2 = expand(l1);
      l3 = expand(l2);
      std::size_t d3 = l3.next();
      if (d3 == Bitset::npos) continue;
      Bitset vset = Bitset::single(x.size(), d3);
      Bitset p2cand(x.size());
      vset.for_each([&](std::size_t v) { p2cand = side_row(g, static_cast<int>(v), l2, side); });
      std::size_t p2 = p2cand.next();
      Bitset p1cand = side_row(g, static_cast<int>(p2), l1, side);
      std::size_t p1 = p1cand.next();
      int a = static_cast<int>(u), b = static_cast<int>(p1), c = static_cast<int>(p2),
          d = static_cast<int>(d3);
      if (side == Side::complement) {
        // complement path a-b-c-d induces the graph path c-a-d-b
        int na = c, nb = a, nc = d, nd = b;
        a = na; b = nb; c = nc; d = nd;
      }
      if (d < a) std::swap(a, d), std::swap(b, c);
      return P4Witness{a, b, c, d};
    }
  }
  // exhaustive fallback
  std::vector<int> vs = x.to_vector();
  std::size_t k = vs.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = j + 1; l < k; ++l)
        for (std::size_t m = l + 1; m < k; ++m) {
          int q[4] = {vs[i], vs[j], vs[l], vs[m]};
          int deg[4] = {0, 0, 0, 0};
          int edges = 0;
          for (int s = 0; s < 4; ++s)
            for (int t = s + 1; t < 4; ++t)
              if (g.has_edge(q[s], q[t])) ++edges, ++deg[s], ++deg[t];
          if (edges != 3) continue;
          bool shape = true;
          for (int s = 0; s < 4; ++s)
            if (deg[s] < 1 || deg[s] > 2) shape = false;
          if (!shape) continue;
          int ends[2], mids[2], ne = 0, nm = 0;
          for (int s = 0; s < 4; ++s) (deg[s] == 1 ? ends[ne++] : mids[nm++]) = q[s];
          int a = std::min(ends[0], ends[1]);
          int d = std::max(ends[0], ends[1]);
          int b = g.has_edge(a, mids[0]) ? mids[0] : mids[1];
          int c = b == mids[0] ? mids[1] : mids[0];
          return P4Witness{a, b, c, d};
        }
  return std::nullopt;
}

namespace detail {

inline int cotree_rec(const Graph& g, Cotree& t, const Bitset& x, std::optional<P4Witness>& p4) {
  if (x.count() == 1) return t.add_leaf(static_cast<int>(x.next()));
  auto comps = components(g, x, Side::graph);
  NodeType type = NodeType::unite;
  if (comps.size() == 1) {
    comps = components(g, x, Side::complement);
    type = NodeType::join;
  }
  if (comps.size() == 1) {
    p4 = find_p4(g, x);
    if (!p4) throw std::logic_error("connected on both sides but no induced P4 found");
    return -1;
  }
  std::vector<int> children;
  children.reserve(comps.size());
  for (const auto& c : comps) {
    int id = cotree_rec(g, t, c, p4);
    if (id < 0) return -1;
    children.push_back(id);
  }
  return t.add_internal(type, std::move(children));
}

}  // namespace detail

inline std::variant<Cotree, P4Witness> build_cotree(const Graph& g) {
  if (g.n < 1) throw input_error("build_cotree: empty graph");
  Cotree t;
  t.n = g.n;
  t.nodes.reserve(2 * g.n);
  std::optional<P4Witness> p4;
  int root = detail::cotree_rec(g, t, g.vertices(), p4);
  if (root < 0) return *p4;
  t.root = root;
  return t;
}

inline bool is_cograph(const Graph& g) {
  return std::holds_alternative<Cotree>(build_cotree(g));
}

// The cotree of G restricted to the cograph's subset S, renormalized.
inline Cotree cotree_restrict(const Cotree& t, const Bitset& s) {
  Cotree out;
  out.n = t.n;
  out.nodes.reserve(2 * s.count());
  // returns id in out, or -1 when the subtree is disjoint from S
  auto rec = [&](auto&& self, int node) -> int {
    const auto& nd = t.nodes[node];
    if (!nd.leaves.intersects(s)) return -1;
    if (nd.type == NodeType::leaf) return out.add_leaf(nd.vertex);
    std::vector<int> kept;
    for (int c : nd.children) {
      int id = self(self, c);
      if (id >= 0) kept.push_back(id);
    }
    if (kept.size() == 1) return kept[0];
    std::vector<int> children;
    for (int id : kept) {
      if (out.nodes[id].type == nd.type) {
        for (int gc : out.nodes[id].children) children.push_back(gc);
      } else {
        children.push_back(id);
      }
    }
    return out.add_internal(nd.type, std::move(children));
  };
  int root = rec(rec, t.root);
  if (root < 0) throw input_error("cotree_restrict: empty subset");
  out.root = root;
  return out;
}

inline Graph realize(const Cotree& t) {
  Graph g(t.n);
  auto rec = [&](auto&& self, int node) -> void {
    const auto& nd = t.nodes[node];
    if (nd.type == NodeType::leaf) return;
    for (int c : nd.children) self(self, c);
    if (nd.type == NodeType::join) {
      for (std::size_t i = 0; i < nd.children.size(); ++i)
        for (std::size_t j = i + 1; j < nd.children.size(); ++j) {
          const Bitset& a = t.nodes[nd.children[i]].leaves;
          const Bitset& b = t.nodes[nd.children[j]].leaves;
          a.for_each([&](std::size_t v) { g.adj[v] |= b; });
          b.for_each([&](std::size_t v) { g.adj[v] |= a; });
        }
    }
  };
  rec(rec, t.root);
  return g;
}

struct CliqueStable {
  Bitset clique, stable;
};

// Exact max clique and max stable set by tree DP: a join adds cliques and
// maxes stables, a union does the opposite.
inline CliqueStable max_clique_and_stable(const Cotree& t) {
  auto rec = [&](auto&& self, int node) -> CliqueStable {
    const auto& nd = t.nodes[node];
    if (nd.type == NodeType::leaf)
      return {Bitset::single(t.n, nd.vertex), Bitset::single(t.n, nd.vertex)};
    CliqueStable acc{Bitset(t.n), Bitset(t.n)};
    for (int c : nd.children) {
      CliqueStable sub = self(self, c);
      if (nd.type == NodeType::join) {
        acc.clique |= sub.clique;
        if (sub.stable.count() > acc.stable.count()) acc.stable = sub.stable;
      } else {
        acc.stable |= sub.stable;
        if (sub.clique.count() > acc.clique.count()) acc.clique = sub.clique;
      }
    }
    return acc;
  };
  return rec(rec, t.root);
}

// Deterministic random normalized cotree: vertices shuffled once, then
// recursive splitting with 2..4 children per node and strict type
// alternation below the root. See README for the frozen derivation.
inline std::pair<Graph, Cotree> random_cograph(int n, const Rat& join_bias,
                                               std::uint64_t seed) {
  if (n < 1) throw input_error("random_cograph: n must be >= 1");
  if (join_bias < 0 || join_bias > 1) throw input_error("random_cograph: bias outside [0,1]");
  SplitMix64 rng(seed);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i >= 1; --i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  Cotree t;
  t.n = n;
  t.nodes.reserve(2 * n);
  NodeType root_type =
      rng.below(join_bias.get_den().get_ui()) < join_bias.get_num().get_ui()
          ? NodeType::join
          : NodeType::unite;
  auto rec = [&](auto&& self, int lo, int hi, NodeType type) -> int {
    int s = hi - lo;
    if (s == 1) return t.add_leaf(perm[lo]);
    int kmax = std::min(s, 4);
    int k = kmax == 2 ? 2 : 2 + static_cast<int>(rng.below(kmax - 1));
    std::vector<int> cuts;
    while (static_cast<int>(cuts.size()) < k - 1) {
      int c = 1 + static_cast<int>(rng.below(s - 1));
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    cuts.push_back(0);
    cuts.push_back(s);
    std::sort(cuts.begin(), cuts.end());
    NodeType child_type = type == NodeType::join ? NodeType::unite : NodeType::join;
    std::vector<int> children;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      children.push_back(self(self, lo + cuts[i], lo + cuts[i + 1], child_type));
    return t.add_internal(type, std::move(children));
  };
  t.root = rec(rec, 0, n, root_type);
  return {realize(t), std::move(t)};
}

// ---- text format ----

inline void format_cotree_rec(const Cotree& t, int node, std::string& out) {
  const auto& nd = t.nodes[node];
  if (nd.type == NodeType::leaf) {
    out += std::to_string(nd.vertex);
    return;
  }
  out += nd.type == NodeType::unite ? "(U" : "(J";
  for (int c : nd.children) {
    out += ' ';
    format_cotree_rec(t, c, out);
  }
  out += ')';
}

inline std::string format_cotree(const Cotree& t) {
  std::string s;
  format_cotree_rec(t, t.root, s);
  return s;
}

namespace detail {

inline int parse_cotree_rec(const std::string& s, std::size_t& pos, Cotree& t,
                            std::vector<bool>& seen) {
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  skip();
  if (pos >= s.size()) throw input_error("cotree: unexpected end of input");
  if (s[pos] == '(') {
    ++pos;
    skip();
    if (pos >= s.size() || (s[pos] != 'U' && s[pos] != 'J'))
      throw input_error("cotree: expected U or J after '('");
    NodeType type = s[pos] == 'U' ? NodeType::unite : NodeType::join;
    ++pos;
    std::vector<int> children;
    while (true) {
      skip();
      if (pos >= s.size()) throw input_error("cotree: missing ')'");
      if (s[pos] == ')') {
        ++pos;
        break;
      }
      children.push_back(parse_cotree_rec(s, pos, t, seen));
    }
    if (children.size() < 2) throw input_error("cotree: internal node needs >= 2 children");
    for (int c : children)
      if (t.nodes[c].type == type)
        throw input_error("cotree: child with same label as parent (not normalized)");
    return t.add_internal(type, std::move(children));
  }
  if (!std::isdigit(static_cast<unsigned char>(s[pos])))
    throw input_error("cotree: expected leaf id or '('");
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  int v = std::stoi(s.substr(start, pos - start));
  if (v >= static_cast<int>(seen.size())) seen.resize(v + 1, false);
  if (seen[v]) throw input_error("cotree: duplicate leaf " + std::to_string(v));
  seen[v] = true;
  return t.add_leaf(v);
}

}  // namespace detail

inline Cotree parse_cotree(const std::string& s) {
  Cotree t;
  std::vector<bool> seen;
  // leaf ids are unknown until parsed; build with a roomy universe, then rebuild
  t.n = static_cast<int>(s.size()) + 1;
  std::size_t pos = 0;
  int root = detail::parse_cotree_rec(s, pos, t, seen);
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw input_error("cotree: trailing characters");
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) throw input_error("cotree: leaf ids must cover 0..n-1, missing " +
                                    std::to_string(v));
  // rebuild with the exact universe size
  Cotree out;
  out.n = static_cast<int>(seen.size());
  auto rec = [&](auto&& self, int node) -> int {
    const auto& nd = t.nodes[node];
    if (nd.type == NodeType::leaf) return out.add_leaf(nd.vertex);
    std::vector<int> children;
    for (int c : nd.children) children.push_back(self(self, c));
    return out.add_internal(nd.type, std::move(children));
  };
  out.root = rec(rec, root);
  return out;
}

}  // namespace cgr
