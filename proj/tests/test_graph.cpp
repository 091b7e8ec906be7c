#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "cgr/generators.hpp"
#include "cgr/graph.hpp"
#include "cgr/oracle.hpp"

using namespace cgr;

namespace {

Graph path4() { return from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}}); }
Graph clique(int n) {
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) e.push_back({a, b});
  return from_edge_list(n, e);
}
Graph cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return from_edge_list(n, e);
}

// independent degree computation without bitset kernels
long naive_side_max_degree(const Graph& g, const Bitset& x, Side side) {
  auto vs = x.to_vector();
  long best = 0;
  for (int v : vs) {
    long d = 0;
    for (int u : vs)
      if (u != v && (side == Side::graph ? g.has_edge(u, v) : !g.has_edge(u, v))) ++d;
    best = std::max(best, d);
  }
  return best;
}

}  // namespace

TEST_CASE("from_edge_list basics") {
  Graph k2 = from_edge_list(2, {{0, 1}});
  CHECK(k2.has_edge(0, 1));
  CHECK(edge_count(k2) == 1);

  Graph e3 = from_edge_list(3, {});
  CHECK(edge_count(e3) == 0);

  Graph p4 = path4();
  CHECK(edge_count(p4) == 3);
  CHECK(p4.has_edge(1, 2));
  CHECK_FALSE(p4.has_edge(0, 2));

  CHECK(edge_count(from_edge_list(2, {{0, 1}, {0, 1}, {1, 0}})) == 1);

  CHECK_THROWS_AS(from_edge_list(2, {{0, 2}}), input_error);
  CHECK_THROWS_AS(from_edge_list(2, {{1, 1}}), input_error);
  CHECK_THROWS_WITH(from_edge_list(3, {{0, 1}, {2, 2}}),
                    Catch::Matchers::ContainsSubstring("edge 2"));
}

TEST_CASE("complement") {
  Graph k2 = from_edge_list(2, {{0, 1}});
  CHECK(edge_count(complement(k2)) == 0);

  // complement of P4 is isomorphic to P4
  Graph cp4 = complement(path4());
  CHECK(count_copies_reference(path4(), cp4) == 2);

  Graph g0(0);
  Graph cg0 = complement(g0);
  CHECK(cg0.n == 0);

  Graph g = half_graph(8);
  Graph cc = complement(complement(g));
  for (int v = 0; v < g.n; ++v) CHECK(cc.adj[v] == g.adj[v]);
}

TEST_CASE("induced subgraphs") {
  Graph p4 = path4();
  Bitset x(4);
  x.set(0); x.set(1); x.set(2);
  auto sub = induced(p4, x);
  CHECK(sub.g.n == 3);
  CHECK(edge_count(sub.g) == 2);
  CHECK(sub.g.has_edge(0, 1));
  CHECK(sub.g.has_edge(1, 2));
  CHECK(sub.vertex_map == std::vector<int>{0, 1, 2});

  Bitset y(4);
  y.set(1); y.set(3);
  auto k2 = induced(clique(4), y);
  CHECK(k2.g.n == 2);
  CHECK(k2.g.has_edge(0, 1));

  // C5 restricted to four consecutive vertices is P4
  Bitset z(5);
  z.set(0); z.set(1); z.set(2); z.set(3);
  auto c5sub = induced(cycle(5), z);
  CHECK(count_copies_reference(path4(), c5sub.g) == 2);
}

TEST_CASE("side_max_degree") {
  Graph k4 = clique(4);
  CHECK(side_max_degree(k4, k4.vertices(), Side::graph) == 3);
  CHECK(side_max_degree(k4, k4.vertices(), Side::complement) == 0);

  // half_graph(8): {a1..a4, b1} has a single edge a1-b1 on the graph side
  Graph h = half_graph(8);
  Bitset s(8);
  s.set(0); s.set(1); s.set(2); s.set(3); s.set(4);
  long expected = naive_side_max_degree(h, s, Side::graph);
  CHECK(expected == 1);
  CHECK(side_max_degree(h, s, Side::graph) == expected);
  CHECK(side_max_degree(h, Bitset(8), Side::graph) == 0);
}

TEST_CASE("edge_density") {
  CHECK(edge_density(clique(4)) == Rat(1));
  CHECK(edge_density(from_edge_list(5, {})) == Rat(0));
  CHECK(edge_density(path4()) == Rat(1, 2));
  CHECK_THROWS_AS(edge_density(Graph(1)), input_error);
}

TEST_CASE("check_restricted") {
  Graph k4 = clique(4);
  auto cert = check_restricted(k4, k4.vertices(), Rat(1));
  REQUIRE(cert);
  CHECK(cert->side == Side::complement);
  CHECK(cert->degree_bound == Rat(0));

  CHECK_FALSE(check_restricted(path4(), path4().vertices(), Rat(1, 4)));

  Graph h = half_graph(8);
  auto single = check_restricted(h, Bitset::single(8, 3), Rat(0));
  REQUIRE(single);
  CHECK(single->degree_bound == Rat(0));

  CHECK_THROWS_AS(check_restricted(k4, Bitset(4), Rat(1)), input_error);
}

TEST_CASE("components") {
  Graph two_k3 = disjoint_cliques({3, 3});
  auto graph_comps = components(two_k3, two_k3.vertices(), Side::graph);
  REQUIRE(graph_comps.size() == 2);
  CHECK(graph_comps[0].count() == 3);
  CHECK(graph_comps[0].next() == 0);
  CHECK(graph_comps[1].next() == 3);

  CHECK(components(two_k3, two_k3.vertices(), Side::complement).size() == 1);
  CHECK(components(path4(), path4().vertices(), Side::graph).size() == 1);
  CHECK(components(path4(), Bitset(4), Side::graph).empty());
}

TEST_CASE("graph-core invariants on random instances") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Graph g = random_graph(20, Rat(1, 2), seed);
    Graph cg = complement(g);
    SplitMix64 rng(seed * 977);
    Bitset x(20);
    for (int v = 0; v < 20; ++v)
      if (rng.below(2)) x.set(v);
    if (!x.any()) x.set(0);

    CHECK(side_max_degree(g, x, Side::graph) == side_max_degree(cg, x, Side::complement));
    CHECK(side_max_degree(g, x, Side::graph) == naive_side_max_degree(g, x, Side::graph));
    CHECK(side_max_degree(g, x, Side::complement) ==
          naive_side_max_degree(g, x, Side::complement));
    CHECK(edge_density(g) + edge_density(cg) == Rat(1));

    Rat eps(static_cast<long>(seed % 4), 4);
    if (x.any() && eps > 0) {
      bool fast = check_restricted(g, x, eps).has_value();
      long sz = static_cast<long>(x.count());
      bool slow = Rat(naive_side_max_degree(g, x, Side::graph)) <= eps * Rat(sz) ||
                  Rat(naive_side_max_degree(g, x, Side::complement)) <= eps * Rat(sz);
      CHECK(fast == slow);
    }

    for (Side side : {Side::graph, Side::complement}) {
      auto comps = components(g, x, side);
      Bitset acc(20);
      std::size_t total = 0;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        CHECK_FALSE(comps[i].intersects(acc));
        acc |= comps[i];
        total += comps[i].count();
        for (std::size_t j = i + 1; j < comps.size(); ++j) {
          bool crossing = side == Side::graph
                              ? !is_anticomplete_between(g, comps[i], comps[j])
                              : !is_complete_between(g, comps[i], comps[j]);
          CHECK_FALSE(crossing);
        }
      }
      CHECK(acc == x);
      CHECK(total == x.count());
    }
  }
}

TEST_CASE("graph text format round trip") {
  Graph g = half_graph(8);
  std::stringstream ss;
  write_graph(ss, g);
  auto r = read_graph(ss);
  CHECK(r.duplicate_edges == 0);
  for (int v = 0; v < g.n; ++v) CHECK(r.g.adj[v] == g.adj[v]);

  std::stringstream dup("3 3\n0 1\n0 1\n1 2\n");
  auto rd = read_graph(dup);
  CHECK(rd.duplicate_edges == 1);
  CHECK(edge_count(rd.g) == 2);

  std::stringstream loop("2 1\n1 1\n");
  CHECK_THROWS_WITH(read_graph(loop), Catch::Matchers::ContainsSubstring("line 2"));

  std::stringstream range("2 1\n0 5\n");
  CHECK_THROWS_AS(read_graph(range), input_error);
}

TEST_CASE("rational helpers") {
  CHECK(parse_rat("3/10") == Rat(3, 10));
  CHECK(parse_rat("0.3") == Rat(3, 10));
  CHECK(parse_rat("2") == Rat(2));
  CHECK(parse_rat("-1/2") == Rat(-1, 2));
  CHECK_THROWS_AS(parse_rat("1/0"), input_error);
  CHECK(rat_str(Rat(3, 10)) == "3/10");
  CHECK(rat_str(Rat(4, 2)) == "2");
  CHECK(rat_floor_l(Rat(7, 2)) == 3);
  CHECK(rat_ceil_l(Rat(7, 2)) == 4);
  CHECK(rat_floor_l(Rat(-7, 2)) == -4);
  // lhs >= (1/2)^(3/2) * 25 iff lhs^2 >= (1/8)*625 = 78.125
  CHECK(ge_pow(Rat(10), Rat(1, 2), Rat(3, 2), Rat(25)));
  CHECK_FALSE(ge_pow(Rat(8), Rat(1, 2), Rat(3, 2), Rat(25)));
}
