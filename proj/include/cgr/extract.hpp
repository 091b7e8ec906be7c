// Sparse/dense extraction on cographs. All bounds are exact rationals and
// every returned certificate is re-checked against the adjacency before it
// leaves this module.
//
// The two-parameter extractor walks the cotree: at a union node the y
// budget rescales per child and first-bullet sets merge across children;
// at a join node the roles swap. Multi-child nodes are folded as "first
// child vs rest" in smallest-leaf order, which telescopes to the same
// per-child rescaling.
#pragma once

#include <utility>

#include "cgr/cotree.hpp"
#include "cgr/graph.hpp"

namespace cgr {

namespace detail {

struct Bullet {
  bool second;  // false: size >= x*h, graph side; true: size >= y*h, complement side
  Bitset set;
};

inline Bullet extract_rec(const Graph& g, const Cotree& t, int node, std::size_t from,
                          const Bitset& leaves, long h, const Rat& x, const Rat& y) {
  // shortcuts keep min(x,y) <= 1 down every call
  if (x > 1) {
    long want = std::max<long>(1, rat_ceil_l(y * Rat(h)));
    return {true, leaves.lowest(static_cast<std::size_t>(want))};
  }
  if (y > 1) {
    long want = std::max<long>(1, rat_ceil_l(x * Rat(h)));
    return {false, leaves.lowest(static_cast<std::size_t>(want))};
  }
  const auto& nd = t.nodes[node];
  if (nd.type == NodeType::leaf) return {false, nd.leaves};
  const auto& kids = nd.children;
  if (from == kids.size() - 1) {
    const auto& child = t.nodes[kids[from]];
    return extract_rec(g, t, kids[from], 0, child.leaves,
                       static_cast<long>(child.leaves.count()), x, y);
  }
  const Bitset& l1 = t.nodes[kids[from]].leaves;
  long h1 = static_cast<long>(l1.count());
  Bitset l2 = leaves - l1;
  long h2 = h - h1;
  if (nd.type == NodeType::unite) {
    Rat y1 = y * Rat(h) / Rat(h1);
    Bullet r1 = extract_rec(g, t, kids[from], 0, l1, h1, x, y1);
    if (r1.second) return r1;
    Rat y2 = y * Rat(h) / Rat(h2);
    Bullet r2 = extract_rec(g, t, node, from + 1, l2, h2, x, y2);
    if (r2.second) return r2;
    return {false, r1.set | r2.set};
  }
  Rat x1 = x * Rat(h) / Rat(h1);
  Bullet r1 = extract_rec(g, t, kids[from], 0, l1, h1, x1, y);
  if (!r1.second) return r1;
  Rat x2 = x * Rat(h) / Rat(h2);
  Bullet r2 = extract_rec(g, t, node, from + 1, l2, h2, x2, y);
  if (!r2.second) return r2;
  return {true, r1.set | r2.set};
}

}  // namespace detail

// Either a set X with |X| >= x*h whose graph side has max degree <= x*y*h,
// or a set Y with |Y| >= y*h whose complement side has max degree <= x*y*h
// (h = number of vertices spanned by T). The certificate side records
// which; degree_bound is the measured max degree.
inline RestrictedCertificate sparse_dense_extract(const Graph& g, const Cotree& t,
                                                  const Rat& x, const Rat& y) {
  if (x < 0 || y < 0 || (x > 1 && y > 1))
    throw input_error("sparse_dense_extract: need x,y >= 0 with min(x,y) <= 1");
  long h = static_cast<long>(t.span_size());
  detail::Bullet b =
      detail::extract_rec(g, t, t.root, 0, t.span(), h, x, y);
  Side side = b.second ? Side::complement : Side::graph;
  long deg = side_max_degree(g, b.set, side);
  Rat size(static_cast<long>(b.set.count()));
  Rat need = (b.second ? y : x) * Rat(h);
  if (size < need || Rat(deg) > x * y * Rat(h))
    throw std::logic_error("sparse_dense_extract: certificate failed self-check");
  return RestrictedCertificate{std::move(b.set), side, Rat(deg), std::nullopt};
}

// |X| >= ceil(eps*h) with the chosen side's max degree <= eps^2*h
// (hence <= eps*|X|): the two-parameter extractor at x = y = eps.
inline RestrictedCertificate restricted_extract(const Graph& g, const Cotree& t,
                                                const Rat& eps) {
  if (eps < 0 || eps > 1) throw input_error("restricted_extract: eps outside [0,1]");
  long h = static_cast<long>(t.span_size());
  RestrictedCertificate cert = sparse_dense_extract(g, t, eps, eps);
  if (Rat(static_cast<long>(cert.set.count())) < eps * Rat(h) ||
      cert.degree_bound > eps * eps * Rat(h))
    throw std::logic_error("restricted_extract: certificate failed self-check");
  cert.epsilon = eps;
  return cert;
}

namespace detail {

struct SparseDensePair {
  Bitset x, y;  // graph-side / complement-side max degree <= D
};

// Invariant maintained bottom-up: both sets have side max degree <= D, and
// |x|*|y| >= D*h whenever h >= D. Any set of at most floor(D)+1 vertices
// qualifies on both sides, which is the clamp that makes small subtrees
// contribute their full size.
inline SparseDensePair product_rec(const Graph& g, const Cotree& t, int node, std::size_t from,
                                   const Bitset& leaves, long h, long trivial_cap) {
  const auto& nd = t.nodes[node];
  SparseDensePair r;
  if (nd.type == NodeType::leaf) {
    r.x = nd.leaves;
    r.y = nd.leaves;
    return r;
  }
  const auto& kids = nd.children;
  if (from == kids.size() - 1) {
    const auto& child = t.nodes[kids[from]];
    return product_rec(g, t, kids[from], 0, child.leaves,
                       static_cast<long>(child.leaves.count()), trivial_cap);
  }
  const Bitset& l1 = t.nodes[kids[from]].leaves;
  long h1 = static_cast<long>(l1.count());
  Bitset l2 = leaves - l1;
  long h2 = h - h1;
  SparseDensePair a = product_rec(g, t, kids[from], 0, l1, h1, trivial_cap);
  SparseDensePair b = product_rec(g, t, node, from + 1, l2, h2, trivial_cap);
  if (nd.type == NodeType::unite) {
    r.x = a.x | b.x;
    r.y = a.y.count() >= b.y.count() ? a.y : b.y;
  } else {
    r.y = a.y | b.y;
    r.x = a.x.count() >= b.x.count() ? a.x : b.x;
  }
  std::size_t cap = static_cast<std::size_t>(std::min(h, trivial_cap));
  if (r.x.count() < cap) r.x = leaves.lowest(cap);
  if (r.y.count() < cap) r.y = leaves.lowest(cap);
  return r;
}

}  // namespace detail

// X with G[X] max degree <= eps*h, Y with complement max degree <= eps*h,
// and |X|*|Y| >= eps*h^2.
inline std::pair<RestrictedCertificate, RestrictedCertificate> product_extract(
    const Graph& g, const Cotree& t, const Rat& eps) {
  if (eps <= 0 || eps > 1) throw input_error("product_extract: eps outside (0,1]");
  long h = static_cast<long>(t.span_size());
  Rat bound = eps * Rat(h);
  long trivial_cap = rat_floor_l(bound) + 1;
  detail::SparseDensePair p =
      detail::product_rec(g, t, t.root, 0, t.span(), h, trivial_cap);
  long dx = side_max_degree(g, p.x, Side::graph);
  long dy = side_max_degree(g, p.y, Side::complement);
  if (Rat(dx) > bound || Rat(dy) > bound ||
      Rat(static_cast<long>(p.x.count())) * Rat(static_cast<long>(p.y.count())) <
          eps * Rat(h) * Rat(h))
    throw std::logic_error("product_extract: certificate failed self-check");
  return {RestrictedCertificate{std::move(p.x), Side::graph, Rat(dx), std::nullopt},
          RestrictedCertificate{std::move(p.y), Side::complement, Rat(dy), std::nullopt}};
}

// Extraction in the exact regime eps in [1/2,1): a set X with
// |X| > h/(2-eps) (strict) and side max degree <= eps*h/(2-eps).
// Peels minimum components / co-components; either an oversized piece
// yields the two-block escape, or the anticomplete and complete families
// around the pivot give two candidates of combined size |G|+|Y|+|Z|.
inline RestrictedCertificate top_range_extract(const Graph& g, const Cotree& t,
                                               const Rat& eps) {
  if (eps < Rat(1, 2) || eps >= 1) throw input_error("top_range_extract: eps outside [1/2,1)");
  const Bitset& span = t.span();
  long n = static_cast<long>(t.span_size());
  if (n == 0) throw input_error("top_range_extract: empty graph");
  Rat delta = Rat(1) / (Rat(2) - eps);
  Rat d = eps * delta;
  Rat dn = d * Rat(n);

  auto finish = [&](const Bitset& set, Side side) {
    long deg = side_max_degree(g, set, side);
    if (Rat(static_cast<long>(set.count())) <= delta * Rat(n) || Rat(deg) > dn)
      throw std::logic_error("top_range_extract: certificate failed self-check");
    return RestrictedCertificate{set, side, Rat(deg), std::nullopt};
  };

  if (n == 1) return finish(span, Side::graph);

  struct Piece {
    Bitset set;
    bool complete;  // to the remainder after it was peeled
  };
  std::vector<Piece> pieces;
  Bitset rest = span;
  Rat half_cap = delta * Rat(n) / Rat(2);
  while (true) {
    long rn = static_cast<long>(rest.count());
    if (rn == 1) {
      pieces.push_back({rest, false});
      break;
    }
    auto comps = components(g, rest, Side::graph);
    bool complete = false;
    if (comps.size() == 1) {
      comps = components(g, rest, Side::complement);
      complete = true;
      if (comps.size() == 1)
        throw input_error("top_range_extract: input is not a cograph");
    }
    std::stable_sort(comps.begin(), comps.end(), [](const Bitset& a, const Bitset& b) {
      return a.count() < b.count();
    });
    // peel all but the largest; recompute sides once only one remains
    for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
      Bitset piece = comps[i];
      rest -= piece;
      // escape: an oversized piece and its (at least as large) remainder
      // give two mutually pure blocks of floor(delta*n/2)+1 vertices each
      if (Rat(static_cast<long>(piece.count())) > half_cap) {
        std::size_t take = static_cast<std::size_t>(rat_floor_l(half_cap) + 1);
        Bitset a = piece.lowest(take);
        Bitset b = rest.lowest(take);
        return finish(a | b, complete ? Side::complement : Side::graph);
      }
      pieces.push_back({piece, complete});
    }
  }

  if (dn >= Rat(n - 1)) return finish(span, Side::graph);

  std::size_t k = pieces.size();
  // minimal h with |pieces[h..]| <= d*n + 1
  std::vector<long> suffix(k + 1, 0);
  for (std::size_t i = k; i-- > 0;)
    suffix[i] = suffix[i + 1] + static_cast<long>(pieces[i].set.count());
  std::size_t hidx = k;  // 1-based position of the pivot piece in the proof
  for (std::size_t i = 0; i < k; ++i) {
    if (Rat(suffix[i + 1]) <= dn + 1) {
      hidx = i + 1;
      break;
    }
  }
  Bitset tail(span.size());
  for (std::size_t i = hidx; i < k; ++i) tail |= pieces[i].set;

  const Piece& pivot = pieces[hidx - 1];
  bool flip = pivot.complete;  // work as if the pivot were anticomplete to the tail
  long want = rat_floor_l(dn + 1);
  Bitset z = pivot.set.lowest(static_cast<std::size_t>(want - suffix[hidx]));
  Bitset a = tail;  // flipped-anticomplete family plus the tail
  Bitset b = tail | z;
  for (std::size_t i = 0; i < hidx; ++i) {
    bool anti_flipped = pieces[i].complete == flip;
    if (anti_flipped)
      a |= pieces[i].set;
    else
      b |= pieces[i].set;
  }
  Side a_side = flip ? Side::complement : Side::graph;
  if (b.count() > a.count()) return finish(b, other(a_side));
  return finish(a, a_side);
}

struct DeltaBounds {
  Rat eps, lower, upper;
  std::optional<Rat> exact;
};

// Best size ratio delta for which every cograph has a set of size
// > delta*h with side max degree <= eps*delta*h: exact value 1/(2-eps)
// for eps >= 1/2, sandwich bounds below that.
inline DeltaBounds delta_bounds(const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw input_error("delta_bounds: eps outside (0,1)");
  DeltaBounds b;
  b.eps = eps;
  if (eps >= Rat(1, 2)) {
    b.exact = Rat(1) / (Rat(2) - eps);
    b.lower = *b.exact;
    b.upper = *b.exact;
    return b;
  }
  b.lower = eps;
  b.upper = Rat(1) / Rat(rat_ceil(Rat(1) / eps) - 1);
  return b;
}

}  // namespace cgr
