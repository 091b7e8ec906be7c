// Partition machinery: the thin/thick 2-partition, the four-way split
// with pure-pair witnesses, greedy restricted covers, beribbonings and
// their validator, pruning, ribbon purification, prettification (ribbon
// disjointification via bipartite edge colouring), and the final
// partition of a cograph into at most 480*eps^-4 eps-restricted parts.
//
// Every stage returns structures whose claimed inequalities are either
// re-checked here (throwing std::logic_error on failure) or checked by
// validate_beribboning in the callers and tests. All comparisons are
// exact rationals.
#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cgr/cotree.hpp"
#include "cgr/extract.hpp"
#include "cgr/graph.hpp"

namespace cgr {

struct PurePair {
  Bitset left, right;
  bool complete = false;
};

struct RibbonBlock {
  Bitset verts;
  bool complete = false;  // towards the attachment and all earlier blocks
};

struct Ribbon {
  std::vector<RibbonBlock> blocks;
};

enum class RibbonPolarity { complete, anticomplete, mixed };

inline RibbonPolarity ribbon_polarity(const Ribbon& r) {
  bool has_c = false, has_a = false;
  for (const auto& b : r.blocks) (b.complete ? has_c : has_a) = true;
  if (has_c && has_a) return RibbonPolarity::mixed;
  return has_a ? RibbonPolarity::anticomplete : RibbonPolarity::complete;
}

struct Part {
  Bitset verts;
  std::optional<RestrictedCertificate> cert;  // present <=> counted restricted
  Ribbon ribbon;
};

struct Beribboning {
  std::vector<Part> parts;
  Rat eps;
  int k = 0;

  int non_restricted() const {
    int m = 0;
    for (const auto& p : parts)
      if (!p.cert) ++m;
    return m;
  }

  // min over cert-less parts of min block |B|/|X|; 1 when no ribbon counts
  Rat breadth() const {
    Rat best(1);
    bool seen = false;
    for (const auto& p : parts) {
      if (p.cert) continue;
      Rat x(static_cast<long>(p.verts.count()));
      for (const auto& b : p.ribbon.blocks) {
        Rat r = Rat(static_cast<long>(b.verts.count())) / x;
        if (!seen || r < best) best = r;
        seen = true;
      }
    }
    return best;
  }
};

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> violations;
  int m = 0;
  int n_parts = 0;
  Rat breadth;

  void fail(std::string why) {
    pass = false;
    violations.push_back(std::move(why));
  }
};

// Checks every beribboning invariant from scratch: partition of the span,
// certificates re-validated against the adjacency, ribbon structure and
// polarities, purity between cert-less parts.
inline ValidationReport validate_beribboning(const Beribboning& b, const Graph& g,
                                             const Bitset& span) {
  ValidationReport rep;
  rep.n_parts = static_cast<int>(b.parts.size());
  rep.m = b.non_restricted();
  rep.breadth = b.breadth();
  Bitset seen(g.n);
  std::size_t total = 0;
  for (std::size_t i = 0; i < b.parts.size(); ++i) {
    const Part& p = b.parts[i];
    std::string tag = "part " + std::to_string(i);
    if (!p.verts.any()) rep.fail(tag + ": empty");
    if (p.verts.intersects(seen)) rep.fail(tag + ": overlaps another part");
    seen |= p.verts;
    total += p.verts.count();
    if (p.cert) {
      if (!(p.cert->set == p.verts)) rep.fail(tag + ": certificate covers a different set");
      long deg = side_max_degree(g, p.verts, p.cert->side);
      if (Rat(deg) > p.cert->degree_bound)
        rep.fail(tag + ": side degree " + std::to_string(deg) + " exceeds recorded bound");
      if (Rat(deg) > b.eps * Rat(static_cast<long>(p.verts.count())))
        rep.fail(tag + ": not eps-restricted on the certified side");
    } else {
      if (static_cast<int>(p.ribbon.blocks.size()) < b.k)
        rep.fail(tag + ": ribbon shorter than k=" + std::to_string(b.k));
      Bitset before = p.verts;
      for (std::size_t j = 0; j < p.ribbon.blocks.size(); ++j) {
        const auto& blk = p.ribbon.blocks[j];
        std::string btag = tag + " block " + std::to_string(j);
        if (!blk.verts.any()) rep.fail(btag + ": empty");
        if (blk.verts.intersects(before)) rep.fail(btag + ": not disjoint from predecessors");
        bool ok = blk.complete ? is_complete_between(g, blk.verts, before)
                               : is_anticomplete_between(g, blk.verts, before);
        if (!ok) rep.fail(btag + ": polarity violated");
        before |= blk.verts;
      }
    }
  }
  if (total != span.count() || !(seen == span)) rep.fail("parts do not partition the span");
  for (std::size_t i = 0; i < b.parts.size(); ++i) {
    if (b.parts[i].cert) continue;
    for (std::size_t j = i + 1; j < b.parts.size(); ++j) {
      if (b.parts[j].cert) continue;
      if (!is_complete_between(g, b.parts[i].verts, b.parts[j].verts) &&
          !is_anticomplete_between(g, b.parts[i].verts, b.parts[j].verts))
        rep.fail("parts " + std::to_string(i) + "," + std::to_string(j) + ": not a pure pair");
    }
  }
  return rep;
}

inline ValidationReport validate_beribboning(const Beribboning& b, const Graph& g) {
  return validate_beribboning(b, g, g.vertices());
}

namespace detail {

// The uniquely disconnected side of G[x] for |x| >= 2 in a cograph.
struct SideComponents {
  bool complete;  // components pairwise complete (complement side) or anticomplete
  std::vector<Bitset> comps;
};

inline SideComponents disconnected_side(const Graph& g, const Bitset& x) {
  SideComponents sc;
  sc.comps = components(g, x, Side::graph);
  sc.complete = false;
  if (sc.comps.size() == 1) {
    sc.comps = components(g, x, Side::complement);
    sc.complete = true;
    if (sc.comps.size() == 1)
      throw input_error("expected a cograph: both sides connected on a subset");
  }
  std::stable_sort(sc.comps.begin(), sc.comps.end(),
                   [](const Bitset& a, const Bitset& b) { return a.count() < b.count(); });
  return sc;
}

}  // namespace detail

// Partition of the span into a thin set (graph-side components of its
// induced subgraph have at most (|thin|+1)/2 vertices) and a thick set
// (same bound on complement-side components).
inline std::pair<Bitset, Bitset> thin_thick_partition(const Graph& g, const Cotree& t) {
  const Bitset& span = t.span();
  long n = static_cast<long>(span.count());
  if (n == 0) throw input_error("thin_thick_partition: empty graph");
  if (n == 1) return {span, Bitset(span.size())};

  // shrink C towards a minimal pivot set: move whole components out while
  // more than half the span survives; when only the largest component is
  // left the loop re-splits it on the other side
  Bitset a_side(span.size()), b_side(span.size());
  Bitset c = span;
  bool terminal = false;
  while (!terminal) {
    auto sc = detail::disconnected_side(g, c);
    for (std::size_t i = 0; i + 1 < sc.comps.size(); ++i) {
      long rest = static_cast<long>(c.count() - sc.comps[i].count());
      if (2 * rest > n) {
        c -= sc.comps[i];
        (sc.complete ? b_side : a_side) |= sc.comps[i];
      } else {
        terminal = true;  // the smallest survivor is no longer removable
        break;
      }
    }
  }

  auto sc = detail::disconnected_side(g, c);
  // flipped world: P complete to Q, movers af anticomplete, bf complete
  bool flip = !sc.complete;
  Bitset af = flip ? b_side : a_side;
  Bitset bf = flip ? a_side : b_side;
  Bitset p = sc.comps[0];
  Bitset q = c - p;
  if (q.count() < p.count()) std::swap(p, q);
  long asz = static_cast<long>(af.count());
  long bsz = static_cast<long>(bf.count());
  long psz = static_cast<long>(p.count());
  long qsz = static_cast<long>(q.count());
  long m = std::max(0L, qsz - psz - bsz);
  long drop_p = (asz - m + 1) / 2;  // ceil((a-m)/2), a >= m always
  long drop_q = (asz + m) / 2;      // floor
  Bitset p_keep = p.lowest(static_cast<std::size_t>(drop_p));
  Bitset q_keep = q.lowest(static_cast<std::size_t>(drop_q));
  Bitset thin_f = af | p_keep | q_keep;
  Bitset thick_f = bf | (p - p_keep) | (q - q_keep);
  if (flip) return {thick_f, thin_f};
  return {thin_f, thick_f};
}

struct SplitResult {
  std::array<Bitset, 4> parts;                       // A0..A3
  std::optional<RestrictedCertificate> a0_cert;      // present iff A0 nonempty
  std::array<std::optional<PurePair>, 4> witness;    // [1..3]: (A_i, B) pure with big B
};

// Four-way split of the span: A0 eps-restricted (or empty), A1..A3
// pairwise pure, and every nonempty A_i (i>=1) pure to a witness of at
// least (eps^2/4)*h vertices.
inline SplitResult split(const Graph& g, const Cotree& t, const Rat& eps) {
  if (eps <= 0 || eps > 1) throw input_error("split: eps outside (0,1]");
  const Bitset& span = t.span();
  long n = static_cast<long>(span.count());
  if (n < 2) throw input_error("split: need at least 2 vertices");
  Rat small_cap = eps * eps * Rat(n) / Rat(4);

  // peel small sets that are complete or anticomplete to everything later,
  // while keeping more than half the span; processing one side's
  // components smallest-first matches re-running the search after every
  // peel, since removing a whole component leaves the others intact
  std::vector<std::pair<Bitset, bool>> peeled;  // (set, complete to the rest)
  Bitset a = span;
  long total = 0;
  bool maximal = false;
  while (!maximal && a.count() >= 2) {
    auto sc = detail::disconnected_side(g, a);
    for (std::size_t i = 0; i + 1 < sc.comps.size(); ++i) {
      const Bitset& k = sc.comps[i];
      long ksz = static_cast<long>(k.count());
      if (Rat(ksz) > small_cap || 2 * (total + ksz) >= n) {
        maximal = true;
        break;
      }
      peeled.emplace_back(k, sc.complete);
      a -= k;
      total += ksz;
    }
  }
  Bitset pset(span.size()), qset(span.size());
  for (auto& [s, complete] : peeled) (complete ? pset : qset) |= s;

  auto sc = detail::disconnected_side(g, a);
  // b = union of the largest components reaching at least half of A
  Bitset b(span.size());
  for (std::size_t i = sc.comps.size(); i-- > 0;) {
    b |= sc.comps[i];
    if (2 * b.count() >= a.count()) break;
  }
  Bitset cpart = a - b;
  bool bc_complete = sc.complete;

  SplitResult r;
  for (auto& p : r.parts) p = Bitset(span.size());

  long bsz = static_cast<long>(b.count());
  long csz = static_cast<long>(cpart.count());
  bool c_small = Rat(csz) <= small_cap;

  if (c_small && 2 * bsz <= n) {
    // flipped so that B and C are complete
    bool flip = !bc_complete;
    Bitset pf = flip ? qset : pset;
    Bitset qf = flip ? pset : qset;
    Side restricted_side = flip ? Side::graph : Side::complement;
    Bitset pprime = pf | cpart;
    if (Rat(4) * Rat(static_cast<long>(pprime.count())) >= eps * Rat(n)) {
      r.parts[0] = pprime;
      r.a0_cert = certify_restricted(g, pprime, restricted_side, eps);
      r.parts[1] = b;
      r.parts[2] = qf;
      r.witness[1] = PurePair{b, pprime, !flip};
      if (qf.any()) r.witness[2] = PurePair{qf, b, flip};
    } else if (Rat(4) * Rat(static_cast<long>(qf.count())) >= eps * Rat(n)) {
      r.parts[0] = qf;
      r.a0_cert = certify_restricted(g, qf, other(restricted_side), eps);
      r.parts[1] = b;
      r.parts[2] = pprime;
      r.witness[1] = PurePair{b, qf, flip};
      if (pprime.any()) r.witness[2] = PurePair{pprime, b, !flip};
    } else {
      throw std::logic_error("split: both P' and Q fell below eps*h/4");
    }
  } else {
    if (!(Rat(csz) > small_cap))
      throw std::logic_error("split: maximality left a small unpeeled remainder");
    // C is big: extract an eps-restricted X inside B and absorb it into
    // the matching peel family
    Cotree tb = cotree_restrict(t, b);
    RestrictedCertificate cx = restricted_extract(g, tb, eps);
    Bitset x = cx.set.lowest(static_cast<std::size_t>(rat_ceil_l(eps * Rat(bsz))));
    bool flip2 = cx.side == Side::complement;
    Bitset p2 = flip2 ? qset : pset;
    Bitset q2 = flip2 ? pset : qset;
    Bitset qprime = q2 | x;
    Side q_side = flip2 ? Side::complement : Side::graph;
    r.parts[0] = qprime;
    r.a0_cert = certify_restricted(g, qprime, q_side, eps);
    r.parts[1] = b - x;
    r.parts[2] = cpart;
    r.parts[3] = p2;
    if (r.parts[1].any()) r.witness[1] = PurePair{r.parts[1], cpart, bc_complete};
    r.witness[2] = PurePair{cpart, x, bc_complete};
    if (p2.any()) r.witness[3] = PurePair{p2, cpart, !flip2};
  }

  // final self-check of the three bullets
  Rat need = eps * eps * Rat(n) / Rat(4);
  for (int i = 1; i <= 3; ++i) {
    if (!r.parts[i].any()) continue;
    if (!r.witness[i]) throw std::logic_error("split: nonempty part without witness");
    const PurePair& w = *r.witness[i];
    if (Rat(static_cast<long>(w.right.count())) < need)
      throw std::logic_error("split: witness below (eps^2/4)*h");
    if (w.right.intersects(r.parts[i]))
      throw std::logic_error("split: witness intersects its part");
    bool ok = w.complete ? is_complete_between(g, r.parts[i], w.right)
                         : is_anticomplete_between(g, r.parts[i], w.right);
    if (!ok) throw std::logic_error("split: witness pair not pure");
  }
  return r;
}

struct GreedyCover {
  std::vector<RestrictedCertificate> certs;
  Bitset remainder;
};

// Up to t pairwise-disjoint eps-restricted subsets of X, each certified
// relative to its own size, with remainder |Y| <= (1-eps)^t * |X|.
inline GreedyCover greedy_restricted_cover(const Graph& g, const Cotree& t, const Bitset& x,
                                           const Rat& eps, long rounds) {
  if (eps <= 0 || eps > 1) throw input_error("greedy_restricted_cover: eps outside (0,1]");
  if (rounds < 0) throw input_error("greedy_restricted_cover: negative round count");
  GreedyCover out;
  out.remainder = x;
  for (long i = 0; i < rounds && out.remainder.any(); ++i) {
    Cotree tr = cotree_restrict(t, out.remainder);
    RestrictedCertificate cert = restricted_extract(g, tr, eps);
    out.remainder -= cert.set;
    out.certs.push_back(std::move(cert));
  }
  return out;
}

// Merges families of pairwise complete or pairwise anticomplete cert-less
// parts until at most eps^-2 remain; slice size equalisation makes the
// merged set restricted. Part count never grows, breadth never shrinks.
inline Beribboning prune(Beribboning b, const Cotree& t, const Graph& g, const Bitset& span) {
  {
    ValidationReport rep = validate_beribboning(b, g, span);
    if (!rep.pass) throw input_error("prune: invalid beribboning: " + rep.violations.front());
  }
  const Rat& eps = b.eps;
  Rat m_cap = Rat(1) / (eps * eps);
  long tsize = rat_ceil_l(Rat(1) / eps);
  while (Rat(b.non_restricted()) > m_cap) {
    std::vector<std::size_t> open;  // cert-less part indices by representative
    Bitset reps(g.n);
    for (std::size_t i = 0; i < b.parts.size(); ++i)
      if (!b.parts[i].cert) {
        open.push_back(i);
        reps.set(b.parts[i].verts.next());
      }
    Cotree tq = cotree_restrict(t, reps);
    CliqueStable cs = max_clique_and_stable(tq);
    bool complete = cs.clique.count() >= static_cast<std::size_t>(tsize);
    const Bitset& chosen = complete ? cs.clique : cs.stable;
    if (chosen.count() < static_cast<std::size_t>(tsize))
      throw std::logic_error("prune: no clique or stable family of size ceil(1/eps)");
    std::vector<std::size_t> family;
    for (std::size_t i : open)
      if (chosen.test(b.parts[i].verts.next())) family.push_back(i);
    std::stable_sort(family.begin(), family.end(), [&](std::size_t x, std::size_t y) {
      auto cx = b.parts[x].verts.count(), cy = b.parts[y].verts.count();
      if (cx != cy) return cx < cy;
      return b.parts[x].verts.next() < b.parts[y].verts.next();
    });
    family.resize(tsize);
    std::size_t slice = b.parts[family[0]].verts.count();
    Bitset merged = b.parts[family[0]].verts;
    for (std::size_t fi = 1; fi < family.size(); ++fi) {
      Bitset y = b.parts[family[fi]].verts.lowest(slice);
      merged |= y;
      b.parts[family[fi]].verts -= y;
    }
    Part merged_part;
    merged_part.verts = merged;
    merged_part.cert =
        certify_restricted(g, merged, complete ? Side::complement : Side::graph, eps);
    std::vector<Part> next;
    next.reserve(b.parts.size());
    for (std::size_t i = 0; i < b.parts.size(); ++i) {
      if (i == family[0] || !b.parts[i].verts.any()) continue;
      next.push_back(std::move(b.parts[i]));
    }
    next.push_back(std::move(merged_part));
    b.parts = std::move(next);
  }
  return b;
}

// (eps,k)-beribboning with m <= eps^-2, n <= 1+3k*eps^-2, breadth >=
// eps^2/4: k rounds of splitting every cert-less part, prefixing the
// split witness onto the inherited ribbon, then pruning.
inline Beribboning build_beribboning(const Graph& g, const Cotree& t, const Rat& eps, int k) {
  if (eps <= 0 || eps > 1) throw input_error("build_beribboning: eps outside (0,1]");
  if (k < 0) throw input_error("build_beribboning: negative k");
  const Bitset& span = t.span();
  Beribboning b;
  b.eps = eps;
  b.k = 0;
  Part whole;
  whole.verts = span;
  b.parts.push_back(std::move(whole));
  for (int level = 1; level <= k; ++level) {
    std::vector<Part> next;
    next.reserve(b.parts.size() * 2);
    for (Part& p : b.parts) {
      if (p.cert) {
        next.push_back(std::move(p));
        continue;
      }
      if (auto cert = check_restricted(g, p.verts, eps)) {
        p.cert = std::move(cert);
        p.ribbon.blocks.clear();
        next.push_back(std::move(p));
        continue;
      }
      Cotree tp = cotree_restrict(t, p.verts);
      SplitResult sr = split(g, tp, eps);
      if (sr.parts[0].any()) {
        Part a0;
        a0.verts = sr.parts[0];
        a0.cert = sr.a0_cert;
        next.push_back(std::move(a0));
      }
      for (int i = 1; i <= 3; ++i) {
        if (!sr.parts[i].any()) continue;
        Part ai;
        ai.verts = sr.parts[i];
        ai.ribbon.blocks.reserve(p.ribbon.blocks.size() + 1);
        ai.ribbon.blocks.push_back(RibbonBlock{sr.witness[i]->right, sr.witness[i]->complete});
        for (const auto& blk : p.ribbon.blocks) ai.ribbon.blocks.push_back(blk);
        next.push_back(std::move(ai));
      }
    }
    b.parts = std::move(next);
    b.k = level;
    b = prune(std::move(b), t, g, span);
  }
  return b;
}

// Pure (eps, ceil(1/eps))-beribboning with dimensions <= (eps^-2,
// 10*eps^-3): build at k = 2*ceil(1/eps), then keep the longer
// single-polarity subsequence of every ribbon.
inline Beribboning pure_beribboning(const Graph& g, const Cotree& t, const Rat& eps) {
  if (eps <= 0 || eps > Rat(1, 2)) throw input_error("pure_beribboning: eps outside (0,1/2]");
  long kk = rat_ceil_l(Rat(1) / eps);
  Beribboning b = build_beribboning(g, t, eps, static_cast<int>(2 * kk));
  for (Part& p : b.parts) {
    if (p.cert) continue;
    std::vector<RibbonBlock> comp, anti;
    for (auto& blk : p.ribbon.blocks) (blk.complete ? comp : anti).push_back(blk);
    std::vector<RibbonBlock>& keep = comp.size() >= anti.size() ? comp : anti;
    if (static_cast<long>(keep.size()) < kk)
      throw std::logic_error("pure_beribboning: no polarity class of length ceil(1/eps)");
    p.ribbon.blocks = std::move(keep);
  }
  b.k = static_cast<int>(kk);
  return b;
}

namespace detail {

// Proper edge colouring of a bipartite graph with exactly max-degree
// colours, by alternating-path recolouring. Every vertex of full degree
// meets every colour, so any single class covers all of them.
struct BipartiteColoring {
  int colors = 0;
  std::vector<int> color;  // per edge
};

inline BipartiteColoring color_bipartite(int n_left, int n_right,
                                         const std::vector<std::pair<int, int>>& edges) {
  int n = n_left + n_right;
  std::vector<int> deg(n, 0);
  for (auto& [l, r] : edges) {
    ++deg[l];
    ++deg[n_left + r];
  }
  int delta = 0;
  for (int d : deg) delta = std::max(delta, d);
  BipartiteColoring out;
  out.colors = delta;
  out.color.assign(edges.size(), -1);
  if (delta == 0) return out;
  std::vector<std::vector<int>> slot(n, std::vector<int>(delta, -1));
  auto free_color = [&](int v) {
    for (int c = 0; c < delta; ++c)
      if (slot[v][c] < 0) return c;
    throw std::logic_error("edge colouring: no free colour at an unsaturated vertex");
  };
  for (std::size_t e = 0; e < edges.size(); ++e) {
    int u = edges[e].first, v = n_left + edges[e].second;
    int alpha = free_color(u), beta = free_color(v);
    if (slot[v][alpha] < 0) {
      out.color[e] = alpha;
      slot[u][alpha] = slot[v][alpha] = static_cast<int>(e);
      continue;
    }
    // flip the alpha/beta path starting at v; it cannot reach u
    int x = v, c = alpha;
    std::vector<int> path;
    while (slot[x][c] >= 0) {
      int pe = slot[x][c];
      path.push_back(pe);
      int a = edges[pe].first, bb = n_left + edges[pe].second;
      x = a == x ? bb : a;
      c = c == alpha ? beta : alpha;
    }
    for (int pe : path) {
      int a = edges[pe].first, bb = n_left + edges[pe].second;
      slot[a][out.color[pe]] = -1;
      slot[bb][out.color[pe]] = -1;
    }
    for (int pe : path) {
      out.color[pe] = out.color[pe] == alpha ? beta : alpha;
      int a = edges[pe].first, bb = n_left + edges[pe].second;
      slot[a][out.color[pe]] = pe;
      slot[bb][out.color[pe]] = pe;
    }
    out.color[e] = alpha;
    slot[u][alpha] = slot[v][alpha] = static_cast<int>(e);
  }
  return out;
}

}  // namespace detail

inline constexpr int kSmallPartExponent = 16;  // q: parts below eps^-q dissolve

// Prettified beribboning: cert-less parts below eps^-16 dissolve into
// restricted parts via greedy covers; surviving ribbons are trimmed to
// length k, made pairwise vertex-disjoint through an edge-coloured
// chunk/vertex matching, halved per part for the overlap bound, and cut
// to equal block size ceil((eps^4/32)|X|). Dimensions <= (eps^-2,
// 21*eps^-4), breadth >= eps^4/32.
inline Beribboning prettify(Beribboning b, const Cotree& t, const Graph& g,
                            const Bitset& span) {
  const Rat& eps = b.eps;
  {
    ValidationReport rep = validate_beribboning(b, g, span);
    if (!rep.pass) throw input_error("prettify: invalid beribboning: " + rep.violations.front());
    if (rep.breadth < eps * eps / Rat(4)) throw input_error("prettify: breadth below eps^2/4");
    if (Rat(rep.m) > Rat(1) / (eps * eps) || Rat(rep.n_parts) > Rat(10) / rat_pow(eps, 3))
      throw input_error("prettify: dimensions exceed (eps^-2, 10*eps^-3)");
    for (const Part& p : b.parts)
      if (!p.cert && ribbon_polarity(p.ribbon) == RibbonPolarity::mixed)
        throw input_error("prettify: ribbon not pure");
  }
  Rat small_threshold = Rat(1) / rat_pow(eps, kSmallPartExponent);
  long t_cap = rat_ceil_l(Rat(16) / (eps * eps));

  std::vector<Part> next;
  next.reserve(b.parts.size());
  for (Part& p : b.parts) {
    if (p.cert || Rat(static_cast<long>(p.verts.count())) >= small_threshold) {
      next.push_back(std::move(p));
      continue;
    }
    // dissolve: enough rounds to drive (1-eps)^t |X| below one
    long rounds = 0;
    Rat w(static_cast<long>(p.verts.count()));
    while (w >= 1 && rounds <= t_cap) {
      w *= Rat(1) - eps;
      ++rounds;
    }
    if (rounds > t_cap)
      throw std::logic_error("prettify: dissolution rounds exceeded 16*eps^-2");
    Cotree tp = cotree_restrict(t, p.verts);
    GreedyCover cover = greedy_restricted_cover(g, tp, p.verts, eps, rounds);
    if (cover.remainder.any())
      throw std::logic_error("prettify: dissolution left a remainder");
    for (auto& cert : cover.certs) {
      Part np;
      np.verts = cert.set;
      np.cert = std::move(cert);
      next.push_back(std::move(np));
    }
  }
  b.parts = std::move(next);

  // trim ribbons to exactly k blocks, then disjointify
  std::vector<std::size_t> owners;
  for (std::size_t i = 0; i < b.parts.size(); ++i) {
    Part& p = b.parts[i];
    if (p.cert) continue;
    if (static_cast<int>(p.ribbon.blocks.size()) > b.k) p.ribbon.blocks.resize(b.k);
    owners.push_back(i);
  }
  long m = static_cast<long>(owners.size());
  if (m == 0) return b;

  // chunk every block into ceil(|B|/m) pieces of size at most m
  struct ChunkBlock {
    std::size_t owner, index;
    std::vector<Bitset> chunks;
    long full = 0;
  };
  std::vector<ChunkBlock> blocks;
  std::vector<std::pair<int, int>> edges;  // (chunk id, vertex)
  std::vector<std::pair<std::size_t, std::size_t>> chunk_home;  // block idx, chunk idx
  for (std::size_t oi = 0; oi < owners.size(); ++oi) {
    Part& p = b.parts[owners[oi]];
    for (std::size_t j = 0; j < p.ribbon.blocks.size(); ++j) {
      ChunkBlock cb;
      cb.owner = owners[oi];
      cb.index = j;
      std::vector<int> vs = p.ribbon.blocks[j].verts.to_vector();
      for (std::size_t at = 0; at < vs.size(); at += m) {
        Bitset chunk(g.n);
        std::size_t hi = std::min(vs.size(), at + m);
        for (std::size_t x = at; x < hi; ++x) chunk.set(vs[x]);
        if (hi - at == static_cast<std::size_t>(m)) ++cb.full;
        int chunk_id = static_cast<int>(chunk_home.size());
        chunk_home.emplace_back(blocks.size(), cb.chunks.size());
        for (std::size_t x = at; x < hi; ++x) edges.emplace_back(chunk_id, vs[x]);
        cb.chunks.push_back(std::move(chunk));
      }
      blocks.push_back(std::move(cb));
    }
  }
  detail::BipartiteColoring coloring =
      detail::color_bipartite(static_cast<int>(chunk_home.size()), g.n, edges);

  // pick the class with the best worst-case excess over the guaranteed
  // floor(|B|/m) coverage, ties by lowest colour index
  long best_score = -1;
  int best_color = 0;
  for (int c = 0; c < std::max(coloring.colors, 1); ++c) {
    std::vector<long> covered(blocks.size(), 0);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (coloring.color[e] == c) ++covered[chunk_home[edges[e].first].first];
    long score = -1;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      long excess = covered[bi] - blocks[bi].full;
      if (score < 0 || excess < score) score = excess;
    }
    if (score > best_score) {
      best_score = score;
      best_color = c;
    }
  }

  std::vector<Bitset> picked(blocks.size(), Bitset(g.n));
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (coloring.color[e] == best_color)
      picked[chunk_home[edges[e].first].first].set(edges[e].second);
  for (std::size_t bi = 0; bi < blocks.size(); ++bi)
    if (static_cast<long>(picked[bi].count()) < blocks[bi].full)
      throw std::logic_error("prettify: colour class missed a full chunk");

  // halve within every part for the overlap condition, then equalise
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    Bitset halved(g.n);
    for (const Part& p : b.parts) {
      Bitset inside = picked[bi] & p.verts;
      halved |= inside.lowest(inside.count() / 2);
    }
    picked[bi] = std::move(halved);
  }
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const ChunkBlock& cb = blocks[bi];
    Part& p = b.parts[cb.owner];
    Rat target_r = rat_pow(eps, 4) / Rat(32) * Rat(static_cast<long>(p.verts.count()));
    std::size_t target = static_cast<std::size_t>(rat_ceil_l(target_r));
    if (picked[bi].count() < target)
      throw std::logic_error("prettify: block fell below ceil((eps^4/32)|X|)");
    p.ribbon.blocks[cb.index].verts = picked[bi].lowest(target);
  }
  return b;
}

// Partition of the span into at most 480*eps^-4 parts, every one
// eps-restricted with a certificate. Pipeline at eps/2: pure prettified
// beribboning, greedy covers on each attachment minus the ribbon
// vertices, remainder folded into its ribbon, and the restricted parts
// shrunk by the ribbon vertices they lost.
inline std::vector<RestrictedCertificate> restricted_partition(const Graph& g, const Cotree& t,
                                                               const Rat& eps) {
  if (eps <= 0 || eps > 1) throw input_error("restricted_partition: eps outside (0,1]");
  const Bitset& span = t.span();
  long n = static_cast<long>(span.count());
  if (n == 0) throw input_error("restricted_partition: empty graph");
  Rat eps2 = eps / 2;
  Beribboning b = prettify(pure_beribboning(g, t, eps2), t, g, span);

  Bitset ribbon_union(g.n);
  for (const Part& p : b.parts)
    if (!p.cert)
      for (const auto& blk : p.ribbon.blocks) ribbon_union |= blk.verts;

  long rounds = rat_ceil_l(Rat(8) / (eps2 * eps2));
  std::vector<RestrictedCertificate> out;
  auto push = [&](const Bitset& set, Side side) {
    out.push_back(certify_restricted(g, set, side, eps));
  };
  for (const Part& p : b.parts) {
    if (p.cert) {
      Bitset s = p.verts - ribbon_union;
      if (s.any()) push(s, p.cert->side);
      continue;
    }
    Bitset core = p.verts - ribbon_union;
    Cotree tc = cotree_restrict(t, core);
    GreedyCover cover = greedy_restricted_cover(g, tc, core, eps2, rounds);
    if (cover.remainder.count() > p.ribbon.blocks.front().verts.count())
      throw std::logic_error("restricted_partition: cover remainder exceeds a ribbon block");
    for (const auto& c : cover.certs) push(c.set, c.side);
    Bitset tail = cover.remainder;
    bool complete = ribbon_polarity(p.ribbon) == RibbonPolarity::complete;
    for (const auto& blk : p.ribbon.blocks) tail |= blk.verts;
    push(tail, complete ? Side::complement : Side::graph);
  }

  Rat cap = Rat(480) / rat_pow(eps, 4);
  if (Rat(static_cast<long>(out.size())) > cap)
    throw std::logic_error("restricted_partition: part count exceeded 480*eps^-4");
  Bitset seen(g.n);
  std::size_t total = 0;
  for (const auto& c : out) {
    if (c.set.intersects(seen)) throw std::logic_error("restricted_partition: parts overlap");
    seen |= c.set;
    total += c.set.count();
  }
  if (total != span.count())
    throw std::logic_error("restricted_partition: parts do not cover the span");
  return out;
}

}  // namespace cgr
