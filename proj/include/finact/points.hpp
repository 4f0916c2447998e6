// Split points over U(B): a split epimorphism with a chosen section in the
// normal direction, or the dual split monomorphism arrangement for the
// pointed-set context. Points carry their context and validate on
// construction.

#pragma once

#include "finact/closures.hpp"

namespace finact {

struct SplitPoint {
  ContextPtr ctx;
  AlgebraPtr base;    // B in U
  AlgebraPtr base_v;  // U(B) in V
  AlgebraPtr total;   // A in V
  // Normal:   p: total -> base_v (retraction), s: base_v -> total, p o s = id.
  // Opposite: p: base_v -> total (injective),  s: total -> base_v, s o p = id.
  FunctionMap p, s;
};

inline SplitPoint make_split_point(ContextPtr ctx, AlgebraPtr base, AlgebraPtr total,
                                   std::vector<Elem> p_table, std::vector<Elem> s_table) {
  {
    auto rep = variety_membership(*base, ctx->U);
    if (!rep.member) throw error("base is not in " + ctx->U.name);
  }
  {
    auto rep = variety_membership(*total, ctx->V);
    if (!rep.member) throw error("total algebra is not in " + ctx->V.name);
  }
  SplitPoint P;
  P.ctx = ctx;
  P.base = base;
  P.base_v = apply_forgetful(*ctx, base);
  P.total = total;
  if (ctx->direction == Direction::Normal) {
    P.p = FunctionMap{total, P.base_v, std::move(p_table)};
    P.s = FunctionMap{P.base_v, total, std::move(s_table)};
  } else {
    P.p = FunctionMap{P.base_v, total, std::move(p_table)};
    P.s = FunctionMap{total, P.base_v, std::move(s_table)};
  }
  auto hp = is_homomorphism(P.p);
  if (!hp.ok) throw error("p is not a homomorphism");
  auto hs = is_homomorphism(P.s);
  if (!hs.ok) throw error("s is not a homomorphism");
  if (ctx->direction == Direction::Normal) {
    for (Elem b = 0; b < P.base_v->size; ++b)
      if (P.p(P.s(b)) != b) throw error("p o s is not the identity");
  } else {
    if (!P.p.injective()) throw error("p is not injective");
    for (Elem b = 0; b < P.base_v->size; ++b)
      if (P.s(P.p(b)) != b) throw error("s o p is not the identity");
  }
  return P;
}

// Kernel data of a point. Normal direction: the kernel subalgebra with its
// inclusion. Opposite direction: the quotient by the image of p, with its
// projection and the unique splitting.
struct SplitExtension {
  AlgebraPtr kernel;                  // X in V
  FunctionMap k;                      // Normal: X -> A.  Opposite: A -> X.
  std::vector<Elem> embed;            // Normal: new index -> element of A
  std::optional<FunctionMap> splitting;  // Opposite only: X -> A
};

inline SplitExtension kernel_object(const SplitPoint& P) {
  if (P.ctx->direction == Direction::Normal) {
    int kc = P.ctx->V.kernel_const;
    if (kc < 0) throw internal_error("V has no kernel constant");
    Elem e0 = P.base_v->cst(kc);
    std::vector<Elem> subset;
    for (Elem a = 0; a < P.total->size; ++a)
      if (P.p(a) == e0) subset.push_back(a);
    auto sub = induced_subalgebra(P.total, subset);
    SplitExtension ext;
    ext.kernel = sub.algebra;
    ext.embed = sub.embed;
    ext.k = FunctionMap{sub.algebra, P.total, sub.embed};
    return ext;
  }
  // opposite: X = A / p(U(B)), the collapsed class is the base point
  int na = P.total->size;
  std::vector<char> in_img(na, 0);
  for (Elem b = 0; b < P.base_v->size; ++b) in_img[P.p(b)] = 1;
  Elem ptA = P.total->cst(P.total->sig->const_index("pt"));
  if (!in_img[ptA]) throw internal_error("image of p misses the base point");
  std::vector<int> raw(na);
  for (Elem a = 0; a < na; ++a) raw[a] = in_img[a] ? ptA : a;
  auto part = Partition::normalized(std::move(raw));
  int m = part.blocks();
  FiniteAlgebra X;
  X.sig = P.ctx->V.sig;
  X.size = m;
  X.constants = {part.block[ptA]};
  SplitExtension ext;
  ext.kernel = make_algebra(std::move(X));
  ext.k = FunctionMap{P.total, ext.kernel, {}};
  ext.k.map.resize(na);
  for (Elem a = 0; a < na; ++a) ext.k.map[a] = part.block[a];
  FunctionMap delta{ext.kernel, P.total, {}};
  delta.map.assign(m, -1);
  for (Elem a = na - 1; a >= 0; --a) delta.map[part.block[a]] = in_img[a] ? ptA : a;
  ext.splitting = std::move(delta);
  return ext;
}

// Morphism of points over a common base. Normal: h: A1 -> A2 with
// h o s1 = s2 and p2 o h = p1. Opposite: the underlying function runs
// A2 -> A1 with s1 o h = s2 and h o p2 = p1.
struct PointMorphism {
  SplitPoint source, target;
  FunctionMap h;
};

inline PointMorphism make_point_morphism(const SplitPoint& P1, const SplitPoint& P2,
                                         std::vector<Elem> h_table) {
  if (P1.ctx->name != P2.ctx->name) throw error("point morphism across contexts");
  if (!P1.base->same_tables(*P2.base)) throw error("point morphism needs a common base");
  PointMorphism m;
  m.source = P1;
  m.target = P2;
  if (P1.ctx->direction == Direction::Normal) {
    m.h = FunctionMap{P1.total, P2.total, std::move(h_table)};
    if (!is_homomorphism(m.h).ok) throw error("h is not a homomorphism");
    for (Elem b = 0; b < P1.base_v->size; ++b)
      if (m.h(P1.s(b)) != P2.s(b)) throw error("h does not commute with the sections");
    for (Elem a = 0; a < P1.total->size; ++a)
      if (P2.p(m.h(a)) != P1.p(a)) throw error("h does not commute with the retractions");
  } else {
    m.h = FunctionMap{P2.total, P1.total, std::move(h_table)};
    if (!is_homomorphism(m.h).ok) throw error("h is not a point-preserving map");
    for (Elem a = 0; a < P2.total->size; ++a)
      if (P1.s(m.h(a)) != P2.s(a)) throw error("h does not commute with s");
    for (Elem b = 0; b < P1.base_v->size; ++b)
      if (m.h(P2.p(b)) != P1.p(b)) throw error("h does not commute with p");
  }
  return m;
}

// Transport a point along a V-isomorphism phi of its total algebra.
inline SplitPoint transport_point(const SplitPoint& P, const std::vector<Elem>& phi) {
  AlgebraPtr total2 = transport(*P.total, phi);
  std::vector<Elem> p2, s2;
  if (P.ctx->direction == Direction::Normal) {
    std::vector<Elem> inv(P.total->size);
    for (Elem e = 0; e < P.total->size; ++e) inv[phi[e]] = e;
    p2.resize(P.total->size);
    for (Elem e = 0; e < P.total->size; ++e) p2[e] = P.p(inv[e]);
    s2.resize(P.base_v->size);
    for (Elem b = 0; b < P.base_v->size; ++b) s2[b] = phi[P.s(b)];
  } else {
    p2.resize(P.base_v->size);
    for (Elem b = 0; b < P.base_v->size; ++b) p2[b] = phi[P.p(b)];
    std::vector<Elem> inv(P.total->size);
    for (Elem e = 0; e < P.total->size; ++e) inv[phi[e]] = e;
    s2.resize(P.total->size);
    for (Elem e = 0; e < P.total->size; ++e) s2[e] = P.s(inv[e]);
  }
  return make_split_point(P.ctx, P.base, total2, std::move(p2), std::move(s2));
}

// The canonical key of a point with a fixed total algebra: the least
// (p, s) encoding over the automorphisms of the total algebra.
inline std::vector<Elem> point_key(const SplitPoint& P,
                                   const std::vector<std::vector<Elem>>& auts) {
  std::vector<Elem> best;
  for (const auto& psi : auts) {
    std::vector<Elem> key;
    std::vector<Elem> inv(psi.size());
    for (size_t i = 0; i < psi.size(); ++i) inv[psi[i]] = static_cast<Elem>(i);
    if (P.ctx->direction == Direction::Normal) {
      for (Elem e = 0; e < P.total->size; ++e) key.push_back(P.p(inv[e]));
      for (Elem b = 0; b < P.base_v->size; ++b) key.push_back(psi[P.s(b)]);
    } else {
      for (Elem b = 0; b < P.base_v->size; ++b) key.push_back(psi[P.p(b)]);
      for (Elem e = 0; e < P.total->size; ++e) key.push_back(P.s(inv[e]));
    }
    if (best.empty() || key < best) best = std::move(key);
  }
  return best;
}

}  // namespace finact
