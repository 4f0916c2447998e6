// Deciding coherence of a point two ways (by the characterization criterion
// of its context, and by existence of the extension morphism from the free
// object on its kernel) and ideality (by lifting the point to the richer
// side). The two coherence verdicts must agree on every built-in context; a
// disagreement is reported loudly, never swallowed.

#pragma once

#include "finact/enumerate.hpp"

namespace finact {

// ---------------------------------------------------------------------------
// canonical point of an object X: U F(X) over F(0)

inline SplitPoint canonical_point(ContextPtr ctx, AlgebraPtr X) {
  if (!ctx->initial)
    throw error("context " + ctx->name + " cannot materialize its canonical points");
  auto cr = closure(*ctx, X);
  if (ctx->direction == Direction::Normal) {
    auto ufiota = extend_homomorphism(ctx->initial, cr.closed, {});
    if (!ufiota.hom) throw internal_error("no morphism from the initial object into the closure");
    return make_split_point(ctx, ctx->initial, cr.closed_v, cr.comparison.map, ufiota.hom->map);
  }
  // opposite: the split mono U F(0) -> U F(X) with retraction collapsing X
  std::vector<Elem> s_table(cr.closed_v->size, 0);
  s_table[cr.closed_v->size - 1] = 1;  // adjoined point to adjoined point
  return make_split_point(ctx, ctx->initial, cr.closed_v, cr.comparison.map, s_table);
}

// ---------------------------------------------------------------------------
// coherence by extension

struct ExtensionVerdict {
  bool coherent = false;
  std::optional<FunctionMap> f;            // the unique filler, when present
  std::optional<ExtendConflict> conflict;  // normal-direction refusal
  std::optional<Elem> witness;             // opposite-direction refusal
  AlgebraPtr closed_v;                     // U F(X), for reports
};

inline ExtensionVerdict coherence_by_extension(const SplitPoint& P) {
  const ContextSpec& ctx = *P.ctx;
  ExtensionVerdict out;
  if (ctx.closure_family == ClosureFamily::None)
    throw error("context " + ctx.name +
                " has no materializable closure; use the criterion method");
  auto ker = kernel_object(P);
  auto cr = closure(ctx, ker.kernel);
  out.closed_v = cr.closed_v;

  if (ctx.direction == Direction::Normal) {
    auto iotaB = initial_morphism(ctx, P.base);
    auto ufiota = extend_homomorphism(ctx.initial, cr.closed, {});
    if (!ufiota.hom) throw internal_error("closure misses the initial morphism");
    AlgebraPtr initial_v = apply_forgetful(ctx, ctx.initial);
    std::vector<std::pair<Elem, Elem>> partial;
    for (Elem x = 0; x < ker.kernel->size; ++x)
      partial.push_back({cr.unit(x), ker.embed[x]});
    for (Elem e = 0; e < initial_v->size; ++e)
      partial.push_back({(*ufiota.hom)(e), P.s(iotaB(e))});
    auto ext = extend_homomorphism(cr.closed_v, P.total, partial);
    if (!ext.domain_generates)
      throw internal_error("unit and initial images do not generate the closure");
    if (!ext.hom) {
      out.conflict = ext.conflict;
      return out;
    }
    const FunctionMap& f = *ext.hom;
    for (Elem x = 0; x < ker.kernel->size; ++x)
      if (f(cr.unit(x)) != ker.embed[x]) throw internal_error("extension broke the unit square");
    for (Elem e = 0; e < cr.closed_v->size; ++e)
      if (P.p(f(e)) != iotaB(cr.comparison(e)))
        throw internal_error("extension broke the comparison square");
    for (Elem e = 0; e < initial_v->size; ++e)
      if (f((*ufiota.hom)(e)) != P.s(iotaB(e)))
        throw internal_error("extension broke the section square");
    out.coherent = true;
    out.f = f;
    return out;
  }

  // Opposite direction: the filler A -> (1+X, 1) is forced cell by cell;
  // it exists iff only the base point is sent to the adjoined element.
  Elem pt_bv = P.base_v->cst(P.base_v->sig->const_index("pt"));
  Elem pt_closed = cr.closed_v->cst(cr.closed_v->sig->const_index("pt"));
  FunctionMap f{P.total, cr.closed_v, {}};
  f.map.resize(P.total->size);
  for (Elem a = 0; a < P.total->size; ++a)
    f.map[a] = (P.s(a) == pt_bv) ? pt_closed : ker.k(a);
  for (Elem a = 0; a < P.total->size; ++a) {
    if (cr.unit(f(a)) != ker.k(a)) {
      out.witness = a;  // f collapses a although a is not over the base point
      return out;
    }
  }
  // U(iota) sends every base element to the old point of U F(0) and the
  // adjoined point to the adjoined point
  for (Elem b = 0; b < P.base_v->size; ++b) {
    Elem rhs = cr.comparison(b == pt_bv ? 1 : 0);
    if (f(P.p(b)) != rhs) throw internal_error("forced filler broke the comparison square");
  }
  out.coherent = true;
  out.f = f;
  return out;
}

// ---------------------------------------------------------------------------
// coherence by criterion

struct CriterionVerdict {
  bool coherent = false;
  std::string reason;
  std::optional<Elem> witness;
};

inline CriterionVerdict coherence_by_criterion(const SplitPoint& P) {
  const ContextSpec& ctx = *P.ctx;
  const FiniteAlgebra& A = *P.total;
  switch (ctx.criterion) {
    case CriterionKind::UnitalAlgebra: {
      int one_idx = ctx.U.sig->const_index("one");
      Elem one_b = P.base->cst(one_idx);
      Elem u = P.s(one_b);
      int mul = A.sig->op_index("mul");
      std::optional<Elem> unit;
      for (Elem w = 0; w < A.size && !unit; ++w) {
        bool is_unit = true;
        for (Elem a = 0; a < A.size && is_unit; ++a)
          is_unit = A.apply2(mul, w, a) == a && A.apply2(mul, a, w) == a;
        if (is_unit) unit = w;
      }
      if (!unit) {
        for (Elem a = 0; a < A.size; ++a)
          if (A.apply2(mul, u, a) != a || A.apply2(mul, a, u) != a)
            return {false, "total algebra has no unit", a};
        return {false, "total algebra has no unit", std::nullopt};
      }
      if (*unit != u)
        return {false, "the unit differs from the image of the base unit", *unit};
      return {true, "unital with unit s(1)", u};
    }
    case CriterionKind::HoopBottom: {
      int zero_idx = ctx.U.sig->const_index("zero");
      Elem zero_b = P.base->cst(zero_idx);
      Elem m = P.s(zero_b);
      int imp = A.sig->op_index("imp");
      Elem one = A.cst(A.sig->const_index("one"));
      for (Elem a = 0; a < A.size; ++a)
        if (A.apply2(imp, m, a) != one)
          return {false, "s(0) is not a bottom element", a};
      return {true, "bounded with bottom s(0)", m};
    }
    case CriterionKind::PsetSection: {
      Elem pt_bv = P.base_v->cst(P.base_v->sig->const_index("pt"));
      Elem pt_a = A.cst(A.sig->const_index("pt"));
      for (Elem a = 0; a < A.size; ++a) {
        bool hits = P.s(a) == pt_bv;
        if (hits && a != pt_a)
          return {false, "the section preimage of the adjoined point is too large", a};
        if (!hits && a == pt_a) throw internal_error("section does not preserve the point");
      }
      return {true, "section preimage of the adjoined point is the base point", pt_a};
    }
    case CriterionKind::None: break;
  }
  throw error("context " + ctx.name + " has no registered coherence criterion");
}

struct CoherenceReport {
  std::optional<ExtensionVerdict> extension;
  std::optional<CriterionVerdict> criterion;
  bool agreement = true;  // false is a reportable bug, never silently accepted
};

inline CoherenceReport coherence_report(const SplitPoint& P, bool run_extension = true,
                                        bool run_criterion = true) {
  CoherenceReport rep;
  if (run_extension) rep.extension = coherence_by_extension(P);
  if (run_criterion) rep.criterion = coherence_by_criterion(P);
  if (rep.extension && rep.criterion)
    rep.agreement = rep.extension->coherent == rep.criterion->coherent;
  return rep;
}

// ---------------------------------------------------------------------------
// ideality

struct IdealLift {
  AlgebraPtr lifted;               // A' in U
  std::vector<Elem> p_map, s_map;  // the lifted split epimorphism over B
  std::vector<Elem> sigma;         // normal: U(A') -> A; opposite: A -> U(A')
  std::vector<Elem> delta_values;  // assigned extra constants (normal direction)
};

struct LiftAttempt {
  std::vector<Elem> assignment;
  std::string failure;  // empty on success
};

struct IdealityVerdict {
  std::optional<IdealLift> lift;
  std::vector<LiftAttempt> trace;
  std::optional<Elem> witness;  // opposite-direction refusal element
  size_t successes = 0;
};

inline IdealityVerdict ideality_test(const SplitPoint& P) {
  const ContextSpec& ctx = *P.ctx;
  IdealityVerdict out;
  if (ctx.direction == Direction::Normal) {
    auto delta = ctx.delta_constants();
    std::vector<Elem> base_consts;
    for (const auto& name : delta) base_consts.push_back(P.base->cst(ctx.U.sig->const_index(name)));
    std::vector<Elem> assign(delta.size(), 0);
    bool more = true;
    while (more) {
      LiftAttempt attempt{assign, ""};
      bool ok = true;
      for (size_t i = 0; i < delta.size() && ok; ++i) {
        if (P.s(base_consts[i]) != assign[i]) {
          attempt.failure = "the section does not send " + delta[i] + " to the candidate";
          ok = false;
        } else if (P.p(assign[i]) != base_consts[i]) {
          attempt.failure = "the retraction does not preserve " + delta[i];
          ok = false;
        }
      }
      FiniteAlgebra lifted;
      if (ok) {
        lifted.sig = ctx.U.sig;
        lifted.size = P.total->size;
        lifted.tables = P.total->tables;
        lifted.constants = P.total->constants;
        for (Elem v : assign) lifted.constants.push_back(v);
        for (const auto& id : ctx.U.identities) {
          auto c = check_identity(lifted, id);
          if (!c.satisfied) {
            attempt.failure = "identity " + id.name + " fails under this assignment";
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        ++out.successes;
        if (!out.lift) {
          IdealLift lift;
          lift.lifted = make_algebra(std::move(lifted));
          lift.p_map = P.p.map;
          lift.s_map = P.s.map;
          lift.sigma.resize(P.total->size);
          for (Elem e = 0; e < P.total->size; ++e) lift.sigma[e] = e;
          lift.delta_values = assign;
          out.lift = std::move(lift);
        }
      } else {
        out.trace.push_back(std::move(attempt));
      }
      more = !assign.empty() && next_assignment(assign, P.total->size);
    }
    return out;
  }

  // opposite: the lift strips the base point; it exists iff the section
  // sends nothing else to the adjoined point of U(B)
  Elem pt_bv = P.base_v->cst(P.base_v->sig->const_index("pt"));
  Elem pt_a = P.total->cst(P.total->sig->const_index("pt"));
  for (Elem a = 0; a < P.total->size; ++a)
    if (a != pt_a && P.s(a) == pt_bv) {
      out.witness = a;
      LiftAttempt attempt;
      attempt.failure = P.base->size == 0
                            ? "no section into the empty base is possible"
                            : "section sends a non-point element to the adjoined point";
      out.trace.push_back(std::move(attempt));
      return out;
    }
  IdealLift lift;
  lift.lifted = plain_set(P.total->size - 1);
  // sigma: A -> 1 + A' re-indexing the base point to the adjoined element
  lift.sigma.resize(P.total->size);
  for (Elem a = 0; a < P.total->size; ++a) {
    if (a == pt_a)
      lift.sigma[a] = P.total->size - 1;
    else
      lift.sigma[a] = a - (a > pt_a ? 1 : 0);
  }
  lift.p_map.resize(P.base->size);
  for (Elem b = 0; b < P.base->size; ++b) lift.p_map[b] = lift.sigma[P.p(b)];
  lift.s_map.resize(P.total->size - 1);
  for (Elem a = 0; a < P.total->size; ++a)
    if (a != pt_a) lift.s_map[lift.sigma[a]] = P.s(a);
  out.lift = std::move(lift);
  out.successes = 1;
  return out;
}

// Re-checks a lift against its point from raw data (certificate validation).
inline bool validate_lift(const SplitPoint& P, const IdealLift& lift) {
  const ContextSpec& ctx = *P.ctx;
  if (ctx.direction == Direction::Normal) {
    for (const auto& id : ctx.U.identities)
      if (!check_identity(*lift.lifted, id).satisfied) return false;
    // sigma is a V-isomorphism U(A') -> A
    AlgebraPtr lifted_v = apply_forgetful(ctx, lift.lifted);
    FunctionMap sigma{lifted_v, P.total, lift.sigma};
    if (!sigma.injective() || !is_homomorphism(sigma).ok) return false;
    // U(p') = p o sigma and sigma o U(s') = s
    for (Elem e = 0; e < P.total->size; ++e)
      if (lift.p_map[e] != P.p(sigma(e))) return false;
    for (Elem b = 0; b < P.base_v->size; ++b)
      if (sigma.map[lift.s_map[b]] != P.s(b)) return false;
    return true;
  }
  // opposite
  if (lift.lifted->size != P.total->size - 1) return false;
  Elem pt_a = P.total->cst(P.total->sig->const_index("pt"));
  // sigma: A -> 1+A' pointed bijection
  std::vector<char> seen(P.total->size, 0);
  for (Elem a = 0; a < P.total->size; ++a) {
    if (lift.sigma[a] < 0 || lift.sigma[a] >= P.total->size || seen[lift.sigma[a]]) return false;
    seen[lift.sigma[a]] = 1;
  }
  if (lift.sigma[pt_a] != P.total->size - 1) return false;
  for (Elem b = 0; b < P.base->size; ++b)
    if (lift.p_map[b] != lift.sigma[P.p(b)]) return false;
  for (Elem a = 0; a < P.total->size; ++a) {
    if (a == pt_a) continue;
    if (lift.s_map[lift.sigma[a]] != P.s(a)) return false;
    if (lift.s_map[lift.sigma[a]] >= P.base->size) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// ideal morphisms

struct MorphismLift {
  std::optional<std::vector<Elem>> lifted;  // U-level table
  std::string refusal;
  std::optional<Elem> witness;
};

inline MorphismLift ideal_morphism_test(const PointMorphism& m) {
  const ContextSpec& ctx = *m.source.ctx;
  auto i1 = ideality_test(m.source);
  auto i2 = ideality_test(m.target);
  if (!i1.lift || !i2.lift) throw error("ideal_morphism_test needs ideal endpoints");
  MorphismLift out;
  if (ctx.direction == Direction::Normal) {
    const auto& d1 = i1.lift->delta_values;
    const auto& d2 = i2.lift->delta_values;
    for (size_t i = 0; i < d1.size(); ++i)
      if (m.h(d1[i]) != d2[i]) {
        out.refusal = "the map moves the lifted constant " + ctx.delta_constants()[i];
        out.witness = d1[i];
        return out;
      }
    FunctionMap hu{i1.lift->lifted, i2.lift->lifted, m.h.map};
    auto hc = is_homomorphism(hu);
    if (!hc.ok) {
      out.refusal = "the map is not a morphism on the lifted structures";
      return out;
    }
    out.lifted = m.h.map;
    return out;
  }
  // opposite: restrict h: A2 -> A1 away from the base points
  Elem pt1 = m.source.total->cst(m.source.total->sig->const_index("pt"));
  Elem pt2 = m.target.total->cst(m.target.total->sig->const_index("pt"));
  for (Elem a = 0; a < m.target.total->size; ++a)
    if (a != pt2 && m.h(a) == pt1) {
      out.refusal = "the map collapses a non-point element onto the base point";
      out.witness = a;
      return out;
    }
  std::vector<Elem> restricted;
  for (Elem a = 0; a < m.target.total->size; ++a) {
    if (a == pt2) continue;
    Elem v = m.h(a);
    restricted.push_back(v - (v > pt1 ? 1 : 0));
  }
  out.lifted = restricted;
  return out;
}

}  // namespace finact
