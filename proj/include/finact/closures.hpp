// The free constructions of the built-in contexts: unitalization over a
// prime field, the MV-closure of a Wajsberg hoop, the product closure of a
// product hoop, and the maybe construction for the dual pointed-set context.
// Each returns the closed algebra together with the unit embedding and the
// comparison map onto F(0), and every output is checked against the target
// identities before it is released.

#pragma once

#include "finact/context.hpp"
#include "finact/structure.hpp"

namespace finact {

struct ClosureResult {
  AlgebraPtr closed;       // F(X) in U's signature (Normal) / the U-object (Opposite)
  AlgebraPtr closed_v;     // U(F(X)) in V's signature
  FunctionMap unit;        // Normal: X -> closed_v.   Opposite: closed_v -> X.
  FunctionMap comparison;  // Normal: closed_v -> U(F(0)). Opposite: U(F(0)) -> closed_v.
};

// ---------------------------------------------------------------------------
// unitalization F_p |x X

namespace detail {

// Carrier F_p x X laid out with the eta-image first: (alpha, x) at
// alpha*|X| + x, so eta is the identity on indices.
inline AlgebraPtr unitalize_core(const FiniteAlgebra& X, int p) {
  int nx = X.size;
  int n = p * nx;
  int addX = X.sig->op_index("add"), mulX = X.sig->op_index("mul"), negX = X.sig->op_index("neg");
  std::vector<int> sX(p);
  for (int a = 0; a < p; ++a) sX[a] = X.sig->op_index("s" + std::to_string(a));
  FiniteAlgebra F;
  F.sig = alg_sig(p, true);
  F.size = n;
  auto id = [&](int a, Elem x) { return a * nx + x; };
  std::vector<Elem> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n), neg(n);
  for (int a = 0; a < p; ++a)
    for (Elem x = 0; x < nx; ++x) {
      Elem e = id(a, x);
      neg[e] = id((p - a) % p, X.apply1(negX, x));
      for (int b = 0; b < p; ++b)
        for (Elem y = 0; y < nx; ++y) {
          Elem f = id(b, y);
          add[static_cast<size_t>(e) * n + f] = id((a + b) % p, X.apply2(addX, x, y));
          // (a,x)(b,y) = (ab, xy + a.y + b.x)
          Elem prod = X.apply2(addX, X.apply2(addX, X.apply2(mulX, x, y), X.apply1(sX[a], y)),
                               X.apply1(sX[b], x));
          mul[static_cast<size_t>(e) * n + f] = id((a * b) % p, prod);
        }
    }
  F.tables = {std::move(add), std::move(mul), std::move(neg)};
  for (int s = 0; s < p; ++s) {
    std::vector<Elem> st(n);
    for (int a = 0; a < p; ++a)
      for (Elem x = 0; x < nx; ++x) st[id(a, x)] = id((s * a) % p, X.apply1(sX[s], x));
    F.tables.push_back(std::move(st));
  }
  Elem zx = X.cst(X.sig->const_index("zero"));
  F.constants = {id(0, zx), id(1, zx)};
  return make_algebra(std::move(F));
}

}  // namespace detail

// Adjoining a unit to X. Rejected (with the witness identity) when the
// ambient variety is not unit-closed, e.g. for Lie or Leibniz algebras.
inline ClosureResult unitalize(const ContextSpec& ctx, AlgebraPtr X) {
  if (ctx.closure_family != ClosureFamily::Unitalization)
    throw error("context " + ctx.name + " does not unitalize");
  {
    auto rep = variety_membership(*X, ctx.V);
    if (!rep.member) throw error("input is not in " + ctx.V.name);
  }
  AlgebraPtr closed = detail::unitalize_core(*X, ctx.prime);
  for (const auto& id : ctx.V.identities)
    if (!check_identity(*closed, id).satisfied)
      throw error("variety " + ctx.V.name + " is not unit-closed: identity " + id.name +
                  " fails after adjoining a unit");
  for (const auto& id : ids::unit_axioms(*closed->sig))
    if (!check_identity(*closed, id).satisfied)
      throw internal_error("unitalization broke the unit laws");

  ClosureResult res;
  res.closed = closed;
  res.closed_v = apply_forgetful(ctx, closed);
  res.unit = FunctionMap{X, res.closed_v, {}};
  res.unit.map.resize(X->size);
  for (Elem x = 0; x < X->size; ++x) res.unit.map[x] = x;
  AlgebraPtr f0v = apply_forgetful(ctx, ctx.initial);
  res.comparison = FunctionMap{res.closed_v, f0v, {}};
  res.comparison.map.resize(closed->size);
  for (int a = 0; a < ctx.prime; ++a)
    for (Elem x = 0; x < X->size; ++x) res.comparison.map[a * X->size + x] = a;
  return res;
}

// ---------------------------------------------------------------------------
// MV-closure M(H) = H x {0,1}

namespace detail {

// (x,1) at index x, (x,0) at index |H| + x.
inline AlgebraPtr mv_closure_core(const FiniteAlgebra& H) {
  int nh = H.size;
  int n = 2 * nh;
  int mulH = H.sig->op_index("mul"), impH = H.sig->op_index("imp");
  auto m = [&](Elem a, Elem b) { return H.tables[mulH][static_cast<size_t>(a) * nh + b]; };
  auto im = [&](Elem a, Elem b) { return H.tables[impH][static_cast<size_t>(a) * nh + b]; };
  FiniteAlgebra M;
  M.sig = hoop_sig(false, true);
  M.size = n;
  std::vector<Elem> mul(static_cast<size_t>(n) * n), imp(static_cast<size_t>(n) * n);
  auto id = [&](Elem a, int i) { return i == 1 ? a : nh + a; };
  for (Elem a = 0; a < nh; ++a)
    for (int i = 0; i < 2; ++i)
      for (Elem b = 0; b < nh; ++b)
        for (int j = 0; j < 2; ++j) {
          Elem lhs = id(a, i), rhs = id(b, j);
          Elem mv, iv;
          if (i == 1 && j == 1) {
            mv = id(m(a, b), 1);
            iv = id(im(a, b), 1);
          } else if (i == 1 && j == 0) {
            mv = id(im(a, b), 0);
            iv = id(m(a, b), 0);
          } else if (i == 0 && j == 1) {
            mv = id(im(b, a), 0);
            iv = id(im(im(a, m(a, b)), b), 1);
          } else {
            mv = id(im(im(a, m(a, b)), b), 0);
            iv = id(im(b, a), 1);
          }
          mul[static_cast<size_t>(lhs) * n + rhs] = mv;
          imp[static_cast<size_t>(lhs) * n + rhs] = iv;
        }
  M.tables = {std::move(mul), std::move(imp)};
  Elem oneH = H.cst(H.sig->const_index("one"));
  M.constants = {id(oneH, 1), id(oneH, 0)};
  return make_algebra(std::move(M));
}

}  // namespace detail

inline ClosureResult mv_closure(const ContextSpec& ctx, AlgebraPtr H) {
  if (ctx.closure_family != ClosureFamily::MvClosure)
    throw error("context " + ctx.name + " has no MV-closure");
  for (const auto& id : ctx.V.identities)
    if (!check_identity(*H, id).satisfied)
      throw error("input fails Wajsberg hoop identity " + id.name);
  AlgebraPtr closed = detail::mv_closure_core(*H);
  for (const auto& id : ctx.U.identities)
    if (!check_identity(*closed, id).satisfied)
      throw internal_error("MV-closure output fails " + id.name);
  (void)bounded_hoop_to_mv(*closed);  // also passes MV1-MV4 on the nose

  ClosureResult res;
  res.closed = closed;
  res.closed_v = apply_forgetful(ctx, closed);
  res.unit = FunctionMap{H, res.closed_v, {}};
  res.unit.map.resize(H->size);
  for (Elem x = 0; x < H->size; ++x) res.unit.map[x] = x;
  AlgebraPtr f0v = apply_forgetful(ctx, ctx.initial);
  res.comparison = FunctionMap{res.closed_v, f0v, {}};
  res.comparison.map.resize(closed->size);
  for (Elem e = 0; e < closed->size; ++e)
    res.comparison.map[e] = e < H->size ? 0 : 1;
  return res;
}

// ---------------------------------------------------------------------------
// product closure K(H) = H u H*/~

namespace detail {

struct ProductClosureData {
  AlgebraPtr closed;
  std::vector<int> bullet_class;  // per H-element: class id of its bullet
  int classes = 0;
};

inline ProductClosureData product_closure_core(const FiniteAlgebra& H) {
  const int nh = H.size;
  int mulH = H.sig->op_index("mul"), impH = H.sig->op_index("imp"),
      joinH = H.sig->op_index("join");
  Elem oneH = H.cst(H.sig->const_index("one"));
  auto m = [&](Elem a, Elem b) { return H.tables[mulH][static_cast<size_t>(a) * nh + b]; };
  auto im = [&](Elem a, Elem b) { return H.tables[impH][static_cast<size_t>(a) * nh + b]; };
  auto jn = [&](Elem a, Elem b) { return H.tables[joinH][static_cast<size_t>(a) * nh + b]; };
  auto mt = [&](Elem a, Elem b) { return m(a, im(a, b)); };  // divisibility meet

  std::vector<Elem> bb(nh), cc(nh);
  for (Elem x = 0; x < nh; ++x) {
    cc[x] = im(x, m(x, x));
    bb[x] = im(cc[x], x);
  }

  // x* ~ y*  iff  b(x)=b(y) and (not b(x)) v c(x) = (not b(y)) v c(y);
  // the complement of an eta-image lies outside G(H), so the second
  // condition reads b(x) -> c(x) = b(y) -> c(y).
  std::vector<int> cls(nh, -1);
  int nc = 0;
  for (Elem x = 0; x < nh; ++x) {
    if (cls[x] != -1) continue;
    cls[x] = nc;
    for (Elem y = x + 1; y < nh; ++y)
      if (cls[y] == -1 && bb[y] == bb[x] && im(bb[y], cc[y]) == im(bb[x], cc[x])) cls[y] = nc;
    ++nc;
  }

  int n = nh + nc;
  auto bullet = [&](Elem x) { return nh + cls[x]; };
  std::vector<Elem> rep(nc, -1);
  for (Elem x = 0; x < nh; ++x)
    if (rep[cls[x]] == -1) rep[cls[x]] = x;

  FiniteAlgebra K;
  K.sig = hoop_sig(true, true);
  K.size = n;
  std::vector<Elem> mul(static_cast<size_t>(n) * n), imp(static_cast<size_t>(n) * n),
      join(static_cast<size_t>(n) * n);

  // x, y are H-representatives of the operands; ub/vb flag bullets
  auto compute_mul = [&](Elem x, Elem y, bool ub, bool vb) -> Elem {
    Elem b1 = bb[x], c1 = cc[x], b2 = bb[y], c2 = cc[y];
    if (!ub && !vb) return m(x, y);
    if (!ub && vb) return bullet(mt(im(b1, b2), m(c1, c2)));
    if (ub && !vb) return bullet(mt(im(b2, b1), m(c2, c1)));
    return bullet(mt(jn(b1, b2), m(c1, c2)));
  };
  auto compute_imp = [&](Elem x, Elem y, bool ub, bool vb) -> Elem {
    Elem b1 = bb[x], c1 = cc[x], b2 = bb[y], c2 = cc[y];
    if (!ub && !vb) return im(x, y);
    if (ub && vb) return mt(im(b2, b1), jn(b1, im(c1, c2)));
    if (ub && !vb) return mt(jn(b1, b2), jn(b1, im(c1, c2)));
    return bullet(mt(mt(b1, b2), im(m(b1, c1), c2)));
  };

  for (Elem u = 0; u < n; ++u) {
    bool ub = u >= nh;
    Elem x = ub ? rep[u - nh] : u;
    for (Elem v = 0; v < n; ++v) {
      bool vb = v >= nh;
      Elem y = vb ? rep[v - nh] : v;
      mul[static_cast<size_t>(u) * n + v] = compute_mul(x, y, ub, vb);
      imp[static_cast<size_t>(u) * n + v] = compute_imp(x, y, ub, vb);
    }
  }

  // well-definedness on representatives: recompute with every class member
  for (Elem u = 0; u < n; ++u) {
    bool ub = u >= nh;
    for (Elem v = 0; v < n; ++v) {
      bool vb = v >= nh;
      for (Elem x = 0; x < nh; ++x) {
        if (ub && bullet(x) != u) continue;
        if (!ub && x != u) continue;
        for (Elem y = 0; y < nh; ++y) {
          if (vb && bullet(y) != v) continue;
          if (!vb && y != v) continue;
          if (compute_mul(x, y, ub, vb) != mul[static_cast<size_t>(u) * n + v] ||
              compute_imp(x, y, ub, vb) != imp[static_cast<size_t>(u) * n + v])
            throw internal_error("product closure operations not well-defined on classes");
        }
      }
    }
  }

  // the join of the ->-order (forced by the join axioms)
  Elem oneK = oneH;
  auto leq = [&](Elem a, Elem b) { return imp[static_cast<size_t>(a) * n + b] == oneK; };
  for (Elem u = 0; u < n; ++u)
    for (Elem v = 0; v < n; ++v) {
      Elem best = -1;
      for (Elem w = 0; w < n; ++w) {
        if (!leq(u, w) || !leq(v, w)) continue;
        if (best == -1 || leq(w, best)) best = w;
      }
      if (best == -1) throw internal_error("product closure order has no join");
      for (Elem w = 0; w < n; ++w)
        if (leq(u, w) && leq(v, w) && !leq(best, w))
          throw internal_error("product closure order has no least upper bound");
      join[static_cast<size_t>(u) * n + v] = best;
    }

  K.tables = {std::move(mul), std::move(imp), std::move(join)};
  K.constants = {oneK, bullet(oneH)};

  ProductClosureData out;
  out.closed = make_algebra(std::move(K));
  out.bullet_class = std::move(cls);
  out.classes = nc;
  return out;
}

}  // namespace detail

inline ClosureResult product_closure(const ContextSpec& ctx, AlgebraPtr H) {
  if (ctx.closure_family != ClosureFamily::ProductClosure)
    throw error("context " + ctx.name + " has no product closure");
  require_product_hoop(*H);
  auto data = detail::product_closure_core(*H);
  for (const auto& id : ctx.U.identities)
    if (!check_identity(*data.closed, id).satisfied)
      throw internal_error("product closure output fails " + id.name);

  ClosureResult res;
  res.closed = data.closed;
  res.closed_v = apply_forgetful(ctx, data.closed);
  res.unit = FunctionMap{H, res.closed_v, {}};
  res.unit.map.resize(H->size);
  for (Elem x = 0; x < H->size; ++x) res.unit.map[x] = x;
  AlgebraPtr f0v = apply_forgetful(ctx, ctx.initial);
  res.comparison = FunctionMap{res.closed_v, f0v, {}};
  res.comparison.map.resize(data.closed->size);
  for (Elem e = 0; e < data.closed->size; ++e)
    res.comparison.map[e] = e < H->size ? 0 : 1;
  return res;
}

// Bounded product hoop -> BL signature (join primitive, meet by divisibility).
inline AlgebraPtr bphoop_to_pralg(const FiniteAlgebra& A) {
  int mul = A.sig->op_index("mul"), imp = A.sig->op_index("imp"), join = A.sig->op_index("join");
  FiniteAlgebra B;
  B.sig = bl_sig();
  B.size = A.size;
  std::vector<Elem> meet(static_cast<size_t>(A.size) * A.size);
  for (Elem x = 0; x < A.size; ++x)
    for (Elem y = 0; y < A.size; ++y)
      meet[static_cast<size_t>(x) * A.size + y] = A.apply2(mul, x, A.apply2(imp, x, y));
  B.tables = {A.tables[join], std::move(meet), A.tables[mul], A.tables[imp]};
  B.constants = {A.cst(A.sig->const_index("zero")), A.cst(A.sig->const_index("one"))};
  return make_algebra(std::move(B));
}

// ---------------------------------------------------------------------------
// dual pointed-set context: the maybe construction

inline ClosureResult maybe_point(const ContextSpec& ctx, AlgebraPtr X) {
  if (ctx.closure_family != ClosureFamily::Maybe)
    throw error("context " + ctx.name + " is not the dual pointed-set context");
  ClosureResult res;
  res.closed = plain_set(X->size);          // F(X): the underlying set
  res.closed_v = apply_forgetful(ctx, res.closed);  // (1+X, 1), point last
  Elem ptX = X->cst(X->sig->const_index("pt"));
  // unit (read in pointed sets): (1+X,1) -> (X,*), x -> x, 1 -> *
  res.unit = FunctionMap{res.closed_v, X, {}};
  res.unit.map.resize(res.closed_v->size);
  for (Elem e = 0; e < X->size; ++e) res.unit.map[e] = e;
  res.unit.map[X->size] = ptX;
  // comparison (read in pointed sets): U(F(0)) -> (1+X,1)
  AlgebraPtr f0v = apply_forgetful(ctx, ctx.initial);
  res.comparison = FunctionMap{f0v, res.closed_v, {}};
  res.comparison.map = {ptX, X->size};
  return res;
}

// ---------------------------------------------------------------------------
// dispatch and the cartesian-unit property

inline ClosureResult closure(const ContextSpec& ctx, AlgebraPtr X) {
  switch (ctx.closure_family) {
    case ClosureFamily::Unitalization: return unitalize(ctx, X);
    case ClosureFamily::MvClosure: return mv_closure(ctx, X);
    case ClosureFamily::ProductClosure: return product_closure(ctx, X);
    case ClosureFamily::Maybe: return maybe_point(ctx, X);
    case ClosureFamily::None: break;
  }
  throw error("context " + ctx.name + " has no materializable free construction");
}

struct CartesianUnitCheck {
  bool ok = true;
  std::string detail;
};

// The unit embeds X as the kernel of the comparison map (dually: the unit
// collapses exactly the image of the comparison in the pointed-set case).
inline CartesianUnitCheck verify_cartesian_unit(const ContextSpec& ctx, AlgebraPtr X) {
  auto cr = closure(ctx, X);
  if (ctx.direction == Direction::Normal) {
    if (!cr.unit.injective()) return {false, "unit embedding is not injective"};
    auto hc = is_homomorphism(cr.unit);
    if (!hc.ok) return {false, "unit is not a homomorphism"};
    auto ker = kernel_class(cr.comparison, ctx.V);
    std::vector<Elem> img(cr.unit.map.begin(), cr.unit.map.end());
    std::sort(img.begin(), img.end());
    if (img != ker) return {false, "unit image differs from the comparison kernel"};
    return {};
  }
  // opposite direction
  Elem ptX = X->cst(X->sig->const_index("pt"));
  if (!cr.unit.surjective()) return {false, "unit retraction is not surjective"};
  std::vector<Elem> collapsed;
  for (Elem e = 0; e < cr.closed_v->size; ++e)
    if (cr.unit.map[e] == ptX) collapsed.push_back(e);
  std::vector<Elem> img(cr.comparison.map.begin(), cr.comparison.map.end());
  std::sort(img.begin(), img.end());
  if (collapsed != img) return {false, "unit collapses more than the comparison image"};
  for (Elem e = 0; e < cr.closed_v->size; ++e)
    for (Elem f = e + 1; f < cr.closed_v->size; ++f)
      if (cr.unit.map[e] == cr.unit.map[f] && cr.unit.map[e] != ptX)
        return {false, "unit identifies elements outside the base point"};
  return {};
}

// ---------------------------------------------------------------------------
// built-in contexts

inline ContextPtr algebra_context(AlgKind kind, int p) {
  ContextSpec c;
  c.name = "alg:" + alg_kind_name(kind) + "@" + std::to_string(p);
  c.V = algebra_variety(kind, p, false);
  c.U = algebra_variety(kind, p, true);
  c.direction = Direction::Normal;
  c.closure_family = ClosureFamily::Unitalization;
  c.criterion = CriterionKind::UnitalAlgebra;
  c.prime = p;
  c.initial = detail::unitalize_core(*null_algebra(p, 0), p);
  c.validate_shapes();
  return std::make_shared<const ContextSpec>(std::move(c));
}

inline ContextPtr ring_context() {
  ContextSpec c;
  c.name = "ring";
  c.V = rng_variety(false);
  c.U = rng_variety(true);
  c.direction = Direction::Normal;
  c.closure_family = ClosureFamily::None;  // Z |x X is not a finite object
  c.criterion = CriterionKind::UnitalAlgebra;
  c.initial = nullptr;
  c.validate_shapes();
  return std::make_shared<const ContextSpec>(std::move(c));
}

inline ContextPtr mv_context() {
  ContextSpec c;
  c.name = "mv";
  c.V = wajsberg_hoop_variety();
  c.U = bounded_wajsberg_variety();
  c.direction = Direction::Normal;
  c.closure_family = ClosureFamily::MvClosure;
  c.criterion = CriterionKind::HoopBottom;
  c.initial = detail::mv_closure_core(*trivial_whoop());
  c.validate_shapes();
  return std::make_shared<const ContextSpec>(std::move(c));
}

inline ContextPtr product_context() {
  ContextSpec c;
  c.name = "prod";
  c.V = product_hoop_variety();
  c.U = bounded_product_hoop_variety();
  c.direction = Direction::Normal;
  c.closure_family = ClosureFamily::ProductClosure;
  c.criterion = CriterionKind::HoopBottom;
  c.initial = detail::product_closure_core(*trivial_phoop()).closed;
  c.validate_shapes();
  return std::make_shared<const ContextSpec>(std::move(c));
}

inline ContextPtr pset_context() {
  ContextSpec c;
  c.name = "pset";
  c.V = pset_variety();
  c.U = set_variety();
  c.direction = Direction::Opposite;
  c.closure_family = ClosureFamily::Maybe;
  c.criterion = CriterionKind::PsetSection;
  c.initial = plain_set(1);
  c.validate_shapes();
  return std::make_shared<const ContextSpec>(std::move(c));
}

inline ContextPtr context_by_name(const std::string& spec) {
  if (spec.rfind("alg:", 0) == 0) {
    std::string rest = spec.substr(4);
    int p = 2;
    if (auto at = rest.find('@'); at != std::string::npos) {
      p = std::stoi(rest.substr(at + 1));
      rest = rest.substr(0, at);
    }
    for (AlgKind k : {AlgKind::Ab, AlgKind::Assoc, AlgKind::CAssoc, AlgKind::Alt, AlgKind::Lie,
                      AlgKind::Leib})
      if (alg_kind_name(k) == rest) return algebra_context(k, p);
    throw error("unknown algebra context: " + spec);
  }
  if (spec == "ring" || spec == "rng") return ring_context();
  if (spec == "mv") return mv_context();
  if (spec == "prod") return product_context();
  if (spec == "pset") return pset_context();
  throw error("unknown context: " + spec);
}

inline std::vector<std::string> builtin_context_names() {
  return {"alg:cassoc@2", "alg:assoc@2", "ring", "mv", "prod", "pset"};
}

}  // namespace finact
