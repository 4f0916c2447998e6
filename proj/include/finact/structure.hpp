// Derived structure in hoops and product algebras: the MV <-> bounded
// Wajsberg hoop term equivalence, the boolean/cancellative decomposition of
// product hoops, and regular/dense elements of product algebras.

#pragma once

#include "finact/canon.hpp"
#include "finact/order.hpp"

namespace finact {

// ---------------------------------------------------------------------------
// MV-algebras vs bounded Wajsberg hoops

// x (.) y := neg(neg x (+) neg y),  x -> y := neg x (+) y,  1 := neg 0.
inline AlgebraPtr mv_to_hoop(const FiniteAlgebra& A) {
  detail::require_mv_axioms(A);
  int oplus = A.sig->op_index("oplus"), neg = A.sig->op_index("neg");
  Elem zero = A.cst(A.sig->const_index("zero"));
  FiniteAlgebra H;
  H.sig = hoop_sig(false, true);
  H.size = A.size;
  std::vector<Elem> mul(static_cast<size_t>(A.size) * A.size),
      imp(static_cast<size_t>(A.size) * A.size);
  for (Elem x = 0; x < A.size; ++x)
    for (Elem y = 0; y < A.size; ++y) {
      mul[static_cast<size_t>(x) * A.size + y] =
          A.apply1(neg, A.apply2(oplus, A.apply1(neg, x), A.apply1(neg, y)));
      imp[static_cast<size_t>(x) * A.size + y] = A.apply2(oplus, A.apply1(neg, x), y);
    }
  H.tables = {std::move(mul), std::move(imp)};
  H.constants = {A.apply1(neg, zero), zero};
  H.labels = A.labels;
  auto out = make_algebra(std::move(H));
  for (const auto& id : bounded_wajsberg_variety().identities)
    if (!check_identity(*out, id).satisfied)
      throw internal_error("MV-to-hoop output fails " + id.name);
  return out;
}

// neg x := x -> bottom,  x (+) y := neg x -> y,  0 := bottom.
inline AlgebraPtr hoop_to_mv(const FiniteAlgebra& H, Elem bottom) {
  detail::require_hoop_axioms(H);
  int mul = H.sig->op_index("mul"), imp = H.sig->op_index("imp");
  (void)mul;
  Elem one = H.cst(H.sig->const_index("one"));
  for (Elem x = 0; x < H.size; ++x)
    if (H.apply2(imp, bottom, x) != one) throw error("given element is not a bottom");
  FiniteAlgebra A;
  A.sig = mv_sig();
  A.size = H.size;
  std::vector<Elem> oplus(static_cast<size_t>(H.size) * H.size), neg(H.size);
  for (Elem x = 0; x < H.size; ++x) {
    neg[x] = H.apply2(imp, x, bottom);
    for (Elem y = 0; y < H.size; ++y)
      oplus[static_cast<size_t>(x) * H.size + y] = H.apply2(imp, H.apply2(imp, x, bottom), y);
  }
  A.tables = {std::move(oplus), std::move(neg)};
  A.constants = {bottom};
  A.labels = H.labels;
  auto out = make_algebra(std::move(A));
  for (const auto& id : mv_variety().identities)
    if (!check_identity(*out, id).satisfied)
      throw internal_error("hoop-to-MV output fails " + id.name);
  return out;
}

// Round-trip helpers used by tests: hoop carrying its own bottom constant.
inline AlgebraPtr bounded_hoop_to_mv(const FiniteAlgebra& H) {
  return hoop_to_mv(H, H.cst(H.sig->const_index("zero")));
}

// ---------------------------------------------------------------------------
// product hoops: b/c decomposition

struct BcDecomposition {
  std::vector<Elem> b, c;       // per element
  std::vector<Elem> boolean;    // G(H) = { b(x) }
  std::vector<Elem> cancellative;  // C(H) = { c(x) }
};

inline void require_product_hoop(const FiniteAlgebra& H) {
  auto v = product_hoop_variety();
  if (!(*H.sig == *v.sig))
    throw error("product hoop operations expect the (mul, imp, join, one) signature");
  for (const auto& id : v.identities)
    if (!check_identity(H, id).satisfied) throw error("input fails product-hoop axiom " + id.name);
}

// b(x) = (x -> x^2) -> x and c(x) = x -> x^2.
inline BcDecomposition bc_decompose(const FiniteAlgebra& H) {
  require_product_hoop(H);
  int mul = H.sig->op_index("mul"), imp = H.sig->op_index("imp");
  BcDecomposition d;
  d.b.resize(H.size);
  d.c.resize(H.size);
  for (Elem x = 0; x < H.size; ++x) {
    Elem sq = H.apply2(mul, x, x);
    d.c[x] = H.apply2(imp, x, sq);
    d.b[x] = H.apply2(imp, d.c[x], x);
  }
  std::vector<char> inb(H.size, 0), inc(H.size, 0);
  for (Elem x = 0; x < H.size; ++x) {
    if (!inb[d.b[x]]) d.boolean.push_back(d.b[x]);
    inb[d.b[x]] = 1;
    if (!inc[d.c[x]]) d.cancellative.push_back(d.c[x]);
    inc[d.c[x]] = 1;
  }
  std::sort(d.boolean.begin(), d.boolean.end());
  std::sort(d.cancellative.begin(), d.cancellative.end());
  return d;
}

// ---------------------------------------------------------------------------
// product algebras: regular and dense elements

struct RegularDense {
  std::vector<Elem> regular;  // B(A) = { not not x = x } — greatest Boolean subalgebra
  std::vector<Elem> dense;    // D(A) = { not not x = 1 } — a filter
  Subalgebra boolean_part;    // induced on B(A), BL signature
  bool degenerate = false;    // B(A) = A (everything finite at this scale)
};

inline void require_product_algebra(const FiniteAlgebra& A) {
  auto v = product_algebra_variety();
  if (!(*A.sig == *v.sig)) throw error("product algebra expected in the BL signature");
  for (const auto& id : v.identities)
    if (!check_identity(A, id).satisfied)
      throw error("input fails product-algebra axiom " + id.name);
}

inline RegularDense regular_dense_sets(AlgebraPtr Ap) {
  const FiniteAlgebra& A = *Ap;
  require_product_algebra(A);
  int imp = A.sig->op_index("imp"), meet = A.sig->op_index("meet"), join = A.sig->op_index("join");
  Elem zero = A.cst(A.sig->const_index("zero")), one = A.cst(A.sig->const_index("one"));
  auto nn = [&](Elem x) { return A.apply2(imp, A.apply2(imp, x, zero), zero); };
  RegularDense rd;
  for (Elem x = 0; x < A.size; ++x) {
    if (nn(x) == x) rd.regular.push_back(x);
    if (nn(x) == one) rd.dense.push_back(x);
  }
  rd.boolean_part = induced_subalgebra(Ap, rd.regular);
  // Boolean-ness of the regular part: complementation and distributivity
  const FiniteAlgebra& B = *rd.boolean_part.algebra;
  int bimp = B.sig->op_index("imp"), bmeet = B.sig->op_index("meet"),
      bjoin = B.sig->op_index("join");
  Elem bzero = B.cst(B.sig->const_index("zero")), bone = B.cst(B.sig->const_index("one"));
  for (Elem x = 0; x < B.size; ++x) {
    Elem nx = B.apply2(bimp, x, bzero);
    if (B.apply2(bjoin, x, nx) != bone || B.apply2(bmeet, x, nx) != bzero)
      throw internal_error("regular part is not complemented");
    for (Elem y = 0; y < B.size; ++y)
      for (Elem z = 0; z < B.size; ++z)
        if (B.apply2(bmeet, x, B.apply2(bjoin, y, z)) !=
            B.apply2(bjoin, B.apply2(bmeet, x, y), B.apply2(bmeet, x, z)))
          throw internal_error("regular part is not distributive");
  }
  // dense part is a filter of the hoop reduct
  {
    auto Hred = reduct(A, hoop_sig(true, false));
    std::vector<char> in(A.size, 0);
    for (Elem e : rd.dense) in[e] = 1;
    auto ord = natural_order(*Hred);
    if (!is_filter(*Hred, in, ord)) throw internal_error("dense part is not a filter");
  }
  (void)meet;
  (void)join;
  rd.degenerate = static_cast<int>(rd.regular.size()) == A.size;
  return rd;
}

}  // namespace finact
