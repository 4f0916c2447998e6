// The natural order of hoops and MV-algebras, filters/ideals, kernels of
// homomorphisms, and quotients by filters.

#pragma once

#include "finact/pool.hpp"
#include "finact/quotient.hpp"

namespace finact {

struct OrderRelation {
  int size = 0;
  std::vector<char> le;  // le[x*size+y] iff x <= y

  bool leq(Elem x, Elem y) const { return le[static_cast<size_t>(x) * size + y] != 0; }

  void verify_partial_order() const {
    for (Elem x = 0; x < size; ++x) {
      if (!leq(x, x)) throw internal_error("order not reflexive");
      for (Elem y = 0; y < size; ++y) {
        if (x != y && leq(x, y) && leq(y, x)) throw internal_error("order not antisymmetric");
        for (Elem z = 0; z < size; ++z)
          if (leq(x, y) && leq(y, z) && !leq(x, z)) throw internal_error("order not transitive");
      }
    }
  }

  std::optional<Elem> minimum() const {
    for (Elem m = 0; m < size; ++m) {
      bool all = true;
      for (Elem x = 0; x < size && all; ++x) all = leq(m, x);
      if (all) return m;
    }
    return std::nullopt;
  }

  std::optional<Elem> maximum() const {
    for (Elem m = 0; m < size; ++m) {
      bool all = true;
      for (Elem x = 0; x < size && all; ++x) all = leq(x, m);
      if (all) return m;
    }
    return std::nullopt;
  }

  // least upper bound, if it exists
  std::optional<Elem> join_of(Elem x, Elem y) const {
    std::optional<Elem> best;
    for (Elem u = 0; u < size; ++u) {
      if (!leq(x, u) || !leq(y, u)) continue;
      if (!best || leq(u, *best)) best = u;
    }
    if (best)
      for (Elem u = 0; u < size; ++u)
        if (leq(x, u) && leq(y, u) && !leq(*best, u)) return std::nullopt;
    return best;
  }

  std::optional<Elem> meet_of(Elem x, Elem y) const {
    std::optional<Elem> best;
    for (Elem u = 0; u < size; ++u) {
      if (!leq(u, x) || !leq(u, y)) continue;
      if (!best || leq(*best, u)) best = u;
    }
    if (best)
      for (Elem u = 0; u < size; ++u)
        if (leq(u, x) && leq(u, y) && !leq(u, *best)) return std::nullopt;
    return best;
  }
};

namespace detail {

inline void require_hoop_axioms(const FiniteAlgebra& A) {
  for (const auto& id : ids::hoop_axioms(*A.sig))
    if (!check_identity(A, id).satisfied) throw error("input fails hoop axiom " + id.name);
}

inline void require_mv_axioms(const FiniteAlgebra& A) {
  for (const auto& id : ids::mv_axioms(*A.sig))
    if (!check_identity(A, id).satisfied) throw error("input fails MV axiom " + id.name);
}

}  // namespace detail

// x <= y iff x->y = 1. Also verifies the equivalent existential description
// (x = z*y for hoops, x (+) z = y for MV-algebras); a divergence would mean a
// broken input slipped past the axiom check and is treated as a bug.
inline OrderRelation natural_order(const FiniteAlgebra& A) {
  bool is_mv = A.sig->op_index("oplus") >= 0;
  OrderRelation ord;
  ord.size = A.size;
  ord.le.assign(static_cast<size_t>(A.size) * A.size, 0);
  if (is_mv) {
    detail::require_mv_axioms(A);
    int oplus = A.sig->op_index("oplus"), neg = A.sig->op_index("neg");
    Elem one = A.apply1(neg, A.cst(A.sig->const_index("zero")));
    for (Elem x = 0; x < A.size; ++x)
      for (Elem y = 0; y < A.size; ++y) {
        bool le = A.apply2(oplus, A.apply1(neg, x), y) == one;
        bool ex = false;
        for (Elem z = 0; z < A.size && !ex; ++z) ex = A.apply2(oplus, x, z) == y;
        if (le != ex) throw internal_error("natural order characterizations diverge");
        ord.le[static_cast<size_t>(x) * A.size + y] = le;
      }
  } else {
    detail::require_hoop_axioms(A);
    int mul = A.sig->op_index("mul"), imp = A.sig->op_index("imp");
    Elem one = A.cst(A.sig->const_index("one"));
    for (Elem x = 0; x < A.size; ++x)
      for (Elem y = 0; y < A.size; ++y) {
        bool le = A.apply2(imp, x, y) == one;
        bool ex = false;
        for (Elem z = 0; z < A.size && !ex; ++z) ex = A.apply2(mul, z, y) == x;
        if (le != ex) throw internal_error("natural order characterizations diverge");
        ord.le[static_cast<size_t>(x) * A.size + y] = le;
      }
  }
  ord.verify_partial_order();
  return ord;
}

// upward closed submonoid of (H, mul, 1)
inline bool is_filter(const FiniteAlgebra& H, const std::vector<char>& in,
                      const OrderRelation& ord) {
  int mul = H.sig->op_index("mul");
  Elem one = H.cst(H.sig->const_index("one"));
  if (!in[one]) return false;
  for (Elem x = 0; x < H.size; ++x) {
    if (!in[x]) continue;
    for (Elem y = 0; y < H.size; ++y) {
      if (in[y] && !in[H.apply2(mul, x, y)]) return false;
      if (ord.leq(x, y) && !in[y]) return false;
    }
  }
  return true;
}

// downward closed submonoid of (A, oplus, 0)
inline bool is_mv_ideal(const FiniteAlgebra& A, const std::vector<char>& in,
                        const OrderRelation& ord) {
  int oplus = A.sig->op_index("oplus");
  Elem zero = A.cst(A.sig->const_index("zero"));
  if (!in[zero]) return false;
  for (Elem x = 0; x < A.size; ++x) {
    if (!in[x]) continue;
    for (Elem y = 0; y < A.size; ++y) {
      if (in[y] && !in[A.apply2(oplus, x, y)]) return false;
      if (ord.leq(y, x) && !in[y]) return false;
    }
  }
  return true;
}

// two-sided ring/algebra ideal
inline bool is_algebra_ideal(const FiniteAlgebra& A, const std::vector<char>& in) {
  int add = A.sig->op_index("add"), mul = A.sig->op_index("mul"), neg = A.sig->op_index("neg");
  if (!in[A.cst(A.sig->const_index("zero"))]) return false;
  for (Elem x = 0; x < A.size; ++x) {
    if (!in[x]) continue;
    if (!in[A.apply1(neg, x)]) return false;
    for (Elem y = 0; y < A.size; ++y) {
      if (in[y] && !in[A.apply2(add, x, y)]) return false;
      if (!in[A.apply2(mul, x, y)] || !in[A.apply2(mul, y, x)]) return false;
    }
  }
  return true;
}

// Preimage of the kernel constant under a homomorphism, verified to be a
// filter (hoops) or ideal (MV, rings) as the family demands.
inline std::vector<Elem> kernel_class(const FunctionMap& f, const VarietySpec& V) {
  auto hc = is_homomorphism(f);
  if (!hc.ok) throw error("kernel of a non-homomorphism");
  if (V.kernel_const < 0) throw error("variety " + V.name + " has no kernel constant");
  Elem target = f.target->cst(V.kernel_const);
  std::vector<Elem> cls;
  std::vector<char> in(f.source->size, 0);
  for (Elem e = 0; e < f.source->size; ++e)
    if (f(e) == target) {
      cls.push_back(e);
      in[e] = 1;
    }
  switch (V.family) {
    case Family::Hoop:
    case Family::Bl: {
      auto ord = natural_order(*f.source);
      if (!is_filter(*f.source, in, ord)) throw internal_error("kernel is not a filter");
      break;
    }
    case Family::Mv: {
      auto ord = natural_order(*f.source);
      if (!is_mv_ideal(*f.source, in, ord)) throw internal_error("kernel is not an ideal");
      break;
    }
    case Family::Algebra:
    case Family::Rng:
    case Family::Ring:
      if (!is_algebra_ideal(*f.source, in)) throw internal_error("kernel is not an ideal");
      break;
    case Family::PointedSet:
    case Family::PlainSet:
      break;
  }
  return cls;
}

struct FilterQuotient {
  AlgebraPtr algebra;
  FunctionMap projection;
};

// Quotient of a hoop by a filter via x ~ y iff x->y and y->x lie in F.
inline FilterQuotient quotient_by_filter(AlgebraPtr Hp, const std::vector<Elem>& filter) {
  const FiniteAlgebra& H = *Hp;
  detail::require_hoop_axioms(H);
  std::vector<char> in(H.size, 0);
  for (Elem e : filter) in[e] = 1;
  auto ord = natural_order(H);
  if (!is_filter(H, in, ord)) throw error("subset is not a filter");
  int imp = H.sig->op_index("imp");
  std::vector<char> rel(static_cast<size_t>(H.size) * H.size, 0);
  for (Elem x = 0; x < H.size; ++x)
    for (Elem y = 0; y < H.size; ++y)
      rel[static_cast<size_t>(x) * H.size + y] =
          in[H.apply2(imp, x, y)] && in[H.apply2(imp, y, x)];
  auto part = Partition::from_relation(H.size, rel);
  auto q = quotient(Hp, part);
  return {q.algebra, q.projection};
}

}  // namespace finact
