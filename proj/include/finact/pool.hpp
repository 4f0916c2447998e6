// Stock algebras used throughout: Łukasiewicz chains, Boolean products,
// prime fields and small matrix algebras, Gödel chains, modular rings,
// pointed sets and plain sets.

#pragma once

#include "finact/varieties.hpp"

namespace finact {

// Łukasiewicz chain 0 < 1/(n-1) < ... < 1 in the MV signature.
inline AlgebraPtr lukasiewicz_mv(int n) {
  if (n < 1) throw error("chain needs n >= 1");
  FiniteAlgebra A;
  A.sig = mv_sig();
  A.size = n;
  std::vector<Elem> oplus(static_cast<size_t>(n) * n), neg(n);
  for (Elem x = 0; x < n; ++x) {
    neg[x] = n - 1 - x;
    for (Elem y = 0; y < n; ++y) oplus[static_cast<size_t>(x) * n + y] = std::min(n - 1, x + y);
  }
  A.tables = {std::move(oplus), std::move(neg)};
  A.constants = {0};
  return make_algebra(std::move(A));
}

// The same chain as a (bounded) Wajsberg hoop.
inline AlgebraPtr lukasiewicz_hoop(int n, bool with_zero) {
  if (n < 1) throw error("chain needs n >= 1");
  FiniteAlgebra A;
  A.sig = hoop_sig(false, with_zero);
  A.size = n;
  std::vector<Elem> mul(static_cast<size_t>(n) * n), imp(static_cast<size_t>(n) * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      mul[static_cast<size_t>(x) * n + y] = std::max(0, x + y - (n - 1));
      imp[static_cast<size_t>(x) * n + y] = std::min(n - 1, n - 1 - x + y);
    }
  A.tables = {std::move(mul), std::move(imp)};
  A.constants = {n - 1};
  if (with_zero) A.constants.push_back(0);
  return make_algebra(std::move(A));
}

inline AlgebraPtr l2_bwhoop() { return lukasiewicz_hoop(2, true); }
inline AlgebraPtr trivial_whoop() { return lukasiewicz_hoop(1, false); }

// Gödel chain (min-conjunction); a basic hoop that is not a product hoop
// for n >= 3.
inline AlgebraPtr godel_hoop(int n) {
  FiniteAlgebra A;
  A.sig = hoop_sig(true, false);
  A.size = n;
  std::vector<Elem> mul(static_cast<size_t>(n) * n), imp(static_cast<size_t>(n) * n),
      join(static_cast<size_t>(n) * n);
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      mul[static_cast<size_t>(x) * n + y] = std::min(x, y);
      imp[static_cast<size_t>(x) * n + y] = (x <= y) ? n - 1 : y;
      join[static_cast<size_t>(x) * n + y] = std::max(x, y);
    }
  A.tables = {std::move(mul), std::move(imp), std::move(join)};
  A.constants = {n - 1};
  return make_algebra(std::move(A));
}

// Two-element product hoop {0 < 1} with idempotent product.
inline AlgebraPtr two_element_phoop() { return godel_hoop(2); }
inline AlgebraPtr trivial_phoop() { return godel_hoop(1); }

inline AlgebraPtr boolean_phoop(int k) {
  AlgebraPtr p = two_element_phoop();
  AlgebraPtr out = trivial_phoop();
  for (int i = 0; i < k; ++i) out = direct_product(*out, *p);
  return out;
}

// Boolean algebra 2^k in the BL signature.
inline AlgebraPtr boolean_pralg(int k) {
  FiniteAlgebra base;
  base.sig = bl_sig();
  base.size = 2;
  base.tables = {
      {0, 1, 1, 1},  // join
      {0, 0, 0, 1},  // meet
      {0, 0, 0, 1},  // mul
      {1, 1, 0, 1},  // imp
  };
  base.constants = {0, 1};
  AlgebraPtr two = make_algebra(std::move(base));
  FiniteAlgebra one;
  one.sig = bl_sig();
  one.size = 1;
  one.tables = {{0}, {0}, {0}, {0}};
  one.constants = {0, 0};
  AlgebraPtr out = make_algebra(std::move(one));
  for (int i = 0; i < k; ++i) out = direct_product(*out, *two);
  return out;
}

// F_p as an algebra over itself; unital variant carries the constant one.
inline AlgebraPtr fp_algebra(int p, bool unital) {
  FiniteAlgebra A;
  A.sig = alg_sig(p, unital);
  A.size = p;
  std::vector<Elem> add(static_cast<size_t>(p) * p), mul(static_cast<size_t>(p) * p), neg(p);
  for (Elem x = 0; x < p; ++x) {
    neg[x] = (p - x) % p;
    for (Elem y = 0; y < p; ++y) {
      add[static_cast<size_t>(x) * p + y] = (x + y) % p;
      mul[static_cast<size_t>(x) * p + y] = (x * y) % p;
    }
  }
  A.tables = {std::move(add), std::move(mul), std::move(neg)};
  for (int a = 0; a < p; ++a) {
    std::vector<Elem> sa(p);
    for (Elem x = 0; x < p; ++x) sa[x] = (a * x) % p;
    A.tables.push_back(std::move(sa));
  }
  A.constants = {0};
  if (unital) A.constants.push_back(1);
  return make_algebra(std::move(A));
}

// F_p x F_p with componentwise operations.
inline AlgebraPtr fp_square(int p, bool unital) {
  auto f = fp_algebra(p, unital);
  return direct_product(*f, *f);
}

// Null algebra on the vector space F_p^dim (xy = 0).
inline AlgebraPtr null_algebra(int p, int dim) {
  int n = 1;
  for (int i = 0; i < dim; ++i) n *= p;
  FiniteAlgebra A;
  A.sig = alg_sig(p, false);
  A.size = n;
  auto digits = [&](Elem e) {
    std::vector<int> d(dim);
    for (int i = dim - 1; i >= 0; --i) {
      d[i] = e % p;
      e /= p;
    }
    return d;
  };
  auto pack = [&](const std::vector<int>& d) {
    Elem e = 0;
    for (int i = 0; i < dim; ++i) e = e * p + d[i];
    return e;
  };
  std::vector<Elem> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n, 0), neg(n);
  for (Elem x = 0; x < n; ++x) {
    auto dx = digits(x);
    std::vector<int> dn(dim);
    for (int i = 0; i < dim; ++i) dn[i] = (p - dx[i]) % p;
    neg[x] = pack(dn);
    for (Elem y = 0; y < n; ++y) {
      auto dy = digits(y);
      std::vector<int> ds(dim);
      for (int i = 0; i < dim; ++i) ds[i] = (dx[i] + dy[i]) % p;
      add[static_cast<size_t>(x) * n + y] = pack(ds);
    }
  }
  A.tables = {std::move(add), std::move(mul), std::move(neg)};
  for (int a = 0; a < p; ++a) {
    std::vector<Elem> sa(n);
    for (Elem x = 0; x < n; ++x) {
      auto dx = digits(x);
      std::vector<int> dm(dim);
      for (int i = 0; i < dim; ++i) dm[i] = (a * dx[i]) % p;
      sa[x] = pack(dm);
    }
    A.tables.push_back(std::move(sa));
  }
  A.constants = {0};
  return make_algebra(std::move(A));
}

// Upper triangular 2x2 matrices over F_p. Element (a,b,c) encodes the matrix
// rows [a b; 0 c] at index a*p^2 + b*p + c.
inline AlgebraPtr ut2_algebra(int p, bool unital) {
  int n = p * p * p;
  FiniteAlgebra A;
  A.sig = alg_sig(p, unital);
  A.size = n;
  auto unpack = [&](Elem e) {
    return std::array<int, 3>{e / (p * p), (e / p) % p, e % p};
  };
  auto pack = [&](int a, int b, int c) { return (a * p + b) * p + c; };
  std::vector<Elem> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n), neg(n);
  for (Elem x = 0; x < n; ++x) {
    auto [a, b, c] = unpack(x);
    neg[x] = pack((p - a) % p, (p - b) % p, (p - c) % p);
    for (Elem y = 0; y < n; ++y) {
      auto [d, e, f] = unpack(y);
      add[static_cast<size_t>(x) * n + y] = pack((a + d) % p, (b + e) % p, (c + f) % p);
      mul[static_cast<size_t>(x) * n + y] = pack((a * d) % p, (a * e + b * f) % p, (c * f) % p);
    }
  }
  A.tables = {std::move(add), std::move(mul), std::move(neg)};
  for (int s = 0; s < p; ++s) {
    std::vector<Elem> sa(n);
    for (Elem x = 0; x < n; ++x) {
      auto [a, b, c] = unpack(x);
      sa[x] = pack((s * a) % p, (s * b) % p, (s * c) % p);
    }
    A.tables.push_back(std::move(sa));
  }
  A.constants = {0};
  if (unital) A.constants.push_back(pack(1, 0, 1));
  return make_algebra(std::move(A));
}

// Z/n in the ring signature.
inline AlgebraPtr zmod_ring(int n, bool unital) {
  FiniteAlgebra A;
  A.sig = rng_sig(unital);
  A.size = n;
  std::vector<Elem> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n), neg(n);
  for (Elem x = 0; x < n; ++x) {
    neg[x] = (n - x) % n;
    for (Elem y = 0; y < n; ++y) {
      add[static_cast<size_t>(x) * n + y] = (x + y) % n;
      mul[static_cast<size_t>(x) * n + y] = (x * y) % n;
    }
  }
  A.tables = {std::move(add), std::move(mul), std::move(neg)};
  A.constants = {0};
  if (unital) A.constants.push_back(1 % n);
  return make_algebra(std::move(A));
}

inline AlgebraPtr pointed_set(int n, Elem pt = 0) {
  if (n < 1) throw error("pointed set needs at least one element");
  FiniteAlgebra A;
  A.sig = pset_sig();
  A.size = n;
  A.constants = {pt};
  return make_algebra(std::move(A));
}

inline AlgebraPtr plain_set(int n) {
  FiniteAlgebra A;
  A.sig = set_sig();
  A.size = n;
  return make_algebra(std::move(A));
}

// Reduct along matching symbol names (target signature must be a subset).
inline AlgebraPtr reduct(const FiniteAlgebra& A, SignaturePtr to) {
  FiniteAlgebra R;
  R.sig = to;
  R.size = A.size;
  for (const auto& op : to->ops) {
    int i = A.sig->op_index(op.name);
    if (i < 0 || A.sig->ops[i].arity != op.arity)
      throw error("reduct: missing operation " + op.name);
    R.tables.push_back(A.tables[i]);
  }
  for (const auto& c : to->consts) {
    int i = A.sig->const_index(c);
    if (i < 0) throw error("reduct: missing constant " + c);
    R.constants.push_back(A.constants[i]);
  }
  R.labels = A.labels;
  return make_algebra(std::move(R));
}

}  // namespace finact
