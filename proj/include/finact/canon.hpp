// Canonical forms and isomorphism search for finite algebras. The canonical
// key of an algebra is the least encoding (constants, then tables row-major)
// over all carrier permutations; two algebras are isomorphic iff their keys
// match. Isomorphisms themselves are found by backtracking and returned
// deterministically (lexicographically least map).

#pragma once

#include <functional>

#include "finact/maps.hpp"

namespace finact {

using CanonKey = std::vector<Elem>;

namespace detail {

// Fills `scratch` with the encoding of A relabelled by perm and reports
// whether it is strictly smaller than `best`; aborts as soon as it is known
// to be greater or equal. An empty `best` counts as +infinity.
inline bool permuted_key_less(const FiniteAlgebra& A, const std::vector<Elem>& perm,
                              const CanonKey& best, CanonKey& scratch) {
  scratch.clear();
  std::vector<Elem> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<Elem>(i);
  int state = best.empty() ? -1 : 0;  // -1: already smaller, 0: equal so far
  auto push = [&](Elem v) -> bool {
    if (state == 0) {
      Elem b = best[scratch.size()];
      if (v > b) return false;
      if (v < b) state = -1;
    }
    scratch.push_back(v);
    return true;
  };
  for (Elem c : A.constants)
    if (!push(perm[c])) return false;
  int n = A.size;
  for (size_t op = 0; op < A.sig->ops.size(); ++op) {
    int k = A.sig->ops[op].arity;
    std::vector<Elem> args(k, 0), src(k);
    do {
      for (int i = 0; i < k; ++i) src[i] = inv[args[i]];
      if (!push(perm[A.apply(op, src)])) return false;
    } while (next_assignment(args, n));
  }
  return state == -1;
}

}  // namespace detail

inline CanonKey canonical_key(const FiniteAlgebra& A) {
  std::vector<Elem> perm(A.size);
  for (int i = 0; i < A.size; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end());
  CanonKey best, scratch;
  do {
    if (detail::permuted_key_less(A, perm, best, scratch)) best.swap(scratch);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

namespace detail {

// Backtracking over images 0..at; candidates tried ascending, so the first
// complete map is lexicographically least. `emit` returns true to stop.
inline bool iso_backtrack(const FiniteAlgebra& A, const FiniteAlgebra& B, std::vector<Elem>& img,
                          std::vector<Elem>& rimg, int at,
                          const std::function<bool(const std::vector<Elem>&)>& emit) {
  int n = A.size;
  if (at == n) return emit(img);
  for (Elem cand = 0; cand < n; ++cand) {
    if (rimg[cand] != -1) continue;
    img[at] = cand;
    rimg[cand] = at;
    bool ok = true;
    for (size_t c = 0; c < A.constants.size() && ok; ++c)
      if (A.constants[c] == at && cand != B.constants[c]) ok = false;
    for (size_t op = 0; op < A.sig->ops.size() && ok; ++op) {
      int k = A.sig->ops[op].arity;
      std::vector<Elem> args(k, 0), imgs(k);
      do {
        bool assigned = true, touches = false;
        for (int i = 0; i < k; ++i) {
          if (args[i] > at) {
            assigned = false;
            break;
          }
          if (args[i] == at) touches = true;
          imgs[i] = img[args[i]];
        }
        if (!assigned) continue;
        Elem r = A.apply(op, args);
        if (!touches && r != at) continue;  // handled at an earlier level
        Elem want = B.apply(op, imgs);
        if (r <= at) {
          if (want != img[r]) {
            ok = false;
            break;
          }
        } else if (rimg[want] != -1) {
          ok = false;  // forced image already taken by another element
          break;
        }
      } while (next_assignment(args, n));
    }
    if (ok && iso_backtrack(A, B, img, rimg, at + 1, emit)) return true;
    rimg[cand] = -1;
  }
  img[at] = -1;
  return false;
}

}  // namespace detail

// Constant-preserving bijective homomorphism, deterministically chosen
// (lexicographically least as a table); absent if none exists.
inline std::optional<FunctionMap> find_isomorphism(AlgebraPtr Ap, AlgebraPtr Bp) {
  const FiniteAlgebra& A = *Ap;
  const FiniteAlgebra& B = *Bp;
  if (!(*A.sig == *B.sig)) throw error("isomorphism needs a common signature");
  if (A.size != B.size) return std::nullopt;
  std::vector<Elem> img(A.size, -1), rimg(A.size, -1);
  std::optional<FunctionMap> out;
  detail::iso_backtrack(A, B, img, rimg, 0, [&](const std::vector<Elem>& found) {
    FunctionMap f{Ap, Bp, found};
    if (is_homomorphism(f).ok && f.injective()) {
      out = std::move(f);
      return true;
    }
    return false;
  });
  return out;
}

// All automorphism tables, in lexicographic order.
inline std::vector<std::vector<Elem>> automorphisms(AlgebraPtr Ap) {
  const FiniteAlgebra& A = *Ap;
  std::vector<Elem> img(A.size, -1), rimg(A.size, -1);
  std::vector<std::vector<Elem>> out;
  detail::iso_backtrack(A, A, img, rimg, 0, [&](const std::vector<Elem>& found) {
    FunctionMap f{Ap, Ap, found};
    if (is_homomorphism(f).ok && f.injective()) out.push_back(found);
    return false;  // keep searching
  });
  return out;
}

// Relabel A along a bijection phi (new element phi(e) plays the role of e).
inline AlgebraPtr transport(const FiniteAlgebra& A, const std::vector<Elem>& phi) {
  std::vector<Elem> inv(A.size);
  for (int i = 0; i < A.size; ++i) inv[phi[i]] = i;
  FiniteAlgebra B;
  B.sig = A.sig;
  B.size = A.size;
  for (size_t op = 0; op < A.sig->ops.size(); ++op) {
    int k = A.sig->ops[op].arity;
    std::vector<Elem> tab(A.tables[op].size());
    std::vector<Elem> args(k, 0), src(k);
    size_t idx = 0;
    do {
      for (int i = 0; i < k; ++i) src[i] = inv[args[i]];
      tab[idx++] = phi[A.apply(op, src)];
    } while (next_assignment(args, A.size));
    B.tables.push_back(std::move(tab));
  }
  for (Elem c : A.constants) B.constants.push_back(phi[c]);
  B.labels.clear();
  return make_algebra(std::move(B));
}

}  // namespace finact
