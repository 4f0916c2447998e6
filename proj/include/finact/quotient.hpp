// Partitions, congruence validation, and quotient algebras.

#pragma once

#include "finact/maps.hpp"

namespace finact {

// block[e] is the block id of e; ids are normalized to first-occurrence order.
struct Partition {
  std::vector<int> block;

  int blocks() const {
    int m = -1;
    for (int b : block) m = std::max(m, b);
    return m + 1;
  }

  static Partition normalized(std::vector<int> raw) {
    std::vector<int> remap(raw.size(), -1);
    int next = 0;
    Partition p;
    p.block.resize(raw.size());
    for (size_t e = 0; e < raw.size(); ++e) {
      int b = raw[e];
      if (b < 0 || b >= static_cast<int>(raw.size())) throw error("partition block out of range");
      if (remap[b] == -1) remap[b] = next++;
      p.block[e] = remap[b];
    }
    return p;
  }

  static Partition finest(int n) {
    Partition p;
    p.block.resize(n);
    for (int i = 0; i < n; ++i) p.block[i] = i;
    return p;
  }

  static Partition coarsest(int n) {
    Partition p;
    p.block.assign(n, 0);
    return p;
  }

  // from an equivalence given as a boolean matrix
  static Partition from_relation(int n, const std::vector<char>& rel) {
    std::vector<int> raw(n, -1);
    for (int i = 0; i < n; ++i) {
      if (raw[i] != -1) continue;
      raw[i] = i;
      for (int j = i + 1; j < n; ++j)
        if (rel[static_cast<size_t>(i) * n + j]) raw[j] = i;
    }
    return normalized(std::move(raw));
  }
};

struct CongruenceCheck {
  bool ok = true;
  int op = -1;
  std::vector<Elem> args_a, args_b;  // blockwise-equal tuples with inequivalent results
};

// Direct check of operation compatibility over all pairs of blockwise-equal
// argument tuples. Carriers are small enough that O(n^2k) is fine.
inline CongruenceCheck congruence_check(const FiniteAlgebra& A, const Partition& p) {
  if (p.block.size() != static_cast<size_t>(A.size)) throw error("partition size mismatch");
  for (size_t op = 0; op < A.sig->ops.size(); ++op) {
    int k = A.sig->ops[op].arity;
    std::vector<Elem> a(k, 0);
    do {
      std::vector<Elem> b(k, 0);
      do {
        bool rel = true;
        for (int i = 0; i < k; ++i)
          if (p.block[a[i]] != p.block[b[i]]) {
            rel = false;
            break;
          }
        if (rel && p.block[A.apply(op, a)] != p.block[A.apply(op, b)])
          return {false, static_cast<int>(op), a, b};
      } while (next_assignment(b, A.size));
    } while (next_assignment(a, A.size));
  }
  return {};
}

struct QuotientResult {
  AlgebraPtr algebra;      // carrier = blocks, in first-occurrence order
  FunctionMap projection;  // surjective homomorphism A -> A/~
};

inline QuotientResult quotient(AlgebraPtr Ap, const Partition& p) {
  const FiniteAlgebra& A = *Ap;
  auto cc = congruence_check(A, p);
  if (!cc.ok)
    throw error("partition is not a congruence: operation " + A.sig->ops[cc.op].name +
                " is incompatible");
  int m = p.blocks();
  std::vector<Elem> rep(m, -1);
  for (Elem e = 0; e < A.size; ++e)
    if (rep[p.block[e]] == -1) rep[p.block[e]] = e;

  FiniteAlgebra Q;
  Q.sig = A.sig;
  Q.size = m;
  for (size_t op = 0; op < A.sig->ops.size(); ++op) {
    int k = A.sig->ops[op].arity;
    size_t cells = 1;
    for (int i = 0; i < k; ++i) cells *= static_cast<size_t>(m);
    std::vector<Elem> tab(cells);
    std::vector<Elem> args(k, 0), reps(k);
    size_t idx = 0;
    do {
      for (int i = 0; i < k; ++i) reps[i] = rep[args[i]];
      tab[idx++] = p.block[A.apply(op, reps)];
    } while (next_assignment(args, m));
    Q.tables.push_back(std::move(tab));
  }
  for (Elem c : A.constants) Q.constants.push_back(p.block[c]);

  QuotientResult out;
  out.algebra = make_algebra(std::move(Q));
  out.projection = FunctionMap{Ap, out.algebra, {}};
  out.projection.map.resize(A.size);
  for (Elem e = 0; e < A.size; ++e) out.projection.map[e] = p.block[e];
  if (!is_homomorphism(out.projection).ok)
    throw internal_error("quotient projection is not a homomorphism");
  return out;
}

// Induced subalgebra on a subset (must be closed under operations and
// contain the constants); `embed` maps new indices to old ones.
struct Subalgebra {
  AlgebraPtr algebra;
  std::vector<Elem> embed;
};

inline Subalgebra induced_subalgebra(AlgebraPtr Ap, std::span<const Elem> subset) {
  const FiniteAlgebra& A = *Ap;
  std::vector<Elem> elems(subset.begin(), subset.end());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  std::vector<int> pos(A.size, -1);
  for (size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
  for (Elem c : A.constants)
    if (pos[c] == -1) throw error("subset misses a constant");
  int m = static_cast<int>(elems.size());
  FiniteAlgebra S;
  S.sig = A.sig;
  S.size = m;
  for (size_t op = 0; op < A.sig->ops.size(); ++op) {
    int k = A.sig->ops[op].arity;
    size_t cells = 1;
    for (int i = 0; i < k; ++i) cells *= static_cast<size_t>(m);
    std::vector<Elem> tab(cells);
    std::vector<Elem> args(k, 0), olds(k);
    size_t idx = 0;
    do {
      for (int i = 0; i < k; ++i) olds[i] = elems[args[i]];
      Elem r = A.apply(op, olds);
      if (pos[r] == -1) throw error("subset not closed under " + A.sig->ops[op].name);
      tab[idx++] = pos[r];
    } while (next_assignment(args, m));
    S.tables.push_back(std::move(tab));
  }
  for (Elem c : A.constants) S.constants.push_back(pos[c]);
  if (!A.labels.empty())
    for (Elem e : elems) S.labels.push_back(A.labels[e]);
  return {make_algebra(std::move(S)), std::move(elems)};
}

}  // namespace finact
