// Functions between finite algebras: homomorphism checking, subuniverse
// generation, and unique extension of partial maps along generated algebras.

#pragma once

#include <optional>
#include <set>

#include "finact/core.hpp"

namespace finact {

struct FunctionMap {
  AlgebraPtr source, target;
  std::vector<Elem> map;  // total on the source carrier

  Elem operator()(Elem e) const { return map[e]; }

  void validate() const {
    if (!source || !target) throw error("function map without endpoints");
    if (map.size() != static_cast<size_t>(source->size)) throw error("map is not total");
    for (Elem v : map)
      if (v < 0 || v >= target->size) throw error("map value out of target carrier");
  }

  bool injective() const {
    std::vector<char> seen(target->size, 0);
    for (Elem v : map) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
    return true;
  }

  bool surjective() const {
    std::vector<char> seen(target->size, 0);
    for (Elem v : map) seen[v] = 1;
    for (char c : seen)
      if (!c) return false;
    return true;
  }
};

inline FunctionMap identity_map(AlgebraPtr A) {
  FunctionMap f{A, A, {}};
  f.map.resize(A->size);
  for (Elem e = 0; e < A->size; ++e) f.map[e] = e;
  return f;
}

inline FunctionMap compose(const FunctionMap& g, const FunctionMap& f) {
  // g after f
  FunctionMap h{f.source, g.target, {}};
  h.map.resize(f.map.size());
  for (size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

struct HomCheck {
  bool ok = true;
  // on failure: the violating operation (or constant) and argument tuple
  int op = -1;                 // operation index, or -1 for a constant violation
  int const_index = -1;        // constant index when op == -1
  std::vector<Elem> args;      // argument tuple in the source
  Elem mapped_result = 0;      // f(op_S(args))
  Elem target_result = 0;      // op_T(f(args))
};

// Checks operation compatibility over all tuples and preservation of the
// flagged constants. Flags default to every constant of the signature.
inline HomCheck is_homomorphism(const FunctionMap& f,
                                std::optional<std::vector<int>> const_flags = std::nullopt) {
  f.validate();
  const FiniteAlgebra& S = *f.source;
  const FiniteAlgebra& T = *f.target;
  if (!(*S.sig == *T.sig)) throw error("homomorphism check needs a common signature");
  std::vector<int> flags;
  if (const_flags)
    flags = *const_flags;
  else
    for (size_t c = 0; c < S.sig->consts.size(); ++c) flags.push_back(static_cast<int>(c));
  for (int c : flags) {
    if (c < 0 || c >= static_cast<int>(S.sig->consts.size()))
      throw error("flagged constant out of signature");
    if (f(S.constants[c]) != T.constants[c]) {
      HomCheck bad;
      bad.ok = false;
      bad.op = -1;
      bad.const_index = c;
      bad.mapped_result = f(S.constants[c]);
      bad.target_result = T.constants[c];
      return bad;
    }
  }
  for (size_t op = 0; op < S.sig->ops.size(); ++op) {
    int k = S.sig->ops[op].arity;
    std::vector<Elem> args(k, 0), imgs(k);
    do {
      for (int i = 0; i < k; ++i) imgs[i] = f(args[i]);
      Elem lhs = f(S.apply(op, args));
      Elem rhs = T.apply(op, imgs);
      if (lhs != rhs) {
        HomCheck bad;
        bad.ok = false;
        bad.op = static_cast<int>(op);
        bad.args = args;
        bad.mapped_result = lhs;
        bad.target_result = rhs;
        return bad;
      }
    } while (next_assignment(args, S.size));
  }
  return {};
}

// Least subset containing the seeds and all constants, closed under every
// operation. Fixpoint is reached in at most `size` rounds.
inline std::vector<Elem> generated_subuniverse(const FiniteAlgebra& A,
                                               std::span<const Elem> seeds) {
  std::vector<char> in(A.size, 0);
  for (Elem s : seeds) {
    if (s < 0 || s >= A.size) throw error("seed out of carrier");
    in[s] = 1;
  }
  for (Elem c : A.constants) in[c] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (size_t op = 0; op < A.sig->ops.size(); ++op) {
      int k = A.sig->ops[op].arity;
      std::vector<Elem> args(k, 0);
      do {
        bool all = true;
        for (Elem a : args)
          if (!in[a]) {
            all = false;
            break;
          }
        if (all) {
          Elem r = A.apply(op, args);
          if (!in[r]) {
            in[r] = 1;
            grew = true;
          }
        }
      } while (next_assignment(args, A.size));
    }
  }
  std::vector<Elem> out;
  for (Elem e = 0; e < A.size; ++e)
    if (in[e]) out.push_back(e);
  return out;
}

// How an element's image became forced during extension.
struct Forcing {
  bool seeded = false;  // given in the partial map (or a signature constant)
  int op = -1;
  std::vector<Elem> args;  // source argument tuple with op(args) = the element
};

struct ExtendConflict {
  Elem element = 0;        // source element with two different forced images
  Elem existing = 0, derived = 0;
  Forcing first, second;
  std::string describe(const FiniteAlgebra& S) const {
    auto show = [&](const Forcing& fo) -> std::string {
      if (fo.seeded) return "seed";
      std::string s = S.sig->ops[fo.op].name + "(";
      for (size_t i = 0; i < fo.args.size(); ++i) {
        if (i) s += ",";
        s += S.label(fo.args[i]);
      }
      return s + ")";
    };
    return "element " + S.label(element) + " forced to " + std::to_string(existing) + " via " +
           show(first) + " but to " + std::to_string(derived) + " via " + show(second);
  }
};

struct ExtendResult {
  bool domain_generates = true;
  std::optional<FunctionMap> hom;        // present iff a (unique) extension exists
  std::optional<ExtendConflict> conflict;
};

// Worklist closure: images of generated elements are forced one derivation
// step at a time; a disagreement between two derivations of one element is
// returned as the conflict witness. The generating precondition makes the
// extension unique when it exists.
inline ExtendResult extend_homomorphism(AlgebraPtr source, AlgebraPtr target,
                                        const std::vector<std::pair<Elem, Elem>>& partial) {
  const FiniteAlgebra& S = *source;
  const FiniteAlgebra& T = *target;
  if (!(*S.sig == *T.sig)) throw error("extension needs a common signature");

  std::vector<Elem> seeds;
  for (auto& [a, b] : partial) seeds.push_back(a);
  auto gen = generated_subuniverse(S, seeds);
  ExtendResult res;
  if (static_cast<int>(gen.size()) != S.size) {
    res.domain_generates = false;
    return res;
  }

  std::vector<Elem> img(S.size, -1);
  std::vector<Forcing> why(S.size);
  auto assign = [&](Elem e, Elem v, Forcing f) -> bool {
    if (img[e] == -1) {
      img[e] = v;
      why[e] = std::move(f);
      return true;
    }
    if (img[e] != v) {
      res.conflict = ExtendConflict{e, img[e], v, why[e], std::move(f)};
      return false;
    }
    return true;
  };

  for (auto& [a, b] : partial) {
    if (a < 0 || a >= S.size || b < 0 || b >= T.size) throw error("partial map out of range");
    if (!assign(a, b, Forcing{true, -1, {}})) return res;
  }
  for (size_t c = 0; c < S.sig->consts.size(); ++c)
    if (!assign(S.constants[c], T.constants[c], Forcing{true, -1, {}})) return res;

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t op = 0; op < S.sig->ops.size(); ++op) {
      int k = S.sig->ops[op].arity;
      std::vector<Elem> args(k, 0), imgs(k);
      do {
        bool all = true;
        for (int i = 0; i < k; ++i) {
          if (img[args[i]] == -1) {
            all = false;
            break;
          }
          imgs[i] = img[args[i]];
        }
        if (all) {
          Elem src = S.apply(op, args);
          Elem val = T.apply(op, imgs);
          int before = img[src];
          if (!assign(src, val, Forcing{false, static_cast<int>(op), args})) return res;
          if (before == -1) changed = true;
        }
      } while (next_assignment(args, S.size));
    }
  }

  for (Elem e = 0; e < S.size; ++e)
    if (img[e] == -1) throw internal_error("generated element left unmapped");

  FunctionMap f{source, target, std::move(img)};
  // At the fixpoint every fully-mapped tuple was checked, so this holds; keep
  // the full check as a safety net.
  if (!is_homomorphism(f).ok) throw internal_error("extension closure produced a non-hom");
  res.hom = std::move(f);
  return res;
}

}  // namespace finact
