// Finite universal-algebra substrate: signatures, terms, identities and
// operation-table algebras on carriers {0..n-1}. Everything is immutable
// after construction and safe to share across threads.

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace finact {

using Elem = int;

// Input/validation failures (bad documents, precondition violations).
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// States the mathematics says are unreachable on valid inputs. Never caught
// and turned into a verdict; a throw here means a bug.
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct OpSym {
  std::string name;
  int arity = 0;
  bool operator==(const OpSym&) const = default;
};

// Operation symbols with arity >= 1; constants listed separately.
struct Signature {
  std::vector<OpSym> ops;
  std::vector<std::string> consts;

  bool operator==(const Signature&) const = default;

  int op_index(const std::string& name) const {
    for (size_t i = 0; i < ops.size(); ++i)
      if (ops[i].name == name) return static_cast<int>(i);
    return -1;
  }

  int const_index(const std::string& name) const {
    for (size_t i = 0; i < consts.size(); ++i)
      if (consts[i] == name) return static_cast<int>(i);
    return -1;
  }

  void validate() const {
    std::vector<std::string> seen;
    for (const auto& o : ops) {
      if (o.arity < 1) throw error("operation " + o.name + " has arity < 1");
      seen.push_back(o.name);
    }
    for (const auto& c : consts) seen.push_back(c);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw error("signature has duplicate symbol names");
  }
};

using SignaturePtr = std::shared_ptr<const Signature>;

inline SignaturePtr make_signature(std::vector<OpSym> ops, std::vector<std::string> consts) {
  Signature s{std::move(ops), std::move(consts)};
  s.validate();
  return std::make_shared<const Signature>(std::move(s));
}

// First-order term over a signature: variable, constant symbol, or an
// operation applied to argument terms.
struct Term {
  enum class Kind { Var, Const, App };
  Kind kind = Kind::Var;
  int index = 0;  // variable index, constant index, or operation index
  std::vector<Term> args;

  static Term var(int i) { return Term{Kind::Var, i, {}}; }
  static Term cst(int i) { return Term{Kind::Const, i, {}}; }
  static Term app(int op, std::vector<Term> as) { return Term{Kind::App, op, std::move(as)}; }

  bool operator==(const Term&) const = default;

  int max_var() const {
    int m = -1;
    if (kind == Kind::Var) m = index;
    for (const auto& a : args) m = std::max(m, a.max_var());
    return m;
  }

  void check(const Signature& sig, int nvars) const {
    switch (kind) {
      case Kind::Var:
        if (index < 0 || index >= nvars) throw error("unbound variable x" + std::to_string(index));
        break;
      case Kind::Const:
        if (index < 0 || index >= static_cast<int>(sig.consts.size()))
          throw error("unknown constant symbol");
        break;
      case Kind::App:
        if (index < 0 || index >= static_cast<int>(sig.ops.size()))
          throw error("unknown operation symbol");
        if (static_cast<int>(args.size()) != sig.ops[index].arity)
          throw error("arity mismatch at " + sig.ops[index].name);
        for (const auto& a : args) a.check(sig, nvars);
        break;
    }
  }

  std::string show(const Signature& sig) const {
    switch (kind) {
      case Kind::Var: return "x" + std::to_string(index);
      case Kind::Const: return sig.consts[index];
      case Kind::App: {
        std::string s = sig.ops[index].name + "(";
        for (size_t i = 0; i < args.size(); ++i) {
          if (i) s += ",";
          s += args[i].show(sig);
        }
        return s + ")";
      }
    }
    return {};
  }
};

struct Identity {
  std::string name;
  int vars = 0;
  Term lhs, rhs;

  void check(const Signature& sig) const {
    lhs.check(sig, vars);
    rhs.check(sig, vars);
  }

  std::string show(const Signature& sig) const {
    return lhs.show(sig) + " = " + rhs.show(sig);
  }
};

// Total operation tables over carrier {0..n-1}. Tables are flat row-major:
// a k-ary table has n^k entries, cell(args) at index Σ args[i]*n^(k-1-i).
struct FiniteAlgebra {
  SignaturePtr sig;
  int size = 0;
  std::vector<std::vector<Elem>> tables;
  std::vector<Elem> constants;
  std::vector<std::string> labels;  // cosmetic; empty or exactly `size` entries

  Elem cst(int ci) const { return constants[ci]; }

  size_t cell(int op, std::span<const Elem> args) const {
    size_t idx = 0;
    for (Elem a : args) idx = idx * size + static_cast<size_t>(a);
    (void)op;
    return idx;
  }

  Elem apply(int op, std::span<const Elem> args) const {
    return tables[op][cell(op, args)];
  }

  Elem apply1(int op, Elem a) const { return tables[op][static_cast<size_t>(a)]; }

  Elem apply2(int op, Elem a, Elem b) const {
    return tables[op][static_cast<size_t>(a) * size + b];
  }

  std::string label(Elem e) const {
    if (!labels.empty()) return labels[e];
    return std::to_string(e);
  }

  void validate() const {
    if (!sig) throw error("algebra has no signature");
    if (size < 0) throw error("carrier size negative");
    // the empty algebra exists only for constant-free signatures
    if (size == 0 && !sig->consts.empty()) throw error("carrier must be non-empty");
    if (tables.size() != sig->ops.size()) throw error("table count does not match signature");
    for (size_t i = 0; i < tables.size(); ++i) {
      size_t want = 1;
      for (int k = 0; k < sig->ops[i].arity; ++k) want *= static_cast<size_t>(size);
      if (tables[i].size() != want)
        throw error("table for " + sig->ops[i].name + " has wrong size");
      for (Elem v : tables[i])
        if (v < 0 || v >= size) throw error("table entry out of carrier in " + sig->ops[i].name);
    }
    if (constants.size() != sig->consts.size()) throw error("constant count mismatch");
    for (size_t i = 0; i < constants.size(); ++i)
      if (constants[i] < 0 || constants[i] >= size)
        throw error("constant " + sig->consts[i] + " out of carrier");
    if (!labels.empty() && labels.size() != static_cast<size_t>(size))
      throw error("label count mismatch");
  }

  // Structural equality on the nose (same carrier, tables, constants).
  bool same_tables(const FiniteAlgebra& other) const {
    return size == other.size && tables == other.tables && constants == other.constants &&
           *sig == *other.sig;
  }
};

using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

inline AlgebraPtr make_algebra(FiniteAlgebra a) {
  a.validate();
  return std::make_shared<const FiniteAlgebra>(std::move(a));
}

inline Elem eval_term(const FiniteAlgebra& A, const Term& t, std::span<const Elem> env) {
  switch (t.kind) {
    case Term::Kind::Var:
      if (t.index >= static_cast<int>(env.size())) throw error("unbound variable in evaluation");
      return env[t.index];
    case Term::Kind::Const:
      return A.cst(t.index);
    case Term::Kind::App: {
      std::vector<Elem> vals(t.args.size());
      for (size_t i = 0; i < t.args.size(); ++i) vals[i] = eval_term(A, t.args[i], env);
      return A.apply(t.index, vals);
    }
  }
  throw internal_error("unreachable term kind");
}

// Advances an assignment vector through {0..n-1}^k in lexicographic order.
inline bool next_assignment(std::vector<Elem>& env, int n) {
  for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i) {
    if (++env[i] < n) return true;
    env[i] = 0;
  }
  return false;
}

struct IdentityCheck {
  bool satisfied = true;
  std::vector<Elem> witness;  // minimal-lexicographic failing assignment
  Elem lhs_value = 0, rhs_value = 0;
};

// Exhaustive evaluation over all assignments; the first (lex-least) failure
// becomes the witness.
inline IdentityCheck check_identity(const FiniteAlgebra& A, const Identity& id) {
  id.check(*A.sig);
  if (A.size == 0) return {};  // vacuous on the empty algebra
  std::vector<Elem> env(static_cast<size_t>(id.vars), 0);
  if (id.vars == 0) {
    Elem l = eval_term(A, id.lhs, env), r = eval_term(A, id.rhs, env);
    if (l != r) return {false, env, l, r};
    return {};
  }
  do {
    Elem l = eval_term(A, id.lhs, env), r = eval_term(A, id.rhs, env);
    if (l != r) return {false, env, l, r};
  } while (next_assignment(env, A.size));
  return {};
}

// Componentwise direct product (shared signature).
inline AlgebraPtr direct_product(const FiniteAlgebra& A, const FiniteAlgebra& B) {
  if (!(*A.sig == *B.sig)) throw error("direct product needs a common signature");
  FiniteAlgebra P;
  P.sig = A.sig;
  P.size = A.size * B.size;
  auto pack = [&](Elem a, Elem b) { return a * B.size + b; };
  for (size_t op = 0; op < A.sig->ops.size(); ++op) {
    int k = A.sig->ops[op].arity;
    size_t cells = 1;
    for (int i = 0; i < k; ++i) cells *= static_cast<size_t>(P.size);
    std::vector<Elem> tab(cells);
    std::vector<Elem> args(k, 0), as(k), bs(k);
    size_t idx = 0;
    do {
      for (int i = 0; i < k; ++i) {
        as[i] = args[i] / B.size;
        bs[i] = args[i] % B.size;
      }
      tab[idx++] = pack(A.apply(op, as), B.apply(op, bs));
    } while (next_assignment(args, P.size));
    P.tables.push_back(std::move(tab));
  }
  for (size_t c = 0; c < A.constants.size(); ++c)
    P.constants.push_back(pack(A.constants[c], B.constants[c]));
  return make_algebra(std::move(P));
}

}  // namespace finact
