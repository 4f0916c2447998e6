// Built-in equational classes: hoops and their subvarieties, MV-algebras,
// BL- and product algebras, non-associative algebras over a prime field,
// rngs/rings, and (pointed) sets. Each VarietySpec carries the defining
// identities plus the designated kernel constant used for kernels of
// homomorphisms in that class.

#pragma once

#include <map>

#include "finact/core.hpp"

namespace finact {

enum class Family {
  Algebra,       // non-associative algebras over F_p (possibly with unit)
  Rng,           // rings, not necessarily unital
  Ring,          // unital rings
  Hoop,          // hoops and subvarieties in the (mul, imp, [join], one) signature
  Mv,            // MV-algebras in the (oplus, neg, zero) signature
  Bl,            // BL-/product algebras in the (join, meet, mul, imp, zero, one) signature
  PointedSet,
  PlainSet,
};

struct VarietySpec {
  std::string name;
  Family family = Family::Hoop;
  SignaturePtr sig;
  std::vector<Identity> identities;
  std::vector<Identity> prune_hints;  // consequences of the axioms, used only to
                                      // speed up model search
  int kernel_const = -1;              // index into sig->consts, -1 if none
  int prime = 0;                      // algebra families only
  bool unital = false;                // algebra/ring families: has "one"

  void validate() const {
    for (const auto& id : identities) id.check(*sig);
    for (const auto& id : prune_hints) id.check(*sig);
  }
};

// ---------------------------------------------------------------------------
// signatures

inline SignaturePtr hoop_sig(bool with_join, bool with_zero) {
  std::vector<OpSym> ops{{"mul", 2}, {"imp", 2}};
  if (with_join) ops.push_back({"join", 2});
  std::vector<std::string> consts{"one"};
  if (with_zero) consts.push_back("zero");
  return make_signature(std::move(ops), std::move(consts));
}

inline SignaturePtr mv_sig() {
  return make_signature({{"oplus", 2}, {"neg", 1}}, {"zero"});
}

inline SignaturePtr bl_sig() {
  return make_signature({{"join", 2}, {"meet", 2}, {"mul", 2}, {"imp", 2}}, {"zero", "one"});
}

inline SignaturePtr alg_sig(int p, bool unital) {
  std::vector<OpSym> ops{{"add", 2}, {"mul", 2}, {"neg", 1}};
  for (int a = 0; a < p; ++a) ops.push_back({"s" + std::to_string(a), 1});
  std::vector<std::string> consts{"zero"};
  if (unital) consts.push_back("one");
  return make_signature(std::move(ops), std::move(consts));
}

inline SignaturePtr rng_sig(bool unital) {
  std::vector<std::string> consts{"zero"};
  if (unital) consts.push_back("one");
  return make_signature({{"add", 2}, {"mul", 2}, {"neg", 1}}, std::move(consts));
}

inline SignaturePtr pset_sig() { return make_signature({}, {"pt"}); }
inline SignaturePtr set_sig() { return make_signature({}, {}); }

// ---------------------------------------------------------------------------
// identity builders

namespace ids {

inline Term V(int i) { return Term::var(i); }

struct Ops {
  const Signature& sig;
  Term c(const std::string& n) const {
    int i = sig.const_index(n);
    if (i < 0) throw internal_error("missing constant " + n);
    return Term::cst(i);
  }
  Term o(const std::string& n, std::vector<Term> args) const {
    int i = sig.op_index(n);
    if (i < 0) throw internal_error("missing operation " + n);
    return Term::app(i, std::move(args));
  }
  Term mul(Term a, Term b) const { return o("mul", {std::move(a), std::move(b)}); }
  Term imp(Term a, Term b) const { return o("imp", {std::move(a), std::move(b)}); }
  Term join(Term a, Term b) const { return o("join", {std::move(a), std::move(b)}); }
  Term meet(Term a, Term b) const { return o("meet", {std::move(a), std::move(b)}); }
  Term add(Term a, Term b) const { return o("add", {std::move(a), std::move(b)}); }
  Term neg(Term a) const { return o("neg", {std::move(a)}); }
  Term oplus(Term a, Term b) const { return o("oplus", {std::move(a), std::move(b)}); }
  Term smul(int a, Term t) const { return o("s" + std::to_string(a), {std::move(t)}); }
};

inline std::vector<Identity> hoop_axioms(const Signature& sig) {
  Ops t{sig};
  Term x = V(0), y = V(1), z = V(2);
  return {
      {"mul-comm", 2, t.mul(x, y), t.mul(y, x)},
      {"mul-assoc", 3, t.mul(t.mul(x, y), z), t.mul(x, t.mul(y, z))},
      {"mul-unit", 1, t.mul(x, t.c("one")), x},
      {"H2", 1, t.imp(x, x), t.c("one")},
      {"H3", 2, t.mul(x, t.imp(x, y)), t.mul(y, t.imp(y, x))},
      {"H4", 3, t.imp(t.mul(x, y), z), t.imp(x, t.imp(y, z))},
  };
}

inline Identity wajsberg_axiom(const Signature& sig) {
  Ops t{sig};
  Term x = V(0), y = V(1);
  return {"W", 2, t.imp(t.imp(x, y), y), t.imp(t.imp(y, x), x)};
}

inline Identity bound_axiom(const Signature& sig) {
  Ops t{sig};
  return {"bound", 1, t.imp(t.c("zero"), V(0)), t.c("one")};
}

inline std::vector<Identity> join_axioms(const Signature& sig) {
  Ops t{sig};
  Term x = V(0), y = V(1), z = V(2);
  return {
      {"join-comm", 2, t.join(x, y), t.join(y, x)},
      {"join-assoc", 3, t.join(t.join(x, y), z), t.join(x, t.join(y, z))},
      {"join-idem", 1, t.join(x, x), x},
      {"join-ub", 2, t.imp(x, t.join(x, y)), t.c("one")},
      {"join-lub", 3, t.imp(t.mul(t.imp(x, z), t.imp(y, z)), t.imp(t.join(x, y), z)),
       t.c("one")},
  };
}

inline Identity basic_axiom(const Signature& sig) {
  Ops t{sig};
  Term x = V(0), y = V(1), z = V(2);
  return {"basic", 3,
          t.imp(t.imp(t.imp(x, y), z), t.imp(t.imp(t.imp(y, x), z), z)),
          t.c("one")};
}

inline Identity product_hoop_axiom(const Signature& sig) {
  Ops t{sig};
  Term x = V(0), y = V(1), z = V(2);
  return {"product", 3,
          t.join(t.imp(y, z), t.imp(t.imp(y, t.mul(x, y)), x)),
          t.c("one")};
}

inline std::vector<Identity> mv_axioms(const Signature& sig) {
  Ops t{sig};
  Term x = V(0), y = V(1), z = V(2);
  Term zero = t.c("zero");
  return {
      {"MV1-assoc", 3, t.oplus(t.oplus(x, y), z), t.oplus(x, t.oplus(y, z))},
      {"MV1-comm", 2, t.oplus(x, y), t.oplus(y, x)},
      {"MV1-unit", 1, t.oplus(x, zero), x},
      {"MV2", 1, t.neg(t.neg(x)), x},
      {"MV3", 1, t.oplus(x, t.neg(zero)), t.neg(zero)},
      {"MV4", 2, t.oplus(t.neg(t.oplus(t.neg(x), y)), y),
       t.oplus(t.neg(t.oplus(t.neg(y), x)), x)},
  };
}

inline std::vector<Identity> bl_axioms(const Signature& sig) {
  Ops t{sig};
  Term x = V(0), y = V(1), z = V(2);
  Term one = t.c("one"), zero = t.c("zero");
  return {
      {"join-comm", 2, t.join(x, y), t.join(y, x)},
      {"join-assoc", 3, t.join(t.join(x, y), z), t.join(x, t.join(y, z))},
      {"meet-comm", 2, t.meet(x, y), t.meet(y, x)},
      {"meet-assoc", 3, t.meet(t.meet(x, y), z), t.meet(x, t.meet(y, z))},
      {"absorb-1", 2, t.join(x, t.meet(x, y)), x},
      {"absorb-2", 2, t.meet(x, t.join(x, y)), x},
      {"bound-bot", 1, t.join(zero, x), x},
      {"bound-top", 1, t.meet(x, one), x},
      {"mul-comm", 2, t.mul(x, y), t.mul(y, x)},
      {"mul-assoc", 3, t.mul(t.mul(x, y), z), t.mul(x, t.mul(y, z))},
      {"mul-unit", 1, t.mul(x, one), x},
      {"mul-join-dist", 3, t.mul(x, t.join(y, z)), t.join(t.mul(x, y), t.mul(x, z))},
      {"res-1", 2, t.join(t.mul(x, t.imp(x, y)), y), y},
      {"res-2", 2, t.meet(y, t.imp(x, t.mul(x, y))), y},
      {"res-3", 3, t.meet(t.imp(x, y), t.imp(x, t.join(y, z))), t.imp(x, y)},
      {"divisibility", 2, t.meet(x, y), t.mul(x, t.imp(x, y))},
      {"prelinearity", 2, t.join(t.imp(x, y), t.imp(y, x)), one},
  };
}

inline Identity product_algebra_axiom(const Signature& sig) {
  Ops t{sig};
  Term x = V(0), y = V(1);
  Term notx = t.imp(x, t.c("zero"));
  return {"product", 2,
          t.join(notx, t.imp(t.imp(x, t.mul(x, y)), y)),
          t.c("one")};
}

inline std::vector<Identity> module_axioms(const Signature& sig, int p) {
  Ops t{sig};
  Term x = V(0), y = V(1), z = V(2);
  Term zero = t.c("zero");
  std::vector<Identity> out{
      {"add-comm", 2, t.add(x, y), t.add(y, x)},
      {"add-assoc", 3, t.add(t.add(x, y), z), t.add(x, t.add(y, z))},
      {"add-zero", 1, t.add(x, zero), x},
      {"add-neg", 1, t.add(x, t.neg(x)), zero},
      {"s1-id", 1, t.smul(1, x), x},
      {"s0-null", 1, t.smul(0, x), zero},
      {"neg-scalar", 1, t.neg(x), t.smul(p - 1, x)},
  };
  for (int a = 0; a < p; ++a)
    out.push_back({"s" + std::to_string(a) + "-add", 2, t.smul(a, t.add(x, y)),
                   t.add(t.smul(a, x), t.smul(a, y))});
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      out.push_back({"s" + std::to_string(a) + "s" + std::to_string(b), 1,
                     t.smul(a, t.smul(b, x)), t.smul((a * b) % p, x)});
      out.push_back({"s" + std::to_string(a) + "+s" + std::to_string(b), 1,
                     t.add(t.smul(a, x), t.smul(b, x)), t.smul((a + b) % p, x)});
    }
  return out;
}

inline std::vector<Identity> bilinearity_axioms(const Signature& sig, int p) {
  Ops t{sig};
  Term x = V(0), y = V(1), z = V(2);
  std::vector<Identity> out{
      {"dist-right", 3, t.mul(t.add(x, y), z), t.add(t.mul(x, z), t.mul(y, z))},
      {"dist-left", 3, t.mul(x, t.add(y, z)), t.add(t.mul(x, y), t.mul(x, z))},
  };
  for (int a = 0; a < p; ++a) {
    out.push_back({"s" + std::to_string(a) + "-mul-l", 2, t.mul(t.smul(a, x), y),
                   t.smul(a, t.mul(x, y))});
    out.push_back({"s" + std::to_string(a) + "-mul-r", 2, t.mul(x, t.smul(a, y)),
                   t.smul(a, t.mul(x, y))});
  }
  return out;
}

inline std::vector<Identity> group_cancel_hints(const Signature& sig) {
  Ops t{sig};
  Term x = V(0), y = V(1);
  return {
      {"cancel-l", 2, t.add(t.neg(x), t.add(x, y)), y},
      {"cancel-r", 2, t.add(t.add(y, x), t.neg(x)), y},
  };
}

inline std::vector<Identity> unit_axioms(const Signature& sig) {
  Ops t{sig};
  Term x = V(0);
  return {
      {"unit-r", 1, t.mul(x, t.c("one")), x},
      {"unit-l", 1, t.mul(t.c("one"), x), x},
  };
}

}  // namespace ids

// ---------------------------------------------------------------------------
// built-in varieties

inline VarietySpec hoop_variety() {
  VarietySpec v{"hoop", Family::Hoop, hoop_sig(false, false), {}, {}, 0};
  v.identities = ids::hoop_axioms(*v.sig);
  v.kernel_const = v.sig->const_index("one");
  v.validate();
  return v;
}

inline VarietySpec wajsberg_hoop_variety() {
  VarietySpec v = hoop_variety();
  v.name = "whoop";
  v.identities.push_back(ids::wajsberg_axiom(*v.sig));
  v.validate();
  return v;
}

// bounded Wajsberg hoops; term equivalent to MV-algebras
inline VarietySpec bounded_wajsberg_variety() {
  VarietySpec v{"bwhoop", Family::Hoop, hoop_sig(false, true), {}, {}, 0};
  v.identities = ids::hoop_axioms(*v.sig);
  v.identities.push_back(ids::wajsberg_axiom(*v.sig));
  v.identities.push_back(ids::bound_axiom(*v.sig));
  v.kernel_const = v.sig->const_index("one");
  v.validate();
  return v;
}

inline VarietySpec mv_variety() {
  VarietySpec v{"mv", Family::Mv, mv_sig(), {}, {}, 0};
  v.identities = ids::mv_axioms(*v.sig);
  v.kernel_const = v.sig->const_index("zero");
  v.validate();
  return v;
}

inline VarietySpec basic_hoop_variety() {
  VarietySpec v{"basic-hoop", Family::Hoop, hoop_sig(true, false), {}, {}, 0};
  v.identities = ids::hoop_axioms(*v.sig);
  for (auto& id : ids::join_axioms(*v.sig)) v.identities.push_back(id);
  v.identities.push_back(ids::basic_axiom(*v.sig));
  v.kernel_const = v.sig->const_index("one");
  v.validate();
  return v;
}

inline VarietySpec product_hoop_variety() {
  VarietySpec v = basic_hoop_variety();
  v.name = "phoop";
  v.identities.push_back(ids::product_hoop_axiom(*v.sig));
  v.validate();
  return v;
}

inline VarietySpec bounded_product_hoop_variety() {
  VarietySpec v{"bphoop", Family::Hoop, hoop_sig(true, true), {}, {}, 0};
  v.identities = ids::hoop_axioms(*v.sig);
  for (auto& id : ids::join_axioms(*v.sig)) v.identities.push_back(id);
  v.identities.push_back(ids::basic_axiom(*v.sig));
  v.identities.push_back(ids::product_hoop_axiom(*v.sig));
  v.identities.push_back(ids::bound_axiom(*v.sig));
  v.kernel_const = v.sig->const_index("one");
  v.validate();
  return v;
}

inline VarietySpec bl_variety() {
  VarietySpec v{"bl", Family::Bl, bl_sig(), {}, {}, 0};
  v.identities = ids::bl_axioms(*v.sig);
  v.kernel_const = v.sig->const_index("one");
  v.validate();
  return v;
}

inline VarietySpec product_algebra_variety() {
  VarietySpec v = bl_variety();
  v.name = "pralg";
  v.identities.push_back(ids::product_algebra_axiom(*v.sig));
  v.validate();
  return v;
}

enum class AlgKind { Ab, Assoc, CAssoc, Alt, Lie, Leib };

inline std::string alg_kind_name(AlgKind k) {
  switch (k) {
    case AlgKind::Ab: return "ab";
    case AlgKind::Assoc: return "assoc";
    case AlgKind::CAssoc: return "cassoc";
    case AlgKind::Alt: return "alt";
    case AlgKind::Lie: return "lie";
    case AlgKind::Leib: return "leib";
  }
  return {};
}

inline std::vector<Identity> alg_kind_axioms(const Signature& sig, AlgKind k) {
  ids::Ops t{sig};
  Term x = ids::V(0), y = ids::V(1), z = ids::V(2);
  Term zero = t.c("zero");
  switch (k) {
    case AlgKind::Ab:
      return {{"null", 2, t.mul(x, y), zero}};
    case AlgKind::Assoc:
      return {{"mul-assoc", 3, t.mul(t.mul(x, y), z), t.mul(x, t.mul(y, z))}};
    case AlgKind::CAssoc:
      return {{"mul-assoc", 3, t.mul(t.mul(x, y), z), t.mul(x, t.mul(y, z))},
              {"mul-comm", 2, t.mul(x, y), t.mul(y, x)}};
    case AlgKind::Alt:
      return {{"alt-r", 2, t.mul(t.mul(y, x), x), t.mul(y, t.mul(x, x))},
              {"alt-l", 2, t.mul(x, t.mul(x, y)), t.mul(t.mul(x, x), y)}};
    case AlgKind::Lie:
      return {{"alternating", 1, t.mul(x, x), zero},
              {"jacobi", 3,
               t.add(t.add(t.mul(x, t.mul(y, z)), t.mul(y, t.mul(z, x))),
                     t.mul(z, t.mul(x, y))),
               zero}};
    case AlgKind::Leib:
      return {{"leibniz", 3, t.mul(t.mul(x, y), z),
               t.add(t.mul(t.mul(x, z), y), t.mul(x, t.mul(y, z)))}};
  }
  return {};
}

inline VarietySpec algebra_variety(AlgKind kind, int p, bool unital) {
  VarietySpec v;
  v.name = "alg:" + alg_kind_name(kind) + "@" + std::to_string(p) + (unital ? ":1" : "");
  v.family = Family::Algebra;
  v.sig = alg_sig(p, unital);
  v.prime = p;
  v.unital = unital;
  v.identities = ids::module_axioms(*v.sig, p);
  for (auto& id : ids::bilinearity_axioms(*v.sig, p)) v.identities.push_back(id);
  for (auto& id : alg_kind_axioms(*v.sig, kind)) v.identities.push_back(id);
  if (unital)
    for (auto& id : ids::unit_axioms(*v.sig)) v.identities.push_back(id);
  v.prune_hints = ids::group_cancel_hints(*v.sig);
  v.kernel_const = v.sig->const_index("zero");
  v.validate();
  return v;
}

inline VarietySpec rng_variety(bool unital) {
  VarietySpec v;
  v.name = unital ? "ring" : "rng";
  v.family = unital ? Family::Ring : Family::Rng;
  v.sig = rng_sig(unital);
  v.unital = unital;
  ids::Ops t{*v.sig};
  Term x = ids::V(0), y = ids::V(1), z = ids::V(2);
  Term zero = t.c("zero");
  v.identities = {
      {"add-comm", 2, t.add(x, y), t.add(y, x)},
      {"add-assoc", 3, t.add(t.add(x, y), z), t.add(x, t.add(y, z))},
      {"add-zero", 1, t.add(x, zero), x},
      {"add-neg", 1, t.add(x, t.neg(x)), zero},
      {"mul-assoc", 3, t.mul(t.mul(x, y), z), t.mul(x, t.mul(y, z))},
      {"dist-right", 3, t.mul(t.add(x, y), z), t.add(t.mul(x, z), t.mul(y, z))},
      {"dist-left", 3, t.mul(x, t.add(y, z)), t.add(t.mul(x, y), t.mul(x, z))},
  };
  if (unital)
    for (auto& id : ids::unit_axioms(*v.sig)) v.identities.push_back(id);
  v.prune_hints = ids::group_cancel_hints(*v.sig);
  v.kernel_const = v.sig->const_index("zero");
  v.validate();
  return v;
}

inline VarietySpec pset_variety() {
  VarietySpec v{"pset", Family::PointedSet, pset_sig(), {}, {}, 0};
  v.kernel_const = v.sig->const_index("pt");
  return v;
}

inline VarietySpec set_variety() {
  VarietySpec v{"set", Family::PlainSet, set_sig(), {}, {}, 0};
  v.kernel_const = -1;
  return v;
}

// ---------------------------------------------------------------------------
// membership and the CLI-facing registry

struct MembershipReport {
  bool member = true;
  struct Item {
    std::string identity;
    std::string shown;
    IdentityCheck check;
  };
  std::vector<Item> items;
};

inline MembershipReport variety_membership(const FiniteAlgebra& A, const VarietySpec& V) {
  if (!(*A.sig == *V.sig)) throw error("signature mismatch for variety " + V.name);
  MembershipReport rep;
  for (const auto& id : V.identities) {
    auto c = check_identity(A, id);
    if (!c.satisfied) rep.member = false;
    rep.items.push_back({id.name, id.show(*V.sig), c});
  }
  return rep;
}

inline bool in_variety(const FiniteAlgebra& A, const VarietySpec& V) {
  if (!(*A.sig == *V.sig)) return false;
  for (const auto& id : V.identities)
    if (!check_identity(A, id).satisfied) return false;
  return true;
}

// Accepts "alg:<kind>" / "alg:<kind>@<p>" (default p = 2) and the fixed names
// rng, ring, hoop, whoop, bwhoop, mv, basic-hoop, phoop, bphoop, bl, pralg, pset, set.
inline VarietySpec variety_by_name(const std::string& spec) {
  std::string name = spec;
  int p = 2;
  if (auto at = spec.find('@'); at != std::string::npos) {
    name = spec.substr(0, at);
    p = std::stoi(spec.substr(at + 1));
    if (p < 2 || p > 7) throw error("unsupported prime " + std::to_string(p));
    for (int d = 2; d * d <= p; ++d)
      if (p % d == 0) throw error("prime field order required, got " + std::to_string(p));
  }
  if (name.rfind("alg:", 0) == 0) {
    std::string kind = name.substr(4);
    bool unital = false;
    if (kind.size() > 2 && kind.substr(kind.size() - 2) == ":1") {
      unital = true;
      kind = kind.substr(0, kind.size() - 2);
    }
    for (AlgKind k : {AlgKind::Ab, AlgKind::Assoc, AlgKind::CAssoc, AlgKind::Alt, AlgKind::Lie,
                      AlgKind::Leib})
      if (alg_kind_name(k) == kind) return algebra_variety(k, p, unital);
    throw error("unknown algebra kind: " + kind);
  }
  if (name == "rng") return rng_variety(false);
  if (name == "ring") return rng_variety(true);
  if (name == "hoop") return hoop_variety();
  if (name == "whoop") return wajsberg_hoop_variety();
  if (name == "bwhoop") return bounded_wajsberg_variety();
  if (name == "mv") return mv_variety();
  if (name == "basic-hoop") return basic_hoop_variety();
  if (name == "phoop") return product_hoop_variety();
  if (name == "bphoop") return bounded_product_hoop_variety();
  if (name == "bl") return bl_variety();
  if (name == "pralg") return product_algebra_variety();
  if (name == "pset") return pset_variety();
  if (name == "set") return set_variety();
  throw error("unknown variety: " + spec);
}

inline std::vector<std::string> builtin_variety_names() {
  return {"rng",  "ring",       "alg:ab", "alg:assoc", "alg:cassoc", "alg:alt",
          "alg:lie", "alg:leib", "hoop",   "whoop",     "bwhoop",     "mv",
          "basic-hoop", "phoop", "bphoop", "bl",        "pralg",      "pset"};
}

}  // namespace finact
