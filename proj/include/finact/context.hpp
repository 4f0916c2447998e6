// An adjunction presented concretely: the semi-abelian side V, the ideally
// exact side U (same operations, extra constants and identities), the
// forgetful direction, and which free construction materializes F. The
// pointed-set case runs in the opposite direction: there U has *fewer*
// constants and U(B) adjoins a fresh base point.

#pragma once

#include "finact/maps.hpp"
#include "finact/pool.hpp"

namespace finact {

enum class Direction { Normal, Opposite };

enum class ClosureFamily {
  Unitalization,   // F_p |x X with the semidirect multiplication
  MvClosure,       // H x {0,1} with the four-case tables
  ProductClosure,  // H u H*/~ with the decomposition-based operations
  Maybe,           // (1+A, 1), dual direction
  None,            // no finite free construction (ring context)
};

enum class CriterionKind {
  UnitalAlgebra,  // A has a two-sided unit equal to s(1_B)
  HoopBottom,     // s(0_B) is the bottom of the natural order
  PsetSection,    // s^{-1}(adjoined point) is exactly the base point
  None,
};

struct ContextSpec {
  std::string name;
  VarietySpec V;  // semi-abelian side (where points live)
  VarietySpec U;  // ideally exact side
  Direction direction = Direction::Normal;
  ClosureFamily closure_family = ClosureFamily::None;
  CriterionKind criterion = CriterionKind::None;
  AlgebraPtr initial;  // F(0) as a U-algebra; null when not materializable
  int prime = 0;

  // Constants present on the richer side only (U for Normal, V for Opposite).
  std::vector<std::string> delta_constants() const {
    std::vector<std::string> out;
    const auto& rich = direction == Direction::Normal ? *U.sig : *V.sig;
    const auto& poor = direction == Direction::Normal ? *V.sig : *U.sig;
    for (const auto& c : rich.consts)
      if (poor.const_index(c) < 0) out.push_back(c);
    return out;
  }

  void validate_shapes() const {
    const auto& rich = direction == Direction::Normal ? *U.sig : *V.sig;
    const auto& poor = direction == Direction::Normal ? *V.sig : *U.sig;
    if (rich.ops != poor.ops) throw error("context sides must share operations");
    // the poorer constant list must be a prefix of the richer one
    if (poor.consts.size() > rich.consts.size())
      throw error("constant lists do not nest");
    for (size_t i = 0; i < poor.consts.size(); ++i)
      if (poor.consts[i] != rich.consts[i]) throw error("constant lists do not nest");
  }
};

using ContextPtr = std::shared_ptr<const ContextSpec>;

// U(B) as a V-algebra. Normal direction: erase the extra constants.
// Opposite direction (sets -> pointed sets): adjoin a fresh point, laid out
// after the original elements.
inline AlgebraPtr apply_forgetful(const ContextSpec& ctx, AlgebraPtr B) {
  if (ctx.direction == Direction::Normal) return reduct(*B, ctx.V.sig);
  FiniteAlgebra P;
  P.sig = ctx.V.sig;
  P.size = B->size + 1;
  P.constants = {B->size};
  return make_algebra(std::move(P));
}

// U(g) for a morphism g between U-objects (tables only).
inline std::vector<Elem> apply_forgetful_map(const ContextSpec& ctx, const std::vector<Elem>& g,
                                             int target_size) {
  if (ctx.direction == Direction::Normal) return g;
  std::vector<Elem> out = g;
  out.push_back(target_size);  // adjoined point goes to adjoined point
  return out;
}

// Unique U-morphism F(0) -> B. In the varietal cases F(0) is generated by
// its constants, so the extension is forced; in the dual case the arrow is
// the constant function B -> 1 read backwards, which needs no data.
inline FunctionMap initial_morphism(const ContextSpec& ctx, AlgebraPtr B) {
  if (!ctx.initial) throw error("context " + ctx.name + " has no materialized initial object");
  if (ctx.direction == Direction::Opposite) {
    FunctionMap f{B, ctx.initial, std::vector<Elem>(B->size, 0)};
    return f;  // stored as the underlying function B -> F(0)
  }
  auto ext = extend_homomorphism(ctx.initial, B, {});
  if (!ext.domain_generates)
    throw internal_error("initial object not generated by its constants");
  if (!ext.hom) throw error("no U-morphism from the initial object into the base");
  return *ext.hom;
}

}  // namespace finact
