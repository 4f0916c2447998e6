#include <catch2/catch_amalgamated.hpp>

#include "finact/canon.hpp"
#include "finact/maps.hpp"
#include "finact/pool.hpp"
#include "finact/quotient.hpp"
#include "finact/varieties.hpp"

using namespace finact;

namespace {

// deterministic pseudo-random values for property-style checks
struct Lcg {
  uint64_t state;
  explicit Lcg(uint64_t seed) : state(seed) {}
  int next(int bound) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<int>((state >> 33) % static_cast<uint64_t>(bound));
  }
};

AlgebraPtr corrupt_l2_mv() {
  FiniteAlgebra A = *lukasiewicz_mv(2);
  A.tables[0][3] = 0;  // 1 (+) 1 := 0
  return std::make_shared<const FiniteAlgebra>(std::move(A));
}

}  // namespace

TEST_CASE("eval_term on chains and small hoops") {
  auto l2 = lukasiewicz_mv(2);
  int neg = l2->sig->op_index("neg");
  Term nn = Term::app(neg, {Term::app(neg, {Term::var(0)})});
  std::vector<Elem> env{1};
  REQUIRE(eval_term(*l2, nn, env) == 1);

  // two-element hoop {a < 1} with a*a = a; expected value by direct lookup
  auto h2 = lukasiewicz_hoop(2, false);
  int mul = h2->sig->op_index("mul"), imp = h2->sig->op_index("imp");
  Term t = Term::app(mul, {Term::var(0), Term::app(imp, {Term::var(0), Term::var(1)})});
  Elem a = 0, one = 1;
  Elem expected = h2->apply2(mul, a, h2->apply2(imp, a, one));
  REQUIRE(expected == a);
  std::vector<Elem> env2{a, one};
  REQUIRE(eval_term(*h2, t, env2) == expected);

  SECTION("errors") {
    std::vector<Elem> short_env{};
    REQUIRE_THROWS_AS(eval_term(*l2, Term::var(2), short_env), error);
    Term bad = Term::app(neg, {Term::var(0), Term::var(0)});
    Identity bad_id{"bad", 1, bad, bad};
    REQUIRE_THROWS_AS(check_identity(*l2, bad_id), error);
  }
}

TEST_CASE("check_identity against the MV axioms") {
  auto mv = mv_variety();

  SECTION("L2 satisfies MV4") {
    auto l2 = lukasiewicz_mv(2);
    for (const auto& id : mv.identities)
      if (id.name == "MV4") REQUIRE(check_identity(*l2, id).satisfied);
  }

  SECTION("three-element chain satisfies MV1-MV4, brute force oracle") {
    // independent oracle: truncated-sum arithmetic on {0, 1/2, 1}
    auto oplus = [](int x, int y) { return std::min(2, x + y); };
    auto negf = [](int x) { return 2 - x; };
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        for (int z = 0; z < 3; ++z)
          REQUIRE(oplus(oplus(x, y), z) == oplus(x, oplus(y, z)));
        REQUIRE(oplus(x, y) == oplus(y, x));
        REQUIRE(oplus(x, negf(0)) == negf(0));
        REQUIRE(negf(negf(x)) == x);
        REQUIRE(oplus(negf(oplus(negf(x), y)), y) == oplus(negf(oplus(negf(y), x)), x));
      }
    auto l3 = lukasiewicz_mv(3);
    auto rep = variety_membership(*l3, mv);
    REQUIRE(rep.member);
  }

  SECTION("corrupted L2 fails MV3 with witness x=1") {
    auto bad = corrupt_l2_mv();
    for (const auto& id : mv.identities)
      if (id.name == "MV3") {
        auto c = check_identity(*bad, id);
        REQUIRE_FALSE(c.satisfied);
        REQUIRE(c.witness == std::vector<Elem>{1});
      }
  }

  SECTION("witnesses re-evaluate to the recorded inequality") {
    Lcg rng(42);
    auto mvv = mv_variety();
    for (int trial = 0; trial < 40; ++trial) {
      int n = 2 + rng.next(4);
      FiniteAlgebra A;
      A.sig = mv_sig();
      A.size = n;
      std::vector<Elem> t0(static_cast<size_t>(n) * n), t1(n);
      for (auto& v : t0) v = rng.next(n);
      for (auto& v : t1) v = rng.next(n);
      A.tables = {t0, t1};
      A.constants = {rng.next(n)};
      auto Ap = make_algebra(std::move(A));
      for (const auto& id : mvv.identities) {
        auto c = check_identity(*Ap, id);
        if (!c.satisfied) {
          REQUIRE(eval_term(*Ap, id.lhs, c.witness) == c.lhs_value);
          REQUIRE(eval_term(*Ap, id.rhs, c.witness) == c.rhs_value);
          REQUIRE(c.lhs_value != c.rhs_value);
          // minimal-lexicographic: nothing earlier fails
          std::vector<Elem> env(static_cast<size_t>(id.vars), 0);
          bool earlier_fail = false;
          do {
            if (env == c.witness) break;
            if (eval_term(*Ap, id.lhs, env) != eval_term(*Ap, id.rhs, env)) earlier_fail = true;
          } while (next_assignment(env, Ap->size));
          REQUIRE_FALSE(earlier_fail);
        }
      }
    }
  }
}

TEST_CASE("is_homomorphism") {
  auto l3 = lukasiewicz_mv(3);
  SECTION("identity map is a homomorphism") {
    REQUIRE(is_homomorphism(identity_map(l3)).ok);
  }
  SECTION("collapse that ignores the tables fails with a witness") {
    FunctionMap f{l3, l3, {0, 0, 0}};
    auto hc = is_homomorphism(f);
    REQUIRE_FALSE(hc.ok);
    if (hc.op >= 0) {
      std::vector<Elem> imgs;
      for (Elem a : hc.args) imgs.push_back(f(a));
      REQUIRE(f(l3->apply(hc.op, hc.args)) == hc.mapped_result);
      REQUIRE(l3->apply(hc.op, imgs) == hc.target_result);
      REQUIRE(hc.mapped_result != hc.target_result);
    }
  }
  SECTION("hoop quotient projection onto L2") {
    // 3-chain -> 2-chain collapsing {1/2, 1}
    auto h3 = lukasiewicz_hoop(3, false);
    auto h2 = lukasiewicz_hoop(2, false);
    FunctionMap f{h3, h2, {0, 1, 1}};
    REQUIRE(is_homomorphism(f).ok);
  }
}

TEST_CASE("generated_subuniverse") {
  auto l3 = lukasiewicz_mv(3);
  SECTION("full carrier stays full") {
    std::vector<Elem> all{0, 1, 2};
    REQUIRE(generated_subuniverse(*l3, all) == all);
  }
  SECTION("empty seeds give the constants' closure") {
    auto h2 = lukasiewicz_hoop(2, false);
    std::vector<Elem> none;
    REQUIRE(generated_subuniverse(*h2, none) == std::vector<Elem>{1});
    // in L2 (MV signature) the constants generate everything: neg(0)=1
    REQUIRE(generated_subuniverse(*lukasiewicz_mv(2), none) == std::vector<Elem>({0, 1}));
  }
}

TEST_CASE("extend_homomorphism") {
  auto l3 = lukasiewicz_mv(3);
  SECTION("identity partial map extends to the identity") {
    std::vector<std::pair<Elem, Elem>> partial{{0, 0}, {1, 1}, {2, 2}};
    auto r = extend_homomorphism(l3, l3, partial);
    REQUIRE(r.hom);
    REQUIRE(r.hom->map == std::vector<Elem>({0, 1, 2}));
  }
  SECTION("non-generating domain is a distinct error") {
    auto h3 = lukasiewicz_hoop(3, false);
    std::vector<std::pair<Elem, Elem>> partial{{2, 2}};  // the unit generates nothing else
    auto r = extend_homomorphism(h3, h3, partial);
    REQUIRE_FALSE(r.domain_generates);
    REQUIRE_FALSE(r.hom.has_value());
    REQUIRE_FALSE(r.conflict.has_value());
  }
  SECTION("deterministic and unique when it exists") {
    std::vector<std::pair<Elem, Elem>> partial{{1, 1}};  // 1/2 generates the chain
    auto r1 = extend_homomorphism(l3, l3, partial);
    auto r2 = extend_homomorphism(l3, l3, partial);
    REQUIRE(r1.hom);
    REQUIRE(r2.hom);
    REQUIRE(r1.hom->map == r2.hom->map);
    REQUIRE(is_homomorphism(*r1.hom).ok);
  }
  SECTION("conflicting forced images are reported with both derivations") {
    // send the generator 1/2 of the 3-chain to 1 in L2-as-MV: forces
    // neg(1/2) = 1/2 to also be 0 = neg(1), a conflict
    auto l2 = lukasiewicz_mv(2);
    std::vector<std::pair<Elem, Elem>> partial{{1, 1}};
    auto r = extend_homomorphism(l3, l2, partial);
    REQUIRE_FALSE(r.hom.has_value());
    REQUIRE(r.conflict.has_value());
    REQUIRE_FALSE(r.conflict->describe(*l3).empty());
  }
}

TEST_CASE("quotient") {
  auto l3 = lukasiewicz_mv(3);
  SECTION("finest congruence gives an isomorphic copy") {
    auto q = quotient(l3, Partition::finest(3));
    REQUIRE(q.algebra->size == 3);
    REQUIRE(find_isomorphism(q.algebra, l3).has_value());
  }
  SECTION("coarsest congruence gives the one-element algebra") {
    auto q = quotient(l3, Partition::coarsest(3));
    REQUIRE(q.algebra->size == 1);
  }
  SECTION("non-congruences are rejected with a witness") {
    // {0,1} | {2} is not compatible with neg on the 3-chain
    Partition p = Partition::normalized({0, 0, 1});
    auto cc = congruence_check(*l3, p);
    REQUIRE_FALSE(cc.ok);
    REQUIRE_THROWS_AS(quotient(l3, p), error);
  }
}

TEST_CASE("find_isomorphism") {
  auto l3 = lukasiewicz_mv(3);
  SECTION("an algebra is isomorphic to itself by the identity") {
    auto iso = find_isomorphism(l3, l3);
    REQUIRE(iso);
    REQUIRE(iso->map == std::vector<Elem>({0, 1, 2}));
  }
  SECTION("size mismatch is absent without search") {
    auto b4 = direct_product(*lukasiewicz_mv(2), *lukasiewicz_mv(2));
    REQUIRE_FALSE(find_isomorphism(l3, b4).has_value());
  }
  SECTION("chain vs product of the same size") {
    auto l4 = lukasiewicz_mv(4);
    auto b4 = direct_product(*lukasiewicz_mv(2), *lukasiewicz_mv(2));
    REQUIRE_FALSE(find_isomorphism(l4, b4).has_value());
    REQUIRE_FALSE(find_isomorphism(b4, l4).has_value());
  }
  SECTION("symmetry and transitivity on a small pool") {
    std::vector<AlgebraPtr> pool{lukasiewicz_mv(2), lukasiewicz_mv(3), lukasiewicz_mv(4),
                                 direct_product(*lukasiewicz_mv(2), *lukasiewicz_mv(2))};
    for (const auto& A : pool)
      for (const auto& B : pool) {
        bool ab = find_isomorphism(A, B).has_value();
        bool ba = find_isomorphism(B, A).has_value();
        REQUIRE(ab == ba);
      }
  }
  SECTION("transported algebras are isomorphic and share canonical keys") {
    std::vector<Elem> phi{2, 0, 1};
    auto moved = transport(*l3, phi);
    REQUIRE(find_isomorphism(l3, moved).has_value());
    REQUIRE(canonical_key(*l3) == canonical_key(*moved));
  }
}

TEST_CASE("quotient projection kernel behaves like the section") {
  // projection composed with any representative choice is idempotent on blocks
  auto l3 = lukasiewicz_hoop(3, false);
  Partition p = Partition::normalized({0, 1, 1});
  auto cc = congruence_check(*l3, p);
  REQUIRE(cc.ok);
  auto q = quotient(l3, p);
  for (Elem e = 0; e < l3->size; ++e) {
    Elem block = q.projection(e);
    // pick the least representative of the block
    Elem rep = -1;
    for (Elem x = 0; x < l3->size && rep < 0; ++x)
      if (q.projection(x) == block) rep = x;
    REQUIRE(q.projection(rep) == block);
  }
}
