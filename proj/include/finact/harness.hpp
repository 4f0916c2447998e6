// The theorem-verification harness: exhaustively checks, over every
// enumerated point within bounds, that ideal points are coherent, that the
// two coherence tests agree, that coherent points are ideal, and that point
// morphisms between coherent points lift. Also the counterexample hunt for
// custom contexts, with self-contained re-validatable certificates.

#pragma once

#include <sstream>

#include "finact/coherence.hpp"

namespace finact {

struct HarnessBounds {
  std::vector<AlgebraPtr> bases;  // U-algebras to use as B
  int max_total = 4;
  int jobs = 1;
  bool unsafe_bounds = false;
};

struct TheoremReport {
  std::string context;
  int max_total = 0;
  size_t bases = 0, points = 0, coherent = 0, ideal = 0, morphisms = 0, lifted = 0;
  struct Assertion {
    std::string name;
    bool pass = true;
    std::vector<std::string> details;
  };
  std::vector<Assertion> assertions;

  bool all_pass() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return true;
  }

  std::string verdict_text() const {
    std::ostringstream os;
    os << "context " << context << " max-total " << max_total << "\n";
    os << "bases " << bases << " points " << points << " coherent " << coherent << " ideal "
       << ideal << " morphisms " << morphisms << " lifted " << lifted << "\n";
    for (const auto& a : assertions) {
      os << (a.pass ? "PASS " : "FAIL ") << a.name << "\n";
      for (const auto& d : a.details) os << "  " << d << "\n";
    }
    return os.str();
  }
};

inline TheoremReport verify_context_theorems(ContextPtr ctx, const HarnessBounds& bounds) {
  TheoremReport rep;
  rep.context = ctx->name;
  rep.max_total = bounds.max_total;
  rep.bases = bounds.bases.size();
  TheoremReport::Assertion a_ideal_coherent{"ideal-implies-coherent"};
  TheoremReport::Assertion a_agreement{"criterion-matches-extension"};
  TheoremReport::Assertion a_bat{"coherent-iff-ideal"};
  TheoremReport::Assertion a_morphisms{"morphisms-between-coherent-points-lift"};
  TheoremReport::Assertion a_unique_f{"extension-filler-unique"};
  TheoremReport::Assertion a_unique_lift{"lift-assignment-unique"};
  bool has_criterion = ctx->criterion != CriterionKind::None;

  struct PointRecord {
    bool coherent_ext = false, coherent_crit = false, ideal = false;
    bool refill_equal = true;
    size_t lift_successes = 0;
    bool generated = true;
  };

  for (size_t bi = 0; bi < bounds.bases.size(); ++bi) {
    AlgebraPtr base = bounds.bases[bi];
    auto points =
        enumerate_points(ctx, base, bounds.max_total, bounds.jobs, bounds.unsafe_bounds);
    rep.points += points.size();

    std::vector<PointRecord> records(points.size());
    parallel_for_index(points.size(), bounds.jobs, [&](size_t pi) {
      const SplitPoint& P = points[pi];
      PointRecord r;
      auto ev = coherence_by_extension(P);
      r.coherent_ext = ev.coherent;
      if (has_criterion) r.coherent_crit = coherence_by_criterion(P).coherent;
      auto iv = ideality_test(P);
      r.ideal = iv.lift.has_value();
      r.lift_successes = iv.successes;
      if (ev.coherent) {
        auto again = coherence_by_extension(P);
        r.refill_equal = again.f && ev.f && again.f->map == ev.f->map;
      }
      // re-gluing sanity: section and kernel images generate the total algebra
      {
        std::vector<Elem> seeds;
        if (ctx->direction == Direction::Normal) {
          for (Elem b = 0; b < P.base_v->size; ++b) seeds.push_back(P.s(b));
          auto ker = kernel_object(P);
          for (Elem e : ker.embed) seeds.push_back(e);
          r.generated =
              static_cast<int>(generated_subuniverse(*P.total, seeds).size()) == P.total->size;
        }
      }
      records[pi] = r;
    });

    for (size_t pi = 0; pi < records.size(); ++pi) {
      const auto& r = records[pi];
      std::string tag = "base " + std::to_string(bi) + " point " + std::to_string(pi);
      if (r.coherent_ext) ++rep.coherent;
      if (r.ideal) ++rep.ideal;
      if (r.ideal && !r.coherent_ext) {
        a_ideal_coherent.pass = false;
        a_ideal_coherent.details.push_back(tag + ": ideal but not coherent");
      }
      if (has_criterion && r.coherent_ext != r.coherent_crit) {
        a_agreement.pass = false;
        a_agreement.details.push_back(tag + ": criterion and extension verdicts differ");
      }
      if (r.coherent_ext != r.ideal) {
        a_bat.pass = false;
        a_bat.details.push_back(tag + (r.coherent_ext ? ": coherent but not ideal"
                                                      : ": ideal but not coherent"));
      }
      if (r.coherent_ext && !r.refill_equal) {
        a_unique_f.pass = false;
        a_unique_f.details.push_back(tag + ": re-derived filler differs");
      }
      if (r.ideal && r.lift_successes != 1) {
        a_unique_lift.pass = false;
        a_unique_lift.details.push_back(tag + ": " + std::to_string(r.lift_successes) +
                                        " lift assignments");
      }
      if (!r.generated) {
        a_bat.pass = false;
        a_bat.details.push_back(tag + ": section and kernel do not generate the total algebra");
      }
    }

    // morphisms between coherent points
    std::vector<size_t> coherent_idx;
    for (size_t pi = 0; pi < records.size(); ++pi)
      if (records[pi].coherent_ext) coherent_idx.push_back(pi);
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i : coherent_idx)
      for (size_t j : coherent_idx) pairs.push_back({i, j});
    struct MorphRecord {
      size_t count = 0, lifted = 0;
      std::vector<std::string> failures;
    };
    std::vector<MorphRecord> mrecs(pairs.size());
    parallel_for_index(pairs.size(), bounds.jobs, [&](size_t k) {
      auto [i, j] = pairs[k];
      auto ms = enumerate_point_morphisms(points[i], points[j]);
      MorphRecord mr;
      mr.count = ms.size();
      for (const auto& m : ms) {
        auto lift = ideal_morphism_test(m);
        if (lift.lifted)
          ++mr.lifted;
        else
          mr.failures.push_back("points " + std::to_string(i) + "->" + std::to_string(j) + ": " +
                                lift.refusal);
      }
      mrecs[k] = mr;
    });
    for (const auto& mr : mrecs) {
      rep.morphisms += mr.count;
      rep.lifted += mr.lifted;
      for (const auto& f : mr.failures) {
        a_morphisms.pass = false;
        a_morphisms.details.push_back("base " + std::to_string(bi) + " " + f);
      }
    }
  }

  rep.assertions = {a_ideal_coherent, a_agreement, a_bat, a_morphisms, a_unique_f, a_unique_lift};
  if (!has_criterion) rep.assertions[1].details.push_back("no registered criterion; skipped");
  return rep;
}

// ---------------------------------------------------------------------------
// custom contexts (identity edits over a built-in closure family)

struct ContextEdits {
  std::string base;                 // built-in context name
  std::vector<std::string> drop_u;  // names of U identities to remove
  std::vector<Identity> add_u;      // identities to add to U
};

inline ContextPtr custom_context(const ContextEdits& edits) {
  ContextPtr builtin = context_by_name(edits.base);
  if (edits.drop_u.empty() && edits.add_u.empty()) return builtin;
  ContextSpec c = *builtin;
  c.name = edits.base + "+edits";
  for (const auto& name : edits.drop_u) {
    auto before = c.U.identities.size();
    std::erase_if(c.U.identities, [&](const Identity& id) { return id.name == name; });
    if (c.U.identities.size() == before)
      throw error("no U identity named " + name + " to drop");
  }
  for (const auto& id : edits.add_u) {
    id.check(*c.U.sig);
    c.U.identities.push_back(id);
  }
  c.criterion = CriterionKind::None;  // criteria are proved for the built-ins only
  return std::make_shared<const ContextSpec>(std::move(c));
}

struct ContextProbe {
  bool ok = true;
  std::string detail;
};

// U identities must imply V identities on probe objects, and the unit of the
// adjunction must be cartesian on the probe pool.
inline ContextProbe validate_context(ContextPtr ctx, const std::vector<AlgebraPtr>& v_pool) {
  std::vector<AlgebraPtr> u_probes;
  if (ctx->initial) u_probes.push_back(ctx->initial);
  for (const auto& X : v_pool)
    if (ctx->closure_family != ClosureFamily::None) u_probes.push_back(closure(*ctx, X).closed);
  for (const auto& B : u_probes) {
    if (!in_variety(*B, ctx->U)) continue;  // probes outside U prove nothing
    auto Bv = apply_forgetful(*ctx, B);
    if (!in_variety(*Bv, ctx->V))
      return {false, "a U-probe leaves V after forgetting the extra constants"};
  }
  for (const auto& X : v_pool) {
    auto cu = verify_cartesian_unit(*ctx, X);
    if (!cu.ok) return {false, "cartesian unit fails on a pool object: " + cu.detail};
  }
  return {};
}

// ---------------------------------------------------------------------------
// counterexample hunt

struct CounterexampleCertificate {
  ContextEdits edits;  // rebuildable context description
  AlgebraPtr base, total;
  std::vector<Elem> p, s;
  bool ext_coherent = false;
  std::vector<Elem> filler;  // f table when coherent
  bool ideal = false;
  std::vector<LiftAttempt> trace;
};

struct HuntReport {
  std::string context;
  size_t points_checked = 0;
  std::optional<CounterexampleCertificate> certificate;

  std::string verdict_text() const {
    std::ostringstream os;
    os << "context " << context << " points " << points_checked << "\n";
    if (certificate)
      os << "certificate: coherent point with no lift found\n";
    else
      os << "no counterexample within bounds (not a proof beyond them)\n";
    return os.str();
  }
};

// Searches for a point that is coherent by extension yet not ideal. Absence
// within bounds is reported as absence, never as a theorem.
inline HuntReport hunt_counterexample(ContextPtr ctx, const ContextEdits& edits,
                                      const HarnessBounds& bounds) {
  HuntReport rep;
  rep.context = ctx->name;
  for (const auto& base : bounds.bases) {
    if (!in_variety(*base, ctx->U)) continue;  // edited U may reject a stock base
    auto points = enumerate_points(ctx, base, bounds.max_total, bounds.jobs, bounds.unsafe_bounds);
    struct Probe {
      bool hit = false;
      CounterexampleCertificate cert;
    };
    std::vector<Probe> probes(points.size());
    parallel_for_index(points.size(), bounds.jobs, [&](size_t pi) {
      const SplitPoint& P = points[pi];
      auto ev = coherence_by_extension(P);
      if (!ev.coherent) return;
      auto iv = ideality_test(P);
      if (iv.lift) return;
      Probe pr;
      pr.hit = true;
      pr.cert.edits = edits;
      pr.cert.base = P.base;
      pr.cert.total = P.total;
      pr.cert.p = P.p.map;
      pr.cert.s = P.s.map;
      pr.cert.ext_coherent = true;
      pr.cert.filler = ev.f->map;
      pr.cert.ideal = false;
      pr.cert.trace = iv.trace;
      probes[pi] = std::move(pr);
    });
    rep.points_checked += points.size();
    for (auto& pr : probes)
      if (pr.hit && !rep.certificate) rep.certificate = std::move(pr.cert);
    if (rep.certificate) break;
  }
  return rep;
}

// A certificate must re-validate from its raw data alone.
inline bool revalidate_certificate(const CounterexampleCertificate& cert) {
  if (cert.edits.base.empty()) throw error("certificate without a context description");
  ContextPtr ctx = custom_context(cert.edits);
  SplitPoint P = make_split_point(ctx, cert.base, cert.total, cert.p, cert.s);
  auto ev = coherence_by_extension(P);
  if (ev.coherent != cert.ext_coherent) return false;
  if (ev.coherent && ev.f->map != cert.filler) return false;
  auto iv = ideality_test(P);
  return iv.lift.has_value() == cert.ideal;
}

}  // namespace finact
