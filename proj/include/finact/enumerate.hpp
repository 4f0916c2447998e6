// Exhaustive enumeration of finite models of a variety by backtracking over
// operation-table cells. Ground identity instances drive the search: an
// instance whose one side is known and whose other side blocks at an
// outermost cell forces that cell; disagreements prune the branch. Completed
// labeled models are deduplicated up to isomorphism and reported as
// canonical representatives in canonical-key order, so parallel and serial
// runs emit identical streams.

#pragma once

#include <map>
#include <set>

#include "finact/canon.hpp"
#include "finact/parallel.hpp"
#include "finact/points.hpp"

namespace finact {

namespace detail {

class ModelSearcher {
 public:
  ModelSearcher(const VarietySpec& V, int n) : V_(V), n_(n) {
    const Signature& sig = *V.sig;
    ncells_ = static_cast<int>(sig.consts.size());
    for (const auto& op : sig.ops) {
      op_base_.push_back(ncells_);
      size_t cells = 1;
      for (int i = 0; i < op.arity; ++i) cells *= static_cast<size_t>(n);
      ncells_ += static_cast<int>(cells);
    }
    val_.assign(ncells_, -1);
    watchers_.assign(ncells_, {});
    build_instances();
  }

  // Pins the first constant, seeds propagation, and reports the first
  // branch cell (-1 when everything is already forced).
  bool setup() {
    if (!V_.sig->consts.empty()) {
      if (!assign(0, 0)) return false;
    }
    for (size_t i = 0; i < instances_.size(); ++i)
      if (!reeval(static_cast<int>(i))) return false;
    return drain();
  }

  int first_branch_cell() const {
    for (int c = 0; c < ncells_; ++c)
      if (val_[c] == -1) return c;
    return -1;
  }

  // Depth-first enumeration; sink returns false to stop.
  bool run(const std::function<bool(const FiniteAlgebra&)>& sink) { return dfs(sink); }

  // Force one decision before searching (used for top-level splitting).
  bool run_with(int cell, Elem v, const std::function<bool(const FiniteAlgebra&)>& sink) {
    size_t mark = trail_.size();
    bool go = assign(cell, v) && drain();
    bool cont = true;
    if (go) cont = dfs(sink);
    undo(mark);
    return cont;
  }

 private:
  struct Instance {
    const Term* lhs;
    const Term* rhs;
    std::vector<Elem> env;
    std::vector<int> ever_watched;
  };

  struct Eval {
    int value = -1;
    int cell = -1;
    bool root = false;
  };

  const VarietySpec& V_;
  int n_;
  int ncells_ = 0;
  std::vector<int> op_base_;
  std::vector<Elem> val_;
  std::vector<std::vector<int>> watchers_;
  std::vector<Instance> instances_;
  std::vector<int> queue_;
  std::vector<int> trail_;

  void build_instances() {
    auto add_for = [&](const Identity& id) {
      if (n_ == 0) return;
      std::vector<Elem> env(static_cast<size_t>(id.vars), 0);
      do {
        instances_.push_back({&id.lhs, &id.rhs, env, {}});
      } while (next_assignment(env, n_));
    };
    for (const auto& id : V_.identities) add_for(id);
    for (const auto& id : V_.prune_hints) add_for(id);
  }

  Eval eval(const Term& t, const std::vector<Elem>& env) const {
    switch (t.kind) {
      case Term::Kind::Var:
        return {env[t.index], -1, false};
      case Term::Kind::Const: {
        Elem v = val_[t.index];
        if (v >= 0) return {v, -1, false};
        return {-1, t.index, true};
      }
      case Term::Kind::App: {
        size_t idx = 0;
        for (const auto& a : t.args) {
          Eval r = eval(a, env);
          if (r.value < 0) return {-1, r.cell, false};
          idx = idx * n_ + static_cast<size_t>(r.value);
        }
        int cell = op_base_[t.index] + static_cast<int>(idx);
        Elem v = val_[cell];
        if (v >= 0) return {v, -1, false};
        return {-1, cell, true};
      }
    }
    return {};
  }

  void subscribe(int inst, int cell) {
    auto& seen = instances_[inst].ever_watched;
    for (int c : seen)
      if (c == cell) return;
    seen.push_back(cell);
    watchers_[cell].push_back(inst);
  }

  bool assign(int cell, Elem v) {
    if (val_[cell] != -1) return val_[cell] == v;
    val_[cell] = v;
    trail_.push_back(cell);
    queue_.push_back(cell);
    return true;
  }

  bool reeval(int inst) {
    Instance& I = instances_[inst];
    Eval l = eval(*I.lhs, I.env);
    Eval r = eval(*I.rhs, I.env);
    if (l.value >= 0 && r.value >= 0) return l.value == r.value;
    if (l.value >= 0 && r.root) return assign(r.cell, l.value);
    if (r.value >= 0 && l.root) return assign(l.cell, r.value);
    if (l.value < 0) subscribe(inst, l.cell);
    if (r.value < 0) subscribe(inst, r.cell);
    return true;
  }

  bool drain() {
    while (!queue_.empty()) {
      int cell = queue_.back();
      queue_.pop_back();
      // the list may grow while iterating; new entries watch other cells
      for (size_t i = 0; i < watchers_[cell].size(); ++i) {
        if (!reeval(watchers_[cell][i])) {
          queue_.clear();
          return false;
        }
      }
    }
    return true;
  }

  void undo(size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  FiniteAlgebra current() const {
    FiniteAlgebra A;
    A.sig = V_.sig;
    A.size = n_;
    for (size_t op = 0; op < V_.sig->ops.size(); ++op) {
      size_t cells = 1;
      for (int i = 0; i < V_.sig->ops[op].arity; ++i) cells *= static_cast<size_t>(n_);
      std::vector<Elem> tab(cells);
      for (size_t j = 0; j < cells; ++j) tab[j] = val_[op_base_[op] + j];
      A.tables.push_back(std::move(tab));
    }
    for (size_t c = 0; c < V_.sig->consts.size(); ++c) A.constants.push_back(val_[c]);
    return A;
  }

  bool verify_leaf() const {
    FiniteAlgebra A = current();
    for (const auto& id : V_.identities)
      if (!check_identity(A, id).satisfied) return false;
    for (const auto& id : V_.prune_hints)
      if (!check_identity(A, id).satisfied) return false;
    return true;
  }

  bool dfs(const std::function<bool(const FiniteAlgebra&)>& sink) {
    int cell = first_branch_cell();
    if (cell == -1) {
      if (!verify_leaf()) return true;  // safety net; propagation should have caught it
      return sink(current());
    }
    for (Elem v = 0; v < n_; ++v) {
      size_t mark = trail_.size();
      if (assign(cell, v) && drain()) {
        if (!dfs(sink)) {
          undo(mark);
          return false;
        }
      }
      undo(mark);
    }
    return true;
  }
};

// iso-invariant fingerprint used to bucket labeled models before the exact
// isomorphism test
inline uint64_t model_fingerprint(const FiniteAlgebra& A) {
  std::vector<std::vector<int>> profile(A.size);
  for (Elem e = 0; e < A.size; ++e) {
    auto& pr = profile[e];
    for (Elem c : A.constants) pr.push_back(c == e ? 1 : 0);
    for (size_t op = 0; op < A.sig->ops.size(); ++op) {
      if (A.sig->ops[op].arity == 1) {
        pr.push_back(A.apply1(op, e) == e ? 1 : 0);
      } else if (A.sig->ops[op].arity == 2) {
        int diag = A.apply2(op, e, e) == e ? 1 : 0;
        int row_fix = 0, col_fix = 0, row_abs = 0, col_abs = 0;
        for (Elem x = 0; x < A.size; ++x) {
          if (A.apply2(op, e, x) == x) ++row_fix;
          if (A.apply2(op, x, e) == x) ++col_fix;
          if (A.apply2(op, e, x) == e) ++row_abs;
          if (A.apply2(op, x, e) == e) ++col_abs;
        }
        pr.insert(pr.end(), {diag, row_fix, col_fix, row_abs, col_abs});
      }
    }
  }
  std::sort(profile.begin(), profile.end());
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](int v) {
    h ^= static_cast<uint64_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  };
  mix(A.size);
  for (const auto& pr : profile)
    for (int v : pr) mix(v);
  return h;
}

}  // namespace detail

// All labeled models with the first constant pinned, in deterministic DFS
// order; top-level branches are distributed across jobs.
inline std::vector<FiniteAlgebra> enumerate_labeled_models(const VarietySpec& V, int n,
                                                           int jobs = 1) {
  if (n == 0) {
    if (!V.sig->consts.empty()) return {};
    FiniteAlgebra empty;
    empty.sig = V.sig;
    empty.size = 0;
    for (const auto& op : V.sig->ops) {
      (void)op;
      empty.tables.push_back({});
    }
    return {empty};
  }
  detail::ModelSearcher probe(V, n);
  if (!probe.setup()) return {};
  int cell = probe.first_branch_cell();
  if (cell == -1 || effective_jobs(jobs) <= 1) {
    std::vector<FiniteAlgebra> out;
    probe.run([&](const FiniteAlgebra& A) {
      out.push_back(A);
      return true;
    });
    return out;
  }
  std::vector<std::vector<FiniteAlgebra>> buckets(n);
  parallel_for_index(static_cast<size_t>(n), jobs, [&](size_t v) {
    detail::ModelSearcher s(V, n);
    if (!s.setup()) return;  // cannot happen: probe succeeded
    s.run_with(cell, static_cast<Elem>(v), [&](const FiniteAlgebra& A) {
      buckets[v].push_back(A);
      return true;
    });
  });
  std::vector<FiniteAlgebra> out;
  for (auto& b : buckets)
    for (auto& A : b) out.push_back(std::move(A));
  return out;
}

struct EnumeratedAlgebras {
  std::vector<AlgebraPtr> reps;     // canonical representatives
  std::vector<CanonKey> keys;      // matching canonical keys (ascending)
  size_t labeled_count = 0;
};

inline AlgebraPtr algebra_from_key(SignaturePtr sig, int n, const CanonKey& key) {
  FiniteAlgebra A;
  A.sig = sig;
  A.size = n;
  size_t pos = 0;
  for (size_t c = 0; c < sig->consts.size(); ++c) A.constants.push_back(key[pos++]);
  for (const auto& op : sig->ops) {
    size_t cells = 1;
    for (int i = 0; i < op.arity; ++i) cells *= static_cast<size_t>(n);
    std::vector<Elem> tab(cells);
    for (size_t j = 0; j < cells; ++j) tab[j] = key[pos++];
    A.tables.push_back(std::move(tab));
  }
  return make_algebra(std::move(A));
}

// Models of size n up to isomorphism. Labeled models are bucketed by an
// invariant fingerprint, matched against known class representatives by
// isomorphism search, and finally ordered by canonical key.
inline EnumeratedAlgebras enumerate_models_up_to_iso(const VarietySpec& V, int n, int jobs = 1) {
  auto labeled = enumerate_labeled_models(V, n, jobs);
  EnumeratedAlgebras out;
  out.labeled_count = labeled.size();
  std::map<uint64_t, std::vector<AlgebraPtr>> buckets;
  for (auto& M : labeled) {
    AlgebraPtr Mp = std::make_shared<const FiniteAlgebra>(std::move(M));
    auto& bucket = buckets[detail::model_fingerprint(*Mp)];
    bool fresh = true;
    for (const auto& rep : bucket)
      if (find_isomorphism(Mp, rep)) {
        fresh = false;
        break;
      }
    if (fresh) bucket.push_back(Mp);
  }
  std::vector<AlgebraPtr> classes;
  for (auto& [h, reps] : buckets)
    for (auto& r : reps) classes.push_back(r);
  auto keys = parallel_map(classes, jobs, [&](const AlgebraPtr& A) { return canonical_key(*A); });
  std::vector<size_t> order(classes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return keys[a] < keys[b]; });
  for (size_t i : order) {
    out.reps.push_back(algebra_from_key(V.sig, n, keys[i]));
    out.keys.push_back(keys[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// homomorphism enumeration

namespace detail {

// all maps S -> T compatible with the operations and constants; candidate
// images per element may be restricted, injectivity optionally enforced
inline void hom_search(const FiniteAlgebra& S, const FiniteAlgebra& T,
                       const std::function<std::vector<Elem>(Elem)>& candidates, bool injective,
                       const std::function<void(const std::vector<Elem>&)>& emit) {
  int n = S.size;
  std::vector<Elem> img(n, -1);
  std::vector<char> used(std::max(T.size, 1), 0);
  std::function<void(int)> rec = [&](int at) {
    if (at == n) {
      emit(img);
      return;
    }
    for (Elem cand : candidates(at)) {
      if (injective && used[cand]) continue;
      bool ok = true;
      for (size_t c = 0; c < S.constants.size() && ok; ++c)
        if (S.constants[c] == at && cand != T.constants[c]) ok = false;
      if (ok) {
        img[at] = cand;
        for (size_t op = 0; op < S.sig->ops.size() && ok; ++op) {
          int k = S.sig->ops[op].arity;
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
            Elem r = S.apply(op, args);
            if (r > at || (!touches && r != at)) continue;
            if (T.apply(op, imgs) != img[r]) {
              ok = false;
              break;
            }
          } while (next_assignment(args, n));
        }
      }
      if (ok) {
        if (injective) used[cand] = 1;
        rec(at + 1);
        if (injective) used[cand] = 0;
      }
      img[at] = -1;
    }
  };
  if (n == 0) {
    emit(img);
    return;
  }
  rec(0);
}

}  // namespace detail

inline std::vector<std::vector<Elem>> enumerate_homs(const FiniteAlgebra& S,
                                                     const FiniteAlgebra& T) {
  std::vector<Elem> all(T.size);
  for (Elem e = 0; e < T.size; ++e) all[e] = e;
  std::vector<std::vector<Elem>> out;
  detail::hom_search(S, T, [&](Elem) { return all; }, false,
                     [&](const std::vector<Elem>& img) { out.push_back(img); });
  return out;
}

// ---------------------------------------------------------------------------
// point enumeration

inline int point_bound_ceiling(const VarietySpec& V) {
  int binary = 0;
  for (const auto& op : V.sig->ops)
    if (op.arity >= 2) ++binary;
  return binary >= 3 ? 6 : 9;
}

// Every isomorphism class of valid points with |A| <= max_total, exactly
// once, ordered by (size, canonical total key, canonical (p,s) key).
inline std::vector<SplitPoint> enumerate_points(ContextPtr ctx, AlgebraPtr base, int max_total,
                                                int jobs = 1, bool unsafe_bounds = false) {
  int ceiling = point_bound_ceiling(ctx->V);
  if (max_total > ceiling && !unsafe_bounds)
    throw error("bound " + std::to_string(max_total) + " exceeds the configured ceiling " +
                std::to_string(ceiling) + " (pass --unsafe-bounds to override)");
  {
    auto rep = variety_membership(*base, ctx->U);
    if (!rep.member) throw error("base is not in " + ctx->U.name);
  }
  AlgebraPtr base_v = apply_forgetful(*ctx, base);
  std::vector<SplitPoint> out;

  for (int n = 1; n <= max_total; ++n) {
    if (ctx->direction == Direction::Normal && n < base_v->size) continue;
    if (ctx->direction == Direction::Opposite && n < base_v->size) continue;
    EnumeratedAlgebras algs;
    if (ctx->direction == Direction::Opposite) {
      algs.reps = {pointed_set(n, 0)};
    } else {
      algs = enumerate_models_up_to_iso(ctx->V, n, jobs);
    }
    for (const auto& A : algs.reps) {
      auto auts = automorphisms(A);
      std::set<std::vector<Elem>> seen;
      std::vector<std::pair<std::vector<Elem>, SplitPoint>> found;
      if (ctx->direction == Direction::Normal) {
        // retractions A -> U(B) with a section
        auto ps = enumerate_homs(*A, *base_v);
        for (const auto& ptab : ps) {
          // sections: s(b) in the fiber over b
          std::vector<std::vector<Elem>> fibers(base_v->size);
          for (Elem a = 0; a < A->size; ++a) fibers[ptab[a]].push_back(a);
          bool onto = true;
          for (const auto& f : fibers)
            if (f.empty()) onto = false;
          if (!onto) continue;
          detail::hom_search(*base_v, *A, [&](Elem b) { return fibers[b]; }, false,
                             [&](const std::vector<Elem>& stab) {
                               SplitPoint P = make_split_point(ctx, base, A, ptab, stab);
                               auto key = point_key(P, auts);
                               if (seen.insert(key).second) found.push_back({key, std::move(P)});
                             });
        }
      } else {
        // injective pointed maps U(B) -> A with a pointed retraction
        std::vector<Elem> all(A->size);
        for (Elem e = 0; e < A->size; ++e) all[e] = e;
        detail::hom_search(
            *base_v, *A, [&](Elem) { return all; }, true,
            [&](const std::vector<Elem>& ptab) {
              // retractions: s(p(b)) = b elsewhere arbitrary
              std::vector<char> hit(A->size, 0);
              std::vector<Elem> forced(A->size, -1);
              for (Elem b = 0; b < base_v->size; ++b) {
                forced[ptab[b]] = b;
                hit[ptab[b]] = 1;
              }
              std::vector<Elem> allb(base_v->size);
              for (Elem b = 0; b < base_v->size; ++b) allb[b] = b;
              detail::hom_search(
                  *A, *base_v,
                  [&](Elem a) {
                    return hit[a] ? std::vector<Elem>{forced[a]} : allb;
                  },
                  false,
                  [&](const std::vector<Elem>& stab) {
                    SplitPoint P = make_split_point(ctx, base, A, ptab, stab);
                    auto key = point_key(P, auts);
                    if (seen.insert(key).second) found.push_back({key, std::move(P)});
                  });
            });
      }
      std::sort(found.begin(), found.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [key, P] : found) out.push_back(std::move(P));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// point morphism enumeration

inline std::vector<PointMorphism> enumerate_point_morphisms(const SplitPoint& P1,
                                                            const SplitPoint& P2) {
  std::vector<PointMorphism> out;
  std::set<std::vector<Elem>> seen;
  if (P1.ctx->direction == Direction::Opposite) {
    // all pointed maps h: A2 -> A1 commuting with both structure maps
    int n2 = P2.total->size;
    std::vector<Elem> h(n2, 0);
    if (n2 == 0) return out;
    do {
      bool ok = h[P2.total->cst(P2.total->sig->const_index("pt"))] ==
                P1.total->cst(P1.total->sig->const_index("pt"));
      for (Elem a = 0; a < n2 && ok; ++a) ok = P1.s(h[a]) == P2.s(a);
      for (Elem b = 0; b < P1.base_v->size && ok; ++b) ok = h[P2.p(b)] == P1.p(b);
      if (ok && seen.insert(h).second) out.push_back(make_point_morphism(P1, P2, h));
    } while (next_assignment(h, P1.total->size));
    return out;
  }
  // h is determined by its values on the kernel generators together with the
  // forced values on the section image
  auto ext1 = kernel_object(P1);
  size_t count = 1;
  for (size_t i = 0; i < ext1.embed.size(); ++i) {
    count *= static_cast<size_t>(P2.total->size);
    if (count > (1u << 22))
      throw error("point morphism search space too large");
  }
  std::vector<Elem> v(ext1.embed.size(), 0);
  bool more = true;
  if (ext1.embed.empty()) more = true;
  while (more) {
    std::vector<std::pair<Elem, Elem>> partial;
    for (Elem b = 0; b < P1.base_v->size; ++b) partial.push_back({P1.s(b), P2.s(b)});
    for (size_t i = 0; i < ext1.embed.size(); ++i) partial.push_back({ext1.embed[i], v[i]});
    auto ext = extend_homomorphism(P1.total, P2.total, partial);
    if (ext.hom) {
      bool ok = true;
      for (Elem a = 0; a < P1.total->size && ok; ++a) ok = P2.p((*ext.hom)(a)) == P1.p(a);
      for (Elem b = 0; b < P1.base_v->size && ok; ++b) ok = (*ext.hom)(P1.s(b)) == P2.s(b);
      if (ok && seen.insert(ext.hom->map).second)
        out.push_back(make_point_morphism(P1, P2, ext.hom->map));
    }
    more = !ext1.embed.empty() && next_assignment(v, P2.total->size);
    if (ext1.embed.empty()) more = false;
  }
  return out;
}

}  // namespace finact
