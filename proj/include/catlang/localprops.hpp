#pragma once
// Local properties of finite-limit categories: a registry of named properties
// (strict initial objects, stable coproducts, extensivity, regularity,
// exactness, subobject classifiers, parameterized natural numbers), closure
// checking over slices and pullback functors, fiberwise satisfaction in
// comprehension categories, and classification against the standard ladder of
// internal-language signatures.

#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catlang/biequiv.hpp"

namespace catlang {

enum class VerdictStatus { Verified, Counterexample, InconclusiveAtBound };

// Counterexamples carry a witness naming concrete objects and morphisms;
// InconclusiveAtBound only ever comes out of a bounded candidate search.
struct Verdict {
  VerdictStatus status = VerdictStatus::Verified;
  std::string witness;
  long bound = -1;

  bool verified() const { return status == VerdictStatus::Verified; }
  bool refuted() const { return status == VerdictStatus::Counterexample; }

  static Verdict ok(std::string w) { return {VerdictStatus::Verified, std::move(w), -1}; }
  static Verdict no(std::string w) { return {VerdictStatus::Counterexample, std::move(w), -1}; }
  static Verdict undecided(long b, std::string w) {
    return {VerdictStatus::InconclusiveAtBound, std::move(w), b};
  }
};

// cat_check examines a category with chosen limit witnesses; functor_check
// examines a finite-limit-preserving functor whose endpoints both satisfy the
// property. Both parts are total searches except where a candidate bound
// applies (subobject classifiers, natural numbers objects).
struct LocalProperty {
  std::string id;
  std::string name;
  std::function<Verdict(const FinLimCat&)> cat_check;
  std::function<Verdict(const FinLimCat&, const FinLimCat&, const FinFunctor&)> functor_check;
};

inline constexpr long kDefaultSearchBound = 200000;

// ---------------------------------------------------------------------------
// Elementary predicates
// ---------------------------------------------------------------------------

inline bool is_mono(const FinCat& c, int m) {
  int a = c.src(m);
  for (int z = 0; z < c.object_count(); ++z)
    for (int u : c.hom(z, a))
      for (int v : c.hom(z, a))
        if (u != v && c.compose(u, m) == c.compose(v, m)) return false;
  return true;
}

inline bool is_initial_object(const FinCat& c, int x) {
  return verify_universal(c, Diagram::initial(), x, {}).has_value();
}

// A morphism is a regular epi exactly when it coequalizes its kernel pair.
inline bool is_regular_epi(const FinLimCat& C, int e) {
  const FinCat& c = *C.cat;
  const LimitWitness& kp = C.pullback(e, e);
  return verify_universal(c, Diagram::coequalizer(kp.legs[0], kp.legs[1]), c.dst(e), {e})
      .has_value();
}

// ---------------------------------------------------------------------------
// Pullback functors and sliced functors
// ---------------------------------------------------------------------------

namespace detail {

inline int slice_mor_index(const FinCat& base, const Slice& s, int h, int fobj, int gobj) {
  int f = s.obj_to_mor[fobj], g = s.obj_to_mor[gobj];
  std::string n = (h == base.identity(base.src(f)) && f == g)
                      ? "id_" + base.mor_name(f)
                      : "tri(" + base.mor_name(h) + "," + base.mor_name(f) + "," +
                            base.mor_name(g) + ")";
  int i = s.cat->mor_index(n);
  if (i < 0) fail("UnknownMorphism", "no slice morphism " + n);
  return i;
}

}  // namespace detail

// f : x -> y induces the base-change functor C/y -> C/x built from the chosen
// pullback witnesses and their mediator tables.
inline FinFunctor pullback_functor(const FinLimCat& C, const Slice& sy, const Slice& sx, int f) {
  const FinCat& c = *C.cat;
  std::vector<int> oo(sy.cat->object_count());
  for (int i = 0; i < sy.cat->object_count(); ++i)
    oo[i] = sx.object_of(C.pullback(f, sy.obj_to_mor[i]).legs[0]);
  std::vector<int> mm(sy.cat->morphism_count(), -1);
  for (int m = 0; m < sy.cat->morphism_count(); ++m) {
    int a = sy.cat->src(m), b = sy.cat->dst(m);
    int h = sy.projection.mor(m);
    const LimitWitness& wa = C.pullback(f, sy.obj_to_mor[a]);
    const LimitWitness& wb = C.pullback(f, sy.obj_to_mor[b]);
    int med = wb.mediators.at({wa.legs[0], c.compose(wa.legs[1], h)});
    mm[m] = detail::slice_mor_index(c, sx, med, oo[a], oo[b]);
  }
  return FinFunctor::validate(sy.cat, sx.cat, std::move(oo), std::move(mm));
}

// F sliced at x : C1/x -> C2/F(x), acting on triangles through F.
inline FinFunctor sliced_functor(const FinFunctor& F, const Slice& s1, const Slice& s2) {
  std::vector<int> oo(s1.cat->object_count());
  for (int i = 0; i < s1.cat->object_count(); ++i)
    oo[i] = s2.object_of(F.mor(s1.obj_to_mor[i]));
  std::vector<int> mm(s1.cat->morphism_count(), -1);
  for (int m = 0; m < s1.cat->morphism_count(); ++m) {
    int h = s1.projection.mor(m);
    mm[m] = detail::slice_mor_index(*F.target(), s2, F.mor(h), oo[s1.cat->src(m)],
                                    oo[s1.cat->dst(m)]);
  }
  return FinFunctor::validate(s1.cat, s2.cat, std::move(oo), std::move(mm));
}

// ---------------------------------------------------------------------------
// Property checkers
// ---------------------------------------------------------------------------

namespace detail {

inline Verdict check_strict_initial(const FinLimCat& C) {
  const FinCat& c = *C.cat;
  auto w = find_universal(c, Diagram::initial());
  if (!w) return Verdict::no("no initial object");
  int zero = w->apex;
  for (int f = 0; f < c.morphism_count(); ++f)
    if (c.dst(f) == zero && !c.is_iso(f))
      return Verdict::no("morphism " + c.mor_name(f) + " into the initial object " +
                         c.object(zero) + " is not invertible");
  return Verdict::ok("strict initial object " + c.object(zero));
}

inline Verdict functor_strict_initial(const FinLimCat& C1, const FinLimCat& C2,
                                      const FinFunctor& F) {
  const FinCat& c1 = *C1.cat;
  auto w = find_universal(c1, Diagram::initial());
  if (!w) return Verdict::no("no initial object in the source");
  if (!is_initial_object(*C2.cat, F.obj(w->apex)))
    return Verdict::no("image of the initial object " + c1.object(w->apex) +
                       " is not initial");
  return Verdict::ok("initial object preserved");
}

inline Verdict check_stable_coproducts(const FinLimCat& C) {
  const FinCat& c = *C.cat;
  int n = c.object_count();
  std::vector<LimitWitness> cop;
  cop.reserve(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto w = find_universal(c, Diagram::coproduct(a, b));
      if (!w)
        return Verdict::no("no coproduct of " + c.object(a) + " and " + c.object(b));
      cop.push_back(std::move(*w));
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const LimitWitness& w = cop[static_cast<size_t>(a) * n + b];
      for (int f = 0; f < c.morphism_count(); ++f) {
        if (c.dst(f) != w.apex) continue;
        const LimitWitness& p1 = C.pullback(f, w.legs[0]);
        const LimitWitness& p2 = C.pullback(f, w.legs[1]);
        if (!verify_universal(c, Diagram::coproduct(p1.apex, p2.apex), c.src(f),
                              {p1.legs[0], p2.legs[0]}))
          return Verdict::no("coproduct of " + c.object(a) + " and " + c.object(b) +
                             " is not stable along " + c.mor_name(f));
      }
    }
  return Verdict::ok("binary coproducts exist and are stable under pullback");
}

inline Verdict functor_preserves_coproducts(const FinLimCat& C1, const FinLimCat& C2,
                                            const FinFunctor& F) {
  const FinCat& c1 = *C1.cat;
  const FinCat& c2 = *C2.cat;
  for (int a = 0; a < c1.object_count(); ++a)
    for (int b = 0; b < c1.object_count(); ++b) {
      auto w = find_universal(c1, Diagram::coproduct(a, b));
      if (!w) return Verdict::no("no coproduct of " + c1.object(a) + " and " + c1.object(b));
      if (!verify_universal(c2, Diagram::coproduct(F.obj(a), F.obj(b)), F.obj(w->apex),
                            {F.mor(w->legs[0]), F.mor(w->legs[1])}))
        return Verdict::no("coproduct of " + c1.object(a) + " and " + c1.object(b) +
                           " is not preserved");
    }
  return Verdict::ok("binary coproducts preserved");
}

// Extensivity decomposes into named sub-axioms so a counterexample pinpoints
// which one breaks: a strict initial object, binary coproducts, stability,
// and disjointness of the injections.
inline Verdict check_extensive(const FinLimCat& C) {
  const FinCat& c = *C.cat;
  Verdict ini = check_strict_initial(C);
  if (!ini.verified()) return Verdict::no("strict initial: " + ini.witness);
  int zero = find_universal(c, Diagram::initial())->apex;
  Verdict st = check_stable_coproducts(C);
  if (!st.verified()) return Verdict::no("coproducts: " + st.witness);
  for (int a = 0; a < c.object_count(); ++a)
    for (int b = 0; b < c.object_count(); ++b) {
      const LimitWitness w = *find_universal(c, Diagram::coproduct(a, b));
      for (int leg : w.legs)
        if (!is_mono(c, leg))
          return Verdict::no("disjointness: injection " + c.mor_name(leg) + " of " +
                             c.object(a) + " + " + c.object(b) + " is not monic");
      int meet = C.pullback(w.legs[0], w.legs[1]).apex;
      if (!is_initial_object(c, meet))
        return Verdict::no("disjointness: injections of " + c.object(a) + " + " +
                           c.object(b) + " meet in " + c.object(meet) + ", not in " +
                           c.object(zero));
    }
  return Verdict::ok("strict initial object, stable disjoint binary coproducts");
}

inline Verdict functor_extensive(const FinLimCat& C1, const FinLimCat& C2,
                                 const FinFunctor& F) {
  Verdict ini = functor_strict_initial(C1, C2, F);
  if (!ini.verified()) return ini;
  return functor_preserves_coproducts(C1, C2, F);
}

inline Verdict check_regular(const FinLimCat& C) {
  const FinCat& c = *C.cat;
  std::vector<bool> rep(c.morphism_count()), mono(c.morphism_count());
  for (int f = 0; f < c.morphism_count(); ++f) {
    rep[f] = is_regular_epi(C, f);
    mono[f] = is_mono(c, f);
  }
  for (int f = 0; f < c.morphism_count(); ++f) {
    bool found = false;
    for (int e : c.out(c.src(f))) {
      if (!rep[e]) continue;
      for (int m : c.hom(c.dst(e), c.dst(f)))
        if (mono[m] && c.compose(e, m) == f) {
          found = true;
          break;
        }
      if (found) break;
    }
    if (!found)
      return Verdict::no("morphism " + c.mor_name(f) +
                         " has no factorization as a regular epi followed by a mono");
  }
  for (int e = 0; e < c.morphism_count(); ++e) {
    if (!rep[e]) continue;
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.dst(g) != c.dst(e)) continue;
      if (!is_regular_epi(C, C.pullback(g, e).legs[0]))
        return Verdict::no("regular epi " + c.mor_name(e) + " is not stable along " +
                           c.mor_name(g));
    }
  }
  return Verdict::ok("regular epi / mono factorizations, stable under pullback");
}

inline Verdict functor_preserves_regular_epis(const FinLimCat& C1, const FinLimCat& C2,
                                              const FinFunctor& F) {
  const FinCat& c1 = *C1.cat;
  for (int e = 0; e < c1.morphism_count(); ++e)
    if (is_regular_epi(C1, e) && !is_regular_epi(C2, F.mor(e)))
      return Verdict::no("regular epi " + c1.mor_name(e) + " is not preserved");
  return Verdict::ok("regular epis preserved");
}

inline Verdict check_exact(const FinLimCat& C) {
  Verdict reg = check_regular(C);
  if (!reg.verified()) return reg;
  const FinCat& c = *C.cat;
  for (int a = 0; a < c.object_count(); ++a)
    for (int R = 0; R < c.object_count(); ++R)
      for (int r1 : c.hom(R, a))
        for (int r2 : c.hom(R, a)) {
          bool jm = true;
          for (int z = 0; z < c.object_count() && jm; ++z)
            for (int u : c.hom(z, R))
              for (int v : c.hom(z, R))
                if (u != v && c.compose(u, r1) == c.compose(v, r1) &&
                    c.compose(u, r2) == c.compose(v, r2)) {
                  jm = false;
                  break;
                }
          if (!jm) continue;
          bool refl = false;
          for (int rho : c.hom(a, R))
            if (c.compose(rho, r1) == c.identity(a) && c.compose(rho, r2) == c.identity(a))
              refl = true;
          if (!refl) continue;
          bool sym = false;
          for (int s : c.hom(R, R))
            if (c.compose(s, r1) == r2 && c.compose(s, r2) == r1) sym = true;
          if (!sym) continue;
          const LimitWitness& P = C.pullback(r2, r1);
          bool trans = false;
          for (int t : c.hom(P.apex, R))
            if (c.compose(t, r1) == c.compose(P.legs[0], r1) &&
                c.compose(t, r2) == c.compose(P.legs[1], r2))
              trans = true;
          if (!trans) continue;
          std::string rel = "(" + c.mor_name(r1) + "," + c.mor_name(r2) + ")";
          auto q = find_universal(c, Diagram::coequalizer(r1, r2));
          if (!q) return Verdict::no("equivalence relation " + rel + " has no quotient");
          const LimitWitness& kp = C.pullback(q->legs[0], q->legs[0]);
          if (!c.is_iso(kp.mediators.at({r1, r2})))
            return Verdict::no("equivalence relation " + rel + " is not effective");
        }
  return Verdict::ok("regular and every equivalence relation is effective");
}

inline Verdict check_subobject_classifier(const FinLimCat& C, long bound) {
  const FinCat& c = *C.cat;
  int T = C.terminal.apex;
  std::vector<int> monos;
  for (int m = 0; m < c.morphism_count(); ++m)
    if (is_mono(c, m)) monos.push_back(m);
  long counter = 0;
  std::string first_failure;
  for (int om = 0; om < c.object_count(); ++om)
    for (int t : c.hom(T, om)) {
      if (++counter > bound)
        return Verdict::undecided(bound, "stopped after " + std::to_string(counter - 1) +
                                             " candidate classifiers");
      std::string failure;
      for (int m : monos) {
        int s = c.src(m), a = c.dst(m);
        int bang = c.hom(s, T)[0];
        int hits = 0;
        for (int chi : c.hom(a, om))
          if (verify_universal(c, Diagram::pullback(chi, t), s, {m, bang})) ++hits;
        if (hits != 1) {
          failure = "mono " + c.mor_name(m) + " into " + c.object(a) +
                    (hits == 0 ? " has no classifying morphism" : " has several classifiers") +
                    " for candidate (" + c.object(om) + ", " + c.mor_name(t) + ")";
          break;
        }
      }
      if (failure.empty())
        return Verdict::ok("subobject classifier " + c.object(om) + " with truth morphism " +
                           c.mor_name(t));
      if (first_failure.empty()) first_failure = failure;
    }
  return Verdict::no("no subobject classifier: " + first_failure);
}

inline Verdict verify_classifier_pair(const FinLimCat& C, int om, int t) {
  const FinCat& c = *C.cat;
  int T = C.terminal.apex;
  for (int m = 0; m < c.morphism_count(); ++m) {
    if (!is_mono(c, m)) continue;
    int s = c.src(m), a = c.dst(m);
    int bang = c.hom(s, T)[0];
    int hits = 0;
    for (int chi : c.hom(a, om))
      if (verify_universal(c, Diagram::pullback(chi, t), s, {m, bang})) ++hits;
    if (hits != 1)
      return Verdict::no("mono " + c.mor_name(m) + " is not uniquely classified by (" +
                         c.object(om) + ", " + c.mor_name(t) + ")");
  }
  return Verdict::ok("subobject classifier " + c.object(om) + " with truth morphism " +
                     c.mor_name(t));
}

inline Verdict functor_subobject_classifier(const FinLimCat& C1, const FinLimCat& C2,
                                            const FinFunctor& F, long bound) {
  Verdict src = check_subobject_classifier(C1, bound);
  if (!src.verified()) return src;
  const FinCat& c1 = *C1.cat;
  for (int om = 0; om < c1.object_count(); ++om)
    for (int t : c1.hom(C1.terminal.apex, om))
      if (verify_classifier_pair(C1, om, t).verified())
        return verify_classifier_pair(C2, F.obj(om), F.mor(t));
  return Verdict::no("no classifier witness found in the source");
}

// A candidate (N, zero, successor) must support unique recursion for every
// parameterized instance, and zero may not land in the image of the
// successor; the latter rules out the degenerate terminal candidate.
inline Verdict verify_nno_candidate(const FinLimCat& C, int N, int z, int s) {
  const FinCat& c = *C.cat;
  int T = C.terminal.apex;
  const LimitWitness& dz = C.pullback(z, s);
  if (!is_initial_object(c, dz.apex))
    return Verdict::no("zero and successor of candidate " + c.object(N) + " meet in " +
                       c.object(dz.apex) + ", which is not initial");
  for (int G = 0; G < c.object_count(); ++G)
    for (int A = 0; A < c.object_count(); ++A) {
      const LimitWitness& w = C.product(G, N);
      int bang = c.hom(G, T)[0];
      int m0 = w.mediators.at({c.identity(G), c.compose(bang, z)});
      int ms = w.mediators.at({w.legs[0], c.compose(w.legs[1], s)});
      for (int g : c.hom(G, A))
        for (int h : c.hom(A, A)) {
          int sols = 0;
          for (int phi : c.hom(w.apex, A))
            if (c.compose(m0, phi) == g && c.compose(ms, phi) == c.compose(phi, h)) ++sols;
          if (sols != 1)
            return Verdict::no("recursion for " + c.mor_name(g) + " and " + c.mor_name(h) +
                               " has " + std::to_string(sols) + " solutions at candidate " +
                               c.object(N));
        }
    }
  return Verdict::ok("natural numbers object " + c.object(N) + " with zero " + c.mor_name(z) +
                     " and successor " + c.mor_name(s));
}

inline Verdict check_nno(const FinLimCat& C, long bound) {
  const FinCat& c = *C.cat;
  int T = C.terminal.apex;
  long counter = 0;
  std::string first_failure;
  for (int N = 0; N < c.object_count(); ++N)
    for (int z : c.hom(T, N))
      for (int s : c.hom(N, N)) {
        if (++counter > bound)
          return Verdict::undecided(bound, "stopped after " + std::to_string(counter - 1) +
                                               " candidate structures");
        Verdict v = verify_nno_candidate(C, N, z, s);
        if (v.verified()) return v;
        if (first_failure.empty()) first_failure = v.witness;
      }
  return Verdict::no("no parameterized natural numbers object: " + first_failure);
}

inline Verdict functor_nno(const FinLimCat& C1, const FinLimCat& C2, const FinFunctor& F,
                           long bound) {
  Verdict src = check_nno(C1, bound);
  if (!src.verified()) return src;
  const FinCat& c1 = *C1.cat;
  for (int N = 0; N < c1.object_count(); ++N)
    for (int z : c1.hom(C1.terminal.apex, N))
      for (int s : c1.hom(N, N))
        if (verify_nno_candidate(C1, N, z, s).verified())
          return verify_nno_candidate(C2, F.obj(N), F.mor(z), F.mor(s));
  return Verdict::no("no natural numbers witness found in the source");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

inline LocalProperty conj(const LocalProperty& p, const LocalProperty& q) {
  LocalProperty out;
  out.id = p.id + "+" + q.id;
  out.name = p.name + " and " + q.name;
  auto both = [pid = p.id, qid = q.id](const Verdict& a, const Verdict& b) -> Verdict {
    if (a.refuted()) return Verdict::no(pid + ": " + a.witness);
    if (b.refuted()) return Verdict::no(qid + ": " + b.witness);
    if (!a.verified()) return Verdict::undecided(a.bound, pid + ": " + a.witness);
    if (!b.verified()) return Verdict::undecided(b.bound, qid + ": " + b.witness);
    return Verdict::ok(pid + ": " + a.witness + "; " + qid + ": " + b.witness);
  };
  out.cat_check = [p, q, both](const FinLimCat& C) { return both(p.cat_check(C), q.cat_check(C)); };
  out.functor_check = [p, q, both](const FinLimCat& C1, const FinLimCat& C2,
                                   const FinFunctor& F) {
    return both(p.functor_check(C1, C2, F), q.functor_check(C1, C2, F));
  };
  return out;
}

inline std::vector<LocalProperty> registry(long bound = kDefaultSearchBound) {
  std::vector<LocalProperty> out;
  out.push_back({"strict_initial", "strict initial object", detail::check_strict_initial,
                 detail::functor_strict_initial});
  out.push_back({"stable_coproducts", "stable binary coproducts",
                 detail::check_stable_coproducts, detail::functor_preserves_coproducts});
  out.push_back({"extensive", "extensive", detail::check_extensive, detail::functor_extensive});
  out.push_back({"regular", "regular", detail::check_regular,
                 detail::functor_preserves_regular_epis});
  out.push_back({"exact", "exact", detail::check_exact, detail::functor_preserves_regular_epis});
  out.push_back({"subobject_classifier", "subobject classifier",
                 [bound](const FinLimCat& C) { return detail::check_subobject_classifier(C, bound); },
                 [bound](const FinLimCat& C1, const FinLimCat& C2, const FinFunctor& F) {
                   return detail::functor_subobject_classifier(C1, C2, F, bound);
                 }});
  out.push_back({"nno_param", "parameterized natural numbers object",
                 [bound](const FinLimCat& C) { return detail::check_nno(C, bound); },
                 [bound](const FinLimCat& C1, const FinLimCat& C2, const FinFunctor& F) {
                   return detail::functor_nno(C1, C2, F, bound);
                 }});
  return out;
}

inline LocalProperty lookup(const std::string& id, long bound = kDefaultSearchBound) {
  for (auto& p : registry(bound))
    if (p.id == id) return p;
  fail("UnknownProperty", id);
}

inline Verdict check_local_property(const FinLimCat& C, const LocalProperty& P) {
  return P.cat_check(C);
}

// ---------------------------------------------------------------------------
// Closure checking
// ---------------------------------------------------------------------------

struct ClosureAxiom {
  std::string axiom;
  Verdict verdict;
};

struct ClosureReport {
  Verdict base;
  std::vector<ClosureAxiom> axioms;
  bool pass = false;
};

// Instantiates the closure axioms of a local property exhaustively on C: the
// identity functor, composites of pullback functors, every slice, every
// pullback functor, and slices of pullback functors.
inline ClosureReport check_property_closure(const LocalProperty& P, const FinLimCat& C) {
  ClosureReport rep;
  rep.base = P.cat_check(C);
  if (!rep.base.verified()) return rep;
  const CatPtr& cp = C.cat;
  const FinCat& c = *cp;
  int n = c.object_count();

  std::vector<Slice> sl;
  std::vector<FinLimCat> slfl;
  sl.reserve(n);
  slfl.reserve(n);
  for (int x = 0; x < n; ++x) {
    sl.push_back(slice_category(cp, x));
    slfl.push_back(make_finlim(sl.back().cat));
  }
  std::vector<FinFunctor> pbf;
  pbf.reserve(c.morphism_count());
  for (int f = 0; f < c.morphism_count(); ++f)
    pbf.push_back(pullback_functor(C, sl[c.dst(f)], sl[c.src(f)], f));

  auto add = [&rep](const std::string& name, Verdict v) {
    rep.axioms.push_back({name, std::move(v)});
  };

  add("identity functor", P.functor_check(C, C, FinFunctor::identity(cp)));

  {
    Verdict v = Verdict::ok("composites of pullback functors satisfy the property");
    for (int f = 0; f < c.morphism_count() && v.verified(); ++f)
      for (int g = 0; g < c.morphism_count(); ++g) {
        if (c.src(g) != c.dst(f)) continue;
        FinFunctor comp = compose_functors(pbf[g], pbf[f]);
        Verdict w = P.functor_check(slfl[c.dst(g)], slfl[c.src(f)], comp);
        if (!w.verified()) {
          v = Verdict::no("composite of the pullback functors along " + c.mor_name(f) +
                          " and " + c.mor_name(g) + ": " + w.witness);
          break;
        }
      }
    add("composite functors", std::move(v));
  }

  {
    Verdict v = Verdict::ok("all " + std::to_string(n) + " slices satisfy the property");
    for (int x = 0; x < n; ++x) {
      Verdict w = P.cat_check(slfl[x]);
      if (!w.verified()) {
        v = Verdict::no("slice over " + c.object(x) + ": " + w.witness);
        break;
      }
    }
    add("slice categories", std::move(v));
  }

  {
    Verdict v = Verdict::ok("all pullback functors satisfy the property");
    for (int f = 0; f < c.morphism_count(); ++f) {
      Verdict w = P.functor_check(slfl[c.dst(f)], slfl[c.src(f)], pbf[f]);
      if (!w.verified()) {
        v = Verdict::no("pullback functor along " + c.mor_name(f) + ": " + w.witness);
        break;
      }
    }
    add("pullback functors", std::move(v));
  }

  {
    Verdict v = Verdict::ok("all slices of pullback functors satisfy the property");
    for (int f = 0; f < c.morphism_count() && v.verified(); ++f) {
      const Slice& sy = sl[c.dst(f)];
      const Slice& sx = sl[c.src(f)];
      for (int i = 0; i < sy.cat->object_count(); ++i) {
        Slice t1 = slice_category(sy.cat, i);
        Slice t2 = slice_category(sx.cat, pbf[f].obj(i));
        FinFunctor g = sliced_functor(pbf[f], t1, t2);
        Verdict w = P.functor_check(make_finlim(t1.cat), make_finlim(t2.cat), g);
        if (!w.verified()) {
          v = Verdict::no("slice of the pullback functor along " + c.mor_name(f) + " at " +
                          sy.cat->object(i) + ": " + w.witness);
          break;
        }
      }
    }
    add("sliced functors", std::move(v));
  }

  rep.pass = true;
  for (const auto& a : rep.axioms) rep.pass = rep.pass && a.verdict.verified();
  return rep;
}

// ---------------------------------------------------------------------------
// Fiberwise satisfaction
// ---------------------------------------------------------------------------

struct FiberPropertyReport {
  std::string property;
  std::vector<Verdict> fibers;         // per base object
  std::vector<Verdict> substitutions;  // per base morphism
  bool pass = false;
  std::string detail;
};

inline FiberPropertyReport compcat_satisfies(const CompCat& k, const LocalProperty& P) {
  DFLReport d = check_dfl(k);
  if (!d.pass) fail("DFLCheckFailed", d.failure);
  const FinCat& c = *k.base;
  FiberPropertyReport rep;
  rep.property = P.id;
  rep.pass = true;

  std::vector<FinLimCat> fls;
  fls.reserve(c.object_count());
  for (int x = 0; x < c.object_count(); ++x) {
    fls.push_back(make_finlim(fiber_category(k.types, x).cat));
    rep.fibers.push_back(P.cat_check(fls.back()));
    if (!rep.fibers.back().verified()) {
      rep.pass = false;
      if (rep.detail.empty())
        rep.detail = "fiber over " + c.object(x) + ": " + rep.fibers.back().witness;
    }
  }
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (!rep.fibers[c.src(f)].verified() || !rep.fibers[c.dst(f)].verified()) {
      rep.substitutions.push_back(
          Verdict::no("not evaluated: an endpoint fiber fails the property"));
      rep.pass = false;
      continue;
    }
    SubstFunctor sf = substitution_functor(k.cleaving, f);
    rep.substitutions.push_back(P.functor_check(fls[c.dst(f)], fls[c.src(f)], sf.functor));
    if (!rep.substitutions.back().verified()) {
      rep.pass = false;
      if (rep.detail.empty())
        rep.detail =
            "substitution along " + c.mor_name(f) + ": " + rep.substitutions.back().witness;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct ClassEntry {
  std::string cls;
  std::string signature;
  Verdict verdict;
};

struct ClassReport {
  std::vector<ClassEntry> entries;
  std::string achieved;
  std::string signature;
};

namespace detail {

inline Verdict all_parts(std::initializer_list<std::pair<const char*, const Verdict*>> parts) {
  for (const auto& [label, v] : parts)
    if (v->refuted()) return Verdict::no(std::string(label) + ": " + v->witness);
  for (const auto& [label, v] : parts)
    if (!v->verified()) return Verdict::undecided(v->bound, std::string(label) + ": " + v->witness);
  std::string w;
  for (const auto& [label, v] : parts) {
    if (!w.empty()) w += "; ";
    w += std::string(label) + ": " + v->witness;
  }
  return Verdict::ok(w);
}

}  // namespace detail

inline ClassReport classify(const FinLimCat& C, long bound = kDefaultSearchBound) {
  Verdict fl = Verdict::ok("chosen finite limit witnesses verified");
  try {
    validate_finlim(C);
  } catch (const Error& e) {
    fl = Verdict::no(e.what());
  }
  Verdict lccc;
  try {
    check_pi_types(h_object(C));
    lccc = Verdict::ok("every substitution in the self-indexing has a right adjoint");
  } catch (const Error& e) {
    lccc = Verdict::no(e.what());
  }
  Verdict ext = detail::check_extensive(C);
  Verdict exa = detail::check_exact(C);
  Verdict pret = detail::all_parts({{"extensive", &ext}, {"exact", &exa}});
  Verdict omega = detail::check_subobject_classifier(C, bound);
  Verdict nno = detail::check_nno(C, bound);
  Verdict arith = detail::all_parts({{"pretopos", &pret}, {"natural numbers", &nno}});
  Verdict pip = detail::all_parts({{"pretopos", &pret}, {"dependent products", &lccc}});
  Verdict topos = detail::all_parts(
      {{"pretopos", &pret}, {"subobject classifier", &omega}, {"dependent products", &lccc}});
  Verdict topos_nno = detail::all_parts({{"elementary topos", &topos}, {"natural numbers", &nno}});

  ClassReport rep;
  rep.entries = {
      {"finite limits", "1, ×, =ext, Σ", fl},
      {"locally cartesian closed", "1, ×, =ext, Σ, Π", lccc},
      {"pretopos", "O, 1, ×, =ext, Σ, +, Quot", pret},
      {"arithmetic pretopos", "O, 1, ×, =ext, Σ, +, Quot, ℕ", arith},
      {"pi pretopos", "O, 1, ×, =ext, Σ, Π, +, Quot", pip},
      {"elementary topos", "O, 1, ×, =ext, Σ, Π, +, Quot, Ω", topos},
      {"elementary topos with nno", "O, 1, ×, =ext, Σ, Π, +, Quot, Ω, ℕ", topos_nno},
  };
  for (const auto& e : rep.entries)
    if (e.verdict.verified()) {
      rep.achieved = e.cls;
      rep.signature = e.signature;
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Property transport across the biequivalence
// ---------------------------------------------------------------------------

struct PropertyBiequivReport {
  std::string property;
  Verdict base;            // the property on C itself
  bool h_fiberwise = false;  // every fiber and substitution of the self-indexing
  std::string h_detail;
  Verdict fiber_terminal;  // the property on the fiber over the empty context
  bool equivalence = false;  // the comprehension equivalence fiber(terminal) -> C
  bool pass = false;
};

inline PropertyBiequivReport extend_biequiv_check(const FinLimCat& C, const LocalProperty& P) {
  PropertyBiequivReport rep;
  rep.property = P.id;
  rep.base = P.cat_check(C);
  if (!rep.base.verified()) {
    rep.fiber_terminal = Verdict::no("not evaluated: the base category fails the property");
    return rep;
  }

  CompCat k = h_object(C);
  FiberPropertyReport fr = compcat_satisfies(k, P);
  rep.h_fiberwise = fr.pass;
  rep.h_detail = fr.detail;

  Fiber fib = fiber_category(k.types, k.terminal);
  std::vector<int> oo(fib.cat->object_count());
  for (int i = 0; i < fib.cat->object_count(); ++i)
    oo[i] = ctx_extension(k, fib.obj_to_dobj[i]);
  std::vector<int> mm(fib.cat->morphism_count(), -1);
  for (int j = 0; j < fib.cat->morphism_count(); ++j)
    mm[j] = chi_top(k, fib.mor_to_dmor[j]);
  FinFunctor ext = FinFunctor::validate(fib.cat, C.cat, std::move(oo), std::move(mm));

  FinLimCat fibfl = make_finlim(fib.cat);
  rep.equivalence = std::holds_alternative<EquivalenceWitness>(check_equivalence(ext));
  if (rep.equivalence) {
    try {
      check_preserves_finlim(fibfl, ext);
    } catch (const Error&) {
      rep.equivalence = false;
    }
  }
  rep.fiber_terminal = P.cat_check(fibfl);
  rep.pass = rep.h_fiberwise && rep.equivalence && rep.fiber_terminal.verified();
  return rep;
}

}  // namespace catlang
