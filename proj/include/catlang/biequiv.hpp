#pragma once
// Both directions of the correspondence between finitely complete categories
// and full democratic comprehension categories with unit, product, equalizer
// and sum types: H equips a category with its self-indexing, U recovers the
// base with limit witnesses transported out of the fiber over the terminal
// context, and the transformation components tie the two together.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "typeformers.hpp"

namespace catlang {

// ---------------------------------------------------------------------------
// Categories with chosen finite limits
// ---------------------------------------------------------------------------

struct FinLimCat {
  CatPtr cat;
  LimitWitness terminal;
  std::vector<LimitWitness> products;                      // indexed a * n + b
  std::map<std::pair<int, int>, LimitWitness> equalizers;  // keyed by parallel pair
  std::map<std::pair<int, int>, LimitWitness> pullbacks;   // keyed by cospan

  const LimitWitness& product(int a, int b) const {
    return products[static_cast<size_t>(a) * cat->object_count() + b];
  }
  const LimitWitness& equalizer(int f, int g) const { return equalizers.at({f, g}); }
  const LimitWitness& pullback(int f, int g) const { return pullbacks.at({f, g}); }
};

inline FinLimCat make_finlim(const CatPtr& c) {
  FinLimCat out;
  out.cat = c;
  auto t = find_universal(*c, Diagram::terminal());
  if (!t) fail("NotFinLim", "no terminal object");
  out.terminal = std::move(*t);
  int n = c->object_count();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto w = find_universal(*c, Diagram::product(a, b));
      if (!w) fail("NotFinLim", "no product of " + c->object(a) + " and " + c->object(b));
      out.products.push_back(std::move(*w));
    }
  for (int f = 0; f < c->morphism_count(); ++f)
    for (int g = 0; g < c->morphism_count(); ++g) {
      if (c->src(f) == c->src(g) && c->dst(f) == c->dst(g)) {
        auto w = find_universal(*c, Diagram::equalizer(f, g));
        if (!w)
          fail("NotFinLim", "no equalizer of " + c->mor_name(f) + " and " + c->mor_name(g));
        out.equalizers.emplace(std::make_pair(f, g), std::move(*w));
      }
      if (c->dst(f) == c->dst(g)) {
        auto w = find_universal(*c, Diagram::pullback(f, g));
        if (!w)
          fail("NotFinLim", "no pullback of " + c->mor_name(f) + " and " + c->mor_name(g));
        out.pullbacks.emplace(std::make_pair(f, g), std::move(*w));
      }
    }
  return out;
}

inline void validate_finlim(const FinLimCat& c) {
  const FinCat& b = *c.cat;
  auto chk = [&](const LimitWitness& w) {
    if (!verify_universal(b, w.diagram, w.apex, w.legs))
      fail("InvalidWitness",
           std::string(shape_name(w.diagram.shape)) + " witness fails its universal property");
  };
  chk(c.terminal);
  int n = b.object_count();
  if (static_cast<int>(c.products.size()) != n * n)
    fail("InvalidWitness", "product table is not total");
  for (const LimitWitness& w : c.products) chk(w);
  for (int f = 0; f < b.morphism_count(); ++f)
    for (int g = 0; g < b.morphism_count(); ++g) {
      if (b.src(f) == b.src(g) && b.dst(f) == b.dst(g)) {
        auto it = c.equalizers.find({f, g});
        if (it == c.equalizers.end()) fail("InvalidWitness", "equalizer table is not total");
        chk(it->second);
      }
      if (b.dst(f) == b.dst(g)) {
        auto it = c.pullbacks.find({f, g});
        if (it == c.pullbacks.end()) fail("InvalidWitness", "pullback table is not total");
        chk(it->second);
      }
    }
}

// Whether a functor carries each chosen limit of its source to a limit of the
// target. Limit preservation only depends on the choice up to isomorphism, so
// checking the chosen witnesses suffices.
inline void check_preserves_finlim(const FinLimCat& c1, const FinFunctor& f) {
  if (!same_category(*f.source(), *c1.cat))
    fail("ShapeMismatch", "functor source does not match the witnessed category");
  const FinCat& d = *f.target();
  const FinCat& s = *c1.cat;
  auto image_ok = [&](const LimitWitness& w) {
    Diagram dia = w.diagram;
    for (int& o : dia.objs) o = f.obj(o);
    for (int& m : dia.mors) m = f.mor(m);
    std::vector<int> legs(w.legs);
    for (int& m : legs) m = f.mor(m);
    return verify_universal(d, dia, f.obj(w.apex), legs).has_value();
  };
  if (!image_ok(c1.terminal)) fail("NotPreserving", "image of the terminal is not terminal");
  for (int a = 0; a < s.object_count(); ++a)
    for (int b = 0; b < s.object_count(); ++b)
      if (!image_ok(c1.product(a, b)))
        fail("NotPreserving",
             "product of " + s.object(a) + " and " + s.object(b) + " is not preserved");
  for (const auto& [key, w] : c1.equalizers)
    if (!image_ok(w))
      fail("NotPreserving", "equalizer of " + s.mor_name(key.first) + " and " +
                                s.mor_name(key.second) + " is not preserved");
  for (const auto& [key, w] : c1.pullbacks)
    if (!image_ok(w))
      fail("NotPreserving", "pullback of " + s.mor_name(key.first) + " and " +
                                s.mor_name(key.second) + " is not preserved");
}

// ---------------------------------------------------------------------------
// H : categories with finite limits -> comprehension categories
// ---------------------------------------------------------------------------

// The self-indexing: types over a context are the arrows into it and the
// comprehension is the identity. One arrow construction is shared by the type
// category and the comprehension target.
inline CompCat h_object(const FinLimCat& c) {
  ArrowDisp a = arrow_displayed(c.cat);
  auto cl = find_cleaving(a.disp);
  if (!std::holds_alternative<Cleaving>(cl))
    fail("NotFinLim", "arrow construction has no cleaving");
  return assemble_compcat(c.cat, a.disp, std::get<Cleaving>(std::move(cl)),
                          identity_disp_functor(a.disp));
}

// The 1-cell action: a limit preserving functor acts on types by the arrow
// construction, with identity comprehension fillers.
inline CompCatMorphism h_functor(const FinLimCat& c1, const FinLimCat& c2, const CompCat& k1,
                                 const CompCat& k2, const FinFunctor& f) {
  if (!same_category(*f.target(), *c2.cat))
    fail("ShapeMismatch", "functor target does not match the witnessed category");
  check_preserves_finlim(c1, f);
  DispFunctor on_types = arrow_disp_functor(k1.arrow, k2.arrow, f);
  std::vector<int> fill(k1.types->dobject_count());
  for (int i = 0; i < k1.types->dobject_count(); ++i)
    fill[i] = k2.arrow.disp->didentity(on_types.dobj(i));
  return make_compcat_morphism(k1, k2, f, on_types, std::move(fill));
}

// The 2-cell action is strict: a natural transformation acts by its naturality
// squares.
inline CompCat2Cell h_nat(const CompCat& k1, const CompCat& k2, const CompCatMorphism& m1,
                          const CompCatMorphism& m2, const NatTrans& tau) {
  DispNatTrans arr = arrow_disp_nattrans(k1.arrow, k2.arrow, m1.on_types, m2.on_types, tau);
  std::vector<int> comps(k1.types->dobject_count());
  for (int i = 0; i < k1.types->dobject_count(); ++i) comps[i] = arr.component(i);
  return make_compcat_2cell(k1, k2, m1, m2, tau, std::move(comps));
}

// ---------------------------------------------------------------------------
// U : comprehension categories -> categories with finite limits
// ---------------------------------------------------------------------------

namespace detail {

// The equivalence between the base and the fiber over the terminal context:
// each object is carried to its democracy type, each morphism to the unique
// vertical morphism between them compatible with the democracy isomorphisms.
struct DemTransport {
  Fiber fib;
  std::vector<int> delta;  // democracy type per base object
  std::vector<int> into;   // base object -> its extension
  std::vector<int> outof;  // and back
};

inline DemTransport dem_transport(const CompCat& k, const DemocracyStructure& dem) {
  DemTransport t{fiber_category(k.types, k.terminal), {}, {}, {}};
  for (int g = 0; g < k.base->object_count(); ++g) {
    t.delta.push_back(dem.witnesses[static_cast<size_t>(g)].type);
    t.into.push_back(dem.witnesses[static_cast<size_t>(g)].iso);
    t.outof.push_back(k.base->inverse_of(dem.witnesses[static_cast<size_t>(g)].iso));
  }
  return t;
}

inline int track_through_democracy(const CompCat& k, const DemTransport& t, int s) {
  const FinCat& c = *k.base;
  int top = c.compose(c.compose(t.outof[c.src(s)], s), t.into[c.dst(s)]);
  int v = chi_preimage(k, c.identity(k.terminal), t.delta[c.src(s)], t.delta[c.dst(s)], top);
  return t.fib.mor_of_dmor(v);
}

}  // namespace detail

// The base category of a comprehension category with all type formers, with
// limit witnesses computed in the fiber over the terminal context, carried
// back along the democracy isomorphisms and re-verified in the base.
inline FinLimCat u_object(const CompCat& k) {
  DFLReport rep = check_dfl(k);
  if (!rep.pass) fail("DFLCheckFailed", rep.failure);
  const FinCat& c = *k.base;
  detail::DemTransport t = detail::dem_transport(k, *rep.dem);
  FinLimCat out;
  out.cat = k.base;

  auto carry = [&](int fiber_mor, int target_obj) {
    return c.compose(chi_top(k, t.fib.mor_to_dmor[fiber_mor]), t.outof[target_obj]);
  };
  auto rebuild = [&](const Diagram& d, int fiber_apex,
                     const std::vector<int>& legs) -> LimitWitness {
    int apex = ctx_extension(k, t.fib.obj_to_dobj[fiber_apex]);
    auto med = verify_universal(c, d, apex, legs);
    if (!med)
      fail("InvalidWitness",
           "transported " + std::string(shape_name(d.shape)) + " fails its universal property");
    return {d, apex, legs, std::move(*med)};
  };

  {
    auto w = find_universal(*t.fib.cat, Diagram::terminal());
    if (!w) fail("InvalidWitness", "fiber over the terminal context has no terminal type");
    out.terminal = rebuild(Diagram::terminal(), w->apex, {});
  }
  for (int a = 0; a < c.object_count(); ++a)
    for (int b = 0; b < c.object_count(); ++b) {
      auto w = find_universal(
          *t.fib.cat,
          Diagram::product(t.fib.obj_of_dobj(t.delta[a]), t.fib.obj_of_dobj(t.delta[b])));
      if (!w)
        fail("InvalidWitness", "no fiber product for " + c.object(a) + " and " + c.object(b));
      out.products.push_back(rebuild(Diagram::product(a, b), w->apex,
                                     {carry(w->legs[0], a), carry(w->legs[1], b)}));
    }
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.src(f) == c.src(g) && c.dst(f) == c.dst(g)) {
        int vf = detail::track_through_democracy(k, t, f);
        int vg = detail::track_through_democracy(k, t, g);
        auto w = find_universal(*t.fib.cat, Diagram::equalizer(vf, vg));
        if (!w)
          fail("InvalidWitness",
               "no fiber equalizer for " + c.mor_name(f) + " and " + c.mor_name(g));
        out.equalizers.emplace(
            std::make_pair(f, g),
            rebuild(Diagram::equalizer(f, g), w->apex, {carry(w->legs[0], c.src(f))}));
      }
      if (c.dst(f) == c.dst(g)) {
        int vf = detail::track_through_democracy(k, t, f);
        int vg = detail::track_through_democracy(k, t, g);
        auto w = find_universal(*t.fib.cat, Diagram::pullback(vf, vg));
        if (!w)
          fail("InvalidWitness",
               "no fiber pullback for " + c.mor_name(f) + " and " + c.mor_name(g));
        out.pullbacks.emplace(std::make_pair(f, g),
                              rebuild(Diagram::pullback(f, g), w->apex,
                                      {carry(w->legs[0], c.src(f)), carry(w->legs[1], c.src(g))}));
      }
    }
  return out;
}

// The 1-cell action keeps the base functor and verifies that it preserves the
// transported limits.
inline FinFunctor u_functor(const FinLimCat& c1, const CompCatMorphism& m) {
  check_preserves_finlim(c1, m.functor);
  return m.functor;
}

// The 2-cell action keeps the base transformation.
inline NatTrans u_nat(const CompCat2Cell& t) { return t.base_cell; }

// ---------------------------------------------------------------------------
// Essential surjectivity of the comprehension
// ---------------------------------------------------------------------------

struct EssentialPreimage {
  int type = -1;  // a type over the codomain of the input morphism
  int to = -1;    // its extension -> the domain, a morphism in the slice
  int from = -1;  // the inverse slice morphism
};

// Exhibits any context morphism s as the projection of a type, up to a slice
// isomorphism: the domain is rebuilt as the sum over the weakened domain
// representative of the identity type of two pullback mediators.
inline EssentialPreimage essential_preimage(const CompCat& k, int s) {
  DFLReport rep = check_dfl(k);
  if (!rep.pass) fail("DFLCheckFailed", rep.failure);
  const FinCat& c = *k.base;
  const DemocracyStructure& dem = *rep.dem;
  const SigmaStructure& sig = *rep.sigma;
  int gamma = c.dst(s), delta = c.src(s);
  const DemocracyWitness& wg = dem.witnesses[static_cast<size_t>(gamma)];
  const DemocracyWitness& wd = dem.witnesses[static_cast<size_t>(delta)];
  int into_g = wg.iso, outof_d = c.inverse_of(wd.iso);
  int bang = c.hom(gamma, k.terminal).at(0);

  // dhat: the domain representative weakened to the codomain; e1 extends by it
  int dhat = k.cleaving.lift_src(bang, wd.type);
  int e1 = ctx_extension(k, dhat);
  int pi1 = ctx_projection(k, dhat);
  int tdel = chi_top(k, k.cleaving.lift_mor(bang, wd.type));

  // ghat: the codomain representative weakened all the way to e1
  int bang_e1 = c.hom(e1, k.terminal).at(0);
  int ghat = k.cleaving.lift_src(bang_e1, wg.type);
  int tgam = chi_top(k, k.cleaving.lift_mor(bang_e1, wg.type));

  // the comprehension square of ghat is a pullback; its mediators give two
  // sections of ghat's projection
  auto med = verify_universal(c, Diagram::pullback(bang_e1, ctx_projection(k, wg.type)),
                              ctx_extension(k, ghat), {ctx_projection(k, ghat), tgam});
  if (!med) fail("NotCartesian", "comprehension square of the weakened type is not a pullback");
  int l = med->at({c.identity(e1), c.compose(pi1, into_g)});
  int r = med->at({c.identity(e1),
                   c.compose(c.compose(c.compose(tdel, outof_d), s), into_g)});

  int idt = ext_id_type(k, Term{e1, ghat, l}, Term{e1, ghat, r});
  int pi_idt = ctx_projection(k, idt);

  // sum the identity type over dhat and fetch the strength comparison
  const TypeAdjoint& ta = sig.adjoints[static_cast<size_t>(dhat)];
  int a = ta.weakening.from.obj_to_dobj[ta.adj.left.obj(ta.weakening.to.obj_of_dobj(idt))];
  int comp = -1, compinv = -1;
  for (const SigmaComparison& sc : sig.comparisons)
    if (sc.type == dhat && sc.argument == idt) {
      comp = sc.comparison;
      compinv = sc.inverse;
    }
  if (comp < 0) fail("InvalidWitness", "missing strength comparison for the sum");

  int to = c.compose(c.compose(c.compose(compinv, pi_idt), tdel), outof_d);

  // the inverse: mediate the domain into e1, then take the unique section of
  // the identity type over it
  auto med2 = verify_universal(c, Diagram::pullback(bang, ctx_projection(k, wd.type)), e1,
                               {pi1, tdel});
  if (!med2) fail("NotCartesian", "comprehension square of the weakened type is not a pullback");
  int h = med2->at({s, wd.iso});
  int from0 = -1, count = 0;
  for (int m : c.hom(delta, ctx_extension(k, idt)))
    if (c.compose(m, pi_idt) == h) {
      from0 = m;
      ++count;
    }
  if (count != 1) fail("NotInvertible", "no unique section over the pullback mediator");
  int from = c.compose(from0, comp);

  int pia = ctx_projection(k, a);
  if (c.compose(to, s) != pia || c.compose(from, pia) != s ||
      c.compose(to, from) != c.identity(ctx_extension(k, a)) ||
      c.compose(from, to) != c.identity(delta))
    fail("NotInvertible", "essential preimage does not give a slice isomorphism");
  return {a, to, from};
}

// ---------------------------------------------------------------------------
// Transformation components and roundtrips
// ---------------------------------------------------------------------------

inline FinFunctor xi_component(const FinLimCat& c) { return FinFunctor::identity(c.cat); }

struct ZetaComponent {
  FinLimCat base;       // the recovered finite-limit category
  CompCat target;       // its self-indexing
  CompCatMorphism mor;  // identity on contexts, the comprehension on types
};

inline ZetaComponent zeta_component(const CompCat& k) {
  FinLimCat u = u_object(k);
  CompCat hu = h_object(u);
  std::vector<int> oo(k.types->dobject_count()), mm(k.types->dmorphism_count());
  for (int i = 0; i < k.types->dobject_count(); ++i) oo[i] = k.chi.dobj(i);
  for (int i = 0; i < k.types->dmorphism_count(); ++i) mm[i] = k.chi.dmor(i);
  DispFunctor on_types = DispFunctor::validate(FinFunctor::identity(k.base), k.types, hu.types,
                                               std::move(oo), std::move(mm));
  std::vector<int> fill(k.types->dobject_count());
  for (int i = 0; i < k.types->dobject_count(); ++i)
    fill[i] = hu.arrow.disp->didentity(on_types.dobj(i));
  CompCatMorphism m =
      make_compcat_morphism(k, hu, FinFunctor::identity(k.base), on_types, std::move(fill));
  return {std::move(u), std::move(hu), std::move(m)};
}

struct RoundtripReport {
  std::string direction;           // "UH" or "HU"
  bool equivalence = false;        // UH: the unit functor; HU: the counit 1-cell
  bool witnesses_ok = false;       // UH: transported witnesses verify; HU: roundtrip is DFL
  bool identities_strict = false;  // identities map to the identity morphism
  bool composites_strict = false;  // composites map to composites on the nose
  bool pass = false;
};

namespace detail {

inline bool same_compcat_morphism(const CompCat& k1, const CompCatMorphism& a,
                                  const CompCatMorphism& b) {
  if (!a.functor.equals(b.functor)) return false;
  for (int i = 0; i < k1.types->dobject_count(); ++i)
    if (a.on_types.dobj(i) != b.on_types.dobj(i)) return false;
  for (int m = 0; m < k1.types->dmorphism_count(); ++m)
    if (a.on_types.dmor(m) != b.on_types.dmor(m)) return false;
  return a.chi_square == b.chi_square;
}

inline bool h_composite_strict(const FinLimCat& c, const CompCat& k, const FinFunctor& f1,
                               const FinFunctor& f2) {
  CompCatMorphism a = h_functor(c, c, k, k, f1);
  CompCatMorphism b = h_functor(c, c, k, k, f2);
  CompCatMorphism ab = h_functor(c, c, k, k, compose_functors(f1, f2));
  if (!ab.functor.equals(compose_functors(a.functor, b.functor))) return false;
  for (int i = 0; i < k.types->dobject_count(); ++i)
    if (ab.on_types.dobj(i) != b.on_types.dobj(a.on_types.dobj(i))) return false;
  for (int m = 0; m < k.types->dmorphism_count(); ++m)
    if (ab.on_types.dmor(m) != b.on_types.dmor(a.on_types.dmor(m))) return false;
  return true;
}

}  // namespace detail

inline RoundtripReport roundtrip_finlim(const FinLimCat& c,
                                        const std::vector<FinFunctor>& tests = {}) {
  RoundtripReport r;
  r.direction = "UH";
  try {
    CompCat k = h_object(c);
    FinLimCat u = u_object(k);
    try {
      validate_finlim(u);
      r.witnesses_ok = true;
    } catch (const Error&) {
      r.witnesses_ok = false;
    }
    r.equivalence = std::holds_alternative<EquivalenceWitness>(check_equivalence(xi_component(c)));
    r.identities_strict = detail::same_compcat_morphism(
        k, h_functor(c, c, k, k, FinFunctor::identity(c.cat)), identity_compcat_morphism(k));
    r.composites_strict = true;
    std::vector<FinFunctor> fs = tests;
    if (fs.empty()) fs.push_back(FinFunctor::identity(c.cat));
    for (const FinFunctor& f1 : fs)
      for (const FinFunctor& f2 : fs)
        if (!detail::h_composite_strict(c, k, f1, f2)) r.composites_strict = false;
  } catch (const Error&) {
    return r;
  }
  r.pass = r.equivalence && r.witnesses_ok && r.identities_strict && r.composites_strict;
  return r;
}

inline RoundtripReport roundtrip_compcat(const CompCat& k,
                                         const std::vector<FinFunctor>& tests = {}) {
  RoundtripReport r;
  r.direction = "HU";
  try {
    ZetaComponent z = zeta_component(k);
    r.equivalence = is_adjequiv_1cell(k, z.target, z.mor);
    r.witnesses_ok = check_dfl(z.target).pass;
    r.identities_strict = detail::same_compcat_morphism(
        z.target, h_functor(z.base, z.base, z.target, z.target, FinFunctor::identity(z.base.cat)),
        identity_compcat_morphism(z.target));
    r.composites_strict = true;
    std::vector<FinFunctor> fs = tests;
    if (fs.empty()) fs.push_back(FinFunctor::identity(z.base.cat));
    for (const FinFunctor& f1 : fs)
      for (const FinFunctor& f2 : fs)
        if (!detail::h_composite_strict(z.base, z.target, f1, f2)) r.composites_strict = false;
  } catch (const Error&) {
    return r;
  }
  r.pass = r.equivalence && r.witnesses_ok && r.identities_strict && r.composites_strict;
  return r;
}

}  // namespace catlang
