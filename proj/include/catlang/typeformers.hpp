#pragma once

#include <string>
#include <utility>
#include <vector>

#include "compcat.hpp"

namespace catlang {

// Dependent type structure on a comprehension category: unit types, fiberwise
// products and equalizers, dependent sums and products with their
// Beck-Chevalley conditions, democracy, and extensional identity types built
// from fiber equalizers. Every checker either returns explicit witnesses or
// throws with the first failure it finds.

// ---------------------------------------------------------------------------
// Unit types
// ---------------------------------------------------------------------------

struct UnitStructure {
  std::vector<int> unit;      // per base object: the fiberwise terminal type
  std::vector<int> proj_inv;  // per base object: inverse of its projection
};

// Fiberwise terminal objects, stable under substitution, whose context
// projections are isomorphisms.
inline UnitStructure check_unit_types(const CompCat& k) {
  const FinCat& b = *k.base;
  FiberwiseReport r = check_fiberwise_limits(k.cleaving, Shape::Terminal);
  for (int x = 0; x < b.object_count(); ++x)
    if (!r.fiber_ok[x]) fail("NoFiberwiseTerminal", "no terminal type over " + b.object(x));
  for (int f = 0; f < b.morphism_count(); ++f)
    if (!r.preserved[f])
      fail("NoFiberwiseTerminal",
           "substitution along " + b.mor_name(f) + " does not preserve the unit");
  UnitStructure u;
  u.unit.resize(b.object_count());
  u.proj_inv.resize(b.object_count());
  for (int x = 0; x < b.object_count(); ++x) {
    Fiber fib = fiber_category(k.types, x);
    auto w = find_universal(*fib.cat, Diagram::terminal());
    u.unit[x] = fib.obj_to_dobj[w->apex];
    int inv = b.inverse_of(ctx_projection(k, u.unit[x]));
    if (inv < 0)
      fail("ProjectionNotIso", "unit projection over " + b.object(x) + " is not invertible");
    u.proj_inv[x] = inv;
  }
  return u;
}

// ---------------------------------------------------------------------------
// Fiberwise products and equalizers
// ---------------------------------------------------------------------------

inline FiberwiseReport check_prod_eq_types(const CompCat& k, Shape shape) {
  if (shape != Shape::BinProduct && shape != Shape::Equalizer)
    fail("ShapeMismatch", "fiberwise type formers cover binary products and equalizers");
  return check_fiberwise_limits(k.cleaving, shape);
}

// ---------------------------------------------------------------------------
// Dependent sums and products
// ---------------------------------------------------------------------------

// Weakening by a type: substitution along its context projection, together
// with the adjoint on the requested side.
struct TypeAdjoint {
  int type = -1;
  SubstFunctor weakening;
  Adjunction adj;  // Left: adj.left is the sum, adj.right the weakening.
                   // Right: adj.left is the weakening, adj.right the product.
};

struct BCCheck {
  int subst = -1;  // base morphism of the comprehension square
  int type = -1;   // type over its target
  BCResult result;
};

namespace detail {

inline void recheck_cleaving(const CompCat& k) {
  const DispCat& t = *k.types;
  const FinCat& b = *k.base;
  for (int f = 0; f < b.morphism_count(); ++f)
    for (int ybar : t.dobjects_over(b.dst(f))) {
      int mor = k.cleaving.lift_mor(f, ybar);
      if (mor < 0 || !is_cartesian(t, mor).cartesian)
        fail("NotCartesian", "chosen lift of " + b.mor_name(f) + " at " + t.dobj(ybar).name +
                                 " is not cartesian");
    }
}

inline std::vector<TypeAdjoint> weakening_adjoints(const CompCat& k, AdjointSide side) {
  std::vector<TypeAdjoint> out;
  for (int a = 0; a < k.types->dobject_count(); ++a) {
    SubstFunctor w = substitution_functor(k.cleaving, ctx_projection(k, a));
    AdjointResult r = find_adjoint(w.functor, side);
    if (!std::holds_alternative<Adjunction>(r)) {
      std::string code = side == AdjointSide::Left ? "NoLeftAdjoint" : "NoRightAdjoint";
      std::string why = std::holds_alternative<SearchBoundExceeded>(r)
                            ? "search bound exceeded"
                            : "no adjoint to weakening";
      fail(code, why + " by " + k.types->dobj(a).name + " over " +
                     k.base->object(k.types->dobj(a).over));
    }
    out.push_back({a, std::move(w), std::get<Adjunction>(std::move(r))});
  }
  return out;
}

// The comprehension square of a substitution s at a type A over its target,
// with the canonical filler between the two weakening-then-substitute paths.
inline BCSquare comprehension_square(const CompCat& k, const std::vector<TypeAdjoint>& adjoints,
                                     AdjointSide side, int s, int a) {
  const DispCat& t = *k.types;
  const FinCat& b = *k.base;
  int sa = k.cleaving.lift_src(s, a);
  int q = chi_top(k, k.cleaving.lift_mor(s, a));
  int pi_a = ctx_projection(k, a);
  int pi_sa = ctx_projection(k, sa);
  const SubstFunctor& g1 = adjoints[a].weakening;
  const SubstFunctor& g2 = adjoints[sa].weakening;
  SubstFunctor f1 = substitution_functor(k.cleaving, s);
  SubstFunctor f2 = substitution_functor(k.cleaving, q);
  int ext_sa = ctx_extension(k, sa);
  std::vector<int> comps(g1.from.cat->object_count());
  for (int i = 0; i < g1.from.cat->object_count(); ++i) {
    int x = g1.from.obj_to_dobj[static_cast<size_t>(i)];
    int via_a = t.dcompose(k.cleaving.lift_mor(q, k.cleaving.lift_src(pi_a, x)),
                           k.cleaving.lift_mor(pi_a, x));
    int via_s = t.dcompose(k.cleaving.lift_mor(pi_sa, k.cleaving.lift_src(s, x)),
                           k.cleaving.lift_mor(s, x));
    int v = cartesian_factor(t, via_s, t.dmor(via_a).src, b.identity(ext_sa), via_a);
    comps[static_cast<size_t>(i)] = f2.to.mor_of_dmor(v);
  }
  NatTrans tau = NatTrans::validate(compose_functors(g1.functor, f2.functor),
                                    compose_functors(f1.functor, g2.functor), std::move(comps));
  return BCSquare::make(f1.functor, g1.functor, g2.functor, f2.functor, std::move(tau), side,
                        adjoints[a].adj, adjoints[sa].adj);
}

inline std::vector<BCCheck> weakening_bc(const CompCat& k,
                                         const std::vector<TypeAdjoint>& adjoints,
                                         AdjointSide side) {
  std::vector<BCCheck> out;
  const FinCat& b = *k.base;
  for (int s = 0; s < b.morphism_count(); ++s)
    for (int a : k.types->dobjects_over(b.dst(s)))
      out.push_back({s, a, beck_chevalley(comprehension_square(k, adjoints, side, s, a))});
  return out;
}

inline void require_bc(const CompCat& k, const std::vector<BCCheck>& checks) {
  for (const BCCheck& c : checks)
    if (!c.result.holds)
      fail("BCFails", "Beck-Chevalley fails for " + k.base->mor_name(c.subst) + " at " +
                          k.types->dobj(c.type).name);
}

}  // namespace detail

// One dependent sum with its strength witness: the canonical comparison from
// the iterated extension to the extension by the sum, and its inverse.
struct SigmaComparison {
  int type = -1;      // A over some context
  int argument = -1;  // B over the extension by A
  int sum = -1;       // the sum type, over the same context as A
  int comparison = -1;
  int inverse = -1;
};

struct SigmaStructure {
  std::vector<TypeAdjoint> adjoints;  // indexed by type
  std::vector<BCCheck> bc;
  std::vector<SigmaComparison> comparisons;
};

// Left adjoints to all weakenings, Beck-Chevalley for every comprehension
// square, and invertible strength comparisons.
inline SigmaStructure check_sigma_types(const CompCat& k) {
  if (!k.full) fail("NotFull", "dependent sums need a full comprehension");
  detail::recheck_cleaving(k);
  SigmaStructure s;
  s.adjoints = detail::weakening_adjoints(k, AdjointSide::Left);
  s.bc = detail::weakening_bc(k, s.adjoints, AdjointSide::Left);
  detail::require_bc(k, s.bc);
  const DispCat& t = *k.types;
  for (int a = 0; a < t.dobject_count(); ++a) {
    const Fiber& over_ext = s.adjoints[a].weakening.to;
    const Fiber& over_ctx = s.adjoints[a].weakening.from;
    const Adjunction& adj = s.adjoints[a].adj;
    for (int bt : t.dobjects_over(ctx_extension(k, a))) {
      int bi = over_ext.obj_of_dobj(bt);
      int sum = over_ctx.obj_to_dobj[static_cast<size_t>(adj.left.obj(bi))];
      int eta = over_ext.mor_to_dmor[static_cast<size_t>(adj.unit.component(bi))];
      int comparison = k.base->compose(
          chi_top(k, eta), chi_top(k, k.cleaving.lift_mor(ctx_projection(k, a), sum)));
      int inverse = k.base->inverse_of(comparison);
      if (inverse < 0)
        fail("NotStrong", "sum comparison for " + t.dobj(bt).name + " over " + t.dobj(a).name +
                              " is not invertible");
      s.comparisons.push_back({a, bt, sum, comparison, inverse});
    }
  }
  return s;
}

struct PiStructure {
  std::vector<TypeAdjoint> adjoints;  // indexed by type
  std::vector<BCCheck> bc;
};

// Right adjoints to all weakenings with Beck-Chevalley.
inline PiStructure check_pi_types(const CompCat& k) {
  if (!k.full) fail("NotFull", "dependent products need a full comprehension");
  detail::recheck_cleaving(k);
  PiStructure p;
  p.adjoints = detail::weakening_adjoints(k, AdjointSide::Right);
  p.bc = detail::weakening_bc(k, p.adjoints, AdjointSide::Right);
  detail::require_bc(k, p.bc);
  return p;
}

// ---------------------------------------------------------------------------
// Democracy
// ---------------------------------------------------------------------------

struct DemocracyWitness {
  int ctx = -1;
  int type = -1;  // a type over the terminal context
  int iso = -1;   // ctx -> extension of that type
  int inverse = -1;
};

struct DemocracyStructure {
  std::vector<DemocracyWitness> witnesses;  // per base object
};

// Every context is isomorphic to an extension of the terminal context.
// Deterministic: candidate types in declaration order, then the earliest
// invertible comparison.
inline DemocracyStructure check_democracy(const CompCat& k) {
  const FinCat& b = *k.base;
  DemocracyStructure d;
  for (int g = 0; g < b.object_count(); ++g) {
    DemocracyWitness w;
    w.ctx = g;
    for (int cand : k.types->dobjects_over(k.terminal)) {
      for (int m : b.hom(g, ctx_extension(k, cand))) {
        int inv = b.inverse_of(m);
        if (inv >= 0) {
          w.type = cand;
          w.iso = m;
          w.inverse = inv;
          break;
        }
      }
      if (w.type >= 0) break;
    }
    if (w.type < 0) fail("NotDemocratic", "no representing type for context " + b.object(g));
    d.witnesses.push_back(w);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Extensional identity types
// ---------------------------------------------------------------------------

// The identity type of two terms: both become vertical maps out of the unit
// type through the comprehension, and their fiber equalizer is the result.
inline int ext_id_type(const CompCat& k, const Term& t1, const Term& t2) {
  if (t1.ctx != t2.ctx || t1.type != t2.type)
    fail("ShapeMismatch", "identity types compare two terms of one type");
  if (!is_term(k, t1) || !is_term(k, t2)) fail("NotSection", "not a term");
  if (!k.full) fail("MissingStructure", "identity types need a full comprehension");
  UnitStructure u = [&] {
    try {
      return check_unit_types(k);
    } catch (const Error& e) {
      fail("MissingStructure", std::string("identity types need unit types: ") + e.what());
    }
  }();
  FiberwiseReport eq = check_fiberwise_limits(k.cleaving, Shape::Equalizer);
  if (!eq.ok) fail("MissingStructure", "identity types need fiberwise equalizers: " + eq.detail);
  int g = t1.ctx;
  int pi_unit = ctx_projection(k, u.unit[g]);
  int v1 = chi_preimage(k, k.base->identity(g), u.unit[g], t1.type,
                        k.base->compose(pi_unit, t1.section));
  int v2 = chi_preimage(k, k.base->identity(g), u.unit[g], t2.type,
                        k.base->compose(pi_unit, t2.section));
  Fiber fib = fiber_category(k.types, g);
  auto w = find_universal(*fib.cat, Diagram::equalizer(fib.mor_of_dmor(v1), fib.mor_of_dmor(v2)));
  if (!w) fail("MissingStructure", "no equalizer of the compared terms");
  return fib.obj_to_dobj[static_cast<size_t>(w->apex)];
}

// ---------------------------------------------------------------------------
// The full structure report
// ---------------------------------------------------------------------------

struct DFLReport {
  bool full = false;
  std::optional<UnitStructure> unit;
  FiberwiseReport prod, eq;
  std::optional<SigmaStructure> sigma;
  std::optional<DemocracyStructure> dem;
  std::string unit_error, sigma_error, dem_error;
  bool pass = false;
  std::string failure;  // first failing layer, empty when pass
};

// Layers in order: unit, products, equalizers, sums, democracy, fullness.
// The verdict names the first failure; fullness is reported last so that
// fiberwise defects of partial comprehensions surface first.
inline DFLReport check_dfl(const CompCat& k) {
  DFLReport r;
  r.full = k.full;
  auto note = [&r](const std::string& layer, const std::string& why) {
    if (r.failure.empty()) r.failure = layer + ": " + why;
  };
  try {
    r.unit = check_unit_types(k);
  } catch (const Error& e) {
    r.unit_error = e.what();
    note("unit", e.what());
  }
  r.prod = check_prod_eq_types(k, Shape::BinProduct);
  if (!r.prod.ok) note("products", r.prod.detail);
  r.eq = check_prod_eq_types(k, Shape::Equalizer);
  if (!r.eq.ok) note("equalizers", r.eq.detail);
  try {
    r.sigma = check_sigma_types(k);
  } catch (const Error& e) {
    r.sigma_error = e.what();
    if (r.full) note("sums", e.what());
  }
  try {
    r.dem = check_democracy(k);
  } catch (const Error& e) {
    r.dem_error = e.what();
    note("democracy", e.what());
  }
  if (!r.full) note("comprehension", "not full");
  r.pass = r.full && r.unit && r.prod.ok && r.eq.ok && r.sigma && r.dem;
  return r;
}

// ---------------------------------------------------------------------------
// Morphisms of structured comprehension categories
// ---------------------------------------------------------------------------

// A morphism is an adjoint equivalence member exactly when its base functor
// and all of its fiber functors are equivalences.
inline bool is_adjequiv_1cell(const CompCat& k1, const CompCat& k2, const CompCatMorphism& m) {
  if (!std::holds_alternative<EquivalenceWitness>(check_equivalence(m.functor))) return false;
  for (int x = 0; x < k1.base->object_count(); ++x) {
    Fiber from = fiber_category(k1.types, x);
    Fiber to = fiber_category(k2.types, m.functor.obj(x));
    if (!std::holds_alternative<EquivalenceWitness>(
            check_equivalence(m.on_types.fiber_functor(from, to))))
      return false;
  }
  return true;
}

struct DemComparison {
  int ctx = -1;      // context of the source
  int dmor = -1;     // vertical iso in the target's types
  int inverse = -1;
};

// Any morphism between democratic comprehension categories relates the image
// of a representing type to the substituted representing type of the image
// context by a unique vertical isomorphism; the pentagon built from the two
// democracy isomorphisms, the comprehension filler, and the substitution
// commutes. Derived from the data, never assumed.
inline std::vector<DemComparison> democracy_transport(const CompCat& k1, const CompCat& k2,
                                                      const CompCatMorphism& m,
                                                      const DemocracyStructure& d1,
                                                      const DemocracyStructure& d2) {
  const FinCat& b2 = *k2.base;
  int fterm = m.functor.obj(k1.terminal);
  int bang = b2.hom(fterm, k2.terminal).at(0);
  std::vector<DemComparison> out;
  for (int g = 0; g < k1.base->object_count(); ++g) {
    const DemocracyWitness& w1 = d1.witnesses[static_cast<size_t>(g)];
    const DemocracyWitness& w2 = d2.witnesses[static_cast<size_t>(m.functor.obj(g))];
    int image = m.on_types.dobj(w1.type);
    int sub = k2.cleaving.lift_src(bang, w2.type);
    int into_image = b2.compose(m.functor.mor(w1.iso),
                                k2.arrow.dmor_top[m.chi_square[static_cast<size_t>(w1.type)]]);
    int from_sub = chi_top(k2, k2.cleaving.lift_mor(bang, w2.type));
    int inv_into = b2.inverse_of(into_image);
    int inv_from = b2.inverse_of(from_sub);
    if (inv_into < 0 || inv_from < 0)
      fail("NotInvertible", "democracy comparison legs are not invertible at " +
                                k1.base->object(g));
    int top = b2.compose(b2.compose(inv_into, w2.iso), inv_from);
    int d = chi_preimage(k2, b2.identity(fterm), image, sub, top);
    int dinv = vertical_inverse(*k2.types, d);
    if (dinv < 0)
      fail("NotInvertible", "democracy comparison is not invertible at " + k1.base->object(g));
    if (b2.compose(b2.compose(into_image, chi_top(k2, d)), from_sub) != w2.iso)
      fail("NotCompatible", "democracy pentagon does not commute at " + k1.base->object(g));
    out.push_back({g, d, dinv});
  }
  return out;
}

}  // namespace catlang
