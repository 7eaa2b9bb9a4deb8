#pragma once
// Comprehension categories over a finite base: a displayed category of types
// with a cleaving and a comprehension functor into the arrow construction,
// plus the interpretation calculus: context extension, substitution of types
// and terms, variables, and extended context morphisms.

#include <utility>

#include "displayed.hpp"

namespace catlang {

// ---------------------------------------------------------------------------
// CompCat
// ---------------------------------------------------------------------------

struct CompCat {
  CatPtr base;
  int terminal = -1;  // designated terminal object, earliest in object order
  DispPtr types;
  Cleaving cleaving;
  ArrowDisp arrow;  // arrow construction over the base, target of chi
  DispFunctor chi;
  bool full = false;
};

inline bool object_is_terminal(const FinCat& c, int x) {
  for (int w = 0; w < c.object_count(); ++w)
    if (c.hom(w, x).size() != 1) return false;
  return true;
}

// The comprehension square of a displayed morphism: its image under chi,
// read off as the top arrow of the arrow-category square.
inline int chi_top(const CompCat& k, int dmor) { return k.arrow.dmor_top[k.chi.dmor(dmor)]; }

// Context extension of a type: the domain and projection of chi(A).
inline int ctx_extension(const CompCat& k, int type) {
  return k.base->src(k.arrow.dobj_to_mor[k.chi.dobj(type)]);
}
inline int ctx_projection(const CompCat& k, int type) {
  return k.arrow.dobj_to_mor[k.chi.dobj(type)];
}

inline CompCat assemble_compcat(CatPtr base, DispPtr types, Cleaving cleaving,
                                DispFunctor chi) {
  CompCat k;
  k.base = std::move(base);
  k.types = std::move(types);
  k.cleaving = std::move(cleaving);
  k.arrow = arrow_displayed(k.base);
  k.chi = std::move(chi);

  auto top = find_universal(*k.base, Diagram::terminal());
  if (!top) fail("NoTerminal", "base category has no terminal object");
  k.terminal = top->apex;

  if (!same_displayed(*k.cleaving.disp, *k.types))
    fail("ShapeMismatch", "cleaving does not belong to the type category");
  if (!same_displayed(*k.chi.source(), *k.types) ||
      !same_displayed(*k.chi.target(), *k.arrow.disp))
    fail("ShapeMismatch", "comprehension endpoints do not match");
  if (!k.chi.over().equals(FinFunctor::identity(k.base)))
    fail("NotOverIdentity", "comprehension must lie over the identity");

  DispFunctorReport rep = check_displayed_functor(k.chi);
  if (!rep.cartesian)
    fail("NotCartesian",
         "comprehension does not preserve " + k.types->dmor(rep.witness).name);

  // Defense in depth: the chi image of every chosen Cartesian lift must be a
  // genuine pullback square in the base.
  const DispCat& t = *k.types;
  for (int f = 0; f < k.base->morphism_count(); ++f)
    for (int ybar : t.dobjects_over(k.base->dst(f))) {
      auto [xbar, fbar] = k.cleaving.lift(f, ybar);
      if (!verify_universal(*k.base, Diagram::pullback(f, ctx_projection(k, ybar)),
                            ctx_extension(k, xbar),
                            {ctx_projection(k, xbar), chi_top(k, fbar)}))
        fail("NotCartesian", "comprehension square of the lift of " +
                                 k.base->mor_name(f) + " is not a pullback");
    }

  // Fullness: chi is bijective on displayed hom-sets over every base morphism.
  k.full = true;
  for (int f = 0; f < k.base->morphism_count() && k.full; ++f)
    for (int a : t.dobjects_over(k.base->src(f)))
      for (int b : t.dobjects_over(k.base->dst(f))) {
        auto src_homs = t.dhom_over(a, b, f);
        auto dst_homs = k.arrow.disp->dhom_over(k.chi.dobj(a), k.chi.dobj(b), f);
        std::vector<int> images;
        for (int m : src_homs) images.push_back(k.chi.dmor(m));
        std::sort(images.begin(), images.end());
        if (std::unique(images.begin(), images.end()) != images.end() ||
            images.size() != dst_homs.size()) {
          k.full = false;
          break;
        }
      }
  return k;
}

// The unique displayed preimage of an arrow square under chi; requires
// fullness.
inline int chi_preimage(const CompCat& k, int f, int a, int b, int top) {
  if (!k.full) fail("NotFull", "comprehension preimages need a full comprehension");
  int found = -1, count = 0;
  for (int m : k.types->dhom_over(a, b, f))
    if (chi_top(k, m) == top) {
      found = m;
      ++count;
    }
  if (count != 1) fail("NotFull", "comprehension preimage is not unique");
  return found;
}

// ---------------------------------------------------------------------------
// The interpretation calculus
// ---------------------------------------------------------------------------

struct Term {
  int ctx = -1;      // base object
  int type = -1;     // displayed object over ctx
  int section = -1;  // base morphism ctx -> ctx.type with section ; proj = id
};

struct CtxExtension {
  int extension = -1;   // the object ctx.type
  int projection = -1;  // the base morphism ctx.type -> ctx
};

inline CtxExtension ctx_extend(const CompCat& k, int ctx, int type) {
  if (type < 0 || type >= k.types->dobject_count() || k.types->dobj(type).over != ctx)
    fail("UnknownType", "type does not live over the given context");
  return {ctx_extension(k, type), ctx_projection(k, type)};
}

struct SubstType {
  int type = -1;  // the substituted type s*A over src(s)
  int lift = -1;  // the chosen Cartesian lift s*A -> A in the type category
};

inline SubstType subst_type(const CompCat& k, int s, int type) {
  if (type < 0 || type >= k.types->dobject_count() ||
      k.types->dobj(type).over != k.base->dst(s))
    fail("UnknownType", "type does not live over the target of the substitution");
  auto [xbar, fbar] = k.cleaving.lift(s, type);
  return {xbar, fbar};
}

inline std::vector<Term> terms(const CompCat& k, int ctx, int type) {
  CtxExtension e = ctx_extend(k, ctx, type);
  std::vector<Term> out;
  for (int t : k.base->hom(ctx, e.extension))
    if (k.base->compose(t, e.projection) == k.base->identity(ctx))
      out.push_back({ctx, type, t});
  return out;
}

inline bool is_term(const CompCat& k, const Term& t) {
  if (t.type < 0 || t.type >= k.types->dobject_count() ||
      k.types->dobj(t.type).over != t.ctx)
    return false;
  CtxExtension e = ctx_extend(k, t.ctx, t.type);
  return t.section >= 0 && t.section < k.base->morphism_count() &&
         k.base->src(t.section) == t.ctx && k.base->dst(t.section) == e.extension &&
         k.base->compose(t.section, e.projection) == k.base->identity(t.ctx);
}

// The mediators of the comprehension square of the lift along s; the square
// is a pullback of (s, projection of the type).
inline std::map<std::vector<int>, int> subst_square_mediators(const CompCat& k, int s,
                                                              int type,
                                                              const SubstType& st) {
  auto med = verify_universal(*k.base, Diagram::pullback(s, ctx_projection(k, type)),
                              ctx_extension(k, st.type),
                              {ctx_projection(k, st.type), chi_top(k, st.lift)});
  if (!med) fail("NotCartesian", "comprehension square is not a pullback");
  return *med;
}

// var : the term of type proj*A in the extended context ctx.A, given by the
// mediator of the comprehension pullback against the cone (id, id).
inline Term var_term(const CompCat& k, int ctx, int type) {
  CtxExtension e = ctx_extend(k, ctx, type);
  SubstType st = subst_type(k, e.projection, type);
  auto med = subst_square_mediators(k, e.projection, type, st);
  int id_ext = k.base->identity(e.extension);
  return {e.extension, st.type, med.at({id_ext, id_ext})};
}

// s*t : substitution of a term along s, the mediator against the cone
// (id, s ; t).
inline Term subst_term(const CompCat& k, int s, const Term& t) {
  if (t.ctx != k.base->dst(s)) fail("UnknownType", "term context does not match");
  if (!is_term(k, t)) fail("NotSection", "input is not a section of its projection");
  SubstType st = subst_type(k, s, t.type);
  auto med = subst_square_mediators(k, s, t.type, st);
  int g = k.base->src(s);
  return {g, st.type, med.at({k.base->identity(g), k.base->compose(s, t.section)})};
}

// <s, t> : the extended context morphism src(s) -> dst(s).A, defined as
// t ; chi(lift of s).
inline int pair_sub(const CompCat& k, int s, int type, const Term& t) {
  SubstType st = subst_type(k, s, type);
  if (t.ctx != k.base->src(s) || t.type != st.type)
    fail("UnknownType", "term does not have the substituted type");
  if (!is_term(k, t)) fail("NotSection", "input is not a section of its projection");
  return k.base->compose(t.section, chi_top(k, st.lift));
}

// ---------------------------------------------------------------------------
// Pseudo morphisms and 2-cells
// ---------------------------------------------------------------------------

struct CompCatMorphism {
  FinFunctor functor;                  // on bases, preserves the terminal
  DispFunctor on_types;                // over the base functor, Cartesian
  DispFunctor chi_then_arrow;          // chi_1 ; Arr(F)
  DispFunctor types_then_chi;          // on_types ; chi_2
  std::vector<int> chi_square;         // components of the filler, per type
  std::vector<int> chi_square_inv;     // their vertical inverses
};

inline CompCatMorphism make_compcat_morphism(const CompCat& k1, const CompCat& k2,
                                             FinFunctor f, DispFunctor on_types,
                                             std::vector<int> chi_square) {
  if (!same_category(*f.source(), *k1.base) || !same_category(*f.target(), *k2.base))
    fail("ShapeMismatch", "base functor endpoints do not match");
  if (!object_is_terminal(*k2.base, f.obj(k1.terminal)))
    fail("NoTerminal", "base functor does not preserve the terminal object");
  if (!same_displayed(*on_types.source(), *k1.types) ||
      !same_displayed(*on_types.target(), *k2.types) || !on_types.over().equals(f))
    fail("ShapeMismatch", "type functor endpoints do not match");
  DispFunctorReport rep = check_displayed_functor(on_types);
  if (!rep.cartesian)
    fail("NotCartesian",
         "type functor does not preserve " + k1.types->dmor(rep.witness).name);

  CompCatMorphism m;
  m.functor = f;
  m.on_types = on_types;
  m.chi_then_arrow =
      compose_disp_functors(k1.chi, arrow_disp_functor(k1.arrow, k2.arrow, f));
  m.types_then_chi = compose_disp_functors(on_types, k2.chi);
  // Validates displayed naturality of the filler over the identity on f.
  DispNatTrans filler = DispNatTrans::validate(NatTrans::identity(f), m.chi_then_arrow,
                                               m.types_then_chi, chi_square);
  m.chi_square = std::move(chi_square);
  m.chi_square_inv.resize(m.chi_square.size());
  for (size_t i = 0; i < m.chi_square.size(); ++i) {
    int inv = vertical_inverse(*k2.arrow.disp, m.chi_square[i]);
    if (inv < 0)
      fail("NotInvertible", "comprehension filler at " +
                                k1.types->dobj(static_cast<int>(i)).name +
                                " is not invertible");
    m.chi_square_inv[i] = inv;
  }
  (void)filler;
  return m;
}

inline CompCatMorphism identity_compcat_morphism(const CompCat& k) {
  std::vector<int> comps(k.types->dobject_count());
  for (int i = 0; i < k.types->dobject_count(); ++i)
    comps[i] = k.arrow.disp->didentity(k.chi.dobj(i));
  return make_compcat_morphism(k, k, FinFunctor::identity(k.base),
                               identity_disp_functor(k.types), comps);
}

struct CompCat2Cell {
  NatTrans base_cell;
  DispNatTrans type_cell;
};

// A 2-cell between pseudo morphisms: a transformation on bases and one on
// types over it, compatible with both comprehension fillers.
inline CompCat2Cell make_compcat_2cell(const CompCat& k1, const CompCat& k2,
                                       const CompCatMorphism& m1, const CompCatMorphism& m2,
                                       NatTrans tau, std::vector<int> tau_bar) {
  DispNatTrans tbar =
      DispNatTrans::validate(tau, m1.on_types, m2.on_types, std::move(tau_bar));
  DispFunctor af = arrow_disp_functor(k1.arrow, k2.arrow, m1.functor);
  DispFunctor ag = arrow_disp_functor(k1.arrow, k2.arrow, m2.functor);
  DispNatTrans arr_tau = arrow_disp_nattrans(k1.arrow, k2.arrow, af, ag, tau);
  // chi_1 whiskered with Arr(tau) pasted with m2's filler must equal m1's
  // filler pasted with chi_2 applied to tau_bar.
  const DispCat& arr2 = *k2.arrow.disp;
  for (int a = 0; a < k1.types->dobject_count(); ++a) {
    int lhs = arr2.dcompose(arr_tau.component(k1.chi.dobj(a)), m2.chi_square[a]);
    int rhs = arr2.dcompose(m1.chi_square[a], k2.chi.dmor(tbar.component(a)));
    if (lhs != rhs)
      fail("NotCompatible", "2-cell is incompatible with the comprehension fillers at " +
                                k1.types->dobj(a).name);
  }
  return {std::move(tau), std::move(tbar)};
}

}  // namespace catlang
