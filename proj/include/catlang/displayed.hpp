#pragma once
// Displayed categories over a finite base: validated tables, total and fiber
// categories, Cartesian morphisms, cleavings, substitution functors with
// their comparison isomorphisms, fiberwise limits, Beck-Chevalley squares,
// and the arrow (codomain) construction.

#include <utility>

#include "fincat.hpp"

namespace catlang {

class DispCat;
using DispPtr = std::shared_ptr<const DispCat>;

// ---------------------------------------------------------------------------
// DispCat
// ---------------------------------------------------------------------------

class DispCat {
 public:
  struct DObj {
    std::string name;
    int over = -1;  // base object
  };
  struct DMor {
    std::string name;
    int over = -1;  // base morphism
    int src = -1;   // displayed objects
    int dst = -1;
  };

  // Displayed identities (did_<dobj>) and their composites may be omitted.
  struct Presentation {
    CatPtr base;
    struct PDObj {
      std::string name, over;
    };
    std::vector<PDObj> dobjects;
    struct PDMor {
      std::string name, over, src, dst;
    };
    std::vector<PDMor> dmorphisms;
    struct PDComp {
      std::string first, then, equals;
    };
    std::vector<PDComp> dcomposition;
  };

  static DispPtr validate(const Presentation& p);

  const CatPtr& base() const { return base_; }
  int dobject_count() const { return static_cast<int>(dobjects_.size()); }
  int dmorphism_count() const { return static_cast<int>(dmorphisms_.size()); }
  const DObj& dobj(int i) const { return dobjects_[i]; }
  const DMor& dmor(int i) const { return dmorphisms_[i]; }
  int dobject_index(const std::string& n) const {
    auto it = doidx_.find(n);
    return it == doidx_.end() ? -1 : it->second;
  }
  int dmorphism_index(const std::string& n) const {
    auto it = dmidx_.find(n);
    return it == dmidx_.end() ? -1 : it->second;
  }
  int didentity(int dobj) const { return didentity_[dobj]; }
  bool is_didentity(int dm) const {
    return dmorphisms_[dm].src == dmorphisms_[dm].dst &&
           didentity_[dmorphisms_[dm].src] == dm;
  }
  bool dcomposable(int f, int g) const { return dmorphisms_[f].dst == dmorphisms_[g].src; }
  int dcompose(int f, int g) const {
    int h = dcomp_[static_cast<size_t>(f) * dmorphisms_.size() + g];
    if (h < 0) fail("NotComposable", dmorphisms_[f].name + " ; " + dmorphisms_[g].name);
    return h;
  }
  const std::vector<int>& dobjects_over(int x) const { return over_obj_[x]; }
  const std::vector<int>& dhom(int s, int t) const {
    return dhom_[static_cast<size_t>(s) * dobjects_.size() + t];
  }
  std::vector<int> dhom_over(int s, int t, int f) const {
    std::vector<int> out;
    for (int m : dhom(s, t))
      if (dmorphisms_[m].over == f) out.push_back(m);
    return out;
  }

 private:
  CatPtr base_;
  std::vector<DObj> dobjects_;
  std::vector<DMor> dmorphisms_;
  std::unordered_map<std::string, int> doidx_, dmidx_;
  std::vector<int> didentity_;
  std::vector<int32_t> dcomp_;
  std::vector<std::vector<int>> over_obj_, dhom_;
};

inline DispPtr DispCat::validate(const Presentation& p) {
  if (!p.base) fail("BadFormat", "displayed category needs a base");
  auto dp = std::make_shared<DispCat>();
  DispCat& d = *dp;
  d.base_ = p.base;
  const FinCat& b = *p.base;

  for (const auto& o : p.dobjects) {
    int over = b.object_index(o.over);
    if (over < 0) fail("DanglingEndpoint", "displayed object " + o.name + " over unknown " + o.over);
    if (d.doidx_.count(o.name)) fail("DuplicateName", "displayed object " + o.name);
    d.doidx_[o.name] = static_cast<int>(d.dobjects_.size());
    d.dobjects_.push_back({o.name, over});
  }
  const int ndo = d.dobject_count();

  d.didentity_.resize(ndo);
  for (int i = 0; i < ndo; ++i) {
    std::string idname = "did_" + d.dobjects_[i].name;
    d.dmidx_[idname] = static_cast<int>(d.dmorphisms_.size());
    d.didentity_[i] = static_cast<int>(d.dmorphisms_.size());
    d.dmorphisms_.push_back({idname, b.identity(d.dobjects_[i].over), i, i});
  }
  for (const auto& m : p.dmorphisms) {
    int over = b.mor_index(m.over);
    if (over < 0) fail("DanglingEndpoint", m.name + " over unknown morphism " + m.over);
    int s = d.dobject_index(m.src), t = d.dobject_index(m.dst);
    if (s < 0 || t < 0) fail("DanglingEndpoint", m.name + " has unknown displayed endpoint");
    auto it = d.dmidx_.find(m.name);
    if (it != d.dmidx_.end()) {
      int i = it->second;
      bool is_id_decl = d.is_didentity(i) && d.dmorphisms_[i].over == over &&
                        d.dmorphisms_[i].src == s && d.dmorphisms_[i].dst == t;
      if (!is_id_decl) fail("DuplicateName", "displayed morphism " + m.name);
      continue;
    }
    if (d.dobjects_[s].over != b.src(over) || d.dobjects_[t].over != b.dst(over))
      fail("OverMismatch", m.name + " does not lie over " + m.over);
    d.dmidx_[m.name] = static_cast<int>(d.dmorphisms_.size());
    d.dmorphisms_.push_back({m.name, over, s, t});
  }
  const int ndm = d.dmorphism_count();

  d.dcomp_.assign(static_cast<size_t>(ndm) * ndm, -1);
  auto set = [&](int f, int g, int h) { d.dcomp_[static_cast<size_t>(f) * ndm + g] = h; };
  auto get = [&](int f, int g) { return d.dcomp_[static_cast<size_t>(f) * ndm + g]; };
  for (int f = 0; f < ndm; ++f) {
    set(d.didentity_[d.dmorphisms_[f].src], f, f);
    set(f, d.didentity_[d.dmorphisms_[f].dst], f);
  }
  for (const auto& t : p.dcomposition) {
    int f = d.dmorphism_index(t.first), g = d.dmorphism_index(t.then),
        h = d.dmorphism_index(t.equals);
    if (f < 0 || g < 0 || h < 0)
      fail("DanglingEndpoint", "displayed composition references unknown morphism");
    if (!d.dcomposable(f, g))
      fail("IllTypedComposite", t.first + " ; " + t.then + " are not composable");
    int prev = get(f, g);
    if (prev >= 0 && prev != h) {
      if (d.is_didentity(f) || d.is_didentity(g))
        fail("UnitLawViolation", t.first + " ; " + t.then + " = " + t.equals);
      fail("ConflictingComposite", t.first + " ; " + t.then);
    }
    set(f, g, h);
  }

  for (int f = 0; f < ndm; ++f)
    for (int g = 0; g < ndm; ++g) {
      if (!d.dcomposable(f, g)) continue;
      int h = get(f, g);
      if (h < 0)
        fail("MissingComposite", d.dmorphisms_[f].name + " ; " + d.dmorphisms_[g].name);
      if (d.dmorphisms_[h].src != d.dmorphisms_[f].src ||
          d.dmorphisms_[h].dst != d.dmorphisms_[g].dst)
        fail("IllTypedComposite", d.dmorphisms_[f].name + " ; " + d.dmorphisms_[g].name);
      if (d.dmorphisms_[h].over !=
          b.compose(d.dmorphisms_[f].over, d.dmorphisms_[g].over))
        fail("OverMismatch", d.dmorphisms_[f].name + " ; " + d.dmorphisms_[g].name + " = " +
                                 d.dmorphisms_[h].name);
    }
  for (int f = 0; f < ndm; ++f) {
    if (get(d.didentity_[d.dmorphisms_[f].src], f) != f ||
        get(f, d.didentity_[d.dmorphisms_[f].dst]) != f)
      fail("UnitLawViolation", d.dmorphisms_[f].name);
  }
  for (int f = 0; f < ndm; ++f)
    for (int g = 0; g < ndm; ++g) {
      if (!d.dcomposable(f, g)) continue;
      int fg = get(f, g);
      for (int h = 0; h < ndm; ++h) {
        if (!d.dcomposable(g, h)) continue;
        if (get(fg, h) != get(f, get(g, h)))
          fail("NonAssociative", d.dmorphisms_[f].name + " ; " + d.dmorphisms_[g].name + " ; " +
                                     d.dmorphisms_[h].name);
      }
    }

  d.over_obj_.resize(b.object_count());
  for (int i = 0; i < ndo; ++i) d.over_obj_[d.dobjects_[i].over].push_back(i);
  d.dhom_.resize(static_cast<size_t>(ndo) * ndo);
  for (int f = 0; f < ndm; ++f)
    d.dhom_[static_cast<size_t>(d.dmorphisms_[f].src) * ndo + d.dmorphisms_[f].dst].push_back(f);
  return dp;
}

// ---------------------------------------------------------------------------
// Cartesian morphisms
// ---------------------------------------------------------------------------

inline bool same_displayed(const DispCat& a, const DispCat& b) {
  if (!same_category(*a.base(), *b.base())) return false;
  if (a.dobject_count() != b.dobject_count() || a.dmorphism_count() != b.dmorphism_count())
    return false;
  for (int i = 0; i < a.dobject_count(); ++i)
    if (a.dobj(i).name != b.dobj(i).name || a.dobj(i).over != b.dobj(i).over) return false;
  for (int m = 0; m < a.dmorphism_count(); ++m) {
    const auto& x = a.dmor(m);
    const auto& y = b.dmor(m);
    if (x.name != y.name || x.over != y.over || x.src != y.src || x.dst != y.dst)
      return false;
  }
  for (int m = 0; m < a.dmorphism_count(); ++m)
    for (int k = 0; k < a.dmorphism_count(); ++k)
      if (a.dcomposable(m, k) && a.dcompose(m, k) != b.dcompose(m, k)) return false;
  return true;
}

// Inverse of a vertical morphism, or -1. A displayed morphism over an
// identity is invertible iff some vertical in the other direction composes to
// displayed identities both ways.
inline int vertical_inverse(const DispCat& d, int m) {
  int s = d.dmor(m).src, t = d.dmor(m).dst;
  for (int w : d.dhom_over(t, s, d.dmor(m).over))
    if (d.dcompose(m, w) == d.didentity(s) && d.dcompose(w, m) == d.didentity(t)) return w;
  return -1;
}

struct CartesianReport {
  bool cartesian = false;
  // On failure: the instance (g, wbar, hbar) whose factorization count != 1.
  int g = -1, wbar = -1, hbar = -1, count = -1;
};

inline CartesianReport is_cartesian(const DispCat& d, int fbar) {
  const FinCat& b = *d.base();
  int f = d.dmor(fbar).over;
  int xbar = d.dmor(fbar).src, ybar = d.dmor(fbar).dst;
  int x = b.src(f);
  for (int w = 0; w < b.object_count(); ++w)
    for (int g : b.hom(w, x)) {
      int gf = b.compose(g, f);
      for (int wbar : d.dobjects_over(w))
        for (int hbar : d.dhom_over(wbar, ybar, gf)) {
          int count = 0;
          for (int gbar : d.dhom_over(wbar, xbar, g))
            if (d.dcompose(gbar, fbar) == hbar) ++count;
          if (count != 1) return {false, g, wbar, hbar, count};
        }
    }
  return {true, -1, -1, -1, -1};
}

// The unique factorization of hbar through a Cartesian fbar over g.
inline int cartesian_factor(const DispCat& d, int fbar, int wbar, int g, int hbar) {
  int found = -1, count = 0;
  for (int gbar : d.dhom_over(wbar, d.dmor(fbar).src, g))
    if (d.dcompose(gbar, fbar) == hbar) {
      found = gbar;
      ++count;
    }
  if (count != 1)
    fail("NoCartesianFactor", d.dmor(hbar).name + " through " + d.dmor(fbar).name);
  return found;
}

// ---------------------------------------------------------------------------
// Cleavings
// ---------------------------------------------------------------------------

struct Cleaving {
  DispPtr disp;
  // Indexed by base morphism * dobject count + target dobject; {-1,-1} when
  // the dobject does not lie over the morphism's target.
  std::vector<std::pair<int, int>> lifts;

  const std::pair<int, int>& lift(int f, int ybar) const {
    return lifts[static_cast<size_t>(f) * disp->dobject_count() + ybar];
  }
  int lift_src(int f, int ybar) const { return lift(f, ybar).first; }
  int lift_mor(int f, int ybar) const { return lift(f, ybar).second; }
};

struct CleavingMissing {
  int f = -1;     // base morphism
  int ybar = -1;  // displayed object with no Cartesian lift
};
using CleavingResult = std::variant<Cleaving, CleavingMissing>;

// Deterministic: earliest source dobject in declaration order, then earliest
// displayed morphism.
inline CleavingResult find_cleaving(const DispPtr& dp) {
  const DispCat& d = *dp;
  const FinCat& b = *d.base();
  Cleaving c;
  c.disp = dp;
  c.lifts.assign(static_cast<size_t>(b.morphism_count()) * d.dobject_count(), {-1, -1});
  for (int f = 0; f < b.morphism_count(); ++f)
    for (int ybar : d.dobjects_over(b.dst(f))) {
      bool found = false;
      for (int xbar : d.dobjects_over(b.src(f))) {
        for (int fbar : d.dhom_over(xbar, ybar, f))
          if (is_cartesian(d, fbar).cartesian) {
            c.lifts[static_cast<size_t>(f) * d.dobject_count() + ybar] = {xbar, fbar};
            found = true;
            break;
          }
        if (found) break;
      }
      if (!found) return CleavingMissing{f, ybar};
    }
  return c;
}

// ---------------------------------------------------------------------------
// Fiber and total categories
// ---------------------------------------------------------------------------

struct Fiber {
  CatPtr cat;
  DispPtr disp;
  int base_object = -1;
  std::vector<int> obj_to_dobj;  // fiber object -> dobject
  std::vector<int> mor_to_dmor;  // fiber morphism -> vertical dmorphism

  int obj_of_dobj(int dob) const {
    for (size_t i = 0; i < obj_to_dobj.size(); ++i)
      if (obj_to_dobj[i] == dob) return static_cast<int>(i);
    return -1;
  }
  int mor_of_dmor(int dm) const {
    for (size_t i = 0; i < mor_to_dmor.size(); ++i)
      if (mor_to_dmor[i] == dm) return static_cast<int>(i);
    return -1;
  }
};

inline Fiber fiber_category(const DispPtr& dp, int x) {
  const DispCat& d = *dp;
  const FinCat& b = *d.base();
  if (x < 0 || x >= b.object_count()) fail("UnknownObject", "fiber over unknown object");
  int idx = b.identity(x);
  Fiber fib;
  fib.disp = dp;
  fib.base_object = x;
  FinCat::Presentation p;
  for (int dob : d.dobjects_over(x)) p.objects.push_back(d.dobj(dob).name);
  std::vector<int> verticals;
  for (int dob : d.dobjects_over(x))
    for (int dob2 : d.dobjects_over(x))
      for (int m : d.dhom_over(dob, dob2, idx)) {
        verticals.push_back(m);
        if (!d.is_didentity(m))
          p.morphisms.push_back({d.dmor(m).name, d.dobj(dob).name, d.dobj(dob2).name});
      }
  for (int m1 : verticals)
    for (int m2 : verticals) {
      if (!d.dcomposable(m1, m2)) continue;
      int h = d.dcompose(m1, m2);
      auto nm = [&](int m) {
        return d.is_didentity(m) ? "id_" + d.dobj(d.dmor(m).src).name : d.dmor(m).name;
      };
      p.composition.push_back({nm(m1), nm(m2), nm(h)});
    }
  fib.cat = FinCat::validate(p);
  fib.obj_to_dobj = d.dobjects_over(x);
  fib.mor_to_dmor.assign(fib.cat->morphism_count(), -1);
  for (int m : verticals) {
    std::string nm =
        d.is_didentity(m) ? "id_" + d.dobj(d.dmor(m).src).name : d.dmor(m).name;
    fib.mor_to_dmor[fib.cat->mor_index(nm)] = m;
  }
  return fib;
}

struct Total {
  CatPtr cat;
  FinFunctor projection;
  DispPtr disp;
  std::vector<int> obj_to_dobj;  // total object -> dobject
  std::vector<int> mor_to_dmor;  // total morphism -> dmorphism
};

inline Total total_category(const DispPtr& dp) {
  const DispCat& d = *dp;
  const FinCat& b = *d.base();
  Total t;
  t.disp = dp;
  FinCat::Presentation p;
  auto oname = [&](int dob) {
    return "tot(" + b.object(d.dobj(dob).over) + "," + d.dobj(dob).name + ")";
  };
  auto mname = [&](int dm) -> std::string {
    if (d.is_didentity(dm)) return "id_" + oname(d.dmor(dm).src);
    return "tot(" + b.mor_name(d.dmor(dm).over) + "," + d.dmor(dm).name + ")";
  };
  for (int i = 0; i < d.dobject_count(); ++i) {
    p.objects.push_back(oname(i));
    t.obj_to_dobj.push_back(i);
  }
  for (int m = 0; m < d.dmorphism_count(); ++m)
    if (!d.is_didentity(m))
      p.morphisms.push_back({mname(m), oname(d.dmor(m).src), oname(d.dmor(m).dst)});
  for (int m1 = 0; m1 < d.dmorphism_count(); ++m1)
    for (int m2 = 0; m2 < d.dmorphism_count(); ++m2)
      if (d.dcomposable(m1, m2))
        p.composition.push_back({mname(m1), mname(m2), mname(d.dcompose(m1, m2))});
  t.cat = FinCat::validate(p);
  t.mor_to_dmor.assign(t.cat->morphism_count(), -1);
  for (int m = 0; m < d.dmorphism_count(); ++m)
    t.mor_to_dmor[t.cat->mor_index(mname(m))] = m;
  std::vector<int> on_obj(t.cat->object_count()), on_mor(t.cat->morphism_count());
  for (int i = 0; i < t.cat->object_count(); ++i) on_obj[i] = d.dobj(t.obj_to_dobj[i]).over;
  for (int m = 0; m < t.cat->morphism_count(); ++m) on_mor[m] = d.dmor(t.mor_to_dmor[m]).over;
  t.projection = FinFunctor::validate(t.cat, d.base(), std::move(on_obj), std::move(on_mor));
  return t;
}

// ---------------------------------------------------------------------------
// Substitution functors and their comparison isomorphisms
// ---------------------------------------------------------------------------

struct SubstFunctor {
  FinFunctor functor;  // fiber(dst f) -> fiber(src f)
  Fiber from, to;
};

inline SubstFunctor substitution_functor(const Cleaving& cl, int f) {
  const DispCat& d = *cl.disp;
  const FinCat& b = *d.base();
  Fiber from = fiber_category(cl.disp, b.dst(f));
  Fiber to = fiber_category(cl.disp, b.src(f));
  std::vector<int> on_obj(from.cat->object_count()), on_mor(from.cat->morphism_count());
  for (int i = 0; i < from.cat->object_count(); ++i) {
    int ybar = from.obj_to_dobj[i];
    on_obj[i] = to.obj_of_dobj(cl.lift_src(f, ybar));
  }
  for (int m = 0; m < from.cat->morphism_count(); ++m) {
    int v = from.mor_to_dmor[m];
    int y1 = d.dmor(v).src, y2 = d.dmor(v).dst;
    // Factor lift(f, y1) ; v through the Cartesian lift(f, y2).
    int h = d.dcompose(cl.lift_mor(f, y1), v);
    int med = cartesian_factor(d, cl.lift_mor(f, y2), cl.lift_src(f, y1),
                               b.identity(b.src(f)), h);
    on_mor[m] = to.mor_of_dmor(med);
  }
  FinFunctor fn =
      FinFunctor::validate(from.cat, to.cat, std::move(on_obj), std::move(on_mor));
  return {std::move(fn), std::move(from), std::move(to)};
}

// id_x^* => Id on fiber(x); components are the Cartesian lifts of the
// identity, which are vertical isomorphisms.
inline NatTrans identity_comparison(const Cleaving& cl, int x) {
  const DispCat& d = *cl.disp;
  int idx = d.base()->identity(x);
  SubstFunctor s = substitution_functor(cl, idx);
  std::vector<int> comps(s.from.cat->object_count());
  for (int i = 0; i < s.from.cat->object_count(); ++i) {
    int ybar = s.from.obj_to_dobj[i];
    comps[i] = s.to.mor_of_dmor(cl.lift_mor(idx, ybar));
  }
  return NatTrans::validate(s.functor, FinFunctor::identity(s.from.cat), std::move(comps));
}

// (f . g)^* => g^* ; f^* for composable f : x -> y, g : y -> z; components
// factor the composite of the two chosen lifts through the lift of f . g.
inline NatTrans composite_comparison(const Cleaving& cl, int f, int g) {
  const DispCat& d = *cl.disp;
  const FinCat& b = *d.base();
  if (!b.composable(f, g)) fail("NotComposable", "composite comparison");
  int fg = b.compose(f, g);
  SubstFunctor sfg = substitution_functor(cl, fg);
  SubstFunctor sg = substitution_functor(cl, g);
  SubstFunctor sf = substitution_functor(cl, f);
  FinFunctor pasted = compose_functors(sg.functor, sf.functor);
  std::vector<int> comps(sfg.from.cat->object_count());
  for (int i = 0; i < sfg.from.cat->object_count(); ++i) {
    int zbar = sfg.from.obj_to_dobj[i];
    int mid = cl.lift_src(g, zbar);
    int through = d.dcompose(cl.lift_mor(f, mid), cl.lift_mor(g, zbar));
    // through : f^*(g^*(zbar)) -> zbar over f . g is Cartesian (composite of
    // Cartesian morphisms); factor the chosen lift of f . g through it.
    int med = cartesian_factor(d, through, cl.lift_src(fg, zbar), b.identity(b.src(f)),
                               cl.lift_mor(fg, zbar));
    comps[i] = sfg.to.mor_of_dmor(med);
  }
  return NatTrans::validate(sfg.functor, pasted, std::move(comps));
}

// ---------------------------------------------------------------------------
// Displayed functors and natural transformations
// ---------------------------------------------------------------------------

class DispFunctor {
 public:
  static DispFunctor validate(FinFunctor over, DispPtr src, DispPtr dst,
                              std::vector<int> on_dobj, std::vector<int> on_dmor) {
    DispFunctor f;
    f.over_ = std::move(over);
    f.src_ = std::move(src);
    f.dst_ = std::move(dst);
    f.on_dobj_ = std::move(on_dobj);
    f.on_dmor_ = std::move(on_dmor);
    const DispCat& S = *f.src_;
    const DispCat& T = *f.dst_;
    if (!same_category(*f.over_.source(), *S.base()) ||
        !same_category(*f.over_.target(), *T.base()))
      fail("NotFunctorial", "base functor endpoints do not match");
    if (static_cast<int>(f.on_dobj_.size()) != S.dobject_count() ||
        static_cast<int>(f.on_dmor_.size()) != S.dmorphism_count())
      fail("NotFunctorial", "displayed maps are not total");
    for (int i = 0; i < S.dobject_count(); ++i) {
      int j = f.on_dobj_[i];
      if (j < 0 || j >= T.dobject_count() ||
          T.dobj(j).over != f.over_.obj(S.dobj(i).over))
        fail("NotFunctorial", "displayed object image off-fiber at " + S.dobj(i).name);
    }
    for (int m = 0; m < S.dmorphism_count(); ++m) {
      int n = f.on_dmor_[m];
      if (n < 0 && S.is_didentity(m)) {
        f.on_dmor_[m] = T.didentity(f.on_dobj_[S.dmor(m).src]);
        continue;
      }
      if (n < 0 || n >= T.dmorphism_count() ||
          T.dmor(n).over != f.over_.mor(S.dmor(m).over) ||
          T.dmor(n).src != f.on_dobj_[S.dmor(m).src] ||
          T.dmor(n).dst != f.on_dobj_[S.dmor(m).dst])
        fail("NotFunctorial", "displayed image ill-typed at " + S.dmor(m).name);
    }
    for (int i = 0; i < S.dobject_count(); ++i)
      if (f.on_dmor_[S.didentity(i)] != T.didentity(f.on_dobj_[i]))
        fail("NotFunctorial", "displayed identity not preserved at " + S.dobj(i).name);
    for (int m = 0; m < S.dmorphism_count(); ++m)
      for (int k = 0; k < S.dmorphism_count(); ++k)
        if (S.dcomposable(m, k) &&
            f.on_dmor_[S.dcompose(m, k)] != T.dcompose(f.on_dmor_[m], f.on_dmor_[k]))
          fail("NotFunctorial",
               "displayed composition not preserved at " + S.dmor(m).name + " ; " +
                   S.dmor(k).name);
    return f;
  }

  const FinFunctor& over() const { return over_; }
  const DispPtr& source() const { return src_; }
  const DispPtr& target() const { return dst_; }
  int dobj(int i) const { return on_dobj_[i]; }
  int dmor(int m) const { return on_dmor_[m]; }

  // The induced functor between fibers over x and over(x).
  FinFunctor fiber_functor(const Fiber& from, const Fiber& to) const {
    std::vector<int> on_obj(from.cat->object_count()), on_mor(from.cat->morphism_count());
    for (int i = 0; i < from.cat->object_count(); ++i)
      on_obj[i] = to.obj_of_dobj(on_dobj_[from.obj_to_dobj[i]]);
    for (int m = 0; m < from.cat->morphism_count(); ++m)
      on_mor[m] = to.mor_of_dmor(on_dmor_[from.mor_to_dmor[m]]);
    return FinFunctor::validate(from.cat, to.cat, std::move(on_obj), std::move(on_mor));
  }

  // The induced functor between total categories.
  FinFunctor total_functor(const Total& from, const Total& to) const {
    std::vector<int> on_obj(from.cat->object_count()), on_mor(from.cat->morphism_count());
    for (int i = 0; i < from.cat->object_count(); ++i) {
      int img = on_dobj_[from.obj_to_dobj[i]];
      for (int j = 0; j < to.cat->object_count(); ++j)
        if (to.obj_to_dobj[j] == img) on_obj[i] = j;
    }
    for (int m = 0; m < from.cat->morphism_count(); ++m) {
      int img = on_dmor_[from.mor_to_dmor[m]];
      for (int n = 0; n < to.cat->morphism_count(); ++n)
        if (to.mor_to_dmor[n] == img) on_mor[m] = n;
    }
    return FinFunctor::validate(from.cat, to.cat, std::move(on_obj), std::move(on_mor));
  }

  DispFunctor() = default;

 private:
  FinFunctor over_;
  DispPtr src_, dst_;
  std::vector<int> on_dobj_, on_dmor_;
};

inline DispFunctor identity_disp_functor(const DispPtr& d) {
  std::vector<int> oo(d->dobject_count()), mm(d->dmorphism_count());
  for (size_t i = 0; i < oo.size(); ++i) oo[i] = static_cast<int>(i);
  for (size_t i = 0; i < mm.size(); ++i) mm[i] = static_cast<int>(i);
  return DispFunctor::validate(FinFunctor::identity(d->base()), d, d, std::move(oo),
                               std::move(mm));
}

// Diagrammatic composite: apply a first, then b.
inline DispFunctor compose_disp_functors(const DispFunctor& a, const DispFunctor& b) {
  if (!same_displayed(*a.target(), *b.source()))
    fail("NotComposable", "displayed functor endpoints do not match");
  std::vector<int> oo(a.source()->dobject_count()), mm(a.source()->dmorphism_count());
  for (size_t i = 0; i < oo.size(); ++i) oo[i] = b.dobj(a.dobj(static_cast<int>(i)));
  for (size_t i = 0; i < mm.size(); ++i) mm[i] = b.dmor(a.dmor(static_cast<int>(i)));
  return DispFunctor::validate(compose_functors(a.over(), b.over()), a.source(), b.target(),
                               std::move(oo), std::move(mm));
}

struct DispFunctorReport {
  bool functorial_over = false;
  bool cartesian = false;
  int witness = -1;  // source dmorphism that is Cartesian but maps off one
};

inline DispFunctorReport check_displayed_functor(const DispFunctor& f) {
  DispFunctorReport r;
  r.functorial_over = true;  // enforced by DispFunctor::validate
  r.cartesian = true;
  const DispCat& S = *f.source();
  const DispCat& T = *f.target();
  for (int m = 0; m < S.dmorphism_count(); ++m) {
    if (!is_cartesian(S, m).cartesian) continue;
    if (!is_cartesian(T, f.dmor(m)).cartesian) {
      r.cartesian = false;
      r.witness = m;
      break;
    }
  }
  return r;
}

class DispNatTrans {
 public:
  static DispNatTrans validate(NatTrans over, const DispFunctor& f, const DispFunctor& g,
                               std::vector<int> components) {
    const DispCat& S = *f.source();
    const DispCat& T = *f.target();
    if (static_cast<int>(components.size()) != S.dobject_count())
      fail("NotNatural", "displayed component table is not total");
    for (int i = 0; i < S.dobject_count(); ++i) {
      int c = components[i];
      if (c < 0 || c >= T.dmorphism_count() || T.dmor(c).src != f.dobj(i) ||
          T.dmor(c).dst != g.dobj(i) ||
          T.dmor(c).over != over.component(S.dobj(i).over))
        fail("NotNatural", "bad displayed component at " + S.dobj(i).name);
    }
    for (int m = 0; m < S.dmorphism_count(); ++m) {
      int s = S.dmor(m).src, d2 = S.dmor(m).dst;
      if (T.dcompose(f.dmor(m), components[d2]) != T.dcompose(components[s], g.dmor(m)))
        fail("NotNatural", "displayed naturality fails at " + S.dmor(m).name);
    }
    return DispNatTrans(std::move(over), std::move(components));
  }

  const NatTrans& over() const { return over_; }
  int component(int dobj) const { return comp_[dobj]; }

 private:
  DispNatTrans(NatTrans o, std::vector<int> c) : over_(std::move(o)), comp_(std::move(c)) {}
  NatTrans over_;
  std::vector<int> comp_;
};

// ---------------------------------------------------------------------------
// Beck-Chevalley
// ---------------------------------------------------------------------------

//        F1
//   C1 ------> C2
//   |           |
//   | G1        | G2      tau : G1.F2 => F1.G2 (componentwise iso)
//   v           v
//   C3 ------> C4
//        F2
struct BCSquare {
  FinFunctor f1, g1, g2, f2;
  NatTrans tau;
  AdjointSide side = AdjointSide::Left;
  Adjunction adj1, adj2;  // Left: L1 -| G1, L2 -| G2.  Right: G1 -| R1, G2 -| R2.

  static BCSquare make(FinFunctor f1, FinFunctor g1, FinFunctor g2, FinFunctor f2,
                       NatTrans tau, AdjointSide side, Adjunction adj1, Adjunction adj2) {
    if (!tau.source_functor().equals(compose_functors(g1, f2)) ||
        !tau.target_functor().equals(compose_functors(f1, g2)))
      fail("ShapeMismatch", "filler does not match the square");
    if (!tau.is_componentwise_iso()) fail("NotInvertible", "square filler is not invertible");
    const FinFunctor& a1 = side == AdjointSide::Left ? adj1.right : adj1.left;
    const FinFunctor& a2 = side == AdjointSide::Left ? adj2.right : adj2.left;
    if (!a1.equals(g1) || !a2.equals(g2))
      fail("ShapeMismatch", "adjunctions do not attach to the square's legs");
    return BCSquare{std::move(f1), std::move(g1), std::move(g2), std::move(f2),
                    std::move(tau), side,          std::move(adj1), std::move(adj2)};
  }
};

struct BCResult {
  bool holds = false;
  NatTrans mate;
};

// Left: the composite F2.L2 => L1.G1.F2.L2 => L1.F1.G2.L2 => L1.F1.
// Right: the composite R1.F1 => R1.F1.G2.R2 => R1.G1.F2.R2 => F2.R2.
inline BCResult beck_chevalley(const BCSquare& s) {
  NatTrans mate = [&] {
    if (s.side == AdjointSide::Left) {
      const FinFunctor& l1 = s.adj1.left;
      const FinFunctor& l2 = s.adj2.left;
      NatTrans step1 = whisker_right(s.adj1.unit, compose_functors(s.f2, l2));
      NatTrans step2 = whisker_right(whisker_left(l1, s.tau), l2);
      NatTrans step3 = whisker_left(compose_functors(l1, s.f1), s.adj2.counit);
      return vcomp(vcomp(step1, step2), step3);
    }
    const FinFunctor& r1 = s.adj1.right;
    const FinFunctor& r2 = s.adj2.right;
    NatTrans step1 = whisker_left(compose_functors(r1, s.f1), s.adj2.unit);
    NatTrans step2 = whisker_right(whisker_left(r1, s.tau.inverse()), r2);
    NatTrans step3 = whisker_right(s.adj1.counit, compose_functors(s.f2, r2));
    return vcomp(vcomp(step1, step2), step3);
  }();
  bool holds = mate.is_componentwise_iso();
  return {holds, std::move(mate)};
}

// ---------------------------------------------------------------------------
// The arrow (codomain) displayed category
// ---------------------------------------------------------------------------

struct ArrowDisp {
  DispPtr disp;
  std::vector<int> dobj_to_mor;  // dobject -> the base morphism it names
  std::vector<int> dmor_top;     // dmorphism -> top arrow of its square
};

// Objects over y: morphisms into y, named by the base morphism. Morphisms
// over f from a to b: squares sq(h,a,b,f) with h . b = a . f.
inline ArrowDisp arrow_displayed(const CatPtr& cp) {
  const FinCat& c = *cp;
  DispCat::Presentation p;
  p.base = cp;
  ArrowDisp a;
  for (int g = 0; g < c.morphism_count(); ++g) {
    p.dobjects.push_back({c.mor_name(g), c.object(c.dst(g))});
    a.dobj_to_mor.push_back(g);
  }
  struct Sq {
    std::string name;
    int h, g1, g2, f;
  };
  std::vector<Sq> sqs;
  auto sq_name = [&](int h, int g1, int g2, int f) -> std::string {
    if (g1 == g2 && h == c.identity(c.src(g1)) && f == c.identity(c.dst(g1)))
      return "did_" + c.mor_name(g1);
    return "sq(" + c.mor_name(h) + "," + c.mor_name(g1) + "," + c.mor_name(g2) + "," +
           c.mor_name(f) + ")";
  };
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g1 : c.in(c.src(f)))
      for (int g2 : c.in(c.dst(f)))
        for (int h : c.hom(c.src(g1), c.src(g2)))
          if (c.compose(h, g2) == c.compose(g1, f)) {
            Sq s{sq_name(h, g1, g2, f), h, g1, g2, f};
            sqs.push_back(s);
            if (s.name.rfind("did_", 0) != 0)
              p.dmorphisms.push_back({s.name, c.mor_name(f), c.mor_name(g1), c.mor_name(g2)});
          }
  for (const auto& s1 : sqs)
    for (const auto& s2 : sqs)
      if (s1.g2 == s2.g1 && c.composable(s1.f, s2.f))
        p.dcomposition.push_back(
            {s1.name, s2.name,
             sq_name(c.compose(s1.h, s2.h), s1.g1, s2.g2, c.compose(s1.f, s2.f))});
  a.disp = DispCat::validate(p);
  a.dmor_top.assign(a.disp->dmorphism_count(), -1);
  for (const auto& s : sqs) a.dmor_top[a.disp->dmorphism_index(s.name)] = s.h;
  return a;
}

// Index of the square sq(h,g1,g2,f) in an arrow construction.
inline int arrow_square(const ArrowDisp& a, int h, int g1, int g2, int f) {
  const FinCat& c = *a.disp->base();
  std::string name;
  if (g1 == g2 && h == c.identity(c.src(g1)) && f == c.identity(c.dst(g1)))
    name = "did_" + c.mor_name(g1);
  else
    name = "sq(" + c.mor_name(h) + "," + c.mor_name(g1) + "," + c.mor_name(g2) + "," +
           c.mor_name(f) + ")";
  int m = a.disp->dmorphism_index(name);
  if (m < 0) fail("ShapeMismatch", "no such square " + name);
  return m;
}

// The arrow construction is functorial: a base functor induces a displayed
// functor over it, sending each square to its image square.
inline DispFunctor arrow_disp_functor(const ArrowDisp& s, const ArrowDisp& t,
                                      const FinFunctor& f) {
  const DispCat& S = *s.disp;
  std::vector<int> on_dobj(S.dobject_count()), on_dmor(S.dmorphism_count());
  for (int i = 0; i < S.dobject_count(); ++i) {
    on_dobj[i] = t.disp->dobject_index(f.target()->mor_name(f.mor(s.dobj_to_mor[i])));
    if (on_dobj[i] < 0) fail("ShapeMismatch", "arrow functor image object missing");
  }
  for (int m = 0; m < S.dmorphism_count(); ++m)
    on_dmor[m] = arrow_square(t, f.mor(s.dmor_top[m]), f.mor(s.dobj_to_mor[S.dmor(m).src]),
                              f.mor(s.dobj_to_mor[S.dmor(m).dst]), f.mor(S.dmor(m).over));
  return DispFunctor::validate(f, s.disp, t.disp, std::move(on_dobj), std::move(on_dmor));
}

// A natural transformation tau : F => G induces a displayed transformation
// between the arrow functors; the component at a displayed object g is the
// naturality square of tau at g.
inline DispNatTrans arrow_disp_nattrans(const ArrowDisp& s, const ArrowDisp& t,
                                        const DispFunctor& af, const DispFunctor& ag,
                                        const NatTrans& tau) {
  const FinCat& c = *s.disp->base();
  std::vector<int> comps(s.disp->dobject_count());
  for (int i = 0; i < s.disp->dobject_count(); ++i) {
    int g = s.dobj_to_mor[i];
    comps[i] = arrow_square(t, tau.component(c.src(g)), af.over().mor(g), ag.over().mor(g),
                            tau.component(c.dst(g)));
  }
  return DispNatTrans::validate(tau, af, ag, std::move(comps));
}

// ---------------------------------------------------------------------------
// Fiberwise limits
// ---------------------------------------------------------------------------

struct FiberwiseReport {
  bool ok = false;
  Shape shape = Shape::Terminal;
  // Per base object: whether the fiber has the shape (all instances).
  std::vector<bool> fiber_ok;
  // Per base morphism: whether the substitution functor preserves it.
  std::vector<bool> preserved;
  std::string detail;
};

// Each fiber has all limits of the shape and every substitution functor
// preserves them.
inline FiberwiseReport check_fiberwise_limits(const Cleaving& cl, Shape shape) {
  const DispCat& d = *cl.disp;
  const FinCat& b = *d.base();
  FiberwiseReport r;
  r.shape = shape;
  r.ok = true;
  r.fiber_ok.assign(b.object_count(), true);
  for (int x = 0; x < b.object_count(); ++x) {
    Fiber fib = fiber_category(cl.disp, x);
    for (const auto& diag : detail::all_diagrams(*fib.cat, shape))
      if (!find_universal(*fib.cat, diag)) {
        r.fiber_ok[x] = false;
        r.ok = false;
        if (r.detail.empty())
          r.detail = "fiber over " + b.object(x) + " lacks " + shape_name(shape);
        break;
      }
  }
  r.preserved.assign(b.morphism_count(), true);
  for (int f = 0; f < b.morphism_count(); ++f) {
    SubstFunctor s = substitution_functor(cl, f);
    if (!preserves_shape(s.functor, shape)) {
      r.preserved[f] = false;
      r.ok = false;
      if (r.detail.empty())
        r.detail = "substitution along " + b.mor_name(f) + " does not preserve " +
                   shape_name(shape);
    }
  }
  return r;
}

}  // namespace catlang
