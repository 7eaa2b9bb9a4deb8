#pragma once
// Explicit finite categories: validated presentations, functors, natural
// transformations, adjunctions, exhaustive universal-property search, slice
// categories, equivalence checking and gauntness.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace catlang {

struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

class FinCat;
using CatPtr = std::shared_ptr<const FinCat>;

// ---------------------------------------------------------------------------
// FinCat
// ---------------------------------------------------------------------------

class FinCat {
 public:
  struct Mor {
    std::string name;
    int src = -1;
    int dst = -1;
  };

  // Raw input: identities and identity composites may be omitted; a morphism
  // named id_<obj> with matching endpoints is accepted as that identity.
  struct Presentation {
    std::vector<std::string> objects;
    struct PMor {
      std::string name, src, dst;
    };
    std::vector<PMor> morphisms;
    struct PComp {
      std::string first, then, equals;
    };
    std::vector<PComp> composition;
  };

  static CatPtr validate(const Presentation& p);

  int object_count() const { return static_cast<int>(objects_.size()); }
  int morphism_count() const { return static_cast<int>(morphisms_.size()); }
  const std::string& object(int i) const { return objects_[i]; }
  const Mor& mor(int i) const { return morphisms_[i]; }
  const std::string& mor_name(int i) const { return morphisms_[i].name; }
  int src(int f) const { return morphisms_[f].src; }
  int dst(int f) const { return morphisms_[f].dst; }

  int object_index(const std::string& n) const {
    auto it = oidx_.find(n);
    return it == oidx_.end() ? -1 : it->second;
  }
  int mor_index(const std::string& n) const {
    auto it = midx_.find(n);
    return it == midx_.end() ? -1 : it->second;
  }

  int identity(int obj) const { return identity_[obj]; }
  bool is_identity(int f) const { return identity_[morphisms_[f].src] == f && morphisms_[f].src == morphisms_[f].dst; }

  bool composable(int f, int g) const { return morphisms_[f].dst == morphisms_[g].src; }
  // Diagrammatic order: first f, then g.
  int compose(int f, int g) const {
    int h = comp_[static_cast<size_t>(f) * morphisms_.size() + g];
    if (h < 0) fail("NotComposable", morphisms_[f].name + " ; " + morphisms_[g].name);
    return h;
  }

  const std::vector<int>& out(int obj) const { return out_[obj]; }
  const std::vector<int>& in(int obj) const { return in_[obj]; }
  const std::vector<int>& hom(int x, int y) const {
    return hom_[static_cast<size_t>(x) * objects_.size() + y];
  }

  // Index of the two-sided inverse, or -1.
  int inverse_of(int f) const { return inv_[f]; }
  bool is_iso(int f) const { return inv_[f] >= 0; }

  bool is_thin() const { return thin_; }
  bool is_gaunt_cat() const { return gaunt_; }
  // Thin and gaunt: objects carry a genuine partial order.
  bool is_posetal() const { return thin_ && gaunt_; }
  bool leq(int x, int y) const { return !hom(x, y).empty(); }

 private:
  std::vector<std::string> objects_;
  std::vector<Mor> morphisms_;
  std::unordered_map<std::string, int> oidx_, midx_;
  std::vector<int> identity_;
  std::vector<int32_t> comp_;
  std::vector<std::vector<int>> out_, in_, hom_;
  std::vector<int> inv_;
  bool thin_ = false, gaunt_ = false;
};

inline CatPtr FinCat::validate(const Presentation& p) {
  auto cat = std::make_shared<FinCat>();
  FinCat& c = *cat;

  for (const auto& o : p.objects) {
    if (c.oidx_.count(o)) fail("DuplicateName", "object " + o);
    c.oidx_[o] = static_cast<int>(c.objects_.size());
    c.objects_.push_back(o);
  }
  const int nobj = c.object_count();

  // Identities first, in object order; declared id_<obj> morphisms merge.
  c.identity_.resize(nobj);
  for (int x = 0; x < nobj; ++x) {
    std::string idname = "id_" + c.objects_[x];
    c.midx_[idname] = static_cast<int>(c.morphisms_.size());
    c.identity_[x] = static_cast<int>(c.morphisms_.size());
    c.morphisms_.push_back({idname, x, x});
  }
  for (const auto& m : p.morphisms) {
    int sx = c.object_index(m.src), dx = c.object_index(m.dst);
    if (sx < 0) fail("DanglingEndpoint", m.name + " has unknown source " + m.src);
    if (dx < 0) fail("DanglingEndpoint", m.name + " has unknown target " + m.dst);
    auto it = c.midx_.find(m.name);
    if (it != c.midx_.end()) {
      // Re-declaring an identity is allowed when the endpoints agree.
      int i = it->second;
      bool is_id_decl = c.morphisms_[i].name == m.name && c.morphisms_[i].src == sx &&
                        c.morphisms_[i].dst == dx && c.identity_[sx] == i && sx == dx;
      if (!is_id_decl) fail("DuplicateName", "morphism " + m.name);
      continue;
    }
    c.midx_[m.name] = static_cast<int>(c.morphisms_.size());
    c.morphisms_.push_back({m.name, sx, dx});
  }
  const int nmor = c.morphism_count();

  c.comp_.assign(static_cast<size_t>(nmor) * nmor, -1);
  auto set_comp = [&](int f, int g, int h) { c.comp_[static_cast<size_t>(f) * nmor + g] = h; };
  auto get_comp = [&](int f, int g) { return c.comp_[static_cast<size_t>(f) * nmor + g]; };

  // Identity composites are implied.
  for (int f = 0; f < nmor; ++f) {
    set_comp(c.identity_[c.morphisms_[f].src], f, f);
    set_comp(f, c.identity_[c.morphisms_[f].dst], f);
  }
  for (const auto& t : p.composition) {
    int f = c.mor_index(t.first), g = c.mor_index(t.then), h = c.mor_index(t.equals);
    if (f < 0) fail("DanglingEndpoint", "composition references unknown morphism " + t.first);
    if (g < 0) fail("DanglingEndpoint", "composition references unknown morphism " + t.then);
    if (h < 0) fail("DanglingEndpoint", "composition references unknown morphism " + t.equals);
    if (c.morphisms_[f].dst != c.morphisms_[g].src)
      fail("IllTypedComposite", t.first + " ; " + t.then + " are not composable");
    int prev = get_comp(f, g);
    if (prev >= 0 && prev != h) {
      if (c.is_identity(f) || c.is_identity(g))
        fail("UnitLawViolation", t.first + " ; " + t.then + " = " + t.equals);
      fail("ConflictingComposite", t.first + " ; " + t.then);
    }
    set_comp(f, g, h);
  }

  // Totality, closure, unit laws, associativity.
  for (int f = 0; f < nmor; ++f)
    for (int g = 0; g < nmor; ++g) {
      if (c.morphisms_[f].dst != c.morphisms_[g].src) continue;
      int h = get_comp(f, g);
      if (h < 0)
        fail("MissingComposite", c.morphisms_[f].name + " ; " + c.morphisms_[g].name);
      if (c.morphisms_[h].src != c.morphisms_[f].src ||
          c.morphisms_[h].dst != c.morphisms_[g].dst)
        fail("IllTypedComposite",
             c.morphisms_[f].name + " ; " + c.morphisms_[g].name + " = " + c.morphisms_[h].name);
    }
  for (int f = 0; f < nmor; ++f) {
    if (get_comp(c.identity_[c.morphisms_[f].src], f) != f)
      fail("UnitLawViolation", "id ; " + c.morphisms_[f].name);
    if (get_comp(f, c.identity_[c.morphisms_[f].dst]) != f)
      fail("UnitLawViolation", c.morphisms_[f].name + " ; id");
  }
  for (int f = 0; f < nmor; ++f) {
    const int fd = c.morphisms_[f].dst;
    for (int g = 0; g < nmor; ++g) {
      if (fd != c.morphisms_[g].src) continue;
      const int fg = get_comp(f, g);
      const int gd = c.morphisms_[g].dst;
      for (int h = 0; h < nmor; ++h) {
        if (gd != c.morphisms_[h].src) continue;
        if (get_comp(fg, h) != get_comp(f, get_comp(g, h)))
          fail("NonAssociative", c.morphisms_[f].name + " ; " + c.morphisms_[g].name + " ; " +
                                     c.morphisms_[h].name);
      }
    }
  }

  c.out_.resize(nobj);
  c.in_.resize(nobj);
  c.hom_.resize(static_cast<size_t>(nobj) * nobj);
  for (int f = 0; f < nmor; ++f) {
    c.out_[c.morphisms_[f].src].push_back(f);
    c.in_[c.morphisms_[f].dst].push_back(f);
    c.hom_[static_cast<size_t>(c.morphisms_[f].src) * nobj + c.morphisms_[f].dst].push_back(f);
  }

  c.inv_.assign(nmor, -1);
  for (int f = 0; f < nmor; ++f) {
    for (int g : c.hom_[static_cast<size_t>(c.morphisms_[f].dst) * nobj + c.morphisms_[f].src]) {
      if (get_comp(f, g) == c.identity_[c.morphisms_[f].src] &&
          get_comp(g, f) == c.identity_[c.morphisms_[f].dst]) {
        c.inv_[f] = g;
        break;
      }
    }
  }
  c.thin_ = true;
  for (const auto& h : c.hom_)
    if (h.size() > 1) c.thin_ = false;
  c.gaunt_ = true;
  for (int f = 0; f < nmor; ++f)
    if (c.inv_[f] >= 0 && !c.is_identity(f)) c.gaunt_ = false;

  return cat;
}

// Poset shorthand: reflexive-transitive closure of the given pairs, strict
// pairs named le_<a>_<b>, reflexive pairs realized by the identities.
inline FinCat::Presentation poset_presentation(
    const std::vector<std::string>& elements,
    const std::vector<std::pair<std::string, std::string>>& leq) {
  const int n = static_cast<int>(elements.size());
  std::map<std::string, int> idx;
  for (int i = 0; i < n; ++i) idx[elements[i]] = i;
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (const auto& [a, b] : leq) {
    if (!idx.count(a) || !idx.count(b)) fail("DanglingEndpoint", "leq pair " + a + " <= " + b);
    le[idx[a]][idx[b]] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;

  FinCat::Presentation p;
  p.objects = elements;
  auto lename = [&](int a, int b) { return "le_" + elements[a] + "_" + elements[b]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && le[a][b]) p.morphisms.push_back({lename(a, b), elements[a], elements[b]});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (a != b && b != c && le[a][b] && le[b][c])
          p.composition.push_back({lename(a, b), lename(b, c), lename(a, c)});
  return p;
}

// Structural equality up to nothing: same names, same tables.
inline bool same_category(const FinCat& a, const FinCat& b) {
  if (&a == &b) return true;
  if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count())
    return false;
  for (int i = 0; i < a.object_count(); ++i)
    if (a.object(i) != b.object(i)) return false;
  for (int i = 0; i < a.morphism_count(); ++i) {
    if (a.mor(i).name != b.mor(i).name || a.mor(i).src != b.mor(i).src ||
        a.mor(i).dst != b.mor(i).dst)
      return false;
  }
  for (int f = 0; f < a.morphism_count(); ++f)
    for (int g = 0; g < a.morphism_count(); ++g)
      if (a.composable(f, g) && a.compose(f, g) != b.compose(f, g)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Functors
// ---------------------------------------------------------------------------

class FinFunctor {
 public:
  // Maps may omit identities; they are filled in as id |-> id.
  static FinFunctor validate(CatPtr source, CatPtr target, std::vector<int> on_obj,
                             std::vector<int> on_mor) {
    FinFunctor f;
    f.src_ = std::move(source);
    f.dst_ = std::move(target);
    f.on_obj_ = std::move(on_obj);
    f.on_mor_ = std::move(on_mor);
    const FinCat& C = *f.src_;
    const FinCat& D = *f.dst_;
    if (static_cast<int>(f.on_obj_.size()) != C.object_count())
      fail("NotFunctorial", "object map is not total");
    if (static_cast<int>(f.on_mor_.size()) != C.morphism_count())
      fail("NotFunctorial", "morphism map is not total");
    for (int x = 0; x < C.object_count(); ++x)
      if (f.on_obj_[x] < 0 || f.on_obj_[x] >= D.object_count())
        fail("NotFunctorial", "object map out of range at " + C.object(x));
    for (int m = 0; m < C.morphism_count(); ++m) {
      int fm = f.on_mor_[m];
      if (fm < 0 && C.is_identity(m)) {
        f.on_mor_[m] = D.identity(f.on_obj_[C.src(m)]);
        continue;
      }
      if (fm < 0 || fm >= D.morphism_count())
        fail("NotFunctorial", "morphism map out of range at " + C.mor_name(m));
      if (D.src(fm) != f.on_obj_[C.src(m)] || D.dst(fm) != f.on_obj_[C.dst(m)])
        fail("NotFunctorial", "endpoints not preserved at " + C.mor_name(m));
    }
    for (int x = 0; x < C.object_count(); ++x)
      if (f.on_mor_[C.identity(x)] != D.identity(f.on_obj_[x]))
        fail("NotFunctorial", "identity not preserved at " + C.object(x));
    for (int m = 0; m < C.morphism_count(); ++m)
      for (int k = 0; k < C.morphism_count(); ++k)
        if (C.composable(m, k) &&
            f.on_mor_[C.compose(m, k)] != D.compose(f.on_mor_[m], f.on_mor_[k]))
          fail("NotFunctorial",
               "composition not preserved at " + C.mor_name(m) + " ; " + C.mor_name(k));
    return f;
  }

  static FinFunctor identity(const CatPtr& c) {
    std::vector<int> oo(c->object_count()), mm(c->morphism_count());
    for (size_t i = 0; i < oo.size(); ++i) oo[i] = static_cast<int>(i);
    for (size_t i = 0; i < mm.size(); ++i) mm[i] = static_cast<int>(i);
    return validate(c, c, std::move(oo), std::move(mm));
  }

  const CatPtr& source() const { return src_; }
  const CatPtr& target() const { return dst_; }
  int obj(int x) const { return on_obj_[x]; }
  int mor(int m) const { return on_mor_[m]; }
  const std::vector<int>& object_map() const { return on_obj_; }
  const std::vector<int>& morphism_map() const { return on_mor_; }

  bool equals(const FinFunctor& o) const {
    return same_category(*src_, *o.src_) && same_category(*dst_, *o.dst_) &&
           on_obj_ == o.on_obj_ && on_mor_ == o.on_mor_;
  }

 private:
  CatPtr src_, dst_;
  std::vector<int> on_obj_, on_mor_;
};

// Build a functor from an object map alone; each morphism must have a unique
// admissible image (always the case when the target is thin).
inline FinFunctor functor_on_objects(CatPtr src, CatPtr dst, std::vector<int> on_obj) {
  std::vector<int> on_mor(src->morphism_count(), -1);
  for (int m = 0; m < src->morphism_count(); ++m) {
    const auto& h = dst->hom(on_obj[src->src(m)], on_obj[src->dst(m)]);
    if (h.size() != 1)
      fail("NotFunctorial", "no unique image for " + src->mor_name(m));
    on_mor[m] = h[0];
  }
  return FinFunctor::validate(std::move(src), std::move(dst), std::move(on_obj),
                              std::move(on_mor));
}

// Diagrammatic composite: apply f first, then g.
inline FinFunctor compose_functors(const FinFunctor& f, const FinFunctor& g) {
  if (!same_category(*f.target(), *g.source()))
    fail("NotComposable", "functor endpoints do not match");
  std::vector<int> oo(f.source()->object_count()), mm(f.source()->morphism_count());
  for (size_t i = 0; i < oo.size(); ++i) oo[i] = g.obj(f.obj(static_cast<int>(i)));
  for (size_t i = 0; i < mm.size(); ++i) mm[i] = g.mor(f.mor(static_cast<int>(i)));
  return FinFunctor::validate(f.source(), g.target(), std::move(oo), std::move(mm));
}

// ---------------------------------------------------------------------------
// Natural transformations
// ---------------------------------------------------------------------------

class NatTrans {
 public:
  static NatTrans validate(FinFunctor f, FinFunctor g, std::vector<int> components) {
    if (!same_category(*f.source(), *g.source()) || !same_category(*f.target(), *g.target()))
      fail("NotParallel", "natural transformation endpoints do not match");
    NatTrans t{std::move(f), std::move(g), std::move(components)};
    const FinCat& C = *t.f_.source();
    const FinCat& D = *t.f_.target();
    if (static_cast<int>(t.comp_.size()) != C.object_count())
      fail("NotNatural", "component table is not total");
    for (int x = 0; x < C.object_count(); ++x) {
      int c = t.comp_[x];
      if (c < 0 || c >= D.morphism_count() || D.src(c) != t.f_.obj(x) || D.dst(c) != t.g_.obj(x))
        fail("NotNatural", "bad component at " + C.object(x));
    }
    for (int m = 0; m < C.morphism_count(); ++m) {
      int x = C.src(m), y = C.dst(m);
      if (D.compose(t.f_.mor(m), t.comp_[y]) != D.compose(t.comp_[x], t.g_.mor(m)))
        fail("NotNatural", "naturality fails at " + C.mor_name(m));
    }
    return t;
  }

  static NatTrans identity(const FinFunctor& f) {
    std::vector<int> comps(f.source()->object_count());
    for (int x = 0; x < f.source()->object_count(); ++x)
      comps[x] = f.target()->identity(f.obj(x));
    return validate(f, f, std::move(comps));
  }

  const FinFunctor& source_functor() const { return f_; }
  const FinFunctor& target_functor() const { return g_; }
  int component(int x) const { return comp_[x]; }
  const std::vector<int>& components() const { return comp_; }

  bool is_componentwise_iso() const {
    for (int c : comp_)
      if (!f_.target()->is_iso(c)) return false;
    return true;
  }

  NatTrans inverse() const {
    std::vector<int> comps(comp_.size());
    for (size_t i = 0; i < comp_.size(); ++i) {
      int inv = f_.target()->inverse_of(comp_[i]);
      if (inv < 0) fail("NotInvertible", "component " + f_.target()->mor_name(comp_[i]));
      comps[i] = inv;
    }
    return validate(g_, f_, std::move(comps));
  }

 private:
  NatTrans(FinFunctor f, FinFunctor g, std::vector<int> c)
      : f_(std::move(f)), g_(std::move(g)), comp_(std::move(c)) {}
  FinFunctor f_, g_;
  std::vector<int> comp_;
};

inline NatTrans vcomp(const NatTrans& a, const NatTrans& b) {
  const FinCat& D = *a.source_functor().target();
  std::vector<int> comps(a.components().size());
  for (size_t i = 0; i < comps.size(); ++i)
    comps[i] = D.compose(a.component(static_cast<int>(i)), b.component(static_cast<int>(i)));
  return NatTrans::validate(a.source_functor(), b.target_functor(), std::move(comps));
}

// h <| t : precompose the transformation with a functor into its source.
inline NatTrans whisker_left(const FinFunctor& h, const NatTrans& t) {
  std::vector<int> comps(h.source()->object_count());
  for (int x = 0; x < h.source()->object_count(); ++x) comps[x] = t.component(h.obj(x));
  return NatTrans::validate(compose_functors(h, t.source_functor()),
                            compose_functors(h, t.target_functor()), std::move(comps));
}

// t |> h : postcompose the transformation with a functor out of its target.
inline NatTrans whisker_right(const NatTrans& t, const FinFunctor& h) {
  std::vector<int> comps(t.components().size());
  for (size_t i = 0; i < comps.size(); ++i) comps[i] = h.mor(t.component(static_cast<int>(i)));
  return NatTrans::validate(compose_functors(t.source_functor(), h),
                            compose_functors(t.target_functor(), h), std::move(comps));
}

// ---------------------------------------------------------------------------
// Adjunctions
// ---------------------------------------------------------------------------

struct Adjunction {
  FinFunctor left;   // L : C -> D
  FinFunctor right;  // R : D -> C
  NatTrans unit;     // Id_C => L ; R
  NatTrans counit;   // R ; L => Id_D

  static Adjunction validate(FinFunctor l, FinFunctor r, NatTrans unit, NatTrans counit) {
    if (!same_category(*l.target(), *r.source()) || !same_category(*r.target(), *l.source()))
      fail("NotAdjoint", "functor endpoints do not match");
    const FinCat& C = *l.source();
    const FinCat& D = *l.target();
    // Triangle identities.
    for (int x = 0; x < C.object_count(); ++x) {
      int lhs = D.compose(l.mor(unit.component(x)), counit.component(l.obj(x)));
      if (lhs != D.identity(l.obj(x)))
        fail("TriangleLawViolation", "L-triangle at " + C.object(x));
    }
    for (int y = 0; y < D.object_count(); ++y) {
      int lhs = C.compose(unit.component(r.obj(y)), r.mor(counit.component(y)));
      if (lhs != C.identity(r.obj(y)))
        fail("TriangleLawViolation", "R-triangle at " + D.object(y));
    }
    return Adjunction{std::move(l), std::move(r), std::move(unit), std::move(counit)};
  }
};

// ---------------------------------------------------------------------------
// Limits and colimits
// ---------------------------------------------------------------------------

enum class Shape {
  Terminal,
  BinProduct,
  Equalizer,
  Pullback,
  Initial,
  BinCoproduct,
  Coequalizer
};

inline const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Terminal: return "terminal";
    case Shape::BinProduct: return "binary_product";
    case Shape::Equalizer: return "equalizer";
    case Shape::Pullback: return "pullback";
    case Shape::Initial: return "initial";
    case Shape::BinCoproduct: return "binary_coproduct";
    case Shape::Coequalizer: return "coequalizer";
  }
  return "?";
}

struct Diagram {
  Shape shape;
  std::vector<int> objs;  // BinProduct / BinCoproduct: the two objects
  std::vector<int> mors;  // Equalizer / Coequalizer: parallel pair; Pullback: cospan

  static Diagram terminal() { return {Shape::Terminal, {}, {}}; }
  static Diagram initial() { return {Shape::Initial, {}, {}}; }
  static Diagram product(int a, int b) { return {Shape::BinProduct, {a, b}, {}}; }
  static Diagram coproduct(int a, int b) { return {Shape::BinCoproduct, {a, b}, {}}; }
  static Diagram equalizer(int f, int g) { return {Shape::Equalizer, {}, {f, g}}; }
  static Diagram coequalizer(int f, int g) { return {Shape::Coequalizer, {}, {f, g}}; }
  static Diagram pullback(int f, int g) { return {Shape::Pullback, {}, {f, g}}; }
};

struct LimitWitness {
  Diagram diagram;
  int apex = -1;
  std::vector<int> legs;
  // Cone encoding -> the unique mediator. Cones are encoded per shape:
  // Terminal: {c}; BinProduct: {f,g}; Equalizer: {h}; Pullback: {u,v};
  // dually with cocone legs for the colimit shapes.
  std::map<std::vector<int>, int> mediators;
};

inline void check_diagram(const FinCat& c, const Diagram& d) {
  auto okm = [&](int m) { return m >= 0 && m < c.morphism_count(); };
  auto oko = [&](int o) { return o >= 0 && o < c.object_count(); };
  switch (d.shape) {
    case Shape::Terminal:
    case Shape::Initial:
      if (!d.objs.empty() || !d.mors.empty()) fail("ShapeMismatch", "nullary shape takes no data");
      return;
    case Shape::BinProduct:
    case Shape::BinCoproduct:
      if (d.objs.size() != 2 || !oko(d.objs[0]) || !oko(d.objs[1]) || !d.mors.empty())
        fail("ShapeMismatch", "binary (co)product takes two objects");
      return;
    case Shape::Equalizer:
    case Shape::Coequalizer:
      if (d.mors.size() != 2 || !okm(d.mors[0]) || !okm(d.mors[1]) ||
          c.src(d.mors[0]) != c.src(d.mors[1]) || c.dst(d.mors[0]) != c.dst(d.mors[1]))
        fail("ShapeMismatch", "(co)equalizer takes a parallel pair");
      return;
    case Shape::Pullback:
      if (d.mors.size() != 2 || !okm(d.mors[0]) || !okm(d.mors[1]) ||
          c.dst(d.mors[0]) != c.dst(d.mors[1]))
        fail("ShapeMismatch", "pullback takes a cospan");
      return;
  }
}

// Count-based universal property verifier. Returns the full mediator table
// when (apex, legs) is a genuine (co)limit, nullopt otherwise.
inline std::optional<std::map<std::vector<int>, int>> verify_universal(
    const FinCat& c, const Diagram& d, int apex, const std::vector<int>& legs) {
  std::map<std::vector<int>, int> med;
  auto unique_into = [&](const std::vector<int>& key, int cone_obj, auto&& equations) -> bool {
    int found = -1, count = 0;
    for (int m : c.hom(cone_obj, apex))
      if (equations(m)) {
        ++count;
        found = m;
      }
    if (count != 1) return false;
    med[key] = found;
    return true;
  };
  auto unique_outof = [&](const std::vector<int>& key, int cone_obj, auto&& equations) -> bool {
    int found = -1, count = 0;
    for (int m : c.hom(apex, cone_obj))
      if (equations(m)) {
        ++count;
        found = m;
      }
    if (count != 1) return false;
    med[key] = found;
    return true;
  };

  switch (d.shape) {
    case Shape::Terminal: {
      if (!legs.empty()) return std::nullopt;
      for (int x = 0; x < c.object_count(); ++x)
        if (!unique_into({x}, x, [](int) { return true; })) return std::nullopt;
      return med;
    }
    case Shape::Initial: {
      if (!legs.empty()) return std::nullopt;
      for (int x = 0; x < c.object_count(); ++x)
        if (!unique_outof({x}, x, [](int) { return true; })) return std::nullopt;
      return med;
    }
    case Shape::BinProduct: {
      if (legs.size() != 2) return std::nullopt;
      int p = legs[0], q = legs[1];
      if (c.src(p) != apex || c.src(q) != apex || c.dst(p) != d.objs[0] || c.dst(q) != d.objs[1])
        return std::nullopt;
      for (int x = 0; x < c.object_count(); ++x)
        for (int f : c.hom(x, d.objs[0]))
          for (int g : c.hom(x, d.objs[1]))
            if (!unique_into({f, g}, x, [&](int m) {
                  return c.compose(m, p) == f && c.compose(m, q) == g;
                }))
              return std::nullopt;
      return med;
    }
    case Shape::BinCoproduct: {
      if (legs.size() != 2) return std::nullopt;
      int i = legs[0], j = legs[1];
      if (c.dst(i) != apex || c.dst(j) != apex || c.src(i) != d.objs[0] || c.src(j) != d.objs[1])
        return std::nullopt;
      for (int x = 0; x < c.object_count(); ++x)
        for (int f : c.hom(d.objs[0], x))
          for (int g : c.hom(d.objs[1], x))
            if (!unique_outof({f, g}, x, [&](int m) {
                  return c.compose(i, m) == f && c.compose(j, m) == g;
                }))
              return std::nullopt;
      return med;
    }
    case Shape::Equalizer: {
      if (legs.size() != 1) return std::nullopt;
      int e = legs[0];
      int f = d.mors[0], g = d.mors[1];
      if (c.src(e) != apex || c.dst(e) != c.src(f)) return std::nullopt;
      if (c.compose(e, f) != c.compose(e, g)) return std::nullopt;
      for (int x = 0; x < c.object_count(); ++x)
        for (int h : c.hom(x, c.src(f))) {
          if (c.compose(h, f) != c.compose(h, g)) continue;
          if (!unique_into({h}, x, [&](int m) { return c.compose(m, e) == h; }))
            return std::nullopt;
        }
      return med;
    }
    case Shape::Coequalizer: {
      if (legs.size() != 1) return std::nullopt;
      int e = legs[0];
      int f = d.mors[0], g = d.mors[1];
      if (c.dst(e) != apex || c.src(e) != c.dst(f)) return std::nullopt;
      if (c.compose(f, e) != c.compose(g, e)) return std::nullopt;
      for (int x = 0; x < c.object_count(); ++x)
        for (int h : c.hom(c.dst(f), x)) {
          if (c.compose(f, h) != c.compose(g, h)) continue;
          if (!unique_outof({h}, x, [&](int m) { return c.compose(e, m) == h; }))
            return std::nullopt;
        }
      return med;
    }
    case Shape::Pullback: {
      if (legs.size() != 2) return std::nullopt;
      int p = legs[0], q = legs[1];
      int f = d.mors[0], g = d.mors[1];
      if (c.src(p) != apex || c.src(q) != apex) return std::nullopt;
      if (c.dst(p) != c.src(f) || c.dst(q) != c.src(g)) return std::nullopt;
      if (c.compose(p, f) != c.compose(q, g)) return std::nullopt;
      for (int x = 0; x < c.object_count(); ++x)
        for (int u : c.hom(x, c.src(f)))
          for (int v : c.hom(x, c.src(g))) {
            if (c.compose(u, f) != c.compose(v, g)) continue;
            if (!unique_into({u, v}, x, [&](int m) {
                  return c.compose(m, p) == u && c.compose(m, q) == v;
                }))
              return std::nullopt;
          }
      return med;
    }
  }
  return std::nullopt;
}

// Exhaustive search with deterministic tie-breaking: earliest apex in object
// order, then lexicographically earliest legs in morphism order.
inline std::optional<LimitWitness> find_universal(const FinCat& c, const Diagram& d) {
  check_diagram(c, d);
  auto attempt = [&](int apex, std::vector<int> legs) -> std::optional<LimitWitness> {
    auto med = verify_universal(c, d, apex, legs);
    if (!med) return std::nullopt;
    return LimitWitness{d, apex, std::move(legs), std::move(*med)};
  };
  for (int apex = 0; apex < c.object_count(); ++apex) {
    switch (d.shape) {
      case Shape::Terminal:
      case Shape::Initial: {
        if (auto w = attempt(apex, {})) return w;
        break;
      }
      case Shape::BinProduct: {
        for (int p : c.hom(apex, d.objs[0]))
          for (int q : c.hom(apex, d.objs[1]))
            if (auto w = attempt(apex, {p, q})) return w;
        break;
      }
      case Shape::BinCoproduct: {
        for (int i : c.hom(d.objs[0], apex))
          for (int j : c.hom(d.objs[1], apex))
            if (auto w = attempt(apex, {i, j})) return w;
        break;
      }
      case Shape::Equalizer: {
        for (int e : c.hom(apex, c.src(d.mors[0])))
          if (auto w = attempt(apex, {e})) return w;
        break;
      }
      case Shape::Coequalizer: {
        for (int e : c.hom(c.dst(d.mors[0]), apex))
          if (auto w = attempt(apex, {e})) return w;
        break;
      }
      case Shape::Pullback: {
        for (int p : c.hom(apex, c.src(d.mors[0])))
          for (int q : c.hom(apex, c.src(d.mors[1])))
            if (auto w = attempt(apex, {p, q})) return w;
        break;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<LimitWitness> find_limit(const FinCat& c, const Diagram& d) {
  if (d.shape == Shape::Initial || d.shape == Shape::BinCoproduct ||
      d.shape == Shape::Coequalizer)
    fail("ShapeMismatch", "colimit shape passed to find_limit");
  return find_universal(c, d);
}

inline std::optional<LimitWitness> find_colimit(const FinCat& c, const Diagram& d) {
  if (d.shape == Shape::Terminal || d.shape == Shape::BinProduct || d.shape == Shape::Equalizer ||
      d.shape == Shape::Pullback)
    fail("ShapeMismatch", "limit shape passed to find_colimit");
  return find_universal(c, d);
}

// ---------------------------------------------------------------------------
// Slice categories
// ---------------------------------------------------------------------------

struct Slice {
  CatPtr cat;
  FinFunctor projection;        // sends a triangle to its top arrow
  std::vector<int> obj_to_mor;  // slice object -> morphism of the base into x
  int base_object = -1;

  int object_of(int base_mor) const {
    for (size_t i = 0; i < obj_to_mor.size(); ++i)
      if (obj_to_mor[i] == base_mor) return static_cast<int>(i);
    return -1;
  }
};

// Objects: morphisms into x, named by their base name. Morphisms f -> g:
// base morphisms h with h ; g = f, named tri(h,f,g).
inline Slice slice_category(const CatPtr& cp, int x) {
  const FinCat& c = *cp;
  if (x < 0 || x >= c.object_count()) fail("UnknownObject", "slice apex out of range");
  FinCat::Presentation p;
  std::vector<int> obj_to_mor;
  for (int f : c.in(x)) {
    p.objects.push_back(c.mor_name(f));
    obj_to_mor.push_back(f);
  }
  struct Tri {
    std::string name;
    int h, f, g;
  };
  std::vector<Tri> tris;
  auto tri_name = [&](int h, int f, int g) -> std::string {
    if (h == c.identity(c.src(f)) && f == g) return "id_" + c.mor_name(f);
    return "tri(" + c.mor_name(h) + "," + c.mor_name(f) + "," + c.mor_name(g) + ")";
  };
  for (int f : c.in(x))
    for (int g : c.in(x))
      for (int h : c.hom(c.src(f), c.src(g)))
        if (c.compose(h, g) == f) {
          Tri t{tri_name(h, f, g), h, f, g};
          tris.push_back(t);
          if (t.name.rfind("id_", 0) != 0)
            p.morphisms.push_back({t.name, c.mor_name(f), c.mor_name(g)});
        }
  for (const auto& a : tris)
    for (const auto& b : tris)
      if (a.g == b.f) {
        int hc = c.compose(a.h, b.h);
        p.composition.push_back({a.name, b.name, tri_name(hc, a.f, b.g)});
      }
  Slice s;
  s.cat = FinCat::validate(p);
  s.obj_to_mor = std::move(obj_to_mor);
  s.base_object = x;
  std::vector<int> on_obj(s.cat->object_count()), on_mor(s.cat->morphism_count(), -1);
  for (int i = 0; i < s.cat->object_count(); ++i) on_obj[i] = c.src(s.obj_to_mor[i]);
  for (const auto& t : tris) on_mor[s.cat->mor_index(t.name)] = t.h;
  s.projection = FinFunctor::validate(s.cat, cp, std::move(on_obj), std::move(on_mor));
  return s;
}

// ---------------------------------------------------------------------------
// Functor reports
// ---------------------------------------------------------------------------

struct FunctorReport {
  bool functorial = false;
  bool faithful = false;
  bool full = false;
  bool essentially_surjective = false;
  std::map<Shape, bool> preserves;
  std::string detail;  // first failure witness, if any
};

namespace detail {
// All source diagrams of a shape, exhaustively.
inline std::vector<Diagram> all_diagrams(const FinCat& c, Shape s) {
  std::vector<Diagram> out;
  switch (s) {
    case Shape::Terminal: out.push_back(Diagram::terminal()); break;
    case Shape::Initial: out.push_back(Diagram::initial()); break;
    case Shape::BinProduct:
      for (int a = 0; a < c.object_count(); ++a)
        for (int b = 0; b < c.object_count(); ++b) out.push_back(Diagram::product(a, b));
      break;
    case Shape::BinCoproduct:
      for (int a = 0; a < c.object_count(); ++a)
        for (int b = 0; b < c.object_count(); ++b) out.push_back(Diagram::coproduct(a, b));
      break;
    case Shape::Equalizer:
      for (int f = 0; f < c.morphism_count(); ++f)
        for (int g = 0; g < c.morphism_count(); ++g)
          if (c.src(f) == c.src(g) && c.dst(f) == c.dst(g))
            out.push_back(Diagram::equalizer(f, g));
      break;
    case Shape::Coequalizer:
      for (int f = 0; f < c.morphism_count(); ++f)
        for (int g = 0; g < c.morphism_count(); ++g)
          if (c.src(f) == c.src(g) && c.dst(f) == c.dst(g))
            out.push_back(Diagram::coequalizer(f, g));
      break;
    case Shape::Pullback:
      for (int f = 0; f < c.morphism_count(); ++f)
        for (int g = 0; g < c.morphism_count(); ++g)
          if (c.dst(f) == c.dst(g)) out.push_back(Diagram::pullback(f, g));
      break;
  }
  return out;
}

inline Diagram map_diagram(const FinFunctor& fn, const Diagram& d) {
  Diagram out = d;
  for (auto& o : out.objs) o = fn.obj(o);
  for (auto& m : out.mors) m = fn.mor(m);
  return out;
}
}  // namespace detail

// Does the image of every source witness of this shape verify in the target?
inline bool preserves_shape(const FinFunctor& fn, Shape s) {
  const FinCat& c = *fn.source();
  for (const auto& d : detail::all_diagrams(c, s)) {
    auto w = find_universal(c, d);
    if (!w) continue;
    std::vector<int> legs;
    for (int l : w->legs) legs.push_back(fn.mor(l));
    if (!verify_universal(*fn.target(), detail::map_diagram(fn, d), fn.obj(w->apex), legs))
      return false;
  }
  return true;
}

inline FunctorReport check_functor(const FinFunctor& fn, bool with_preservation = true) {
  FunctorReport r;
  const FinCat& c = *fn.source();
  const FinCat& d = *fn.target();
  r.functorial = true;  // enforced by FinFunctor::validate

  r.faithful = true;
  for (int x = 0; x < c.object_count() && r.faithful; ++x)
    for (int y = 0; y < c.object_count() && r.faithful; ++y) {
      const auto& h = c.hom(x, y);
      for (size_t i = 0; i < h.size() && r.faithful; ++i)
        for (size_t j = i + 1; j < h.size(); ++j)
          if (fn.mor(h[i]) == fn.mor(h[j])) {
            r.faithful = false;
            r.detail = "not faithful at " + c.mor_name(h[i]) + ", " + c.mor_name(h[j]);
            break;
          }
    }

  r.full = true;
  for (int x = 0; x < c.object_count() && r.full; ++x)
    for (int y = 0; y < c.object_count() && r.full; ++y)
      for (int m : d.hom(fn.obj(x), fn.obj(y))) {
        bool hit = false;
        for (int f : c.hom(x, y))
          if (fn.mor(f) == m) hit = true;
        if (!hit) {
          r.full = false;
          if (r.detail.empty()) r.detail = "not full at " + d.mor_name(m);
          break;
        }
      }

  r.essentially_surjective = true;
  for (int t = 0; t < d.object_count(); ++t) {
    bool hit = false;
    for (int x = 0; x < c.object_count() && !hit; ++x) {
      for (int m : d.hom(fn.obj(x), t))
        if (d.is_iso(m)) hit = true;
    }
    if (!hit) {
      r.essentially_surjective = false;
      if (r.detail.empty()) r.detail = "not essentially surjective at " + d.object(t);
      break;
    }
  }

  if (with_preservation)
    for (Shape s : {Shape::Terminal, Shape::BinProduct, Shape::Equalizer, Shape::Pullback,
                    Shape::Initial, Shape::BinCoproduct, Shape::Coequalizer})
      r.preserves[s] = preserves_shape(fn, s);
  return r;
}

// ---------------------------------------------------------------------------
// Adjoint search
// ---------------------------------------------------------------------------

struct AdjointNotFound {
  std::string at;  // witness: object with no universal arrow
};
struct SearchBoundExceeded {
  std::string what;
};
using AdjointResult = std::variant<Adjunction, AdjointNotFound, SearchBoundExceeded>;

struct SearchBounds {
  int max_objects = 8;
  int max_morphisms = 40;
};

enum class AdjointSide { Left, Right };

namespace detail {

// Universal-arrow search: for L -| F, each y needs an initial object of
// (y down F); for F -| R, each y needs a terminal object of (F down y).
inline AdjointResult find_adjoint_general(const FinFunctor& f, AdjointSide side) {
  const CatPtr& Cp = f.source();
  const CatPtr& Dp = f.target();
  const FinCat& C = *Cp;
  const FinCat& D = *Dp;

  std::vector<int> adj_obj(D.object_count(), -1);
  std::vector<int> arrow(D.object_count(), -1);  // unit (left) / counit (right) component

  for (int y = 0; y < D.object_count(); ++y) {
    bool found = false;
    for (int cobj = 0; cobj < C.object_count() && !found; ++cobj) {
      const auto& cands = (side == AdjointSide::Left) ? D.hom(y, f.obj(cobj))
                                                      : D.hom(f.obj(cobj), y);
      for (int eta : cands) {
        bool universal = true;
        for (int x = 0; x < C.object_count() && universal; ++x) {
          const auto& us =
              (side == AdjointSide::Left) ? D.hom(y, f.obj(x)) : D.hom(f.obj(x), y);
          for (int u : us) {
            int count = 0;
            for (int v : (side == AdjointSide::Left) ? C.hom(cobj, x) : C.hom(x, cobj)) {
              int comp = (side == AdjointSide::Left) ? D.compose(eta, f.mor(v))
                                                     : D.compose(f.mor(v), eta);
              if (comp == u) ++count;
            }
            if (count != 1) {
              universal = false;
              break;
            }
          }
        }
        if (universal) {
          adj_obj[y] = cobj;
          arrow[y] = eta;
          found = true;
          break;
        }
      }
    }
    if (!found) return AdjointNotFound{D.object(y)};
  }

  // Action on morphisms via the universal property.
  std::vector<int> adj_mor(D.morphism_count(), -1);
  for (int g = 0; g < D.morphism_count(); ++g) {
    int y = D.src(g), y2 = D.dst(g);
    int target = (side == AdjointSide::Left) ? D.compose(g, arrow[y2])
                                             : D.compose(arrow[y], g);
    for (int v : C.hom(adj_obj[y], adj_obj[y2])) {
      int comp = (side == AdjointSide::Left) ? D.compose(arrow[y], f.mor(v))
                                             : D.compose(f.mor(v), arrow[y2]);
      if (comp == target) {
        adj_mor[g] = v;
        break;
      }
    }
    if (adj_mor[g] < 0) return AdjointNotFound{D.mor_name(g)};
  }
  FinFunctor G = FinFunctor::validate(Dp, Cp, std::move(adj_obj), std::move(adj_mor));

  if (side == AdjointSide::Left) {
    // G -| f : unit components are the stored arrows; counit at x in C is the
    // unique v : G(f(x)) -> x with arrow_{f x} ; f(v) = id.
    NatTrans unit = NatTrans::validate(FinFunctor::identity(Dp), compose_functors(G, f), arrow);
    std::vector<int> eps(C.object_count(), -1);
    for (int x = 0; x < C.object_count(); ++x) {
      for (int v : C.hom(G.obj(f.obj(x)), x))
        if (D.compose(arrow[f.obj(x)], f.mor(v)) == D.identity(f.obj(x))) {
          eps[x] = v;
          break;
        }
      if (eps[x] < 0) return AdjointNotFound{C.object(x)};
    }
    NatTrans counit =
        NatTrans::validate(compose_functors(f, G), FinFunctor::identity(Cp), std::move(eps));
    return Adjunction::validate(G, f, std::move(unit), std::move(counit));
  }

  // f -| G : counit components are the stored arrows; unit at x is the unique
  // v : x -> G(f(x)) with f(v) ; arrow_{f x} = id.
  NatTrans counit =
      NatTrans::validate(compose_functors(G, f), FinFunctor::identity(Dp), arrow);
  std::vector<int> eta(C.object_count(), -1);
  for (int x = 0; x < C.object_count(); ++x) {
    for (int v : C.hom(x, G.obj(f.obj(x))))
      if (D.compose(f.mor(v), arrow[f.obj(x)]) == D.identity(f.obj(x))) {
        eta[x] = v;
        break;
      }
    if (eta[x] < 0) return AdjointNotFound{C.object(x)};
  }
  NatTrans unit =
      NatTrans::validate(FinFunctor::identity(Cp), compose_functors(f, G), std::move(eta));
  return Adjunction::validate(f, G, std::move(unit), std::move(counit));
}

}  // namespace detail

// side = Left finds L -| F; side = Right finds F -| R. The Galois fast path
// applies whenever both categories are posetal; otherwise the search is
// subject to the configured bounds.
inline AdjointResult find_adjoint(const FinFunctor& f, AdjointSide side,
                                  SearchBounds bounds = {}) {
  const FinCat& C = *f.source();
  const FinCat& D = *f.target();
  bool posetal = C.is_posetal() && D.is_posetal();
  if (!posetal) {
    if (C.object_count() > bounds.max_objects || D.object_count() > bounds.max_objects)
      return SearchBoundExceeded{"object bound " + std::to_string(bounds.max_objects)};
    if (C.morphism_count() > bounds.max_morphisms || D.morphism_count() > bounds.max_morphisms)
      return SearchBoundExceeded{"morphism bound " + std::to_string(bounds.max_morphisms)};
  }
  return detail::find_adjoint_general(f, side);
}

// ---------------------------------------------------------------------------
// Equivalences
// ---------------------------------------------------------------------------

struct EquivalenceWitness {
  FinFunctor functor;
  FinFunctor quasi_inverse;
  NatTrans unit;    // Id_C => F ; G
  NatTrans counit;  // G ; F => Id_D
};
struct NotEquivalence {
  std::string reason;
};
using EquivalenceResult = std::variant<EquivalenceWitness, NotEquivalence>;

inline EquivalenceResult check_equivalence(const FinFunctor& f) {
  const CatPtr& Cp = f.source();
  const CatPtr& Dp = f.target();
  const FinCat& C = *Cp;
  const FinCat& D = *Dp;

  // Fully faithful?
  for (int x = 0; x < C.object_count(); ++x)
    for (int y = 0; y < C.object_count(); ++y) {
      const auto& h = C.hom(x, y);
      for (size_t i = 0; i < h.size(); ++i)
        for (size_t j = i + 1; j < h.size(); ++j)
          if (f.mor(h[i]) == f.mor(h[j]))
            return NotEquivalence{"not faithful at " + C.mor_name(h[i]) + ", " +
                                  C.mor_name(h[j])};
      for (int m : D.hom(f.obj(x), f.obj(y))) {
        bool hit = false;
        for (int g : h)
          if (f.mor(g) == m) hit = true;
        if (!hit) return NotEquivalence{"not full at " + D.mor_name(m)};
      }
    }

  // Essential surjectivity with explicit preimages: for each d pick the
  // earliest (c, iso F c -> d).
  std::vector<int> gobj(D.object_count(), -1), eps(D.object_count(), -1);
  for (int t = 0; t < D.object_count(); ++t) {
    for (int x = 0; x < C.object_count() && gobj[t] < 0; ++x)
      for (int m : D.hom(f.obj(x), t))
        if (D.is_iso(m)) {
          gobj[t] = x;
          eps[t] = m;
          break;
        }
    if (gobj[t] < 0) return NotEquivalence{"eso fails at " + D.object(t)};
  }

  // G on morphisms: unique preimage of eps_y^-1 ; g ; eps_y'.
  std::vector<int> gmor(D.morphism_count(), -1);
  for (int g = 0; g < D.morphism_count(); ++g) {
    int y = D.src(g), y2 = D.dst(g);
    int want = D.compose(D.compose(eps[y], g), D.inverse_of(eps[y2]));
    for (int v : C.hom(gobj[y], gobj[y2]))
      if (f.mor(v) == want) {
        gmor[g] = v;
        break;
      }
    if (gmor[g] < 0) return NotEquivalence{"no preimage for " + D.mor_name(g)};
  }
  FinFunctor G = FinFunctor::validate(Dp, Cp, std::move(gobj), std::move(gmor));

  // Unit at c: the unique preimage of eps_{F c}^-1 : F c -> F(G(F c)).
  std::vector<int> eta(C.object_count(), -1);
  for (int x = 0; x < C.object_count(); ++x) {
    int want = D.inverse_of(eps[f.obj(x)]);
    for (int v : C.hom(x, G.obj(f.obj(x))))
      if (f.mor(v) == want) {
        eta[x] = v;
        break;
      }
    if (eta[x] < 0) return NotEquivalence{"no unit component at " + C.object(x)};
  }
  NatTrans unit =
      NatTrans::validate(FinFunctor::identity(Cp), compose_functors(f, G), std::move(eta));
  NatTrans counit =
      NatTrans::validate(compose_functors(G, f), FinFunctor::identity(Dp), std::move(eps));
  if (!unit.is_componentwise_iso() || !counit.is_componentwise_iso())
    return NotEquivalence{"unit or counit not invertible"};
  return EquivalenceWitness{f, std::move(G), std::move(unit), std::move(counit)};
}

// ---------------------------------------------------------------------------
// Gauntness
// ---------------------------------------------------------------------------

struct GauntReport {
  bool gaunt = false;
  int witness = -1;  // a non-identity isomorphism when not gaunt
};

inline GauntReport is_gaunt(const FinCat& c) {
  for (int f = 0; f < c.morphism_count(); ++f)
    if (c.is_iso(f) && !c.is_identity(f)) return {false, f};
  return {true, -1};
}

}  // namespace catlang
