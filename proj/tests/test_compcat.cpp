#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <set>

#include "bridge.hpp"
#include "catlang/compcat.hpp"
#include "catlang/io.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace catlang;

namespace {

CatPtr div6() { return bridge::from_poset(fixtures::div6_poset()); }
CatPtr two() { return bridge::from_poset(fixtures::two_poset()); }
CatPtr vshape() { return bridge::from_poset(fixtures::vshape_poset()); }
CatPtr wiso() { return bridge::lift(fixtures::walking_iso_cat()); }

std::string err_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code;
  }
  return "";
}

// The canonical comprehension structure on a category: types are its own
// morphisms, comprehension is the identity on the arrow construction.
CompCat self_indexing(const CatPtr& c) {
  ArrowDisp a = arrow_displayed(c);
  Cleaving cl = std::get<Cleaving>(find_cleaving(a.disp));
  return assemble_compcat(c, a.disp, cl, identity_disp_functor(a.disp));
}

int dobj_of(const CompCat& k, const std::string& name) {
  int i = k.types->dobject_index(name);
  REQUIRE(i >= 0);
  return i;
}

int mor_of(const CompCat& k, const std::string& name) {
  int m = k.base->mor_index(name);
  REQUIRE(m >= 0);
  return m;
}

// A group of order two acting on x, plus a separate terminal object.
fixtures::NeutralCat z2t_cat() {
  fixtures::NeutralCat n;
  n.name = "z2t";
  n.objects = {"x", "t"};
  n.morphisms = {{"s", "x", "x"}, {"bang", "x", "t"}};
  n.comps = {{"s", "s", "id_x"}, {"s", "bang", "bang"}};
  return n;
}

// A full comprehension over z2t with one type per object; the type over x
// carries the symmetry as a displayed morphism over s.
CompCat z2_compcat() {
  CatPtr b = bridge::lift(z2t_cat());
  DispCat::Presentation tp;
  tp.base = b;
  tp.dobjects = {{"X", "x"}, {"T", "t"}};
  tp.dmorphisms = {{"v", "s", "X", "X"}, {"u", "bang", "X", "T"}};
  tp.dcomposition = {{"v", "v", "did_X"}, {"v", "u", "u"}};
  DispPtr types = DispCat::validate(tp);
  ArrowDisp a = arrow_displayed(b);
  std::vector<int> oo = {a.disp->dobject_index("id_x"), a.disp->dobject_index("id_t")};
  std::vector<int> mm(types->dmorphism_count(), -1);
  mm[types->dmorphism_index("v")] = a.disp->dmorphism_index("sq(s,id_x,id_x,s)");
  mm[types->dmorphism_index("u")] = a.disp->dmorphism_index("sq(bang,id_x,id_t,bang)");
  DispFunctor chi = DispFunctor::validate(FinFunctor::identity(b), types, a.disp, oo, mm);
  Cleaving cl = std::get<Cleaving>(find_cleaving(types));
  return assemble_compcat(b, types, cl, chi);
}

}  // namespace

TEST_CASE("self-indexing comprehensions assemble and are full") {
  struct Row {
    CatPtr c;
    std::string terminal;
  };
  std::vector<Row> rows = {{bridge::from_poset(fixtures::one_poset()), "*"},
                           {two(), "1"},
                           {div6(), "6"},
                           {wiso(), "u"}};
  for (const Row& r : rows) {
    CompCat k = self_indexing(r.c);
    CHECK(k.full);
    CHECK(k.base->object(k.terminal) == r.terminal);
    CHECK(k.types->dobject_count() == r.c->morphism_count());
    for (int i = 0; i < k.types->dobject_count(); ++i)
      CHECK(k.chi.dobj(i) == i);
  }

  CompCat z = z2_compcat();
  CHECK(z.full);
  CHECK(z.base->object(z.terminal) == "t");
  CHECK(z.types->dobject_count() == 2);
}

TEST_CASE("assembly validates terminal, endpoints and cartesian images") {
  CatPtr anti = bridge::from_poset(oracle::make_poset({"a", "b"}, {}));
  CHECK(err_code([&] { self_indexing(anti); }) == "NoTerminal");

  CatPtr c6 = div6();
  ArrowDisp a6 = arrow_displayed(c6);
  Cleaving cl6 = std::get<Cleaving>(find_cleaving(a6.disp));
  CatPtr c2 = two();
  ArrowDisp a2 = arrow_displayed(c2);
  Cleaving cl2 = std::get<Cleaving>(find_cleaving(a2.disp));

  CHECK(err_code([&] {
          assemble_compcat(c6, a6.disp, cl6, identity_disp_functor(a2.disp));
        }) == "ShapeMismatch");
  CHECK(err_code([&] {
          assemble_compcat(c6, a6.disp, cl2, identity_disp_functor(a6.disp));
        }) == "ShapeMismatch");

  std::vector<int> on_obj = {c6->object_index("1"), c6->object_index("2"),
                             c6->object_index("1"), c6->object_index("2")};
  FinFunctor meet2 = functor_on_objects(c6, c6, on_obj);
  CHECK(err_code([&] {
          assemble_compcat(c6, a6.disp, cl6, arrow_disp_functor(a6, a6, meet2));
        }) == "NotOverIdentity");

  // A comprehension functor that sends a cartesian morphism to a commuting
  // square that is not a pullback: the image of m has apex 1 although the
  // feet of its cospan meet at 2.
  DispCat::Presentation tp;
  tp.base = c6;
  tp.dobjects = {{"R", "1"}, {"W", "3"}, {"P", "2"}, {"Q", "6"}};
  tp.dmorphisms = {{"n", "le_1_2", "R", "P"},
                   {"r", "le_1_3", "R", "W"},
                   {"m", "le_2_6", "P", "Q"},
                   {"w", "le_3_6", "W", "Q"},
                   {"o", "le_1_6", "R", "Q"}};
  tp.dcomposition = {{"n", "m", "o"}, {"r", "w", "o"}};
  DispPtr skew = DispCat::validate(tp);
  std::vector<int> oo = {a6.disp->dobject_index("id_1"), a6.disp->dobject_index("le_1_3"),
                         a6.disp->dobject_index("le_1_2"),
                         a6.disp->dobject_index("le_2_6")};
  std::vector<int> mm(skew->dmorphism_count(), -1);
  auto put = [&](const std::string& from, const std::string& to) {
    mm[skew->dmorphism_index(from)] = a6.disp->dmorphism_index(to);
  };
  put("n", "sq(id_1,id_1,le_1_2,le_1_2)");
  put("r", "sq(id_1,id_1,le_1_3,le_1_3)");
  put("m", "sq(le_1_2,le_1_2,le_2_6,le_2_6)");
  put("w", "sq(le_1_2,le_1_3,le_2_6,le_3_6)");
  put("o", "sq(le_1_2,id_1,le_2_6,le_1_6)");
  DispFunctor bad = DispFunctor::validate(FinFunctor::identity(c6), skew, a6.disp, oo, mm);
  REQUIRE(is_cartesian(*skew, skew->dmorphism_index("m")).cartesian);
  Cleaving cls = std::get<Cleaving>(find_cleaving(skew));
  CHECK(err_code([&] { assemble_compcat(c6, skew, cls, bad); }) == "NotCartesian");
}

TEST_CASE("context extension reads off the comprehension square") {
  CompCat k = self_indexing(div6());
  CtxExtension e = ctx_extend(k, k.base->object_index("6"), dobj_of(k, "le_2_6"));
  CHECK(k.base->object(e.extension) == "2");
  CHECK(k.base->mor_name(e.projection) == "le_2_6");

  CtxExtension t = ctx_extend(k, k.base->object_index("6"), dobj_of(k, "id_6"));
  CHECK(k.base->object(t.extension) == "6");
  CHECK(k.base->is_identity(t.projection));

  CtxExtension u = ctx_extend(k, k.base->object_index("2"), dobj_of(k, "le_1_2"));
  CHECK(k.base->object(u.extension) == "1");

  CHECK(err_code([&] {
          ctx_extend(k, k.base->object_index("2"), dobj_of(k, "le_2_6"));
        }) == "UnknownType");
}

TEST_CASE("type substitution follows the chosen cartesian lifts") {
  CompCat k = self_indexing(div6());
  SubstType st = subst_type(k, mor_of(k, "le_2_6"), dobj_of(k, "le_3_6"));
  CHECK(k.types->dobj(st.type).name == "le_1_2");
  CHECK(k.types->dmor(st.lift).dst == dobj_of(k, "le_3_6"));

  // Substituting along an identity is a vertical isomorphism.
  SubstType idst = subst_type(k, k.base->identity(k.base->object_index("6")),
                              dobj_of(k, "le_2_6"));
  CHECK(vertical_inverse(*k.types, idst.lift) >= 0);

  // The extension of the substituted type is the meet of the extension with
  // the source of the substitution.
  oracle::RawPoset p = fixtures::div6_poset();
  for (int s = 0; s < k.base->morphism_count(); ++s)
    for (int a : k.types->dobjects_over(k.base->dst(s))) {
      SubstType t = subst_type(k, s, a);
      int lhs = p.index(k.base->object(ctx_extension(k, t.type)));
      auto m = oracle::poset_meet(p, p.index(k.base->object(ctx_extension(k, a))),
                                  p.index(k.base->object(k.base->src(s))));
      REQUIRE(m);
      CHECK(lhs == *m);
    }

  CHECK(err_code([&] { subst_type(k, mor_of(k, "le_2_6"), dobj_of(k, "le_1_2")); }) ==
        "UnknownType");
}

TEST_CASE("terms are sections of their projections") {
  CompCat k = self_indexing(div6());
  CHECK(terms(k, k.base->object_index("6"), dobj_of(k, "le_2_6")).empty());

  std::vector<Term> ts = terms(k, k.base->object_index("6"), dobj_of(k, "id_6"));
  REQUIRE(ts.size() == 1);
  CHECK(k.base->is_identity(ts[0].section));
  CHECK(is_term(k, ts[0]));

  // The fiberwise unit type over any context has exactly one term.
  for (int g = 0; g < k.base->object_count(); ++g) {
    int unit = dobj_of(k, k.base->mor_name(k.base->identity(g)));
    CHECK(terms(k, g, unit).size() == 1);
  }

  CHECK_FALSE(is_term(k, {k.base->object_index("6"), dobj_of(k, "id_6"),
                          mor_of(k, "le_2_6")}));
  CHECK_FALSE(is_term(k, {k.base->object_index("6"), dobj_of(k, "le_2_6"),
                          mor_of(k, "id_6")}));
  CHECK_FALSE(is_term(k, {0, dobj_of(k, "id_6"), 0}));
}

TEST_CASE("variables are sections induced by the comprehension pullback") {
  CompCat k6 = self_indexing(div6());
  Term v = var_term(k6, k6.base->object_index("6"), dobj_of(k6, "le_2_6"));
  CHECK(k6.base->object(v.ctx) == "2");
  CHECK(k6.types->dobj(v.type).name == "id_2");
  CHECK(k6.base->mor_name(v.section) == "id_2");

  for (const CatPtr& c : {div6(), wiso()}) {
    CompCat k = self_indexing(c);
    for (int a = 0; a < k.types->dobject_count(); ++a) {
      int g = k.types->dobj(a).over;
      CtxExtension e = ctx_extend(k, g, a);
      SubstType st = subst_type(k, e.projection, a);
      Term var = var_term(k, g, a);
      CHECK(var.ctx == e.extension);
      CHECK(var.type == st.type);
      CHECK(is_term(k, var));
      CHECK(k.base->compose(var.section, chi_top(k, st.lift)) ==
            k.base->identity(e.extension));
    }
  }
}

TEST_CASE("term substitution lands on the substituted type") {
  CompCat k = self_indexing(div6());
  int two_obj = k.base->object_index("2");
  Term t = terms(k, two_obj, dobj_of(k, "id_2")).at(0);
  Term st = subst_term(k, mor_of(k, "le_1_2"), t);
  CHECK(k.base->object(st.ctx) == "1");
  CHECK(k.types->dobj(st.type).name == "id_1");
  CHECK(k.base->mor_name(st.section) == "id_1");
  CHECK(is_term(k, st));

  for (const CatPtr& c : {div6(), wiso()}) {
    CompCat h = self_indexing(c);
    for (int s = 0; s < h.base->morphism_count(); ++s)
      for (int a : h.types->dobjects_over(h.base->dst(s)))
        for (const Term& tm : terms(h, h.base->dst(s), a)) {
          Term sub = subst_term(h, s, tm);
          CHECK(is_term(h, sub));
          CHECK(sub.type == subst_type(h, s, a).type);
        }
  }

  CHECK(err_code([&] {
          subst_term(k, mor_of(k, "le_1_2"),
                     {k.base->object_index("6"), dobj_of(k, "id_6"), mor_of(k, "id_6")});
        }) == "UnknownType");
  CHECK(err_code([&] {
          subst_term(k, mor_of(k, "le_1_2"),
                     {two_obj, dobj_of(k, "id_2"), mor_of(k, "le_1_2")});
        }) == "NotSection");
}

TEST_CASE("extended context morphisms satisfy the projection law") {
  CompCat k = self_indexing(div6());
  int one_obj = k.base->object_index("1");
  SubstType st = subst_type(k, mor_of(k, "le_1_6"), dobj_of(k, "le_2_6"));
  CHECK(k.types->dobj(st.type).name == "id_1");
  Term t = terms(k, one_obj, st.type).at(0);
  int pair = pair_sub(k, mor_of(k, "le_1_6"), dobj_of(k, "le_2_6"), t);
  CHECK(k.base->mor_name(pair) == "le_1_2");
  CHECK(k.base->compose(pair, ctx_projection(k, dobj_of(k, "le_2_6"))) ==
        mor_of(k, "le_1_6"));

  for (const CatPtr& c : {div6(), wiso()}) {
    CompCat h = self_indexing(c);
    for (int s = 0; s < h.base->morphism_count(); ++s)
      for (int a : h.types->dobjects_over(h.base->dst(s))) {
        SubstType sa = subst_type(h, s, a);
        for (const Term& tm : terms(h, h.base->src(s), sa.type)) {
          int p = pair_sub(h, s, a, tm);
          CHECK(h.base->compose(p, ctx_projection(h, a)) == s);
        }
      }
  }

  CHECK(err_code([&] {
          pair_sub(k, mor_of(k, "le_1_6"), dobj_of(k, "le_2_6"),
                   {k.base->object_index("2"), dobj_of(k, "id_2"), mor_of(k, "id_2")});
        }) == "UnknownType");
  CHECK(err_code([&] {
          pair_sub(k, mor_of(k, "le_1_6"), dobj_of(k, "le_2_6"),
                   {one_obj, st.type, mor_of(k, "le_1_2")});
        }) == "NotSection");
}

TEST_CASE("terms transport bijectively along vertical isomorphisms") {
  for (const CatPtr& c : {div6(), wiso()}) {
    CompCat k = self_indexing(c);
    for (int g = 0; g < k.base->object_count(); ++g)
      for (int a : k.types->dobjects_over(g))
        for (int b : k.types->dobjects_over(g))
          for (int v : k.types->dhom_over(a, b, k.base->identity(g))) {
            if (vertical_inverse(*k.types, v) < 0) continue;
            std::vector<Term> src = terms(k, g, a);
            std::set<int> images;
            for (const Term& t : src) {
              Term image{g, b, k.base->compose(t.section, chi_top(k, v))};
              CHECK(is_term(k, image));
              images.insert(image.section);
            }
            CHECK(images.size() == src.size());
            CHECK(images.size() == terms(k, g, b).size());
          }
  }
}

TEST_CASE("fullness reflects the comprehension being bijective on squares") {
  CompCat k = self_indexing(div6());
  for (int m = 0; m < k.types->dmorphism_count(); ++m) {
    const auto& d = k.types->dmor(m);
    CHECK(chi_preimage(k, d.over, d.src, d.dst, chi_top(k, m)) == m);
  }

  CompCat z = z2_compcat();
  CHECK(chi_preimage(z, mor_of(z, "s"), dobj_of(z, "X"), dobj_of(z, "X"),
                     mor_of(z, "s")) == z.types->dmorphism_index("v"));

  // Two parallel lifts whose comprehension misses the square between them.
  CatPtr c2 = two();
  ArrowDisp a2 = arrow_displayed(c2);
  DispCat::Presentation tp;
  tp.base = c2;
  tp.dobjects = {{"X", "0"}, {"Y", "1"}, {"Z", "1"}};
  tp.dmorphisms = {{"p", "le_0_1", "X", "Y"}, {"q", "le_0_1", "X", "Z"}};
  DispPtr types = DispCat::validate(tp);
  std::vector<int> oo = {a2.disp->dobject_index("id_0"), a2.disp->dobject_index("le_0_1"),
                         a2.disp->dobject_index("id_1")};
  std::vector<int> mm(types->dmorphism_count(), -1);
  mm[types->dmorphism_index("p")] = a2.disp->dmorphism_index("sq(id_0,id_0,le_0_1,le_0_1)");
  mm[types->dmorphism_index("q")] = a2.disp->dmorphism_index("sq(le_0_1,id_0,id_1,le_0_1)");
  DispFunctor chi = DispFunctor::validate(FinFunctor::identity(c2), types, a2.disp, oo, mm);
  CompCat nf = assemble_compcat(c2, types, std::get<Cleaving>(find_cleaving(types)), chi);
  CHECK_FALSE(nf.full);
  CHECK(err_code([&] {
          chi_preimage(nf, c2->identity(1), dobj_of(nf, "Y"), dobj_of(nf, "Z"),
                       c2->mor_index("le_0_1"));
        }) == "NotFull");
}

TEST_CASE("comprehension morphisms validate their structure") {
  CatPtr c6 = div6();
  CompCat k = self_indexing(c6);
  CompCatMorphism ident = identity_compcat_morphism(k);
  for (size_t i = 0; i < ident.chi_square.size(); ++i)
    CHECK(ident.chi_square[i] == ident.chi_square_inv[i]);

  // A monotone right adjoint preserves the terminal and all meets, so it
  // induces a morphism with identity fillers.
  std::vector<int> hey = {c6->object_index("3"), c6->object_index("6"),
                          c6->object_index("3"), c6->object_index("6")};
  FinFunctor h = functor_on_objects(c6, c6, hey);
  DispFunctor on_types = arrow_disp_functor(k.arrow, k.arrow, h);
  std::vector<int> fill(k.types->dobject_count());
  for (int i = 0; i < k.types->dobject_count(); ++i)
    fill[i] = k.arrow.disp->didentity(on_types.dobj(i));
  CompCatMorphism hm = make_compcat_morphism(k, k, h, on_types, fill);
  CHECK(hm.functor.obj(c6->object_index("2")) == c6->object_index("6"));

  // Collapsing everything onto the terminal still preserves the structure.
  std::vector<int> six(4, c6->object_index("6"));
  FinFunctor cf = functor_on_objects(c6, c6, six);
  DispFunctor ct = arrow_disp_functor(k.arrow, k.arrow, cf);
  std::vector<int> cfill(k.types->dobject_count());
  for (int i = 0; i < k.types->dobject_count(); ++i)
    cfill[i] = k.arrow.disp->didentity(ct.dobj(i));
  CompCatMorphism cm = make_compcat_morphism(k, k, cf, ct, cfill);
  CHECK(cm.on_types.dobj(dobj_of(k, "le_2_6")) == dobj_of(k, "id_6"));

  // Meet with two sends the terminal to 2, which is not terminal.
  std::vector<int> on_obj = {c6->object_index("1"), c6->object_index("2"),
                             c6->object_index("1"), c6->object_index("2")};
  FinFunctor meet2 = functor_on_objects(c6, c6, on_obj);
  CHECK(err_code([&] {
          make_compcat_morphism(k, k, meet2, arrow_disp_functor(k.arrow, k.arrow, meet2),
                                fill);
        }) == "NoTerminal");
  CHECK(err_code([&] {
          make_compcat_morphism(k, k, FinFunctor::identity(c6), on_types, fill);
        }) == "ShapeMismatch");
  CHECK(err_code([&] {
          make_compcat_morphism(k, k, FinFunctor::identity(two()), on_types, fill);
        }) == "ShapeMismatch");
}

TEST_CASE("comprehension morphism fillers must be invertible") {
  CatPtr c2 = two();
  CompCat big = self_indexing(c2);

  DispCat::Presentation sp;
  sp.base = c2;
  sp.dobjects = {{"X", "0"}, {"Y", "1"}};
  sp.dmorphisms = {{"p", "le_0_1", "X", "Y"}};
  DispPtr small = DispCat::validate(sp);
  ArrowDisp a2 = arrow_displayed(c2);
  std::vector<int> oo = {a2.disp->dobject_index("id_0"), a2.disp->dobject_index("le_0_1")};
  std::vector<int> mm(small->dmorphism_count(), -1);
  mm[small->dmorphism_index("p")] =
      a2.disp->dmorphism_index("sq(id_0,id_0,le_0_1,le_0_1)");
  DispFunctor chi = DispFunctor::validate(FinFunctor::identity(c2), small, a2.disp, oo, mm);
  CompCat sub = assemble_compcat(c2, small, std::get<Cleaving>(find_cleaving(small)), chi);
  CHECK(sub.full);

  // Including the sub-comprehension with its own comprehension squares gives
  // identity fillers.
  std::vector<int> incl_o = {big.types->dobject_index("id_0"),
                             big.types->dobject_index("le_0_1")};
  std::vector<int> incl_m(small->dmorphism_count(), -1);
  incl_m[small->dmorphism_index("p")] =
      big.types->dmorphism_index("sq(id_0,id_0,le_0_1,le_0_1)");
  DispFunctor incl =
      DispFunctor::validate(FinFunctor::identity(c2), small, big.types, incl_o, incl_m);
  std::vector<int> fill = {big.arrow.disp->didentity(big.types->dobject_index("id_0")),
                           big.arrow.disp->didentity(big.types->dobject_index("le_0_1"))};
  CompCatMorphism ok = make_compcat_morphism(sub, big, FinFunctor::identity(c2), incl, fill);
  CHECK(ok.chi_square == fill);

  // Sending the type over 1 to the unit type instead forces a filler that is
  // only a one-way comparison, which the pseudo condition rejects.
  std::vector<int> up_o = {big.types->dobject_index("id_0"),
                           big.types->dobject_index("id_1")};
  std::vector<int> up_m(small->dmorphism_count(), -1);
  up_m[small->dmorphism_index("p")] =
      big.types->dmorphism_index("sq(le_0_1,id_0,id_1,le_0_1)");
  DispFunctor up =
      DispFunctor::validate(FinFunctor::identity(c2), small, big.types, up_o, up_m);
  std::vector<int> lax = {big.arrow.disp->didentity(big.types->dobject_index("id_0")),
                          big.arrow.disp->dmorphism_index("sq(le_0_1,le_0_1,id_1,id_1)")};
  CHECK(err_code([&] {
          make_compcat_morphism(sub, big, FinFunctor::identity(c2), up, lax);
        }) == "NotInvertible");
}

TEST_CASE("2-cells paste compatibly with the comprehension fillers") {
  CompCat k = self_indexing(div6());
  CompCatMorphism ident = identity_compcat_morphism(k);
  std::vector<int> comps(k.types->dmorphism_count(), -1);
  std::vector<int> tbar(k.types->dobject_count());
  for (int i = 0; i < k.types->dobject_count(); ++i) tbar[i] = k.types->didentity(i);
  CompCat2Cell cell =
      make_compcat_2cell(k, k, ident, ident,
                         NatTrans::identity(FinFunctor::identity(k.base)), tbar);
  CHECK(cell.base_cell.is_componentwise_iso());

  // On the symmetric comprehension the group element induces a non-identity
  // 2-cell from the identity morphism to itself.
  CompCat z = z2_compcat();
  CompCatMorphism zid = identity_compcat_morphism(z);
  NatTrans tau = NatTrans::validate(FinFunctor::identity(z.base),
                                    FinFunctor::identity(z.base),
                                    {mor_of(z, "s"), z.base->identity(z.terminal)});
  std::vector<int> zbar = {z.types->dmorphism_index("v"),
                           z.types->didentity(dobj_of(z, "T"))};
  CompCat2Cell zc = make_compcat_2cell(z, z, zid, zid, tau, zbar);
  CHECK(z.base->mor_name(zc.base_cell.component(z.base->object_index("x"))) == "s");
  CHECK(z.types->dmor(zc.type_cell.component(dobj_of(z, "X"))).name == "v");
}

TEST_CASE("comprehension bundles round trip through json") {
  for (const CatPtr& c : {div6(), two()}) {
    CompCat k = self_indexing(c);
    io::json j = io::compcat_to_json(k);
    CompCat back = io::load_compcat(j);
    CHECK(back.full == k.full);
    CHECK(back.base->object(back.terminal) == k.base->object(k.terminal));
    REQUIRE(back.types->dobject_count() == k.types->dobject_count());
    for (int i = 0; i < k.types->dobject_count(); ++i) {
      int j = back.types->dobject_index(k.types->dobj(i).name);
      REQUIRE(j >= 0);
      CHECK(back.arrow.disp->dobj(back.chi.dobj(j)).name ==
            k.arrow.disp->dobj(k.chi.dobj(i)).name);
    }
  }

  CompCat z = z2_compcat();
  CompCat zback = io::load_compcat(io::compcat_to_json(z));
  CHECK(zback.full);
  CHECK(zback.types->dobject_index("X") >= 0);
  CHECK(zback.arrow.disp->dobj(zback.chi.dobj(zback.types->dobject_index("X"))).name ==
        "id_x");

  // A base without all the required pullbacks cannot carry its self-indexing.
  ArrowDisp av = arrow_displayed(vshape());
  io::json bad;
  bad["types"] = io::displayed_to_json(*av.disp);
  io::json dob = io::json::object(), dmo = io::json::object();
  for (int i = 0; i < av.disp->dobject_count(); ++i)
    dob[av.disp->dobj(i).name] = av.disp->dobj(i).name;
  for (int m = 0; m < av.disp->dmorphism_count(); ++m) {
    if (av.disp->is_didentity(m)) continue;
    dmo[av.disp->dmor(m).name] = av.disp->dmor(m).name;
  }
  bad["comprehension"] = {{"dobjects", dob}, {"dmorphisms", dmo}};
  CHECK(err_code([&] { io::load_compcat(bad); }) == "NoCartesianLift");

  CompCat k6 = self_indexing(div6());
  io::json j6 = io::compcat_to_json(k6);
  io::json no_comp = j6;
  no_comp.erase("comprehension");
  CHECK(err_code([&] { io::load_compcat(no_comp); }) == "BadFormat");
  io::json dangling = j6;
  dangling["comprehension"]["dobjects"]["id_6"] = "missing";
  CHECK(err_code([&] { io::load_compcat(dangling); }) == "DanglingEndpoint");
}
