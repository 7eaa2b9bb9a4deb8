#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "bridge.hpp"
#include "catlang/biequiv.hpp"
#include "catlang/ttlang.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace catlang;

namespace {

CatPtr two() { return bridge::from_poset(fixtures::two_poset()); }
CatPtr div6() { return bridge::from_poset(fixtures::div6_poset()); }
CatPtr m3() { return bridge::from_poset(fixtures::m3_poset()); }

std::string err_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code;
  }
  return "";
}

std::string err_what(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

CompCat with_chi(const CatPtr& b, const DispCat::Presentation& tp,
                 const std::vector<std::pair<std::string, std::string>>& chi_obj,
                 const std::vector<std::pair<std::string, std::string>>& chi_mor) {
  DispPtr types = DispCat::validate(tp);
  ArrowDisp a = arrow_displayed(b);
  std::vector<int> oo(types->dobject_count(), -1);
  for (const auto& [t, img] : chi_obj) oo[types->dobject_index(t)] = a.disp->dobject_index(img);
  std::vector<int> mm(types->dmorphism_count(), -1);
  for (const auto& [t, img] : chi_mor)
    mm[types->dmorphism_index(t)] = a.disp->dmorphism_index(img);
  DispFunctor chi = DispFunctor::validate(FinFunctor::identity(b), types, a.disp, oo, mm);
  return assemble_compcat(b, types, std::get<Cleaving>(find_cleaving(types)), chi);
}

fixtures::NeutralCat z2t_cat() {
  fixtures::NeutralCat n;
  n.name = "z2t";
  n.objects = {"x", "t"};
  n.morphisms = {{"s", "x", "x"}, {"bang", "x", "t"}};
  n.comps = {{"s", "s", "id_x"}, {"s", "bang", "bang"}};
  return n;
}

CompCat z2_compcat() {
  CatPtr b = bridge::lift(z2t_cat());
  DispCat::Presentation tp;
  tp.base = b;
  tp.dobjects = {{"X", "x"}, {"T", "t"}};
  tp.dmorphisms = {{"v", "s", "X", "X"}, {"u", "bang", "X", "T"}};
  tp.dcomposition = {{"v", "v", "did_X"}, {"v", "u", "u"}};
  return with_chi(b, tp, {{"X", "id_x"}, {"T", "id_t"}},
                  {{"v", "sq(s,id_x,id_x,s)"}, {"u", "sq(bang,id_x,id_t,bang)"}});
}

CompCat renamed_two_compcat() {
  CatPtr c2 = two();
  DispCat::Presentation tp;
  tp.base = c2;
  tp.dobjects = {{"A0", "0"}, {"A1", "1"}, {"P", "1"}};
  tp.dmorphisms = {{"vA", "id_1", "P", "A1"},
                   {"cart", "le_0_1", "A0", "A1"},
                   {"sub", "le_0_1", "A0", "P"}};
  tp.dcomposition = {{"sub", "vA", "cart"}};
  return with_chi(c2, tp, {{"A0", "id_0"}, {"A1", "id_1"}, {"P", "le_0_1"}},
                  {{"vA", "sq(le_0_1,le_0_1,id_1,id_1)"},
                   {"cart", "sq(le_0_1,id_0,id_1,le_0_1)"},
                   {"sub", "sq(id_0,id_0,le_0_1,le_0_1)"}});
}

std::vector<std::pair<std::string, std::string>> corpus() {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(__FILE__).parent_path().parent_path() / "fixtures" / "tt";
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".tt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : files) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back({p.filename().string(), ss.str()});
  }
  return out;
}

// Interpret every corpus file and assert the semantic invariants: all checks
// pass, inhabited identity types force equality, substitution comparisons
// invert, and sections of declared sums factor as pairs.
void run_corpus(const CompCat& k, const std::map<std::string, int>& atoms) {
  int sigma_entries = 0;
  for (const auto& [name, src] : corpus()) {
    INFO(name);
    std::vector<tt::Decl> decls = tt::parse(src);
    tt::Interpretation I = tt::interpret(decls, k, atoms);
    REQUIRE(!I.checks.empty());
    for (const tt::CheckResult& c : I.checks) {
      INFO("check at line " << c.line);
      CHECK(c.equal);
      CHECK(c.left == c.right);
      CHECK(c.eq_inhabited);
      CHECK((!c.eq_inhabited || c.equal));
    }
    auto subs = tt::substitution_comparisons(k, I, atoms);
    CHECK(subs.size() == I.type_order.size() + I.term_order.size());
    for (const tt::SubstComparison& s : subs) {
      INFO(s.name);
      CHECK(s.ok);
      CHECK(s.iso >= 0);
      CHECK(s.inverse >= 0);
    }
    for (const tt::SigmaEtaCheck& c : tt::sigma_eta_report(k, I)) {
      INFO(c.name);
      CHECK(c.ok);
      CHECK(c.sections >= 1);
      ++sigma_entries;
    }
    tt::Interpretation J = tt::interpret(decls, k, atoms);
    REQUIRE(J.checks.size() == I.checks.size());
    for (size_t i = 0; i < I.checks.size(); ++i) {
      CHECK(J.checks[i].left == I.checks[i].left);
      CHECK(J.checks[i].right == I.checks[i].right);
      CHECK(J.checks[i].eq_type == I.checks[i].eq_type);
    }
  }
  CHECK(sigma_entries >= 3);
}

}  // namespace

TEST_CASE("declarations parse with their shapes and positions") {
  std::string src =
      "-- a comment line\n"
      "ctx G := (x : Unit, p : Prod(Unit, A))\n"
      "type T in G := Sigma (y : Unit) Eq(y, x)\n"
      "term t : Unit in G := fst p\n"
      "check t == x : Unit in G\n";
  std::vector<tt::Decl> ds = tt::parse(src);
  REQUIRE(ds.size() == 4);

  CHECK(ds[0].kind == tt::DeclKind::Ctx);
  CHECK(ds[0].name == "G");
  CHECK(ds[0].line == 2);
  REQUIRE(ds[0].entries.size() == 2);
  CHECK(ds[0].entries[0].var == "x");
  CHECK(ds[0].entries[0].type->kind == tt::TypeKind::Unit);
  CHECK(ds[0].entries[1].var == "p");
  REQUIRE(ds[0].entries[1].type->kind == tt::TypeKind::Prod);
  CHECK(ds[0].entries[1].type->right->kind == tt::TypeKind::Atom);
  CHECK(ds[0].entries[1].type->right->name == "A");

  CHECK(ds[1].kind == tt::DeclKind::Type);
  CHECK(ds[1].name == "T");
  CHECK(ds[1].ctx == "G");
  REQUIRE(ds[1].type->kind == tt::TypeKind::Sigma);
  CHECK(ds[1].type->name == "y");
  CHECK(ds[1].type->left->kind == tt::TypeKind::Unit);
  REQUIRE(ds[1].type->right->kind == tt::TypeKind::Eq);
  CHECK(ds[1].type->right->lhs->kind == tt::TermKind::Var);
  CHECK(ds[1].type->right->lhs->name == "y");
  CHECK(ds[1].type->right->rhs->name == "x");

  CHECK(ds[2].kind == tt::DeclKind::Term);
  CHECK(ds[2].name == "t");
  REQUIRE(ds[2].term->kind == tt::TermKind::Fst);
  CHECK(ds[2].term->left->kind == tt::TermKind::Var);
  CHECK(ds[2].term->left->name == "p");
  CHECK(ds[2].line == 4);

  CHECK(ds[3].kind == tt::DeclKind::Check);
  CHECK(ds[3].term->name == "t");
  CHECK(ds[3].rhs->name == "x");
  CHECK(ds[3].type->kind == tt::TypeKind::Unit);
  CHECK(ds[3].ctx == "G");
  CHECK(ds[3].line == 5);
}

TEST_CASE("syntax errors name the expected token and the position") {
  CHECK(err_code([] { tt::parse("ctx G := ?"); }) == "SyntaxError");
  CHECK(err_what([] { tt::parse("ctx G := ?"); }) ==
        "SyntaxError: line 1, column 10: unexpected character '?'");
  CHECK(err_what([] { tt::parse("ctx G := (x : Unit)\ntype T in G Unit"); }) ==
        "SyntaxError: line 2, column 13: expected ':=', found 'Unit'");
  CHECK(err_what([] { tt::parse("ctx Unit := ()"); }) ==
        "SyntaxError: line 1, column 5: 'Unit' is a reserved word");
  CHECK(err_what([] { tt::parse("ctx G := ()\nctx G := ()"); }) ==
        "SyntaxError: line 2: the name 'G' is already declared");
  CHECK(err_what([] { tt::parse("ctx G := () ctx H := ()"); }) ==
        "SyntaxError: line 1, column 13: expected a line break before the next declaration");
  CHECK(err_what([] { tt::parse("ctx G := ()\ncheck tt = tt : Unit in G"); }) ==
        "SyntaxError: line 2, column 10: expected '==', found '='");
  CHECK(err_what([] { tt::parse("ctx G := (x : Unit"); }) ==
        "SyntaxError: line 1, column 19: expected ')', found end of input");
  CHECK(err_what([] { tt::parse("ctx G := ()\nterm t : Unit in G := lam lam x"); }) ==
        "SyntaxError: line 2, column 27: expected a term, found 'lam'");
}

TEST_CASE("scope errors are reported at parse time") {
  CHECK(err_code([] { tt::parse("ctx G := ()\nterm t : Unit in G := y"); }) == "UnboundVariable");
  CHECK(err_what([] { tt::parse("ctx G := ()\nterm t : Unit in G := y"); }) ==
        "UnboundVariable: line 2, column 23: 'y' is not in scope");
  CHECK(err_what([] { tt::parse("ctx G := ()\ntype T in H := Unit"); }) ==
        "UnboundVariable: line 2, column 11: context 'H' is not declared");
  CHECK(err_code([] { tt::parse("ctx G := ()\ntype T in G := Eq(y, y)"); }) == "UnboundVariable");
  CHECK_NOTHROW(tt::parse("ctx G := ()\ntype T in G := Sigma (y : Unit) Eq(y, y)"));
  CHECK(err_code([] {
          tt::parse("ctx G := ()\ntype T in G := Prod(Sigma (y : Unit) Unit, Eq(y, y))");
        }) == "UnboundVariable");
  CHECK(err_code([] {
          tt::parse("ctx G := ()\nctx H := ()\nterm t : Unit in G := tt\n"
                    "term s : Unit in H := t");
        }) == "UnboundVariable");
  CHECK_NOTHROW(tt::parse("ctx G := ()\nterm t : Unit in G := tt\nterm s : Unit in G := t"));
}

TEST_CASE("the judgment corpus denotes in the self-indexing of div6") {
  CompCat k = h_object(make_finlim(div6()));
  run_corpus(k, {{"A", k.types->dobject_index("le_2_6")}});
}

TEST_CASE("the judgment corpus denotes in the self-indexing of the interval") {
  CompCat k = h_object(make_finlim(two()));
  run_corpus(k, {{"A", k.types->dobject_index("le_0_1")}});
}

TEST_CASE("the renamed comprehension interprets the corpus") {
  CompCat k = renamed_two_compcat();
  run_corpus(k, {{"A", k.types->dobject_index("P")}});
}

TEST_CASE("models without dependent structure are rejected") {
  CompCat k = z2_compcat();
  std::vector<tt::Decl> ds = tt::parse("ctx E := ()\ncheck tt == tt : Unit in E");
  CHECK(err_code([&] { tt::interpret(ds, k, {}); }) == "DFLCheckFailed");
  tt::Interpretation empty;
  CHECK(err_code([&] { tt::substitution_comparisons(k, empty, {}); }) == "DFLCheckFailed");
}

TEST_CASE("dependent products are reported unavailable without right adjoints") {
  CompCat k = h_object(make_finlim(m3()));
  std::vector<tt::Decl> no_pi = tt::parse("ctx E := ()\ncheck tt == tt : Unit in E");
  tt::Interpretation I = tt::interpret(no_pi, k, {});
  CHECK(I.all_equal());

  std::vector<tt::Decl> with_pi =
      tt::parse("ctx E := ()\nterm f : Pi (x : Unit) Unit in E := lam x");
  CHECK(err_code([&] { tt::interpret(with_pi, k, {}); }) == "FormerUnavailable");
  std::string what = err_what([&] { tt::interpret(with_pi, k, {}); });
  CHECK(what.find("dependent products are unavailable in this model") != std::string::npos);
}

TEST_CASE("ill-typed terms fail with the violated rule") {
  CompCat k = h_object(make_finlim(div6()));
  std::map<std::string, int> atoms = {{"A", k.types->dobject_index("le_2_6")},
                                      {"B", k.types->dobject_index("le_1_2")}};
  auto run = [&](const std::string& src) { tt::interpret(tt::parse(src), k, atoms); };

  CHECK(err_code([&] { run("ctx E := ()\nterm t : A in E := tt"); }) == "TypeMismatch");
  CHECK(err_what([&] { run("ctx E := ()\nterm t : A in E := tt"); }) ==
        "TypeMismatch: line 2: tt is a section of the unit type, not of le_2_6");
  CHECK(err_what([&] { run("ctx G := (a : A)\ncheck fst a == a : A in G"); }) ==
        "TypeMismatch: line 2: 'a' does not have a pair type here");
  CHECK(err_what([&] { run("ctx E := ()\nterm f : Unit in E := lam tt"); }) ==
        "TypeMismatch: line 2: a lambda checks only at a dependent product type, not at id_6");
  CHECK(err_what([&] { run("ctx E := ()\ncheck app tt tt == tt : Unit in E"); }) ==
        "TypeMismatch: line 2: tt does not have a dependent product type here");
  CHECK(err_what([&] { run("ctx E := ()\nterm r : Unit in E := refl tt"); }) ==
        "TypeMismatch: line 2: refl checks only at an identity type, not at id_6");
  CHECK(err_what([&] { run("ctx E := ()\ntype T in E := B"); }) ==
        "TypeMismatch: line 2: the atomic type B lives over 2, which is not a stage of this "
        "context");
  CHECK(err_what([&] { run("ctx E := ()\ntype T in E := C"); }) ==
        "FormerUnavailable: line 2: the atomic type C has no interpretation in this model");
  CHECK(err_code([&] { run("ctx G := (x : Unit)\nterm t : A in G := x"); }) == "TypeMismatch");
}

TEST_CASE("equality is decided by comparing denoted sections") {
  CompCat k = h_object(make_finlim(div6()));
  CHECK(err_code([&] { tt::check_equal(k, {0, 0, 1}, {1, 0, 1}); }) == "TypeMismatch");
  CHECK(err_code([&] { tt::check_equal(k, {0, 0, 1}, {0, 1, 1}); }) == "TypeMismatch");
  CHECK(tt::check_equal(k, {0, 0, 3}, {0, 0, 3}));
  CHECK_FALSE(tt::check_equal(k, {0, 0, 3}, {0, 0, 5}));
}

TEST_CASE("atoms weaken along the chain of context stages") {
  CompCat k = h_object(make_finlim(div6()));
  std::map<std::string, int> atoms = {{"A", k.types->dobject_index("le_2_6")}};
  std::string src =
      "ctx G := (a : A, u : Unit, b : A)\n"
      "type W in G := A\n";
  tt::Interpretation I = tt::interpret(tt::parse(src), k, atoms);
  const tt::SemCtx& sc = I.contexts.at("G");
  CHECK(k.base->object(sc.obj) == "2");
  REQUIRE(sc.prefix_objs.size() == 4);
  CHECK(k.base->object(sc.prefix_objs[0]) == "6");
  CHECK(k.base->object(sc.prefix_objs[1]) == "2");
  CHECK(k.base->object(sc.prefix_objs[2]) == "2");
  CHECK(k.base->object(sc.prefix_objs[3]) == "2");
  REQUIRE(sc.stage_projs.size() == 3);
  CHECK(k.base->mor_name(sc.stage_projs[0]) == "le_2_6");
  for (const Term& t : sc.sections) CHECK(is_term(k, t));
  CHECK(k.types->dobj(sc.sections[0].type).name == "id_2");
  CHECK(k.types->dobj(I.types.at("W").dobj).name == "id_2");

  CompCat k2 = h_object(make_finlim(two()));
  tt::Interpretation I2 = tt::interpret(tt::parse("ctx G := (a : A)\n"), k2,
                                        {{"A", k2.types->dobject_index("le_0_1")}});
  CHECK(k2.base->object(I2.contexts.at("G").obj) == "0");
}
