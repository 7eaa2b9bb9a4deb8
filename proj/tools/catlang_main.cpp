// catlang: batch front end for the workbench. One subcommand per
// construction; JSON reports with --json, human summaries otherwise.
// Exit codes: 0 pass, 1 check failed with counterexample, 2 input invalid,
// 3 inconclusive at the configured search bound.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catlang/biequiv.hpp"
#include "catlang/compcat.hpp"
#include "catlang/displayed.hpp"
#include "catlang/fincat.hpp"
#include "catlang/io.hpp"
#include "catlang/localprops.hpp"
#include "catlang/ttlang.hpp"
#include "catlang/typeformers.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace catlang;

constexpr int kPass = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;
constexpr int kInconclusive = 3;

struct Options {
  bool json_out = false;
  std::string emit_report;
  long bound = kDefaultSearchBound;
  bool bound_set = false;
};

// Schema and reference errors; everything else a handler throws is a failed
// mathematical check and exits 1.
bool input_error(const std::string& code) {
  static const std::set<std::string> codes = {
      "FileNotFound",    "ParseError",    "BadFormat",       "DanglingEndpoint",
      "DuplicateName",   "UnknownObject", "UnknownMorphism", "UnknownProperty",
      "UnknownType",     "SyntaxError",   "UnboundVariable"};
  return codes.count(code) > 0;
}

int finish(const Options& o, const json& rep, const std::vector<std::string>& human,
           int code) {
  if (!o.emit_report.empty()) {
    std::ofstream out(o.emit_report);
    if (!out) fail("FileNotFound", "cannot write " + o.emit_report);
    out << rep.dump(2) << "\n";
  }
  if (o.json_out) {
    std::cout << rep.dump(2) << "\n";
  } else {
    for (const std::string& line : human) std::cout << line << "\n";
  }
  return code;
}

std::string dir_of(const std::string& path) {
  return std::filesystem::path(path).parent_path().string();
}

// A model is either a category file (classified via its self-indexing) or a
// comprehension category bundle, recognized by its "types" member.
CompCat load_model(const std::string& path) {
  json j = io::load_json_file(path);
  if (j.is_object() && j.contains("types")) return io::load_compcat(j, dir_of(path));
  return h_object(make_finlim(io::load_category(j)));
}

SearchBounds adjoint_bounds(const Options& o) {
  if (!o.bound_set) return {};
  long n = std::min(o.bound, 1000000L);
  return {static_cast<int>(n), static_cast<int>(std::min(5 * n, 1000000L))};
}

const char* verdict_status(const Verdict& v) {
  switch (v.status) {
    case VerdictStatus::Verified: return "verified";
    case VerdictStatus::Counterexample: return "counterexample";
    default: return "inconclusive";
  }
}

json verdict_to_json(const Verdict& v) {
  json j;
  j["status"] = verdict_status(v);
  j["witness"] = v.witness;
  if (v.status == VerdictStatus::InconclusiveAtBound) j["bound"] = v.bound;
  return j;
}

json functor_maps(const FinFunctor& f) {
  const FinCat& c = *f.source();
  const FinCat& d = *f.target();
  json objs = json::object(), mors = json::object();
  for (int x = 0; x < c.object_count(); ++x) objs[c.object(x)] = d.object(f.obj(x));
  for (int m = 0; m < c.morphism_count(); ++m) mors[c.mor_name(m)] = d.mor_name(f.mor(m));
  return json{{"object_map", std::move(objs)}, {"morphism_map", std::move(mors)}};
}

json nat_components(const NatTrans& t) {
  const FinCat& c = *t.source_functor().source();
  const FinCat& d = *t.source_functor().target();
  json comps = json::object();
  for (int x = 0; x < c.object_count(); ++x) comps[c.object(x)] = d.mor_name(t.component(x));
  return comps;
}

// ---------------------------------------------------------------------------
// cat
// ---------------------------------------------------------------------------

int cmd_cat_validate(const Options& o, const std::string& path) {
  CatPtr cp = io::load_category_file(path);
  const FinCat& c = *cp;
  json rep;
  rep["command"] = "cat validate";
  rep["input"] = path;
  rep["objects"] = c.object_count();
  rep["morphisms"] = c.morphism_count();
  rep["posetal"] = c.is_posetal();
  rep["gaunt"] = c.is_gaunt_cat();
  rep["pass"] = true;
  std::vector<std::string> human = {
      "valid category: " + std::to_string(c.object_count()) + " objects, " +
          std::to_string(c.morphism_count()) + " morphisms",
      std::string("posetal: ") + (c.is_posetal() ? "yes" : "no"),
  };
  return finish(o, rep, human, kPass);
}

int cmd_cat_limits(const Options& o, const std::string& path) {
  CatPtr cp = io::load_category_file(path);
  const FinCat& c = *cp;
  int n = c.object_count();
  json rep;
  rep["command"] = "cat limits";
  rep["input"] = path;
  std::string first_missing;
  auto note = [&](const std::string& what) {
    if (first_missing.empty()) first_missing = what;
  };

  auto apex_of = [&](const Diagram& d) -> json {
    auto w = find_universal(c, d);
    if (!w) return nullptr;
    return c.object(w->apex);
  };

  json t = apex_of(Diagram::terminal());
  json i = apex_of(Diagram::initial());
  if (t.is_null()) note("no terminal object");
  rep["terminal"] = t;
  rep["initial"] = i;

  json products = json::array(), coproducts = json::array();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      json p = apex_of(Diagram::product(a, b));
      if (p.is_null()) note("no product of " + c.object(a) + " and " + c.object(b));
      products.push_back(json{{"left", c.object(a)}, {"right", c.object(b)}, {"apex", p}});
      coproducts.push_back(json{
          {"left", c.object(a)}, {"right", c.object(b)}, {"apex", apex_of(Diagram::coproduct(a, b))}});
    }
  rep["products"] = std::move(products);
  rep["coproducts"] = std::move(coproducts);

  json eqs = json::array(), coeqs = json::array();
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = f + 1; g < c.morphism_count(); ++g) {
      if (c.src(f) != c.src(g) || c.dst(f) != c.dst(g)) continue;
      json e = apex_of(Diagram::equalizer(f, g));
      if (e.is_null()) note("no equalizer of " + c.mor_name(f) + " and " + c.mor_name(g));
      eqs.push_back(json{{"f", c.mor_name(f)}, {"g", c.mor_name(g)}, {"apex", e}});
      coeqs.push_back(json{
          {"f", c.mor_name(f)}, {"g", c.mor_name(g)}, {"apex", apex_of(Diagram::coequalizer(f, g))}});
    }
  rep["equalizers"] = std::move(eqs);
  rep["coequalizers"] = std::move(coeqs);

  json pbs = json::array();
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = f; g < c.morphism_count(); ++g) {
      if (c.dst(f) != c.dst(g)) continue;
      json p = apex_of(Diagram::pullback(f, g));
      if (p.is_null()) note("no pullback of " + c.mor_name(f) + " and " + c.mor_name(g));
      pbs.push_back(json{{"f", c.mor_name(f)}, {"g", c.mor_name(g)}, {"apex", p}});
    }
  rep["pullbacks"] = std::move(pbs);

  bool pass = first_missing.empty();
  rep["finite_limits"] = pass;
  rep["pass"] = pass;
  if (!pass) rep["witness"] = first_missing;
  std::vector<std::string> human;
  if (pass)
    human = {"all finite limits exist, terminal " + t.get<std::string>()};
  else
    human = {"missing finite limit: " + first_missing};
  return finish(o, rep, human, pass ? kPass : kCheckFailed);
}

int cmd_cat_slice(const Options& o, const std::string& path, const std::string& obj) {
  CatPtr cp = io::load_category_file(path);
  int x = cp->object_index(obj);
  if (x < 0) fail("UnknownObject", obj);
  Slice s = slice_category(cp, x);
  json rep;
  rep["command"] = "cat slice";
  rep["input"] = path;
  rep["base_object"] = obj;
  json objs = json::array();
  for (size_t i = 0; i < s.obj_to_mor.size(); ++i)
    objs.push_back(json{{"object", s.cat->object(static_cast<int>(i))},
                        {"arrow", cp->mor_name(s.obj_to_mor[i])}});
  rep["objects"] = std::move(objs);
  rep["category"] = io::category_to_json(*s.cat);
  rep["pass"] = true;
  std::vector<std::string> human = {
      "slice over " + obj + ": " + std::to_string(s.cat->object_count()) + " objects, " +
      std::to_string(s.cat->morphism_count()) + " morphisms"};
  return finish(o, rep, human, kPass);
}

int cmd_cat_gaunt(const Options& o, const std::string& path) {
  CatPtr cp = io::load_category_file(path);
  GauntReport g = is_gaunt(*cp);
  json rep;
  rep["command"] = "cat gaunt";
  rep["input"] = path;
  rep["gaunt"] = g.gaunt;
  rep["witness"] = g.gaunt ? json(nullptr) : json(cp->mor_name(g.witness));
  rep["pass"] = g.gaunt;
  std::vector<std::string> human;
  if (g.gaunt)
    human = {"gaunt: every isomorphism is an identity"};
  else
    human = {"not gaunt: " + cp->mor_name(g.witness) + " is a non-identity isomorphism"};
  return finish(o, rep, human, g.gaunt ? kPass : kCheckFailed);
}

// ---------------------------------------------------------------------------
// functor
// ---------------------------------------------------------------------------

int cmd_functor_check(const Options& o, const std::string& path) {
  FinFunctor f = io::load_functor_file(path);
  json rep;
  rep["command"] = "functor check";
  rep["input"] = path;
  rep["source_objects"] = f.source()->object_count();
  rep["target_objects"] = f.target()->object_count();
  rep.update(functor_maps(f));
  rep["pass"] = true;
  std::vector<std::string> human = {
      "functorial: preserves identities and composition on " +
      std::to_string(f.source()->morphism_count()) + " morphisms"};
  return finish(o, rep, human, kPass);
}

int cmd_functor_adjoint(const Options& o, const std::string& path, const std::string& side) {
  FinFunctor f = io::load_functor_file(path);
  AdjointSide s = side == "right" ? AdjointSide::Right : AdjointSide::Left;
  AdjointResult r = find_adjoint(f, s, adjoint_bounds(o));
  json rep;
  rep["command"] = "functor adjoint";
  rep["input"] = path;
  rep["side"] = side;
  if (const auto* bound = std::get_if<SearchBoundExceeded>(&r)) {
    rep["pass"] = false;
    rep["inconclusive"] = true;
    rep["witness"] = "search bound exceeded: " + bound->what;
    return finish(o, rep, {"inconclusive: search bound exceeded, " + bound->what},
                  kInconclusive);
  }
  if (const auto* nf = std::get_if<AdjointNotFound>(&r)) {
    rep["pass"] = false;
    rep["witness"] = "no universal arrow at " + nf->at;
    return finish(o, rep, {"no " + side + " adjoint: no universal arrow at " + nf->at},
                  kCheckFailed);
  }
  const Adjunction& adj = std::get<Adjunction>(r);
  const FinFunctor& found = s == AdjointSide::Left ? adj.left : adj.right;
  rep["adjoint"] = functor_maps(found);
  rep["unit"] = nat_components(adj.unit);
  rep["counit"] = nat_components(adj.counit);
  rep["pass"] = true;
  return finish(o, rep, {side + " adjoint found, triangle identities verified"}, kPass);
}

int cmd_functor_equiv(const Options& o, const std::string& path) {
  FinFunctor f = io::load_functor_file(path);
  EquivalenceResult r = check_equivalence(f);
  json rep;
  rep["command"] = "functor equiv";
  rep["input"] = path;
  if (const auto* ne = std::get_if<NotEquivalence>(&r)) {
    rep["pass"] = false;
    rep["witness"] = ne->reason;
    return finish(o, rep, {"not an equivalence: " + ne->reason}, kCheckFailed);
  }
  const EquivalenceWitness& w = std::get<EquivalenceWitness>(r);
  rep["quasi_inverse"] = functor_maps(w.quasi_inverse);
  rep["unit"] = nat_components(w.unit);
  rep["counit"] = nat_components(w.counit);
  rep["pass"] = true;
  return finish(o, rep, {"equivalence: quasi-inverse and invertible unit/counit found"},
                kPass);
}

// ---------------------------------------------------------------------------
// disp
// ---------------------------------------------------------------------------

int cmd_disp_arrow(const Options& o, const std::string& path) {
  CatPtr cp = io::load_category_file(path);
  ArrowDisp a = arrow_displayed(cp);
  json rep;
  rep["command"] = "disp arrow";
  rep["input"] = path;
  rep["displayed"] = io::displayed_to_json(*a.disp);
  rep["pass"] = true;
  std::vector<std::string> human = {
      "arrow displayed category: " + std::to_string(a.disp->dobject_count()) +
      " displayed objects, " + std::to_string(a.disp->dmorphism_count()) +
      " displayed morphisms"};
  return finish(o, rep, human, kPass);
}

int cmd_disp_cleaving(const Options& o, const std::string& path) {
  DispPtr dp = io::load_displayed_file(path);
  const DispCat& d = *dp;
  const FinCat& b = *d.base();
  CleavingResult r = find_cleaving(dp);
  json rep;
  rep["command"] = "disp cleaving";
  rep["input"] = path;
  if (const auto* miss = std::get_if<CleavingMissing>(&r)) {
    std::string w = "no Cartesian lift of " + d.dobj(miss->ybar).name + " along " +
                    b.mor_name(miss->f);
    rep["pass"] = false;
    rep["witness"] = w;
    return finish(o, rep, {"not a fibration: " + w}, kCheckFailed);
  }
  const Cleaving& cl = std::get<Cleaving>(r);
  json lifts = json::array();
  for (int f = 0; f < b.morphism_count(); ++f)
    for (int ybar = 0; ybar < d.dobject_count(); ++ybar) {
      if (d.dobj(ybar).over != b.dst(f)) continue;
      lifts.push_back(json{{"morphism", b.mor_name(f)},
                           {"over", d.dobj(ybar).name},
                           {"source", d.dobj(cl.lift_src(f, ybar)).name},
                           {"lift", d.dmor(cl.lift_mor(f, ybar)).name}});
    }
  rep["lifts"] = std::move(lifts);
  rep["pass"] = true;
  std::vector<std::string> human = {
      "cleaving found: a Cartesian lift for each of " + std::to_string(rep["lifts"].size()) +
      " (morphism, displayed object) pairs"};
  return finish(o, rep, human, kPass);
}

int cmd_disp_fiber(const Options& o, const std::string& path, const std::string& obj) {
  DispPtr dp = io::load_displayed_file(path);
  int x = dp->base()->object_index(obj);
  if (x < 0) fail("UnknownObject", obj);
  Fiber fib = fiber_category(dp, x);
  json rep;
  rep["command"] = "disp fiber";
  rep["input"] = path;
  rep["base_object"] = obj;
  json dobjs = json::array();
  for (int d : fib.obj_to_dobj) dobjs.push_back(dp->dobj(d).name);
  rep["dobjects"] = std::move(dobjs);
  rep["category"] = io::category_to_json(*fib.cat);
  rep["pass"] = true;
  std::vector<std::string> human = {
      "fiber over " + obj + ": " + std::to_string(fib.cat->object_count()) + " objects, " +
      std::to_string(fib.cat->morphism_count()) + " morphisms"};
  return finish(o, rep, human, kPass);
}

// ---------------------------------------------------------------------------
// compcat
// ---------------------------------------------------------------------------

int cmd_compcat_assemble(const Options& o, const std::string& path) {
  CompCat k = load_model(path);
  json rep;
  rep["command"] = "compcat assemble";
  rep["input"] = path;
  rep["contexts"] = k.base->object_count();
  rep["types"] = k.types->dobject_count();
  rep["full"] = k.full;
  rep["compcat"] = io::compcat_to_json(k);
  rep["pass"] = true;
  std::vector<std::string> human = {
      "comprehension category assembled: " + std::to_string(k.base->object_count()) +
      " contexts, " + std::to_string(k.types->dobject_count()) + " types"};
  return finish(o, rep, human, kPass);
}

int cmd_compcat_dfl(const Options& o, const std::string& path) {
  CompCat k = load_model(path);
  DFLReport r = check_dfl(k);
  json rep;
  rep["command"] = "compcat dfl";
  rep["input"] = path;
  rep["report"] = io::dfl_report_to_json(k, r);
  rep["pass"] = r.pass;
  std::vector<std::string> human;
  if (r.pass)
    human = {"full democratic comprehension category with units, products, equalizers "
             "and strong sums"};
  else
    human = {"structure missing, " + r.failure};
  return finish(o, rep, human, r.pass ? kPass : kCheckFailed);
}

int cmd_compcat_eso(const Options& o, const std::string& path, const std::string& mor) {
  CompCat k = load_model(path);
  const FinCat& c = *k.base;
  int s = c.mor_index(mor);
  if (s < 0) fail("UnknownMorphism", mor);
  EssentialPreimage ep = essential_preimage(k, s);
  int ext = ctx_extension(k, ep.type);
  int proj = ctx_projection(k, ep.type);
  bool tri_to = c.compose(ep.to, s) == proj;
  bool tri_from = c.compose(ep.from, proj) == s;
  bool inv1 = c.compose(ep.to, ep.from) == c.identity(ext);
  bool inv2 = c.compose(ep.from, ep.to) == c.identity(c.src(s));
  bool pass = tri_to && tri_from && inv1 && inv2;
  json rep;
  rep["command"] = "compcat eso";
  rep["input"] = path;
  rep["morphism"] = mor;
  rep["type"] = k.types->dobj(ep.type).name;
  rep["extension"] = c.object(ext);
  rep["to"] = c.mor_name(ep.to);
  rep["from"] = c.mor_name(ep.from);
  rep["slice_triangles"] = tri_to && tri_from;
  rep["invertible"] = inv1 && inv2;
  rep["pass"] = pass;
  std::vector<std::string> human;
  if (pass)
    human = {mor + " is the projection of type " + k.types->dobj(ep.type).name +
             " up to slice isomorphism"};
  else
    human = {"essential preimage of " + mor + " failed to verify"};
  return finish(o, rep, human, pass ? kPass : kCheckFailed);
}

// ---------------------------------------------------------------------------
// biequiv
// ---------------------------------------------------------------------------

int cmd_biequiv_h(const Options& o, const std::string& path) {
  CatPtr cp = io::load_category_file(path);
  CompCat k = h_object(make_finlim(cp));
  DFLReport r = check_dfl(k);
  json rep;
  rep["command"] = "biequiv h";
  rep["input"] = path;
  rep["compcat"] = io::compcat_to_json(k);
  rep["dfl"] = r.pass;
  rep["pass"] = r.pass;
  std::vector<std::string> human = {
      "self-indexing built: " + std::to_string(k.types->dobject_count()) + " types over " +
      std::to_string(k.base->object_count()) + " contexts, dfl " +
      (r.pass ? "verified" : ("failed, " + r.failure))};
  return finish(o, rep, human, r.pass ? kPass : kCheckFailed);
}

int cmd_biequiv_u(const Options& o, const std::string& path) {
  CompCat k = load_model(path);
  FinLimCat u = u_object(k);
  const FinCat& c = *u.cat;
  json rep;
  rep["command"] = "biequiv u";
  rep["input"] = path;
  rep["category"] = io::category_to_json(c);
  rep["terminal"] = c.object(u.terminal.apex);
  json prods = json::array();
  for (int a = 0; a < c.object_count(); ++a)
    for (int b = 0; b < c.object_count(); ++b)
      prods.push_back(json{{"left", c.object(a)},
                           {"right", c.object(b)},
                           {"apex", c.object(u.product(a, b).apex)}});
  rep["products"] = std::move(prods);
  rep["pass"] = true;
  std::vector<std::string> human = {
      "finite-limit category recovered: " + std::to_string(c.object_count()) + " objects"};
  return finish(o, rep, human, kPass);
}

int cmd_biequiv_zeta(const Options& o, const std::string& path) {
  CompCat k = load_model(path);
  ZetaComponent z = zeta_component(k);
  bool adj = is_adjequiv_1cell(k, z.target, z.mor);
  json rep;
  rep["command"] = "biequiv zeta";
  rep["input"] = path;
  json types = json::object();
  for (int i = 0; i < k.types->dobject_count(); ++i)
    types[k.types->dobj(i).name] = z.target.types->dobj(z.mor.on_types.dobj(i)).name;
  rep["on_types"] = std::move(types);
  rep["equivalence"] = adj;
  rep["pass"] = adj;
  std::vector<std::string> human;
  if (adj)
    human = {"comparison with the self-indexing of the recovered base is an adjoint "
             "equivalence"};
  else
    human = {"comparison is not an adjoint equivalence"};
  return finish(o, rep, human, adj ? kPass : kCheckFailed);
}

int cmd_biequiv_roundtrip(const Options& o, const std::string& path) {
  json j = io::load_json_file(path);
  RoundtripReport r;
  if (j.is_object() && j.contains("types"))
    r = roundtrip_compcat(io::load_compcat(j, dir_of(path)));
  else
    r = roundtrip_finlim(make_finlim(io::load_category(j)));
  json rep;
  rep["command"] = "biequiv roundtrip";
  rep["input"] = path;
  rep["direction"] = r.direction;
  rep["equivalence"] = r.equivalence;
  rep["witnesses_ok"] = r.witnesses_ok;
  rep["identities_strict"] = r.identities_strict;
  rep["composites_strict"] = r.composites_strict;
  rep["pass"] = r.pass;
  std::vector<std::string> human = {
      std::string("roundtrip ") + r.direction + ": " + (r.pass ? "pass" : "FAIL")};
  return finish(o, rep, human, r.pass ? kPass : kCheckFailed);
}

// ---------------------------------------------------------------------------
// classify and prop
// ---------------------------------------------------------------------------

int cmd_classify(const Options& o, const std::string& path) {
  CatPtr cp = io::load_category_file(path);
  ClassReport r = classify(make_finlim(cp), o.bound);
  json rep;
  rep["command"] = "classify";
  rep["input"] = path;
  json entries = json::array();
  bool inconclusive = false;
  std::vector<std::string> human;
  for (const ClassEntry& e : r.entries) {
    json je;
    je["class"] = e.cls;
    je["signature"] = e.signature;
    je.update(verdict_to_json(e.verdict));
    entries.push_back(std::move(je));
    std::string mark = "?";
    if (e.verdict.verified()) mark = "ok";
    if (e.verdict.refuted()) mark = "no";
    if (e.verdict.status == VerdictStatus::InconclusiveAtBound) inconclusive = true;
    std::string line = e.cls + ": " + mark;
    if (e.verdict.refuted()) line += " (" + e.verdict.witness + ")";
    human.push_back(line);
  }
  rep["entries"] = std::move(entries);
  rep["achieved"] = r.achieved;
  rep["signature"] = r.signature;
  human.push_back("achieved: " + (r.achieved.empty() ? std::string("none") : r.achieved));
  human.push_back("signature: " + r.signature);
  bool finlim_ok = r.entries.front().verdict.verified();
  rep["pass"] = finlim_ok && !inconclusive;
  int code = kPass;
  if (inconclusive) code = kInconclusive;
  else if (!finlim_ok) code = kCheckFailed;
  return finish(o, rep, human, code);
}

int exit_for(const Verdict& v) {
  switch (v.status) {
    case VerdictStatus::Verified: return kPass;
    case VerdictStatus::Counterexample: return kCheckFailed;
    default: return kInconclusive;
  }
}

int cmd_prop_check(const Options& o, const std::string& prop, const std::string& path) {
  LocalProperty P = lookup(prop, o.bound);
  Verdict v = check_local_property(make_finlim(io::load_category_file(path)), P);
  json rep;
  rep["command"] = "prop check";
  rep["input"] = path;
  rep["property"] = P.id;
  rep.update(verdict_to_json(v));
  rep["pass"] = v.verified();
  std::vector<std::string> human = {P.name + ": " + verdict_status(v) +
                                    (v.witness.empty() ? "" : " (" + v.witness + ")")};
  return finish(o, rep, human, exit_for(v));
}

int cmd_prop_closure(const Options& o, const std::string& prop, const std::string& path) {
  LocalProperty P = lookup(prop, o.bound);
  ClosureReport r = check_property_closure(P, make_finlim(io::load_category_file(path)));
  json rep;
  rep["command"] = "prop closure";
  rep["input"] = path;
  rep["property"] = P.id;
  rep["base"] = verdict_to_json(r.base);
  json axioms = json::array();
  bool inconclusive = r.base.status == VerdictStatus::InconclusiveAtBound;
  std::string witness;
  for (const ClosureAxiom& a : r.axioms) {
    json ja;
    ja["axiom"] = a.axiom;
    ja.update(verdict_to_json(a.verdict));
    axioms.push_back(std::move(ja));
    if (a.verdict.status == VerdictStatus::InconclusiveAtBound) inconclusive = true;
    if (!a.verdict.verified() && witness.empty())
      witness = a.axiom + ": " + a.verdict.witness;
  }
  if (!r.base.verified() && witness.empty()) witness = "base: " + r.base.witness;
  rep["axioms"] = std::move(axioms);
  rep["pass"] = r.pass;
  if (!r.pass) rep["witness"] = witness;
  std::vector<std::string> human;
  if (r.pass)
    human = {P.name + ": base verified and " + std::to_string(r.axioms.size()) +
             " closure instances verified"};
  else
    human = {P.name + " closure: " + witness};
  int code = r.pass ? kPass : (inconclusive ? kInconclusive : kCheckFailed);
  return finish(o, rep, human, code);
}

int cmd_prop_fiberwise(const Options& o, const std::string& prop, const std::string& path) {
  LocalProperty P = lookup(prop, o.bound);
  CompCat k = load_model(path);
  const FinCat& c = *k.base;
  FiberPropertyReport r = compcat_satisfies(k, P);
  json rep;
  rep["command"] = "prop fiberwise";
  rep["input"] = path;
  rep["property"] = P.id;
  bool inconclusive = false;
  json fibers = json::array();
  for (size_t i = 0; i < r.fibers.size(); ++i) {
    json jf;
    jf["object"] = c.object(static_cast<int>(i));
    jf.update(verdict_to_json(r.fibers[i]));
    if (r.fibers[i].status == VerdictStatus::InconclusiveAtBound) inconclusive = true;
    fibers.push_back(std::move(jf));
  }
  json subs = json::array();
  for (size_t i = 0; i < r.substitutions.size(); ++i) {
    json js;
    js["morphism"] = c.mor_name(static_cast<int>(i));
    js.update(verdict_to_json(r.substitutions[i]));
    if (r.substitutions[i].status == VerdictStatus::InconclusiveAtBound) inconclusive = true;
    subs.push_back(std::move(js));
  }
  rep["fibers"] = std::move(fibers);
  rep["substitutions"] = std::move(subs);
  rep["pass"] = r.pass;
  if (!r.pass) rep["witness"] = r.detail;
  std::vector<std::string> human;
  if (r.pass)
    human = {P.name + ": all fibers satisfy it and all substitutions preserve it"};
  else
    human = {P.name + " fails fiberwise: " + r.detail};
  int code = r.pass ? kPass : (inconclusive ? kInconclusive : kCheckFailed);
  return finish(o, rep, human, code);
}

// ---------------------------------------------------------------------------
// tt
// ---------------------------------------------------------------------------

int cmd_tt_check(const Options& o, const std::string& model_path, const std::string& file,
                 const std::vector<std::string>& atom_specs) {
  CompCat k = load_model(model_path);
  std::map<std::string, int> atoms;
  for (const std::string& spec : atom_specs) {
    size_t eq = spec.find('=');
    if (eq == std::string::npos)
      fail("BadFormat", "--atom expects NAME=TYPE, got " + spec);
    std::string name = spec.substr(0, eq), type = spec.substr(eq + 1);
    int d = k.types->dobject_index(type);
    if (d < 0) fail("UnknownType", type + " is not a type of the model");
    atoms[name] = d;
  }
  std::ifstream in(file);
  if (!in) fail("FileNotFound", file);
  std::stringstream ss;
  ss << in.rdbuf();
  std::vector<tt::Decl> decls = tt::parse(ss.str());
  tt::Interpretation I = tt::interpret(decls, k, atoms);

  json rep;
  rep["command"] = "tt check";
  rep["model"] = model_path;
  rep["input"] = file;
  json ctxs = json::array();
  for (const std::string& n : I.context_order)
    ctxs.push_back(json{{"name", n}, {"object", k.base->object(I.contexts.at(n).obj)}});
  rep["contexts"] = std::move(ctxs);
  json types = json::array();
  for (const std::string& n : I.type_order)
    types.push_back(json{{"name", n},
                         {"context", I.types.at(n).ctx},
                         {"type", k.types->dobj(I.types.at(n).dobj).name}});
  rep["types"] = std::move(types);
  json terms = json::array();
  for (const std::string& n : I.term_order)
    terms.push_back(json{{"name", n},
                         {"context", I.terms.at(n).ctx},
                         {"type", k.types->dobj(I.terms.at(n).type_dobj).name},
                         {"section", k.base->mor_name(I.terms.at(n).term.section)}});
  rep["terms"] = std::move(terms);
  json checks = json::array();
  int failed_line = -1;
  for (const tt::CheckResult& cr : I.checks) {
    checks.push_back(json{{"line", cr.line},
                          {"context", cr.ctx},
                          {"equal", cr.equal},
                          {"identity_type_inhabited", cr.eq_inhabited}});
    if (!cr.equal && failed_line < 0) failed_line = cr.line;
  }
  rep["checks"] = std::move(checks);
  bool pass = I.all_equal();
  rep["pass"] = pass;
  std::vector<std::string> human = {
      std::to_string(I.context_order.size()) + " contexts, " +
      std::to_string(I.type_order.size()) + " types, " +
      std::to_string(I.term_order.size()) + " terms, " + std::to_string(I.checks.size()) +
      " checks"};
  if (pass)
    human.push_back("all checks hold");
  else
    human.push_back("check at line " + std::to_string(failed_line) + " failed");
  return finish(o, rep, human, pass ? kPass : kCheckFailed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite categorical-logic workbench"};
  app.require_subcommand(1);

  Options opts;
  app.add_flag("--json", opts.json_out, "machine-readable JSON report on stdout");
  app.add_option("--emit-report", opts.emit_report, "write the JSON report to a file");
  CLI::Option* bound_opt =
      app.add_option("--bound", opts.bound, "search budget for bounded checks")
          ->envname("CATLANG_BOUND");

  std::function<int()> action;
  std::string path, object, mor, side = "left", prop, model, ttfile;
  std::vector<std::string> atom_specs;

  auto group = [&](const std::string& name, const std::string& desc) {
    CLI::App* g = app.add_subcommand(name, desc);
    g->require_subcommand(1);
    g->fallthrough();
    return g;
  };
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  CLI::App* cat = group("cat", "finite categories");
  CLI::App* cv = leaf(cat, "validate", "check the category laws of a presentation");
  cv->add_option("file", path)->required();
  cv->callback([&] { action = [&] { return cmd_cat_validate(opts, path); }; });
  CLI::App* cl = leaf(cat, "limits", "search all finite limits and colimits");
  cl->add_option("file", path)->required();
  cl->callback([&] { action = [&] { return cmd_cat_limits(opts, path); }; });
  CLI::App* cs = leaf(cat, "slice", "build the slice category over an object");
  cs->add_option("file", path)->required();
  cs->add_option("object", object)->required();
  cs->callback([&] { action = [&] { return cmd_cat_slice(opts, path, object); }; });
  CLI::App* cg = leaf(cat, "gaunt", "check that every isomorphism is an identity");
  cg->add_option("file", path)->required();
  cg->callback([&] { action = [&] { return cmd_cat_gaunt(opts, path); }; });

  CLI::App* fun = group("functor", "functors between finite categories");
  CLI::App* fc = leaf(fun, "check", "check functoriality of a mapping");
  fc->add_option("file", path)->required();
  fc->callback([&] { action = [&] { return cmd_functor_check(opts, path); }; });
  CLI::App* fa = leaf(fun, "adjoint", "search for a left or right adjoint");
  fa->add_option("file", path)->required();
  fa->add_option("--side", side, "left or right")
      ->check(CLI::IsMember({"left", "right"}));
  fa->callback([&] { action = [&] { return cmd_functor_adjoint(opts, path, side); }; });
  CLI::App* fe = leaf(fun, "equiv", "check for an adjoint equivalence");
  fe->add_option("file", path)->required();
  fe->callback([&] { action = [&] { return cmd_functor_equiv(opts, path); }; });

  CLI::App* disp = group("disp", "displayed categories");
  CLI::App* da = leaf(disp, "arrow", "build the arrow displayed category of a category");
  da->add_option("file", path)->required();
  da->callback([&] { action = [&] { return cmd_disp_arrow(opts, path); }; });
  CLI::App* dc = leaf(disp, "cleaving", "find a cleaving of Cartesian lifts");
  dc->add_option("file", path)->required();
  dc->callback([&] { action = [&] { return cmd_disp_cleaving(opts, path); }; });
  CLI::App* df = leaf(disp, "fiber", "extract the fiber over a base object");
  df->add_option("file", path)->required();
  df->add_option("object", object)->required();
  df->callback([&] { action = [&] { return cmd_disp_fiber(opts, path, object); }; });

  CLI::App* cc = group("compcat", "comprehension categories");
  CLI::App* ca = leaf(cc, "assemble", "assemble and validate a comprehension category");
  ca->add_option("file", path)->required();
  ca->callback([&] { action = [&] { return cmd_compcat_assemble(opts, path); }; });
  CLI::App* cd = leaf(cc, "dfl", "check democratic full comprehension with type formers");
  cd->add_option("file", path)->required();
  cd->callback([&] { action = [&] { return cmd_compcat_dfl(opts, path); }; });
  CLI::App* ce = leaf(cc, "eso", "exhibit a context morphism as a type projection");
  ce->add_option("file", path)->required();
  ce->add_option("morphism", mor)->required();
  ce->callback([&] { action = [&] { return cmd_compcat_eso(opts, path, mor); }; });

  CLI::App* be = group("biequiv", "between finite-limit categories and models");
  CLI::App* bh = leaf(be, "h", "self-indexing of a finite-limit category");
  bh->add_option("file", path)->required();
  bh->callback([&] { action = [&] { return cmd_biequiv_h(opts, path); }; });
  CLI::App* bu = leaf(be, "u", "recover the finite-limit base of a model");
  bu->add_option("file", path)->required();
  bu->callback([&] { action = [&] { return cmd_biequiv_u(opts, path); }; });
  CLI::App* bz = leaf(be, "zeta", "compare a model with the self-indexing of its base");
  bz->add_option("file", path)->required();
  bz->callback([&] { action = [&] { return cmd_biequiv_zeta(opts, path); }; });
  CLI::App* br = leaf(be, "roundtrip", "check both composites of the correspondence");
  br->add_option("file", path)->required();
  br->callback([&] { action = [&] { return cmd_biequiv_roundtrip(opts, path); }; });

  CLI::App* cls = app.add_subcommand("classify", "place a category in the lattice of "
                                                 "internal-language classes");
  cls->fallthrough();
  cls->add_option("file", path)->required();
  cls->callback([&] { action = [&] { return cmd_classify(opts, path); }; });

  CLI::App* pr = group("prop", "local properties (strict_initial, stable_coproducts, "
                               "extensive, regular, exact, subobject_classifier, nno_param)");
  CLI::App* pc = leaf(pr, "check", "check a local property on a category");
  pc->add_option("property", prop)->required();
  pc->add_option("file", path)->required();
  pc->callback([&] { action = [&] { return cmd_prop_check(opts, prop, path); }; });
  CLI::App* pl = leaf(pr, "closure", "check the slice and pullback closure axioms");
  pl->add_option("property", prop)->required();
  pl->add_option("file", path)->required();
  pl->callback([&] { action = [&] { return cmd_prop_closure(opts, prop, path); }; });
  CLI::App* pf = leaf(pr, "fiberwise", "check a property on every fiber of a model");
  pf->add_option("property", prop)->required();
  pf->add_option("file", path)->required();
  pf->callback([&] { action = [&] { return cmd_prop_fiberwise(opts, prop, path); }; });

  CLI::App* tt = group("tt", "the small dependent type theory");
  CLI::App* tc = leaf(tt, "check", "interpret a declaration file in a model");
  tc->add_option("file", ttfile)->required();
  tc->add_option("--model", model, "category or comprehension category file")->required();
  tc->add_option("--atom", atom_specs, "NAME=TYPE atomic type assignment")
      ->allow_extra_args(false);
  tc->callback([&] { action = [&] { return cmd_tt_check(opts, model, ttfile, atom_specs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }
  opts.bound_set = bound_opt->count() > 0 || std::getenv("CATLANG_BOUND") != nullptr;

  if (!action) {
    std::cerr << app.help();
    return kBadInput;
  }
  try {
    return action();
  } catch (const Error& e) {
    json rep;
    rep["error"] = e.code;
    rep["detail"] = e.what();
    rep["pass"] = false;
    if (!opts.emit_report.empty()) {
      std::ofstream out(opts.emit_report);
      out << rep.dump(2) << "\n";
    }
    if (opts.json_out) std::cout << rep.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return input_error(e.code) ? kBadInput : kCheckFailed;
  }
}
