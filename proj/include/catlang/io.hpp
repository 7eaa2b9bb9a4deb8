#pragma once
// JSON serialization for categories and functors. Category files are either
// an explicit presentation (identities and identity composites implicit) or a
// poset shorthand whose reflexive-transitive closure is computed on load.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "compcat.hpp"
#include "displayed.hpp"
#include "fincat.hpp"
#include "typeformers.hpp"

namespace catlang::io {

using json = nlohmann::ordered_json;

inline json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("ParseError", "invalid JSON in " + what);
  return j;
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("FileNotFound", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

inline FinCat::Presentation presentation_from_json(const json& j) {
  if (!j.is_object()) fail("BadFormat", "category file must be a JSON object");
  if (j.contains("poset")) {
    const json& p = j.at("poset");
    if (!p.contains("elements") || !p.at("elements").is_array())
      fail("BadFormat", "poset shorthand needs an elements array");
    std::vector<std::string> elems;
    for (const auto& e : p.at("elements")) elems.push_back(e.get<std::string>());
    std::vector<std::pair<std::string, std::string>> leq;
    if (p.contains("leq"))
      for (const auto& pr : p.at("leq")) {
        if (!pr.is_array() || pr.size() != 2) fail("BadFormat", "leq entries must be pairs");
        leq.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
      }
    return poset_presentation(elems, leq);
  }
  FinCat::Presentation p;
  if (!j.contains("objects") || !j.at("objects").is_array())
    fail("BadFormat", "category file needs an objects array");
  for (const auto& o : j.at("objects")) p.objects.push_back(o.get<std::string>());
  if (j.contains("morphisms"))
    for (const auto& m : j.at("morphisms"))
      p.morphisms.push_back({m.at("name").get<std::string>(), m.at("src").get<std::string>(),
                             m.at("dst").get<std::string>()});
  if (j.contains("composition"))
    for (const auto& t : j.at("composition"))
      p.composition.push_back({t.at("first").get<std::string>(), t.at("then").get<std::string>(),
                               t.at("equals").get<std::string>()});
  return p;
}

inline CatPtr load_category(const json& j) { return FinCat::validate(presentation_from_json(j)); }

inline CatPtr load_category_file(const std::string& path) {
  return load_category(load_json_file(path));
}

// Identities and their composites are left implicit on output.
inline json category_to_json(const FinCat& c) {
  json j = json::object();
  j["objects"] = json::array();
  for (int i = 0; i < c.object_count(); ++i) j["objects"].push_back(c.object(i));
  j["morphisms"] = json::array();
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    j["morphisms"].push_back({{"name", c.mor_name(f)},
                              {"src", c.object(c.src(f))},
                              {"dst", c.object(c.dst(f))}});
  }
  j["composition"] = json::array();
  for (int f = 0; f < c.morphism_count(); ++f) {
    if (c.is_identity(f)) continue;
    for (int g = 0; g < c.morphism_count(); ++g) {
      if (c.is_identity(g) || !c.composable(f, g)) continue;
      j["composition"].push_back({{"first", c.mor_name(f)},
                                  {"then", c.mor_name(g)},
                                  {"equals", c.mor_name(c.compose(f, g))}});
    }
  }
  return j;
}

// A source/target entry is either a path (string, resolved against base_dir)
// or an inline category object.
inline CatPtr load_category_ref(const json& j, const std::string& base_dir) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return load_category_file(p.string());
  }
  return load_category(j);
}

inline FinFunctor load_functor(const json& j, const std::string& base_dir = "") {
  if (!j.is_object() || !j.contains("source") || !j.contains("target"))
    fail("BadFormat", "functor file needs source and target");
  CatPtr src = load_category_ref(j.at("source"), base_dir);
  CatPtr dst = load_category_ref(j.at("target"), base_dir);
  std::vector<int> on_obj(src->object_count(), -1), on_mor(src->morphism_count(), -1);
  if (!j.contains("object_map") || !j.at("object_map").is_object())
    fail("BadFormat", "functor file needs an object_map");
  for (const auto& [k, v] : j.at("object_map").items()) {
    int x = src->object_index(k);
    if (x < 0) fail("UnknownObject", k + " not in source category");
    int y = dst->object_index(v.get<std::string>());
    if (y < 0) fail("UnknownObject", v.get<std::string>() + " not in target category");
    on_obj[x] = y;
  }
  if (j.contains("morphism_map"))
    for (const auto& [k, v] : j.at("morphism_map").items()) {
      int f = src->mor_index(k);
      if (f < 0) fail("UnknownMorphism", k + " not in source category");
      int g = dst->mor_index(v.get<std::string>());
      if (g < 0) fail("UnknownMorphism", v.get<std::string>() + " not in target category");
      on_mor[f] = g;
    }
  return FinFunctor::validate(std::move(src), std::move(dst), std::move(on_obj),
                              std::move(on_mor));
}

inline FinFunctor load_functor_file(const std::string& path) {
  return load_functor(load_json_file(path), std::filesystem::path(path).parent_path().string());
}

inline json functor_to_json(const FinFunctor& f) {
  json j = json::object();
  j["source"] = category_to_json(*f.source());
  j["target"] = category_to_json(*f.target());
  json om = json::object();
  for (int x = 0; x < f.source()->object_count(); ++x)
    om[f.source()->object(x)] = f.target()->object(f.obj(x));
  j["object_map"] = om;
  json mm = json::object();
  for (int m = 0; m < f.source()->morphism_count(); ++m) {
    if (f.source()->is_identity(m)) continue;
    mm[f.source()->mor_name(m)] = f.target()->mor_name(f.mor(m));
  }
  j["morphism_map"] = mm;
  return j;
}

// Displayed identities (did_<dobj>) and their composites are implicit.
inline DispCat::Presentation disp_presentation_from_json(const json& j,
                                                         const std::string& base_dir = "") {
  if (!j.is_object() || !j.contains("base"))
    fail("BadFormat", "displayed category file needs a base");
  DispCat::Presentation p;
  p.base = load_category_ref(j.at("base"), base_dir);
  if (!j.contains("dobjects") || !j.at("dobjects").is_object())
    fail("BadFormat", "displayed category file needs a dobjects map");
  for (const auto& [over, names] : j.at("dobjects").items()) {
    if (!names.is_array()) fail("BadFormat", "dobjects entries must be arrays");
    for (const auto& n : names) p.dobjects.push_back({n.get<std::string>(), over});
  }
  if (j.contains("dmorphisms"))
    for (const auto& m : j.at("dmorphisms"))
      p.dmorphisms.push_back({m.at("name").get<std::string>(), m.at("over").get<std::string>(),
                              m.at("src").get<std::string>(), m.at("dst").get<std::string>()});
  if (j.contains("dcomposition"))
    for (const auto& t : j.at("dcomposition"))
      p.dcomposition.push_back({t.at("first").get<std::string>(),
                                t.at("then").get<std::string>(),
                                t.at("equals").get<std::string>()});
  return p;
}

inline DispPtr load_displayed(const json& j, const std::string& base_dir = "") {
  return DispCat::validate(disp_presentation_from_json(j, base_dir));
}

inline DispPtr load_displayed_file(const std::string& path) {
  return load_displayed(load_json_file(path),
                        std::filesystem::path(path).parent_path().string());
}

inline json displayed_to_json(const DispCat& d) {
  const FinCat& b = *d.base();
  json j = json::object();
  j["base"] = category_to_json(b);
  json dob = json::object();
  for (int x = 0; x < b.object_count(); ++x) {
    json names = json::array();
    for (int i : d.dobjects_over(x)) names.push_back(d.dobj(i).name);
    dob[b.object(x)] = names;
  }
  j["dobjects"] = dob;
  j["dmorphisms"] = json::array();
  for (int m = 0; m < d.dmorphism_count(); ++m) {
    if (d.is_didentity(m)) continue;
    j["dmorphisms"].push_back({{"name", d.dmor(m).name},
                               {"over", b.mor_name(d.dmor(m).over)},
                               {"src", d.dobj(d.dmor(m).src).name},
                               {"dst", d.dobj(d.dmor(m).dst).name}});
  }
  j["dcomposition"] = json::array();
  for (int f = 0; f < d.dmorphism_count(); ++f) {
    if (d.is_didentity(f)) continue;
    for (int g = 0; g < d.dmorphism_count(); ++g) {
      if (d.is_didentity(g) || !d.dcomposable(f, g)) continue;
      j["dcomposition"].push_back({{"first", d.dmor(f).name},
                                   {"then", d.dmor(g).name},
                                   {"equals", d.dmor(d.dcompose(f, g)).name}});
    }
  }
  return j;
}

// Comprehension category bundle: the type category plus the name-level action
// of the comprehension functor into the arrow category of the base.  The base
// travels inside "types", and the cleaving is recomputed on load.
inline json compcat_to_json(const CompCat& k) {
  const DispCat& t = *k.types;
  const DispCat& a = *k.arrow.disp;
  json j = json::object();
  j["types"] = displayed_to_json(t);
  json dob = json::object();
  for (int i = 0; i < t.dobject_count(); ++i)
    dob[t.dobj(i).name] = a.dobj(k.chi.dobj(i)).name;
  json dmo = json::object();
  for (int m = 0; m < t.dmorphism_count(); ++m) {
    if (t.is_didentity(m)) continue;
    dmo[t.dmor(m).name] = a.dmor(k.chi.dmor(m)).name;
  }
  j["comprehension"] = {{"dobjects", dob}, {"dmorphisms", dmo}};
  return j;
}

inline CompCat load_compcat(const json& j, const std::string& base_dir = "") {
  if (!j.is_object() || !j.contains("types") || !j.contains("comprehension"))
    fail("BadFormat", "comprehension category bundle needs 'types' and 'comprehension'");
  DispPtr types = load_displayed(j.at("types"), base_dir);
  CatPtr base = types->base();
  ArrowDisp arrow = arrow_displayed(base);
  const json& c = j.at("comprehension");
  if (!c.is_object() || !c.contains("dobjects"))
    fail("BadFormat", "'comprehension' needs a 'dobjects' name map");
  std::vector<int> on_dobj(types->dobject_count(), -1);
  for (const auto& [name, target] : c.at("dobjects").items()) {
    int i = types->dobject_index(name);
    if (i < 0) fail("DanglingEndpoint", "unknown type '" + name + "' in comprehension map");
    int a = arrow.disp->dobject_index(target.get<std::string>());
    if (a < 0)
      fail("DanglingEndpoint",
           "comprehension of '" + name + "' names unknown base morphism '" +
               target.get<std::string>() + "'");
    on_dobj[i] = a;
  }
  for (int i = 0; i < types->dobject_count(); ++i)
    if (on_dobj[i] < 0)
      fail("BadFormat", "comprehension map misses type '" + types->dobj(i).name + "'");
  std::vector<int> on_dmor(types->dmorphism_count(), -1);
  if (c.contains("dmorphisms"))
    for (const auto& [name, target] : c.at("dmorphisms").items()) {
      int m = types->dmorphism_index(name);
      if (m < 0) fail("DanglingEndpoint", "unknown type morphism '" + name + "'");
      int a = arrow.disp->dmorphism_index(target.get<std::string>());
      if (a < 0)
        fail("DanglingEndpoint",
             "comprehension of '" + name + "' names unknown square '" +
                 target.get<std::string>() + "'");
      on_dmor[m] = a;
    }
  DispFunctor chi = DispFunctor::validate(FinFunctor::identity(base), types,
                                          arrow.disp, on_dobj, on_dmor);
  CleavingResult cl = find_cleaving(types);
  if (std::holds_alternative<CleavingMissing>(cl)) {
    const auto& miss = std::get<CleavingMissing>(cl);
    fail("NoCartesianLift",
         "no cartesian lift of '" + base->mor_name(miss.f) + "' at '" +
             types->dobj(miss.ybar).name + "'");
  }
  return assemble_compcat(base, types, std::get<Cleaving>(cl), chi);
}

inline CompCat load_compcat_file(const std::string& path) {
  return load_compcat(load_json_file(path),
                      std::filesystem::path(path).parent_path().string());
}

inline json fiberwise_to_json(const CompCat& k, const FiberwiseReport& r) {
  json fibers = json::object();
  for (int x = 0; x < k.base->object_count(); ++x)
    fibers[k.base->object(x)] = r.fiber_ok[static_cast<size_t>(x)];
  json preserved = json::object();
  for (int f = 0; f < k.base->morphism_count(); ++f)
    preserved[k.base->mor_name(f)] = r.preserved[static_cast<size_t>(f)];
  return {{"pass", r.ok}, {"fibers", fibers}, {"substitutions", preserved}, {"detail", r.detail}};
}

inline json dfl_report_to_json(const CompCat& k, const DFLReport& r) {
  const FinCat& b = *k.base;
  const DispCat& t = *k.types;
  json unit;
  if (r.unit) {
    json types = json::object();
    for (int x = 0; x < b.object_count(); ++x)
      types[b.object(x)] = {
          {"unit", t.dobj(r.unit->unit[static_cast<size_t>(x)]).name},
          {"projection_inverse", b.mor_name(r.unit->proj_inv[static_cast<size_t>(x)])}};
    unit = {{"pass", true}, {"contexts", types}};
  } else {
    unit = {{"pass", false}, {"detail", r.unit_error}};
  }
  json sigma;
  if (r.sigma) {
    json bc = json::array();
    for (const BCCheck& c : r.sigma->bc)
      bc.push_back({{"substitution", b.mor_name(c.subst)},
                    {"type", t.dobj(c.type).name},
                    {"holds", c.result.holds}});
    json sums = json::array();
    for (const SigmaComparison& c : r.sigma->comparisons)
      sums.push_back({{"type", t.dobj(c.type).name},
                      {"argument", t.dobj(c.argument).name},
                      {"sum", t.dobj(c.sum).name},
                      {"comparison", b.mor_name(c.comparison)}});
    sigma = {{"pass", true}, {"beck_chevalley", bc}, {"sums", sums}};
  } else {
    sigma = {{"pass", false}, {"detail", r.sigma_error}};
  }
  json dem;
  if (r.dem) {
    json witnesses = json::object();
    for (const DemocracyWitness& w : r.dem->witnesses)
      witnesses[b.object(w.ctx)] = {{"type", t.dobj(w.type).name}, {"iso", b.mor_name(w.iso)}};
    dem = {{"pass", true}, {"contexts", witnesses}};
  } else {
    dem = {{"pass", false}, {"detail", r.dem_error}};
  }
  return {{"pass", r.pass},
          {"failure", r.failure},
          {"comprehension_full", r.full},
          {"unit", unit},
          {"products", fiberwise_to_json(k, r.prod)},
          {"equalizers", fiberwise_to_json(k, r.eq)},
          {"sums", sigma},
          {"democracy", dem}};
}

}  // namespace catlang::io
