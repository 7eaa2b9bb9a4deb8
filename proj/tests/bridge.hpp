#pragma once
// Conversions between the library category type and the raw oracle form used
// by the reference implementations in the test suite.

#include "catlang/fincat.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

namespace bridge {

inline oracle::RawCat to_raw(const catlang::FinCat& c) {
  oracle::RawCat r;
  for (int i = 0; i < c.object_count(); ++i) r.objects.push_back(c.object(i));
  for (int f = 0; f < c.morphism_count(); ++f)
    r.morphisms.push_back({c.mor_name(f), c.src(f), c.dst(f)});
  r.identity.resize(c.object_count());
  for (int x = 0; x < c.object_count(); ++x) r.identity[x] = c.identity(x);
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < c.morphism_count(); ++g)
      if (c.composable(f, g)) r.comp[{f, g}] = c.compose(f, g);
  return r;
}

// Feed a raw (possibly law-violating) table to the library validator, with
// every morphism and composite spelled out. Out-of-range endpoints become
// dangling names on purpose.
inline catlang::FinCat::Presentation to_presentation(const oracle::RawCat& r) {
  catlang::FinCat::Presentation p;
  p.objects = r.objects;
  auto oname = [&](int i) -> std::string {
    return (i >= 0 && i < static_cast<int>(r.objects.size())) ? r.objects[i] : "<missing>";
  };
  for (const auto& m : r.morphisms)
    p.morphisms.push_back({m.name, oname(m.src), oname(m.dst)});
  for (const auto& [fg, h] : r.comp)
    p.composition.push_back(
        {r.morphisms[fg.first].name, r.morphisms[fg.second].name, r.morphisms[h].name});
  return p;
}

inline catlang::CatPtr lift(const fixtures::NeutralCat& n) {
  return catlang::FinCat::validate(to_presentation(fixtures::complete(n)));
}

inline catlang::CatPtr from_poset(const oracle::RawPoset& p) {
  std::vector<std::pair<std::string, std::string>> leq;
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j)
      if (i != j && p.le(i, j)) leq.emplace_back(p.elems[i], p.elems[j]);
  return catlang::FinCat::validate(catlang::poset_presentation(p.elems, leq));
}

}  // namespace bridge
