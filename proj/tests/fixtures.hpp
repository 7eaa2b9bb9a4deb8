#pragma once
// Shared fixture corpus. Each fixture is produced as a neutral description
// (objects, named morphisms, composition triples with identities implicit)
// that both the oracle and the library can consume.

#include <cassert>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oracle.hpp"

namespace fixtures {

struct NeutralMor {
  std::string name, src, dst;
};

struct NeutralComp {
  std::string first, then, equals;
};

struct NeutralCat {
  std::string name;
  std::vector<std::string> objects;
  std::vector<NeutralMor> morphisms;   // identities omitted, implied id_<obj>
  std::vector<NeutralComp> comps;      // identity composites implied
};

// Expand a neutral description into raw tables with explicit identities and
// a completed composition map. Shared by the oracle tests and mutation tests.
inline oracle::RawCat complete(const NeutralCat& n) {
  oracle::RawCat c;
  c.objects = n.objects;
  std::map<std::string, int> oidx, midx;
  for (size_t i = 0; i < n.objects.size(); ++i) oidx[n.objects[i]] = static_cast<int>(i);
  for (const auto& o : n.objects) {
    oracle::RawMor m;
    m.name = "id_" + o;
    m.src = m.dst = oidx[o];
    midx[m.name] = static_cast<int>(c.morphisms.size());
    c.morphisms.push_back(m);
  }
  c.identity.resize(n.objects.size());
  for (size_t i = 0; i < n.objects.size(); ++i) c.identity[i] = static_cast<int>(i);
  for (const auto& m : n.morphisms) {
    oracle::RawMor r;
    r.name = m.name;
    r.src = oidx.count(m.src) ? oidx[m.src] : -1;
    r.dst = oidx.count(m.dst) ? oidx[m.dst] : -1;
    midx[r.name] = static_cast<int>(c.morphisms.size());
    c.morphisms.push_back(r);
  }
  for (size_t f = 0; f < c.morphisms.size(); ++f) {
    if (c.morphisms[f].src < 0 || c.morphisms[f].dst < 0) continue;
    c.comp[{static_cast<int>(f), c.identity[c.morphisms[f].dst]}] = static_cast<int>(f);
    c.comp[{c.identity[c.morphisms[f].src], static_cast<int>(f)}] = static_cast<int>(f);
  }
  for (const auto& t : n.comps) {
    assert(midx.count(t.first) && midx.count(t.then) && midx.count(t.equals));
    c.comp[{midx[t.first], midx[t.then]}] = midx[t.equals];
  }
  return c;
}

// ---------------------------------------------------------------------------
// Poset-shaped fixtures.
// ---------------------------------------------------------------------------

inline std::string le_name(const std::string& a, const std::string& b) {
  return "le_" + a + "_" + b;
}

inline NeutralCat from_poset(std::string name, const oracle::RawPoset& p) {
  NeutralCat n;
  n.name = std::move(name);
  n.objects = p.elems;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (a != b && p.le(a, b))
        n.morphisms.push_back({le_name(p.elems[a], p.elems[b]), p.elems[a], p.elems[b]});
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      for (int c = 0; c < p.size(); ++c)
        if (a != b && b != c && p.le(a, b) && p.le(b, c)) {
          std::string h = (a == c) ? "id_" + p.elems[a] : le_name(p.elems[a], p.elems[c]);
          n.comps.push_back({le_name(p.elems[a], p.elems[b]),
                             le_name(p.elems[b], p.elems[c]), h});
        }
  return n;
}

inline oracle::RawPoset one_poset() { return oracle::make_poset({"*"}, {}); }
inline oracle::RawPoset two_poset() { return oracle::make_poset({"0", "1"}, {{"0", "1"}}); }
inline oracle::RawPoset div6_poset() { return oracle::divisibility_poset(6); }
inline oracle::RawPoset div60_poset() { return oracle::divisibility_poset(60); }
// Boolean cube 2^3 realized as the divisors of 30.
inline oracle::RawPoset cube_poset() { return oracle::divisibility_poset(30); }
inline oracle::RawPoset vshape_poset() {
  return oracle::make_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
}
// Modular, non-distributive diamond: bottom, three incomparable middles, top.
inline oracle::RawPoset m3_poset() {
  return oracle::make_poset({"bot", "a", "b", "c", "top"},
                            {{"bot", "a"}, {"bot", "b"}, {"bot", "c"},
                             {"a", "top"}, {"b", "top"}, {"c", "top"}});
}

inline NeutralCat one_cat() { return from_poset("one", one_poset()); }
inline NeutralCat two_cat() { return from_poset("two", two_poset()); }
inline NeutralCat div6_cat() { return from_poset("div6", div6_poset()); }
inline NeutralCat div60_cat() { return from_poset("div60", div60_poset()); }
inline NeutralCat cube_cat() { return from_poset("cube", cube_poset()); }
inline NeutralCat vshape_cat() { return from_poset("vshape", vshape_poset()); }
inline NeutralCat m3_cat() { return from_poset("m3", m3_poset()); }

// ---------------------------------------------------------------------------
// Non-poset fixtures.
// ---------------------------------------------------------------------------

inline NeutralCat walking_iso_cat() {
  NeutralCat n;
  n.name = "walking_iso";
  n.objects = {"u", "v"};
  n.morphisms = {{"f", "u", "v"}, {"g", "v", "u"}};
  n.comps = {{"f", "g", "id_u"}, {"g", "f", "id_v"}};
  return n;
}

// Skeletal fragment of finite sets on sizes 0..max_size. A function from
// size m to size n with images d_0..d_{m-1} is named f<m>to<n>_<digits>
// (no digit block when m = 0); identities are implicit.
inline NeutralCat finset_cat(int max_size) {
  NeutralCat n;
  n.name = "finset" + std::to_string(max_size);
  for (int s = 0; s <= max_size; ++s) n.objects.push_back("s" + std::to_string(s));

  struct Fn {
    int dom, cod;
    std::vector<int> img;
  };
  std::vector<Fn> fns;
  auto is_identity = [](const Fn& f) {
    if (f.dom != f.cod) return false;
    for (int i = 0; i < f.dom; ++i)
      if (f.img[i] != i) return false;
    return true;
  };
  auto fn_name = [&](const Fn& f) {
    if (is_identity(f)) return "id_s" + std::to_string(f.dom);
    std::string nm = "f" + std::to_string(f.dom) + "to" + std::to_string(f.cod);
    if (f.dom > 0) {
      nm += "_";
      for (int d : f.img) nm += std::to_string(d);
    }
    return nm;
  };

  for (int m = 0; m <= max_size; ++m)
    for (int k = 0; k <= max_size; ++k) {
      if (m > 0 && k == 0) continue;  // no functions from nonempty to empty
      std::vector<int> img(m, 0);
      while (true) {
        fns.push_back({m, k, img});
        int i = m - 1;
        while (i >= 0 && img[i] == k - 1) img[i--] = 0;
        if (i < 0) break;
        ++img[i];
      }
    }

  for (const auto& f : fns)
    if (!is_identity(f))
      n.morphisms.push_back({fn_name(f), "s" + std::to_string(f.dom),
                             "s" + std::to_string(f.cod)});

  for (const auto& f : fns) {
    if (is_identity(f)) continue;
    for (const auto& g : fns) {
      if (is_identity(g) || g.dom != f.cod) continue;
      Fn h{f.dom, g.cod, {}};
      h.img.resize(f.dom);
      for (int i = 0; i < f.dom; ++i) h.img[i] = g.img[f.img[i]];
      n.comps.push_back({fn_name(f), fn_name(g), fn_name(h)});
    }
  }
  return n;
}

// The whole validation corpus used by the category-law acceptance suite.
inline std::vector<NeutralCat> law_corpus() {
  return {one_cat(),    two_cat(), div6_cat(),        div60_cat(), cube_cat(),
          vshape_cat(), m3_cat(),  walking_iso_cat(), finset_cat(4)};
}

// ---------------------------------------------------------------------------
// Deliberately broken variants (built by mutating completed raw tables).
// ---------------------------------------------------------------------------

struct Mutant {
  std::string name;
  std::string expected_law;  // law the oracle should report
  oracle::RawCat raw;
};

inline int raw_mor_index(const oracle::RawCat& c, const std::string& name) {
  for (size_t i = 0; i < c.morphisms.size(); ++i)
    if (c.morphisms[i].name == name) return static_cast<int>(i);
  return -1;
}

inline std::vector<Mutant> mutant_corpus() {
  std::vector<Mutant> out;

  {
    Mutant m{"div6_missing_composite", "MissingComposite", complete(div6_cat())};
    m.raw.comp.erase({raw_mor_index(m.raw, "le_1_2"), raw_mor_index(m.raw, "le_2_6")});
    out.push_back(m);
  }
  {
    Mutant m{"div6_illtyped_composite", "IllTypedComposite", complete(div6_cat())};
    m.raw.comp[{raw_mor_index(m.raw, "le_1_2"), raw_mor_index(m.raw, "le_2_6")}] =
        raw_mor_index(m.raw, "le_1_3");
    out.push_back(m);
  }
  {
    // In the finset fragment, f2to1_00 ; f1to2_0 ; f2to2_10 shows the repointed
    // entry (f1to2_0 ; f2to2_10) -> f1to2_0 breaks associativity.
    Mutant m{"finset2_nonassociative", "NonAssociative", complete(finset_cat(2))};
    m.raw.comp[{raw_mor_index(m.raw, "f1to2_0"), raw_mor_index(m.raw, "f2to2_10")}] =
        raw_mor_index(m.raw, "f1to2_0");
    out.push_back(m);
  }
  {
    Mutant m{"finset2_unit_violation", "UnitLawViolation", complete(finset_cat(2))};
    m.raw.comp[{raw_mor_index(m.raw, "id_s1"), raw_mor_index(m.raw, "f1to2_0")}] =
        raw_mor_index(m.raw, "f1to2_1");
    out.push_back(m);
  }
  {
    Mutant m{"div6_duplicate_name", "DuplicateName", complete(div6_cat())};
    int i = raw_mor_index(m.raw, "le_1_6");
    m.raw.morphisms[i].name = "le_1_2";
    out.push_back(m);
  }
  {
    Mutant m{"div6_dangling_endpoint", "DanglingEndpoint", complete(div6_cat())};
    int i = raw_mor_index(m.raw, "le_1_6");
    m.raw.morphisms[i].dst = -1;
    out.push_back(m);
  }
  return out;
}

}  // namespace fixtures
