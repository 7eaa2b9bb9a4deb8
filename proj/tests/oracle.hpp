#pragma once
// Naive reference checkers, written before and independently of the main
// library. Everything here is deliberately brute force over raw tables; the
// test suite freezes values computed by these functions and later requires
// the library to agree with them.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Raw category tables with explicit identities and a full composition map.
// ---------------------------------------------------------------------------

struct RawMor {
  std::string name;
  int src = -1;
  int dst = -1;
};

struct RawCat {
  std::vector<std::string> objects;
  std::vector<RawMor> morphisms;
  std::vector<int> identity;                // object index -> morphism index
  std::map<std::pair<int, int>, int> comp;  // (f, then g) -> composite
};

struct LawViolation {
  std::string law;          // which law failed
  std::string detail;       // human-readable witness
};

inline std::optional<int> raw_compose(const RawCat& c, int f, int g) {
  auto it = c.comp.find({f, g});
  if (it == c.comp.end()) return std::nullopt;
  return it->second;
}

// First violated law, or nullopt when all category laws hold.
inline std::optional<LawViolation> check_laws(const RawCat& c) {
  std::set<std::string> names;
  for (const auto& o : c.objects)
    if (!names.insert(o).second)
      return LawViolation{"DuplicateName", o};
  std::set<std::string> mnames;
  for (const auto& m : c.morphisms)
    if (!mnames.insert(m.name).second)
      return LawViolation{"DuplicateName", m.name};

  const int nobj = static_cast<int>(c.objects.size());
  const int nmor = static_cast<int>(c.morphisms.size());
  for (const auto& m : c.morphisms)
    if (m.src < 0 || m.src >= nobj || m.dst < 0 || m.dst >= nobj)
      return LawViolation{"DanglingEndpoint", m.name};

  if (static_cast<int>(c.identity.size()) != nobj)
    return LawViolation{"UnitLawViolation", "identity table incomplete"};
  for (int x = 0; x < nobj; ++x) {
    int i = c.identity[x];
    if (i < 0 || i >= nmor || c.morphisms[i].src != x || c.morphisms[i].dst != x)
      return LawViolation{"UnitLawViolation", "bad identity on " + c.objects[x]};
  }

  // Totality and closure of composition on composable pairs.
  for (int f = 0; f < nmor; ++f)
    for (int g = 0; g < nmor; ++g) {
      if (c.morphisms[f].dst != c.morphisms[g].src) continue;
      auto h = raw_compose(c, f, g);
      if (!h)
        return LawViolation{"MissingComposite",
                            c.morphisms[f].name + " ; " + c.morphisms[g].name};
      if (*h < 0 || *h >= nmor ||
          c.morphisms[*h].src != c.morphisms[f].src ||
          c.morphisms[*h].dst != c.morphisms[g].dst)
        return LawViolation{"IllTypedComposite",
                            c.morphisms[f].name + " ; " + c.morphisms[g].name};
    }

  // Unit laws.
  for (int f = 0; f < nmor; ++f) {
    int lid = c.identity[c.morphisms[f].src];
    int rid = c.identity[c.morphisms[f].dst];
    if (raw_compose(c, lid, f) != std::optional<int>(f))
      return LawViolation{"UnitLawViolation", "id ; " + c.morphisms[f].name};
    if (raw_compose(c, f, rid) != std::optional<int>(f))
      return LawViolation{"UnitLawViolation", c.morphisms[f].name + " ; id"};
  }

  // Associativity over every composable triple.
  for (int f = 0; f < nmor; ++f)
    for (int g = 0; g < nmor; ++g) {
      if (c.morphisms[f].dst != c.morphisms[g].src) continue;
      int fg = *raw_compose(c, f, g);
      for (int h = 0; h < nmor; ++h) {
        if (c.morphisms[g].dst != c.morphisms[h].src) continue;
        int gh = *raw_compose(c, g, h);
        if (raw_compose(c, fg, h) != raw_compose(c, f, gh))
          return LawViolation{"NonAssociative",
                              c.morphisms[f].name + " ; " + c.morphisms[g].name +
                                  " ; " + c.morphisms[h].name};
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite posets and order-theoretic oracles.
// ---------------------------------------------------------------------------

struct RawPoset {
  std::vector<std::string> elems;
  std::vector<std::vector<bool>> leq;  // leq[a][b] means a <= b

  int index(const std::string& e) const {
    for (size_t i = 0; i < elems.size(); ++i)
      if (elems[i] == e) return static_cast<int>(i);
    return -1;
  }
  bool le(int a, int b) const { return leq[a][b]; }
  bool le(const std::string& a, const std::string& b) const {
    return le(index(a), index(b));
  }
  int size() const { return static_cast<int>(elems.size()); }
};

// Reflexive-transitive closure of the given pairs.
inline RawPoset make_poset(std::vector<std::string> elems,
                           const std::vector<std::pair<std::string, std::string>>& pairs) {
  RawPoset p;
  p.elems = std::move(elems);
  int n = p.size();
  p.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) p.leq[i][i] = true;
  for (const auto& [a, b] : pairs) p.leq[p.index(a)][p.index(b)] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (p.leq[i][k] && p.leq[k][j]) p.leq[i][j] = p.leq[i][j] || true;
  return p;
}

inline std::vector<int> divisors(int n) {
  std::vector<int> ds;
  for (int d = 1; d <= n; ++d)
    if (n % d == 0) ds.push_back(d);
  return ds;
}

// Divisibility order on the divisors of n.
inline RawPoset divisibility_poset(int n) {
  RawPoset p;
  for (int d : divisors(n)) p.elems.push_back(std::to_string(d));
  int m = p.size();
  p.leq.assign(m, std::vector<bool>(m, false));
  auto ds = divisors(n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) p.leq[i][j] = (ds[j] % ds[i] == 0);
  return p;
}

inline int count_leq_pairs(const RawPoset& p) {
  int c = 0;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (p.le(a, b)) ++c;
  return c;
}

inline std::optional<int> poset_top(const RawPoset& p) {
  for (int t = 0; t < p.size(); ++t) {
    bool ok = true;
    for (int x = 0; x < p.size(); ++x) ok = ok && p.le(x, t);
    if (ok) return t;
  }
  return std::nullopt;
}

inline std::optional<int> poset_bottom(const RawPoset& p) {
  for (int b = 0; b < p.size(); ++b) {
    bool ok = true;
    for (int x = 0; x < p.size(); ++x) ok = ok && p.le(b, x);
    if (ok) return b;
  }
  return std::nullopt;
}

// Greatest lower bound by exhaustive scan.
inline std::optional<int> poset_meet(const RawPoset& p, int a, int b) {
  for (int m = 0; m < p.size(); ++m) {
    if (!p.le(m, a) || !p.le(m, b)) continue;
    bool greatest = true;
    for (int c = 0; c < p.size(); ++c)
      if (p.le(c, a) && p.le(c, b) && !p.le(c, m)) greatest = false;
    if (greatest) return m;
  }
  return std::nullopt;
}

inline std::optional<int> poset_join(const RawPoset& p, int a, int b) {
  for (int j = 0; j < p.size(); ++j) {
    if (!p.le(a, j) || !p.le(b, j)) continue;
    bool least = true;
    for (int c = 0; c < p.size(); ++c)
      if (p.le(a, c) && p.le(b, c) && !p.le(j, c)) least = false;
    if (least) return j;
  }
  return std::nullopt;
}

inline std::vector<int> down_set(const RawPoset& p, int x) {
  std::vector<int> d;
  for (int a = 0; a < p.size(); ++a)
    if (p.le(a, x)) d.push_back(a);
  return d;
}

inline bool is_lattice(const RawPoset& p) {
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (!poset_meet(p, a, b) || !poset_join(p, a, b)) return false;
  return true;
}

inline bool is_distributive_lattice(const RawPoset& p) {
  if (!is_lattice(p)) return false;
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      for (int c = 0; c < p.size(); ++c) {
        int lhs = *poset_meet(p, a, *poset_join(p, b, c));
        int rhs = *poset_join(p, *poset_meet(p, a, b), *poset_meet(p, a, c));
        if (lhs != rhs) return false;
      }
  return true;
}

// Heyting implication a => b as max{c : c /\ a <= b}, when the max exists.
inline std::optional<int> heyting_impl(const RawPoset& p, int a, int b) {
  std::vector<int> cands;
  for (int c = 0; c < p.size(); ++c) {
    auto m = poset_meet(p, c, a);
    if (m && p.le(*m, b)) cands.push_back(c);
  }
  for (int c : cands) {
    bool greatest = true;
    for (int d : cands)
      if (!p.le(d, c)) greatest = false;
    if (greatest) return c;
  }
  return std::nullopt;
}

// Galois adjoints of a monotone map F : P -> Q.
// Left adjoint at q = min{x : q <= F(x)}; right adjoint at q = max{x : F(x) <= q}.
inline std::optional<std::vector<int>> galois_left_adjoint(
    const RawPoset& p, const RawPoset& q, const std::vector<int>& f) {
  std::vector<int> l(q.size(), -1);
  for (int y = 0; y < q.size(); ++y) {
    std::vector<int> cands;
    for (int x = 0; x < p.size(); ++x)
      if (q.le(y, f[x])) cands.push_back(x);
    int best = -1;
    for (int c : cands) {
      bool least = true;
      for (int d : cands)
        if (!p.le(c, d)) least = false;
      if (least) { best = c; break; }
    }
    if (best < 0) return std::nullopt;
    l[y] = best;
  }
  return l;
}

inline std::optional<std::vector<int>> galois_right_adjoint(
    const RawPoset& p, const RawPoset& q, const std::vector<int>& f) {
  std::vector<int> r(q.size(), -1);
  for (int y = 0; y < q.size(); ++y) {
    std::vector<int> cands;
    for (int x = 0; x < p.size(); ++x)
      if (q.le(f[x], y)) cands.push_back(x);
    int best = -1;
    for (int c : cands) {
      bool greatest = true;
      for (int d : cands)
        if (!p.le(d, c)) greatest = false;
      if (greatest) { best = c; break; }
    }
    if (best < 0) return std::nullopt;
    r[y] = best;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Counting oracles for derived structures over posets.
// ---------------------------------------------------------------------------

// Morphisms of the total category of the arrow construction over a poset:
// quadruples (a0, b0, x, y) with a0 <= x, b0 <= y, a0 <= b0, x <= y.
inline int count_arrow_total_morphisms(const RawPoset& p) {
  int c = 0;
  for (int a0 = 0; a0 < p.size(); ++a0)
    for (int x = 0; x < p.size(); ++x) {
      if (!p.le(a0, x)) continue;
      for (int b0 = 0; b0 < p.size(); ++b0)
        for (int y = 0; y < p.size(); ++y)
          if (p.le(b0, y) && p.le(a0, b0) && p.le(x, y)) ++c;
    }
  return c;
}

// Subobjects of x in a poset: monos into x up to iso = elements below x.
inline int count_subobjects(const RawPoset& p, int x) {
  return static_cast<int>(down_set(p, x).size());
}

// ---------------------------------------------------------------------------
// Presentation isomorphism by backtracking (desk-scale categories only).
// ---------------------------------------------------------------------------

namespace detail {

struct IsoSearch {
  const RawCat& A;
  const RawCat& B;
  std::vector<std::vector<int>> homA, homB;  // [x*n+y] -> morphism indices
  std::vector<int> omap, mused, mmap;

  IsoSearch(const RawCat& a, const RawCat& b) : A(a), B(b) {
    int n = static_cast<int>(A.objects.size());
    homA.resize(n * n);
    homB.resize(n * n);
    for (size_t f = 0; f < A.morphisms.size(); ++f)
      homA[A.morphisms[f].src * n + A.morphisms[f].dst].push_back(static_cast<int>(f));
    for (size_t f = 0; f < B.morphisms.size(); ++f)
      homB[B.morphisms[f].src * n + B.morphisms[f].dst].push_back(static_cast<int>(f));
    omap.assign(n, -1);
  }

  bool try_objects(int x, std::vector<int>& used) {
    int n = static_cast<int>(A.objects.size());
    if (x == n) return try_morphisms();
    for (int y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (int z = 0; z < n && ok; ++z) {
        if (omap[z] < 0) continue;
        if (homA[x * n + z].size() != homB[y * n + omap[z]].size() ||
            homA[z * n + x].size() != homB[omap[z] * n + y].size())
          ok = false;
      }
      if (homA[x * n + x].size() != homB[y * n + y].size()) ok = false;
      if (!ok) continue;
      omap[x] = y;
      used[y] = 1;
      if (try_objects(x + 1, used)) return true;
      omap[x] = -1;
      used[y] = 0;
    }
    return false;
  }

  bool try_morphisms() {
    mmap.assign(A.morphisms.size(), -1);
    mused.assign(B.morphisms.size(), 0);
    return assign_mor(0);
  }

  bool assign_mor(int f) {
    int n = static_cast<int>(A.objects.size());
    if (f == static_cast<int>(A.morphisms.size())) return verify();
    int sx = omap[A.morphisms[f].src], dx = omap[A.morphisms[f].dst];
    for (int g : homB[sx * n + dx]) {
      if (mused[g]) continue;
      bool fid = false, gid = false;
      for (int x = 0; x < n; ++x) {
        if (A.identity[x] == f) fid = true;
        if (B.identity[x] == g) gid = true;
      }
      if (fid != gid) continue;
      mmap[f] = g;
      mused[g] = 1;
      if (assign_mor(f + 1)) return true;
      mmap[f] = -1;
      mused[g] = 0;
    }
    return false;
  }

  bool verify() {
    for (size_t x = 0; x < A.objects.size(); ++x)
      if (mmap[A.identity[x]] != B.identity[omap[x]]) return false;
    for (size_t f = 0; f < A.morphisms.size(); ++f)
      for (size_t g = 0; g < A.morphisms.size(); ++g) {
        auto h = raw_compose(A, static_cast<int>(f), static_cast<int>(g));
        if (!h) continue;
        auto h2 = raw_compose(B, mmap[f], mmap[g]);
        if (!h2 || mmap[*h] != *h2) return false;
      }
    return true;
  }
};

}  // namespace detail

inline bool cats_isomorphic(const RawCat& a, const RawCat& b) {
  if (a.objects.size() != b.objects.size() || a.morphisms.size() != b.morphisms.size())
    return false;
  detail::IsoSearch s(a, b);
  std::vector<int> used(a.objects.size(), 0);
  return s.try_objects(0, used);
}

}  // namespace oracle
