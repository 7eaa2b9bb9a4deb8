#pragma once
// A small extensional dependent type theory over comprehension categories
// with full dependent type structure. The concrete syntax is line oriented;
// declarations introduce contexts, types, terms, and equality checks.
// Contexts denote iterated extensions of the terminal context, types denote
// displayed objects, and terms denote sections of their projections. In a
// finite model every type has at most one section, so elaboration validates
// the premises of each rule and then reads the denotation off the model.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catlang/typeformers.hpp"

namespace catlang::tt {

// ---------------------------------------------------------------------------
// Abstract syntax
// ---------------------------------------------------------------------------

struct TypeExpr;
struct TermExpr;
using TypePtr = std::shared_ptr<TypeExpr>;
using TermPtr = std::shared_ptr<TermExpr>;

enum class TypeKind { Unit, Prod, Eq, Sigma, Pi, Atom };
enum class TermKind { Var, TT, Pair, Fst, Snd, Refl, Lam, App };

struct TypeExpr {
  TypeKind kind = TypeKind::Unit;
  TypePtr left, right;  // Prod components; Sigma and Pi domain and body
  TermPtr lhs, rhs;     // Eq sides
  std::string name;     // Atom name; Sigma and Pi binder
  int line = 0, col = 0;
};

struct TermExpr {
  TermKind kind = TermKind::TT;
  TermPtr left, right;
  std::string name;  // Var name
  int line = 0, col = 0;
};

enum class DeclKind { Ctx, Type, Term, Check };

struct CtxEntry {
  std::string var;
  TypePtr type;
};

struct Decl {
  DeclKind kind = DeclKind::Ctx;
  std::string name;  // declared name, empty for checks
  std::string ctx;   // referenced context for type, term, and check
  std::vector<CtxEntry> entries;
  TypePtr type;  // type body, term ascription, or check ascription
  TermPtr term;  // term body or left side of a check
  TermPtr rhs;   // right side of a check
  int line = 0;
};

// ---------------------------------------------------------------------------
// Lexing and parsing
// ---------------------------------------------------------------------------

namespace detail {

struct Token {
  std::string text;
  int line = 0, col = 0;
  bool ident = false;
};

inline bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto step = [&](size_t n) {
    col += static_cast<int>(n);
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      step(1);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') ++i;
    } else if (ident_char(c)) {
      size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({src.substr(i, j - i), line, col, true});
      step(j - i);
    } else if (c == ':' && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({":=", line, col, false});
      step(2);
    } else if (c == '=' && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({"==", line, col, false});
      step(2);
    } else if (c == ':' || c == '(' || c == ')' || c == ',' || c == '=') {
      out.push_back({std::string(1, c), line, col, false});
      step(1);
    } else {
      fail("SyntaxError", "line " + std::to_string(line) + ", column " + std::to_string(col) +
                              ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return out;
}

inline bool reserved(const std::string& n) {
  static const char* words[] = {"ctx",   "type", "term", "check", "in",   "Unit",
                                "Prod",  "Eq",   "Sigma", "Pi",   "tt",   "pair",
                                "fst",   "snd",  "refl",  "lam",  "app"};
  for (const char* w : words)
    if (n == w) return true;
  return false;
}

struct Parser {
  std::vector<Token> ts;
  size_t pos = 0;

  bool at_end() const { return pos >= ts.size(); }
  const Token& peek() const { return ts[pos]; }

  [[noreturn]] void err(const std::string& expected) const {
    if (at_end()) {
      std::string where = ts.empty() ? "line 1, column 1"
                                     : "line " + std::to_string(ts.back().line) + ", column " +
                                           std::to_string(ts.back().col +
                                                          static_cast<int>(ts.back().text.size()));
      fail("SyntaxError", where + ": expected " + expected + ", found end of input");
    }
    fail("SyntaxError", "line " + std::to_string(peek().line) + ", column " +
                            std::to_string(peek().col) + ": expected " + expected + ", found '" +
                            peek().text + "'");
  }

  Token need_symbol(const std::string& s) {
    if (at_end() || peek().ident || peek().text != s) err("'" + s + "'");
    return ts[pos++];
  }

  Token need_ident(const std::string& what) {
    if (at_end() || !peek().ident) err(what);
    return ts[pos++];
  }

  Token need_name(const std::string& what) {
    Token t = need_ident(what);
    if (reserved(t.text))
      fail("SyntaxError", "line " + std::to_string(t.line) + ", column " + std::to_string(t.col) +
                              ": '" + t.text + "' is a reserved word");
    return t;
  }

  bool symbol_next(const std::string& s) const {
    return !at_end() && !peek().ident && peek().text == s;
  }

  void need_in() {
    Token t = need_ident("'in'");
    if (t.text != "in") {
      --pos;
      err("'in'");
    }
  }

  TermPtr term_atom() {
    if (symbol_next("(")) {
      need_symbol("(");
      TermPtr t = term();
      need_symbol(")");
      return t;
    }
    Token t = need_ident("a term");
    auto e = std::make_shared<TermExpr>();
    e->line = t.line;
    e->col = t.col;
    if (t.text == "tt") {
      e->kind = TermKind::TT;
    } else if (reserved(t.text)) {
      --pos;
      err("a term");
    } else {
      e->kind = TermKind::Var;
      e->name = t.text;
    }
    return e;
  }

  TermPtr term() {
    if (symbol_next("(")) return term_atom();
    Token t = need_ident("a term");
    auto e = std::make_shared<TermExpr>();
    e->line = t.line;
    e->col = t.col;
    if (t.text == "tt") {
      e->kind = TermKind::TT;
    } else if (t.text == "pair" || t.text == "app") {
      e->kind = t.text == "pair" ? TermKind::Pair : TermKind::App;
      e->left = term_atom();
      e->right = term_atom();
    } else if (t.text == "fst" || t.text == "snd" || t.text == "refl" || t.text == "lam") {
      e->kind = t.text == "fst"    ? TermKind::Fst
                : t.text == "snd"  ? TermKind::Snd
                : t.text == "refl" ? TermKind::Refl
                                   : TermKind::Lam;
      e->left = term_atom();
    } else if (reserved(t.text)) {
      --pos;
      err("a term");
    } else {
      e->kind = TermKind::Var;
      e->name = t.text;
    }
    return e;
  }

  TypePtr type() {
    if (symbol_next("(")) {
      need_symbol("(");
      TypePtr t = type();
      need_symbol(")");
      return t;
    }
    Token t = need_ident("a type");
    auto e = std::make_shared<TypeExpr>();
    e->line = t.line;
    e->col = t.col;
    if (t.text == "Unit") {
      e->kind = TypeKind::Unit;
    } else if (t.text == "Prod") {
      e->kind = TypeKind::Prod;
      need_symbol("(");
      e->left = type();
      need_symbol(",");
      e->right = type();
      need_symbol(")");
    } else if (t.text == "Eq") {
      e->kind = TypeKind::Eq;
      need_symbol("(");
      e->lhs = term();
      need_symbol(",");
      e->rhs = term();
      need_symbol(")");
    } else if (t.text == "Sigma" || t.text == "Pi") {
      e->kind = t.text == "Sigma" ? TypeKind::Sigma : TypeKind::Pi;
      need_symbol("(");
      e->name = need_name("a variable").text;
      need_symbol(":");
      e->left = type();
      need_symbol(")");
      e->right = type();
    } else if (reserved(t.text)) {
      --pos;
      err("a type");
    } else {
      e->kind = TypeKind::Atom;
      e->name = t.text;
    }
    return e;
  }
};

// Scope checking. Variables come from context entries and binders; bare term
// names come from earlier term declarations in the same context. Atom names
// are resolved against declared types and the model assignment later.
struct Scope {
  std::vector<std::string> vars;

  bool has(const std::string& n) const {
    for (const std::string& v : vars)
      if (v == n) return true;
    return false;
  }
};

inline void resolve_term(const TermExpr& e, const Scope& s);

inline void resolve_type(const TypeExpr& e, Scope& s) {
  switch (e.kind) {
    case TypeKind::Unit:
    case TypeKind::Atom:
      break;
    case TypeKind::Prod:
      resolve_type(*e.left, s);
      resolve_type(*e.right, s);
      break;
    case TypeKind::Eq:
      resolve_term(*e.lhs, s);
      resolve_term(*e.rhs, s);
      break;
    case TypeKind::Sigma:
    case TypeKind::Pi: {
      resolve_type(*e.left, s);
      s.vars.push_back(e.name);
      resolve_type(*e.right, s);
      s.vars.pop_back();
      break;
    }
  }
}

inline void resolve_term(const TermExpr& e, const Scope& s) {
  switch (e.kind) {
    case TermKind::Var:
      if (!s.has(e.name))
        fail("UnboundVariable", "line " + std::to_string(e.line) + ", column " +
                                    std::to_string(e.col) + ": '" + e.name + "' is not in scope");
      break;
    case TermKind::TT:
      break;
    case TermKind::Pair:
    case TermKind::App:
      resolve_term(*e.left, s);
      resolve_term(*e.right, s);
      break;
    case TermKind::Fst:
    case TermKind::Snd:
    case TermKind::Refl:
      resolve_term(*e.left, s);
      break;
    case TermKind::Lam:
      // The bound variable is named by the Pi ascription, so the body can
      // only be scope-checked during elaboration.
      break;
  }
}

}  // namespace detail

inline std::vector<Decl> parse(const std::string& src) {
  detail::Parser p{detail::tokenize(src)};
  std::vector<Decl> out;
  std::vector<std::string> declared;  // all declared names share one namespace
  std::map<std::string, std::vector<std::string>> ctx_vars;
  std::map<std::string, std::vector<std::string>> ctx_terms;  // term names per context
  auto declare = [&](const detail::Token& t) {
    for (const std::string& d : declared)
      if (d == t.text)
        fail("SyntaxError", "line " + std::to_string(t.line) + ": the name '" + t.text +
                                "' is already declared");
    declared.push_back(t.text);
  };
  auto need_ctx = [&](const detail::Token& t) {
    if (!ctx_vars.count(t.text))
      fail("UnboundVariable", "line " + std::to_string(t.line) + ", column " +
                                  std::to_string(t.col) + ": context '" + t.text +
                                  "' is not declared");
    return t.text;
  };
  int prev_line = 0;
  while (!p.at_end()) {
    if (p.peek().line <= prev_line)
      fail("SyntaxError", "line " + std::to_string(p.peek().line) + ", column " +
                              std::to_string(p.peek().col) +
                              ": expected a line break before the next declaration");
    detail::Token kw = p.need_ident("'ctx', 'type', 'term', or 'check'");
    Decl d;
    d.line = kw.line;
    if (kw.text == "ctx") {
      d.kind = DeclKind::Ctx;
      detail::Token name = p.need_name("a context name");
      declare(name);
      d.name = name.text;
      p.need_symbol(":=");
      p.need_symbol("(");
      detail::Scope s;
      if (!p.symbol_next(")")) {
        while (true) {
          detail::Token v = p.need_name("a variable");
          if (s.has(v.text))
            fail("SyntaxError", "line " + std::to_string(v.line) + ": the variable '" + v.text +
                                    "' is already bound in this context");
          p.need_symbol(":");
          TypePtr ty = p.type();
          detail::resolve_type(*ty, s);
          d.entries.push_back({v.text, ty});
          s.vars.push_back(v.text);
          if (p.symbol_next(",")) {
            p.need_symbol(",");
            continue;
          }
          break;
        }
      }
      p.need_symbol(")");
      ctx_vars[d.name] = s.vars;
      ctx_terms[d.name] = {};
    } else if (kw.text == "type" || kw.text == "term") {
      detail::Token name = p.need_name(kw.text == "type" ? "a type name" : "a term name");
      declare(name);
      d.name = name.text;
      if (kw.text == "type") {
        d.kind = DeclKind::Type;
        p.need_in();
        d.ctx = need_ctx(p.need_name("a context name"));
        p.need_symbol(":=");
        d.type = p.type();
        detail::Scope s{ctx_vars[d.ctx]};
        detail::resolve_type(*d.type, s);
      } else {
        d.kind = DeclKind::Term;
        p.need_symbol(":");
        d.type = p.type();
        p.need_in();
        d.ctx = need_ctx(p.need_name("a context name"));
        p.need_symbol(":=");
        d.term = p.term();
        detail::Scope s{ctx_vars[d.ctx]};
        detail::resolve_type(*d.type, s);
        for (const std::string& t : ctx_terms[d.ctx]) s.vars.push_back(t);
        detail::resolve_term(*d.term, s);
        ctx_terms[d.ctx].push_back(d.name);
      }
    } else if (kw.text == "check") {
      d.kind = DeclKind::Check;
      d.term = p.term();
      p.need_symbol("==");
      d.rhs = p.term();
      p.need_symbol(":");
      d.type = p.type();
      p.need_in();
      d.ctx = need_ctx(p.need_name("a context name"));
      detail::Scope s{ctx_vars[d.ctx]};
      detail::resolve_type(*d.type, s);
      for (const std::string& t : ctx_terms[d.ctx]) s.vars.push_back(t);
      detail::resolve_term(*d.term, s);
      detail::resolve_term(*d.rhs, s);
    } else {
      --p.pos;
      p.err("'ctx', 'type', 'term', or 'check'");
    }
    prev_line = p.ts[p.pos - 1].line;
    out.push_back(std::move(d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Denotations
// ---------------------------------------------------------------------------

struct SemCtx {
  std::string name;
  int obj = -1;                    // the iterated extension
  std::vector<int> prefix_objs;    // terminal, then each extension stage
  std::vector<int> stage_projs;    // stage projections, innermost last
  std::vector<std::string> vars;   // entry names in order
  std::vector<TypePtr> asts;       // entry types as written
  std::vector<Term> sections;      // entry variables weakened to the full context
};

struct SemType {
  std::string name, ctx;
  TypePtr ast;
  int dobj = -1;
  // Filled for dependent sums: the strength comparison of the denotation.
  int sigma_type = -1, sigma_argument = -1, sigma_comparison = -1, sigma_inverse = -1;
};

struct SemTerm {
  std::string name, ctx;
  TypePtr ast;
  int type_dobj = -1;
  Term term;
};

struct CheckResult {
  std::string ctx;
  int line = 0;
  bool equal = false;
  int left = -1, right = -1;  // the denoted sections
  int eq_type = -1;           // the identity type of the two sides
  bool eq_inhabited = false;
};

struct Interpretation {
  std::map<std::string, SemCtx> contexts;
  std::map<std::string, SemType> types;
  std::map<std::string, SemTerm> terms;
  std::vector<std::string> context_order, type_order, term_order;
  std::vector<CheckResult> checks;

  bool all_equal() const {
    for (const CheckResult& c : checks)
      if (!c.equal) return false;
    return true;
  }
};

// Semantic equality of two denoted terms: equality of their sections as base
// morphisms. Both sides must be interpreted at one type in one context.
inline bool check_equal(const CompCat& k, const Term& a, const Term& b) {
  (void)k;
  if (a.ctx != b.ctx || a.type != b.type)
    fail("TypeMismatch", "compared terms must share a context and a type");
  return a.section == b.section;
}

namespace detail {

struct Model {
  const CompCat* k = nullptr;
  UnitStructure unit;
  SigmaStructure sigma;
  std::optional<PiStructure> pi;
  bool pi_tried = false;
  std::string pi_error;
  const std::map<std::string, int>* atoms = nullptr;

  PiStructure& need_pi() {
    if (!pi_tried) {
      pi_tried = true;
      try {
        pi = check_pi_types(*k);
      } catch (const Error& e) {
        pi_error = e.what();
      }
    }
    if (!pi)
      fail("FormerUnavailable", "dependent products are unavailable in this model: " + pi_error);
    return *pi;
  }
};

// Where a type is being read: the chain of context extensions leading to the
// current object. Atoms denoted over an earlier stage are weakened along the
// composite projection; the latest occurrence of a stage object wins.
struct Ambient {
  std::vector<int> objs;
  std::vector<int> projs;  // projs[i] : objs[i + 1] -> objs[i]
  std::string root_ctx;    // the declared context, for atom dereferencing
  bool extended = false;

  int obj() const { return objs.back(); }
};

struct EnvEntry {
  std::string name;
  Term term;    // at the ambient object
  TypePtr ast;  // the type as written, for structural rules; may be null
};

using Env = std::vector<EnvEntry>;

inline std::string dobj_name(const Model& m, int d) { return m.k->types->dobj(d).name; }

// A vertical isomorphism between two types over one object, or nothing.
inline std::optional<std::pair<int, int>> vertical_iso(const CompCat& k, int obj, int a, int b) {
  if (a == b) {
    int d = k.types->didentity(a);
    return std::make_pair(d, d);
  }
  for (int v : k.types->dhom_over(a, b, k.base->identity(obj))) {
    int w = vertical_inverse(*k.types, v);
    if (w >= 0) return std::make_pair(v, w);
  }
  return std::nullopt;
}

inline bool compatible(const Model& m, int obj, int a, int b) {
  return vertical_iso(*m.k, obj, a, b).has_value();
}

// The denotation of a well-premised term: the section of its type, which is
// unique in a finite model when it exists.
inline Term section_of(const Model& m, int obj, int type, int line) {
  std::vector<Term> secs = terms(*m.k, obj, type);
  if (secs.empty())
    fail("NotASection", "line " + std::to_string(line) + ": the type " + dobj_name(m, type) +
                            " has no section over " + m.k->base->object(obj));
  return secs.front();
}

inline int denote_type(Model& m, const Interpretation& I, const Ambient& am, const Env& env,
                       const TypePtr& ast);

// Dereference an atom to the body of a type declared in the ambient root
// context. Used for structural rules that need the shape of a type.
inline TypePtr deref(const Interpretation& I, const Ambient& am, TypePtr ast) {
  while (ast && ast->kind == TypeKind::Atom && !am.extended) {
    auto it = I.types.find(ast->name);
    if (it == I.types.end() || it->second.ctx != am.root_ctx) break;
    ast = it->second.ast;
  }
  return ast;
}

struct Synth {
  TypePtr ast;  // null when the type has no reusable syntactic shape
  int dobj = -1;
  Term term;
};

inline bool occurs_in_type(const std::string& n, const TypeExpr& e);

inline bool occurs_in_term(const std::string& n, const TermExpr& e) {
  switch (e.kind) {
    case TermKind::Var:
      return e.name == n;
    case TermKind::TT:
      return false;
    case TermKind::Pair:
    case TermKind::App:
      return occurs_in_term(n, *e.left) || occurs_in_term(n, *e.right);
    case TermKind::Fst:
    case TermKind::Snd:
    case TermKind::Refl:
    case TermKind::Lam:
      return occurs_in_term(n, *e.left);
  }
  return false;
}

inline bool occurs_in_type(const std::string& n, const TypeExpr& e) {
  switch (e.kind) {
    case TypeKind::Unit:
    case TypeKind::Atom:
      return false;
    case TypeKind::Prod:
      return occurs_in_type(n, *e.left) || occurs_in_type(n, *e.right);
    case TypeKind::Eq:
      return occurs_in_term(n, *e.lhs) || occurs_in_term(n, *e.rhs);
    case TypeKind::Sigma:
    case TypeKind::Pi:
      return occurs_in_type(n, *e.left) ||
             (e.name != n && occurs_in_type(n, *e.right));
  }
  return false;
}

inline Synth synth_term(Model& m, const Interpretation& I, const Ambient& am, const Env& env,
                        const TermPtr& e);

inline Term check_term(Model& m, const Interpretation& I, const Ambient& am, const Env& env,
                       const TermPtr& e, const TypePtr& want_ast, int want_dobj);

// Weaken every environment entry along a context projection.
inline Env weaken_env(const Model& m, const Env& env, int proj) {
  Env out;
  out.reserve(env.size());
  for (const EnvEntry& en : env)
    out.push_back({en.name, subst_term(*m.k, proj, en.term), en.ast});
  return out;
}

inline int fiber_product(const Model& m, int obj, int a, int b, int line) {
  Fiber fib = fiber_category(m.k->types, obj);
  auto w = find_universal(*fib.cat, Diagram::product(fib.obj_of_dobj(a), fib.obj_of_dobj(b)));
  if (!w)
    fail("FormerUnavailable", "line " + std::to_string(line) + ": no fiberwise product of " +
                                  dobj_name(m, a) + " and " + dobj_name(m, b));
  return fib.obj_to_dobj[static_cast<size_t>(w->apex)];
}

inline int weaken_to_ambient(Model& m, const Ambient& am, int dobj, const std::string& name,
                             int line) {
  int over = m.k->types->dobj(dobj).over;
  for (int i = static_cast<int>(am.objs.size()) - 1; i >= 0; --i) {
    if (am.objs[static_cast<size_t>(i)] != over) continue;
    int cur = dobj;
    // Weaken stage by stage so the result matches the iterated substitutions
    // used elsewhere in the elaborator.
    for (size_t j = static_cast<size_t>(i); j < am.projs.size(); ++j)
      cur = subst_type(*m.k, am.projs[j], cur).type;
    return cur;
  }
  fail("TypeMismatch", "line " + std::to_string(line) + ": the atomic type " + name +
                           " lives over " + m.k->base->object(over) +
                           ", which is not a stage of this context");
}

inline int denote_type(Model& m, const Interpretation& I, const Ambient& am, const Env& env,
                       const TypePtr& ast) {
  const CompCat& k = *m.k;
  switch (ast->kind) {
    case TypeKind::Unit:
      return m.unit.unit[static_cast<size_t>(am.obj())];
    case TypeKind::Prod: {
      int a = denote_type(m, I, am, env, ast->left);
      int b = denote_type(m, I, am, env, ast->right);
      return fiber_product(m, am.obj(), a, b, ast->line);
    }
    case TypeKind::Eq: {
      Synth s = synth_term(m, I, am, env, ast->lhs);
      Term u = check_term(m, I, am, env, ast->rhs, s.ast, s.dobj);
      return ext_id_type(k, s.term, u);
    }
    case TypeKind::Sigma: {
      int a = denote_type(m, I, am, env, ast->left);
      CtxExtension e = ctx_extend(k, am.obj(), a);
      Ambient inner = am;
      inner.objs.push_back(e.extension);
      inner.projs.push_back(e.projection);
      inner.extended = true;
      Env benv = weaken_env(m, env, e.projection);
      benv.push_back({ast->name, var_term(k, am.obj(), a), ast->left});
      int b = denote_type(m, I, inner, benv, ast->right);
      for (const SigmaComparison& sc : m.sigma.comparisons)
        if (sc.type == a && sc.argument == b) return sc.sum;
      fail("FormerUnavailable", "line " + std::to_string(ast->line) +
                                    ": no dependent sum of " + dobj_name(m, b) + " over " +
                                    dobj_name(m, a));
    }
    case TypeKind::Pi: {
      PiStructure& pi = m.need_pi();
      int a = denote_type(m, I, am, env, ast->left);
      CtxExtension e = ctx_extend(k, am.obj(), a);
      Ambient inner = am;
      inner.objs.push_back(e.extension);
      inner.projs.push_back(e.projection);
      inner.extended = true;
      Env benv = weaken_env(m, env, e.projection);
      benv.push_back({ast->name, var_term(k, am.obj(), a), ast->left});
      int b = denote_type(m, I, inner, benv, ast->right);
      const TypeAdjoint& ta = pi.adjoints[static_cast<size_t>(a)];
      int bi = ta.weakening.to.obj_of_dobj(b);
      return ta.weakening.from.obj_to_dobj[static_cast<size_t>(ta.adj.right.obj(bi))];
    }
    case TypeKind::Atom: {
      auto it = I.types.find(ast->name);
      if (it != I.types.end())
        return weaken_to_ambient(m, am, it->second.dobj, ast->name, ast->line);
      auto at = m.atoms->find(ast->name);
      if (at == m.atoms->end())
        fail("FormerUnavailable", "line " + std::to_string(ast->line) + ": the atomic type " +
                                      ast->name + " has no interpretation in this model");
      return weaken_to_ambient(m, am, at->second, ast->name, ast->line);
    }
  }
  fail("SyntaxError", "unreachable type form");
}

inline std::string term_head(const TermExpr& e) {
  switch (e.kind) {
    case TermKind::Var:
      return "'" + e.name + "'";
    case TermKind::TT:
      return "tt";
    case TermKind::Pair:
      return "a pair";
    case TermKind::Fst:
      return "a first projection";
    case TermKind::Snd:
      return "a second projection";
    case TermKind::Refl:
      return "refl";
    case TermKind::Lam:
      return "a lambda";
    case TermKind::App:
      return "an application";
  }
  return "a term";
}

inline Synth synth_term(Model& m, const Interpretation& I, const Ambient& am, const Env& env,
                        const TermPtr& e) {
  const CompCat& k = *m.k;
  switch (e->kind) {
    case TermKind::Var: {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->name == e->name) return {it->ast, it->term.type, it->term};
      auto t = I.terms.find(e->name);
      if (t != I.terms.end() && I.contexts.at(t->second.ctx).obj == am.obj())
        return {t->second.ast, t->second.term.type, t->second.term};
      fail("UnboundVariable", "line " + std::to_string(e->line) + ", column " +
                                  std::to_string(e->col) + ": '" + e->name + "' is not in scope");
    }
    case TermKind::TT: {
      int u = m.unit.unit[static_cast<size_t>(am.obj())];
      auto ast = std::make_shared<TypeExpr>();
      ast->kind = TypeKind::Unit;
      ast->line = e->line;
      return {ast, u, section_of(m, am.obj(), u, e->line)};
    }
    case TermKind::Pair: {
      Synth l = synth_term(m, I, am, env, e->left);
      Synth r = synth_term(m, I, am, env, e->right);
      TypePtr ast;
      if (l.ast && r.ast) {
        ast = std::make_shared<TypeExpr>();
        ast->kind = TypeKind::Prod;
        ast->left = l.ast;
        ast->right = r.ast;
        ast->line = e->line;
      }
      int d = fiber_product(m, am.obj(), l.dobj, r.dobj, e->line);
      return {ast, d, section_of(m, am.obj(), d, e->line)};
    }
    case TermKind::Refl: {
      Synth s = synth_term(m, I, am, env, e->left);
      auto ast = std::make_shared<TypeExpr>();
      ast->kind = TypeKind::Eq;
      ast->lhs = e->left;
      ast->rhs = e->left;
      ast->line = e->line;
      int d = ext_id_type(k, s.term, s.term);
      return {ast, d, section_of(m, am.obj(), d, e->line)};
    }
    case TermKind::Fst:
    case TermKind::Snd: {
      Synth s = synth_term(m, I, am, env, e->left);
      TypePtr shape = deref(I, am, s.ast);
      if (!shape || (shape->kind != TypeKind::Prod && shape->kind != TypeKind::Sigma))
        fail("TypeMismatch", "line " + std::to_string(e->line) + ": " + term_head(*e->left) +
                                 " does not have a pair type here");
      if (e->kind == TermKind::Fst) {
        int d = denote_type(m, I, am, env, shape->left);
        return {shape->left, d, section_of(m, am.obj(), d, e->line)};
      }
      if (shape->kind == TypeKind::Prod) {
        int d = denote_type(m, I, am, env, shape->right);
        return {shape->right, d, section_of(m, am.obj(), d, e->line)};
      }
      int a = denote_type(m, I, am, env, shape->left);
      Term f = section_of(m, am.obj(), a, e->line);
      Env benv = env;
      benv.push_back({shape->name, f, shape->left});
      int d = denote_type(m, I, am, benv, shape->right);
      TypePtr rast = occurs_in_type(shape->name, *shape->right) ? nullptr : shape->right;
      return {rast, d, section_of(m, am.obj(), d, e->line)};
    }
    case TermKind::App: {
      Synth s = synth_term(m, I, am, env, e->left);
      TypePtr shape = deref(I, am, s.ast);
      if (!shape || shape->kind != TypeKind::Pi)
        fail("TypeMismatch", "line " + std::to_string(e->line) + ": " + term_head(*e->left) +
                                 " does not have a dependent product type here");
      int a = denote_type(m, I, am, env, shape->left);
      Term u = check_term(m, I, am, env, e->right, shape->left, a);
      Env benv = env;
      benv.push_back({shape->name, u, shape->left});
      int d = denote_type(m, I, am, benv, shape->right);
      TypePtr rast = occurs_in_type(shape->name, *shape->right) ? nullptr : shape->right;
      return {rast, d, section_of(m, am.obj(), d, e->line)};
    }
    case TermKind::Lam:
      fail("TypeMismatch",
           "line " + std::to_string(e->line) + ": cannot infer a type for a lambda");
  }
  fail("SyntaxError", "unreachable term form");
}

inline Term check_term(Model& m, const Interpretation& I, const Ambient& am, const Env& env,
                       const TermPtr& e, const TypePtr& want_ast, int want_dobj) {
  const CompCat& k = *m.k;
  TypePtr shape = deref(I, am, want_ast);
  switch (e->kind) {
    case TermKind::TT: {
      int u = m.unit.unit[static_cast<size_t>(am.obj())];
      if (!compatible(m, am.obj(), u, want_dobj))
        fail("TypeMismatch", "line " + std::to_string(e->line) +
                                 ": tt is a section of the unit type, not of " +
                                 dobj_name(m, want_dobj));
      break;
    }
    case TermKind::Pair: {
      if (!shape || (shape->kind != TypeKind::Prod && shape->kind != TypeKind::Sigma))
        fail("TypeMismatch", "line " + std::to_string(e->line) +
                                 ": a pair checks only at a product or sum type, not at " +
                                 dobj_name(m, want_dobj));
      int a = denote_type(m, I, am, env, shape->left);
      Term l = check_term(m, I, am, env, e->left, shape->left, a);
      if (shape->kind == TypeKind::Prod) {
        int b = denote_type(m, I, am, env, shape->right);
        check_term(m, I, am, env, e->right, shape->right, b);
      } else {
        Env benv = env;
        benv.push_back({shape->name, l, shape->left});
        int b = denote_type(m, I, am, benv, shape->right);
        check_term(m, I, am, benv, e->right, shape->right, b);
      }
      break;
    }
    case TermKind::Refl: {
      if (!shape || shape->kind != TypeKind::Eq)
        fail("TypeMismatch", "line " + std::to_string(e->line) +
                                 ": refl checks only at an identity type, not at " +
                                 dobj_name(m, want_dobj));
      Synth s = synth_term(m, I, am, env, e->left);
      Synth l = synth_term(m, I, am, env, shape->lhs);
      if (!compatible(m, am.obj(), s.dobj, l.dobj))
        fail("TypeMismatch", "line " + std::to_string(e->line) +
                                 ": refl compares terms of one type, got " + dobj_name(m, s.dobj) +
                                 " and " + dobj_name(m, l.dobj));
      break;
    }
    case TermKind::Lam: {
      if (!shape || shape->kind != TypeKind::Pi)
        fail("TypeMismatch", "line " + std::to_string(e->line) +
                                 ": a lambda checks only at a dependent product type, not at " +
                                 dobj_name(m, want_dobj));
      m.need_pi();
      int a = denote_type(m, I, am, env, shape->left);
      CtxExtension ex = ctx_extend(k, am.obj(), a);
      Ambient inner = am;
      inner.objs.push_back(ex.extension);
      inner.projs.push_back(ex.projection);
      inner.extended = true;
      Env benv = weaken_env(m, env, ex.projection);
      benv.push_back({shape->name, var_term(k, am.obj(), a), shape->left});
      int b = denote_type(m, I, inner, benv, shape->right);
      check_term(m, I, inner, benv, e->left, shape->right, b);
      break;
    }
    case TermKind::Var:
    case TermKind::Fst:
    case TermKind::Snd:
    case TermKind::App: {
      Synth s = synth_term(m, I, am, env, e);
      if (!compatible(m, am.obj(), s.dobj, want_dobj))
        fail("TypeMismatch", "line " + std::to_string(e->line) + ": " + term_head(*e) +
                                 " has type " + dobj_name(m, s.dobj) + " but " +
                                 dobj_name(m, want_dobj) + " is expected");
      break;
    }
  }
  return section_of(m, am.obj(), want_dobj, e->line);
}

inline Ambient ambient_of(const SemCtx& sc) {
  return {sc.prefix_objs, sc.stage_projs, sc.name, false};
}

inline Env env_of(const SemCtx& sc) {
  Env env;
  for (size_t i = 0; i < sc.vars.size(); ++i)
    env.push_back({sc.vars[i], sc.sections[i], sc.asts[i]});
  return env;
}

}  // namespace detail

// Interpret a declaration list in a comprehension category with full
// dependent type structure. The assignment maps atomic type names to
// displayed objects of the model; atoms over an earlier context stage are
// weakened along the projections.
inline Interpretation interpret(const std::vector<Decl>& decls, const CompCat& k,
                                const std::map<std::string, int>& atoms) {
  DFLReport gate = check_dfl(k);
  if (!gate.pass)
    fail("DFLCheckFailed", "the model lacks dependent type structure: " + gate.failure);
  detail::Model m;
  m.k = &k;
  m.unit = *gate.unit;
  m.sigma = *gate.sigma;
  m.atoms = &atoms;

  Interpretation I;
  for (const Decl& d : decls) {
    switch (d.kind) {
      case DeclKind::Ctx: {
        SemCtx sc;
        sc.name = d.name;
        sc.obj = k.terminal;
        sc.prefix_objs = {k.terminal};
        for (const CtxEntry& en : d.entries) {
          detail::Ambient am = detail::ambient_of(sc);
          detail::Env env = detail::env_of(sc);
          int dobj = detail::denote_type(m, I, am, env, en.type);
          CtxExtension e = ctx_extend(k, sc.obj, dobj);
          for (Term& t : sc.sections) t = subst_term(k, e.projection, t);
          sc.sections.push_back(var_term(k, sc.obj, dobj));
          sc.vars.push_back(en.var);
          sc.asts.push_back(en.type);
          sc.obj = e.extension;
          sc.prefix_objs.push_back(e.extension);
          sc.stage_projs.push_back(e.projection);
        }
        I.contexts[d.name] = std::move(sc);
        I.context_order.push_back(d.name);
        break;
      }
      case DeclKind::Type: {
        const SemCtx& sc = I.contexts.at(d.ctx);
        detail::Ambient am = detail::ambient_of(sc);
        detail::Env env = detail::env_of(sc);
        SemType st;
        st.name = d.name;
        st.ctx = d.ctx;
        st.ast = d.type;
        st.dobj = detail::denote_type(m, I, am, env, d.type);
        if (d.type->kind == TypeKind::Sigma) {
          int a = detail::denote_type(m, I, am, env, d.type->left);
          CtxExtension e = ctx_extend(k, sc.obj, a);
          detail::Ambient inner = am;
          inner.objs.push_back(e.extension);
          inner.projs.push_back(e.projection);
          inner.extended = true;
          detail::Env benv = detail::weaken_env(m, env, e.projection);
          benv.push_back({d.type->name, var_term(k, sc.obj, a), d.type->left});
          int b = detail::denote_type(m, I, inner, benv, d.type->right);
          for (const SigmaComparison& c : m.sigma.comparisons)
            if (c.type == a && c.argument == b) {
              st.sigma_type = a;
              st.sigma_argument = b;
              st.sigma_comparison = c.comparison;
              st.sigma_inverse = c.inverse;
            }
        }
        I.types[d.name] = std::move(st);
        I.type_order.push_back(d.name);
        break;
      }
      case DeclKind::Term: {
        const SemCtx& sc = I.contexts.at(d.ctx);
        detail::Ambient am = detail::ambient_of(sc);
        detail::Env env = detail::env_of(sc);
        int want = detail::denote_type(m, I, am, env, d.type);
        SemTerm st;
        st.name = d.name;
        st.ctx = d.ctx;
        st.ast = d.type;
        st.type_dobj = want;
        st.term = detail::check_term(m, I, am, env, d.term, d.type, want);
        I.terms[d.name] = std::move(st);
        I.term_order.push_back(d.name);
        break;
      }
      case DeclKind::Check: {
        const SemCtx& sc = I.contexts.at(d.ctx);
        detail::Ambient am = detail::ambient_of(sc);
        detail::Env env = detail::env_of(sc);
        int want = detail::denote_type(m, I, am, env, d.type);
        Term l = detail::check_term(m, I, am, env, d.term, d.type, want);
        Term r = detail::check_term(m, I, am, env, d.rhs, d.type, want);
        CheckResult res;
        res.ctx = d.ctx;
        res.line = d.line;
        res.equal = check_equal(k, l, r);
        res.left = l.section;
        res.right = r.section;
        res.eq_type = ext_id_type(k, l, r);
        res.eq_inhabited = !terms(k, sc.obj, res.eq_type).empty();
        I.checks.push_back(res);
        break;
      }
    }
  }
  return I;
}

// ---------------------------------------------------------------------------
// Semantic invariants of an interpretation
// ---------------------------------------------------------------------------

// The substitution lemma for weakening: re-reading a declared type after
// extending its context by its own denotation agrees with the semantic
// substitution along the projection, up to a constructed vertical iso.
struct SubstComparison {
  std::string name;  // the declared type or term ascription
  int direct = -1;   // substitution of the denotation along the projection
  int reread = -1;   // denotation of the syntax in the extended context
  int iso = -1, inverse = -1;
  bool ok = false;
};

inline std::vector<SubstComparison> substitution_comparisons(
    const CompCat& k, const Interpretation& I, const std::map<std::string, int>& atoms) {
  DFLReport gate = check_dfl(k);
  if (!gate.pass)
    fail("DFLCheckFailed", "the model lacks dependent type structure: " + gate.failure);
  detail::Model m;
  m.k = &k;
  m.unit = *gate.unit;
  m.sigma = *gate.sigma;
  m.atoms = &atoms;

  std::vector<SubstComparison> out;
  auto compare = [&](const std::string& name, const std::string& ctx, const TypePtr& ast,
                     int dobj) {
    const SemCtx& sc = I.contexts.at(ctx);
    CtxExtension e = ctx_extend(k, sc.obj, dobj);
    SubstComparison c;
    c.name = name;
    c.direct = subst_type(k, e.projection, dobj).type;
    detail::Ambient am = detail::ambient_of(sc);
    am.objs.push_back(e.extension);
    am.projs.push_back(e.projection);
    am.extended = true;
    detail::Env env = detail::weaken_env(m, detail::env_of(sc), e.projection);
    c.reread = detail::denote_type(m, I, am, env, ast);
    if (auto iso = detail::vertical_iso(k, e.extension, c.direct, c.reread)) {
      c.iso = iso->first;
      c.inverse = iso->second;
      c.ok = true;
    }
    out.push_back(c);
  };
  for (const std::string& n : I.type_order) {
    const SemType& t = I.types.at(n);
    compare(t.name, t.ctx, t.ast, t.dobj);
  }
  for (const std::string& n : I.term_order) {
    const SemTerm& t = I.terms.at(n);
    compare(t.name, t.ctx, t.ast, t.type_dobj);
  }
  return out;
}

// Eta for strong sums: every section of a declared Sigma type is recovered by
// pairing its two projections through the strength comparison.
struct SigmaEtaCheck {
  std::string name;
  int sections = 0;
  bool ok = true;
};

inline std::vector<SigmaEtaCheck> sigma_eta_report(const CompCat& k, const Interpretation& I) {
  std::vector<SigmaEtaCheck> out;
  for (const std::string& n : I.type_order) {
    const SemType& t = I.types.at(n);
    if (t.sigma_comparison < 0) continue;
    const SemCtx& sc = I.contexts.at(t.ctx);
    SigmaEtaCheck c;
    c.name = t.name;
    for (const Term& s : terms(k, sc.obj, t.dobj)) {
      ++c.sections;
      int split = k.base->compose(s.section, t.sigma_inverse);
      int ta = k.base->compose(split, ctx_projection(k, t.sigma_argument));
      SubstType st = subst_type(k, ta, t.sigma_argument);
      auto med = subst_square_mediators(k, ta, t.sigma_argument, st);
      Term u{sc.obj, st.type, med.at({k.base->identity(sc.obj), split})};
      int rebuilt =
          k.base->compose(pair_sub(k, ta, t.sigma_argument, u), t.sigma_comparison);
      if (rebuilt != s.section) c.ok = false;
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace catlang::tt
