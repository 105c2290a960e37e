#include "rwpe/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "rwpe/stack.hpp"
#include "syntax_internal.hpp"

namespace rwpe {

namespace detail {

// ---------------------------------------------------------------------------
// Lexer

std::vector<Token> tokenize(std::string_view text) {
  static constexpr std::string_view kSymbols[] = {
      "=>", "->", "::", ">>", "<=", ">=", "==", "!=", "&&", "||", "\\", ":", ".", "(", ")",
      "[",  "]",  ";",  ",",  "=",  "+",  "-",  "*",  "/",  "<",  ">",  "^", "'"};
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  std::size_t col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const std::size_t tl = line;
    const std::size_t tc = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({TokKind::Name, std::string(text.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({TokKind::Int, std::string(text.substr(i, j - i)), tl, tc});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::string s;
      advance(1);
      for (;;) {
        if (i >= text.size() || text[i] == '\n') throw ParseError("unterminated string literal", tl, tc);
        const char d = text[i];
        if (d == '"') {
          advance(1);
          break;
        }
        if (d == '\\' && i + 1 < text.size()) {
          const char e = text[i + 1];
          s.push_back(e == 'n' ? '\n' : e);
          advance(2);
          continue;
        }
        s.push_back(d);
        advance(1);
      }
      out.push_back({TokKind::String, std::move(s), tl, tc});
      continue;
    }
    bool matched = false;
    for (std::string_view sym : kSymbols) {
      if (text.substr(i, sym.size()) == sym) {
        out.push_back({TokKind::Sym, std::string(sym), tl, tc});
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", tl, tc);
  }
  out.push_back({TokKind::End, "", line, col});
  return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

std::shared_ptr<RawNode> raw(RawNode::Kind kind, Pos pos) {
  auto n = std::make_shared<RawNode>();
  n->kind = kind;
  n->pos = pos;
  return n;
}

bool is_keyword(std::string_view s) {
  return s == "let" || s == "in" || s == "rule" || s == "forall" || s == "when" || s == "opaque";
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokKind::End: return "end of input";
    case TokKind::String: return "string literal";
    default: return "'" + t.text + "'";
  }
}

}  // namespace

const Token& Parser::peek(std::size_t ahead) const {
  const std::size_t k = std::min(at_ + ahead, toks_.size() - 1);
  return toks_[k];
}

bool Parser::at_sym(std::string_view s, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokKind::Sym && t.text == s;
}

bool Parser::at_name(std::string_view s, std::size_t ahead) const {
  const Token& t = peek(ahead);
  return t.kind == TokKind::Name && t.text == s;
}

Token Parser::next() {
  Token t = peek();
  if (at_ < toks_.size() - 1) ++at_;
  return t;
}

void Parser::fail(const std::string& message) const { throw ParseError(message, peek().line, peek().col); }

void Parser::fail_at(Pos p, const std::string& message) { throw ParseError(message, p.line, p.col); }

void Parser::expect_sym(std::string_view s) {
  if (!at_sym(s)) fail("expected '" + std::string(s) + "' but found " + describe(peek()));
  next();
}

void Parser::expect_name(std::string_view s) {
  if (!at_name(s)) fail("expected '" + std::string(s) + "' but found " + describe(peek()));
  next();
}

std::string Parser::name() {
  if (peek().kind != TokKind::Name || is_keyword(peek().text)) fail("expected a name but found " + describe(peek()));
  return next().text;
}

Raw Parser::term() {
  const Pos p = pos();
  if (at_sym("\\")) {
    next();
    auto n = raw(RawNode::Kind::Lam, p);
    n->text = name();
    if (at_sym(":")) {
      next();
      n->type = type();
    }
    expect_sym(".");
    n->children.push_back(term());
    return n;
  }
  if (at_name("let")) {
    next();
    auto n = raw(RawNode::Kind::Let, p);
    n->text = name();
    Type annot = nullptr;
    Pos annot_pos = pos();
    if (at_sym(":")) {
      next();
      annot = type();
    }
    expect_sym("=");
    Raw rhs = term();
    if (annot) {
      auto a = raw(RawNode::Kind::Ascribe, annot_pos);
      a->type = annot;
      a->children.push_back(rhs);
      rhs = a;
    }
    expect_name("in");
    n->children.push_back(rhs);
    n->children.push_back(term());
    return n;
  }
  return cons_level();
}

Raw Parser::cons_level() {
  Raw lhs = binary_level(2);
  if (at_sym("::")) {
    const Pos p = pos();
    next();
    auto n = raw(RawNode::Kind::Infix, p);
    n->text = "::";
    Raw rhs = cons_level();
    n->children = {lhs, rhs};
    return n;
  }
  return lhs;
}

Raw Parser::binary_level(int level) {
  if (level > 4) return app_level();
  auto is_op = [&]() -> bool {
    switch (level) {
      case 2: return at_sym(">>");
      case 3: return at_sym("+") || at_sym("-");
      default: return at_sym("*") || at_sym("/");
    }
  };
  Raw lhs = binary_level(level + 1);
  while (is_op()) {
    const Pos p = pos();
    auto n = raw(RawNode::Kind::Infix, p);
    n->text = next().text;
    Raw rhs = binary_level(level + 1);
    n->children = {lhs, rhs};
    lhs = n;
  }
  return lhs;
}

bool Parser::starts_atom() const {
  const Token& t = peek();
  switch (t.kind) {
    case TokKind::Int: return true;
    case TokKind::Name: return !is_keyword(t.text);
    case TokKind::Sym: return t.text == "(" || t.text == "[" || (t.text == "'" && computed_resolver_);
    default: return false;
  }
}

Raw Parser::app_level() {
  Raw fn = atom();
  while (starts_atom()) {
    const Pos p = pos();
    auto n = raw(RawNode::Kind::App, p);
    Raw arg = atom();
    n->children = {fn, arg};
    fn = n;
  }
  return fn;
}

ClipArg Parser::clip_arg() {
  ClipArg a;
  a.pos = pos();
  if (at_sym("-") && peek(1).kind == TokKind::Int) {
    next();
    a.value = -Int(next().text);
  } else if (peek().kind == TokKind::Int) {
    a.value = Int(next().text);
  } else {
    a.is_name = true;
    a.name = name();
  }
  return a;
}

Raw Parser::atom() {
  const Pos p = pos();
  const Token& t = peek();
  if (t.kind == TokKind::Int) {
    auto n = raw(RawNode::Kind::Int, p);
    n->value = Int(next().text);
    return n;
  }
  if (t.kind == TokKind::Name && !is_keyword(t.text)) {
    const std::string s = next().text;
    if (s == "true" || s == "false") {
      auto n = raw(RawNode::Kind::Bool, p);
      n->value = s == "true" ? 1 : 0;
      return n;
    }
    if (s == "clip") {
      auto n = raw(RawNode::Kind::Clip, p);
      expect_sym("[");
      n->lo = clip_arg();
      expect_sym(",");
      n->hi = clip_arg();
      expect_sym("]");
      return n;
    }
    if (s == "comment") {
      if (peek().kind != TokKind::String) fail("expected a string literal after 'comment'");
      auto n = raw(RawNode::Kind::Comment, p);
      n->text = next().text;
      return n;
    }
    auto n = raw(RawNode::Kind::Name, p);
    n->text = s;
    return n;
  }
  if (at_sym("'") && computed_resolver_) {
    next();
    expect_sym("(");
    auto n = raw(RawNode::Kind::Computed, p);
    n->cond = cond(computed_resolver_);
    expect_sym(")");
    return n;
  }
  if (at_sym("[")) {
    next();
    auto n = raw(RawNode::Kind::List, p);
    if (at_sym("]")) {
      next();
      return n;
    }
    n->children.push_back(term());
    while (at_sym(";")) {
      next();
      n->children.push_back(term());
    }
    expect_sym("]");
    return n;
  }
  if (at_sym("(")) {
    next();
    if (at_sym(")")) {
      next();
      return raw(RawNode::Kind::Unit, p);
    }
    if (at_sym("-") && peek(1).kind == TokKind::Int && at_sym(")", 2)) {
      next();
      auto n = raw(RawNode::Kind::Int, p);
      n->value = -Int(next().text);
      next();
      return n;
    }
    Raw inner = term();
    if (at_sym(",")) {
      std::vector<Raw> elems{inner};
      while (at_sym(",")) {
        next();
        elems.push_back(term());
      }
      expect_sym(")");
      Raw acc = elems.back();
      for (std::size_t k = elems.size() - 1; k-- > 0;) {
        auto n = raw(RawNode::Kind::Tuple, p);
        n->children = {elems[k], acc};
        acc = n;
      }
      return acc;
    }
    if (at_sym(":")) {
      next();
      auto n = raw(RawNode::Kind::Ascribe, p);
      n->type = type();
      n->children.push_back(inner);
      expect_sym(")");
      return n;
    }
    expect_sym(")");
    return inner;
  }
  fail("expected a term but found " + describe(t));
}

Type Parser::type() { return arrow_type_level(); }

Type Parser::arrow_type_level() {
  Type lhs = pair_type_level();
  if (at_sym("->")) {
    next();
    return arrow_type(lhs, arrow_type_level());
  }
  return lhs;
}

Type Parser::pair_type_level() {
  const Pos p = pos();
  Type lhs = list_type_level();
  while (at_sym("*")) {
    next();
    Type rhs = list_type_level();
    try {
      lhs = pair_type(lhs, rhs);
    } catch (const TypeError& e) {
      fail_at(p, e.what());
    }
  }
  return lhs;
}

Type Parser::list_type_level() {
  const Pos p = pos();
  if (at_name("list")) {
    next();
    Type elem = list_type_level();
    try {
      return list_type(elem);
    } catch (const TypeError& e) {
      fail_at(p, e.what());
    }
  }
  if (at_name("int")) return next(), int_type();
  if (at_name("bool")) return next(), bool_type();
  if (at_name("unit")) return next(), unit_type();
  if (at_sym("(")) {
    next();
    Type t = type();
    expect_sym(")");
    return t;
  }
  fail("expected a type but found " + describe(peek()));
}

CondExpr Parser::cond(const CondResolver& resolve) { return cond_or(resolve); }

CondExpr Parser::cond_or(const CondResolver& r) {
  CondExpr lhs = cond_and(r);
  while (at_sym("||")) {
    next();
    lhs = cond_binary(CondOp::Or, lhs, cond_and(r));
  }
  return lhs;
}

CondExpr Parser::cond_and(const CondResolver& r) {
  CondExpr lhs = cond_not(r);
  while (at_sym("&&")) {
    next();
    lhs = cond_binary(CondOp::And, lhs, cond_not(r));
  }
  return lhs;
}

CondExpr Parser::cond_not(const CondResolver& r) {
  if (at_name("not")) {
    next();
    return rwpe::cond_unary(CondOp::Not, cond_not(r));
  }
  return cond_cmp(r);
}

CondExpr Parser::cond_cmp(const CondResolver& r) {
  CondExpr lhs = cond_sum(r);
  if (at_sym("==")) return next(), cond_binary(CondOp::Eq, lhs, cond_sum(r));
  if (at_sym("!=")) return next(), rwpe::cond_unary(CondOp::Not, cond_binary(CondOp::Eq, lhs, cond_sum(r)));
  if (at_sym("<")) return next(), cond_binary(CondOp::Lt, lhs, cond_sum(r));
  if (at_sym("<=")) return next(), cond_binary(CondOp::Le, lhs, cond_sum(r));
  if (at_sym(">")) return next(), cond_binary(CondOp::Lt, cond_sum(r), lhs);
  if (at_sym(">=")) return next(), cond_binary(CondOp::Le, cond_sum(r), lhs);
  return lhs;
}

CondExpr Parser::cond_sum(const CondResolver& r) {
  CondExpr lhs = cond_prod(r);
  while (at_sym("+") || at_sym("-")) {
    const CondOp op = next().text == "+" ? CondOp::Add : CondOp::Sub;
    lhs = cond_binary(op, lhs, cond_prod(r));
  }
  return lhs;
}

CondExpr Parser::cond_prod(const CondResolver& r) {
  CondExpr lhs = cond_pow(r);
  while (at_sym("*")) {
    next();
    lhs = cond_binary(CondOp::Mul, lhs, cond_pow(r));
  }
  return lhs;
}

CondExpr Parser::cond_pow(const CondResolver& r) {
  CondExpr lhs = cond_unary(r);
  if (at_sym("^")) {
    next();
    return cond_binary(CondOp::Pow, lhs, cond_pow(r));
  }
  return lhs;
}

CondExpr Parser::cond_unary(const CondResolver& r) {
  const Pos p = pos();
  if (at_name("log2floor")) {
    next();
    return rwpe::cond_unary(CondOp::Log2Floor, cond_unary(r));
  }
  if (at_sym("-")) {
    next();
    if (peek().kind == TokKind::Int) return cond_lit(-Int(next().text));
    return cond_binary(CondOp::Sub, cond_lit(0), cond_unary(r));
  }
  if (peek().kind == TokKind::Int) return cond_lit(Int(next().text));
  if (at_name("true")) return next(), cond_bool(true);
  if (at_name("false")) return next(), cond_bool(false);
  if (at_sym("(")) {
    next();
    CondExpr inner = cond_or(r);
    expect_sym(")");
    return inner;
  }
  const std::string n = name();
  return cond_var(r(n, p));
}

// ---------------------------------------------------------------------------
// Elaboration with type inference

namespace {

struct MNode;
using MType = std::shared_ptr<MNode>;

struct MNode {
  bool meta = false;
  TypeKind kind = TypeKind::Int;
  MType a;
  MType b;
  MType link;  // binding of a solved metavariable
};

MType new_meta() {
  auto m = std::make_shared<MNode>();
  m->meta = true;
  return m;
}

MType mcon(TypeKind k, MType a = nullptr, MType b = nullptr) {
  auto m = std::make_shared<MNode>();
  m->kind = k;
  m->a = std::move(a);
  m->b = std::move(b);
  return m;
}

MType marrow(MType a, MType b) { return mcon(TypeKind::Arrow, std::move(a), std::move(b)); }
MType mlist(MType a) { return mcon(TypeKind::List, std::move(a)); }
MType mpair(MType a, MType b) { return mcon(TypeKind::Pair, std::move(a), std::move(b)); }
MType mint() { return mcon(TypeKind::Int); }

MType from_type(Type t) {
  switch (t->kind) {
    case TypeKind::Int:
    case TypeKind::Bool:
    case TypeKind::Unit: return mcon(t->kind);
    case TypeKind::List: return mlist(from_type(t->first));
    default: return mcon(t->kind, from_type(t->first), from_type(t->second));
  }
}

MType find(MType t) {
  while (t->meta && t->link) t = t->link;
  return t;
}

std::string show(const MType& t0, int prec = 0) {
  MType t = find(t0);
  if (t->meta) return "?";
  switch (t->kind) {
    case TypeKind::Int: return "int";
    case TypeKind::Bool: return "bool";
    case TypeKind::Unit: return "unit";
    case TypeKind::List: {
      std::string s = "list " + show(t->a, 3);
      return prec > 3 ? "(" + s + ")" : s;
    }
    case TypeKind::Pair: {
      std::string s = show(t->a, 2) + " * " + show(t->b, 3);
      return prec > 1 ? "(" + s + ")" : s;
    }
    case TypeKind::Arrow: {
      std::string s = show(t->a, 1) + " -> " + show(t->b, 0);
      return prec > 0 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

bool occurs(const MType& m, const MType& t0) {
  MType t = find(t0);
  if (t == m) return true;
  if (t->meta) return false;
  return (t->a && occurs(m, t->a)) || (t->b && occurs(m, t->b));
}

bool unify(const MType& x0, const MType& y0) {
  MType x = find(x0);
  MType y = find(y0);
  if (x == y) return true;
  if (x->meta) {
    if (occurs(x, y)) return false;
    x->link = y;
    return true;
  }
  if (y->meta) return unify(y, x);
  if (x->kind != y->kind) return false;
  if (x->a && !unify(x->a, y->a)) return false;
  if (x->b && !unify(x->b, y->b)) return false;
  return true;
}

Type resolve(const MType& t0) {
  MType t = find(t0);
  if (t->meta) {
    t->link = mint();
    return int_type();
  }
  switch (t->kind) {
    case TypeKind::Int: return int_type();
    case TypeKind::Bool: return bool_type();
    case TypeKind::Unit: return unit_type();
    case TypeKind::List: return list_type(resolve(t->a));
    case TypeKind::Pair: return pair_type(resolve(t->a), resolve(t->b));
    case TypeKind::Arrow: return arrow_type(resolve(t->a), resolve(t->b));
  }
  return int_type();
}

struct Binder {
  VarId id;
  std::string name;
  MType type;
};

/// A resolved clip bound: a pattern variable index or a literal.
struct ClipRef {
  int var = -1;
  Int value;
};

struct ENode;
using ETerm = std::shared_ptr<ENode>;

struct ENode {
  enum class Kind { Bound, Free, Auto, PatVar, Computed, Abs, App, Let, Builtin } kind;
  Pos pos;
  MType type;
  std::shared_ptr<Binder> binder;  // Bound, Abs, Let
  Expr free;                       // Free
  std::string name;                // Auto
  int index = -1;                  // PatVar, Computed
  ETerm a;
  ETerm b;
  // Builtin
  IdentTag tag = IdentTag::IntLit;
  std::vector<MType> params;
  Int i0;
  std::string text;
  ClipRef lo;
  ClipRef hi;
  std::optional<Ident> opaque;
};

ETerm enode(ENode::Kind k, Pos p, MType t) {
  auto n = std::make_shared<ENode>();
  n->kind = k;
  n->pos = p;
  n->type = std::move(t);
  return n;
}

const std::map<std::string, IdentTag, std::less<>>& builtin_names() {
  static const std::map<std::string, IdentTag, std::less<>> names = {
      {"add", IdentTag::Add},       {"sub", IdentTag::Sub},
      {"mul", IdentTag::Mul},       {"div", IdentTag::Div},
      {"shr", IdentTag::Shr},       {"pow", IdentTag::Pow},
      {"log2floor", IdentTag::Log2Floor}, {"awc64", IdentTag::AddWithCarry64},
      {"fst", IdentTag::Fst},       {"snd", IdentTag::Snd},
      {"pair", IdentTag::PairMk},   {"cons", IdentTag::Cons},
      {"nil", IdentTag::Nil},       {"map", IdentTag::Map},
      {"list_rect", IdentTag::ListRect}, {"nat_rect", IdentTag::NatRect},
  };
  return names;
}

/// Builtin node with fresh type parameters.
ETerm builtin(IdentTag tag, Pos p) {
  auto n = enode(ENode::Kind::Builtin, p, nullptr);
  n->tag = tag;
  auto& ps = n->params;
  switch (tag) {
    case IdentTag::Add:
    case IdentTag::Sub:
    case IdentTag::Mul:
    case IdentTag::Div:
    case IdentTag::Shr:
    case IdentTag::Pow:
    case IdentTag::AddWithCarry64:
    case IdentTag::Log2Floor: n->type = from_type(Ident::prim(tag).type()); break;
    case IdentTag::Fst:
    case IdentTag::Snd:
    case IdentTag::PairMk: {
      ps = {new_meta(), new_meta()};
      const MType pr = mpair(ps[0], ps[1]);
      if (tag == IdentTag::Fst) n->type = marrow(pr, ps[0]);
      if (tag == IdentTag::Snd) n->type = marrow(pr, ps[1]);
      if (tag == IdentTag::PairMk) n->type = marrow(ps[0], marrow(ps[1], pr));
      break;
    }
    case IdentTag::Cons:
      ps = {new_meta()};
      n->type = marrow(ps[0], marrow(mlist(ps[0]), mlist(ps[0])));
      break;
    case IdentTag::Nil:
      ps = {new_meta()};
      n->type = mlist(ps[0]);
      break;
    case IdentTag::Map:
      ps = {new_meta(), new_meta()};
      n->type = marrow(marrow(ps[0], ps[1]), marrow(mlist(ps[0]), mlist(ps[1])));
      break;
    case IdentTag::ListRect: {
      ps = {new_meta(), new_meta()};
      const MType l = mlist(ps[0]);
      const MType step = marrow(ps[0], marrow(l, marrow(ps[1], ps[1])));
      n->type = marrow(ps[1], marrow(step, marrow(l, ps[1])));
      break;
    }
    case IdentTag::NatRect: {
      ps = {new_meta()};
      const MType step = marrow(mint(), marrow(ps[0], ps[0]));
      n->type = marrow(ps[0], marrow(step, marrow(mint(), ps[0])));
      break;
    }
    case IdentTag::Comment:
      ps = {new_meta()};
      n->type = marrow(ps[0], ps[0]);
      break;
    case IdentTag::IntLit: n->type = mint(); break;
    case IdentTag::BoolLit: n->type = mcon(TypeKind::Bool); break;
    case IdentTag::UnitLit: n->type = mcon(TypeKind::Unit); break;
    case IdentTag::Clip: n->type = marrow(mint(), mint()); break;
    case IdentTag::Opaque: break;
  }
  return n;
}

ETerm eapp(ETerm f, ETerm x, Pos p) {
  MType ft = find(f->type);
  MType result;
  if (ft->meta) {
    result = new_meta();
    unify(ft, marrow(x->type, result));
  } else if (ft->kind == TypeKind::Arrow) {
    if (!unify(ft->a, x->type)) {
      Parser::fail_at(x->pos, "type mismatch: expected an argument of type " + show(ft->a) + " but found " +
                                  show(x->type));
    }
    result = ft->b;
  } else {
    Parser::fail_at(p, "cannot apply a term of type " + show(ft));
  }
  auto n = enode(ENode::Kind::App, p, result);
  n->a = std::move(f);
  n->b = std::move(x);
  return n;
}

}  // namespace

struct Elaborator::Impl {
  TermContext& ctx;
  ElabMode mode;
  std::vector<PatternVar>* pattern_vars;
  std::vector<ComputedVar> computed;
  std::vector<std::pair<std::string, std::shared_ptr<Binder>>> scope;
  std::map<std::string, MType, std::less<>> auto_vars;
  std::vector<MType> pattern_mtypes;

  Impl(TermContext& c, ElabMode m, std::vector<PatternVar>* pv) : ctx(c), mode(m), pattern_vars(pv) {
    if (pattern_vars) {
      for (const auto& v : *pattern_vars) pattern_mtypes.push_back(from_type(v.type));
    }
  }

  int pattern_index(std::string_view name) const {
    if (!pattern_vars) return -1;
    for (std::size_t i = 0; i < pattern_vars->size(); ++i) {
      if ((*pattern_vars)[i].name == name) return static_cast<int>(i);
    }
    return -1;
  }

  ClipRef clip_ref(const ClipArg& a) {
    ClipRef r;
    if (!a.is_name) {
      r.value = a.value;
      return r;
    }
    if (mode == ElabMode::Term) Parser::fail_at(a.pos, "clip bounds must be integer literals");
    r.var = pattern_index(a.name);
    if (r.var < 0) Parser::fail_at(a.pos, "unknown clip bound '" + a.name + "'");
    if ((*pattern_vars)[r.var].type != int_type()) {
      Parser::fail_at(a.pos, "clip bound '" + a.name + "' must have type int");
    }
    return r;
  }

  ETerm lookup(const RawNode& r) {
    const std::string& n = r.text;
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == n) {
        auto e = enode(ENode::Kind::Bound, r.pos, it->second->type);
        e->binder = it->second;
        return e;
      }
    }
    if (const int i = pattern_index(n); i >= 0) {
      auto e = enode(ENode::Kind::PatVar, r.pos, pattern_mtypes[i]);
      e->index = i;
      return e;
    }
    if (auto b = builtin_names().find(n); b != builtin_names().end()) return builtin(b->second, r.pos);
    if (ctx.symbols) {
      if (auto o = ctx.symbols->opaques.find(n); o != ctx.symbols->opaques.end()) {
        auto e = enode(ENode::Kind::Builtin, r.pos, from_type(o->second.type()));
        e->tag = IdentTag::Opaque;
        e->opaque = o->second;
        return e;
      }
    }
    if (auto f = ctx.free_vars.find(n); f != ctx.free_vars.end()) {
      auto e = enode(ENode::Kind::Free, r.pos, from_type(f->second->type()));
      e->free = f->second;
      return e;
    }
    if (!ctx.auto_declare || mode == ElabMode::Lhs) Parser::fail_at(r.pos, "unbound name '" + n + "'");
    auto [it, inserted] = auto_vars.try_emplace(n, nullptr);
    if (inserted) it->second = new_meta();
    auto e = enode(ENode::Kind::Auto, r.pos, it->second);
    e->name = n;
    return e;
  }

  std::shared_ptr<Binder> bind(const std::string& name, Pos p, MType t) {
    if (is_reserved_name(name)) Parser::fail_at(p, "'" + name + "' is reserved and cannot be bound");
    return std::make_shared<Binder>(Binder{fresh_var_id(), name, std::move(t)});
  }

  ETerm elab(const Raw& r) {
    using K = RawNode::Kind;
    const Pos p = r->pos;
    switch (r->kind) {
      case K::Name: return lookup(*r);
      case K::Int: {
        auto n = builtin(IdentTag::IntLit, p);
        n->i0 = r->value;
        return n;
      }
      case K::Bool: {
        auto n = builtin(IdentTag::BoolLit, p);
        n->i0 = r->value;
        return n;
      }
      case K::Unit: return builtin(IdentTag::UnitLit, p);
      case K::Lam:
      case K::Let: {
        if (mode == ElabMode::Lhs) Parser::fail_at(p, "binders are not allowed in a rule left-hand side");
        ETerm rhs;
        MType bt;
        if (r->kind == K::Let) {
          rhs = elab(r->children[0]);
          bt = rhs->type;
        } else {
          bt = r->type ? from_type(r->type) : new_meta();
        }
        auto b = bind(r->text, p, bt);
        scope.emplace_back(r->text, b);
        ETerm body = elab(r->children.back());
        scope.pop_back();
        if (r->kind == K::Let) {
          auto n = enode(ENode::Kind::Let, p, body->type);
          n->binder = b;
          n->a = rhs;
          n->b = body;
          return n;
        }
        auto n = enode(ENode::Kind::Abs, p, marrow(bt, body->type));
        n->binder = b;
        n->a = body;
        return n;
      }
      case K::App: {
        ETerm f = elab(r->children[0]);
        ETerm x = elab(r->children[1]);
        return eapp(f, x, p);
      }
      case K::Infix: {
        const std::string& op = r->text;
        IdentTag tag = IdentTag::Add;
        if (op == "::") tag = IdentTag::Cons;
        else if (op == ">>") tag = IdentTag::Shr;
        else if (op == "+") tag = IdentTag::Add;
        else if (op == "-") tag = IdentTag::Sub;
        else if (op == "*") tag = IdentTag::Mul;
        else if (op == "/") tag = IdentTag::Div;
        ETerm l = elab(r->children[0]);
        ETerm rr = elab(r->children[1]);
        return eapp(eapp(builtin(tag, p), l, p), rr, p);
      }
      case K::Tuple: {
        ETerm l = elab(r->children[0]);
        ETerm rr = elab(r->children[1]);
        return eapp(eapp(builtin(IdentTag::PairMk, p), l, p), rr, p);
      }
      case K::List: {
        std::vector<ETerm> elems;
        for (const auto& c : r->children) elems.push_back(elab(c));
        ETerm acc = builtin(IdentTag::Nil, p);
        for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
          acc = eapp(eapp(builtin(IdentTag::Cons, (*it)->pos), *it, (*it)->pos), acc, (*it)->pos);
        }
        return acc;
      }
      case K::Ascribe: {
        ETerm e = elab(r->children[0]);
        const MType t = from_type(r->type);
        if (!unify(e->type, t)) {
          Parser::fail_at(p, "type mismatch: expected " + show(t) + " but found " + show(e->type));
        }
        return e;
      }
      case K::Clip: {
        const ClipRef lo = clip_ref(r->lo);
        const ClipRef hi = clip_ref(r->hi);
        if (mode == ElabMode::Rhs && (lo.var >= 0 || hi.var >= 0)) {
          ComputedVar cv{ComputedVar::Kind::ClipFn, fresh_var_id(), nullptr, nullptr, nullptr};
          cv.lo = lo.var >= 0 ? cond_var(lo.var) : cond_lit(lo.value);
          cv.hi = hi.var >= 0 ? cond_var(hi.var) : cond_lit(hi.value);
          computed.push_back(cv);
          auto n = enode(ENode::Kind::Computed, p, marrow(mint(), mint()));
          n->index = static_cast<int>(computed.size() - 1);
          return n;
        }
        auto n = builtin(IdentTag::Clip, p);
        n->lo = lo;
        n->hi = hi;
        return n;
      }
      case K::Comment: {
        auto n = builtin(IdentTag::Comment, p);
        n->text = r->text;
        return n;
      }
      case K::Computed: {
        if (mode != ElabMode::Rhs) Parser::fail_at(p, "computed values are only allowed in a rule right-hand side");
        computed.push_back({ComputedVar::Kind::IntValue, fresh_var_id(), r->cond, nullptr, nullptr});
        auto n = enode(ENode::Kind::Computed, p, mint());
        n->index = static_cast<int>(computed.size() - 1);
        return n;
      }
    }
    Parser::fail_at(p, "unsupported syntax");
  }

  Ident make_ident(const ENode& n) {
    std::vector<Type> ts;
    for (const auto& m : n.params) ts.push_back(resolve(m));
    try {
      switch (n.tag) {
        case IdentTag::IntLit: return Ident::int_lit(n.i0);
        case IdentTag::BoolLit: return Ident::bool_lit(n.i0 != 0);
        case IdentTag::UnitLit: return Ident::unit();
        case IdentTag::Nil: return Ident::nil(ts[0]);
        case IdentTag::Cons: return Ident::cons(ts[0]);
        case IdentTag::Fst: return Ident::fst(ts[0], ts[1]);
        case IdentTag::Snd: return Ident::snd(ts[0], ts[1]);
        case IdentTag::PairMk: return Ident::pair(ts[0], ts[1]);
        case IdentTag::Map: return Ident::map(ts[0], ts[1]);
        case IdentTag::ListRect: return Ident::list_rect(ts[0], ts[1]);
        case IdentTag::NatRect: return Ident::nat_rect(ts[0]);
        case IdentTag::Comment: return Ident::comment(n.text, ts[0]);
        case IdentTag::Clip: return Ident::clip(n.lo.value, n.hi.value);
        case IdentTag::Opaque: return *n.opaque;
        default: return Ident::prim(n.tag);
      }
    } catch (const TypeError& e) {
      Parser::fail_at(n.pos, e.what());
    }
  }

  Type resolve_at(const MType& t, Pos p) {
    try {
      return resolve(t);
    } catch (const TypeError& e) {
      Parser::fail_at(p, e.what());
    }
  }

  Expr to_expr(const ETerm& n) {
    using K = ENode::Kind;
    switch (n->kind) {
      case K::Bound: return mk_var(n->binder->id, resolve_at(n->type, n->pos), n->binder->name);
      case K::Free: return n->free;
      case K::Auto: return ctx.declare(n->name, resolve_at(n->type, n->pos));
      case K::PatVar: {
        const PatternVar& v = (*pattern_vars)[n->index];
        return mk_var(v.id, v.type, v.name);
      }
      case K::Computed: {
        const ComputedVar& c = computed[n->index];
        const Type t = c.kind == ComputedVar::Kind::IntValue ? int_type() : arrow_type(int_type(), int_type());
        return mk_var(c.id, t, c.kind == ComputedVar::Kind::IntValue ? "value" : "clip_fn");
      }
      case K::Abs:
        return mk_abs(n->binder->id, resolve_at(n->binder->type, n->pos), to_expr(n->a),
                      intern_hint(n->binder->name));
      case K::Let: return mk_let(n->binder->id, to_expr(n->a), to_expr(n->b), intern_hint(n->binder->name));
      case K::App: return mk_app(to_expr(n->a), to_expr(n->b));
      case K::Builtin: return mk_ident(make_ident(*n));
    }
    return nullptr;
  }

  Pattern to_pattern(const ETerm& n) {
    using K = ENode::Kind;
    switch (n->kind) {
      case K::PatVar: {
        const PatternVar& v = (*pattern_vars)[n->index];
        return v.constant ? pat_const(n->index, v.type) : pat_wildcard(n->index, v.type);
      }
      case K::App: {
        Pattern f = to_pattern(n->a);
        Pattern x = to_pattern(n->b);
        try {
          return pat_app(f, x);
        } catch (const TypeError& e) {
          Parser::fail_at(n->pos, e.what());
        }
      }
      case K::Builtin:
        if (n->tag == IdentTag::Clip && (n->lo.var >= 0 || n->hi.var >= 0)) {
          return pat_clip(ClipParam{n->lo.var, n->lo.value}, ClipParam{n->hi.var, n->hi.value});
        }
        return pat_ident(make_ident(*n));
      default: Parser::fail_at(n->pos, "unsupported construct in a rule left-hand side");
    }
  }
};

Elaborator::Elaborator(TermContext& ctx, ElabMode mode, std::vector<PatternVar>* pattern_vars)
    : impl_(std::make_unique<Impl>(ctx, mode, pattern_vars)) {}

Elaborator::~Elaborator() = default;

Expr Elaborator::to_expr(const Raw& r) { return impl_->to_expr(impl_->elab(r)); }

Pattern Elaborator::to_pattern(const Raw& r) { return impl_->to_pattern(impl_->elab(r)); }

std::vector<ComputedVar>& Elaborator::computed() { return impl_->computed; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Public parsing API

Expr TermContext::declare(const std::string& name, Type t) {
  if (auto it = free_vars.find(name); it != free_vars.end()) return it->second;
  Expr v = mk_var(fresh_var_id(), t, name);
  free_vars.emplace(name, v);
  return v;
}

namespace {

/// Deep terms are parsed and printed on a large stack; small ones inline.
constexpr std::size_t kInlineLimit = 4096;

}  // namespace

Expr parse_term(std::string_view text, TermContext& ctx) {
  auto run = [&]() -> Expr {
    detail::Parser parser(detail::tokenize(text));
    detail::Raw r = parser.term();
    if (!parser.at_end()) parser.fail("unexpected " + std::string(parser.peek().text) + " after term");
    detail::Elaborator elab(ctx, detail::ElabMode::Term);
    return elab.to_expr(r);
  };
  if (text.size() < kInlineLimit) return run();
  return with_big_stack(run);
}

Expr parse_term(std::string_view text) {
  TermContext ctx;
  return parse_term(text, ctx);
}

Type parse_type(std::string_view text) {
  detail::Parser parser(detail::tokenize(text));
  Type t = parser.type();
  if (!parser.at_end()) parser.fail("unexpected " + std::string(parser.peek().text) + " after type");
  return t;
}

bool is_reserved_name(std::string_view name) {
  static const std::unordered_set<std::string_view> reserved = {
      "let",  "in",   "rule", "forall", "when",  "opaque", "list", "int",       "bool",
      "unit", "true", "false", "clip",  "comment", "not",  "add",  "sub",       "mul",
      "div",  "shr",  "pow",  "log2floor", "awc64", "fst",  "snd",  "pair",      "cons",
      "nil",  "map",  "list_rect", "nat_rect"};
  return reserved.count(name) > 0;
}

// ---------------------------------------------------------------------------
// Printer

namespace {

std::string sanitize(const std::string& hint) {
  std::string s;
  for (char c : hint) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') s.push_back(c);
  }
  if (s.empty()) return "x";
  if (std::isdigit(static_cast<unsigned char>(s[0]))) s = "x" + s;
  if (is_reserved_name(s)) s += "_";
  return s;
}

class NameSupply {
 public:
  void reserve(const std::string& n) { used_.insert(n); }

  std::string fresh(const std::string& hint) {
    const std::string base = sanitize(hint);
    if (used_.insert(base).second) return base;
    for (std::size_t k = 1;; ++k) {
      std::string candidate = base + "_" + std::to_string(k);
      if (used_.insert(candidate).second) return candidate;
    }
  }

 private:
  std::unordered_set<std::string> used_;
};

std::vector<std::pair<std::string, FreeVar>> name_free_vars(const Expr& e, NameSupply& names,
                                                            const std::unordered_map<VarId, std::string>& fixed) {
  std::vector<std::pair<std::string, FreeVar>> out;
  for (const FreeVar& fv : free_vars(e)) {
    if (fixed.count(fv.id)) continue;
    out.emplace_back(names.fresh(fv.hint ? *fv.hint : "x"), fv);
  }
  return out;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

std::string int_text(const Int& v) { return v < 0 ? "(" + to_string(v) + ")" : to_string(v); }

bool is_polymorphic(IdentTag t) {
  switch (t) {
    case IdentTag::Fst:
    case IdentTag::Snd:
    case IdentTag::PairMk:
    case IdentTag::Cons:
    case IdentTag::Map:
    case IdentTag::ListRect:
    case IdentTag::NatRect:
    case IdentTag::Comment: return true;
    default: return false;
  }
}

int infix_prec(IdentTag t) {
  switch (t) {
    case IdentTag::Shr: return 2;
    case IdentTag::Add:
    case IdentTag::Sub: return 3;
    case IdentTag::Mul:
    case IdentTag::Div: return 4;
    default: return -1;
  }
}

const char* infix_symbol(IdentTag t) {
  switch (t) {
    case IdentTag::Shr: return " >> ";
    case IdentTag::Add: return " + ";
    case IdentTag::Sub: return " - ";
    case IdentTag::Mul: return " * ";
    default: return " / ";
  }
}

class Printer {
 public:
  Printer(NameSupply& names, std::unordered_map<VarId, std::string> fixed)
      : names_(names), fixed_(std::move(fixed)) {}

  void name_var(VarId id, std::string name) { fixed_.emplace(id, std::move(name)); }

  void print(const ExprNode& e, int ctx, std::string& out) {
    switch (e.kind()) {
      case ExprKind::Var: {
        auto it = fixed_.find(e.var());
        out += it != fixed_.end() ? it->second : sanitize(e.hint());
        return;
      }
      case ExprKind::Abs:
      case ExprKind::LetIn: {
        if (ctx > 0) out += "(";
        const ExprNode* cur = &e;
        while (cur->kind() == ExprKind::Abs || cur->kind() == ExprKind::LetIn) {
          const std::string n = names_.fresh(cur->hint());
          fixed_.emplace(cur->var(), n);
          if (cur->kind() == ExprKind::Abs) {
            out += "\\" + n + ":" + to_string(cur->var_type()) + ". ";
          } else {
            out += "let " + n + " = ";
            print(*cur->rhs(), 0, out);
            out += " in ";
          }
          cur = cur->body().get();
        }
        print(*cur, 0, out);
        if (ctx > 0) out += ")";
        return;
      }
      case ExprKind::Ident: print_ident(e.ident(), false, out); return;
      case ExprKind::App: print_app(e, ctx, out); return;
    }
  }

 private:
  void print_ident(const Ident& id, bool applied, std::string& out) {
    switch (id.tag()) {
      case IdentTag::IntLit: out += int_text(id.int_value()); return;
      case IdentTag::BoolLit:
      case IdentTag::Opaque: out += id.name(); return;
      case IdentTag::UnitLit: out += "()"; return;
      case IdentTag::Nil:
        if (id.param(0) == int_type()) out += "[]";
        else out += "([] : " + to_string(id.type()) + ")";
        return;
      case IdentTag::Clip:
        out += "clip[" + to_string(id.clip_lo()) + "," + to_string(id.clip_hi()) + "]";
        return;
      default: break;
    }
    std::string head = id.tag() == IdentTag::Comment ? "comment " + quote(id.text()) : std::string(id.name());
    if (is_polymorphic(id.tag()) && !applied) {
      out += "(" + head + " : " + to_string(id.type()) + ")";
    } else {
      out += head;
    }
  }

  void print_app(const ExprNode& n, int ctx, std::string& out) {
    // Application: collect the spine.
    std::vector<const ExprNode*> args;
    const ExprNode* head = &n;
    while (head->kind() == ExprKind::App) {
      args.push_back(head->arg().get());
      head = head->fn().get();
    }
    std::reverse(args.begin(), args.end());
    if (head->kind() == ExprKind::Ident) {
      const Ident& id = head->ident();
      const bool full = args.size() == arity(id.type());
      if (full) {
        if (const int p = infix_prec(id.tag()); p > 0) {
          if (ctx > p) out += "(";
          print(*args[0], p, out);
          out += infix_symbol(id.tag());
          print(*args[1], p + 1, out);
          if (ctx > p) out += ")";
          return;
        }
        if (id.tag() == IdentTag::PairMk) {
          out += "(";
          print(*args[0], 0, out);
          out += ", ";
          print(*args[1], 0, out);
          out += ")";
          return;
        }
        if (id.tag() == IdentTag::Cons) {
          print_cons(n, ctx, out);
          return;
        }
        if (id.tag() == IdentTag::Clip) {
          if (ctx > 5) out += "(";
          print_ident(id, true, out);
          out += "(";
          print(*args[0], 0, out);
          out += ")";
          if (ctx > 5) out += ")";
          return;
        }
      }
      if (ctx > 5) out += "(";
      print_ident(id, full, out);
      for (const ExprNode* a : args) {
        out += " ";
        print(*a, 6, out);
      }
      if (ctx > 5) out += ")";
      return;
    }
    if (ctx > 5) out += "(";
    print(*head, 5, out);
    for (const ExprNode* a : args) {
      out += " ";
      print(*a, 6, out);
    }
    if (ctx > 5) out += ")";
  }

  static const ExprNode* cons_parts(const ExprNode& n, const ExprNode** tail) {
    if (n.kind() != ExprKind::App || n.fn()->kind() != ExprKind::App) return nullptr;
    const ExprNode& h = *n.fn()->fn();
    if (h.kind() != ExprKind::Ident || h.ident().tag() != IdentTag::Cons) return nullptr;
    *tail = n.arg().get();
    return n.fn()->arg().get();
  }

  void print_cons(const ExprNode& n, int ctx, std::string& out) {
    std::vector<const ExprNode*> elems;
    const ExprNode* cur = &n;
    const ExprNode* tail = nullptr;
    while (const ExprNode* h = cons_parts(*cur, &tail)) {
      elems.push_back(h);
      cur = tail;
    }
    const bool literal = cur->kind() == ExprKind::Ident && cur->ident().tag() == IdentTag::Nil;
    if (literal) {
      out += "[";
      for (std::size_t i = 0; i < elems.size(); ++i) {
        if (i) out += "; ";
        print(*elems[i], 0, out);
      }
      out += "]";
      return;
    }
    if (ctx > 1) out += "(";
    for (const ExprNode* h : elems) {
      print(*h, 2, out);
      out += " :: ";
    }
    print(*cur, 2, out);
    if (ctx > 1) out += ")";
  }

  NameSupply& names_;
  std::unordered_map<VarId, std::string> fixed_;
};

}  // namespace

std::vector<std::pair<std::string, FreeVar>> free_var_names(const Expr& e) {
  NameSupply names;
  return name_free_vars(e, names, {});
}

std::string print_term(const Expr& e, const PrintOptions& options) {
  auto run = [&]() -> std::string {
    NameSupply names;
    for (const auto& [id, n] : options.fixed_names) names.reserve(n);
    Printer printer(names, options.fixed_names);
    for (auto& [n, fv] : name_free_vars(e, names, options.fixed_names)) printer.name_var(fv.id, n);
    std::string out;
    printer.print(*e, 0, out);
    return out;
  };
  return with_big_stack(run);
}

TermContext context_for(const Expr& e) {
  TermContext ctx;
  ctx.auto_declare = false;
  for (const auto& [n, fv] : free_var_names(e)) ctx.free_vars.emplace(n, mk_var(fv.id, fv.type, fv.hint));
  auto table = std::make_shared<SymbolTable>();
  std::vector<const ExprNode*> stack{e.get()};
  while (!stack.empty()) {
    const ExprNode* n = stack.back();
    stack.pop_back();
    switch (n->kind()) {
      case ExprKind::Ident:
        if (n->ident().tag() == IdentTag::Opaque) table->opaques.insert_or_assign(n->ident().text(), n->ident());
        break;
      case ExprKind::Abs: stack.push_back(n->body().get()); break;
      case ExprKind::LetIn:
        stack.push_back(n->rhs().get());
        stack.push_back(n->body().get());
        break;
      case ExprKind::App:
        stack.push_back(n->fn().get());
        stack.push_back(n->arg().get());
        break;
      case ExprKind::Var: break;
    }
  }
  ctx.symbols = table.get();
  ctx.owned_symbols = table;
  return ctx;
}

}  // namespace rwpe
