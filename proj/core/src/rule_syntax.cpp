#include "rwpe/rule_syntax.hpp"

#include <unordered_map>

#include "rwpe/term_ops.hpp"
#include "syntax_internal.hpp"

namespace rwpe {

namespace {

using detail::Parser;
using detail::Pos;

void parse_binders(Parser& p, std::vector<PatternVar>& vars) {
  while (p.at_sym("(")) {
    p.next();
    std::vector<std::pair<std::string, bool>> names;
    std::vector<Pos> positions;
    while (!p.at_sym(":")) {
      bool constant = false;
      if (p.at_sym("'")) {
        p.next();
        constant = true;
      }
      positions.push_back({p.peek().line, p.peek().col});
      names.emplace_back(p.name(), constant);
    }
    p.expect_sym(":");
    const Type t = p.type();
    p.expect_sym(")");
    for (std::size_t i = 0; i < names.size(); ++i) {
      const auto& [n, constant] = names[i];
      if (is_reserved_name(n)) Parser::fail_at(positions[i], "'" + n + "' is reserved");
      for (const auto& v : vars) {
        if (v.name == n) Parser::fail_at(positions[i], "duplicate pattern variable '" + n + "'");
      }
      vars.push_back({n, t, constant, fresh_var_id()});
    }
  }
}

RewriteRule parse_rule_item(Parser& p, const SymbolTable& symbols) {
  RewriteRule rule;
  rule.name = p.name();
  p.expect_sym(":");
  if (p.at_name("forall")) {
    p.next();
    parse_binders(p, rule.vars);
    p.expect_sym(",");
  }
  auto resolve = [&rule](const std::string& n, Pos pos) -> int {
    for (std::size_t i = 0; i < rule.vars.size(); ++i) {
      if (rule.vars[i].name == n) return static_cast<int>(i);
    }
    Parser::fail_at(pos, "unknown variable '" + n + "' in condition");
  };
  if (p.at_name("when")) {
    p.next();
    rule.when = p.cond(resolve);
    p.expect_sym(",");
  }
  const detail::Raw lhs = p.term();
  p.expect_sym("=>");
  p.allow_computed(resolve);
  const detail::Raw rhs = p.term();
  p.allow_computed(nullptr);

  TermContext lhs_ctx;
  lhs_ctx.auto_declare = false;
  lhs_ctx.symbols = &symbols;
  detail::Elaborator lhs_elab(lhs_ctx, detail::ElabMode::Lhs, &rule.vars);
  rule.lhs = lhs_elab.to_pattern(lhs);

  TermContext rhs_ctx;
  rhs_ctx.symbols = &symbols;
  detail::Elaborator rhs_elab(rhs_ctx, detail::ElabMode::Rhs, &rule.vars);
  rule.rhs = rhs_elab.to_expr(rhs);
  rule.computed = std::move(rhs_elab.computed());
  return rule;
}

}  // namespace

RuleFile parse_rules(std::string_view text, bool check, const SymbolTable* base) {
  RuleFile file;
  if (base) file.symbols = *base;
  Parser p(detail::tokenize(text));
  while (!p.at_end()) {
    if (p.at_name("opaque")) {
      p.next();
      const std::string n = p.name();
      if (is_reserved_name(n)) p.fail("'" + n + "' is reserved");
      p.expect_sym(":");
      file.symbols.declare_opaque(n, p.type());
      file.opaque_order.push_back(n);
      continue;
    }
    if (p.at_name("rule")) {
      const std::size_t line = p.peek().line;
      p.next();
      RewriteRule r = parse_rule_item(p, file.symbols);
      r.priority = static_cast<int>(file.rules.size());
      if (check) {
        const auto errors = check_rule_wf(r);
        if (!errors.empty()) {
          const auto& e = errors.front();
          throw RuleError("rule " + r.name + " (line " + std::to_string(line) + "): " + to_string(e.kind) +
                          (e.var.empty() ? "" : " '" + e.var + "'") + ": " + e.message);
        }
      }
      file.rules.push_back(std::move(r));
      file.lines.push_back(line);
      continue;
    }
    p.fail("expected 'rule' or 'opaque' but found '" + p.peek().text + "'");
  }
  return file;
}

namespace {

std::string clip_param_text(const ClipParam& c, const RewriteRule& rule) {
  return c.is_var() ? rule.vars[c.var].name : to_string(c.value);
}

std::string cond_text(const CondExpr& c, const RewriteRule& rule) {
  return to_string(c, [&rule](int i) { return rule.vars.at(i).name; });
}

std::string clip_bound_text(const CondExpr& c, const RewriteRule& rule) {
  if (c->op == CondOp::Lit) return to_string(c->value);
  return cond_text(c, rule);
}

/// The lhs as a term whose pattern variables and clip patterns are Vars with
/// fixed print names.
Expr pattern_as_term(const Pattern& p, const RewriteRule& rule, PrintOptions& opts) {
  switch (p->kind) {
    case PatternKind::Wildcard:
    case PatternKind::ConstWildcard: {
      const PatternVar& v = rule.vars.at(p->var);
      opts.fixed_names[v.id] = v.name;
      return mk_var(v.id, v.type, v.name);
    }
    case PatternKind::Ident: return mk_ident(*p->ident);
    case PatternKind::App: return mk_app(pattern_as_term(p->fn, rule, opts), pattern_as_term(p->arg, rule, opts));
    case PatternKind::Clip: {
      const VarId id = fresh_var_id();
      opts.fixed_names[id] = "clip[" + clip_param_text(p->lo, rule) + "," + clip_param_text(p->hi, rule) + "]";
      return mk_var(id, p->type, "clip");
    }
  }
  return nullptr;
}

}  // namespace

std::string print_rule(const RewriteRule& rule) {
  std::string out = "rule " + rule.name + " :";
  if (!rule.vars.empty()) {
    out += " forall";
    for (const auto& v : rule.vars) {
      out += std::string(" (") + (v.constant ? "'" : "") + v.name + " : " + to_string(v.type) + ")";
    }
    out += ",";
  }
  if (rule.when) out += " when " + cond_text(*rule.when, rule) + ",";
  PrintOptions opts;
  for (const auto& v : rule.vars) opts.fixed_names[v.id] = v.name;
  for (const auto& c : rule.computed) {
    opts.fixed_names[c.id] = c.kind == ComputedVar::Kind::IntValue
                                 ? "'(" + cond_text(c.value, rule) + ")"
                                 : "clip[" + clip_bound_text(c.lo, rule) + "," + clip_bound_text(c.hi, rule) + "]";
  }
  PrintOptions lhs_opts = opts;
  out += " " + print_term(pattern_as_term(rule.lhs, rule, lhs_opts), lhs_opts);
  out += " => " + print_term(rule.rhs, opts);
  return out;
}

std::string print_rules(const RuleFile& file) {
  std::string out;
  for (const auto& n : file.opaque_order) {
    out += "opaque " + n + " : " + to_string(file.symbols.opaques.at(n).type()) + "\n";
  }
  for (const auto& r : file.rules) out += print_rule(r) + "\n";
  return out;
}

namespace {

bool patterns_equal(const Pattern& a, const Pattern& b) {
  if (a->kind != b->kind || a->type != b->type) return false;
  switch (a->kind) {
    case PatternKind::Wildcard:
    case PatternKind::ConstWildcard: return a->var == b->var;
    case PatternKind::Ident: return *a->ident == *b->ident;
    case PatternKind::App: return patterns_equal(a->fn, b->fn) && patterns_equal(a->arg, b->arg);
    case PatternKind::Clip:
      return a->lo.var == b->lo.var && a->lo.value == b->lo.value && a->hi.var == b->hi.var &&
             a->hi.value == b->hi.value;
  }
  return false;
}

bool conds_equal(const CondExpr& a, const CondExpr& b) {
  if (!a || !b) return !a && !b;
  return a->op == b->op && a->value == b->value && a->var == b->var && conds_equal(a->lhs, b->lhs) &&
         conds_equal(a->rhs, b->rhs);
}

}  // namespace

bool rules_equivalent(const RewriteRule& a, const RewriteRule& b) {
  if (a.name != b.name || a.vars.size() != b.vars.size() || a.computed.size() != b.computed.size()) return false;
  if (a.when.has_value() != b.when.has_value()) return false;
  if (a.when && !conds_equal(*a.when, *b.when)) return false;
  if (!patterns_equal(a.lhs, b.lhs)) return false;
  std::unordered_map<VarId, Expr> renaming;
  for (std::size_t i = 0; i < a.vars.size(); ++i) {
    const auto& x = a.vars[i];
    const auto& y = b.vars[i];
    if (x.name != y.name || x.type != y.type || x.constant != y.constant) return false;
    renaming.emplace(y.id, mk_var(x.id, x.type, x.name));
  }
  for (std::size_t i = 0; i < a.computed.size(); ++i) {
    const auto& x = a.computed[i];
    const auto& y = b.computed[i];
    if (x.kind != y.kind || !conds_equal(x.value, y.value) || !conds_equal(x.lo, y.lo) || !conds_equal(x.hi, y.hi)) {
      return false;
    }
    const Type t = x.kind == ComputedVar::Kind::IntValue ? int_type() : arrow_type(int_type(), int_type());
    renaming.emplace(y.id, mk_var(x.id, t));
  }
  return alpha_eq(a.rhs, substitute(b.rhs, renaming));
}

const std::vector<RewriteRule>& standard_rules() {
  static const std::vector<RewriteRule> rules = parse_rules(standard_rules_text()).rules;
  return rules;
}

}  // namespace rwpe
