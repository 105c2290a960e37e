#include "rwpe/rule.hpp"

#include <algorithm>
#include <set>

#include "rwpe/term_ops.hpp"

namespace rwpe {

const char* to_string(WfError::Kind kind) {
  switch (kind) {
    case WfError::Kind::NonConstantInSideCondition: return "NonConstantInSideCondition";
    case WfError::Kind::UnboundRhsVar: return "UnboundRhsVar";
    case WfError::Kind::TypeMismatch: return "TypeMismatch";
    case WfError::Kind::NonlinearPattern: return "NonlinearPattern";
    case WfError::Kind::BareWildcardLhs: return "BareWildcardLhs";
    case WfError::Kind::NonConstantInComputedValue: return "NonConstantInComputedValue";
  }
  return "?";
}

std::vector<WfError> check_rule_wf(const RewriteRule& rule) {
  std::vector<WfError> errors;
  auto name_of = [&](int v) {
    return v >= 0 && static_cast<std::size_t>(v) < rule.vars.size() ? rule.vars[v].name : "#" + std::to_string(v);
  };

  if (is_wildcard_like(*rule.lhs)) {
    errors.push_back({WfError::Kind::BareWildcardLhs, "", "left-hand side is a bare wildcard"});
  }

  std::vector<int> lhs_vars;
  pattern_vars(rule.lhs, lhs_vars);
  std::set<int> seen;
  for (int v : lhs_vars) {
    if (!seen.insert(v).second) {
      errors.push_back({WfError::Kind::NonlinearPattern, name_of(v), "pattern variable occurs more than once"});
    }
  }

  auto check_constant = [&](const CondExpr& c, WfError::Kind kind, const char* where) {
    std::vector<int> vs;
    cond_vars(c, vs);
    std::set<int> reported;
    for (int v : vs) {
      const bool ok = v >= 0 && static_cast<std::size_t>(v) < rule.vars.size() && rule.vars[v].constant &&
                      seen.count(v);
      if (!ok && reported.insert(v).second) {
        errors.push_back({kind, name_of(v), std::string(where) + " mentions a pattern variable not marked constant"});
      }
    }
  };
  if (rule.when) check_constant(*rule.when, WfError::Kind::NonConstantInSideCondition, "side condition");
  for (const auto& c : rule.computed) {
    if (c.kind == ComputedVar::Kind::IntValue) {
      check_constant(c.value, WfError::Kind::NonConstantInComputedValue, "computed value");
    } else {
      check_constant(c.lo, WfError::Kind::NonConstantInComputedValue, "clip bound");
      check_constant(c.hi, WfError::Kind::NonConstantInComputedValue, "clip bound");
    }
  }

  std::set<VarId> allowed;
  for (std::size_t i = 0; i < rule.vars.size(); ++i) {
    if (seen.count(static_cast<int>(i))) allowed.insert(rule.vars[i].id);
  }
  for (const auto& c : rule.computed) allowed.insert(c.id);
  for (const auto& fv : free_vars(rule.rhs)) {
    if (!allowed.count(fv.id)) {
      errors.push_back({WfError::Kind::UnboundRhsVar, fv.hint ? *fv.hint : "",
                        "right-hand side variable does not occur in the left-hand side"});
    }
  }

  if (!rule.rhs->well_typed()) {
    errors.push_back({WfError::Kind::TypeMismatch, "", "right-hand side is ill typed"});
  } else if (rule.rhs->type() != rule.lhs->type) {
    errors.push_back({WfError::Kind::TypeMismatch, "",
                      "left-hand side has type " + to_string(rule.lhs->type) + " but right-hand side has type " +
                          to_string(rule.rhs->type())});
  }
  return errors;
}

std::optional<std::vector<std::pair<VarId, Expr>>> prepare_instantiation(const RewriteRule& rule,
                                                                         const Bindings& bindings) {
  if (rule.when && !eval_side_condition(*rule.when, bindings)) return std::nullopt;
  std::vector<std::pair<VarId, Expr>> out;
  out.reserve(rule.vars.size() + rule.computed.size());
  for (std::size_t i = 0; i < rule.vars.size(); ++i) {
    if (bindings[i]) out.emplace_back(rule.vars[i].id, bindings[i]);
  }
  for (const auto& c : rule.computed) {
    if (c.kind == ComputedVar::Kind::IntValue) {
      auto v = eval_cond_int(c.value, bindings);
      if (!v) return std::nullopt;
      out.emplace_back(c.id, mk_int(*v));
    } else {
      auto lo = eval_cond_int(c.lo, bindings);
      auto hi = eval_cond_int(c.hi, bindings);
      if (!lo || !hi) return std::nullopt;
      out.emplace_back(c.id, mk_ident(Ident::clip(*lo, *hi)));
    }
  }
  return out;
}

}  // namespace rwpe
