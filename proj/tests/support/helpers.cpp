#include "helpers.hpp"

#include "rwpe/rule_syntax.hpp"
#include "rwpe/term_ops.hpp"

namespace rwpe::testing {

std::optional<std::string> semantic_mismatch(const Expr& a, const Expr& b, Rng& rng, int samples,
                                             const IntRanges& ranges, const OpaqueImpls* opaques) {
  const Type t = a->type();
  for (int s = 0; s < samples; ++s) {
    ValueEnv env = random_valuation(a, rng, ranges);
    for (const auto& fv : free_vars(b)) {
      if (!env.count(fv.id)) env.emplace(fv.id, random_value(fv.type, rng));
    }
    const Value va = denote(a, env, opaques);
    const Value vb = denote(b, env, opaques);
    if (!values_agree(va, vb, t, rng)) {
      return "sample " + std::to_string(s) + ": " + to_string(va) + " vs " + to_string(vb);
    }
  }
  return std::nullopt;
}

const RuleSet& standard_rule_set() {
  static const RuleSet rules(standard_rules());
  return rules;
}

Expr parse_with(std::string_view text, TermContext& ctx,
                std::initializer_list<std::pair<std::string, std::string>> vars) {
  for (const auto& [name, type] : vars) ctx.declare(name, parse_type(type));
  return parse_term(text, ctx);
}

std::optional<std::string> tree_vs_naive(const std::vector<RewriteRule>& rules, const DecisionTree& tree,
                                         const Expr& e) {
  std::optional<std::pair<int, Bindings>> naive;
  for (std::size_t i = 0; i < rules.size() && !naive; ++i) {
    auto b = match_pattern(rules[i].lhs, e, rules[i].num_vars());
    if (b && prepare_instantiation(rules[i], *b)) naive.emplace(static_cast<int>(i), std::move(*b));
  }
  Bindings tree_bindings;
  const auto picked = eval_decision_tree(tree, e, [&](int k, const Bindings& b) {
    if (!prepare_instantiation(rules[static_cast<std::size_t>(k)], b)) return false;
    tree_bindings = b;
    return true;
  });
  const std::string where = " on " + print_term(e);
  if (picked.has_value() != naive.has_value()) {
    return std::string(picked ? "tree matched, naive did not" : "naive matched, tree did not") + where;
  }
  if (!picked) return std::nullopt;
  if (*picked != naive->first) {
    return "tree chose rule " + std::to_string(*picked) + ", naive chose " + std::to_string(naive->first) + where;
  }
  const Bindings& nb = naive->second;
  if (nb.size() != tree_bindings.size()) return "binding vectors differ in size" + where;
  for (std::size_t v = 0; v < nb.size(); ++v) {
    const bool same = (!nb[v] && !tree_bindings[v]) || (nb[v] && tree_bindings[v] && alpha_eq(nb[v], tree_bindings[v]));
    if (!same) return "binding " + std::to_string(v) + " differs" + where;
  }
  return std::nullopt;
}

const OpaqueImpls& test_opaques() {
  static const OpaqueImpls impls = [] {
    OpaqueImpls m;
    m.emplace("g", Value::function([](const Value& v) { return Value::integer(v.as_int() * 3 + 1); }));
    return m;
  }();
  return impls;
}

}  // namespace rwpe::testing
