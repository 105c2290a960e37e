#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rwpe/decision_tree.hpp"
#include "rwpe/errors.hpp"
#include "rwpe/rule_syntax.hpp"
#include "rwpe/term_ops.hpp"

namespace rwpe {
namespace {

std::vector<RewriteRule> rules_of(std::string_view text) { return parse_rules(text).rules; }

const char* kTwoRules =
    "rule plus0 : forall (n : int), n + 0 => n\n"
    "rule fst_pair : forall (x : int) (y : int), fst (x, y) => x\n";

std::optional<std::pair<int, Bindings>> tree_match(const std::vector<RewriteRule>& rules, const Expr& e) {
  const DecisionTree tree = compile_rules(rules);
  Bindings out;
  auto r = eval_decision_tree(tree, e, [&](int, const Bindings& b) {
    out = b;
    return true;
  });
  if (!r) return std::nullopt;
  return std::make_pair(*r, out);
}

TEST(Match, WildcardAgainstLiteral) {
  const auto rules = rules_of(kTwoRules);
  TermContext ctx;
  const auto b = match_pattern(rules[0].lhs, parse_term("7 + 0", ctx), 1);
  ASSERT_TRUE(b);
  EXPECT_EQ(*as_int_lit((*b)[0]), 7);
  EXPECT_FALSE(match_pattern(rules[0].lhs, parse_term("7 + 1", ctx), 1));
}

TEST(Match, ConstantWildcardOnlyMatchesConstants) {
  const auto rules = rules_of("rule d : forall (n : int) ('m : int), n / m => n");
  TermContext ctx;
  const auto b = match_pattern(rules[0].lhs, parse_term("x / 4", ctx), 2);
  ASSERT_TRUE(b);
  EXPECT_EQ((*b)[0], ctx.free_vars.at("x"));
  EXPECT_EQ(*as_int_lit((*b)[1]), 4);
  EXPECT_FALSE(match_pattern(rules[0].lhs, parse_term("x / y", ctx), 2));
}

TEST(Match, ClipPatternBindsParameters) {
  const auto rules = rules_of("rule c : forall (n : int) ('l : int) ('u : int), clip[l,u] n => n");
  TermContext ctx;
  const auto b = match_pattern(rules[0].lhs, parse_term("clip[3,9](x)", ctx), 3);
  ASSERT_TRUE(b);
  EXPECT_EQ(*as_int_lit((*b)[1]), 3);
  EXPECT_EQ(*as_int_lit((*b)[2]), 9);
  EXPECT_FALSE(match_pattern(rules[0].lhs, parse_term("x + 1", ctx), 3));
}

TEST(DecisionTree, TwoRuleExampleStructure) {
  const DecisionTree tree = compile_rules(rules_of(kTwoRules));
  ASSERT_EQ(tree->kind, DecisionNode::Kind::Switch);
  ASSERT_TRUE(tree->app_case);
  const std::string text = to_string(tree);
  EXPECT_NE(text.find("Swap 0<->1"), std::string::npos) << text;
  EXPECT_NE(text.find("TryLeaf 0"), std::string::npos) << text;
  EXPECT_NE(text.find("TryLeaf 1"), std::string::npos) << text;
  EXPECT_NE(text.find("pair"), std::string::npos) << text;
}

TEST(DecisionTree, TwoRuleExampleMatches) {
  const auto rules = rules_of(kTwoRules);
  TermContext ctx;
  const Expr a = ctx.declare("a", int_type());
  const Expr b = ctx.declare("b", int_type());

  auto m = tree_match(rules, parse_term("fst (pair a b)", ctx));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->first, 1);
  EXPECT_EQ(m->second[0], a);
  EXPECT_EQ(m->second[1], b);

  EXPECT_FALSE(tree_match(rules, parse_term("a * b", ctx)));

  const Expr e = parse_term("(a + 1) + 0", ctx);
  m = tree_match(rules, e);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->first, 0);
  EXPECT_TRUE(alpha_eq(m->second[0], e->fn()->arg()));
}

TEST(DecisionTree, SharedHeadIsInspectedOnce) {
  const auto rules = rules_of(
      "rule mn : forall (f : int -> int), map f [] => []\n"
      "rule mc : forall (f : int -> int) (x : int) (xs : list int), map f (x :: xs) => f x :: map f xs\n");
  const DecisionTree tree = compile_rules(rules);
  EXPECT_EQ(count_switches_on(tree, Ident::map(int_type(), int_type())), 1u);
}

TEST(DecisionTree, BareWildcardRejected) {
  std::vector<RewriteRule> rules(1);
  rules[0].name = "any";
  rules[0].vars.push_back({"x", int_type(), false, fresh_var_id()});
  rules[0].lhs = pat_wildcard(0, int_type());
  rules[0].rhs = mk_var(rules[0].vars[0].id, int_type(), "x");
  EXPECT_THROW(compile_rules(rules), RuleError);
  EXPECT_THROW(compile_rules({}), RuleError);
}

TEST(DecisionTree, FallsBackWhenConditionFails) {
  const auto rules = rules_of(
      "rule big : forall (n : int) ('m : int), when m < 0, n + m => n\n"
      "rule any : forall (n : int) (m : int), n + m => m\n");
  TermContext ctx;
  const Expr e = parse_term("x + 3", ctx);
  const auto r = eval_decision_tree(compile_rules(rules), e, [&](int k, const Bindings& b) {
    return prepare_instantiation(rules[static_cast<std::size_t>(k)], b).has_value();
  });
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, 1);
}

TEST(DecisionTree, ProbeCountsHeadInspections) {
  const auto rules = rules_of(kTwoRules);
  TermContext ctx;
  MatchProbe probe;
  eval_decision_tree(compile_rules(rules), parse_term("x + 0", ctx), [](int, const Bindings&) { return true; }, &probe);
  EXPECT_EQ(probe.leaves_tried, 1u);
  for (std::size_t n : probe.head_inspections) EXPECT_LE(n, 1u);
}

TEST(DecisionTree, MalformedSwapThrows) {
  DecisionNode sw;
  sw.kind = DecisionNode::Kind::Swap;
  sw.swap_index = 3;
  sw.cont = std::make_shared<const DecisionNode>();
  const DecisionTree t = std::make_shared<const DecisionNode>(sw);
  EXPECT_THROW(eval_decision_tree(t, mk_int(1), [](int, const Bindings&) { return true; }), MalformedTree);
}

TEST(DecisionTree, NaiveFirstMatchPrefersEarlierRule) {
  const auto rules = rules_of(
      "rule a : forall (n : int), n + 0 => n\n"
      "rule b : forall ('x : int) ('y : int), x + y => '(x + y)\n");
  TermContext ctx;
  const auto m = naive_first_match(rules, parse_term("3 + 0", ctx));
  ASSERT_TRUE(m);
  EXPECT_EQ(m->first, 0);
  const auto t = tree_match(rules, parse_term("3 + 0", ctx));
  ASSERT_TRUE(t);
  EXPECT_EQ(t->first, 0);
}

}  // namespace
}  // namespace rwpe
