#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rwpe/bench.hpp"
#include "rwpe/errors.hpp"
#include "rwpe/rule_syntax.hpp"
#include "rwpe/term_ops.hpp"

namespace rwpe {
namespace {

using testing::standard_rule_set;

RuleSet rule_set(std::string_view text) { return RuleSet(parse_rules(text).rules); }

const char* kAddZero = "rule add_zero : forall (n : int), n + 0 => n\n";
const char* kShift =
    "rule div_pow2 : forall (n : int) ('m : int), when 2 ^ log2floor m == m, n / m => n >> '(log2floor m)\n";

Expr normalize(const Expr& e, const RuleSet& rules, const EngineConfig& cfg = {}) {
  return rewrite_top(e, rules, cfg).expr;
}

TEST(Nbe, AddZero) {
  TermContext ctx;
  const Expr out = normalize(parse_term("x + 0", ctx), rule_set(kAddZero));
  EXPECT_EQ(out, ctx.free_vars.at("x"));
}

TEST(Nbe, ShiftRuleFiresOnPowerOfTwo) {
  TermContext ctx;
  EXPECT_EQ(print_term(normalize(parse_term("10 / 4", ctx), rule_set(kShift))), "10 >> 2");
  EXPECT_EQ(print_term(normalize(parse_term("10 / 3", ctx), rule_set(kShift))), "10 / 3");
}

TEST(Nbe, RewritesUnderEtaExpansion) {
  TermContext ctx;
  const Expr e = parse_term("(\\f:int -> int -> int. \\x:int. \\y:int. f x y) add z 0", ctx);
  EXPECT_EQ(normalize(e, rule_set(kAddZero)), ctx.free_vars.at("z"));
}

TEST(Nbe, MapOverLetBoundList) {
  TermContext ctx;
  const Expr e = parse_term("map (\\x:int. y + x) (let z = w * w in [0; 1; z + 1])", ctx);
  const Expr out = normalize(e, standard_rule_set());
  TermContext expect_ctx = ctx;
  const Expr expected = parse_term("let z = w * w in [y; y + 1; y + (z + 1)]", expect_ctx);
  EXPECT_TRUE(alpha_eq(out, expected)) << print_term(out);
}

TEST(Nbe, ListRectOnNil) {
  TermContext ctx;
  const Expr e = parse_term("list_rect q (\\h:int. \\t:list int. \\r:int. h + r) ([] : list int)", ctx);
  RewriteResult r = rewrite_top(e, RuleSet{});
  EXPECT_EQ(r.expr, ctx.free_vars.at("q"));
  EXPECT_EQ(r.stats.eliminator_steps["list_rect_nil"], 1u);
}

TEST(Nbe, FunctionVariableIsEtaExpanded) {
  TermContext ctx;
  const Expr f = ctx.declare("f", parse_type("int -> int"));
  const Expr out = normalize(f, standard_rule_set());
  ASSERT_EQ(out->kind(), ExprKind::Abs);
  const Expr expected = mk_lambda(int_type(), "x", [&](const Expr& x) { return mk_app(f, x); });
  EXPECT_TRUE(alpha_eq(out, expected));
}

TEST(Nbe, NormalTermIsUnchanged) {
  TermContext ctx;
  const Expr e = parse_term("let a = x * y in a + a", ctx);
  EXPECT_TRUE(alpha_eq(normalize(e, standard_rule_set()), e));
}

TEST(Nbe, UnderLetsThree) {
  const Expr x = mk_var(fresh_var_id(), int_type(), "x");
  const RewriteResult r = rewrite_top(gen_underlets_plus0(3, x), rule_set(kAddZero));
  EXPECT_EQ(r.expr, x);
  EXPECT_EQ(r.stats.rule_applications.at("add_zero"), 3u);
}

TEST(Nbe, Plus0TreeSmall) {
  const Expr x = mk_var(fresh_var_id(), int_type(), "x");
  const RewriteResult r = rewrite_top(gen_plus0tree(1, 2, x), rule_set(kAddZero));
  EXPECT_TRUE(alpha_eq(r.expr, mk_add(x, x)));
  EXPECT_EQ(r.stats.total_rule_applications(), 4u);
}

TEST(Nbe, LiftLetsMapOneOne) {
  const Expr v = mk_var(fresh_var_id(), int_type(), "v");
  const Expr out = normalize(gen_liftlets_map(1, 1, v), standard_rule_set());
  const Expr expected = mk_let_fresh(mk_add(v, v), "y", [](const Expr& y) { return mk_list(int_type(), {y}); });
  EXPECT_TRUE(alpha_eq(out, expected)) << print_term(out);
}

TEST(Nbe, LiftLetsMapMatchesExpectedShape) {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 0; m <= 3; ++m) {
      const Expr v = mk_var(fresh_var_id(), int_type(), "v");
      const Expr out = normalize(gen_liftlets_map(n, m, v), standard_rule_set());
      EXPECT_TRUE(alpha_eq(out, expected_liftlets_map(n, m, v))) << "n=" << n << " m=" << m << ": " << print_term(out);
      EXPECT_EQ(term_stats(out).let_count, static_cast<std::size_t>(n * m));
    }
  }
}

TEST(Nbe, InliningHeuristicsCanBeDisabled) {
  const Expr x = mk_var(fresh_var_id(), int_type(), "x");
  EngineConfig cfg;
  cfg.inline_variables = false;
  const Expr out = normalize(gen_underlets_plus0(4, x), rule_set(kAddZero), cfg);
  EXPECT_EQ(term_stats(out).let_count, 4u);

  TermContext ctx;
  cfg = {};
  cfg.inline_constants = false;
  const Expr e = parse_term("let a = 3 in a + y", ctx);
  EXPECT_EQ(term_stats(normalize(e, standard_rule_set(), cfg)).let_count, 1u);
  EXPECT_EQ(print_term(normalize(e, standard_rule_set())), "3 + y");
}

TEST(Nbe, FuelBoundsRuleChains) {
  const RuleFile file = parse_rules("opaque g : int -> int\nrule loop : forall (n : int), g n => g n\n");
  TermContext ctx;
  ctx.symbols = &file.symbols;
  const Expr e = parse_term("g x", ctx);
  EngineConfig cfg;
  cfg.fuel = 50;
  EXPECT_THROW(rewrite_top(e, RuleSet(file.rules), cfg), FuelExhausted);
}

TEST(Nbe, BudgetBoundsTotalWork) {
  const Expr x = mk_var(fresh_var_id(), int_type(), "x");
  EngineConfig cfg;
  cfg.budget = 10;
  EXPECT_THROW(rewrite_top(gen_underlets_plus0(100, x), rule_set(kAddZero), cfg), BudgetExhausted);
}

TEST(Nbe, IllTypedInputRejected) {
  const Expr bad = mk_app(mk_ident(Ident::fst(int_type(), int_type())), mk_int(3));
  EXPECT_THROW(rewrite_top(bad, standard_rule_set()), TypeError);
}

TEST(Nbe, RewriteHeadRootOnly) {
  TermContext ctx;
  RewriteStats stats;
  const auto r = rewrite_head(parse_term("(x + 0) + 0", ctx), rule_set(kAddZero), {}, stats);
  ASSERT_TRUE(r);
  EXPECT_EQ(print_term(*r), "x + 0");
  EXPECT_FALSE(rewrite_head(parse_term("x * 2", ctx), rule_set(kAddZero), {}, stats));
  EXPECT_THROW(rewrite_head(ctx.declare("f", parse_type("int -> int")), rule_set(kAddZero), {}, stats), TypeError);
}

TEST(Nbe, StatsSerialize) {
  const Expr x = mk_var(fresh_var_id(), int_type(), "x");
  const RewriteResult r = rewrite_top(gen_underlets_plus0(2, x), rule_set(kAddZero));
  const std::string kv = r.stats.to_kv();
  EXPECT_NE(kv.find("rule.add_zero=2"), std::string::npos) << kv;
}

}  // namespace
}  // namespace rwpe
