#include <gtest/gtest.h>

#include "generators.hpp"
#include "helpers.hpp"
#include "rwpe/baseline.hpp"
#include "rwpe/bench.hpp"
#include "rwpe/bounds.hpp"
#include "rwpe/rule_syntax.hpp"
#include "rwpe/term_ops.hpp"
#include "rwpe/typecheck.hpp"

namespace rwpe {
namespace {

using testing::semantic_mismatch;
using testing::standard_rule_set;
using testing::TermGen;

constexpr int kTerms = 500;

TEST(Property, NbePreservesSemanticsTypesAndHygiene) {
  TermGen gen(2024);
  Rng rng(1);
  for (int i = 0; i < kTerms; ++i) {
    const Expr e = gen.random_term();
    const Expr out = rewrite_top(e, standard_rule_set()).expr;
    ASSERT_TRUE(out->well_typed()) << print_term(e);
    EXPECT_EQ(type_check(out), e->type()) << print_term(e);
    EXPECT_TRUE(has_unique_binders(out)) << print_term(out);
    const auto bad = semantic_mismatch(e, out, rng, 5);
    EXPECT_FALSE(bad) << print_term(e) << "\n=> " << print_term(out) << "\n" << bad.value_or("");
  }
}

TEST(Property, NbeIsIdempotent) {
  TermGen gen(77);
  for (int i = 0; i < kTerms; ++i) {
    const Expr out = rewrite_top(gen.random_term(), standard_rule_set()).expr;
    const Expr again = rewrite_top(out, standard_rule_set()).expr;
    EXPECT_TRUE(alpha_eq(out, again)) << print_term(out) << "\n=> " << print_term(again);
  }
}

TEST(Property, BaselinePreservesSemantics) {
  TermGen gen(31);
  Rng rng(2);
  int finished = 0;
  for (int i = 0; i < kTerms; ++i) {
    const Expr e = gen.random_term();
    for (Order order : {Order::TopDown, Order::BottomUp}) {
      try {
        const auto r = rewrite_exhaustive(e, standard_rules(), order, 20000);
        ++finished;
        EXPECT_EQ(type_check(r.expr), e->type());
        EXPECT_FALSE(semantic_mismatch(e, r.expr, rng, 3)) << print_term(e) << "\n=> " << print_term(r.expr);
        EXPECT_TRUE(alpha_eq(replay(e, r.trace, standard_rules()), r.expr));
      } catch (const StepBudgetExhausted&) {
      }
    }
  }
  EXPECT_GT(finished, kTerms);
}

TEST(Property, SharingPreservedWithoutInlining) {
  EngineConfig cfg;
  cfg.inline_constants = false;
  cfg.inline_variables = false;
  for (int n = 1; n <= 40; ++n) {
    const Expr x = mk_var(fresh_var_id(), int_type(), "x");
    const Expr out = rewrite_top(gen_underlets_plus0(n, x), standard_rule_set(), cfg).expr;
    EXPECT_EQ(term_stats(out).let_count, static_cast<std::size_t>(n));
  }
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= 5; ++m) {
      const Expr v = mk_var(fresh_var_id(), int_type(), "v");
      EXPECT_EQ(term_stats(rewrite_top(gen_liftlets_map(n, m, v), standard_rule_set()).expr).let_count,
                static_cast<std::size_t>(n * m));
    }
  }
}

TEST(Property, UnderLetsNormalizesToVariable) {
  for (int n = 1; n <= 50; ++n) {
    const Expr x = mk_var(fresh_var_id(), int_type(), "x");
    const RewriteResult r = rewrite_top(gen_underlets_plus0(n, x), standard_rule_set());
    EXPECT_EQ(r.expr, x);
    EXPECT_EQ(r.stats.rule_applications.at("add_zero"), static_cast<std::uint64_t>(n));
  }
}

TEST(Property, RewriteHeadFollowsDataflowOrder) {
  TermContext ctx;
  const Expr e = parse_term("let a = x * 2 in let b = y * 3 in let c = a - b in c + a", ctx);
  std::vector<std::string> heads;
  EngineConfig cfg;
  cfg.on_rewrite_head = [&](const Expr& h) {
    if (h->kind() == ExprKind::App) heads.push_back(print_term(h));
  };
  rewrite_top(e, standard_rule_set(), cfg);
  EXPECT_EQ(heads, (std::vector<std::string>{"x * 2", "y * 3", "a - b", "c + a"}));
}

TEST(Property, BoundsAreSound) {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = testing::random_straightline(rng, 3, 10);
    const BoundsResult r = analyze_bounds(c.program, c.bounds);
    for (int s = 0; s < 20; ++s) {
      ValueEnv env;
      std::vector<Value> args;
      for (VarId p : c.params) {
        const auto& [lo, hi] = c.ranges.at(p);
        args.push_back(Value::integer(random_int(rng, lo, hi)));
        env.emplace(p, args.back());
      }
      // Walk the let chain and check every bound variable against its interval.
      Expr body = c.program;
      while (body->kind() == ExprKind::Abs) body = body->body();
      while (body->kind() == ExprKind::LetIn) {
        const Value v = denote(body->rhs(), env);
        const AbstractValue& av = r.bounds.at(body->var());
        if (av.is_interval()) {
          EXPECT_TRUE(av.as_interval().contains(v.as_int())) << to_string(av) << " " << to_string(v);
        } else if (av.is_pair()) {
          if (av.first().is_interval()) EXPECT_TRUE(av.first().as_interval().contains(v.as_pair().first.as_int()));
          if (av.second().is_interval()) EXPECT_TRUE(av.second().as_interval().contains(v.as_pair().second.as_int()));
        }
        env.emplace(body->var(), v);
        body = body->body();
      }
      Value in = denote(c.program), out = denote(r.clipped);
      for (const auto& a : args) {
        in = in(a);
        out = out(a);
      }
      EXPECT_TRUE(values_equal(in, out)) << print_term(c.program);
      if (r.result.is_interval()) EXPECT_TRUE(r.result.as_interval().contains(in.as_int()));
    }
  }
}

TEST(Property, DecisionTreeAgreesWithNaiveMatching) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto c = testing::random_rule_set(rng, 6, 5, 8);
    const DecisionTree tree = compile_rules(c.rules);
    for (const auto& t : c.terms) {
      const auto bad = testing::tree_vs_naive(c.rules, tree, t);
      EXPECT_FALSE(bad) << *bad << "\n" << to_string(tree);
    }
  }
}

TEST(Property, RandomRuleSetsRewriteSoundly) {
  // Random rule sets are not semantics preserving, but each rewrite must be
  // an instance of the chosen rule: with rhs a bound variable or literal, the
  // output is well typed and mentions only free variables of the input.
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    const auto c = testing::random_rule_set(rng, 6, 4, 4);
    const RuleSet rs(c.rules);
    for (const auto& t : c.terms) {
      const Expr out = rewrite_top(t, rs).expr;
      EXPECT_EQ(out->type(), int_type());
      for (const auto& fv : free_vars(out)) {
        bool found = false;
        for (const auto& iv : free_vars(t)) found |= iv.id == fv.id;
        EXPECT_TRUE(found) << print_term(t) << " => " << print_term(out);
      }
    }
  }
}

TEST(Property, PrinterParserRoundTrip) {
  TermGen gen(555);
  for (int i = 0; i < kTerms; ++i) {
    const Expr e = gen.random_term();
    const std::string s = print_term(e);
    TermContext ctx = context_for(e);
    const Expr back = parse_term(s, ctx);
    EXPECT_TRUE(alpha_eq(back, e)) << s;
    EXPECT_EQ(print_term(back), s);
  }
}

TEST(Property, RuleFileRoundTrip) {
  Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    RuleFile file;
    file.rules = testing::random_rule_set(rng, 6, 5, 0).rules;
    file.symbols.declare_opaque("g", arrow_type(int_type(), int_type()));
    file.opaque_order = {"g"};
    const std::string text = print_rules(file);
    const RuleFile back = parse_rules(text);
    ASSERT_EQ(back.rules.size(), file.rules.size()) << text;
    for (std::size_t k = 0; k < file.rules.size(); ++k) {
      EXPECT_TRUE(rules_equivalent(file.rules[k], back.rules[k])) << text;
    }
    EXPECT_EQ(print_rules(back), text);
  }
}

}  // namespace
}  // namespace rwpe
