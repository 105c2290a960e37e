#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rwpe/bench.hpp"
#include "rwpe/errors.hpp"
#include "rwpe/term_ops.hpp"
#include "rwpe/typecheck.hpp"

namespace rwpe {
namespace {

const Type I = int_type();

TEST(Types, AreHashConsed) {
  EXPECT_EQ(arrow_type(I, I), arrow_type(I, I));
  EXPECT_EQ(list_type(pair_type(I, bool_type())), list_type(pair_type(I, bool_type())));
  EXPECT_NE(arrow_type(I, I), pair_type(I, I));
  EXPECT_EQ(arity(arrow_type({I, I}, I)), 2u);
  EXPECT_EQ(result_type(arrow_type({I, I}, bool_type())), bool_type());
}

TEST(TypeCheck, PrimitiveSignature) {
  EXPECT_EQ(type_check(mk_ident(Ident::prim(IdentTag::Add))), arrow_type({I, I}, I));
}

TEST(TypeCheck, IdentityFunction) {
  const Expr id = mk_lambda(I, "x", [](const Expr& x) { return x; });
  EXPECT_EQ(type_check(id), arrow_type(I, I));
}

TEST(TypeCheck, FstOfIntIsMismatch) {
  // Build the application without the smart constructor's eager check.
  const Expr fst = mk_ident(Ident::fst(I, I));
  const Expr bad = mk_app(fst, mk_int(3));
  EXPECT_FALSE(bad->well_typed());
  EXPECT_THROW(type_check(bad), TypeError);
}

TEST(TypeCheck, UnboundVariableWithoutAllowFree) {
  const Expr x = mk_var(fresh_var_id(), I, "x");
  EXPECT_THROW(type_check(x, TypeEnv{}), TypeError);
  EXPECT_EQ(type_check(x, TypeEnv{}, true), I);
}

TEST(AlphaEq, RenamedBinders) {
  const Expr a = mk_lambda(I, "x", [](const Expr& x) { return x; });
  const Expr b = mk_lambda(I, "y", [](const Expr& y) { return y; });
  const Expr c = mk_lambda(I, "x", [](const Expr&) { return mk_int(0); });
  EXPECT_TRUE(alpha_eq(a, b));
  EXPECT_FALSE(alpha_eq(a, c));
}

TEST(AlphaEq, LetBinders) {
  const Expr e = mk_add(mk_var(fresh_var_id(), I, "z"), mk_int(1));
  const Expr a = mk_let_fresh(e, "a", [](const Expr& v) { return v; });
  const Expr b = mk_let_fresh(e, "b", [](const Expr& v) { return v; });
  EXPECT_TRUE(alpha_eq(a, b));
}

TEST(AlphaEq, FreeVariablesByIdentity) {
  EXPECT_FALSE(alpha_eq(mk_var(fresh_var_id(), I, "x"), mk_var(fresh_var_id(), I, "x")));
}

TEST(TermStats, Var) {
  const TermStats s = term_stats(mk_var(fresh_var_id(), I, "x"));
  EXPECT_EQ(s.node_count, 1u);
  EXPECT_EQ(s.let_count, 0u);
  EXPECT_EQ(s.max_binder_depth, 0u);
}

TEST(TermStats, SingleLet) {
  const Expr x = mk_var(fresh_var_id(), I, "x");
  const Expr e = mk_let_fresh(mk_add(x, mk_int(0)), "a", [](const Expr& a) { return a; });
  EXPECT_EQ(term_stats(e).let_count, 1u);
  EXPECT_EQ(term_stats(e).max_binder_depth, 1u);
}

TEST(TermStats, UnderLetsLetCount) {
  const Expr x = mk_var(fresh_var_id(), I, "x");
  EXPECT_EQ(term_stats(gen_underlets_plus0(5, x)).let_count, 5u);
}

TEST(TermStats, Plus0TreeNodeCountClosedForm) {
  const Expr x = mk_var(fresh_var_id(), I, "x");
  for (int n = 0; n <= 5; ++n) {
    for (int m = 0; m <= 4; ++m) {
      const std::size_t leaves = std::size_t{1} << n;
      EXPECT_EQ(term_stats(gen_plus0tree(n, m, x)).node_count, leaves * (2 * m + 1) + leaves - 1)
          << "n=" << n << " m=" << m;
    }
  }
}

TEST(Constant, ClosedUnderPairAndCons) {
  EXPECT_TRUE(is_constant(mk_int(4)));
  EXPECT_FALSE(is_constant(mk_var(fresh_var_id(), I, "x")));
  EXPECT_TRUE(is_constant(mk_pair(mk_int(1), mk_int(2))));
  EXPECT_TRUE(is_constant(mk_list(I, {mk_int(1), mk_int(2)})));
  EXPECT_FALSE(is_constant(mk_add(mk_int(1), mk_int(2))));
}

TEST(Substitute, AvoidsCapture) {
  // (\y. x + y)[x := y] must not capture the free y.
  const Expr x = mk_var(fresh_var_id(), I, "x");
  const Expr y = mk_var(fresh_var_id(), I, "y");
  const Expr lam = mk_lambda(I, "y", [&](const Expr& b) { return mk_add(x, b); });
  const Expr out = substitute(lam, x->var(), y);
  const auto fvs = free_vars(out);
  ASSERT_EQ(fvs.size(), 1u);
  EXPECT_EQ(fvs[0].id, y->var());
  EXPECT_TRUE(has_unique_binders(out));
}

TEST(Substitute, DuplicatedReplacementsGetFreshBinders) {
  const Expr x = mk_var(fresh_var_id(), I, "x");
  const Expr body = mk_add(x, x);
  const Expr lam = mk_lambda(I, "a", [](const Expr& a) { return a; });
  const Expr out = substitute(body, x->var(), mk_app(lam, mk_int(1)));
  EXPECT_TRUE(has_unique_binders(out));
}

TEST(Freshen, PreservesAlphaEquivalence) {
  TermContext ctx;
  const Expr e = parse_term("\\a:int. let b = a + 1 in \\c:int. b * c", ctx);
  const Expr f = freshen(e);
  EXPECT_TRUE(alpha_eq(e, f));
  EXPECT_TRUE(has_unique_binders(f));
}

TEST(FreeVars, OrderOfFirstOccurrence) {
  const Expr x = mk_var(fresh_var_id(), I, "x");
  const Expr y = mk_var(fresh_var_id(), I, "y");
  const auto fvs = free_vars(mk_add(mk_add(y, x), y));
  ASSERT_EQ(fvs.size(), 2u);
  EXPECT_EQ(fvs[0].id, y->var());
  EXPECT_EQ(fvs[1].id, x->var());
}

}  // namespace
}  // namespace rwpe
