#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rwpe/errors.hpp"

namespace rwpe {
namespace {

using testing::parse_with;

Int eval_int(std::string_view text, std::initializer_list<std::pair<std::string, Int>> env = {}) {
  TermContext ctx;
  ValueEnv venv;
  for (const auto& [name, v] : env) venv.emplace(ctx.declare(name, int_type())->var(), Value::integer(v));
  return denote(parse_term(text, ctx), venv).as_int();
}

TEST(Denote, EtaExpandedAddition) {
  EXPECT_EQ(eval_int("(\\f:int -> int -> int. \\x:int. \\y:int. f x y) add z 0", {{"z", 7}}), 7);
}

TEST(Denote, FstOfPair) { EXPECT_EQ(eval_int("fst (pair a b)", {{"a", 1}, {"b", 2}}), 1); }

TEST(Denote, LetEvaluatesOnce) { EXPECT_EQ(eval_int("let y = 3 + 3 in y + y"), 12); }

TEST(Denote, FloorDivisionAndShift) {
  EXPECT_EQ(eval_int("(-7) / 2"), -4);
  EXPECT_EQ(eval_int("(-7) >> 1"), -4);
  EXPECT_EQ(eval_int("10 / 4"), 2);
  EXPECT_EQ(eval_int("10 >> 2"), 2);
}

TEST(Denote, Log2FloorAndPow) {
  EXPECT_EQ(eval_int("log2floor 8"), 3);
  EXPECT_EQ(eval_int("log2floor 9"), 3);
  EXPECT_EQ(eval_int("log2floor 0"), 0);
  EXPECT_EQ(eval_int("pow 2 10"), 1024);
}

TEST(Denote, ClipSemantics) {
  EXPECT_EQ(eval_int("clip[0,18446744073709551616](7)"), 7);
  EXPECT_EQ(eval_int("clip[0,4](4)"), 0);
  EXPECT_EQ(eval_int("clip[2,10](2)"), 2);
  EXPECT_EQ(clip_semantics(0, 4, 3), 3);
}

TEST(Denote, AddWithCarry) {
  const Int two64 = Int(1) << 64;
  EXPECT_EQ(eval_int("fst (awc64 a 1)", {{"a", two64 - 1}}), 1);
  EXPECT_EQ(eval_int("snd (awc64 a 1)", {{"a", two64 - 1}}), 0);
  EXPECT_EQ(eval_int("fst (awc64 a 0)", {{"a", 5}}), 0);
}

TEST(Denote, CommentIsIdentity) { EXPECT_EQ(eval_int("comment \"hi\" (1 + 2)"), 3); }

TEST(Denote, ListRectOnNilReturnsNilCase) {
  EXPECT_EQ(eval_int("list_rect 42 (\\h:int. \\t:list int. \\r:int. h + r) ([] : list int)"), 42);
  EXPECT_EQ(eval_int("list_rect 0 (\\h:int. \\t:list int. \\r:int. h + r) [1; 2; 3]"), 6);
}

TEST(Denote, NatRectIteratesUpward) {
  // acc := acc * 10 + k for k = 0, 1, 2.
  EXPECT_EQ(eval_int("nat_rect 1 (\\k:int. \\acc:int. acc * 10 + k) 3"), 1012);
  EXPECT_EQ(eval_int("nat_rect 5 (\\k:int. \\acc:int. acc + 1) 0"), 5);
}

TEST(Denote, MapOverList) {
  TermContext ctx;
  const Value v = denote(parse_term("map (\\x:int. x * 2) [1; 2; 3]", ctx));
  const auto elems = v.elements();
  ASSERT_EQ(elems.size(), 3u);
  EXPECT_EQ(elems[2].as_int(), 6);
}

TEST(Denote, Errors) {
  EXPECT_THROW(eval_int("1 / 0"), EvalError);
  EXPECT_THROW(eval_int("pow 2 (-1)"), EvalError);
  TermContext ctx;
  EXPECT_THROW(denote(parse_term("x + 1", ctx)), EvalError);
}

TEST(Denote, OpaqueNeedsInterpretation) {
  const Ident g = Ident::opaque("g", arrow_type(int_type(), int_type()));
  const Expr e = mk_app(mk_ident(g), mk_int(3));
  EXPECT_THROW(denote(e), EvalError);
  OpaqueImpls impls;
  impls.emplace("g", Value::function([](const Value& v) { return Value::integer(v.as_int() + 1); }));
  EXPECT_EQ(denote(e, {}, &impls).as_int(), 4);
}

TEST(Values, StructuralEquality) {
  EXPECT_TRUE(values_equal(Value::list_of({Value::integer(1)}), Value::list_of({Value::integer(1)})));
  EXPECT_FALSE(values_equal(Value::pair(Value::integer(1), Value::integer(2)),
                            Value::pair(Value::integer(2), Value::integer(1))));
  const Value f = Value::function([](const Value& v) { return v; });
  EXPECT_FALSE(values_equal(f, f));
}

}  // namespace
}  // namespace rwpe
