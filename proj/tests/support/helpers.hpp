#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rwpe/decision_tree.hpp"
#include "rwpe/denote.hpp"
#include "rwpe/expr.hpp"
#include "rwpe/nbe.hpp"
#include "rwpe/sampling.hpp"
#include "rwpe/syntax.hpp"

namespace rwpe::testing {

/// Evaluates `a` and `b` under `samples` random valuations of their free
/// variables and returns a description of the first disagreement.
std::optional<std::string> semantic_mismatch(const Expr& a, const Expr& b, Rng& rng, int samples,
                                             const IntRanges& ranges = {}, const OpaqueImpls* opaques = nullptr);

/// The standard rule library compiled once.
const RuleSet& standard_rule_set();

/// Parses `text` in `ctx`, declaring each `name:type` pair of `vars` first.
Expr parse_with(std::string_view text, TermContext& ctx,
                std::initializer_list<std::pair<std::string, std::string>> vars = {});

/// Runs the compiled decision tree and first-match naive matching (both
/// honoring side conditions) on `e`; returns a description of any
/// disagreement in rule choice or bindings.
std::optional<std::string> tree_vs_naive(const std::vector<RewriteRule>& rules, const DecisionTree& tree, const Expr& e);

/// Opaque interpretations for the symbols used by random rule sets.
const OpaqueImpls& test_opaques();

}  // namespace rwpe::testing
