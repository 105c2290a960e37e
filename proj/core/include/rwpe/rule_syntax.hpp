#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rwpe/rule.hpp"
#include "rwpe/syntax.hpp"

namespace rwpe {

/// A parsed rule file: opaque declarations and rules in declaration order.
struct RuleFile {
  std::vector<RewriteRule> rules;
  SymbolTable symbols;
  std::vector<std::string> opaque_order;  // declaration order of `symbols`
  std::vector<std::size_t> lines;         // source line of each rule
};

/// Parses a rule file. Items:
///   opaque NAME : TYPE
///   rule NAME : [forall BINDER+ ,] [when COND ,] LHS => RHS
/// where BINDER is `(x : T)` for a pattern variable or `('x : T)` for one
/// that only matches constants. COND is a boolean expression over constant
/// variables (+ - * ^ log2floor == != < <= > >= && || not). In the rhs,
/// `'(COND)` is an integer computed from constant bindings and `clip[l,u]`
/// may use constant variables as bounds. Rules get priorities in file order.
/// Throws ParseError on syntax or type errors and, when `check` is set,
/// RuleError on the first ill-formed rule.
RuleFile parse_rules(std::string_view text, bool check = true, const SymbolTable* base = nullptr);

/// Renders a rule in the syntax accepted by parse_rules.
std::string print_rule(const RewriteRule& rule);
/// Renders opaque declarations followed by the rules.
std::string print_rules(const RuleFile& file);

/// Equality up to renaming of pattern variables, computed values and
/// rhs binders.
bool rules_equivalent(const RewriteRule& a, const RewriteRule& b);

/// The built-in rule library as source text.
std::string_view standard_rules_text();
/// The built-in rule library, parsed once.
const std::vector<RewriteRule>& standard_rules();

}  // namespace rwpe
