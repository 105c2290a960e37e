#include "rwpe/decision_tree.hpp"

#include <algorithm>
#include <set>

#include "rwpe/errors.hpp"

namespace rwpe {
namespace {

struct Row {
  int rule;
  std::size_t num_vars;
  std::vector<Pattern> cols;  // null = wildcard that binds nothing
  std::vector<LeafCheck> checks;
};

bool wildcard_col(const Pattern& p) { return !p || is_wildcard_like(*p); }

DecisionNode node_of(DecisionNode::Kind kind) {
  DecisionNode n;
  n.kind = kind;
  return n;
}

DecisionTree make(DecisionNode n) { return std::make_shared<const DecisionNode>(std::move(n)); }

void record(Row& row, const Pattern& p, int occurrence) {
  if (p) row.checks.push_back({occurrence, p});
}

DecisionTree compile(std::vector<Row> rows, std::vector<int> occ, int next_occ) {
  if (rows.empty()) return make(node_of(DecisionNode::Kind::Failure));

  const Row& first = rows.front();
  if (std::all_of(first.cols.begin(), first.cols.end(), wildcard_col)) {
    DecisionNode leaf = node_of(DecisionNode::Kind::TryLeaf);
    leaf.rule = first.rule;
    leaf.num_vars = first.num_vars;
    leaf.checks = first.checks;
    for (std::size_t c = 0; c < first.cols.size(); ++c) {
      if (first.cols[c]) leaf.checks.push_back({occ[c], first.cols[c]});
    }
    rows.erase(rows.begin());
    leaf.on_failure = compile(std::move(rows), std::move(occ), next_occ);
    return make(std::move(leaf));
  }

  std::size_t column = 0;
  for (std::size_t c = 0; c < occ.size(); ++c) {
    if (std::any_of(rows.begin(), rows.end(), [c](const Row& r) { return !wildcard_col(r.cols[c]); })) {
      column = c;
      break;
    }
  }
  if (column != 0) {
    for (auto& r : rows) std::swap(r.cols[0], r.cols[column]);
    std::swap(occ[0], occ[column]);
    DecisionNode sw = node_of(DecisionNode::Kind::Swap);
    sw.swap_index = column;
    sw.cont = compile(std::move(rows), std::move(occ), next_occ);
    return make(std::move(sw));
  }

  DecisionNode node = node_of(DecisionNode::Kind::Switch);
  const int here = occ[0];

  std::vector<Ident> heads;
  for (const auto& r : rows) {
    const Pattern& p = r.cols[0];
    if (p && p->kind == PatternKind::Ident &&
        std::none_of(heads.begin(), heads.end(), [&](const Ident& h) { return h == *p->ident; })) {
      heads.push_back(*p->ident);
    }
  }
  std::vector<int> rest_occ(occ.begin() + 1, occ.end());
  for (const auto& h : heads) {
    std::vector<Row> spec;
    for (const auto& r : rows) {
      const Pattern& p = r.cols[0];
      if (wildcard_col(p) || (p->kind == PatternKind::Ident && *p->ident == h)) {
        Row nr{r.rule, r.num_vars, std::vector<Pattern>(r.cols.begin() + 1, r.cols.end()), r.checks};
        if (wildcard_col(p)) record(nr, p, here);
        spec.push_back(std::move(nr));
      }
    }
    node.icases.emplace_back(h, compile(std::move(spec), rest_occ, next_occ));
  }

  if (std::any_of(rows.begin(), rows.end(), [](const Row& r) { return r.cols[0] && r.cols[0]->kind == PatternKind::App; })) {
    std::vector<Row> spec;
    for (const auto& r : rows) {
      const Pattern& p = r.cols[0];
      if (!wildcard_col(p) && p->kind != PatternKind::App) continue;
      Row nr{r.rule, r.num_vars, {}, r.checks};
      if (wildcard_col(p)) {
        record(nr, p, here);
        nr.cols = {nullptr, nullptr};
      } else {
        nr.cols = {p->fn, p->arg};
      }
      nr.cols.insert(nr.cols.end(), r.cols.begin() + 1, r.cols.end());
      spec.push_back(std::move(nr));
    }
    std::vector<int> app_occ{next_occ, next_occ + 1};
    app_occ.insert(app_occ.end(), occ.begin() + 1, occ.end());
    node.app_case = compile(std::move(spec), std::move(app_occ), next_occ + 2);
  }

  std::vector<Row> defaults;
  for (const auto& r : rows) {
    if (wildcard_col(r.cols[0])) defaults.push_back(r);
  }
  node.default_case = compile(std::move(defaults), std::move(occ), next_occ);
  return make(std::move(node));
}

void render(const DecisionTree& t, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (t->kind) {
    case DecisionNode::Kind::Failure: out += pad + "Failure\n"; return;
    case DecisionNode::Kind::TryLeaf:
      out += pad + "TryLeaf " + std::to_string(t->rule) + "\n";
      if (t->on_failure->kind != DecisionNode::Kind::Failure) {
        out += pad + "on failure:\n";
        render(t->on_failure, indent + 1, out);
      }
      return;
    case DecisionNode::Kind::Swap:
      out += pad + "Swap 0<->" + std::to_string(t->swap_index) + "\n";
      render(t->cont, indent + 1, out);
      return;
    case DecisionNode::Kind::Switch:
      out += pad + "Switch\n";
      for (const auto& [id, sub] : t->icases) {
        out += pad + "  " + to_string(id) + " =>\n";
        render(sub, indent + 2, out);
      }
      if (t->app_case) {
        out += pad + "  App =>\n";
        render(t->app_case, indent + 2, out);
      }
      if (t->default_case->kind != DecisionNode::Kind::Failure) {
        out += pad + "  _ =>\n";
        render(t->default_case, indent + 2, out);
      }
      return;
  }
}

}  // namespace

DecisionTree compile_rules(const std::vector<RewriteRule>& rules) {
  if (rules.empty()) throw RuleError("EmptyRuleSet: cannot compile an empty rule set");
  std::vector<Row> rows;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto& r = rules[i];
    if (is_wildcard_like(*r.lhs)) throw RuleError("rule " + r.name + ": left-hand side is a bare wildcard");
    std::vector<int> vars;
    pattern_vars(r.lhs, vars);
    std::set<int> seen;
    for (int v : vars) {
      if (!seen.insert(v).second) throw RuleError("rule " + r.name + ": nonlinear pattern");
    }
    rows.push_back({static_cast<int>(i), r.num_vars(), {r.lhs}, {}});
  }
  return compile(std::move(rows), {0}, 1);
}

std::optional<int> eval_decision_tree(const DecisionTree& tree, const Expr& e,
                                      const std::function<bool(int, const Bindings&)>& try_rule,
                                      MatchProbe* probe) {
  std::vector<Expr> occs{e};
  std::vector<int> cols{0};
  const DecisionNode* node = tree.get();
  while (node) {
    switch (node->kind) {
      case DecisionNode::Kind::Failure: return std::nullopt;
      case DecisionNode::Kind::TryLeaf: {
        if (probe) ++probe->leaves_tried;
        Bindings b(node->num_vars);
        bool ok = true;
        for (const auto& c : node->checks) {
          if (!bind_wildcard_like(*c.pattern, occs[static_cast<std::size_t>(c.occurrence)], b)) {
            ok = false;
            break;
          }
        }
        if (ok && try_rule(node->rule, b)) return node->rule;
        node = node->on_failure.get();
        break;
      }
      case DecisionNode::Kind::Swap:
        if (node->swap_index >= cols.size()) throw MalformedTree("swap index out of range");
        std::swap(cols[0], cols[node->swap_index]);
        node = node->cont.get();
        break;
      case DecisionNode::Kind::Switch: {
        if (cols.empty()) throw MalformedTree("switch on an empty vector");
        const int id = cols[0];
        const Expr s = occs[static_cast<std::size_t>(id)];  // occs may grow below
        if (probe) {
          if (probe->head_inspections.size() <= static_cast<std::size_t>(id)) {
            probe->head_inspections.resize(static_cast<std::size_t>(id) + 1);
          }
          ++probe->head_inspections[static_cast<std::size_t>(id)];
        }
        const DecisionNode* next = nullptr;
        if (s->kind() == ExprKind::Ident) {
          for (const auto& [h, sub] : node->icases) {
            if (h == s->ident()) {
              next = sub.get();
              cols.erase(cols.begin());
              break;
            }
          }
        } else if (s->kind() == ExprKind::App && node->app_case) {
          const int f = static_cast<int>(occs.size());
          occs.push_back(s->fn());
          occs.push_back(s->arg());
          cols[0] = f;
          cols.insert(cols.begin() + 1, f + 1);
          next = node->app_case.get();
        }
        node = next ? next : node->default_case.get();
        break;
      }
    }
  }
  return std::nullopt;
}

std::optional<std::pair<int, Bindings>> naive_first_match(const std::vector<RewriteRule>& rules, const Expr& e) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (auto b = match_pattern(rules[i].lhs, e, rules[i].num_vars())) return std::make_pair(static_cast<int>(i), *b);
  }
  return std::nullopt;
}

std::string to_string(const DecisionTree& tree) {
  std::string out;
  render(tree, 0, out);
  return out;
}

std::size_t count_switches_on(const DecisionTree& tree, const Ident& id) {
  if (!tree) return 0;
  std::size_t n = 0;
  if (tree->kind == DecisionNode::Kind::Switch) {
    for (const auto& [h, sub] : tree->icases) {
      if (h == id) ++n;
      n += count_switches_on(sub, id);
    }
    n += count_switches_on(tree->app_case, id) + count_switches_on(tree->default_case, id);
  }
  n += count_switches_on(tree->on_failure, id) + count_switches_on(tree->cont, id);
  return n;
}

}  // namespace rwpe
