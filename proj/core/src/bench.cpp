#include "rwpe/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "rwpe/denote.hpp"
#include "rwpe/stack.hpp"

namespace rwpe {

Expr gen_plus0tree(int n, int m, const Expr& x) {
  Expr leaf = x;
  for (int i = 0; i < m; ++i) leaf = mk_add(leaf, mk_int(0));
  Expr t = leaf;
  for (int i = 0; i < n; ++i) t = mk_add(t, t);
  return t;
}

Expr expected_plus0tree(int n, const Expr& x) { return gen_plus0tree(n, 0, x); }

Expr gen_underlets_plus0(int n, const Expr& x) {
  std::vector<VarId> ids(static_cast<std::size_t>(n));
  std::vector<const std::string*> hints(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ids[i] = fresh_var_id();
    hints[i] = intern_hint("v" + std::to_string(i + 1));
  }
  const Type i = int_type();
  Expr body = mk_var(ids.back(), i, hints.back());
  for (std::size_t k = ids.size(); k-- > 0;) {
    Expr prev = k == 0 ? x : mk_var(ids[k - 1], i, hints[k - 1]);
    body = mk_let(ids[k], mk_add(prev, mk_int(0)), std::move(body), hints[k]);
  }
  return body;
}

Expr gen_liftlets_map(int n, int m, const Expr& v) {
  const Type i = int_type();
  const Type l = list_type(i);
  Expr step_fn = mk_lambda(i, "h", [&](const Expr& h) {
    return mk_lambda(l, "t", [&](const Expr&) {
      return mk_lambda(l, "r", [&](const Expr& r) {
        return mk_cons(mk_let_fresh(mk_add(h, h), "y", [](const Expr& y) { return y; }), r);
      });
    });
  });
  Expr round = mk_lambda(i, "k", [&](const Expr&) {
    return mk_lambda(l, "acc", [&](const Expr& acc) {
      return mk_apps(mk_ident(Ident::list_rect(i, l)), {mk_ident(Ident::nil(i)), step_fn, acc});
    });
  });
  Expr base = mk_list(i, std::vector<Expr>(static_cast<std::size_t>(n), v));
  return mk_apps(mk_ident(Ident::nat_rect(l)), {base, round, mk_int(m)});
}

Expr expected_liftlets_map(int n, int m, const Expr& v) {
  struct Binding {
    VarId id;
    Expr rhs;
  };
  const std::string* hint = intern_hint("y");
  std::vector<Expr> cur(static_cast<std::size_t>(n), v);
  std::vector<Binding> lets;
  for (int round = 0; round < m; ++round) {
    for (std::size_t k = cur.size(); k-- > 0;) {
      const VarId id = fresh_var_id();
      lets.push_back({id, mk_add(cur[k], cur[k])});
      cur[k] = mk_var(id, int_type(), hint);
    }
  }
  Expr body = mk_list(int_type(), cur);
  for (auto it = lets.rbegin(); it != lets.rend(); ++it) body = mk_let(it->id, it->rhs, std::move(body), hint);
  return body;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Plus0Tree: return "plus0tree";
    case Family::UnderLetsPlus0: return "underlets_plus0";
    case Family::LiftLetsMap: return "liftlets_map";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::Plus0Tree, Family::UnderLetsPlus0, Family::LiftLetsMap}) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

std::string_view engine_name(EngineKind e) {
  switch (e) {
    case EngineKind::Nbe: return "nbe";
    case EngineKind::NaiveTopDown: return "naive-topdown";
    case EngineKind::NaiveBottomUp: return "naive-bottomup";
  }
  return "?";
}

std::optional<EngineKind> parse_engine(std::string_view name) {
  for (EngineKind e : {EngineKind::Nbe, EngineKind::NaiveTopDown, EngineKind::NaiveBottomUp}) {
    if (engine_name(e) == name) return e;
  }
  return std::nullopt;
}

FamilyInstance make_instance(Family f, int n, int m) {
  switch (f) {
    case Family::Plus0Tree: {
      Expr x = mk_var(fresh_var_id(), int_type(), "x");
      return {gen_plus0tree(n, m, x), expected_plus0tree(n, x), x};
    }
    case Family::UnderLetsPlus0: {
      Expr x = mk_var(fresh_var_id(), int_type(), "x");
      return {gen_underlets_plus0(n, x), x, x};
    }
    case Family::LiftLetsMap: {
      Expr v = mk_var(fresh_var_id(), int_type(), "v");
      return {gen_liftlets_map(n, m, v), expected_liftlets_map(n, m, v), v};
    }
  }
  throw Error("unknown family");
}

EngineRun run_engine(EngineKind engine, const Expr& input, const std::vector<RewriteRule>& rules,
                     const RuleSet& compiled, const BenchOptions& options) {
  EngineRun run;
  if (engine == EngineKind::Nbe) {
    EngineConfig cfg;
    cfg.budget = options.budget;
    RewriteResult r = rewrite_top(input, compiled, cfg);
    run.output = std::move(r.expr);
    run.stats = std::move(r.stats);
  } else {
    const Order order = engine == EngineKind::NaiveTopDown ? Order::TopDown : Order::BottomUp;
    ExhaustiveResult r =
        with_big_stack([&] { return rewrite_exhaustive(input, rules, order, options.baseline_max_steps); });
    run.output = std::move(r.expr);
    run.trace = std::move(r.trace);
  }
  return run;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool oracle_agrees(const FamilyInstance& inst, const Expr& output, const BenchOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<long long> dist(-1000, 1000);
  return with_big_stack([&] {
    for (int k = 0; k < options.valuations; ++k) {
      ValueEnv env{{inst.free_var->var(), Value::integer(dist(rng))}};
      if (!values_equal(denote(inst.input, env), denote(output, env))) return false;
    }
    return true;
  });
}

}  // namespace

std::vector<BenchRecord> run_family(Family family, EngineKind engine, const std::vector<std::pair<int, int>>& grid,
                                    const BenchOptions& options, const std::vector<RewriteRule>& rules) {
  const RuleSet compiled(rules);
  std::vector<BenchRecord> out;
  for (const auto& [n, m] : grid) {
    BenchRecord rec;
    rec.family = family_name(family);
    rec.engine = engine_name(engine);
    rec.n = n;
    rec.m = m;
    const FamilyInstance inst = make_instance(family, n, m);
    EngineRun first;
    const auto start = Clock::now();
    try {
      first = run_engine(engine, inst.input, rules, compiled, options);
    } catch (const BudgetExhausted&) {
      rec.status = "budget_exhausted";
    } catch (const StepBudgetExhausted&) {
      rec.status = "budget_exhausted";
    } catch (const FuelExhausted&) {
      rec.status = "fuel_exhausted";
    } catch (const Error& e) {
      rec.status = "error";
    }
    const double warmup = seconds_since(start);
    if (!rec.status.empty()) {
      rec.wall_time_s = warmup;
      out.push_back(std::move(rec));
      continue;
    }

    rec.stats = first.stats;
    rec.output_lets = term_stats(first.output).let_count;
    if (engine == EngineKind::Nbe) {
      rec.rule_apps = first.stats.total_rule_applications();
      rec.nodes_visited = first.stats.nodes_visited;
      rec.lets_lifted = first.stats.lets_lifted;
    } else {
      const TraceCost cost = trace_cost(first.trace);
      rec.trace_steps = cost.steps;
      rec.trace_goal_size = cost.total_goal_size;
      rec.lets_lifted = count_steps(first.trace, "let_lift");
      for (const auto& s : first.trace) {
        const bool user = std::any_of(rules.begin(), rules.end(), [&](const RewriteRule& r) { return r.name == s.rule; });
        rec.rule_apps += user ? 1 : 0;
      }
    }

    const bool shape_checked = !(family == Family::LiftLetsMap && engine != EngineKind::Nbe);
    bool ok = !shape_checked || alpha_eq(first.output, inst.expected);
    if (ok) {
      try {
        ok = oracle_agrees(inst, first.output, options);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) {
      rec.status = "mismatch";
      rec.wall_time_s = warmup;
      out.push_back(std::move(rec));
      continue;
    }
    if (warmup > options.cell_timeout_seconds) {
      rec.status = "timeout";
      rec.wall_time_s = warmup;
      out.push_back(std::move(rec));
      continue;
    }

    std::vector<double> times;
    for (int r = 0; r < std::max(1, options.repetitions); ++r) {
      int runs = 0;
      const auto t0 = Clock::now();
      do {
        run_engine(engine, inst.input, rules, compiled, options);
        ++runs;
      } while (seconds_since(t0) < options.min_batch_seconds);
      times.push_back(seconds_since(t0) / runs);
    }
    std::sort(times.begin(), times.end());
    rec.wall_time_s = times[times.size() / 2];
    rec.status = "ok";
    out.push_back(std::move(rec));
  }
  return out;
}

ScalingFit fit_scaling(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 4) throw InsufficientData("need at least four points");
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0 || ys[i] <= 0) throw InsufficientData("coordinates must be positive");
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  const double vx = sxx - sx * sx / k;
  if (vx <= 0) throw InsufficientData("x values must not all be equal");
  const double cov = sxy - sx * sy / k;
  const double vy = syy - sy * sy / k;
  ScalingFit fit;
  fit.exponent = cov / vx;
  fit.r_squared = vy <= 0 ? 1.0 : (cov * cov) / (vx * vy);
  return fit;
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, bool header) {
  if (header) out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.family << ',' << r.engine << ',' << r.n << ',' << r.m << ',' << r.wall_time_s << ',' << r.rule_apps << ','
        << r.nodes_visited << ',' << r.lets_lifted << ',' << r.trace_steps << ',' << r.trace_goal_size << ','
        << r.output_lets << ',' << r.status << '\n';
  }
}

}  // namespace rwpe
