#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "rwpe/baseline.hpp"
#include "rwpe/bench.hpp"
#include "rwpe/bounds.hpp"
#include "rwpe/denote.hpp"
#include "rwpe/nbe.hpp"
#include "rwpe/rule_syntax.hpp"
#include "rwpe/sampling.hpp"
#include "rwpe/syntax.hpp"
#include "rwpe/typecheck.hpp"

namespace rwpe::cli {

namespace {

/// Error that maps to a specific exit code.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Exit{kUsage, "cannot read " + path};
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::uint64_t seed_from_env() {
  if (const char* s = std::getenv("RF_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Exit{kUsage, std::string("RF_SEED is not an integer: ") + s};
    }
  }
  return 1;
}

/// `a..b:step`, `a..b`, `a,b,c` or `a`.
std::vector<int> parse_grid(const std::string& spec) {
  std::vector<int> out;
  try {
    if (auto dots = spec.find(".."); dots != std::string::npos) {
      const int lo = std::stoi(spec.substr(0, dots));
      std::string rest = spec.substr(dots + 2);
      int step = 1;
      if (auto colon = rest.find(':'); colon != std::string::npos) {
        step = std::stoi(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
      }
      const int hi = std::stoi(rest);
      if (step <= 0) throw Exit{kUsage, "grid step must be positive: " + spec};
      for (int v = lo; v <= hi; v += step) out.push_back(v);
    } else {
      std::stringstream ss(spec);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    }
  } catch (const std::logic_error&) {
    throw Exit{kUsage, "malformed grid: " + spec};
  }
  if (out.empty()) throw Exit{kUsage, "empty grid: " + spec};
  return out;
}

struct BoundSpec {
  std::string name;
  Int lo;
  Int hi;
};

/// `name=lo..hi` with an exclusive upper bound.
BoundSpec parse_bound(const std::string& spec) {
  const auto eq = spec.find('=');
  const auto dots = spec.find("..");
  if (eq == std::string::npos || dots == std::string::npos || dots < eq) {
    throw Exit{kUsage, "malformed bound (expected name=lo..hi): " + spec};
  }
  auto lo = parse_int(spec.substr(eq + 1, dots - eq - 1));
  auto hi = parse_int(spec.substr(dots + 2));
  if (!lo || !hi || *lo >= *hi) throw Exit{kUsage, "malformed bound (need lo < hi): " + spec};
  return {spec.substr(0, eq), *lo, *hi};
}

struct RuleOptions {
  std::vector<std::string> files;
  bool standard = false;
};

struct LoadedRules {
  std::vector<RewriteRule> rules;
  SymbolTable symbols;
};

LoadedRules load_rules(const RuleOptions& opts) {
  LoadedRules out;
  if (opts.standard || opts.files.empty()) out.rules = standard_rules();
  for (const auto& path : opts.files) {
    const std::string text = read_file(path);
    try {
      RuleFile file = parse_rules(text, true, &out.symbols);
      out.symbols = file.symbols;
      for (auto& r : file.rules) out.rules.push_back(std::move(r));
    } catch (const ParseError& e) {
      throw Exit{kUsage, path + ":" + e.what()};
    } catch (const RuleError& e) {
      throw Exit{kFailure, path + ": " + e.what()};
    }
  }
  for (std::size_t i = 0; i < out.rules.size(); ++i) out.rules[i].priority = static_cast<int>(i);
  return out;
}

struct TermOptions {
  std::string text;
  std::string file;
  std::vector<std::string> vars;
};

Expr load_term(const TermOptions& opts, TermContext& ctx, std::istream& in) {
  for (const auto& decl : opts.vars) {
    const auto colon = decl.find(':');
    if (colon == std::string::npos) throw Exit{kUsage, "malformed --var (expected name:type): " + decl};
    try {
      ctx.declare(decl.substr(0, colon), parse_type(decl.substr(colon + 1)));
    } catch (const ParseError& e) {
      throw Exit{kUsage, "--var " + decl + ": " + e.what()};
    }
  }
  std::string text = opts.text;
  if (!opts.file.empty()) {
    text = read_file(opts.file);
  } else if (text.empty()) {
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    Expr e = parse_term(text, ctx);
    type_check(e);
    return e;
  } catch (const ParseError& e) {
    throw Exit{kUsage, std::string("term:") + e.what()};
  } catch (const TypeError& e) {
    throw Exit{kUsage, std::string("term: ") + e.what()};
  }
}

/// Resolves `--bounds` names against free variables and top-level lambda
/// parameters.
BoundsEnv resolve_bounds(const std::vector<BoundSpec>& specs, const Expr& e, const TermContext& ctx,
                         IntRanges& ranges) {
  BoundsEnv env;
  for (const auto& s : specs) {
    std::optional<VarId> id;
    if (auto it = ctx.free_vars.find(s.name); it != ctx.free_vars.end()) id = it->second->var();
    for (const ExprNode* cur = e.get(); !id && cur->kind() == ExprKind::Abs; cur = cur->body().get()) {
      if (cur->hint() == s.name) id = cur->var();
    }
    if (!id) throw Exit{kUsage, "--bounds names an unknown variable: " + s.name};
    env.insert_or_assign(*id, AbstractValue::interval(s.lo, s.hi));
    ranges.insert_or_assign(*id, std::make_pair(s.lo, s.hi));
  }
  return env;
}

/// Applies leading lambdas of `e` to random arguments within `ranges`.
struct Sample {
  ValueEnv env;
  std::vector<Value> args;
};

Sample sample_inputs(const Expr& e, Rng& rng, const IntRanges& ranges) {
  Sample s;
  s.env = random_valuation(e, rng, ranges);
  for (const ExprNode* cur = e.get(); cur->kind() == ExprKind::Abs; cur = cur->body().get()) {
    if (auto it = ranges.find(cur->var()); it != ranges.end() && cur->var_type() == int_type()) {
      s.args.push_back(Value::integer(random_int(rng, it->second.first, it->second.second)));
    } else {
      s.args.push_back(random_value(cur->var_type(), rng));
    }
  }
  return s;
}

Value apply_all(Value f, const std::vector<Value>& args) {
  for (const auto& a : args) f = f(a);
  return f;
}

/// Compares `a` and `b` through the interpreter on `samples` valuations.
bool verify(const Expr& a, const Expr& b, const SymbolTable& symbols, const IntRanges& ranges, int samples,
            std::uint64_t seed, std::ostream& err) {
  Rng rng(seed);
  const OpaqueImpls opaques = random_opaques(symbols, rng);
  return with_big_stack([&] {
    for (int k = 0; k < samples; ++k) {
      const Sample s = sample_inputs(a, rng, ranges);
      Type t = a->type();
      for (std::size_t i = 0; i < s.args.size(); ++i) t = t->codomain();
      std::optional<Value> va;
      try {
        va = apply_all(denote(a, s.env, &opaques), s.args);
      } catch (const EvalError&) {
        continue;  // the input itself fails on this valuation
      }
      const Value vb = apply_all(denote(b, s.env, &opaques), s.args);
      if (!values_agree(*va, vb, t, rng)) {
        err << "verify: mismatch on valuation " << k << ": " << to_string(*va) << " vs " << to_string(vb) << "\n";
        return false;
      }
    }
    return true;
  });
}

void print_trace(const std::vector<TraceStep>& trace, std::ostream& out) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    out << "# step " << (i + 1) << ": " << s.rule << " at [";
    for (std::size_t k = 0; k < s.path.size(); ++k) out << (k ? "," : "") << s.path[k];
    out << "] size " << s.before_size << "->" << s.after_size << " goal " << s.goal_size << "\n";
  }
}

void add_rule_options(CLI::App* cmd, RuleOptions& opts) {
  cmd->add_option("--rules", opts.files, "Rule file (repeatable); default: the standard library");
  cmd->add_flag("--std", opts.standard, "Also load the standard rule library");
}

void add_term_options(CLI::App* cmd, TermOptions& opts) {
  cmd->add_option("--term", opts.text, "Term text (default: read stdin)");
  cmd->add_option("--file", opts.file, "Read the term from a file");
  cmd->add_option("--var", opts.vars, "Declare a free variable, name:type (repeatable)");
}

int cmd_check(const std::vector<std::string>& files, std::ostream& out, std::ostream& err) {
  bool ok = true;
  for (const auto& path : files) {
    const std::string text = read_file(path);
    RuleFile file;
    try {
      file = parse_rules(text, false);
    } catch (const ParseError& e) {
      throw Exit{kUsage, path + ":" + e.what()};
    }
    for (std::size_t i = 0; i < file.rules.size(); ++i) {
      const auto& r = file.rules[i];
      const auto errors = check_rule_wf(r);
      if (errors.empty()) {
        out << path << ":" << file.lines[i] << ": ok " << r.name << "\n";
        continue;
      }
      ok = false;
      for (const auto& e : errors) {
        out << path << ":" << file.lines[i] << ": FAIL " << r.name << ": " << to_string(e.kind)
            << (e.var.empty() ? "" : " '" + e.var + "'") << ": " << e.message << "\n";
      }
    }
  }
  if (!ok) err << "check: some rules are ill-formed\n";
  return ok ? kOk : kFailure;
}

struct RewriteOptions {
  RuleOptions rules;
  TermOptions term;
  std::string engine = "nbe";
  bool trace = false;
  bool verify = false;
  int samples = 20;
  std::size_t fuel = 10000;
  std::uint64_t budget = 10'000'000;
  bool no_inline_constants = false;
  std::vector<std::string> bounds;
  bool quiet = false;
};

int cmd_rewrite(const RewriteOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  const std::optional<EngineKind> engine = parse_engine(o.engine);
  if (!engine) throw Exit{kUsage, "unknown engine: " + o.engine};
  if (o.fuel < 1) throw Exit{kUsage, "--fuel must be at least 1"};
  LoadedRules rules = load_rules(o.rules);
  TermContext ctx;
  ctx.symbols = &rules.symbols;
  Expr input = load_term(o.term, ctx, in);

  const Expr original = input;
  IntRanges ranges;
  if (!o.bounds.empty()) {
    std::vector<BoundSpec> specs;
    for (const auto& b : o.bounds) specs.push_back(parse_bound(b));
    const BoundsEnv env = resolve_bounds(specs, input, ctx, ranges);
    try {
      input = analyze_and_clip(input, env);
    } catch (const NonStraightlineInput& e) {
      throw Exit{kUsage, std::string("--bounds: ") + e.what()};
    }
  }

  Expr output;
  std::vector<TraceStep> trace;
  if (*engine == EngineKind::Nbe) {
    EngineConfig cfg;
    cfg.fuel = o.fuel;
    cfg.budget = o.budget;
    cfg.inline_constants = !o.no_inline_constants;
    RuleSet compiled(rules.rules);
    RewriteResult r = rewrite_top(input, compiled, cfg);
    output = r.expr;
    if (!o.quiet) err << r.stats.to_kv();
  } else {
    const Order order = *engine == EngineKind::NaiveTopDown ? Order::TopDown : Order::BottomUp;
    ExhaustiveResult r;
    try {
      r = with_big_stack([&] { return rewrite_exhaustive(input, rules.rules, order, o.budget); });
    } catch (const StepBudgetExhausted& e) {
      if (o.trace) print_trace(e.partial().trace, out);
      throw;
    }
    output = r.expr;
    const TraceCost cost = trace_cost(r.trace);
    if (!o.quiet) err << "trace_steps=" << cost.steps << "\ntrace_goal_size=" << cost.total_goal_size << "\n";
    trace = std::move(r.trace);
  }
  out << print_term(output) << "\n";
  if (o.trace) print_trace(trace, out);
  if (o.verify) {
    if (!verify(original, output, rules.symbols, ranges, o.samples, seed_from_env(), err)) return kFailure;
    err << "verify: ok (" << o.samples << " valuations)\n";
  }
  return kOk;
}

struct BenchCmdOptions {
  std::string family;
  std::string engines = "nbe";
  std::string n = "1..4";
  std::string m = "1";
  int reps = 3;
  std::string out;
  RuleOptions rules;
  std::uint64_t budget = 10'000'000;
  double timeout = 120.0;
  int valuations = 5;
};

int cmd_bench(const BenchCmdOptions& o, std::ostream& out, std::ostream& err) {
  const std::optional<Family> family = parse_family(o.family);
  if (!family) throw Exit{kUsage, "unknown family: " + o.family};
  std::vector<EngineKind> engines;
  {
    std::stringstream ss(o.engines);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto e = parse_engine(item);
      if (!e) throw Exit{kUsage, "unknown engine: " + item};
      engines.push_back(*e);
    }
  }
  if (o.reps < 1) throw Exit{kUsage, "--reps must be at least 1"};
  std::vector<std::pair<int, int>> grid;
  const std::vector<int> ns = parse_grid(o.n);
  const std::vector<int> ms = *family == Family::UnderLetsPlus0 ? std::vector<int>{0} : parse_grid(o.m);
  for (int n : ns) {
    for (int m : ms) grid.emplace_back(n, m);
  }
  const LoadedRules rules = load_rules(o.rules);
  BenchOptions opts;
  opts.repetitions = o.reps;
  opts.budget = o.budget;
  opts.baseline_max_steps = o.budget;
  opts.cell_timeout_seconds = o.timeout;
  opts.seed = seed_from_env();
  opts.valuations = o.valuations;

  std::vector<BenchRecord> records;
  for (EngineKind e : engines) {
    auto rs = run_family(*family, e, grid, opts, rules.rules);
    for (const auto& r : rs) {
      err << r.family << " " << r.engine << " n=" << r.n << " m=" << r.m << " " << r.status << " "
          << r.wall_time_s << "s\n";
    }
    records.insert(records.end(), rs.begin(), rs.end());
  }
  if (o.out.empty()) {
    write_csv(out, records);
  } else {
    std::ofstream f(o.out);
    if (!f) throw Exit{kUsage, "cannot write " + o.out};
    write_csv(f, records);
  }
  const bool ok = std::all_of(records.begin(), records.end(), [](const BenchRecord& r) { return r.status == "ok"; });
  return ok ? kOk : kFailure;
}

struct BoundsCmdOptions {
  TermOptions term;
  std::vector<std::string> bounds;
};

int cmd_analyze_bounds(const BoundsCmdOptions& o, std::istream& in, std::ostream& out, std::ostream& err) {
  TermContext ctx;
  const Expr input = load_term(o.term, ctx, in);
  std::vector<BoundSpec> specs;
  for (const auto& b : o.bounds) specs.push_back(parse_bound(b));
  IntRanges ranges;
  const BoundsEnv env = resolve_bounds(specs, input, ctx, ranges);
  BoundsResult r;
  try {
    r = analyze_bounds(input, env);
  } catch (const NonStraightlineInput& e) {
    throw Exit{kUsage, std::string("analyze-bounds: ") + e.what()};
  }
  out << print_term(r.clipped) << "\n";
  // Report let-bound variables in binding order.
  const ExprNode* cur = input.get();
  while (cur->kind() == ExprKind::Abs) cur = cur->body().get();
  while (cur->kind() == ExprKind::LetIn) {
    if (auto it = r.bounds.find(cur->var()); it != r.bounds.end()) {
      err << cur->hint() << ": " << to_string(it->second) << "\n";
    }
    cur = cur->body().get();
  }
  err << "result: " << to_string(r.result) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rewriting and partial evaluation by normalization"};
  app.name("rwpe");
  app.require_subcommand(1);

  std::vector<std::string> check_files;
  auto* check = app.add_subcommand("check", "Check rule files for well-formedness");
  check->add_option("files", check_files, "Rule files")->required();

  RewriteOptions rw;
  auto* rewrite = app.add_subcommand("rewrite", "Normalize a term with rewrite rules");
  add_rule_options(rewrite, rw.rules);
  add_term_options(rewrite, rw.term);
  rewrite->add_option("--engine", rw.engine, "nbe | naive-topdown | naive-bottomup")->capture_default_str();
  rewrite->add_flag("--trace", rw.trace, "Print the step list of a naive engine");
  rewrite->add_flag("--verify", rw.verify, "Compare input and output through the interpreter");
  rewrite->add_option("--samples", rw.samples, "Valuations used by --verify")->capture_default_str();
  rewrite->add_option("--fuel", rw.fuel, "Maximum consecutive rule applications at one node")->capture_default_str();
  rewrite->add_option("--budget", rw.budget, "Maximum total rewrite steps")->capture_default_str();
  rewrite->add_flag("--no-inline-constants", rw.no_inline_constants, "Keep lets bound to constants");
  rewrite->add_option("--bounds", rw.bounds, "Input bound name=lo..hi (exclusive hi); clips before rewriting");
  rewrite->add_flag("--quiet", rw.quiet, "Do not print statistics");

  BenchCmdOptions bo;
  auto* bench = app.add_subcommand("bench", "Time engines on a benchmark family and write CSV");
  bench->add_option("family", bo.family, "plus0tree | underlets_plus0 | liftlets_map")->required();
  bench->add_option("--engines", bo.engines, "Comma-separated engines")->capture_default_str();
  bench->add_option("--n", bo.n, "Grid for n: a..b[:step] or a,b,c")->capture_default_str();
  bench->add_option("--m", bo.m, "Grid for m")->capture_default_str();
  bench->add_option("--reps", bo.reps, "Timed repetitions per cell")->capture_default_str();
  bench->add_option("--out", bo.out, "CSV output path (default: stdout)");
  bench->add_option("--budget", bo.budget, "Step budget per run")->capture_default_str();
  bench->add_option("--timeout", bo.timeout, "Seconds per cell")->capture_default_str();
  bench->add_option("--valuations", bo.valuations, "Interpreter checks per cell")->capture_default_str();
  add_rule_options(bench, bo.rules);

  BoundsCmdOptions ab;
  auto* bounds = app.add_subcommand("analyze-bounds", "Infer intervals and insert clips");
  add_term_options(bounds, ab.term);
  bounds->add_option("--bounds", ab.bounds, "Input bound name=lo..hi (exclusive hi)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(check_files, out, err);
    if (rewrite->parsed()) return cmd_rewrite(rw, in, out, err);
    if (bench->parsed()) return cmd_bench(bo, out, err);
    if (bounds->parsed()) return cmd_analyze_bounds(ab, in, out, err);
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << "\n";
    return kUsage;
  } catch (const RuleError& e) {
    err << "rule error: " << e.what() << "\n";
    return kFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kEngine;
  }
  return kUsage;
}

}  // namespace rwpe::cli
