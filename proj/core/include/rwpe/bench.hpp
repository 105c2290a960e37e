#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rwpe/baseline.hpp"
#include "rwpe/errors.hpp"
#include "rwpe/expr.hpp"
#include "rwpe/nbe.hpp"
#include "rwpe/rule.hpp"
#include "rwpe/term_ops.hpp"

namespace rwpe {

/// Balanced `+` tree of depth n whose 2^n leaves are `x + 0 + ... + 0` (m zeros).
Expr gen_plus0tree(int n, int m, const Expr& x);
/// The same tree with every leaf replaced by `x`.
Expr expected_plus0tree(int n, const Expr& x);

/// `let v1 = x + 0 in let v2 = v1 + 0 in ... vn`.
Expr gen_underlets_plus0(int n, const Expr& x);

/// make(n, m, v) with map_dbl written as list_rect over
/// `\h t r. (let y = h + h in y) :: r` and make as nat_rect over m rounds.
Expr gen_liftlets_map(int n, int m, const Expr& v);
/// The normal form produced by the NbE engine: m rounds of n let-bound
/// doublings (each round binds its last element first), then the list.
Expr expected_liftlets_map(int n, int m, const Expr& v);

enum class Family { Plus0Tree, UnderLetsPlus0, LiftLetsMap };
enum class EngineKind { Nbe, NaiveTopDown, NaiveBottomUp };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
std::string_view engine_name(EngineKind e);
std::optional<EngineKind> parse_engine(std::string_view name);

struct FamilyInstance {
  Expr input;
  Expr expected;
  /// The free variable (`x` or `v`) of type int.
  Expr free_var;
};

FamilyInstance make_instance(Family f, int n, int m);

struct BenchRecord {
  std::string family;
  std::string engine;
  int n = 0;
  int m = 0;
  double wall_time_s = 0.0;
  std::uint64_t rule_apps = 0;
  std::uint64_t nodes_visited = 0;
  std::uint64_t lets_lifted = 0;
  std::uint64_t trace_steps = 0;
  std::uint64_t trace_goal_size = 0;
  std::uint64_t output_lets = 0;
  std::string status;
  /// Full NbE statistics (not serialized).
  RewriteStats stats;
};

struct BenchOptions {
  int repetitions = 3;
  /// Each repetition batches runs until it lasts at least this long.
  double min_batch_seconds = 0.005;
  double cell_timeout_seconds = 120.0;
  std::uint64_t budget = 10'000'000;
  std::size_t baseline_max_steps = 10'000'000;
  std::uint64_t seed = 1;
  int valuations = 5;
};

/// Output and statistics of one engine run.
struct EngineRun {
  Expr output;
  RewriteStats stats;
  std::vector<TraceStep> trace;
};

EngineRun run_engine(EngineKind engine, const Expr& input, const std::vector<RewriteRule>& rules,
                     const RuleSet& compiled, const BenchOptions& options);

/// Times `engine` on every (n, m) cell after verifying its output against
/// the family's expected normal form and the interpreter. Failures are
/// recorded in `status` instead of aborting the sweep.
std::vector<BenchRecord> run_family(Family family, EngineKind engine, const std::vector<std::pair<int, int>>& grid,
                                    const BenchOptions& options, const std::vector<RewriteRule>& rules);

class InsufficientData : public Error {
 public:
  using Error::Error;
};

struct ScalingFit {
  double exponent = 0.0;
  double r_squared = 0.0;
};

/// Least-squares slope of log(y) against log(x). Needs at least four points
/// with positive coordinates.
ScalingFit fit_scaling(const std::vector<double>& xs, const std::vector<double>& ys);

inline constexpr std::string_view kCsvHeader =
    "family,engine,n,m,wall_time_s,rule_apps,nodes_visited,lets_lifted,trace_steps,trace_goal_size,output_lets,status";

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records, bool header = true);

}  // namespace rwpe
