#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rgcap/bounds.hpp"
#include "rgcap/generators.hpp"
#include "rgcap/graph.hpp"

namespace rgcap {

/// Thrown when a run would exceed its configured work budget.
class BudgetExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Terminals at ring distance floor(n/2) from the source (then the following
/// nodes clockwise when alpha > 1).
struct AntipodalTerminals {};
/// alpha distinct non-source nodes drawn per trial.
struct RandomTerminals {};
struct ExplicitTerminals {
  std::vector<NodeId> nodes;
};
using TerminalPolicy = std::variant<AntipodalTerminals, RandomTerminals, ExplicitTerminals>;

/// Antipodal for the ring models, random for DRN.
TerminalPolicy default_terminal_policy(const ModelParams& model);
const char* to_string(const TerminalPolicy& policy) noexcept;

inline constexpr std::uint64_t kDefaultWorkBudget = 200'000'000;

struct ExperimentConfig {
  ModelParams model;
  std::size_t alpha = 1;
  std::optional<double> d;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  CapacityMode mode = CapacityMode::Paper;
  std::optional<TerminalPolicy> terminal_policy;  // default by model when empty
  NodeId source = 0;
  std::size_t workers = 1;
  /// Refuse runs with n * trials above this.
  std::uint64_t work_budget = kDefaultWorkBudget;
};

struct ProportionEstimate {
  std::size_t count = 0;
  double frequency = 0.0;
  double ci_low = 0.0;  // 95% Clopper-Pearson
  double ci_high = 0.0;
};

struct ExperimentResult {
  BoundReport report;
  std::size_t trials = 0;
  std::uint64_t master_seed = 0;
  CapacityMode mode = CapacityMode::Paper;
  std::string terminal_policy;
  std::vector<double> capacities;  // ordered by trial index
  std::size_t lower_violations = 0;  // C <= lower_threshold
  std::size_t upper_violations = 0;  // C >= upper_threshold
  ProportionEstimate lower_frequency;
  ProportionEstimate upper_frequency;
  /// Theoretical bound times trials.
  double lower_budget = 0.0;
  double upper_budget = 0.0;
  bool lower_within_budget = true;
  bool upper_within_budget = true;
  double mean_capacity = 0.0;
  double min_capacity = 0.0;
  double max_capacity = 0.0;
  double mean_ratio = 0.0;  // mean of C / c_min
  double std_ratio = 0.0;   // sample standard deviation of C / c_min
  double runtime_seconds = 0.0;
  double mean_trial_ms = 0.0;
  std::vector<std::string> warnings;
};

/// Per-trial seed: derive_seed(master_seed, "trial", index).
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index);

/// Sources and terminals used for trial `index` under `config`.
RoleAssignment trial_roles(const ExperimentConfig& config, std::size_t index);

/// Generates `trials` instances, solves C_{s;T} for each and compares the
/// results with the bound report. Output is identical for any worker count.
ExperimentResult run_concentration(const ExperimentConfig& config);

/// 95% Clopper-Pearson interval for count successes out of trials.
ProportionEstimate estimate_proportion(std::size_t count, std::size_t trials);

// Independence of cut-crossing edge indicators in a dual radio network.

struct IndependenceConfig {
  DrnParams model;
  std::size_t trials = 10'000;
  std::uint64_t master_seed = 0;
  /// Number of source-side relays; floor(N/2) when empty. The source is node
  /// 0, the terminal node n-1, and the cut's near side is relays 1..x.
  std::optional<std::size_t> cut_size;
  /// Crossing-edge pairs to test, drawn uniformly without replacement.
  std::size_t max_pairs = 2000;
  double significance = 0.01;
  std::size_t workers = 1;
};

/// ceil(1 / significance).
std::size_t minimum_independence_trials(double significance);

struct PairStatistic {
  NodeId a1, b1, a2, b2;  // edges {a1,b1} and {a2,b2}
  bool shares_node = false;
  double p_first = 0.0;
  double p_second = 0.0;
  double p_joint = 0.0;
  double covariance = 0.0;
  double z = 0.0;  // sqrt(trials) * phi coefficient
  bool rejected = false;
};

struct TripleStatistic {
  NodeId apex = 0;  // on the near side
  NodeId left = 0;  // far side
  NodeId right = 0; // far side; {left, right} does not cross the cut
  std::size_t hits = 0;
  double mu = 0.0;  // closed-form connection probability
  double ratio = 0.0;  // P(all three) / mu^3
  double ratio_ci_low = 0.0;
  double ratio_ci_high = 0.0;
};

struct IndependenceTestResult {
  std::size_t trials = 0;
  std::size_t crossing_edges = 0;
  std::vector<PairStatistic> pair_stats;
  std::size_t tested_pairs = 0;    // pairs with non-degenerate marginals
  std::size_t skipped_pairs = 0;   // marginal frequency 0 or 1
  double rejection_rate = 0.0;
  double rejection_rate_shared = 0.0;    // pairs sharing an endpoint
  double rejection_rate_disjoint = 0.0;  // node-disjoint pairs
  std::size_t shared_pairs = 0;
  std::size_t disjoint_pairs = 0;
  double critical_z = 0.0;
  TripleStatistic triple_stat;
};

IndependenceTestResult run_independence_test(const IndependenceConfig& config);

/// One grid point of a sweep.
struct SweepRow {
  std::size_t index = 0;
  ExperimentConfig config;  // with the derived per-point seed
  ExperimentResult result;
};

/// Point seed: derive_seed(master_seed, "point", index).
std::uint64_t point_seed(std::uint64_t master_seed, std::size_t index);

/// Runs every grid point in order. Throws std::invalid_argument on an empty
/// grid and BudgetExceededError before any work if a point is over budget.
std::vector<SweepRow> run_sweep(const std::vector<ExperimentConfig>& grid,
                                std::uint64_t master_seed);

}  // namespace rgcap
