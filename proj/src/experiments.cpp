#include "rgcap/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>

#include "rgcap/mincut.hpp"
#include "rgcap/rng.hpp"

namespace rgcap {

namespace {

// Runs body(i) for i in [0, count) on `workers` threads, worker w taking the
// indices congruent to w. The first exception thrown is rethrown here.
template <typename Body>
void parallel_for(std::size_t count, std::size_t workers, Body&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, 0);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) body(i, w);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void check_budget(const ExperimentConfig& config) {
  const std::uint64_t work =
      static_cast<std::uint64_t>(node_count(config.model)) * config.trials;
  if (work > config.work_budget) {
    throw BudgetExceededError("n*trials = " + std::to_string(work) + " exceeds the work budget " +
                              std::to_string(config.work_budget));
  }
}

void validate_config(const ExperimentConfig& config) {
  validate(config.model);
  if (config.trials == 0) throw std::invalid_argument("trials must be at least 1");
  const std::size_t n = node_count(config.model);
  if (config.source >= n) throw std::invalid_argument("source index out of range");
  if (config.alpha == 0 || config.alpha + 1 >= n) {
    throw std::invalid_argument("alpha must lie in [1, n-2]");
  }
  if (const auto* fixed = config.terminal_policy
                              ? std::get_if<ExplicitTerminals>(&*config.terminal_policy)
                              : nullptr) {
    if (fixed->nodes.size() != config.alpha) {
      throw std::invalid_argument("explicit terminal list must have alpha entries");
    }
    // RoleAssignment rejects overlap with the source and duplicates.
    RoleAssignment(n, config.source, fixed->nodes);
  }
}

}  // namespace

TerminalPolicy default_terminal_policy(const ModelParams& model) {
  if (std::holds_alternative<DrnParams>(model)) return RandomTerminals{};
  return AntipodalTerminals{};
}

const char* to_string(const TerminalPolicy& policy) noexcept {
  switch (policy.index()) {
    case 0: return "antipodal";
    case 1: return "random";
    default: return "explicit";
  }
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, "trial", index);
}

std::uint64_t point_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, "point", index);
}

RoleAssignment trial_roles(const ExperimentConfig& config, std::size_t index) {
  const std::size_t n = node_count(config.model);
  const NodeId s = config.source;
  const TerminalPolicy policy =
      config.terminal_policy.value_or(default_terminal_policy(config.model));
  std::vector<NodeId> terminals;
  if (std::holds_alternative<AntipodalTerminals>(policy)) {
    NodeId next = static_cast<NodeId>((s + n / 2) % n);
    while (terminals.size() < config.alpha) {
      if (next != s) terminals.push_back(next);
      next = static_cast<NodeId>((next + 1) % n);
    }
  } else if (std::holds_alternative<RandomTerminals>(policy)) {
    std::vector<NodeId> pool;
    pool.reserve(n - 1);
    for (NodeId v = 0; v < n; ++v) {
      if (v != s) pool.push_back(v);
    }
    Rng rng(derive_seed(trial_seed(config.master_seed, index), "roles"));
    for (std::size_t i = 0; i < config.alpha; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
      std::swap(pool[i], pool[j]);
      terminals.push_back(pool[i]);
    }
  } else {
    terminals = std::get<ExplicitTerminals>(policy).nodes;
  }
  return RoleAssignment(n, s, std::move(terminals));
}

ProportionEstimate estimate_proportion(std::size_t count, std::size_t trials) {
  ProportionEstimate est;
  est.count = count;
  if (trials == 0) return est;
  const auto n = static_cast<double>(trials);
  const auto k = static_cast<double>(count);
  est.frequency = k / n;
  using boost::math::binomial_distribution;
  est.ci_low = binomial_distribution<>::find_lower_bound_on_p(n, k, 0.025);
  est.ci_high = binomial_distribution<>::find_upper_bound_on_p(n, k, 0.025);
  return est;
}

ExperimentResult run_concentration(const ExperimentConfig& config) {
  validate_config(config);
  check_budget(config);
  const auto start = std::chrono::steady_clock::now();

  ExperimentResult result;
  result.report = theorem_report(config.model, config.alpha, config.d);
  result.trials = config.trials;
  result.master_seed = config.master_seed;
  result.mode = config.mode;
  result.terminal_policy =
      to_string(config.terminal_policy.value_or(default_terminal_policy(config.model)));
  if (!result.report.d_valid) {
    result.warnings.push_back("d is outside the admissible interval (1, " +
                              format_real(result.report.d_max) +
                              "); the probability bounds do not apply");
  }

  result.capacities.assign(config.trials, 0.0);
  parallel_for(config.trials, config.workers, [&](std::size_t i, std::size_t) {
    const Graph g = sample_graph(config.model, trial_seed(config.master_seed, i));
    const RoleAssignment roles = trial_roles(config, i);
    result.capacities[i] = sT_capacity(g, roles, config.mode).value;
  });

  const BoundReport& report = result.report;
  for (double c : result.capacities) {
    if (c <= report.lower_threshold) ++result.lower_violations;
    if (c >= report.upper_threshold) ++result.upper_violations;
  }
  result.lower_frequency = estimate_proportion(result.lower_violations, config.trials);
  result.upper_frequency = estimate_proportion(result.upper_violations, config.trials);
  const auto trials = static_cast<double>(config.trials);
  result.lower_budget = report.lower_prob_bound * trials;
  result.upper_budget = report.upper_prob_bound * trials;
  result.lower_within_budget = static_cast<double>(result.lower_violations) <= result.lower_budget;
  result.upper_within_budget = static_cast<double>(result.upper_violations) <= result.upper_budget;

  double sum = 0.0;
  for (double c : result.capacities) sum += c;
  result.mean_capacity = sum / trials;
  const auto [lo, hi] = std::minmax_element(result.capacities.begin(), result.capacities.end());
  result.min_capacity = *lo;
  result.max_capacity = *hi;
  if (report.c_min > 0.0) {
    result.mean_ratio = result.mean_capacity / report.c_min;
    double sq = 0.0;
    for (double c : result.capacities) {
      const double dev = c / report.c_min - result.mean_ratio;
      sq += dev * dev;
    }
    result.std_ratio = config.trials > 1 ? std::sqrt(sq / (trials - 1.0)) : 0.0;
  } else {
    result.mean_ratio = std::numeric_limits<double>::quiet_NaN();
    result.std_ratio = std::numeric_limits<double>::quiet_NaN();
    result.warnings.push_back("c_min is zero; capacity ratios are undefined");
  }

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  result.runtime_seconds = elapsed.count();
  result.mean_trial_ms = 1000.0 * result.runtime_seconds / trials;
  return result;
}

std::size_t minimum_independence_trials(double significance) {
  return static_cast<std::size_t>(std::ceil(1.0 / significance));
}

IndependenceTestResult run_independence_test(const IndependenceConfig& config) {
  validate(config.model);
  const std::size_t n = config.model.n;
  if (n < 5) throw std::invalid_argument("independence test needs n >= 5");
  if (!(config.significance > 0.0 && config.significance < 0.5)) {
    throw std::invalid_argument("significance must lie in (0, 0.5)");
  }
  const std::size_t min_trials = minimum_independence_trials(config.significance);
  if (config.trials < min_trials) {
    throw std::invalid_argument("independence test at significance " +
                                format_real(config.significance) + " needs at least " +
                                std::to_string(min_trials) + " trials");
  }
  const std::size_t relays = n - 2;
  const std::size_t x = config.cut_size.value_or(relays / 2);
  if (x < 1 || x + 2 > relays) {
    throw std::invalid_argument("cut size must leave at least one near and two far relays");
  }

  const NodeId s = 0;
  const auto t = static_cast<NodeId>(n - 1);
  const auto first_far = static_cast<NodeId>(x + 1);
  struct Pair {
    NodeId a, b;
  };
  std::vector<Pair> crossing;
  for (NodeId f = first_far; f < t; ++f) crossing.push_back({s, f});
  for (NodeId v = 1; v < first_far; ++v) {
    for (NodeId f = first_far; f < t; ++f) crossing.push_back({v, f});
  }
  for (NodeId v = 1; v < first_far; ++v) crossing.push_back({v, t});

  const std::size_t edge_total = crossing.size();
  const std::uint64_t pair_total =
      static_cast<std::uint64_t>(edge_total) * (edge_total - 1) / 2;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (pair_total <= config.max_pairs) {
    for (std::size_t i = 0; i < edge_total; ++i) {
      for (std::size_t j = i + 1; j < edge_total; ++j) pairs.emplace_back(i, j);
    }
  } else {
    Rng rng(derive_seed(config.master_seed, "pairs"));
    std::set<std::pair<std::size_t, std::size_t>> chosen;
    while (chosen.size() < config.max_pairs) {
      auto i = static_cast<std::size_t>(rng.below(edge_total));
      auto j = static_cast<std::size_t>(rng.below(edge_total));
      if (i == j) continue;
      chosen.emplace(std::min(i, j), std::max(i, j));
    }
    pairs.assign(chosen.begin(), chosen.end());
  }

  const NodeId apex = 1;
  const NodeId left = first_far;
  const auto right = static_cast<NodeId>(first_far + 1);

  struct Counts {
    std::vector<std::uint64_t> edge;
    std::vector<std::uint64_t> joint;
    std::uint64_t triple = 0;
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(config.workers, config.trials));
  std::vector<Counts> partial(workers);
  for (Counts& c : partial) {
    c.edge.assign(edge_total, 0);
    c.joint.assign(pairs.size(), 0);
  }
  parallel_for(config.trials, workers, [&](std::size_t i, std::size_t w) {
    const DrnSample sample = sample_drn(config.model, trial_seed(config.master_seed, i));
    const Graph& g = sample.graph;
    std::vector<std::uint8_t> present(edge_total);
    for (std::size_t e = 0; e < edge_total; ++e) {
      present[e] = g.has_edge(crossing[e].a, crossing[e].b) ? 1 : 0;
    }
    Counts& c = partial[w];
    for (std::size_t e = 0; e < edge_total; ++e) c.edge[e] += present[e];
    for (std::size_t q = 0; q < pairs.size(); ++q) {
      c.joint[q] += present[pairs[q].first] & present[pairs[q].second];
    }
    if (g.has_edge(apex, left) && g.has_edge(apex, right) && g.has_edge(left, right)) ++c.triple;
  });
  Counts total = std::move(partial[0]);
  for (std::size_t w = 1; w < workers; ++w) {
    for (std::size_t e = 0; e < edge_total; ++e) total.edge[e] += partial[w].edge[e];
    for (std::size_t q = 0; q < pairs.size(); ++q) total.joint[q] += partial[w].joint[q];
    total.triple += partial[w].triple;
  }

  IndependenceTestResult result;
  result.trials = config.trials;
  result.crossing_edges = edge_total;
  const auto trials = static_cast<double>(config.trials);
  result.critical_z =
      boost::math::quantile(boost::math::normal_distribution<>(), 1.0 - config.significance / 2.0);
  std::size_t rejected = 0;
  std::size_t rejected_shared = 0;
  std::size_t rejected_disjoint = 0;
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    const Pair& e = crossing[pairs[q].first];
    const Pair& f = crossing[pairs[q].second];
    PairStatistic stat{e.a, e.b, f.a, f.b};
    stat.shares_node = e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b;
    stat.p_first = static_cast<double>(total.edge[pairs[q].first]) / trials;
    stat.p_second = static_cast<double>(total.edge[pairs[q].second]) / trials;
    stat.p_joint = static_cast<double>(total.joint[q]) / trials;
    stat.covariance = stat.p_joint - stat.p_first * stat.p_second;
    const double spread =
        stat.p_first * (1.0 - stat.p_first) * stat.p_second * (1.0 - stat.p_second);
    if (spread > 0.0) {
      stat.z = std::sqrt(trials) * stat.covariance / std::sqrt(spread);
      stat.rejected = std::abs(stat.z) > result.critical_z;
      ++result.tested_pairs;
      (stat.shares_node ? result.shared_pairs : result.disjoint_pairs)++;
      if (stat.rejected) {
        ++rejected;
        (stat.shares_node ? rejected_shared : rejected_disjoint)++;
      }
    } else {
      ++result.skipped_pairs;
    }
    result.pair_stats.push_back(stat);
  }
  const auto rate = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  result.rejection_rate = rate(rejected, result.tested_pairs);
  result.rejection_rate_shared = rate(rejected_shared, result.shared_pairs);
  result.rejection_rate_disjoint = rate(rejected_disjoint, result.disjoint_pairs);

  TripleStatistic& triple = result.triple_stat;
  triple.apex = apex;
  triple.left = left;
  triple.right = right;
  triple.hits = total.triple;
  triple.mu = mu_drn(config.model.p, config.model.r_short, config.model.r_long);
  const double mu3 = triple.mu * triple.mu * triple.mu;
  const ProportionEstimate est = estimate_proportion(total.triple, config.trials);
  triple.ratio = est.frequency / mu3;
  triple.ratio_ci_low = est.ci_low / mu3;
  triple.ratio_ci_high = est.ci_high / mu3;
  return result;
}

std::vector<SweepRow> run_sweep(const std::vector<ExperimentConfig>& grid,
                                std::uint64_t master_seed) {
  if (grid.empty()) throw std::invalid_argument("sweep grid is empty");
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    SweepRow row;
    row.index = i;
    row.config = grid[i];
    row.config.master_seed = point_seed(master_seed, i);
    validate_config(row.config);
    check_budget(row.config);
    rows.push_back(std::move(row));
  }
  for (SweepRow& row : rows) row.result = run_concentration(row.config);
  return rows;
}

}  // namespace rgcap
