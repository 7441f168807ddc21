#include "rgcap/serialize.hpp"

#include <cmath>
#include <sstream>

namespace rgcap {

namespace {

using nlohmann::json;

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string csv_real(double v) { return std::isfinite(v) ? format_real(v) : ""; }

void model_csv_fields(std::ostream& os, const ModelParams& model) {
  os << model_name(model) << ',' << node_count(model) << ',';
  if (const auto* drn = std::get_if<DrnParams>(&model)) {
    os << ',' << format_real(drn->p) << ',' << format_real(drn->r_short) << ','
       << format_real(drn->r_long) << ',' << to_string(drn->metric);
  } else {
    std::visit(
        [&](const auto& m) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(m)>, DrnParams>) {
            os << m.k << ',' << format_real(m.p) << ",,,";
          }
        },
        model);
  }
}

}  // namespace

json model_to_json(const ModelParams& model) {
  json j;
  j["model"] = model_name(model);
  if (const auto* drn = std::get_if<DrnParams>(&model)) {
    j["n"] = drn->n;
    j["p"] = drn->p;
    j["rS"] = drn->r_short;
    j["rL"] = drn->r_long;
    j["metric"] = to_string(drn->metric);
  } else {
    std::visit(
        [&](const auto& m) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(m)>, DrnParams>) {
            j["n"] = m.n;
            j["k"] = m.k;
            j["p"] = m.p;
          }
        },
        model);
  }
  return j;
}

json to_json(const BoundReport& report) {
  json j = model_to_json(report.model);
  j["alpha"] = report.alpha;
  j["d"] = report.d;
  j["d_max"] = number(report.d_max);
  j["d_valid"] = report.d_valid;
  j["lambda"] = report.lambda;
  j["epsilon"] = report.epsilon;
  j["c_min"] = report.c_min;
  j["lower_threshold"] = report.lower_threshold;
  j["upper_threshold"] = report.upper_threshold;
  j["lower_includes_zero"] = report.lower_includes_zero;
  j["lower_prob_bound"] = number(report.lower_prob_bound);
  j["upper_prob_bound"] = number(report.upper_prob_bound);
  j["lower_prob_bound_clamped"] = report.lower_prob_bound_clamped;
  j["upper_prob_bound_clamped"] = report.upper_prob_bound_clamped;
  j["lower_vacuous"] = report.lower_vacuous;
  j["upper_vacuous"] = report.upper_vacuous;
  if (report.mu) j["mu"] = *report.mu;
  if (report.mu_prime) j["mu_prime"] = *report.mu_prime;
  if (report.epsilon_prime) j["epsilon_prime"] = *report.epsilon_prime;
  return j;
}

json to_json(const CapacityResult& result) {
  json j;
  j["value"] = result.value;
  j["terminal"] = result.terminal;
  j["mode"] = to_string(result.mode);
  j["witness"] = result.witness.members;
  return j;
}

json to_json(const ExperimentResult& result) {
  json j;
  j["version"] = kVersion;
  j["report"] = to_json(result.report);
  j["trials"] = result.trials;
  j["seed"] = result.master_seed;
  j["mode"] = to_string(result.mode);
  j["terminal_policy"] = result.terminal_policy;
  j["capacities"] = result.capacities;
  j["lower_violations"] = result.lower_violations;
  j["upper_violations"] = result.upper_violations;
  const auto freq = [](const ProportionEstimate& e) {
    return json{{"count", e.count},
                {"frequency", e.frequency},
                {"ci95_low", e.ci_low},
                {"ci95_high", e.ci_high}};
  };
  j["lower_violation_frequency"] = freq(result.lower_frequency);
  j["upper_violation_frequency"] = freq(result.upper_frequency);
  j["lower_budget"] = number(result.lower_budget);
  j["upper_budget"] = number(result.upper_budget);
  j["lower_within_budget"] = result.lower_within_budget;
  j["upper_within_budget"] = result.upper_within_budget;
  j["mean_capacity"] = result.mean_capacity;
  j["min_capacity"] = result.min_capacity;
  j["max_capacity"] = result.max_capacity;
  j["mean_ratio"] = number(result.mean_ratio);
  j["std_ratio"] = number(result.std_ratio);
  j["runtime_seconds"] = result.runtime_seconds;
  j["mean_trial_ms"] = result.mean_trial_ms;
  j["warnings"] = result.warnings;
  return j;
}

json to_json(const IndependenceTestResult& result) {
  json j;
  j["trials"] = result.trials;
  j["crossing_edges"] = result.crossing_edges;
  j["tested_pairs"] = result.tested_pairs;
  j["skipped_pairs"] = result.skipped_pairs;
  j["critical_z"] = result.critical_z;
  j["rejection_rate"] = result.rejection_rate;
  j["shared_pairs"] = result.shared_pairs;
  j["rejection_rate_shared"] = result.rejection_rate_shared;
  j["disjoint_pairs"] = result.disjoint_pairs;
  j["rejection_rate_disjoint"] = result.rejection_rate_disjoint;
  json pairs = json::array();
  for (const PairStatistic& p : result.pair_stats) {
    pairs.push_back({{"e", {p.a1, p.b1}},
                     {"f", {p.a2, p.b2}},
                     {"shares_node", p.shares_node},
                     {"p_e", p.p_first},
                     {"p_f", p.p_second},
                     {"p_ef", p.p_joint},
                     {"cov", p.covariance},
                     {"z", p.z},
                     {"rejected", p.rejected}});
  }
  j["pair_stats"] = std::move(pairs);
  const TripleStatistic& t = result.triple_stat;
  j["triple_stat"] = {{"nodes", {t.apex, t.left, t.right}}, {"hits", t.hits},
                      {"mu", t.mu},                       {"ratio", t.ratio},
                      {"ratio_ci95_low", t.ratio_ci_low}, {"ratio_ci95_high", t.ratio_ci_high}};
  return j;
}

std::string bound_csv_header() {
  return "model,n,k,p,rS,rL,metric,alpha,d,d_valid,lambda,epsilon,c_min,lower_threshold,"
         "upper_threshold,lower_prob_bound,upper_prob_bound";
}

std::string bound_csv_row(const BoundReport& r) {
  std::ostringstream os;
  model_csv_fields(os, r.model);
  os << ',' << r.alpha << ',' << format_real(r.d) << ',' << (r.d_valid ? 1 : 0) << ','
     << format_real(r.lambda) << ',' << format_real(r.epsilon) << ',' << format_real(r.c_min)
     << ',' << format_real(r.lower_threshold) << ',' << format_real(r.upper_threshold) << ','
     << csv_real(r.lower_prob_bound) << ',' << csv_real(r.upper_prob_bound);
  return os.str();
}

std::string experiment_csv_header() {
  return "model,n,k,p,rS,rL,metric,alpha,d,d_valid,lambda,epsilon,c_min,trials,seed,"
         "lower_violations,upper_violations,mean_ratio,std_ratio";
}

std::string experiment_csv_row(const ExperimentResult& result) {
  const BoundReport& r = result.report;
  std::ostringstream os;
  model_csv_fields(os, r.model);
  os << ',' << r.alpha << ',' << format_real(r.d) << ',' << (r.d_valid ? 1 : 0) << ','
     << format_real(r.lambda) << ',' << format_real(r.epsilon) << ',' << format_real(r.c_min)
     << ',' << result.trials << ',' << result.master_seed << ',' << result.lower_violations << ','
     << result.upper_violations << ',' << csv_real(result.mean_ratio) << ','
     << csv_real(result.std_ratio);
  return os.str();
}

}  // namespace rgcap
