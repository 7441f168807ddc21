#include "rgcap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rgcap {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

void require_n_for_log(std::size_t n) {
  if (n <= 3) throw std::invalid_argument("n must be at least 4 so that ln(n-2) > 0");
}

}  // namespace

double lambda_of(const WeightedGraph& wg) {
  double best = kInfinity;
  const std::size_t n = wg.node_count();
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double w = wg.weight(i, j);
      if (w > 0.0) best = std::min(best, w);
    }
  }
  if (best == kInfinity) throw std::invalid_argument("lambda undefined: all weights are zero");
  return best;
}

double epsilon_of(double d, double lambda, std::size_t n) {
  require_n_for_log(n);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (!(d > 0.0)) throw std::invalid_argument("d must be positive");
  const double m = static_cast<double>(n - 2);
  return std::sqrt(d * std::log(m) / (lambda * lambda * m));
}

DRange d_range(double lambda, std::size_t n) {
  require_n_for_log(n);
  const double m = static_cast<double>(n - 2);
  return {1.0, lambda * lambda * m / std::log(m)};
}

double hoeffding_cut_bound(std::size_t relay_count, std::size_t x, double epsilon,
                           double lambda) {
  if (x > relay_count) throw std::invalid_argument("cut size exceeds relay count");
  const double m = static_cast<double>(relay_count) +
                   static_cast<double>(x) * static_cast<double>(relay_count - x);
  return std::exp(-2.0 * m * epsilon * epsilon * lambda * lambda);
}

double union_bound(std::size_t relay_count, double epsilon, double lambda) {
  if (relay_count == 0) throw std::invalid_argument("relay count must be positive");
  const double big_n = static_cast<double>(relay_count);
  const double a = epsilon * epsilon * lambda * lambda * big_n;
  // log of 2 e^{-2a} (1 + e^{-a})^N
  return std::exp(std::numbers::ln2 - 2.0 * a + big_n * std::log1p(std::exp(-a)));
}

double union_bound_clamped(std::size_t relay_count, double epsilon, double lambda) {
  return std::min(1.0, union_bound(relay_count, epsilon, lambda));
}

double cmin_sws(std::size_t n, std::size_t k, double p) {
  validate(SwsParams{n, k, p});
  return static_cast<double>(k) + static_cast<double>(n - 1 - k) * p;
}

double cmin_swr(std::size_t k) {
  if (k == 0 || k % 2 != 0) throw std::invalid_argument("k must be even and positive");
  return static_cast<double>(k);
}

double mu_drn(double p, double r_short, double r_long) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (!(r_short > 0.0)) throw std::invalid_argument("rs must be positive");
  if (!(r_short <= r_long)) throw std::invalid_argument("rs must not exceed rl");
  const double mu = std::numbers::pi * r_short * r_short +
                    std::numbers::pi * p * p * (r_long * r_long - r_short * r_short);
  if (mu > 1.0) throw std::invalid_argument("connection probability exceeds 1; reduce the radii");
  return mu;
}

double cmin_drn(std::size_t n, double mu) {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
  return static_cast<double>(n - 2) * mu;
}

double model_lambda(const ModelParams& model) {
  validate(model);
  struct Visitor {
    double operator()(const SwsParams& m) const { return m.p > 0.0 ? m.p : 1.0; }
    double operator()(const SwrParams& m) const {
      const double keep = 1.0 - m.p;
      const double add = swr_add_probability(m);
      if (keep <= 0.0) return add;
      if (add <= 0.0) return keep;
      return std::min(keep, add);
    }
    double operator()(const DrnParams& m) const { return mu_drn(m.p, m.r_short, m.r_long); }
  };
  return std::visit(Visitor{}, model);
}

double model_cmin(const ModelParams& model) {
  validate(model);
  struct Visitor {
    double operator()(const SwsParams& m) const { return cmin_sws(m.n, m.k, m.p); }
    double operator()(const SwrParams& m) const { return cmin_swr(m.k); }
    double operator()(const DrnParams& m) const {
      return cmin_drn(m.n, mu_drn(m.p, m.r_short, m.r_long));
    }
  };
  return std::visit(Visitor{}, model);
}

double lower_tail_order(double relay_count, double d) {
  if (!(relay_count > 1.0) || !(d > 1.0)) return kInfinity;
  const double log_n = std::log(relay_count);
  // N^{2d} - N^{d+1} = N^{d+1} (N^{d-1} - 1)
  return std::exp(std::numbers::ln2 - (d + 1.0) * log_n - std::log(std::expm1((d - 1.0) * log_n)));
}

double upper_tail_order(double relay_count, double d) {
  return std::exp(-2.0 * d * std::log(relay_count));
}

double default_d(double lambda, std::size_t n) {
  const DRange range = d_range(lambda, n);
  return range.empty() ? 1.0 : 1.0 + 0.5 * (range.upper - 1.0);
}

namespace {

void fill_probabilities(BoundReport& report, std::size_t n) {
  const double relays = static_cast<double>(n - 2);
  report.lower_prob_bound = static_cast<double>(report.alpha) * lower_tail_order(relays, report.d);
  report.upper_prob_bound = upper_tail_order(relays, report.d);
  report.lower_prob_bound_clamped = std::min(1.0, report.lower_prob_bound);
  report.upper_prob_bound_clamped = std::min(1.0, report.upper_prob_bound);
  report.lower_vacuous = !(report.lower_prob_bound <= 1.0);
  report.upper_vacuous = !(report.upper_prob_bound <= 1.0);
  report.lower_includes_zero = report.lower_threshold < 0.0;
}

BoundReport base_report(const ModelParams& model, std::size_t alpha, std::optional<double> d,
                        double lambda) {
  const std::size_t n = node_count(model);
  require_n_for_log(n);
  if (alpha == 0 || alpha > n - 2) throw std::invalid_argument("alpha must lie in [1, n-2]");
  BoundReport report;
  report.model = model;
  report.alpha = alpha;
  report.lambda = lambda;
  const DRange range = d_range(lambda, n);
  report.d_max = range.upper;
  report.d = d.value_or(default_d(lambda, n));
  report.d_valid = range.contains(report.d);
  report.epsilon = epsilon_of(report.d, lambda, n);
  return report;
}

}  // namespace

BoundReport theorem_report(const ModelParams& model, std::size_t alpha, std::optional<double> d) {
  validate(model);
  if (const auto* drn = std::get_if<DrnParams>(&model); drn && drn->metric == Metric::Square) {
    return square_drn_report(*drn, alpha, d);
  }
  BoundReport report = base_report(model, alpha, d, model_lambda(model));
  report.c_min = model_cmin(model);
  report.lower_threshold = (1.0 - report.epsilon) * report.c_min;
  report.upper_threshold = (1.0 + report.epsilon) * report.c_min;
  if (const auto* drn = std::get_if<DrnParams>(&model)) {
    report.mu = mu_drn(drn->p, drn->r_short, drn->r_long);
  }
  fill_probabilities(report, node_count(model));
  return report;
}

BoundReport square_drn_report(const DrnParams& model, std::size_t alpha, std::optional<double> d) {
  if (model.metric != Metric::Square) {
    throw std::invalid_argument("square_drn_report requires the square metric");
  }
  validate(model);
  const double mu = mu_drn(model.p, model.r_short, model.r_long);
  BoundReport report = base_report(model, alpha, d, mu);
  const double relays = static_cast<double>(model.n - 2);
  report.mu = mu;
  report.mu_prime = mu / 4.0;
  report.epsilon_prime = 4.0 * report.epsilon;
  report.c_min = relays * mu;
  report.lower_threshold = (1.0 - *report.epsilon_prime) * relays * *report.mu_prime;
  report.upper_threshold = (1.0 + report.epsilon) * relays * mu;
  fill_probabilities(report, model.n);
  return report;
}

const char* to_string(EpsilonRegime regime) noexcept {
  switch (regime) {
    case EpsilonRegime::ConvergesByRewireDominance: return "converges_rewire_dominance";
    case EpsilonRegime::ConvergesByDenseLattice: return "converges_dense_lattice";
    case EpsilonRegime::DivergesBoundedK: return "diverges_bounded_k";
    case EpsilonRegime::Unclassified: return "unclassified";
  }
  return "unclassified";
}

const char* to_string(KGrowth growth) noexcept {
  switch (growth) {
    case KGrowth::Constant: return "constant";
    case KGrowth::LogPolyFraction: return "log-poly-fraction";
    case KGrowth::Other: return "other";
  }
  return "other";
}

KGrowth parse_k_growth(const std::string& text) {
  if (text == "constant") return KGrowth::Constant;
  if (text == "log-poly-fraction") return KGrowth::LogPolyFraction;
  if (text == "other") return KGrowth::Other;
  throw std::invalid_argument("k growth must be constant, log-poly-fraction or other");
}

RegimeClassification swr_epsilon_regime(std::size_t n, std::size_t k, double p, KGrowth growth) {
  validate(SwrParams{n, k, p});
  if (p <= 0.0 || p >= 1.0) return {EpsilonRegime::Unclassified, "degenerate p (0 or 1)"};
  const double threshold = 1.0 - static_cast<double>(k) / static_cast<double>(n - 1);
  if (p >= threshold) {
    return {EpsilonRegime::ConvergesByRewireDominance, "p >= 1 - k/(n-1), lambda = 1-p"};
  }
  switch (growth) {
    case KGrowth::LogPolyFraction:
      return {EpsilonRegime::ConvergesByDenseLattice, "p < 1 - k/(n-1) and k/n >= 1/ln^a(n)"};
    case KGrowth::Constant:
      return {EpsilonRegime::DivergesBoundedK, "p < 1 - k/(n-1) and k <= b"};
    case KGrowth::Other:
      break;
  }
  return {EpsilonRegime::Unclassified, "p < 1 - k/(n-1) with unclassified k growth"};
}

}  // namespace rgcap
