#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "rgcap/generators.hpp"

namespace rgcap {

/// Minimum strictly positive edge probability. Throws if every weight is 0.
double lambda_of(const WeightedGraph& wg);

/// Deviation radius sqrt(d ln(n-2) / (lambda^2 (n-2))). Requires n >= 4.
double epsilon_of(double d, double lambda, std::size_t n);

/// Open interval (1, lambda^2 (n-2) / ln(n-2)) of admissible d.
struct DRange {
  double lower = 1.0;
  double upper = 1.0;

  bool empty() const noexcept { return !(upper > lower); }
  bool contains(double d) const noexcept { return d > lower && d < upper; }
};

DRange d_range(double lambda, std::size_t n);

/// exp(-2 (N + x(N-x)) eps^2 lambda^2): one-cut lower-tail bound.
double hoeffding_cut_bound(std::size_t relay_count, std::size_t x, double epsilon, double lambda);

/// 2 exp(-2 eps^2 lambda^2 N) (1 + exp(-eps^2 lambda^2 N))^N, unclamped.
double union_bound(std::size_t relay_count, double epsilon, double lambda);
/// union_bound capped at 1.
double union_bound_clamped(std::size_t relay_count, double epsilon, double lambda);

double cmin_sws(std::size_t n, std::size_t k, double p);
double cmin_swr(std::size_t k);
/// pi rS^2 + pi p^2 (rL^2 - rS^2): connection probability of two DRN nodes.
double mu_drn(double p, double r_short, double r_long);
double cmin_drn(std::size_t n, double mu);

/// Closed-form lambda of each model (minimum positive edge probability).
double model_lambda(const ModelParams& model);
/// Closed-form minimum expected cut of each model.
double model_cmin(const ModelParams& model);

/// 2 / (N^{2d} - N^{d+1}); +infinity when the denominator is not positive.
double lower_tail_order(double relay_count, double d);
/// (n-2)^{-2d}.
double upper_tail_order(double relay_count, double d);

struct BoundReport {
  ModelParams model;
  std::size_t alpha = 1;
  double d = 1.0;
  double d_max = 1.0;  // upper end of the admissible d interval
  double lambda = 0.0;
  double epsilon = 0.0;
  double c_min = 0.0;
  double lower_threshold = 0.0;
  double upper_threshold = 0.0;
  /// alpha * 2/(N^{2d} - N^{d+1}) with N = n-2; +infinity when undefined.
  double lower_prob_bound = 0.0;
  /// 1/(n-2)^{2d}.
  double upper_prob_bound = 0.0;
  double lower_prob_bound_clamped = 0.0;
  double upper_prob_bound_clamped = 0.0;
  bool lower_vacuous = false;
  bool upper_vacuous = false;
  bool d_valid = false;
  /// lower_threshold < 0, i.e. the bracket includes zero.
  bool lower_includes_zero = false;
  // DRN only.
  std::optional<double> mu;
  // Square-metric DRN only: the equal-coverage corner quantities.
  std::optional<double> mu_prime;
  std::optional<double> epsilon_prime;
};

/// Default d: midpoint of (1, d_max) when nonempty, else 1.
double default_d(double lambda, std::size_t n);

/// Assembled report for any model. Never refuses on d: an out-of-range d is
/// reported with d_valid = false. Square-metric DRN dispatches to
/// square_drn_report.
BoundReport theorem_report(const ModelParams& model, std::size_t alpha = 1,
                           std::optional<double> d = std::nullopt);

/// Unit-square DRN: thresholds (1-4 eps)(n-2)mu/4 and (1+eps)(n-2)mu.
BoundReport square_drn_report(const DrnParams& model, std::size_t alpha = 1,
                              std::optional<double> d = std::nullopt);

/// How k scales with n in a rewiring family.
enum class KGrowth { Constant, LogPolyFraction, Other };

enum class EpsilonRegime {
  ConvergesByRewireDominance,
  ConvergesByDenseLattice,
  DivergesBoundedK,
  Unclassified,
};

struct RegimeClassification {
  EpsilonRegime regime;
  std::string condition;
};

const char* to_string(EpsilonRegime regime) noexcept;
const char* to_string(KGrowth growth) noexcept;
KGrowth parse_k_growth(const std::string& text);

/// Large-n behaviour of epsilon for the rewiring model.
RegimeClassification swr_epsilon_regime(std::size_t n, std::size_t k, double p, KGrowth growth);

}  // namespace rgcap
