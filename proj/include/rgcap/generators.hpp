#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rgcap/graph.hpp"

namespace rgcap {

/// Small-world network with shortcuts: ring lattice plus every other pair
/// added independently with probability p.
struct SwsParams {
  std::size_t n = 0;
  std::size_t k = 0;
  double p = 0.0;
};

/// Small-world network with rewiring: each lattice edge kept with probability
/// 1-p, every other pair added with probability pk/(n-k-1).
struct SwrParams {
  std::size_t n = 0;
  std::size_t k = 0;
  double p = 0.0;
};

enum class Metric { Torus, Square };

/// Dual radio network on [0,1]^2.
struct DrnParams {
  std::size_t n = 0;
  double p = 0.0;  // fraction of nodes carrying the long-range radio
  double r_short = 0.0;
  double r_long = 0.0;
  Metric metric = Metric::Torus;
};

using ModelParams = std::variant<SwsParams, SwrParams, DrnParams>;

const char* to_string(Metric metric) noexcept;
Metric parse_metric(const std::string& text);
/// "sws", "swr" or "drn".
const char* model_name(const ModelParams& model) noexcept;
std::size_t node_count(const ModelParams& model) noexcept;
/// Human-readable "key=value" list of the parameters.
std::string describe(const ModelParams& model);

/// 1/sqrt(pi): largest radius whose disc fits the unit torus without overlap.
double max_torus_radius();

/// Throws std::invalid_argument naming the violated constraint.
void validate(const SwsParams& params);
void validate(const SwrParams& params);
void validate(const DrnParams& params);
void validate(const ModelParams& params);

/// Fully connected weighted graph of edge-presence probabilities.
class WeightedGraph {
 public:
  /// Lattice-derived weighting: lattice pairs get w1, all other pairs w2.
  struct LatticeWeights {
    std::size_t k;
    double w1;
    double w2;
  };

  explicit WeightedGraph(std::size_t n);
  /// Complete graph whose k-ring-lattice pairs weigh w1 and the rest w2.
  static WeightedGraph lattice_weighted(std::size_t n, std::size_t k, double w1, double w2);
  /// Every pair weighs w.
  static WeightedGraph uniform(std::size_t n, double w);

  std::size_t node_count() const noexcept { return n_; }
  double weight(NodeId u, NodeId v) const;
  /// Weight must lie in [0, 1]. Clears any lattice annotation.
  void set_weight(NodeId u, NodeId v, double w);
  const std::optional<LatticeWeights>& lattice() const noexcept { return lattice_; }

 private:
  std::size_t n_;
  std::vector<double> weights_;  // dense row-major, symmetric, zero diagonal
  std::optional<LatticeWeights> lattice_;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

/// A sampled dual radio network together with its generation metadata.
struct DrnSample {
  Graph graph;
  std::vector<Point> positions;
  std::vector<bool> long_range;  // membership in the dual-radio set
};

/// Every node joined to all nodes within ring distance k/2.
Graph ring_lattice(std::size_t n, std::size_t k);
bool is_lattice_pair(NodeId i, NodeId j, std::size_t n, std::size_t k);

Graph sample_sws(const SwsParams& params, std::uint64_t seed);
Graph sample_swr(const SwrParams& params, std::uint64_t seed);
DrnSample sample_drn(const DrnParams& params, std::uint64_t seed);
/// Dispatches on the model; DRN metadata is dropped.
Graph sample_graph(const ModelParams& params, std::uint64_t seed);

/// Probability that a non-lattice pair is added in the rewiring model.
double swr_add_probability(const SwrParams& params);

/// Euclidean distance with per-coordinate wrap-around on the unit torus.
double torus_distance(Point a, Point b);
double square_distance(Point a, Point b);
double distance(Point a, Point b, Metric metric);

/// Edge-presence probabilities of the model.
WeightedGraph expected_graph(const ModelParams& params);

/// DRN sidecar: one "index x y inVL" line per node.
void write_drn_positions(std::ostream& out, const DrnSample& sample);

}  // namespace rgcap
