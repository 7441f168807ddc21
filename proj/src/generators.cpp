#include "rgcap/generators.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rgcap/bounds.hpp"
#include "rgcap/rng.hpp"

namespace rgcap {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw std::invalid_argument(what); }

void validate_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) invalid(std::string(name) + " must lie in [0, 1]");
}

void validate_lattice(std::size_t n, std::size_t k) {
  if (k % 2 != 0) invalid("k must be even");
  if (k < 2 || k + 2 > n) invalid("k must satisfy 2 <= k <= n-2");
}

}  // namespace

const char* to_string(Metric metric) noexcept {
  return metric == Metric::Torus ? "torus" : "square";
}

Metric parse_metric(const std::string& text) {
  if (text == "torus") return Metric::Torus;
  if (text == "square") return Metric::Square;
  invalid("metric must be 'torus' or 'square', got '" + text + "'");
}

const char* model_name(const ModelParams& model) noexcept {
  switch (model.index()) {
    case 0: return "sws";
    case 1: return "swr";
    default: return "drn";
  }
}

std::size_t node_count(const ModelParams& model) noexcept {
  return std::visit([](const auto& m) { return m.n; }, model);
}

std::string describe(const ModelParams& model) {
  std::ostringstream os;
  os << "model=" << model_name(model);
  if (const auto* drn = std::get_if<DrnParams>(&model)) {
    os << " n=" << drn->n << " p=" << format_real(drn->p) << " rs=" << format_real(drn->r_short)
       << " rl=" << format_real(drn->r_long) << " metric=" << to_string(drn->metric);
  } else {
    std::visit(
        [&](const auto& m) {
          if constexpr (!std::is_same_v<std::decay_t<decltype(m)>, DrnParams>) {
            os << " n=" << m.n << " k=" << m.k << " p=" << format_real(m.p);
          }
        },
        model);
  }
  return os.str();
}

double max_torus_radius() { return 1.0 / std::sqrt(std::numbers::pi); }

void validate(const SwsParams& params) {
  validate_probability(params.p, "p");
  validate_lattice(params.n, params.k);
}

void validate(const SwrParams& params) {
  validate_probability(params.p, "p");
  validate_lattice(params.n, params.k);
  if (swr_add_probability(params) > 1.0) {
    invalid("rewiring add probability pk/(n-k-1) must not exceed 1");
  }
}

void validate(const DrnParams& params) {
  if (params.n < 2) invalid("n must be at least 2");
  validate_probability(params.p, "p");
  if (!(params.r_short > 0.0)) invalid("rs must be positive");
  if (!(params.r_short <= params.r_long)) invalid("rs must not exceed rl");
  if (params.metric == Metric::Torus && params.r_long > max_torus_radius()) {
    invalid("torus metric requires rl <= 1/sqrt(pi) (~0.5642)");
  }
}

void validate(const ModelParams& params) {
  std::visit([](const auto& m) { validate(m); }, params);
}

WeightedGraph::WeightedGraph(std::size_t n) : n_(n), weights_(n * n, 0.0) {}

WeightedGraph WeightedGraph::lattice_weighted(std::size_t n, std::size_t k, double w1,
                                              double w2) {
  validate_lattice(n, k);
  WeightedGraph wg(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) wg.set_weight(i, j, is_lattice_pair(i, j, n, k) ? w1 : w2);
  }
  wg.lattice_ = LatticeWeights{k, w1, w2};
  return wg;
}

WeightedGraph WeightedGraph::uniform(std::size_t n, double w) {
  WeightedGraph wg(n);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) wg.set_weight(i, j, w);
  }
  return wg;
}

double WeightedGraph::weight(NodeId u, NodeId v) const {
  if (u >= n_ || v >= n_) throw std::out_of_range("weight: node index out of range");
  return weights_[static_cast<std::size_t>(u) * n_ + v];
}

void WeightedGraph::set_weight(NodeId u, NodeId v, double w) {
  if (u >= n_ || v >= n_) throw std::out_of_range("set_weight: node index out of range");
  if (u == v) throw std::invalid_argument("set_weight: no self-loops");
  validate_probability(w, "weight");
  weights_[static_cast<std::size_t>(u) * n_ + v] = w;
  weights_[static_cast<std::size_t>(v) * n_ + u] = w;
  lattice_.reset();
}

bool is_lattice_pair(NodeId i, NodeId j, std::size_t n, std::size_t k) {
  return i != j && ring_distance(i, j, n) <= k / 2;
}

Graph ring_lattice(std::size_t n, std::size_t k) {
  validate_lattice(n, k);
  std::vector<Edge> edges;
  edges.reserve(n * k / 2);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (is_lattice_pair(i, j, n, k)) edges.push_back({i, j, 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

// Pairs are visited in lexicographic (i, j) order with one draw per
// non-deterministic pair, so the output is a pure function of (params, seed).
Graph sample_sws(const SwsParams& params, std::uint64_t seed) {
  validate(params);
  Rng rng(derive_seed(seed, "sws"));
  const std::size_t n = params.n;
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (is_lattice_pair(i, j, n, params.k) || rng.bernoulli(params.p)) {
        edges.push_back({i, j, 1.0});
      }
    }
  }
  return Graph(n, std::move(edges));
}

double swr_add_probability(const SwrParams& params) {
  if (params.k + 1 >= params.n) return 1.0;
  return params.p * static_cast<double>(params.k) / static_cast<double>(params.n - params.k - 1);
}

Graph sample_swr(const SwrParams& params, std::uint64_t seed) {
  validate(params);
  Rng rng(derive_seed(seed, "swr"));
  const std::size_t n = params.n;
  const double keep = 1.0 - params.p;
  const double add = swr_add_probability(params);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double prob = is_lattice_pair(i, j, n, params.k) ? keep : add;
      if (rng.bernoulli(prob)) edges.push_back({i, j, 1.0});
    }
  }
  return Graph(n, std::move(edges));
}

double torus_distance(Point a, Point b) {
  for (double c : {a.x, a.y, b.x, b.y}) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("coordinate outside [0, 1]");
  }
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  dx = std::min(dx, 1.0 - dx);
  dy = std::min(dy, 1.0 - dy);
  return std::hypot(dx, dy);
}

double square_distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

double distance(Point a, Point b, Metric metric) {
  return metric == Metric::Torus ? torus_distance(a, b) : square_distance(a, b);
}

DrnSample sample_drn(const DrnParams& params, std::uint64_t seed) {
  validate(params);
  const std::size_t n = params.n;
  DrnSample out;
  out.positions.resize(n);
  out.long_range.resize(n);
  Rng position_rng(derive_seed(seed, "drn-positions"));
  for (Point& pt : out.positions) {
    pt.x = position_rng.uniform01();
    pt.y = position_rng.uniform01();
  }
  Rng radio_rng(derive_seed(seed, "drn-long-range"));
  for (std::size_t i = 0; i < n; ++i) out.long_range[i] = radio_rng.bernoulli(params.p);

  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double d = distance(out.positions[i], out.positions[j], params.metric);
      const bool short_edge = d <= params.r_short;
      const bool long_edge = out.long_range[i] && out.long_range[j] && d <= params.r_long;
      if (short_edge || long_edge) edges.push_back({i, j, 1.0});
    }
  }
  out.graph = Graph(n, std::move(edges));
  return out;
}

Graph sample_graph(const ModelParams& params, std::uint64_t seed) {
  struct Visitor {
    std::uint64_t seed;
    Graph operator()(const SwsParams& m) const { return sample_sws(m, seed); }
    Graph operator()(const SwrParams& m) const { return sample_swr(m, seed); }
    Graph operator()(const DrnParams& m) const { return sample_drn(m, seed).graph; }
  };
  return std::visit(Visitor{seed}, params);
}

WeightedGraph expected_graph(const ModelParams& params) {
  validate(params);
  struct Visitor {
    WeightedGraph operator()(const SwsParams& m) const {
      return WeightedGraph::lattice_weighted(m.n, m.k, 1.0, m.p);
    }
    WeightedGraph operator()(const SwrParams& m) const {
      return WeightedGraph::lattice_weighted(m.n, m.k, 1.0 - m.p, swr_add_probability(m));
    }
    WeightedGraph operator()(const DrnParams& m) const {
      return WeightedGraph::uniform(m.n, mu_drn(m.p, m.r_short, m.r_long));
    }
  };
  return std::visit(Visitor{}, params);
}

void write_drn_positions(std::ostream& out, const DrnSample& sample) {
  for (std::size_t i = 0; i < sample.positions.size(); ++i) {
    out << i << ' ' << format_real(sample.positions[i].x) << ' '
        << format_real(sample.positions[i].y) << ' ' << (sample.long_range[i] ? 1 : 0) << '\n';
  }
}

}  // namespace rgcap
