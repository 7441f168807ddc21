#include "rgcap/mincut.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace rgcap {

namespace {

constexpr double kResidualEpsilon = 1e-12;

// Undirected edges become a pair of arcs that are each other's reverse, both
// with the full capacity; pushing flow one way frees capacity the other way.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t n) : first_(n + 1, 0), level_(n), next_arc_(n) {}

  void build(const std::vector<Edge>& edges) {
    const std::size_t n = level_.size();
    std::vector<std::size_t> degree(n, 0);
    for (const Edge& e : edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    for (std::size_t v = 0; v < n; ++v) first_[v + 1] = first_[v] + degree[v];
    arcs_.resize(first_[n]);
    // `edges` is sorted by (u, v), so every node's arc list ends up in
    // ascending neighbor order.
    std::vector<std::size_t> fill(first_.begin(), first_.end() - 1);
    for (const Edge& e : edges) {
      const std::size_t a = fill[e.u]++;
      const std::size_t b = fill[e.v]++;
      arcs_[a] = {e.v, e.capacity, b};
      arcs_[b] = {e.u, e.capacity, a};
    }
  }

  double max_flow(NodeId s, NodeId t) {
    double total = 0.0;
    while (bfs_levels(s, t)) {
      for (std::size_t v = 0; v < next_arc_.size(); ++v) next_arc_[v] = first_[v];
      for (;;) {
        const double pushed = augment(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= kResidualEpsilon) break;
        total += pushed;
      }
    }
    return total;
  }

  /// Nodes reachable from s through arcs with positive residual capacity.
  std::vector<bool> reachable_from(NodeId s) const {
    std::vector<bool> seen(level_.size(), false);
    std::queue<NodeId> frontier;
    seen[s] = true;
    frontier.push(s);
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      for (std::size_t a = first_[v]; a < first_[v + 1]; ++a) {
        const Arc& arc = arcs_[a];
        if (arc.residual > kResidualEpsilon && !seen[arc.to]) {
          seen[arc.to] = true;
          frontier.push(arc.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    NodeId to;
    double residual;
    std::size_t reverse;
  };

  bool bfs_levels(NodeId s, NodeId t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<NodeId> frontier;
    level_[s] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const NodeId v = frontier.front();
      frontier.pop();
      for (std::size_t a = first_[v]; a < first_[v + 1]; ++a) {
        const Arc& arc = arcs_[a];
        if (arc.residual > kResidualEpsilon && level_[arc.to] < 0) {
          level_[arc.to] = level_[v] + 1;
          frontier.push(arc.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double augment(NodeId v, NodeId t, double limit) {
    if (v == t) return limit;
    for (std::size_t& a = next_arc_[v]; a < first_[v + 1]; ++a) {
      Arc& arc = arcs_[a];
      if (arc.residual <= kResidualEpsilon || level_[arc.to] != level_[v] + 1) continue;
      const double pushed = augment(arc.to, t, std::min(limit, arc.residual));
      if (pushed > kResidualEpsilon) {
        arc.residual -= pushed;
        arcs_[arc.reverse].residual += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<std::size_t> first_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> next_arc_;
};

void check_terminal(const Graph& g, const RoleAssignment& roles, NodeId t) {
  if (roles.node_count() != g.node_count()) {
    throw std::invalid_argument("roles and graph disagree on n");
  }
  if (!roles.is_terminal(t)) throw std::invalid_argument("t is not a terminal");
}

}  // namespace

CapacityResult st_capacity(const Graph& g, const RoleAssignment& roles, NodeId t,
                           CapacityMode mode) {
  check_terminal(g, roles, t);
  const NodeId s = roles.source();

  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    if (mode == CapacityMode::Paper) {
      const bool st_edge = (e.u == s && e.v == t) || (e.u == t && e.v == s);
      const auto active = [&](NodeId v) { return v == s || v == t || roles.is_relay(v); };
      if (st_edge || !active(e.u) || !active(e.v)) continue;
    }
    kept.push_back(e);
  }

  FlowNetwork network(g.node_count());
  network.build(kept);
  CapacityResult result;
  result.mode = mode;
  result.terminal = t;
  result.value = network.max_flow(s, t);
  const std::vector<bool> source_side = network.reachable_from(s);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (v != s && source_side[v]) result.witness.members.push_back(v);
  }
  return result;
}

CapacityResult sT_capacity(const Graph& g, const RoleAssignment& roles, CapacityMode mode) {
  std::optional<CapacityResult> best;
  for (NodeId t : roles.terminals()) {
    CapacityResult r = st_capacity(g, roles, t, mode);
    if (!best || r.value < best->value - kCapacityTolerance) best = std::move(r);
  }
  if (!best) throw std::invalid_argument("empty terminal set");
  return *best;
}

CapacityResult brute_force_capacity(const Graph& g, const RoleAssignment& roles, NodeId t,
                                    std::size_t limit) {
  check_terminal(g, roles, t);
  const CutRange cuts = enumerate_cuts(roles, limit);
  CapacityResult best;
  best.mode = CapacityMode::Paper;
  best.terminal = t;
  best.value = std::numeric_limits<double>::infinity();
  for (const CutPartition& cut : cuts) {
    const double value = cut_capacity(g, roles, t, cut, CapacityMode::Paper);
    if (value < best.value - kCapacityTolerance) {
      best.value = value;
      best.witness = cut;
    }
  }
  return best;
}

double global_min_cut_exhaustive(const WeightedGraph& wg) {
  const std::size_t n = wg.node_count();
  if (n < 2) throw std::invalid_argument("global min cut needs at least two nodes");
  if (n > kGlobalMinCutExhaustiveLimit) {
    throw ResourceLimitError("global min cut enumeration refused for n=" + std::to_string(n));
  }
  // Node n-1 stays on side 0; walk the other n-1 membership bits in Gray-code
  // order, updating the crossing weight by one node flip per step.
  std::vector<std::uint8_t> side(n, 0);
  double crossing = 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t steps = (std::uint64_t{1} << (n - 1)) - 1;
  for (std::uint64_t step = 1; step <= steps; ++step) {
    const auto v = static_cast<NodeId>(std::countr_zero(step));
    double delta = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      if (u == v) continue;
      const double w = wg.weight(u, v);
      delta += side[u] == side[v] ? w : -w;
    }
    side[v] ^= 1U;
    crossing += delta;
    best = std::min(best, crossing);
  }
  return std::max(0.0, best);
}

double global_min_cut(const WeightedGraph& wg) {
  if (wg.node_count() <= kGlobalMinCutExhaustiveLimit) return global_min_cut_exhaustive(wg);
  if (const auto& lattice = wg.lattice()) {
    const auto n = static_cast<double>(wg.node_count());
    const auto k = static_cast<double>(lattice->k);
    const double single_node = k * lattice->w1 + (n - 1.0 - k) * lattice->w2;
    // With k = n-2 the non-lattice pairs form a perfect matching, and cutting
    // off one matched pair costs 2k*w1.
    if (lattice->k + 2 == wg.node_count()) return std::min(single_node, 2.0 * k * lattice->w1);
    return single_node;
  }
  throw ResourceLimitError("global min cut: n=" + std::to_string(wg.node_count()) +
                           " exceeds the exhaustive limit and has no lattice closed form");
}

}  // namespace rgcap
