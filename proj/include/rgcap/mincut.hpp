#pragma once

#include <cstddef>

#include "rgcap/generators.hpp"
#include "rgcap/graph.hpp"

namespace rgcap {

/// Value of a minimum s-t (or s-T) cut together with one minimizing cut.
struct CapacityResult {
  double value = 0.0;
  /// Source-side cut members. Deterministic for a given input.
  CutPartition witness;
  CapacityMode mode = CapacityMode::Paper;
  /// Terminal that attains the minimum.
  NodeId terminal = 0;
};

/// Exact minimum s-t cut by Dinic's blocking-flow algorithm.
///
/// In Paper mode the solve runs on the subgraph induced by s, t and the
/// relays, with any direct s-t edge removed; this is exactly the minimum of
/// cut_capacity over all relay partitions. The witness is the set of nodes
/// reachable from s in the final residual network (the source-minimal
/// minimum cut). If s cannot reach t the value is 0 and the witness holds
/// whatever s reaches.
CapacityResult st_capacity(const Graph& g, const RoleAssignment& roles, NodeId t,
                           CapacityMode mode = CapacityMode::Paper);

/// Minimum of st_capacity over all terminals; ties go to the lowest terminal.
CapacityResult sT_capacity(const Graph& g, const RoleAssignment& roles,
                           CapacityMode mode = CapacityMode::Paper);

/// Exhaustive minimum of cut_capacity (Paper mode) over all 2^N relay cuts.
/// Ties go to the cut enumerated first. Throws ResourceLimitError above `limit`.
CapacityResult brute_force_capacity(const Graph& g, const RoleAssignment& roles, NodeId t,
                                    std::size_t limit = kDefaultEnumerationLimit);

/// Largest n for which global_min_cut enumerates bipartitions.
inline constexpr std::size_t kGlobalMinCutExhaustiveLimit = 24;

/// Minimum total weight crossing any nonempty proper node subset.
/// Enumerates all bipartitions for n <= 24; larger inputs are accepted only
/// when they carry a lattice weighting, which has the closed form
/// k*w1 + (n-1-k)*w2 (for k = n-2, the smaller of that and 2k*w1).
/// Otherwise throws ResourceLimitError.
double global_min_cut(const WeightedGraph& wg);

/// Exhaustive enumeration only. Throws ResourceLimitError for n > 24.
double global_min_cut_exhaustive(const WeightedGraph& wg);

}  // namespace rgcap
