#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgcap {

using NodeId = std::uint32_t;

/// Absolute tolerance for comparing real-valued capacities.
inline constexpr double kCapacityTolerance = 1e-9;

/// Default relay-count limit for exhaustive cut enumeration.
inline constexpr std::size_t kDefaultEnumerationLimit = 20;

/// Thrown when an exhaustive routine is asked to exceed its size limit.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  NodeId u = 0;  // always u < v
  NodeId v = 0;
  double capacity = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on nodes 0..n-1 with nonnegative edge capacities.
/// Immutable after construction; edges are kept sorted by (u, v).
class Graph {
 public:
  struct Neighbor {
    NodeId node;
    double capacity;
  };

  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adjacency_(n) {}
  /// Endpoints may be given in either order. Throws std::invalid_argument on
  /// self-loops, duplicates, out-of-range endpoints or negative capacities.
  Graph(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// Neighbors of u in ascending node order.
  std::span<const Neighbor> neighbors(NodeId u) const { return adjacency_.at(u); }
  std::size_t degree(NodeId u) const { return adjacency_.at(u).size(); }

  bool has_edge(NodeId u, NodeId v) const;
  /// Capacity of edge {u, v}, or 0 when absent.
  double capacity(NodeId u, NodeId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Source, ordered terminal set, and the relays (everything else).
class RoleAssignment {
 public:
  /// Throws std::invalid_argument when terminals are empty, duplicated,
  /// out of range, or contain the source.
  RoleAssignment(std::size_t n, NodeId source, std::vector<NodeId> terminals);

  std::size_t node_count() const noexcept { return n_; }
  NodeId source() const noexcept { return source_; }
  /// Ascending.
  std::span<const NodeId> terminals() const noexcept { return terminals_; }
  /// Ascending.
  std::span<const NodeId> relays() const noexcept { return relays_; }
  std::size_t relay_count() const noexcept { return relays_.size(); }
  std::size_t terminal_count() const noexcept { return terminals_.size(); }
  bool is_terminal(NodeId v) const;
  bool is_relay(NodeId v) const;

 private:
  std::size_t n_;
  NodeId source_;
  std::vector<NodeId> terminals_;
  std::vector<NodeId> relays_;
};

/// The source-side relay set V_x of an s-t cut; the rest of the relays form
/// the complement. Members are kept sorted.
struct CutPartition {
  std::vector<NodeId> members;

  std::size_t size() const noexcept { return members.size(); }
  friend bool operator==(const CutPartition&, const CutPartition&) = default;
};

/// How a direct s-t edge and non-target terminals enter an s-t cut.
enum class CapacityMode {
  /// Only the three edge families of the relay-partition cut count: s to the
  /// far relays, near to far relays, near relays to t. Direct s-t edges and
  /// other terminals are ignored.
  Paper,
  /// Ordinary graph cut between s and t; every other node may be on either
  /// side and a direct s-t edge always counts.
  GraphTheoretic,
};

const char* to_string(CapacityMode mode) noexcept;
CapacityMode parse_capacity_mode(const std::string& text);

/// min(|i-j|, n-|i-j|).
std::size_t ring_distance(NodeId i, NodeId j, std::size_t n);

/// Capacity of the cut defined by `cut` between roles.source() and terminal
/// `t`. In Paper mode `cut` must be a subset of the relays; in GraphTheoretic
/// mode it may hold any node other than s and t.
double cut_capacity(const Graph& g, const RoleAssignment& roles, NodeId t,
                    const CutPartition& cut,
                    CapacityMode mode = CapacityMode::Paper);

/// Number of node pairs eligible to cross a size-x cut over N relays.
std::size_t crossing_edge_count(std::size_t x, std::size_t relay_count);

/// All 2^N subsets of the relays, ordered by bitmask (bit i <-> relays[i]).
class CutRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = CutPartition;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const CutRange* range, std::uint64_t mask) : range_(range), mask_(mask) {}

    CutPartition operator*() const;
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    void operator++(int) { ++mask_; }
    std::uint64_t mask() const noexcept { return mask_; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.mask_ == b.mask_; }

   private:
    const CutRange* range_ = nullptr;
    std::uint64_t mask_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, std::uint64_t{1} << relays_.size()}; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << relays_.size(); }
  std::span<const NodeId> relays() const noexcept { return relays_; }

 private:
  friend CutRange enumerate_cuts(const RoleAssignment&, std::size_t);
  explicit CutRange(std::vector<NodeId> relays) : relays_(std::move(relays)) {}
  std::vector<NodeId> relays_;
};

/// Throws ResourceLimitError when the relay count exceeds `limit`.
CutRange enumerate_cuts(const RoleAssignment& roles,
                        std::size_t limit = kDefaultEnumerationLimit);

// Edge-list text format:
//   optional '#' comment lines (manifest), then "n=<count>", then one
//   "u v capacity" line per edge with u < v in ascending order.
void write_edge_list(std::ostream& out, const Graph& g);
std::string to_edge_list(const Graph& g);
/// Throws std::runtime_error with a line number on malformed input.
Graph read_edge_list(std::istream& in);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);

}  // namespace rgcap
