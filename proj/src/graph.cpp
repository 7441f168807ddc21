#include "rgcap/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

namespace rgcap {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), adjacency_(n) {
  for (Edge& e : edges) {
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    }
    if (e.u >= n || e.v >= n) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(e.u) + "-" +
                                  std::to_string(e.v) + " with n=" + std::to_string(n));
    }
    if (!(e.capacity >= 0.0) || !std::isfinite(e.capacity)) {
      throw std::invalid_argument("edge capacity must be finite and nonnegative");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      throw std::invalid_argument("duplicate edge " + std::to_string(edges[i].u) + "-" +
                                  std::to_string(edges[i].v));
    }
  }
  edges_ = std::move(edges);
  for (const Edge& e : edges_) {
    adjacency_[e.u].push_back({e.v, e.capacity});
    adjacency_[e.v].push_back({e.u, e.capacity});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= n_ || v >= n_) return false;
  const auto& list = adjacency_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& a, NodeId key) { return a.node < key; });
  return it != list.end() && it->node == v;
}

double Graph::capacity(NodeId u, NodeId v) const {
  if (u >= n_ || v >= n_) return 0.0;
  const auto& list = adjacency_[u];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& a, NodeId key) { return a.node < key; });
  return it != list.end() && it->node == v ? it->capacity : 0.0;
}

RoleAssignment::RoleAssignment(std::size_t n, NodeId source, std::vector<NodeId> terminals)
    : n_(n), source_(source), terminals_(std::move(terminals)) {
  if (source >= n) throw std::invalid_argument("source index out of range");
  if (terminals_.empty()) throw std::invalid_argument("terminal set must be nonempty");
  std::sort(terminals_.begin(), terminals_.end());
  if (std::adjacent_find(terminals_.begin(), terminals_.end()) != terminals_.end()) {
    throw std::invalid_argument("duplicate terminal");
  }
  if (terminals_.back() >= n) throw std::invalid_argument("terminal index out of range");
  if (std::binary_search(terminals_.begin(), terminals_.end(), source)) {
    throw std::invalid_argument("source cannot be a terminal");
  }
  relays_.reserve(n - 1 - terminals_.size());
  for (NodeId v = 0; v < n; ++v) {
    if (v != source && !std::binary_search(terminals_.begin(), terminals_.end(), v)) {
      relays_.push_back(v);
    }
  }
}

bool RoleAssignment::is_terminal(NodeId v) const {
  return std::binary_search(terminals_.begin(), terminals_.end(), v);
}

bool RoleAssignment::is_relay(NodeId v) const {
  return std::binary_search(relays_.begin(), relays_.end(), v);
}

const char* to_string(CapacityMode mode) noexcept {
  return mode == CapacityMode::Paper ? "paper" : "graph";
}

CapacityMode parse_capacity_mode(const std::string& text) {
  if (text == "paper") return CapacityMode::Paper;
  if (text == "graph") return CapacityMode::GraphTheoretic;
  throw std::invalid_argument("mode must be 'paper' or 'graph', got '" + text + "'");
}

std::size_t ring_distance(NodeId i, NodeId j, std::size_t n) {
  if (i >= n || j >= n) throw std::out_of_range("ring_distance: node index out of range");
  const std::size_t diff = i > j ? i - j : j - i;
  return std::min(diff, n - diff);
}

double cut_capacity(const Graph& g, const RoleAssignment& roles, NodeId t,
                    const CutPartition& cut, CapacityMode mode) {
  if (!roles.is_terminal(t)) throw std::invalid_argument("t is not a terminal");
  const NodeId s = roles.source();
  const std::size_t n = g.node_count();
  if (roles.node_count() != n) throw std::invalid_argument("roles and graph disagree on n");

  // 0: excluded, 1: source side (s and V_x), 2: sink side (t and the far relays)
  std::vector<std::uint8_t> side(n, 0);
  if (mode == CapacityMode::Paper) {
    for (NodeId r : roles.relays()) side[r] = 2;
  } else {
    std::fill(side.begin(), side.end(), std::uint8_t{2});
  }
  side[t] = 2;
  side[s] = 1;
  for (NodeId v : cut.members) {
    const bool allowed = mode == CapacityMode::Paper ? roles.is_relay(v)
                                                     : (v < n && v != s && v != t);
    if (!allowed) {
      throw std::invalid_argument("cut member " + std::to_string(v) + " is not a relay");
    }
    side[v] = 1;
  }

  double total = 0.0;
  for (const Edge& e : g.edges()) {
    const bool st_edge = (e.u == s && e.v == t) || (e.u == t && e.v == s);
    if (st_edge && mode == CapacityMode::Paper) continue;
    if (side[e.u] != 0 && side[e.v] != 0 && side[e.u] != side[e.v]) total += e.capacity;
  }
  return total;
}

std::size_t crossing_edge_count(std::size_t x, std::size_t relay_count) {
  if (relay_count == 0) throw std::invalid_argument("relay count must be positive");
  if (x > relay_count) throw std::invalid_argument("cut size exceeds relay count");
  return relay_count + x * (relay_count - x);
}

CutPartition CutRange::iterator::operator*() const {
  CutPartition cut;
  const auto relays = range_->relays();
  for (std::size_t i = 0; i < relays.size(); ++i) {
    if ((mask_ >> i) & 1U) cut.members.push_back(relays[i]);
  }
  return cut;
}

CutRange enumerate_cuts(const RoleAssignment& roles, std::size_t limit) {
  if (roles.relay_count() > limit || roles.relay_count() >= 63) {
    throw ResourceLimitError("cut enumeration refused: " + std::to_string(roles.relay_count()) +
                             " relays exceeds limit " + std::to_string(limit));
  }
  return CutRange({roles.relays().begin(), roles.relays().end()});
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n=" << g.node_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v << ' ' << format_real(e.capacity) << '\n';
  }
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  write_edge_list(os, g);
  return os.str();
}

namespace {

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("edge list line " + std::to_string(line_no) + ": " + what);
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line) || line.front() == '#') continue;
    if (!n) {
      if (line.rfind("n=", 0) != 0) parse_error(line_no, "expected header 'n=<count>'");
      std::size_t count = 0;
      const char* first = line.data() + 2;
      const char* last = line.data() + line.size();
      auto [ptr, ec] = std::from_chars(first, last, count);
      if (ec != std::errc() || ptr == first || !blank(std::string(ptr, last))) {
        parse_error(line_no, "bad node count");
      }
      n = count;
      continue;
    }
    std::istringstream fields(line);
    long long u = -1;
    long long v = -1;
    double c = 0.0;
    std::string rest;
    if (!(fields >> u >> v >> c) || (fields >> rest)) {
      parse_error(line_no, "expected 'u v capacity'");
    }
    if (u < 0 || v < 0) parse_error(line_no, "negative node index");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), c});
  }
  if (!n) throw std::runtime_error("edge list: missing 'n=<count>' header");
  try {
    return Graph(*n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("edge list: ") + e.what());
  }
}

}  // namespace rgcap
