#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lpeval {

/// Dense node index, contiguous in [0, num_nodes()) within one Graph.
using NodeId = std::uint32_t;

/// Unordered node pair stored with u < v.
struct NodePair {
  NodeId u = 0;
  NodeId v = 0;

  NodePair() = default;
  NodePair(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

struct NodePairHash {
  std::size_t operator()(const NodePair& p) const noexcept {
    return std::hash<std::uint64_t>{}((static_cast<std::uint64_t>(p.u) << 32) | p.v);
  }
};

using LabelPair = std::pair<std::string, std::string>;

/// Simple, undirected, unweighted, connected graph.
///
/// Construction keeps only the largest connected component. Node ids are
/// assigned in lexicographic order of the original labels, which makes
/// construction idempotent: rebuilding from edge_labels() yields the same
/// graph with the same ids. Immutable after construction.
class Graph {
 public:
  /// Self-loops are dropped and duplicates collapsed. When two components
  /// tie for largest, the one holding the lexicographically smallest label
  /// wins. Throws kEmptyInput when no non-loop pair remains.
  static Graph from_label_pairs(std::span<const LabelPair> pairs);

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_edges() const noexcept { return targets_.size() / 2; }

  /// Sorted, duplicate-free neighbour list.
  std::span<const NodeId> neighbors(NodeId u) const;
  std::size_t degree(NodeId u) const;
  bool has_edge(NodeId u, NodeId v) const;

  /// Shortest-path length if it is at most `cap`, std::nullopt beyond.
  std::optional<unsigned> distance(NodeId u, NodeId v, unsigned cap = 4) const;

  /// Every node at exact shortest-path distance d >= 1 from u, sorted.
  std::vector<NodeId> nodes_at_distance(NodeId u, unsigned d) const;

  /// deg(u) / 2m.
  double stationary_probability(NodeId u) const;

  const std::string& label(NodeId u) const;
  std::optional<NodeId> find(std::string_view label) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Edges as (u, v) with u < v, in ascending order.
  std::vector<NodePair> edges() const;
  std::vector<LabelPair> edge_labels() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.offsets_ == b.offsets_ && a.targets_ == b.targets_;
  }

 private:
  void check(NodeId u) const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
};

}  // namespace lpeval
