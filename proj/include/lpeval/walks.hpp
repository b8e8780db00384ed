#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lpeval/graph.hpp"

namespace lpeval {

struct WalkConfig {
  std::size_t walks_per_node = 10;
  std::size_t walk_length = 80;
  /// Node2vec return (p) and in-out (q) parameters; `biased == false` is the
  /// DeepWalk uniform walk.
  bool biased = false;
  double p = 1.0;
  double q = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Fixed-length walks stored back to back.
struct WalkCorpus {
  std::size_t walk_length = 0;
  std::vector<NodeId> tokens;

  std::size_t num_walks() const { return walk_length == 0 ? 0 : tokens.size() / walk_length; }
  std::span<const NodeId> walk(std::size_t i) const {
    return {tokens.data() + i * walk_length, walk_length};
  }
};

/// walks_per_node passes; each pass starts one walk at every node in a
/// seeded shuffled order. Every walk draws from its own seeded substream,
/// so the corpus is identical for any `jobs`.
///
/// Biased walks use the second-order weights 1/p (return to the previous
/// node), 1 (neighbour of the previous node), 1/q (otherwise).
WalkCorpus generate_walks(const Graph& g, const WalkConfig& config, std::size_t jobs = 1);

}  // namespace lpeval
