#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpeval/graph.hpp"
#include "lpeval/ingest.hpp"

namespace lpeval {

enum class PredictionType { kFuture, kMissing };
enum class Skew { kBalanced, kImbalanced };

/// Hop classes evaluated by the protocol. Pairs farther than three hops are
/// counted and discarded.
inline constexpr std::array<unsigned, 2> kHopClasses{2, 3};

std::string_view to_string(PredictionType t);
std::string_view to_string(Skew s);
PredictionType parse_prediction_type(std::string_view s);
Skew parse_skew(std::string_view s);
/// "two-hop" / "three-hop".
std::string_view hop_name(unsigned hop);

/// Graph plus its ground-truth positives, before bucketing.
struct SplitGraph {
  Graph graph;
  std::vector<NodePair> positives;
};

/// Temporal ground truth: the earliest ceil(train_frac * N) raw records form
/// the graph (after dedup + LCC); later records yield positives. Ties in
/// timestamp keep file order. Throws kEmptyPositives when nothing survives
/// the endpoint/edge filters.
SplitGraph future_split(const InteractionLog& log, double train_frac = 0.75);

/// Random-removal ground truth over the deduplicated undirected pair set.
/// Exactly floor(removal_frac * |E|) pairs are removed, chosen by `seed`.
SplitGraph missing_split(const InteractionLog& log, double removal_frac, std::uint64_t seed);
SplitGraph missing_split(std::span<const LabelPair> pairs, double removal_frac, std::uint64_t seed);

struct HopBuckets {
  std::vector<NodePair> hop2;
  std::vector<NodePair> hop3;
  std::size_t discarded = 0;

  const std::vector<NodePair>& at(unsigned hop) const;
  std::vector<NodePair>& at(unsigned hop);
};

/// Buckets non-edge pairs by exact shortest-path distance (cap 4).
/// Throws kContractViolation if a pair is an edge of g.
HopBuckets bucket_positives(const Graph& g, std::span<const NodePair> pairs);

enum class NegativeStrategy {
  /// u uniform over nodes, then v uniform over nodes at distance d from u.
  kNodeThenPartner,
  /// Uniform over all pairs at distance d.
  kUniformPair,
};

struct NegativeOptions {
  std::size_t ratio = 10;
  std::uint64_t seed = 0;
  NegativeStrategy strategy = NegativeStrategy::kNodeThenPartner;
  /// Attempts allowed per requested negative before declaring exhaustion.
  std::size_t attempt_factor = 1000;
};

/// Distance-stratified negatives: ratio * |positives_d| distinct pairs at
/// exact distance d for each hop class. Throws kExhausted (naming the hop
/// class) when the attempt budget runs out.
HopBuckets sample_negatives(const Graph& g, const HopBuckets& positives, const NegativeOptions& options);

struct EvalSplit {
  PredictionType prediction_type = PredictionType::kMissing;
  std::uint64_t seed = 0;
  Graph graph;
  HopBuckets positives;
  HopBuckets negatives;
  std::size_t skew_ratio = 10;
};

struct SplitOptions {
  double train_frac = 0.75;
  double removal_frac = 0.10;
  std::size_t negative_ratio = 10;
  NegativeStrategy strategy = NegativeStrategy::kNodeThenPartner;
};

/// ingest log -> ground truth -> buckets -> negatives.
EvalSplit make_eval_split(const InteractionLog& log, PredictionType type, std::uint64_t seed,
                          const SplitOptions& options = {});

struct TestView {
  std::vector<NodePair> pairs;
  std::vector<int> labels;  // 1 positive, 0 negative

  std::size_t positives() const;
};

/// Imbalanced: every positive plus the whole negative pool. Balanced:
/// every positive plus a seeded subsample of the pool of the same size, so
/// balanced is always a subset of imbalanced. Throws kEmptyCell when the
/// hop class has no positives.
TestView test_view(const EvalSplit& split, unsigned hop, Skew skew, std::uint64_t seed);

/// JSON with fields {prediction_type, seed, graph_edges, positives:{hop2,hop3},
/// negatives:{hop2,hop3}}; nodes written as original labels. Output is
/// byte-identical for identical splits.
std::string split_to_json(const EvalSplit& split);
EvalSplit split_from_json(std::string_view text);
void write_split(const std::filesystem::path& path, const EvalSplit& split);
EvalSplit read_split(const std::filesystem::path& path);

}  // namespace lpeval
