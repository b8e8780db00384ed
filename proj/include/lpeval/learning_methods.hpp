#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpeval/edge_features.hpp"
#include "lpeval/logistic.hpp"
#include "lpeval/skipgram.hpp"
#include "lpeval/walks.hpp"

namespace lpeval {

enum class EmbeddingKind { kDeepWalk, kNode2Vec, kGraphSage };
enum class Classifier { kLogisticRegression, kRandomForest };

std::string_view to_string(EmbeddingKind k);  // DW, N2V, GS
std::string_view to_string(Classifier c);     // LR, RF

/// A learning-based predictor named
/// <embedding>[_<aggregator>]_<edge operator>_<classifier>, e.g. DW_L1_LR or
/// GS_Mean_Avg_RF.
struct LearningMethod {
  std::string name;
  EmbeddingKind embedding = EmbeddingKind::kDeepWalk;
  std::optional<std::string> aggregator;
  EdgeOperator op = EdgeOperator::kAverage;
  Classifier classifier = Classifier::kLogisticRegression;
  /// GraphSAGE embeddings and random forests are recognised but not built.
  bool implemented = true;
};

/// The eight runnable methods {DW, N2V} x {Avg, Hada, L1, L2} x {LR}.
std::vector<LearningMethod> enumerate_learning_methods();

/// Parses any well-formed name, implemented or not; std::nullopt otherwise.
std::optional<LearningMethod> parse_learning_method(std::string_view name);

struct LearningConfig {
  WalkConfig walks;       // seed and biased/p/q are overridden per embedding kind
  double node2vec_p = 1.0;
  double node2vec_q = 1.0;
  SkipGramConfig skipgram;
  LogisticOptions classifier;
  std::size_t folds = 5;
};

/// Walks + skip-gram for one embedding kind. Throws kNotImplemented for GS.
Embedding train_node_embedding(const Graph& g, EmbeddingKind kind, const LearningConfig& config,
                               std::uint64_t seed, std::size_t jobs = 1);

/// Out-of-fold positive-class probabilities for the given test pairs.
std::vector<double> learning_scores(const Embedding& emb, std::span<const NodePair> pairs,
                                    std::span<const int> labels, EdgeOperator op, const LearningConfig& config,
                                    std::uint64_t seed, std::size_t jobs = 1);

}  // namespace lpeval
