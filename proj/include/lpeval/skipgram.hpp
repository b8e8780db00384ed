#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpeval/graph.hpp"
#include "lpeval/walks.hpp"

namespace lpeval {

struct SkipGramConfig {
  std::size_t dim = 128;
  std::size_t window = 10;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  /// Linearly decayed over all training tokens.
  double learning_rate_start = 0.025;
  double learning_rate_end = 0.0001;
  /// Shrink the window per centre token uniformly in [1, window], as word2vec does.
  bool dynamic_window = true;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Row-major n x dim table of node vectors.
struct Embedding {
  std::size_t num_nodes = 0;
  std::size_t dim = 0;
  std::vector<double> values;

  std::span<const double> row(NodeId u) const { return {values.data() + u * dim, dim}; }
  std::span<double> row(NodeId u) { return {values.data() + u * dim, dim}; }
};

struct TrainingReport {
  /// Mean negative-sampling loss per (centre, context) pair, one entry per epoch.
  std::vector<double> epoch_loss;
};

/// Skip-gram with negative sampling over the walk corpus. Negatives come
/// from the unigram^0.75 token distribution. Returns the centre vectors.
/// Zero epochs returns the seeded initialisation unchanged.
Embedding train_skipgram(const WalkCorpus& corpus, std::size_t num_nodes, const SkipGramConfig& config,
                         TrainingReport* report = nullptr);

/// -log s(c.x) - sum_k log s(-n_k.x) for centre x, context c and the rows
/// of `negatives` (k x dim, row-major).
double negative_sampling_loss(std::span<const double> center, std::span<const double> context,
                              std::span<const double> negatives);

struct NegativeSamplingGradient {
  std::vector<double> center;
  std::vector<double> context;
  std::vector<double> negatives;  // k x dim, row-major
};

NegativeSamplingGradient negative_sampling_gradient(std::span<const double> center,
                                                    std::span<const double> context,
                                                    std::span<const double> negatives);

/// Text cache: one header line `# lpeval-embedding n=<n> dim=<d> seed=<s> digest=<hex>`
/// then `label v1 ... vd` per node in id order.
void write_embedding(const std::filesystem::path& path, const Graph& g, const Embedding& e,
                     std::uint64_t seed, std::uint64_t digest);
/// Returns the cached table only when the header digest matches.
std::optional<Embedding> read_embedding(const std::filesystem::path& path, const Graph& g,
                                        std::uint64_t digest);

}  // namespace lpeval
