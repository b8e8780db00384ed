#include "lpeval/learning_methods.hpp"

#include <array>

#include "lpeval/error.hpp"
#include "lpeval/seeds.hpp"

namespace lpeval {
namespace {

constexpr std::array<std::string_view, 4> kAggregators{"Mean", "MeanPool", "MaxPool", "LSTM"};

std::vector<std::string_view> split_underscore(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find('_', start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::string_view to_string(EmbeddingKind k) {
  switch (k) {
    case EmbeddingKind::kDeepWalk: return "DW";
    case EmbeddingKind::kNode2Vec: return "N2V";
    case EmbeddingKind::kGraphSage: return "GS";
  }
  return "?";
}

std::string_view to_string(Classifier c) { return c == Classifier::kLogisticRegression ? "LR" : "RF"; }

std::vector<LearningMethod> enumerate_learning_methods() {
  std::vector<LearningMethod> out;
  for (auto kind : {EmbeddingKind::kDeepWalk, EmbeddingKind::kNode2Vec}) {
    for (auto op : kEdgeOperators) {
      LearningMethod m;
      m.embedding = kind;
      m.op = op;
      m.classifier = Classifier::kLogisticRegression;
      m.name = std::string(to_string(kind)) + "_" + std::string(to_string(op)) + "_LR";
      out.push_back(std::move(m));
    }
  }
  return out;
}

std::optional<LearningMethod> parse_learning_method(std::string_view name) {
  const auto parts = split_underscore(name);
  LearningMethod m;
  m.name = std::string(name);
  std::size_t i = 0;
  if (parts.size() < 3) return std::nullopt;
  if (parts[0] == "DW") {
    m.embedding = EmbeddingKind::kDeepWalk;
  } else if (parts[0] == "N2V") {
    m.embedding = EmbeddingKind::kNode2Vec;
  } else if (parts[0] == "GS") {
    m.embedding = EmbeddingKind::kGraphSage;
  } else {
    return std::nullopt;
  }
  ++i;
  if (m.embedding == EmbeddingKind::kGraphSage) {
    if (parts.size() != 4) return std::nullopt;
    bool known = false;
    for (auto a : kAggregators) known = known || a == parts[i];
    if (!known) return std::nullopt;
    m.aggregator = std::string(parts[i++]);
  } else if (parts.size() != 3) {
    return std::nullopt;
  }
  auto op = parse_edge_operator(parts[i++]);
  if (!op) return std::nullopt;
  m.op = *op;
  if (parts[i] == "LR") {
    m.classifier = Classifier::kLogisticRegression;
  } else if (parts[i] == "RF") {
    m.classifier = Classifier::kRandomForest;
  } else {
    return std::nullopt;
  }
  m.implemented = m.embedding != EmbeddingKind::kGraphSage && m.classifier == Classifier::kLogisticRegression;
  return m;
}

Embedding train_node_embedding(const Graph& g, EmbeddingKind kind, const LearningConfig& config,
                               std::uint64_t seed, std::size_t jobs) {
  if (kind == EmbeddingKind::kGraphSage) {
    throw Error(ErrorKind::kNotImplemented, "GraphSAGE embeddings are not implemented");
  }
  WalkConfig walks = config.walks;
  walks.biased = kind == EmbeddingKind::kNode2Vec;
  walks.p = walks.biased ? config.node2vec_p : 1.0;
  walks.q = walks.biased ? config.node2vec_q : 1.0;
  walks.seed = derive_seed(seed, "walks");
  const WalkCorpus corpus = generate_walks(g, walks, jobs);
  SkipGramConfig sg = config.skipgram;
  sg.seed = derive_seed(seed, "skipgram");
  return train_skipgram(corpus, g.num_nodes(), sg);
}

std::vector<double> learning_scores(const Embedding& emb, std::span<const NodePair> pairs,
                                    std::span<const int> labels, EdgeOperator op, const LearningConfig& config,
                                    std::uint64_t seed, std::size_t jobs) {
  const Eigen::MatrixXd x = edge_feature_matrix(emb, pairs, op);
  return out_of_fold_scores(x, labels, config.folds, seed, config.classifier, jobs);
}

}  // namespace lpeval
