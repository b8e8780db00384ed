#include "lpeval/edge_features.hpp"

#include <cmath>

#include "lpeval/error.hpp"

namespace lpeval {

std::string_view to_string(EdgeOperator op) {
  switch (op) {
    case EdgeOperator::kAverage: return "Avg";
    case EdgeOperator::kHadamard: return "Hada";
    case EdgeOperator::kWeightedL1: return "L1";
    case EdgeOperator::kWeightedL2: return "L2";
  }
  return "?";
}

std::optional<EdgeOperator> parse_edge_operator(std::string_view name) {
  for (auto op : kEdgeOperators) {
    if (to_string(op) == name) return op;
  }
  return std::nullopt;
}

std::vector<double> embed_edge(std::span<const double> a, std::span<const double> b, EdgeOperator op) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::kInvalidArgument, "edge operator on vectors of different dimension (" +
                                                 std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    switch (op) {
      case EdgeOperator::kAverage: out[i] = (a[i] + b[i]) / 2.0; break;
      case EdgeOperator::kHadamard: out[i] = a[i] * b[i]; break;
      case EdgeOperator::kWeightedL1: out[i] = std::abs(a[i] - b[i]); break;
      case EdgeOperator::kWeightedL2: out[i] = (a[i] - b[i]) * (a[i] - b[i]); break;
    }
  }
  return out;
}

Eigen::MatrixXd edge_feature_matrix(const Embedding& emb, std::span<const NodePair> pairs, EdgeOperator op) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(pairs.size()), static_cast<Eigen::Index>(emb.dim));
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const auto f = embed_edge(emb.row(pairs[r].u), emb.row(pairs[r].v), op);
    for (std::size_t c = 0; c < f.size(); ++c) x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = f[c];
  }
  return x;
}

}  // namespace lpeval
