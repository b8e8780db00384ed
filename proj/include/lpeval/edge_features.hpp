#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lpeval/graph.hpp"
#include "lpeval/skipgram.hpp"

namespace lpeval {

enum class EdgeOperator { kAverage, kHadamard, kWeightedL1, kWeightedL2 };

inline constexpr std::array<EdgeOperator, 4> kEdgeOperators{
    EdgeOperator::kAverage, EdgeOperator::kHadamard, EdgeOperator::kWeightedL1, EdgeOperator::kWeightedL2};

/// Short names used in method identifiers: Avg, Hada, L1, L2.
std::string_view to_string(EdgeOperator op);
std::optional<EdgeOperator> parse_edge_operator(std::string_view name);

/// Element-wise pair feature: (a+b)/2, a*b, |a-b| or |a-b|^2.
std::vector<double> embed_edge(std::span<const double> a, std::span<const double> b, EdgeOperator op);

/// One feature row per pair.
Eigen::MatrixXd edge_feature_matrix(const Embedding& emb, std::span<const NodePair> pairs, EdgeOperator op);

}  // namespace lpeval
