#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpeval/pipeline.hpp"
#include "lpeval/stats.hpp"

namespace lpeval {

/// Metric columns used by the comparison tables.
enum class TableMetric { kAuroc, kAuprBalanced, kAuprImbalanced, kPrPBalanced, kPrPImbalanced };
inline constexpr TableMetric kTableMetrics[] = {TableMetric::kAuroc, TableMetric::kAuprBalanced,
                                                TableMetric::kAuprImbalanced, TableMetric::kPrPBalanced,
                                                TableMetric::kPrPImbalanced};
std::string_view to_string(TableMetric m);  // AUROC, AUPR-bal, AUPR-imb, Pr@P-bal, Pr@P-imb

/// One cell of a comparison table: a test result, a scalar (tau or a best
/// score), or neither when the cell is untestable ("---").
struct ComparisonCell {
  std::vector<std::pair<std::string, std::string>> keys;
  std::string column;
  std::optional<TestResult> test;
  std::optional<double> value;
  std::size_t n = 0;
  std::string note;

  std::string text() const;
};

struct ComparisonSection {
  std::string kind;
  std::string title;
  std::vector<ComparisonCell> cells;
};

struct ComparisonReport {
  std::vector<std::string> roster;
  std::vector<ComparisonSection> sections;

  const ComparisonSection* find(std::string_view kind) const;
};

/// Per (network, hop, metric): paired t-test future vs missing over methods
/// scored on both, and tau between the two method rankings.
std::vector<ComparisonSection> compare_future_vs_missing(const ResultStore& store);
/// Per (dataset, prediction type, metric): two-hop vs three-hop over the
/// non-local methods scored at both hops.
ComparisonSection compare_hops(const ResultStore& store);
/// Two-hop: one-way ANOVA and Tukey across the three groups. Three-hop:
/// Student's t between global-sim and learning.
std::vector<ComparisonSection> compare_groups(const ResultStore& store);
/// Best method per group and dataset, then directed vs undirected t-tests.
std::vector<ComparisonSection> compare_network_type(const ResultStore& store);
/// Tau between metric pairs across methods, plus the early-retrieval set.
std::vector<ComparisonSection> compare_imbalance(const ResultStore& store);

ComparisonReport compare_all(const ResultStore& store);

}  // namespace lpeval
