#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lpeval/split.hpp"

namespace lpeval {

/// Threshold-free and top-k summaries of one scored test cell.
struct MetricRecord {
  double auroc = 0.0;
  double aupr = 0.0;
  double pr_at_p = 0.0;
  double pr_at_p_half = 0.0;
  std::size_t positives = 0;
  std::size_t total = 0;
  Skew skew = Skew::kImbalanced;
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

/// Mann-Whitney AUROC with ties counted as one half, via mid-ranks.
/// Throws kSingleClass unless both classes are present.
double auroc(std::span<const double> scores, std::span<const int> labels);

/// One point per distinct score (descending), equal scores entering as a
/// block, preceded by (0, precision of the first block).
std::vector<PrPoint> pr_curve(std::span<const double> scores, std::span<const int> labels);

/// Average precision: step integral of precision over recall at each
/// distinct threshold; no interpolation between points.
double average_precision(std::span<const double> scores, std::span<const int> labels);

/// Fraction of positives among the k top-scored items. A tie block that
/// straddles position k contributes its expected positive count for the
/// remaining slots.
double precision_at_k(std::span<const double> scores, std::span<const int> labels, std::size_t k);

/// All four metrics; Pr@P uses k = P and Pr@P/2 uses k = ceil(P/2).
MetricRecord evaluate_cell(std::span<const double> scores, std::span<const int> labels,
                           Skew skew = Skew::kImbalanced);

/// CSV `recall,precision`.
void write_pr_curve_csv(const std::filesystem::path& path, std::span<const PrPoint> curve);

struct NamedCurve {
  std::string name;
  std::vector<PrPoint> points;
};

/// Static SVG with overlaid step curves and a legend.
std::string render_pr_svg(std::span<const NamedCurve> curves, const std::string& title);

}  // namespace lpeval
