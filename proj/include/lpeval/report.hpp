#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lpeval/compare.hpp"
#include "lpeval/pipeline.hpp"

namespace lpeval {

struct ReportFormats {
  bool csv = true;
  bool markdown = true;
  bool pr_svg = true;
};

/// One CSV per comparison section: key columns, then column, statistic,
/// p_value, stars, winner, value, note, n, text.
void write_comparison_csvs(const std::filesystem::path& dir, const ComparisonReport& report);

/// Aligned markdown: one pivot table per section (rows = keys, columns =
/// metric or metric pair), then per-cell metric tables.
std::string render_markdown(const ComparisonReport& report, const ResultStore& store);

/// Writes the requested formats under `dir`. SVG overlays are drawn for
/// every (seed, dataset, prediction type, hop, skew) whose PR-curve CSVs
/// exist under `layout`. Returns the files written.
std::vector<std::filesystem::path> render_reports(const ComparisonReport& report, const ResultStore& store,
                                                  const RunLayout& layout, const std::filesystem::path& dir,
                                                  const ReportFormats& formats = {});

/// Reads a `recall,precision` CSV.
std::vector<PrPoint> read_pr_curve_csv(const std::filesystem::path& path);

}  // namespace lpeval
