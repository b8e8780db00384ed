#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lpeval/config.hpp"
#include "lpeval/metrics.hpp"

namespace lpeval {

inline constexpr std::string_view kSoftwareVersion = "lpeval 0.1.0";

/// One evaluated (seed, dataset, prediction type, hop, skew, method) cell.
struct ResultRow {
  std::uint64_t seed = 0;
  std::string dataset;
  bool directed = false;
  PredictionType prediction_type = PredictionType::kMissing;
  unsigned hop = 2;
  std::string method;
  MethodGroup group = MethodGroup::kGlobalSim;
  MetricRecord metrics;  // metrics.skew is the cell's skew
};

/// A cell (or a whole stage) that could not be produced. Empty / zero
/// fields mean "all" at that level.
struct CellFailure {
  std::uint64_t seed = 0;
  std::string dataset;
  std::string prediction_type;
  unsigned hop = 0;
  std::string skew;
  std::string method;
  std::string stage;
  std::string kind;
  std::string message;
};

struct SplitSummary {
  std::uint64_t seed = 0;
  std::string dataset;
  PredictionType prediction_type = PredictionType::kMissing;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t positives_hop2 = 0;
  std::size_t positives_hop3 = 0;
  std::size_t positives_discarded = 0;
  std::size_t negatives_hop2 = 0;
  std::size_t negatives_hop3 = 0;
};

struct ResultStore {
  std::vector<ResultRow> rows;
  std::vector<CellFailure> failures;
  std::vector<SplitSummary> splits;
  std::size_t expected_cells = 0;
};

/// File locations under the output directory. Each master seed gets its
/// own run directory so seeds never overwrite each other.
struct RunLayout {
  std::filesystem::path root;

  std::filesystem::path run_dir(std::uint64_t seed) const;
  std::filesystem::path split_path(std::uint64_t seed, const std::string& dataset, PredictionType t) const;
  std::filesystem::path score_path(std::uint64_t seed, Skew skew, const std::string& dataset, PredictionType t,
                                   unsigned hop, const std::string& method) const;
  std::filesystem::path curve_path(std::uint64_t seed, Skew skew, const std::string& dataset, PredictionType t,
                                   unsigned hop, const std::string& method) const;
  std::filesystem::path score_failures(std::uint64_t seed) const;
  std::filesystem::path ingest_csv() const { return root / "ingest.csv"; }
  std::filesystem::path results_csv() const { return root / "results.csv"; }
  std::filesystem::path manifest() const { return root / "manifest.json"; }
  std::filesystem::path compare_dir() const { return root / "compare"; }
  std::filesystem::path report_dir() const { return root / "report"; }
};

// Labelled seed streams: adding a dataset or method never perturbs others.
std::uint64_t split_seed(std::uint64_t master, const std::string& dataset, PredictionType t);
std::uint64_t view_seed(std::uint64_t master, const std::string& dataset, PredictionType t, unsigned hop);
std::uint64_t embedding_seed(std::uint64_t master, const std::string& dataset, PredictionType t, EmbeddingKind k);
std::uint64_t classifier_seed(std::uint64_t master, const std::string& dataset, PredictionType t, unsigned hop,
                              Skew skew, const std::string& method);

/// Methods eligible for a hop class: local indices only at distance two.
bool eligible(const MethodSpec& m, unsigned hop);

struct IngestRow {
  std::string dataset;
  LogSummary summary;
  std::size_t lcc_nodes = 0;
  std::size_t lcc_edges = 0;
};

// Stages. Each reads the previous stage's files from the output directory,
// so they can run separately from the CLI or chained by run_pipeline.
std::vector<IngestRow> stage_ingest(const RunConfig& cfg);
std::vector<CellFailure> stage_split(const RunConfig& cfg);
std::vector<CellFailure> stage_score(const RunConfig& cfg);
ResultStore stage_evaluate(const RunConfig& cfg);

/// ingest -> split -> score -> evaluate. Per-cell errors are recorded in
/// the store and the manifest; the run continues with other cells.
ResultStore run_pipeline(const RunConfig& cfg);

/// Long CSV: one row per cell and metric.
void write_results_csv(const std::filesystem::path& path, const ResultStore& store);
ResultStore read_results_csv(const std::filesystem::path& path);
void write_manifest(const std::filesystem::path& path, const RunConfig& cfg, const ResultStore& store);

}  // namespace lpeval
