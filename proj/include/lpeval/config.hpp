#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpeval/learning_methods.hpp"
#include "lpeval/similarity.hpp"
#include "lpeval/split.hpp"

namespace lpeval {

struct DatasetConfig {
  std::string name;
  std::filesystem::path path;
  bool temporal = false;
  bool directed = false;
  std::vector<PredictionType> prediction_types;
  std::optional<char> delimiter;
  char comment_prefix = '#';

  ParseOptions parse_options() const;
};

enum class MethodGroup { kLocalSim, kGlobalSim, kLearning };
std::string_view to_string(MethodGroup g);  // local-sim, global-sim, learning

/// Roster entry: either a similarity index or a learning pipeline.
struct MethodSpec {
  std::string name;
  MethodGroup group = MethodGroup::kGlobalSim;
  std::optional<SimilarityMethod> similarity;
  std::optional<LearningMethod> learning;
};

/// Throws kConfig for unknown names and for recognised but unbuilt methods.
MethodSpec resolve_method(std::string_view name);
/// The ten similarity indices followed by the eight embedding pipelines.
std::vector<std::string> default_roster();

struct RunConfig {
  std::vector<DatasetConfig> datasets;
  std::vector<std::string> methods = default_roster();
  std::vector<Skew> skews{Skew::kBalanced, Skew::kImbalanced};
  std::vector<unsigned> hops{2, 3};
  std::vector<std::uint64_t> seeds{1};
  std::filesystem::path output_dir = "lpeval-out";
  std::size_t jobs = 1;
  bool pr_curves = false;

  SplitOptions split;
  SimilarityParams similarity;
  LearningConfig learning;

  std::vector<MethodSpec> roster() const;
};

/// Parses a JSON config; relative paths resolve against `base_dir`.
RunConfig config_from_json(std::string_view text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);
/// Checks the invariants (future only on temporal data, files exist,
/// methods resolve, hops in {2,3}); throws kConfig.
void validate(const RunConfig& cfg);

/// Canonical JSON of everything that affects results (paths by file name).
std::string canonical_config(const RunConfig& cfg);
std::string config_digest(const RunConfig& cfg);

}  // namespace lpeval
