#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpeval/graph.hpp"

namespace lpeval {

enum class SimilarityMethod { kCN, kJC, kAA, kRA, kPA, kKatz, kHT, kNormHT, kCT, kNormCT };
enum class MethodFamily { kLocal, kGlobal };

inline constexpr std::array<SimilarityMethod, 10> kSimilarityMethods{
    SimilarityMethod::kCN,   SimilarityMethod::kJC,     SimilarityMethod::kAA, SimilarityMethod::kRA,
    SimilarityMethod::kPA,   SimilarityMethod::kKatz,   SimilarityMethod::kHT, SimilarityMethod::kNormHT,
    SimilarityMethod::kCT,   SimilarityMethod::kNormCT};

std::string_view to_string(SimilarityMethod m);
std::optional<SimilarityMethod> parse_similarity_method(std::string_view name);
MethodFamily family(SimilarityMethod m);

struct SimilarityParams {
  double katz_beta = 0.05;
  unsigned katz_length = 6;
  /// Max-norm residual for iterative hitting-time solves.
  double solve_tolerance = 1e-10;
  std::size_t max_sweeps = 1'000'000;
  /// Graphs up to this many nodes use dense direct solves.
  std::size_t dense_limit = 2000;
};

// Local indices. u != v is required; ids are range-checked.
double common_neighbors(const Graph& g, NodeId u, NodeId v);
double jaccard(const Graph& g, NodeId u, NodeId v);
/// Natural logarithm of the common neighbour's degree.
double adamic_adar(const Graph& g, NodeId u, NodeId v);
double resource_allocation(const Graph& g, NodeId u, NodeId v);

// Global indices.
double preferential_attachment(const Graph& g, NodeId u, NodeId v);

/// sum_{l=1..L} beta^l (A^l)_{uv}, i.e. walks rather than simple paths.
double katz(const Graph& g, NodeId u, NodeId v, double beta, unsigned length);
/// Katz score from `source` to every node, via L sparse products.
std::vector<double> katz_from(const Graph& g, NodeId source, double beta, unsigned length);

/// Expected first-passage time to `target` from every node (0 at target).
/// Dense LU for n <= dense_limit, Gauss-Seidel otherwise. Throws
/// kNonConvergence when the sweep budget runs out.
std::vector<double> hitting_time(const Graph& g, NodeId target, const SimilarityParams& params = {});

/// All-pairs hitting times from the Laplacian pseudo-inverse:
/// h(x -> t) = w_x - w_t + 2m (L+_tt - L+_xt) with w = L+ d.
/// One O(n^3) factorisation, then O(1) per query.
class HittingTimeTable {
 public:
  explicit HittingTimeTable(const Graph& g);

  double operator()(NodeId source, NodeId target) const;
  std::size_t size() const noexcept { return n_; }

 private:
  std::size_t n_ = 0;
  double two_m_ = 0.0;
  std::vector<double> pinv_;  // row-major n x n
  std::vector<double> w_;
};

// Negated random-walk scores; larger means shorter expected travel.
double score_ht(const Graph& g, NodeId u, NodeId v, const SimilarityParams& params = {});
double score_norm_ht(const Graph& g, NodeId u, NodeId v, const SimilarityParams& params = {});
double score_ct(const Graph& g, NodeId u, NodeId v, const SimilarityParams& params = {});
double score_norm_ct(const Graph& g, NodeId u, NodeId v, const SimilarityParams& params = {});

/// Scores for one method over a batch of pairs, one per pair, in input order.
struct ScoreSheet {
  std::string method;
  std::vector<NodePair> pairs;
  std::vector<double> scores;
};

struct ScoreOptions {
  std::size_t jobs = 1;
  /// Reuse per-source Katz vectors and hitting-time solves across the batch.
  bool use_cache = true;
};

/// Applies one similarity method to every pair. Local methods only accept
/// pairs at distance two (kContractViolation otherwise); every pair must be
/// a non-edge.
ScoreSheet score_pairs(const Graph& g, SimilarityMethod method, std::span<const NodePair> pairs,
                       const SimilarityParams& params = {}, const ScoreOptions& options = {});

/// CSV `u,v,score`, nodes written by label, scores with 17 significant digits.
void write_score_sheet(const std::filesystem::path& path, const Graph& g, const ScoreSheet& sheet);
ScoreSheet read_score_sheet(const std::filesystem::path& path, const Graph& g, std::string method);

}  // namespace lpeval
