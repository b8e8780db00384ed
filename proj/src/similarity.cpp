#include "lpeval/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "lpeval/error.hpp"
#include "lpeval/parallel.hpp"

namespace lpeval {
namespace {

void require_distinct(NodeId u, NodeId v) {
  if (u == v) throw Error(ErrorKind::kInvalidArgument, "similarity of a node with itself");
}

// Visits each common neighbour of u and v (sorted-list merge).
template <typename F>
void for_each_common(const Graph& g, NodeId u, NodeId v, F&& f) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      f(a[i]);
      ++i;
      ++j;
    }
  }
}

bool is_hitting_family(SimilarityMethod m) {
  return m == SimilarityMethod::kHT || m == SimilarityMethod::kNormHT || m == SimilarityMethod::kCT ||
         m == SimilarityMethod::kNormCT;
}

// h(u->v) and h(v->u) combined per method, already negated.
double combine_hitting(const Graph& g, SimilarityMethod m, NodeId u, NodeId v, double h_uv, double h_vu) {
  switch (m) {
    case SimilarityMethod::kHT: return -h_uv;
    case SimilarityMethod::kNormHT: return -h_uv * g.stationary_probability(v);
    case SimilarityMethod::kCT: return -(h_uv + h_vu);
    case SimilarityMethod::kNormCT:
      return -(h_uv * g.stationary_probability(v) + h_vu * g.stationary_probability(u));
    default: break;
  }
  throw Error(ErrorKind::kInvalidArgument, "not a hitting-time method");
}

double score_single(const Graph& g, SimilarityMethod m, NodeId u, NodeId v, const SimilarityParams& p) {
  switch (m) {
    case SimilarityMethod::kCN: return common_neighbors(g, u, v);
    case SimilarityMethod::kJC: return jaccard(g, u, v);
    case SimilarityMethod::kAA: return adamic_adar(g, u, v);
    case SimilarityMethod::kRA: return resource_allocation(g, u, v);
    case SimilarityMethod::kPA: return preferential_attachment(g, u, v);
    case SimilarityMethod::kKatz: return katz(g, u, v, p.katz_beta, p.katz_length);
    case SimilarityMethod::kHT: return score_ht(g, u, v, p);
    case SimilarityMethod::kNormHT: return score_norm_ht(g, u, v, p);
    case SimilarityMethod::kCT: return score_ct(g, u, v, p);
    case SimilarityMethod::kNormCT: return score_norm_ct(g, u, v, p);
  }
  throw Error(ErrorKind::kInvalidArgument, "unknown similarity method");
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string_view to_string(SimilarityMethod m) {
  switch (m) {
    case SimilarityMethod::kCN: return "CN";
    case SimilarityMethod::kJC: return "JC";
    case SimilarityMethod::kAA: return "AA";
    case SimilarityMethod::kRA: return "RA";
    case SimilarityMethod::kPA: return "PA";
    case SimilarityMethod::kKatz: return "Katz";
    case SimilarityMethod::kHT: return "HT";
    case SimilarityMethod::kNormHT: return "Norm-HT";
    case SimilarityMethod::kCT: return "CT";
    case SimilarityMethod::kNormCT: return "Norm-CT";
  }
  return "?";
}

std::optional<SimilarityMethod> parse_similarity_method(std::string_view name) {
  for (auto m : kSimilarityMethods) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

MethodFamily family(SimilarityMethod m) {
  switch (m) {
    case SimilarityMethod::kCN:
    case SimilarityMethod::kJC:
    case SimilarityMethod::kAA:
    case SimilarityMethod::kRA: return MethodFamily::kLocal;
    default: return MethodFamily::kGlobal;
  }
}

double common_neighbors(const Graph& g, NodeId u, NodeId v) {
  require_distinct(u, v);
  std::size_t count = 0;
  for_each_common(g, u, v, [&](NodeId) { ++count; });
  return static_cast<double>(count);
}

double jaccard(const Graph& g, NodeId u, NodeId v) {
  const double inter = common_neighbors(g, u, v);
  const double uni = static_cast<double>(g.degree(u) + g.degree(v)) - inter;
  return uni == 0.0 ? 0.0 : inter / uni;
}

double adamic_adar(const Graph& g, NodeId u, NodeId v) {
  require_distinct(u, v);
  double s = 0.0;
  // A common neighbour has degree >= 2, so the log is positive.
  for_each_common(g, u, v, [&](NodeId z) { s += 1.0 / std::log(static_cast<double>(g.degree(z))); });
  return s;
}

double resource_allocation(const Graph& g, NodeId u, NodeId v) {
  require_distinct(u, v);
  double s = 0.0;
  for_each_common(g, u, v, [&](NodeId z) { s += 1.0 / static_cast<double>(g.degree(z)); });
  return s;
}

double preferential_attachment(const Graph& g, NodeId u, NodeId v) {
  require_distinct(u, v);
  return static_cast<double>(g.degree(u)) * static_cast<double>(g.degree(v));
}

std::vector<double> katz_from(const Graph& g, NodeId source, double beta, unsigned length) {
  if (!(beta > 0.0)) throw Error(ErrorKind::kInvalidArgument, "Katz beta must be positive");
  if (length < 1) throw Error(ErrorKind::kInvalidArgument, "Katz length must be >= 1");
  const std::size_t n = g.num_nodes();
  g.degree(source);
  std::vector<double> walks(n, 0.0), next(n), score(n, 0.0);
  walks[source] = 1.0;
  double weight = 1.0;
  for (unsigned l = 1; l <= length; ++l) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId x = 0; x < n; ++x) {
      if (walks[x] == 0.0) continue;
      for (NodeId y : g.neighbors(x)) next[y] += walks[x];
    }
    walks.swap(next);
    weight *= beta;
    for (std::size_t x = 0; x < n; ++x) score[x] += weight * walks[x];
  }
  return score;
}

double katz(const Graph& g, NodeId u, NodeId v, double beta, unsigned length) {
  require_distinct(u, v);
  g.degree(v);
  return katz_from(g, u, beta, length)[v];
}

double score_ht(const Graph& g, NodeId u, NodeId v, const SimilarityParams& params) {
  require_distinct(u, v);
  return -hitting_time(g, v, params)[u];
}

double score_norm_ht(const Graph& g, NodeId u, NodeId v, const SimilarityParams& params) {
  return score_ht(g, u, v, params) * g.stationary_probability(v);
}

double score_ct(const Graph& g, NodeId u, NodeId v, const SimilarityParams& params) {
  require_distinct(u, v);
  return -(hitting_time(g, v, params)[u] + hitting_time(g, u, params)[v]);
}

double score_norm_ct(const Graph& g, NodeId u, NodeId v, const SimilarityParams& params) {
  require_distinct(u, v);
  return -(hitting_time(g, v, params)[u] * g.stationary_probability(v) +
           hitting_time(g, u, params)[v] * g.stationary_probability(u));
}

ScoreSheet score_pairs(const Graph& g, SimilarityMethod method, std::span<const NodePair> pairs,
                       const SimilarityParams& params, const ScoreOptions& options) {
  ScoreSheet sheet{std::string(to_string(method)), {pairs.begin(), pairs.end()},
                   std::vector<double>(pairs.size(), 0.0)};
  for (const auto& p : pairs) {
    if (p.u == p.v || g.has_edge(p.u, p.v)) {
      throw Error(ErrorKind::kContractViolation,
                  "pair (" + g.label(p.u) + ", " + g.label(p.v) + ") is an edge of the graph");
    }
    // A non-edge with a common neighbour is exactly a distance-two pair.
    if (family(method) == MethodFamily::kLocal && common_neighbors(g, p.u, p.v) == 0.0) {
      throw Error(ErrorKind::kContractViolation,
                  std::string(to_string(method)) + " is local and only applies to two-hop pairs; (" +
                      g.label(p.u) + ", " + g.label(p.v) + ") is farther apart");
    }
  }
  if (pairs.empty()) return sheet;

  if (!options.use_cache) {
    parallel_for(pairs.size(), options.jobs,
                 [&](std::size_t i) { sheet.scores[i] = score_single(g, method, pairs[i].u, pairs[i].v, params); });
  } else if (method == SimilarityMethod::kKatz) {
    std::vector<NodeId> sources;
    for (const auto& p : pairs) sources.push_back(p.u);
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    std::vector<std::vector<double>> profiles(sources.size());
    parallel_for(sources.size(), options.jobs, [&](std::size_t i) {
      profiles[i] = katz_from(g, sources[i], params.katz_beta, params.katz_length);
    });
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto k = std::lower_bound(sources.begin(), sources.end(), pairs[i].u) - sources.begin();
      sheet.scores[i] = profiles[static_cast<std::size_t>(k)][pairs[i].v];
    }
  } else if (is_hitting_family(method)) {
    if (g.num_nodes() <= params.dense_limit) {
      const HittingTimeTable table(g);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [u, v] = pairs[i];
        sheet.scores[i] = combine_hitting(g, method, u, v, table(u, v), table(v, u));
      }
    } else {
      std::vector<NodeId> targets;
      for (const auto& p : pairs) {
        targets.push_back(p.v);
        if (method == SimilarityMethod::kCT || method == SimilarityMethod::kNormCT) targets.push_back(p.u);
      }
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      std::vector<std::vector<double>> solved(targets.size());
      parallel_for(targets.size(), options.jobs,
                   [&](std::size_t i) { solved[i] = hitting_time(g, targets[i], params); });
      auto h = [&](NodeId from, NodeId to) {
        const auto k = std::lower_bound(targets.begin(), targets.end(), to) - targets.begin();
        return solved[static_cast<std::size_t>(k)][from];
      };
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [u, v] = pairs[i];
        const bool both = method == SimilarityMethod::kCT || method == SimilarityMethod::kNormCT;
        sheet.scores[i] = combine_hitting(g, method, u, v, h(u, v), both ? h(v, u) : 0.0);
      }
    }
  } else {
    parallel_for(pairs.size(), options.jobs,
                 [&](std::size_t i) { sheet.scores[i] = score_single(g, method, pairs[i].u, pairs[i].v, params); });
  }

  for (double s : sheet.scores) {
    if (!std::isfinite(s)) throw Error(ErrorKind::kNumerical, sheet.method + " produced a non-finite score");
  }
  return sheet;
}

void write_score_sheet(const std::filesystem::path& path, const Graph& g, const ScoreSheet& sheet) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << "u,v,score\n";
  for (std::size_t i = 0; i < sheet.pairs.size(); ++i) {
    out << g.label(sheet.pairs[i].u) << ',' << g.label(sheet.pairs[i].v) << ','
        << format_double(sheet.scores[i]) << '\n';
  }
}

ScoreSheet read_score_sheet(const std::filesystem::path& path, const Graph& g, std::string method) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  ScoreSheet sheet{std::move(method), {}, {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.rfind(',');
    if (c1 == std::string::npos || c1 == c2) throw ParseError(line_no, "expected u,v,score");
    auto u = g.find(line.substr(0, c1));
    auto v = g.find(line.substr(c1 + 1, c2 - c1 - 1));
    if (!u || !v) throw ParseError(line_no, "unknown node label");
    sheet.pairs.emplace_back(*u, *v);
    sheet.scores.push_back(std::stod(line.substr(c2 + 1)));
  }
  return sheet;
}

}  // namespace lpeval
