#include "lpeval/split.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "lpeval/error.hpp"
#include "lpeval/seeds.hpp"

namespace lpeval {
namespace {

using Json = nlohmann::ordered_json;

// Guards ceil/floor of fraction * count against representation error
// (0.1 * 30 must be 3, not 3.0000000000000004).
std::size_t scaled_count(double frac, std::size_t n, bool round_up) {
  const double x = frac * static_cast<double>(n);
  const double r = std::round(x);
  if (std::abs(x - r) < 1e-9 * std::max(1.0, x)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(round_up ? std::ceil(x) : std::floor(x));
}

// Unique canonical (src < dst) label pairs in first-occurrence order.
std::vector<LabelPair> dedupe_pairs(std::span<const InteractionRecord> records) {
  std::set<LabelPair> seen;
  std::vector<LabelPair> out;
  for (const auto& r : records) {
    if (r.src == r.dst) continue;
    LabelPair p = r.src < r.dst ? LabelPair{r.src, r.dst} : LabelPair{r.dst, r.src};
    if (seen.insert(p).second) out.push_back(std::move(p));
  }
  return out;
}

std::vector<NodePair> filter_candidates(const Graph& g, std::span<const LabelPair> candidates) {
  std::vector<NodePair> out;
  for (const auto& [a, b] : candidates) {
    auto u = g.find(a);
    auto v = g.find(b);
    if (!u || !v) continue;
    if (g.has_edge(*u, *v)) continue;
    out.emplace_back(*u, *v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Json pairs_to_json(const Graph& g, std::span<const NodePair> pairs) {
  Json arr = Json::array();
  for (const auto& p : pairs) arr.push_back(Json::array({g.label(p.u), g.label(p.v)}));
  return arr;
}

std::vector<NodePair> pairs_from_json(const Graph& g, const Json& arr) {
  std::vector<NodePair> out;
  out.reserve(arr.size());
  for (const auto& item : arr) {
    auto u = g.find(item.at(0).get<std::string>());
    auto v = g.find(item.at(1).get<std::string>());
    if (!u || !v) throw Error(ErrorKind::kParse, "split pair references a node outside the graph");
    out.emplace_back(*u, *v);
  }
  return out;
}

// Nodes at distance d, memoised per source within one sampling call.
class DistanceShellCache {
 public:
  DistanceShellCache(const Graph& g, unsigned d) : g_(g), d_(d) {}

  const std::vector<NodeId>& shell(NodeId u) {
    auto it = cache_.find(u);
    if (it != cache_.end()) return it->second;
    auto nodes = g_.nodes_at_distance(u, d_);
    if (stored_ + nodes.size() > kBudget) {
      cache_.clear();
      stored_ = 0;
    }
    stored_ += nodes.size();
    return cache_.emplace(u, std::move(nodes)).first->second;
  }

 private:
  static constexpr std::size_t kBudget = 1u << 25;
  const Graph& g_;
  unsigned d_;
  std::unordered_map<NodeId, std::vector<NodeId>> cache_;
  std::size_t stored_ = 0;
};

std::vector<NodePair> sample_hop(const Graph& g, unsigned d, std::size_t target,
                                 const std::vector<NodePair>& positives, const NegativeOptions& opt) {
  std::vector<NodePair> out;
  if (target == 0) return out;
  Rng rng(mix_seed(opt.seed, d));
  std::unordered_set<NodePair, NodePairHash> blocked(positives.begin(), positives.end());
  DistanceShellCache shells(g, d);
  const std::size_t n = g.num_nodes();

  // Cumulative shell sizes for uniform-over-pairs sampling.
  std::vector<std::uint64_t> cumulative;
  if (opt.strategy == NegativeStrategy::kUniformPair) {
    cumulative.resize(n);
    std::uint64_t acc = 0;
    for (NodeId u = 0; u < n; ++u) {
      acc += g.nodes_at_distance(u, d).size();
      cumulative[u] = acc;
    }
    if (acc == 0) {
      throw Error(ErrorKind::kExhausted, "no node pairs at distance " + std::to_string(d) + " (" +
                                             std::string(hop_name(d)) + ")");
    }
  }

  const std::size_t budget = opt.attempt_factor * target;
  for (std::size_t attempt = 0; attempt < budget && out.size() < target; ++attempt) {
    NodeId u;
    if (opt.strategy == NegativeStrategy::kUniformPair) {
      const std::uint64_t r = uniform_index(rng, cumulative.back());
      u = static_cast<NodeId>(std::upper_bound(cumulative.begin(), cumulative.end(), r) -
                              cumulative.begin());
    } else {
      u = static_cast<NodeId>(uniform_index(rng, n));
    }
    const auto& shell = shells.shell(u);
    if (shell.empty()) continue;
    const NodePair p(u, shell[uniform_index(rng, shell.size())]);
    if (!blocked.insert(p).second) continue;
    out.push_back(p);
  }
  if (out.size() < target) {
    throw Error(ErrorKind::kExhausted, "negative sampling exhausted for " + std::string(hop_name(d)) +
                                           ": found " + std::to_string(out.size()) + " of " +
                                           std::to_string(target) + " distinct pairs");
  }
  return out;
}

}  // namespace

std::string_view to_string(PredictionType t) {
  return t == PredictionType::kFuture ? "future" : "missing";
}

std::string_view to_string(Skew s) { return s == Skew::kBalanced ? "balanced" : "imbalanced"; }

PredictionType parse_prediction_type(std::string_view s) {
  if (s == "future") return PredictionType::kFuture;
  if (s == "missing") return PredictionType::kMissing;
  throw Error(ErrorKind::kInvalidArgument, "unknown prediction type '" + std::string(s) + "'");
}

Skew parse_skew(std::string_view s) {
  if (s == "balanced") return Skew::kBalanced;
  if (s == "imbalanced") return Skew::kImbalanced;
  throw Error(ErrorKind::kInvalidArgument, "unknown skew '" + std::string(s) + "'");
}

std::string_view hop_name(unsigned hop) {
  switch (hop) {
    case 2: return "two-hop";
    case 3: return "three-hop";
    default: return "beyond-three-hop";
  }
}

const std::vector<NodePair>& HopBuckets::at(unsigned hop) const {
  if (hop == 2) return hop2;
  if (hop == 3) return hop3;
  throw Error(ErrorKind::kInvalidArgument, "hop class must be 2 or 3");
}

std::vector<NodePair>& HopBuckets::at(unsigned hop) {
  return const_cast<std::vector<NodePair>&>(static_cast<const HopBuckets&>(*this).at(hop));
}

SplitGraph future_split(const InteractionLog& log, double train_frac) {
  if (!log.temporal) throw Error(ErrorKind::kInvalidArgument, "future split requires a temporal log");
  if (!(train_frac > 0.0 && train_frac < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "train fraction must lie in (0, 1)");
  }
  InteractionLog canon = canonicalize_undirected(log);
  for (const auto& r : canon.records) {
    if (!r.timestamp) throw Error(ErrorKind::kInvalidArgument, "temporal log record without timestamp");
  }
  std::stable_sort(canon.records.begin(), canon.records.end(),
                   [](const auto& a, const auto& b) { return *a.timestamp < *b.timestamp; });

  const std::size_t total = canon.records.size();
  const std::size_t n_train = scaled_count(train_frac, total, /*round_up=*/true);
  if (n_train == 0) throw Error(ErrorKind::kEmptyInput, "training portion is empty");
  if (n_train >= total) throw Error(ErrorKind::kEmptyInput, "test portion is empty");

  std::span<const InteractionRecord> records(canon.records);
  auto train_pairs = dedupe_pairs(records.first(n_train));
  auto test_pairs = dedupe_pairs(records.subspan(n_train));

  SplitGraph out{Graph::from_label_pairs(train_pairs), {}};
  out.positives = filter_candidates(out.graph, test_pairs);
  if (out.positives.empty()) {
    throw Error(ErrorKind::kEmptyPositives, "no test-period pair has both endpoints in the graph");
  }
  return out;
}

SplitGraph missing_split(const InteractionLog& log, double removal_frac, std::uint64_t seed) {
  auto pairs = dedupe_pairs(log.records);
  return missing_split(pairs, removal_frac, seed);
}

SplitGraph missing_split(std::span<const LabelPair> input, double removal_frac, std::uint64_t seed) {
  if (!(removal_frac >= 0.0 && removal_frac < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "removal fraction must lie in [0, 1)");
  }
  std::vector<LabelPair> pairs;
  pairs.reserve(input.size());
  for (const auto& [a, b] : input) {
    if (a == b) continue;
    pairs.push_back(a < b ? LabelPair{a, b} : LabelPair{b, a});
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  if (pairs.empty()) throw Error(ErrorKind::kEmptyInput, "no links to split");

  const std::size_t n_remove = scaled_count(removal_frac, pairs.size(), /*round_up=*/false);
  if (n_remove >= pairs.size()) throw Error(ErrorKind::kEmptyInput, "removal empties the graph");

  // Partial Fisher-Yates: the first n_remove slots become the removed set.
  Rng rng(seed);
  for (std::size_t i = 0; i < n_remove; ++i) {
    const std::size_t j = i + uniform_index(rng, pairs.size() - i);
    std::swap(pairs[i], pairs[j]);
  }
  std::span<const LabelPair> all(pairs);
  SplitGraph out{Graph::from_label_pairs(all.subspan(n_remove)), {}};
  out.positives = filter_candidates(out.graph, all.first(n_remove));
  if (out.positives.empty()) throw Error(ErrorKind::kEmptyPositives, "no removed link survived filtering");
  return out;
}

HopBuckets bucket_positives(const Graph& g, std::span<const NodePair> pairs) {
  HopBuckets b;
  for (const auto& p : pairs) {
    if (p.u == p.v || g.has_edge(p.u, p.v)) {
      throw Error(ErrorKind::kContractViolation,
                  "pair (" + g.label(p.u) + ", " + g.label(p.v) + ") is an edge of the graph");
    }
    const auto d = g.distance(p.u, p.v, 4);
    if (d == 2u) {
      b.hop2.push_back(p);
    } else if (d == 3u) {
      b.hop3.push_back(p);
    } else {
      ++b.discarded;
    }
  }
  return b;
}

HopBuckets sample_negatives(const Graph& g, const HopBuckets& positives, const NegativeOptions& options) {
  if (options.ratio == 0) throw Error(ErrorKind::kInvalidArgument, "negative ratio must be positive");
  HopBuckets out;
  for (unsigned d : kHopClasses) {
    out.at(d) = sample_hop(g, d, options.ratio * positives.at(d).size(), positives.at(d), options);
  }
  return out;
}

EvalSplit make_eval_split(const InteractionLog& log, PredictionType type, std::uint64_t seed,
                          const SplitOptions& options) {
  SplitGraph base = type == PredictionType::kFuture
                        ? future_split(log, options.train_frac)
                        : missing_split(log, options.removal_frac, derive_seed(seed, "missing-removal"));
  EvalSplit split;
  split.prediction_type = type;
  split.seed = seed;
  split.skew_ratio = options.negative_ratio;
  split.positives = bucket_positives(base.graph, base.positives);
  split.negatives = sample_negatives(
      base.graph, split.positives,
      {options.negative_ratio, derive_seed(seed, "negatives"), options.strategy, 1000});
  split.graph = std::move(base.graph);
  return split;
}

std::size_t TestView::positives() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
}

TestView test_view(const EvalSplit& split, unsigned hop, Skew skew, std::uint64_t seed) {
  const auto& pos = split.positives.at(hop);
  const auto& pool = split.negatives.at(hop);
  if (pos.empty()) {
    throw Error(ErrorKind::kEmptyCell, "no positives in " + std::string(hop_name(hop)));
  }
  TestView view;
  view.pairs.assign(pos.begin(), pos.end());
  view.labels.assign(pos.size(), 1);
  if (skew == Skew::kImbalanced) {
    view.pairs.insert(view.pairs.end(), pool.begin(), pool.end());
    view.labels.resize(view.pairs.size(), 0);
    return view;
  }
  if (pool.size() < pos.size()) {
    throw Error(ErrorKind::kContractViolation, "negative pool smaller than positive set");
  }
  std::vector<std::size_t> idx(pool.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(mix_seed(seed, hop));
  for (std::size_t i = 0; i < pos.size(); ++i) {
    std::swap(idx[i], idx[i + uniform_index(rng, idx.size() - i)]);
  }
  idx.resize(pos.size());
  std::sort(idx.begin(), idx.end());
  for (std::size_t i : idx) view.pairs.push_back(pool[i]);
  view.labels.resize(view.pairs.size(), 0);
  return view;
}

std::string split_to_json(const EvalSplit& split) {
  Json j;
  j["prediction_type"] = std::string(to_string(split.prediction_type));
  j["seed"] = split.seed;
  j["skew_ratio"] = split.skew_ratio;
  j["graph_edges"] = pairs_to_json(split.graph, split.graph.edges());
  j["positives"] = {{"hop2", pairs_to_json(split.graph, split.positives.hop2)},
                    {"hop3", pairs_to_json(split.graph, split.positives.hop3)}};
  j["positives_discarded"] = split.positives.discarded;
  j["negatives"] = {{"hop2", pairs_to_json(split.graph, split.negatives.hop2)},
                    {"hop3", pairs_to_json(split.graph, split.negatives.hop3)}};
  return j.dump() + "\n";
}

EvalSplit split_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("split file: ") + e.what());
  }
  EvalSplit s;
  s.prediction_type = parse_prediction_type(j.at("prediction_type").get<std::string>());
  s.seed = j.at("seed").get<std::uint64_t>();
  s.skew_ratio = j.value("skew_ratio", std::size_t{10});
  std::vector<LabelPair> edges;
  for (const auto& e : j.at("graph_edges")) {
    edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  s.graph = Graph::from_label_pairs(edges);
  s.positives.hop2 = pairs_from_json(s.graph, j.at("positives").at("hop2"));
  s.positives.hop3 = pairs_from_json(s.graph, j.at("positives").at("hop3"));
  s.positives.discarded = j.value("positives_discarded", std::size_t{0});
  s.negatives.hop2 = pairs_from_json(s.graph, j.at("negatives").at("hop2"));
  s.negatives.hop3 = pairs_from_json(s.graph, j.at("negatives").at("hop3"));
  return s;
}

void write_split(const std::filesystem::path& path, const EvalSplit& split) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << split_to_json(split);
}

EvalSplit read_split(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return split_from_json(ss.str());
}

}  // namespace lpeval
