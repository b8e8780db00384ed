#include "lpeval/walks.hpp"

#include <algorithm>
#include <numeric>

#include "lpeval/error.hpp"
#include "lpeval/parallel.hpp"
#include "lpeval/seeds.hpp"

namespace lpeval {
namespace {

NodeId biased_step(const Graph& g, NodeId prev, NodeId cur, double p, double q, Rng& rng,
                   std::vector<double>& weights) {
  auto nb = g.neighbors(cur);
  weights.resize(nb.size());
  double total = 0.0;
  for (std::size_t i = 0; i < nb.size(); ++i) {
    double w;
    if (nb[i] == prev) {
      w = 1.0 / p;
    } else if (g.has_edge(prev, nb[i])) {
      w = 1.0;
    } else {
      w = 1.0 / q;
    }
    total += w;
    weights[i] = total;
  }
  const double r = uniform01(rng) * total;
  const auto it = std::upper_bound(weights.begin(), weights.end(), r);
  return nb[std::min<std::size_t>(static_cast<std::size_t>(it - weights.begin()), nb.size() - 1)];
}

}  // namespace

void WalkConfig::validate() const {
  if (walks_per_node < 1) throw Error(ErrorKind::kInvalidArgument, "walks_per_node must be >= 1");
  if (walk_length < 2) throw Error(ErrorKind::kInvalidArgument, "walk_length must be >= 2");
  if (!(p > 0.0) || !(q > 0.0)) throw Error(ErrorKind::kInvalidArgument, "p and q must be positive");
}

WalkCorpus generate_walks(const Graph& g, const WalkConfig& config, std::size_t jobs) {
  config.validate();
  const std::size_t n = g.num_nodes();
  WalkCorpus corpus;
  corpus.walk_length = config.walk_length;
  corpus.tokens.resize(config.walks_per_node * n * config.walk_length);

  std::vector<NodeId> order(n);
  std::vector<NodeId> starts;
  starts.reserve(config.walks_per_node * n);
  Rng shuffle_rng(mix_seed(config.seed, 0x5eed));
  for (std::size_t pass = 0; pass < config.walks_per_node; ++pass) {
    std::iota(order.begin(), order.end(), NodeId{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[uniform_index(shuffle_rng, i)]);
    starts.insert(starts.end(), order.begin(), order.end());
  }

  parallel_for(starts.size(), jobs, [&](std::size_t w) {
    Rng rng(mix_seed(config.seed, w + 1));
    std::vector<double> weights;
    NodeId* out = corpus.tokens.data() + w * config.walk_length;
    out[0] = starts[w];
    for (std::size_t step = 1; step < config.walk_length; ++step) {
      const NodeId cur = out[step - 1];
      auto nb = g.neighbors(cur);
      if (config.biased && step >= 2) {
        out[step] = biased_step(g, out[step - 2], cur, config.p, config.q, rng, weights);
      } else {
        out[step] = nb[uniform_index(rng, nb.size())];
      }
    }
  });
  return corpus;
}

}  // namespace lpeval
