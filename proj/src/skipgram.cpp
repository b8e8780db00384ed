#include "lpeval/skipgram.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpeval/error.hpp"
#include "lpeval/seeds.hpp"

namespace lpeval {
namespace {

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(sigmoid(x)) without overflow.
double log_sigmoid(double x) { return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

double dot(const double* a, const double* b, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

class UnigramSampler {
 public:
  UnigramSampler(const WalkCorpus& corpus, std::size_t n) : cumulative_(n) {
    std::vector<double> counts(n, 0.0);
    for (NodeId t : corpus.tokens) counts[t] += 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += std::pow(counts[i], 0.75);
      cumulative_[i] = acc;
    }
  }

  NodeId draw(Rng& rng) const {
    const double r = uniform01(rng) * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    return static_cast<NodeId>(std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                                     cumulative_.size() - 1));
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace

void SkipGramConfig::validate() const {
  if (dim < 2) throw Error(ErrorKind::kInvalidArgument, "embedding dimension must be >= 2");
  if (window < 1) throw Error(ErrorKind::kInvalidArgument, "window must be >= 1");
  if (negatives < 1) throw Error(ErrorKind::kInvalidArgument, "negatives must be >= 1");
  if (!(learning_rate_start > 0.0) || learning_rate_end < 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "learning rates must be positive");
  }
}

double negative_sampling_loss(std::span<const double> center, std::span<const double> context,
                              std::span<const double> negatives) {
  const std::size_t d = center.size();
  if (context.size() != d || negatives.size() % d != 0) {
    throw Error(ErrorKind::kInvalidArgument, "dimension mismatch in negative-sampling loss");
  }
  double loss = -log_sigmoid(dot(center.data(), context.data(), d));
  for (std::size_t k = 0; k < negatives.size() / d; ++k) {
    loss -= log_sigmoid(-dot(center.data(), negatives.data() + k * d, d));
  }
  return loss;
}

NegativeSamplingGradient negative_sampling_gradient(std::span<const double> center,
                                                    std::span<const double> context,
                                                    std::span<const double> negatives) {
  const std::size_t d = center.size();
  if (context.size() != d || negatives.size() % d != 0) {
    throw Error(ErrorKind::kInvalidArgument, "dimension mismatch in negative-sampling gradient");
  }
  NegativeSamplingGradient g{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0),
                             std::vector<double>(negatives.size(), 0.0)};
  // d/dz [-log s(z)] = s(z) - 1 ; d/dz [-log s(-z)] = s(z)
  const double a = sigmoid(dot(center.data(), context.data(), d)) - 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    g.center[i] += a * context[i];
    g.context[i] = a * center[i];
  }
  for (std::size_t k = 0; k < negatives.size() / d; ++k) {
    const double* nk = negatives.data() + k * d;
    const double b = sigmoid(dot(center.data(), nk, d));
    for (std::size_t i = 0; i < d; ++i) {
      g.center[i] += b * nk[i];
      g.negatives[k * d + i] = b * center[i];
    }
  }
  return g;
}

Embedding train_skipgram(const WalkCorpus& corpus, std::size_t num_nodes, const SkipGramConfig& config,
                         TrainingReport* report) {
  config.validate();
  if (corpus.tokens.empty()) throw Error(ErrorKind::kEmptyInput, "empty walk corpus");
  const std::size_t d = config.dim;
  Rng rng(config.seed);

  Embedding emb{num_nodes, d, std::vector<double>(num_nodes * d)};
  for (double& x : emb.values) x = (uniform01(rng) - 0.5) / static_cast<double>(d);
  std::vector<double> out(num_nodes * d, 0.0);
  if (report) report->epoch_loss.clear();
  if (config.epochs == 0) return emb;

  const UnigramSampler sampler(corpus, num_nodes);
  const std::size_t total_tokens = corpus.tokens.size() * config.epochs;
  std::size_t processed = 0;
  std::vector<double> grad_center(d);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double loss_sum = 0.0;
    std::size_t loss_pairs = 0;
    for (std::size_t w = 0; w < corpus.num_walks(); ++w) {
      const auto walk = corpus.walk(w);
      for (std::size_t pos = 0; pos < walk.size(); ++pos, ++processed) {
        const double progress = static_cast<double>(processed) / static_cast<double>(total_tokens);
        const double lr = config.learning_rate_start +
                          (config.learning_rate_end - config.learning_rate_start) * progress;
        const std::size_t reach =
            config.dynamic_window ? 1 + uniform_index(rng, config.window) : config.window;
        const std::size_t lo = pos >= reach ? pos - reach : 0;
        const std::size_t hi = std::min(walk.size() - 1, pos + reach);
        double* x = emb.values.data() + walk[pos] * d;
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          const NodeId context = walk[c];
          std::fill(grad_center.begin(), grad_center.end(), 0.0);
          double pair_loss = 0.0;
          for (std::size_t k = 0; k <= config.negatives; ++k) {
            NodeId target = context;
            double label = 1.0;
            if (k > 0) {
              target = sampler.draw(rng);
              if (target == context) continue;
              label = 0.0;
            }
            double* y = out.data() + target * d;
            const double z = dot(x, y, d);
            if (!std::isfinite(z)) {
              throw Error(ErrorKind::kNumerical,
                          "non-finite activation at epoch " + std::to_string(epoch) + ", walk " +
                              std::to_string(w) + ", position " + std::to_string(pos) +
                              " (learning rate " + std::to_string(lr) + ")");
            }
            pair_loss -= label > 0.0 ? log_sigmoid(z) : log_sigmoid(-z);
            const double step = (sigmoid(z) - label) * lr;
            for (std::size_t i = 0; i < d; ++i) {
              grad_center[i] += step * y[i];
              y[i] -= step * x[i];
            }
          }
          for (std::size_t i = 0; i < d; ++i) x[i] -= grad_center[i];
          loss_sum += pair_loss;
          ++loss_pairs;
        }
      }
    }
    if (report) report->epoch_loss.push_back(loss_pairs ? loss_sum / static_cast<double>(loss_pairs) : 0.0);
  }
  for (double v : emb.values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kNumerical, "embedding contains non-finite values");
  }
  return emb;
}

void write_embedding(const std::filesystem::path& path, const Graph& g, const Embedding& e,
                     std::uint64_t seed, std::uint64_t digest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, digest);
  out << "# lpeval-embedding n=" << e.num_nodes << " dim=" << e.dim << " seed=" << seed << " digest=" << buf
      << '\n';
  for (NodeId u = 0; u < e.num_nodes; ++u) {
    out << g.label(u);
    for (double v : e.row(u)) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      out << buf;
    }
    out << '\n';
  }
}

std::optional<Embedding> read_embedding(const std::filesystem::path& path, const Graph& g,
                                        std::uint64_t digest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  std::getline(in, header);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, digest);
  if (header.find(std::string("digest=") + buf) == std::string::npos) return std::nullopt;
  std::size_t n = 0, dim = 0;
  if (std::sscanf(header.c_str(), "# lpeval-embedding n=%zu dim=%zu", &n, &dim) != 2) return std::nullopt;
  if (n != g.num_nodes()) return std::nullopt;
  Embedding e{n, dim, std::vector<double>(n * dim)};
  std::string line;
  for (NodeId u = 0; u < n; ++u) {
    if (!std::getline(in, line)) return std::nullopt;
    std::istringstream ss(line);
    std::string label;
    ss >> label;
    if (label != g.label(u)) return std::nullopt;
    for (std::size_t i = 0; i < dim; ++i) {
      std::string tok;
      if (!(ss >> tok)) return std::nullopt;
      e.values[u * dim + i] = std::stod(tok);
    }
  }
  return e;
}

}  // namespace lpeval
