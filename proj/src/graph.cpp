#include "lpeval/graph.hpp"

#include <algorithm>
#include <numeric>

#include "lpeval/error.hpp"

namespace lpeval {
namespace {

// Per-thread BFS workspace. Stamps avoid clearing O(n) state per query.
struct BfsScratch {
  std::vector<std::uint32_t> stamp;
  std::vector<unsigned> depth;
  std::vector<NodeId> queue;
  std::uint32_t epoch = 0;

  void reset(std::size_t n) {
    if (stamp.size() != n) {
      stamp.assign(n, 0);
      depth.assign(n, 0);
      epoch = 0;
    }
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
    queue.clear();
  }
  bool seen(NodeId v) const { return stamp[v] == epoch; }
  void visit(NodeId v, unsigned d) {
    stamp[v] = epoch;
    depth[v] = d;
    queue.push_back(v);
  }
};

BfsScratch& scratch() {
  thread_local BfsScratch s;
  return s;
}

NodeId find_root(std::vector<NodeId>& parent, NodeId x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Graph Graph::from_label_pairs(std::span<const LabelPair> pairs) {
  std::vector<std::string> all_labels;
  all_labels.reserve(pairs.size() * 2);
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    all_labels.push_back(a);
    all_labels.push_back(b);
  }
  if (all_labels.empty()) {
    throw Error(ErrorKind::kEmptyInput, "no edges after dropping self-loops");
  }
  std::sort(all_labels.begin(), all_labels.end());
  all_labels.erase(std::unique(all_labels.begin(), all_labels.end()), all_labels.end());

  auto id_of = [&](const std::string& s) {
    return static_cast<NodeId>(std::lower_bound(all_labels.begin(), all_labels.end(), s) -
                               all_labels.begin());
  };

  std::vector<NodePair> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    edges.emplace_back(id_of(a), id_of(b));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  // Components by union-find; the smallest id in a component is its
  // lexicographically smallest label.
  const std::size_t n_all = all_labels.size();
  std::vector<NodeId> parent(n_all);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  for (const auto& e : edges) {
    NodeId ra = find_root(parent, e.u);
    NodeId rb = find_root(parent, e.v);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::size_t> size(n_all, 0);
  for (NodeId x = 0; x < n_all; ++x) ++size[find_root(parent, x)];
  NodeId best = 0;
  for (NodeId x = 0; x < n_all; ++x) {
    // Roots are component minima, so scanning upward keeps the earliest on ties.
    if (parent[x] == x && size[x] > size[best]) best = x;
  }

  std::vector<NodeId> remap(n_all, static_cast<NodeId>(-1));
  Graph g;
  for (NodeId x = 0; x < n_all; ++x) {
    if (find_root(parent, x) == best) {
      remap[x] = static_cast<NodeId>(g.labels_.size());
      g.labels_.push_back(std::move(all_labels[x]));
    }
  }
  const std::size_t n = g.labels_.size();
  std::vector<std::size_t> deg(n, 0);
  std::vector<NodePair> kept;
  kept.reserve(edges.size());
  for (const auto& e : edges) {
    if (remap[e.u] == static_cast<NodeId>(-1)) continue;
    kept.emplace_back(remap[e.u], remap[e.v]);
    ++deg[kept.back().u];
    ++deg[kept.back().v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : kept) {
    g.targets_[cursor[e.u]++] = e.v;
    g.targets_[cursor[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }
  g.index_.reserve(n);
  for (NodeId i = 0; i < n; ++i) g.index_.emplace(g.labels_[i], i);
  return g;
}

void Graph::check(NodeId u) const {
  if (u >= labels_.size()) {
    throw Error(ErrorKind::kOutOfRange,
                "node id " + std::to_string(u) + " >= " + std::to_string(labels_.size()));
  }
}

std::span<const NodeId> Graph::neighbors(NodeId u) const {
  check(u);
  return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

std::size_t Graph::degree(NodeId u) const {
  check(u);
  return offsets_[u + 1] - offsets_[u];
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check(v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<unsigned> Graph::distance(NodeId u, NodeId v, unsigned cap) const {
  check(u);
  check(v);
  if (u == v) return 0u;
  auto& s = scratch();
  s.reset(num_nodes());
  s.visit(u, 0);
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const NodeId x = s.queue[head];
    const unsigned d = s.depth[x];
    if (d >= cap) break;
    for (NodeId y : neighbors(x)) {
      if (s.seen(y)) continue;
      if (y == v) return d + 1;
      s.visit(y, d + 1);
    }
  }
  return std::nullopt;
}

std::vector<NodeId> Graph::nodes_at_distance(NodeId u, unsigned d) const {
  check(u);
  if (d == 0) throw Error(ErrorKind::kInvalidArgument, "distance must be >= 1");
  auto& s = scratch();
  s.reset(num_nodes());
  s.visit(u, 0);
  std::vector<NodeId> out;
  for (std::size_t head = 0; head < s.queue.size(); ++head) {
    const NodeId x = s.queue[head];
    const unsigned dx = s.depth[x];
    if (dx == d) {
      out.push_back(x);
      continue;
    }
    for (NodeId y : neighbors(x)) {
      if (!s.seen(y)) s.visit(y, dx + 1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double Graph::stationary_probability(NodeId u) const {
  return static_cast<double>(degree(u)) / static_cast<double>(targets_.size());
}

const std::string& Graph::label(NodeId u) const {
  check(u);
  return labels_[u];
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodePair> Graph::edges() const {
  std::vector<NodePair> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<LabelPair> Graph::edge_labels() const {
  std::vector<LabelPair> out;
  out.reserve(num_edges());
  for (const auto& e : edges()) out.emplace_back(labels_[e.u], labels_[e.v]);
  return out;
}

}  // namespace lpeval
