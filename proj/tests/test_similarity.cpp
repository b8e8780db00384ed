#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "lpeval/error.hpp"
#include "lpeval/similarity.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

namespace lpeval {
namespace {

using testing::floyd_warshall;
using testing::from_edges;
using testing::gnp;

// Brute-force local indices over neighbour sets given as adjacency matrix rows.
struct Dense {
  explicit Dense(const Graph& g) : n(g.num_nodes()), a(n, std::vector<int>(n, 0)) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v : g.neighbors(u)) a[u][v] = 1;
    }
  }
  int deg(std::size_t u) const {
    int d = 0;
    for (int x : a[u]) d += x;
    return d;
  }
  std::size_t n;
  std::vector<std::vector<int>> a;
};

TEST(Local, BruteForceOnRandomGraph) {
  const Graph g = gnp(50, 0.2, 5);
  const Dense d(g);
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v = u + 1; v < g.num_nodes(); ++v) {
      double cn = 0, aa = 0, ra = 0, uni = 0;
      for (std::size_t z = 0; z < d.n; ++z) {
        if (d.a[u][z] && d.a[v][z]) {
          cn += 1;
          aa += 1.0 / std::log(d.deg(z));
          ra += 1.0 / d.deg(z);
        }
        if (d.a[u][z] || d.a[v][z]) uni += 1;
      }
      EXPECT_DOUBLE_EQ(common_neighbors(g, u, v), cn);
      EXPECT_DOUBLE_EQ(jaccard(g, u, v), uni == 0 ? 0.0 : cn / uni);
      EXPECT_NEAR(adamic_adar(g, u, v), aa, 1e-12);
      EXPECT_NEAR(resource_allocation(g, u, v), ra, 1e-12);
      EXPECT_DOUBLE_EQ(preferential_attachment(g, u, v), static_cast<double>(d.deg(u) * d.deg(v)));
    }
  }
}

TEST(Local, HandExample) {
  // a and c share b (degree 2) and d (degree 3).
  const Graph g = from_edges({{"a", "b"}, {"b", "c"}, {"a", "d"}, {"c", "d"}, {"d", "e"}});
  const NodeId a = *g.find("a"), c = *g.find("c");
  EXPECT_EQ(common_neighbors(g, a, c), 2.0);
  EXPECT_EQ(jaccard(g, a, c), 1.0);
  EXPECT_NEAR(adamic_adar(g, a, c), 1 / std::log(2.0) + 1 / std::log(3.0), 1e-12);
  EXPECT_NEAR(resource_allocation(g, a, c), 0.5 + 1.0 / 3.0, 1e-12);
  EXPECT_EQ(preferential_attachment(g, a, c), 4.0);
}

TEST(Local, RejectsSelfPairAndBadIds) {
  const Graph g = from_edges({{"a", "b"}, {"b", "c"}});
  EXPECT_THROW(common_neighbors(g, 0, 0), Error);
  EXPECT_THROW(jaccard(g, 0, 7), Error);
}

TEST(Katz, PathExample) {
  const Graph g = from_edges({{"a", "b"}, {"b", "c"}});
  const NodeId a = *g.find("a"), c = *g.find("c");
  // Walks a->c exist at lengths 2, 4, 6 with counts 1, 2, 4.
  const double expected = 0.05 * 0.05 + 2 * std::pow(0.05, 4) + 4 * std::pow(0.05, 6);
  EXPECT_NEAR(katz(g, a, c, 0.05, 6), expected, 1e-15);
  EXPECT_NEAR(katz(g, a, c, 0.05, 2), 0.0025, 1e-15);
  EXPECT_EQ(katz(g, a, c, 0.05, 1), 0.0);
  EXPECT_THROW(katz(g, a, c, 0.0, 3), Error);
  EXPECT_THROW(katz(g, a, c, 0.05, 0), Error);
}

TEST(Katz, WalkEnumerationOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = gnp(8, 0.4, seed);
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      const auto row = katz_from(g, u, 0.1, 5);
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (u == v) continue;
        const double want = oracle::katz_by_walks(g, u, v, 0.1, 5);
        EXPECT_NEAR(row[v], want, 1e-14 + 1e-12 * want);
        EXPECT_NEAR(katz(g, u, v, 0.1, 5), want, 1e-14 + 1e-12 * want);
      }
    }
  }
}

TEST(HittingTime, SmallGraphs) {
  const Graph k2 = from_edges({{"a", "b"}});
  EXPECT_NEAR(hitting_time(k2, 1)[0], 1.0, 1e-12);
  const Graph k3 = from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
  EXPECT_NEAR(hitting_time(k3, 2)[0], 2.0, 1e-12);
  const Graph path = from_edges({{"a", "b"}, {"b", "c"}});
  const auto h = hitting_time(path, *path.find("c"));
  EXPECT_NEAR(h[*path.find("a")], 4.0, 1e-12);
  EXPECT_NEAR(h[*path.find("b")], 3.0, 1e-12);
  EXPECT_EQ(h[*path.find("c")], 0.0);
}

TEST(HittingTime, DenseIterativeAndTableAgreeWithOracle) {
  const Graph g = gnp(40, 0.12, 8);
  const HittingTimeTable table(g);
  SimilarityParams iterative;
  iterative.dense_limit = 0;
  iterative.solve_tolerance = 1e-12;
  for (NodeId t = 0; t < g.num_nodes(); t += 7) {
    const auto want = oracle::hitting_times_to(g, t);
    const auto dense = hitting_time(g, t);
    const auto gs = hitting_time(g, t, iterative);
    for (NodeId x = 0; x < g.num_nodes(); ++x) {
      const double tol = 1e-7 * std::max(1.0, want[x]);
      EXPECT_NEAR(dense[x], want[x], tol);
      EXPECT_NEAR(gs[x], want[x], tol);
      EXPECT_NEAR(table(x, t), want[x], tol);
    }
  }
}

TEST(HittingTime, CommuteTimeIsTwoMTimesResistance) {
  // Cycle C_n: effective resistance between nodes k apart is k(n-k)/n.
  std::vector<std::pair<std::string, std::string>> edges;
  const int n = 9;
  for (int i = 0; i < n; ++i) edges.emplace_back(testing::node_label(i), testing::node_label((i + 1) % n));
  const Graph g = from_edges(edges);
  for (int k = 1; k < n; ++k) {
    const double ct = hitting_time(g, k)[0] + hitting_time(g, 0)[k];
    EXPECT_NEAR(ct, 2.0 * n * k * (n - k) / n, 1e-9);
  }
}

TEST(HittingTime, MonteCarloWithinThreeStandardErrors) {
  const Graph g = gnp(25, 0.2, 3);
  const NodeId source = 0, target = static_cast<NodeId>(g.num_nodes() - 1);
  std::mt19937_64 rng(99);
  const auto [mean, se] = oracle::simulated_hitting_time(g, source, target, 50000, rng);
  EXPECT_NEAR(hitting_time(g, target)[source], mean, 3.0 * se);
}

TEST(Scores, TriangleIdentities) {
  const Graph k3 = from_edges({{"a", "b"}, {"b", "c"}, {"a", "c"}});
  EXPECT_NEAR(score_ht(k3, 0, 1), -2.0, 1e-12);
  EXPECT_NEAR(score_norm_ht(k3, 0, 1), -2.0 / 3.0, 1e-12);
  EXPECT_NEAR(score_ct(k3, 0, 1), -4.0, 1e-12);
  EXPECT_NEAR(score_norm_ct(k3, 0, 1), -4.0 / 3.0, 1e-12);
}

TEST(Scores, PathCommuteTime) {
  const Graph path = from_edges({{"a", "b"}, {"b", "c"}});
  const NodeId a = *path.find("a"), c = *path.find("c");
  EXPECT_NEAR(score_ct(path, a, c), -8.0, 1e-12);
  EXPECT_NEAR(score_ht(path, a, c), -4.0, 1e-12);
  // h(c -> a) also 4 by symmetry of the path.
  EXPECT_NEAR(score_ht(path, c, a), -4.0, 1e-12);
}

std::vector<NodePair> non_edges_within(const Graph& g, unsigned max_hop) {
  const auto d = floyd_warshall(g);
  std::vector<NodePair> out;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v = u + 1; v < g.num_nodes(); ++v) {
      if (d[u][v] >= 2 && d[u][v] <= max_hop) out.emplace_back(u, v);
    }
  }
  return out;
}

TEST(ScorePairs, CacheAgreesWithDirectComputation) {
  const Graph g = gnp(60, 0.08, 14);
  const auto two = non_edges_within(g, 2);
  const auto three = non_edges_within(g, 3);
  for (auto m : kSimilarityMethods) {
    const auto& pairs = family(m) == MethodFamily::kLocal ? two : three;
    ScoreOptions cached{2, true}, plain{1, false};
    const auto a = score_pairs(g, m, pairs, {}, cached);
    const auto b = score_pairs(g, m, pairs, {}, plain);
    ASSERT_EQ(a.scores.size(), pairs.size());
    EXPECT_EQ(a.pairs, b.pairs);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      EXPECT_NEAR(a.scores[i], b.scores[i], 1e-7 * std::max(1.0, std::abs(b.scores[i]))) << to_string(m);
    }
  }
}

TEST(ScorePairs, IterativeSolverMatchesDense) {
  const Graph g = gnp(45, 0.1, 15);
  const auto pairs = non_edges_within(g, 3);
  SimilarityParams gs;
  gs.dense_limit = 0;
  gs.solve_tolerance = 1e-12;
  for (auto m : {SimilarityMethod::kHT, SimilarityMethod::kNormHT, SimilarityMethod::kCT, SimilarityMethod::kNormCT}) {
    const auto a = score_pairs(g, m, pairs);
    const auto b = score_pairs(g, m, pairs, gs);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      EXPECT_NEAR(a.scores[i], b.scores[i], 1e-7 * std::max(1.0, std::abs(a.scores[i])));
    }
  }
}

TEST(ScorePairs, ContractViolations) {
  const Graph g = from_edges({{"a", "b"}, {"b", "c"}, {"c", "d"}});
  const NodeId a = *g.find("a"), b = *g.find("b"), d = *g.find("d");
  const std::vector<NodePair> hop3{{a, d}};
  try {
    score_pairs(g, SimilarityMethod::kCN, hop3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kContractViolation);
  }
  EXPECT_NO_THROW(score_pairs(g, SimilarityMethod::kKatz, hop3));
  const std::vector<NodePair> edge{{a, b}};
  EXPECT_THROW(score_pairs(g, SimilarityMethod::kPA, edge), Error);
  EXPECT_TRUE(score_pairs(g, SimilarityMethod::kCT, std::vector<NodePair>{}).scores.empty());
}

TEST(ScorePairs, SymmetricMethodsIgnoreOrientation) {
  const Graph g = gnp(30, 0.15, 16);
  const auto pairs = non_edges_within(g, 2);
  for (auto m : kSimilarityMethods) {
    if (m == SimilarityMethod::kHT || m == SimilarityMethod::kNormHT) continue;
    for (const auto& p : pairs) {
      SimilarityParams params;
      double fwd = 0, bwd = 0;
      switch (m) {
        case SimilarityMethod::kCN: fwd = common_neighbors(g, p.u, p.v), bwd = common_neighbors(g, p.v, p.u); break;
        case SimilarityMethod::kJC: fwd = jaccard(g, p.u, p.v), bwd = jaccard(g, p.v, p.u); break;
        case SimilarityMethod::kAA: fwd = adamic_adar(g, p.u, p.v), bwd = adamic_adar(g, p.v, p.u); break;
        case SimilarityMethod::kRA: fwd = resource_allocation(g, p.u, p.v), bwd = resource_allocation(g, p.v, p.u); break;
        case SimilarityMethod::kPA:
          fwd = preferential_attachment(g, p.u, p.v), bwd = preferential_attachment(g, p.v, p.u);
          break;
        case SimilarityMethod::kKatz: fwd = katz(g, p.u, p.v, 0.05, 6), bwd = katz(g, p.v, p.u, 0.05, 6); break;
        case SimilarityMethod::kCT: fwd = score_ct(g, p.u, p.v), bwd = score_ct(g, p.v, p.u); break;
        case SimilarityMethod::kNormCT: fwd = score_norm_ct(g, p.u, p.v), bwd = score_norm_ct(g, p.v, p.u); break;
        default: break;
      }
      EXPECT_NEAR(fwd, bwd, 1e-9 * std::max(1.0, std::abs(fwd))) << to_string(m);
    }
  }
}

TEST(ScorePairs, SheetRoundTrip) {
  const Graph g = gnp(30, 0.15, 17);
  const auto pairs = non_edges_within(g, 3);
  const auto sheet = score_pairs(g, SimilarityMethod::kNormCT, pairs);
  const auto path = std::filesystem::temp_directory_path() / "lpeval_sheet_test.csv";
  write_score_sheet(path, g, sheet);
  const auto back = read_score_sheet(path, g, sheet.method);
  EXPECT_EQ(back.pairs, sheet.pairs);
  EXPECT_EQ(back.scores, sheet.scores);
  std::filesystem::remove(path);
}

TEST(Names, RoundTrip) {
  for (auto m : kSimilarityMethods) EXPECT_EQ(parse_similarity_method(to_string(m)), m);
  EXPECT_FALSE(parse_similarity_method("nope").has_value());
  EXPECT_EQ(family(SimilarityMethod::kPA), MethodFamily::kGlobal);
  EXPECT_EQ(family(SimilarityMethod::kRA), MethodFamily::kLocal);
}

}  // namespace
}  // namespace lpeval
