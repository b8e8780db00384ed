#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "lpeval/compare.hpp"
#include "lpeval/config.hpp"
#include "lpeval/error.hpp"
#include "lpeval/metrics.hpp"
#include "lpeval/pipeline.hpp"
#include "lpeval/report.hpp"
#include "lpeval/similarity.hpp"
#include "test_support.hpp"

namespace lpeval {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Workspace {
 public:
  explicit Workspace(const std::string& name)
      : dir_(fs::temp_directory_path() / ("lpeval_harness_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
};

constexpr const char* kSmallRoster = R"(["CN", "RA", "PA", "Katz", "CT", "DW_L1_LR"])";

std::string config_text(const std::string& output, bool temporal = true, const std::string& extra = "") {
  return std::string(R"({"datasets": [{"name": "toy", "path": "toy.txt", "temporal": )") +
         (temporal ? "true" : "false") + R"(, "directed": true}], "methods": )" + kSmallRoster +
         R"(, "seeds": [3], "output": ")" + output +
         R"(", "hyperparameters": {"walks_per_node": 4, "walk_length": 20, "dimensions": 16, "epochs": 1, "window": 4})" +
         extra + "}";
}

RunConfig make_config(const Workspace& ws, const std::string& output = "out") {
  testing::write_synthetic_log(ws.dir() / "toy.txt", 150, 2400, 5);
  return config_from_json(config_text(output), ws.dir());
}

void expect_config_error(const std::function<void()>& fn) {
  try {
    fn();
    FAIL() << "expected a configuration error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kConfig) << e.what();
  }
}

TEST(Config, ParsesAndValidates) {
  Workspace ws("config");
  const auto cfg = make_config(ws);
  EXPECT_NO_THROW(validate(cfg));
  ASSERT_EQ(cfg.datasets.size(), 1u);
  EXPECT_EQ(cfg.datasets[0].prediction_types.size(), 2u);
  EXPECT_EQ(cfg.methods.size(), 6u);
  EXPECT_EQ(cfg.learning.skipgram.dim, 16u);
  EXPECT_EQ(cfg.output_dir, ws.dir() / "out");
  EXPECT_EQ(config_digest(cfg), config_digest(make_config(ws)));
}

TEST(Config, DefaultRoster) {
  const auto roster = default_roster();
  EXPECT_EQ(roster.size(), 18u);
  for (const auto& m : roster) EXPECT_NO_THROW(resolve_method(m));
  EXPECT_EQ(resolve_method("CN").group, MethodGroup::kLocalSim);
  EXPECT_EQ(resolve_method("Katz").group, MethodGroup::kGlobalSim);
  EXPECT_EQ(resolve_method("N2V_Hada_LR").group, MethodGroup::kLearning);
}

TEST(Config, RejectsInvalidInput) {
  Workspace ws("config_bad");
  testing::write_synthetic_log(ws.dir() / "toy.txt", 30, 100, 1);
  expect_config_error([&] { config_from_json("{", ws.dir()); });
  expect_config_error([&] { config_from_json(config_text("out", true, R"(, "bogus": 1)"), ws.dir()); });
  expect_config_error([&] {
    config_from_json(R"({"datasets": [], "hyperparameters": {"nope": 1}})", ws.dir());
  });
  // Timestamps absent: only missing prediction may be requested.
  expect_config_error([&] {
    validate(config_from_json(R"({"datasets": [{"name": "d", "path": "toy.txt", "temporal": false,
                                     "prediction_types": ["future"]}]})",
                              ws.dir()));
  });
  expect_config_error([&] {
    validate(config_from_json(R"({"datasets": [{"name": "d", "path": "absent.txt"}]})", ws.dir()));
  });
  expect_config_error([&] {
    validate(config_from_json(R"({"datasets": [{"name": "d", "path": "toy.txt"}], "methods": ["Magic"]})", ws.dir()));
  });
  expect_config_error([&] {
    validate(config_from_json(R"({"datasets": [{"name": "d", "path": "toy.txt"}], "methods": ["GS_Mean_Avg_RF"]})",
                              ws.dir()));
  });
  expect_config_error([&] {
    validate(config_from_json(R"({"datasets": [{"name": "d", "path": "toy.txt"}], "hops": [4]})", ws.dir()));
  });
  auto non_temporal = config_from_json(R"({"datasets": [{"name": "d", "path": "toy.txt"}]})", ws.dir());
  ASSERT_EQ(non_temporal.datasets[0].prediction_types.size(), 1u);
  EXPECT_EQ(non_temporal.datasets[0].prediction_types[0], PredictionType::kMissing);
}

TEST(Seeds, StreamsAreLabelled) {
  EXPECT_NE(split_seed(1, "a", PredictionType::kMissing), split_seed(1, "b", PredictionType::kMissing));
  EXPECT_NE(split_seed(1, "a", PredictionType::kMissing), split_seed(2, "a", PredictionType::kMissing));
  EXPECT_NE(view_seed(1, "a", PredictionType::kMissing, 2), view_seed(1, "a", PredictionType::kMissing, 3));
  EXPECT_NE(embedding_seed(1, "a", PredictionType::kFuture, EmbeddingKind::kDeepWalk),
            embedding_seed(1, "a", PredictionType::kFuture, EmbeddingKind::kNode2Vec));
  EXPECT_EQ(classifier_seed(1, "a", PredictionType::kFuture, 2, Skew::kBalanced, "DW_L1_LR"),
            classifier_seed(1, "a", PredictionType::kFuture, 2, Skew::kBalanced, "DW_L1_LR"));
}

class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    ws_ = new Workspace("pipeline");
    cfg_ = new RunConfig(make_config(*ws_));
    store_ = new ResultStore(run_pipeline(*cfg_));
  }
  static void TearDownTestSuite() {
    delete store_;
    delete cfg_;
    delete ws_;
  }
  static Workspace* ws_;
  static RunConfig* cfg_;
  static ResultStore* store_;
};

Workspace* PipelineTest::ws_ = nullptr;
RunConfig* PipelineTest::cfg_ = nullptr;
ResultStore* PipelineTest::store_ = nullptr;

TEST_F(PipelineTest, CellsAreConserved) {
  // 2 prediction types x (6 methods at hop 2 + 4 at hop 3) x 2 skews.
  EXPECT_EQ(store_->expected_cells, 40u);
  EXPECT_EQ(store_->rows.size() + store_->failures.size(), store_->expected_cells);
  EXPECT_GT(store_->rows.size(), 0u);
  std::set<std::tuple<std::string, unsigned, std::string, std::string>> keys;
  for (const auto& r : store_->rows) {
    EXPECT_TRUE(keys.emplace(std::string(to_string(r.prediction_type)), r.hop, std::string(to_string(r.metrics.skew)),
                             r.method)
                    .second);
  }
  for (const auto& f : store_->failures) {
    EXPECT_TRUE(keys.emplace(f.prediction_type, f.hop, f.skew, f.method).second);
    EXPECT_FALSE(f.message.empty());
  }
}

TEST_F(PipelineTest, LocalMethodsOnlyAtTwoHops) {
  for (const auto& r : store_->rows) {
    if (r.group == MethodGroup::kLocalSim) EXPECT_EQ(r.hop, 2u) << r.method;
  }
  for (const auto& f : store_->failures) {
    if (f.method == "CN" || f.method == "RA") EXPECT_EQ(f.hop, 2u);
  }
}

TEST_F(PipelineTest, MetricsAreWellFormed) {
  for (const auto& r : store_->rows) {
    const auto& m = r.metrics;
    for (double v : {m.auroc, m.aupr, m.pr_at_p, m.pr_at_p_half}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    const std::size_t ratio = m.skew == Skew::kBalanced ? 2 : 11;
    EXPECT_EQ(m.total, ratio * m.positives);
  }
}

TEST_F(PipelineTest, ResultsCsvRoundTrips) {
  const RunLayout layout{cfg_->output_dir};
  const auto back = read_results_csv(layout.results_csv());
  ASSERT_EQ(back.rows.size(), store_->rows.size());
  for (std::size_t i = 0; i < back.rows.size(); ++i) {
    EXPECT_EQ(back.rows[i].method, store_->rows[i].method);
    EXPECT_EQ(back.rows[i].metrics.auroc, store_->rows[i].metrics.auroc);
    EXPECT_EQ(back.rows[i].metrics.pr_at_p_half, store_->rows[i].metrics.pr_at_p_half);
  }
  const auto manifest = slurp(layout.manifest());
  EXPECT_NE(manifest.find("\"expected\""), std::string::npos);
  EXPECT_EQ(manifest.find(cfg_->output_dir.string()), std::string::npos);
}

TEST_F(PipelineTest, MetricsRecomputeFromScoreSheets) {
  const RunLayout layout{cfg_->output_dir};
  std::size_t checked = 0;
  for (const auto& r : store_->rows) {
    const auto split = read_split(layout.split_path(r.seed, r.dataset, r.prediction_type));
    const auto view =
        test_view(split, r.hop, r.metrics.skew, view_seed(r.seed, r.dataset, r.prediction_type, r.hop));
    const auto sheet = read_score_sheet(
        layout.score_path(r.seed, r.metrics.skew, r.dataset, r.prediction_type, r.hop, r.method), split.graph, r.method);
    ASSERT_EQ(sheet.pairs, view.pairs);
    const auto m = evaluate_cell(sheet.scores, view.labels, r.metrics.skew);
    EXPECT_EQ(m.auroc, r.metrics.auroc);
    EXPECT_EQ(m.aupr, r.metrics.aupr);
    EXPECT_EQ(m.pr_at_p, r.metrics.pr_at_p);
    ++checked;
  }
  EXPECT_EQ(checked, store_->rows.size());
}

TEST_F(PipelineTest, SimilarityScoresMatchDirectComputation) {
  const RunLayout layout{cfg_->output_dir};
  for (const auto& r : store_->rows) {
    if (r.method != "Katz" || r.metrics.skew != Skew::kBalanced) continue;
    const auto split = read_split(layout.split_path(r.seed, r.dataset, r.prediction_type));
    const auto sheet = read_score_sheet(
        layout.score_path(r.seed, r.metrics.skew, r.dataset, r.prediction_type, r.hop, r.method), split.graph, r.method);
    for (std::size_t i = 0; i < sheet.pairs.size(); i += 7) {
      EXPECT_NEAR(sheet.scores[i], katz(split.graph, sheet.pairs[i].u, sheet.pairs[i].v, 0.05, 6), 1e-15);
    }
  }
}

TEST_F(PipelineTest, RerunIsByteIdentical) {
  Workspace again("pipeline_again");
  fs::copy_file(ws_->dir() / "toy.txt", again.dir() / "toy.txt");
  const auto cfg = config_from_json(config_text("elsewhere"), again.dir());
  run_pipeline(cfg);
  const RunLayout a{cfg_->output_dir}, b{cfg.output_dir};
  EXPECT_EQ(slurp(a.results_csv()), slurp(b.results_csv()));
  EXPECT_EQ(slurp(a.manifest()), slurp(b.manifest()));
}

TEST_F(PipelineTest, ComparisonAndReportRender) {
  const auto report = compare_all(*store_);
  for (const char* kind : {"future-vs-missing", "future-vs-missing-tau", "two-hop-vs-three-hop", "groups-two-hop",
                           "groups-three-hop", "network-type", "best-per-group", "imbalance-tau",
                           "early-retrieval-tau"}) {
    EXPECT_NE(report.find(kind), nullptr) << kind;
  }
  const auto* fvm = report.find("future-vs-missing");
  ASSERT_NE(fvm, nullptr);
  EXPECT_FALSE(fvm->cells.empty());
  const auto dir = ws_->dir() / "report";
  const auto files = render_reports(report, *store_, RunLayout{cfg_->output_dir}, dir);
  EXPECT_FALSE(files.empty());
  EXPECT_TRUE(fs::exists(dir / "report.md"));
  EXPECT_NE(slurp(dir / "report.md").find("AUROC"), std::string::npos);
}

// Result rows for one seed, network and prediction type.
void add_rows(ResultStore& store, PredictionType t, const std::vector<std::pair<std::string, double>>& methods,
              double shift, std::uint64_t noise_seed) {
  std::mt19937_64 rng(noise_seed);
  std::uniform_real_distribution<double> noise(-0.01, 0.01);
  for (unsigned hop : kHopClasses) {
    for (const auto& [name, base] : methods) {
      const auto spec = resolve_method(name);
      if (!eligible(spec, hop)) continue;
      for (Skew skew : {Skew::kBalanced, Skew::kImbalanced}) {
        ResultRow r;
        r.seed = 1;
        r.dataset = "net";
        r.directed = false;
        r.prediction_type = t;
        r.hop = hop;
        r.method = name;
        r.group = spec.group;
        const double v = std::clamp(base + shift + (noise_seed ? noise(rng) : 0.0), 0.0, 1.0);
        r.metrics = {v, v * 0.8, v * 0.7, v * 0.9, 10, skew == Skew::kBalanced ? 20u : 110u, skew};
        store.rows.push_back(r);
      }
    }
  }
}

const std::vector<std::pair<std::string, double>> kFixtureMethods{
    {"CN", 0.60}, {"AA", 0.62}, {"RA", 0.63}, {"Katz", 0.70}, {"CT", 0.55}, {"PA", 0.58},
    {"DW_L1_LR", 0.75}, {"N2V_L2_LR", 0.77}, {"DW_Hada_LR", 0.72}};

TEST(Compare, IdenticalConditionsHaveNoWinner) {
  ResultStore store;
  add_rows(store, PredictionType::kFuture, kFixtureMethods, 0.0, 0);
  add_rows(store, PredictionType::kMissing, kFixtureMethods, 0.0, 0);
  const auto sections = compare_future_vs_missing(store);
  ASSERT_EQ(sections.size(), 2u);
  ASSERT_FALSE(sections[0].cells.empty());
  for (const auto& c : sections[0].cells) {
    EXPECT_EQ(c.text(), kNoWinner);
    EXPECT_FALSE(c.test.has_value());
  }
  for (const auto& c : sections[1].cells) {
    ASSERT_TRUE(c.value.has_value());
    EXPECT_NEAR(*c.value, 1.0, 1e-12);
  }
}

TEST(Compare, InflatedFutureScoresWin) {
  ResultStore store;
  add_rows(store, PredictionType::kFuture, kFixtureMethods, 0.1, 11);
  add_rows(store, PredictionType::kMissing, kFixtureMethods, 0.0, 12);
  const auto sections = compare_future_vs_missing(store);
  for (const auto& c : sections[0].cells) {
    ASSERT_TRUE(c.test.has_value()) << c.note;
    EXPECT_EQ(c.test->winner, "future");
    EXPECT_LT(c.test->p_value, 0.001);
    EXPECT_NE(c.text().find("& future"), std::string::npos);
  }
}

TEST(Compare, GroupSeparationDetected) {
  ResultStore store;
  add_rows(store, PredictionType::kMissing, kFixtureMethods, 0.0, 13);
  const auto sections = compare_groups(store);
  ASSERT_EQ(sections.size(), 2u);
  bool saw_anova = false;
  for (const auto& c : sections[0].cells) {
    for (const auto& [k, v] : c.keys) {
      if (v == "ANOVA" && c.column == "AUROC") {
        saw_anova = true;
        ASSERT_TRUE(c.test.has_value());
        EXPECT_LT(c.test->p_value, 0.05);
      }
    }
  }
  EXPECT_TRUE(saw_anova);
  const auto two = compare_hops(store);
  EXPECT_FALSE(two.cells.empty());
}

TEST(Compare, MissingConditionIsUntestable) {
  ResultStore store;
  add_rows(store, PredictionType::kMissing, kFixtureMethods, 0.0, 14);
  const auto sections = compare_future_vs_missing(store);
  EXPECT_TRUE(sections[0].cells.empty());
  const auto net = compare_network_type(store);
  for (const auto& s : net) {
    for (const auto& c : s.cells) {
      if (s.kind == "network-type") EXPECT_EQ(c.text(), kNoWinner);
    }
  }
}

int run_cli(const std::string& args) {
  const char* cli = std::getenv("LPEVAL_CLI");
  if (!cli) return -1;
  const std::string cmd = std::string("\"") + cli + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  if (!std::getenv("LPEVAL_CLI")) GTEST_SKIP() << "LPEVAL_CLI not set";
  Workspace ws("cli");
  testing::write_synthetic_log(ws.dir() / "toy.txt", 150, 2400, 5);
  {
    std::ofstream(ws.dir() / "good.json") << config_text("out");
    std::ofstream(ws.dir() / "bad.json") << R"({"datasets": [{"name": "d", "path": "toy.txt", "temporal": false,
                                                 "prediction_types": ["future"]}]})";
  }
  const std::string dir = ws.dir().string();
  EXPECT_EQ(run_cli("run-all"), 1);
  EXPECT_EQ(run_cli("run-all --config " + dir + "/absent.json"), 1);
  EXPECT_EQ(run_cli("split --config " + dir + "/bad.json"), 1);
  EXPECT_EQ(run_cli("ingest --config " + dir + "/good.json"), 0);
  EXPECT_TRUE(fs::exists(ws.dir() / "out" / "ingest.csv"));
  EXPECT_EQ(run_cli("split --config " + dir + "/good.json --seed 3"), 0);
  const int scored = run_cli("score --config " + dir + "/good.json --seed 3");
  EXPECT_TRUE(scored == 0 || scored == 2);
  const int evaluated = run_cli("evaluate --config " + dir + "/good.json --seed 3 --pr-curves");
  EXPECT_TRUE(evaluated == 0 || evaluated == 2);
  EXPECT_EQ(run_cli("compare --config " + dir + "/good.json"), 0);
  EXPECT_EQ(run_cli("report --config " + dir + "/good.json"), 0);
  EXPECT_TRUE(fs::exists(ws.dir() / "out" / "report" / "report.md"));
  EXPECT_FALSE(fs::is_empty(ws.dir() / "out" / "compare"));
  EXPECT_EQ(run_cli("run-all --config " + dir + "/good.json --methods CN,Bogus"), 1);
}

}  // namespace
}  // namespace lpeval
