#include "lpeval/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "lpeval/error.hpp"
#include "lpeval/ingest.hpp"
#include "lpeval/seeds.hpp"

namespace lpeval {
namespace {

using Json = nlohmann::ordered_json;

std::string hop_tag(unsigned hop) { return "hop" + std::to_string(hop); }

std::string cell_stem(const std::string& dataset, PredictionType t, unsigned hop, const std::string& method) {
  std::string m = method;
  for (char& c : m) {
    if (c == '/') c = '_';
  }
  return dataset + "_" + std::string(to_string(t)) + "_" + hop_tag(hop) + "_" + m;
}

std::string error_kind(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(to_string(err->kind()));
  return "internal";
}

Json failure_to_json(const CellFailure& f) {
  Json j;
  j["seed"] = f.seed;
  j["dataset"] = f.dataset;
  j["prediction_type"] = f.prediction_type;
  j["hop"] = f.hop;
  j["skew"] = f.skew;
  j["method"] = f.method;
  j["stage"] = f.stage;
  j["kind"] = f.kind;
  j["message"] = f.message;
  return j;
}

CellFailure failure_from_json(const Json& j) {
  CellFailure f;
  f.seed = j.at("seed").get<std::uint64_t>();
  f.dataset = j.at("dataset").get<std::string>();
  f.prediction_type = j.at("prediction_type").get<std::string>();
  f.hop = j.at("hop").get<unsigned>();
  f.skew = j.at("skew").get<std::string>();
  f.method = j.at("method").get<std::string>();
  f.stage = j.at("stage").get<std::string>();
  f.kind = j.at("kind").get<std::string>();
  f.message = j.at("message").get<std::string>();
  return f;
}

std::filesystem::path stage_failures_path(const RunLayout& layout, std::uint64_t seed, const std::string& stage) {
  return layout.run_dir(seed) / (stage + "_failures.json");
}

void write_failures(const std::filesystem::path& path, const std::vector<CellFailure>& failures) {
  std::filesystem::create_directories(path.parent_path());
  Json arr = Json::array();
  for (const auto& f : failures) arr.push_back(failure_to_json(f));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << arr.dump(2) << "\n";
}

std::vector<CellFailure> read_failures(const std::filesystem::path& path) {
  std::vector<CellFailure> out;
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;
  std::ostringstream ss;
  ss << in.rdbuf();
  for (const auto& j : Json::parse(ss.str())) out.push_back(failure_from_json(j));
  return out;
}

// Finds the recorded failure that covers a cell (empty fields are wildcards).
const CellFailure* covering(const std::vector<CellFailure>& failures, const CellFailure& cell) {
  for (const auto& f : failures) {
    if (f.dataset != cell.dataset || f.prediction_type != cell.prediction_type) continue;
    if (f.hop != 0 && f.hop != cell.hop) continue;
    if (!f.skew.empty() && f.skew != cell.skew) continue;
    if (!f.method.empty() && f.method != cell.method) continue;
    return &f;
  }
  return nullptr;
}

std::map<std::string, InteractionLog> load_logs(const RunConfig& cfg, std::map<std::string, std::string>& errors) {
  std::map<std::string, InteractionLog> logs;
  for (const auto& d : cfg.datasets) {
    try {
      logs.emplace(d.name, read_edge_list(d.path, d.parse_options()));
    } catch (const std::exception& e) {
      errors[d.name] = e.what();
    }
  }
  return logs;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

// Everything the trained vectors depend on: graph, walk and skip-gram
// settings, embedding kind and seed.
std::uint64_t embedding_digest(const Graph& g, EmbeddingKind kind, const LearningConfig& lc, std::uint64_t seed) {
  std::ostringstream key;
  key << to_string(kind) << '|' << seed << '|' << lc.walks.walks_per_node << '|' << lc.walks.walk_length << '|'
      << fmt_double(lc.node2vec_p) << '|' << fmt_double(lc.node2vec_q) << '|' << lc.skipgram.dim << '|'
      << lc.skipgram.window << '|' << lc.skipgram.negatives << '|' << lc.skipgram.epochs << '|'
      << fmt_double(lc.skipgram.learning_rate_start) << '|' << fmt_double(lc.skipgram.learning_rate_end) << '|'
      << lc.skipgram.dynamic_window << '|' << g.num_nodes() << '|' << g.num_edges();
  std::uint64_t h = fnv1a(key.str());
  for (const auto& [a, b] : g.edge_labels()) {
    h = fnv1a(a, h);
    h = fnv1a("\x1f", h);
    h = fnv1a(b, h);
    h = fnv1a("\x1e", h);
  }
  return h;
}

struct Views {
  std::optional<TestView> balanced;
  std::optional<TestView> imbalanced;
};

}  // namespace

std::filesystem::path RunLayout::run_dir(std::uint64_t seed) const {
  return root / "runs" / ("seed-" + std::to_string(seed));
}

std::filesystem::path RunLayout::split_path(std::uint64_t seed, const std::string& dataset, PredictionType t) const {
  return run_dir(seed) / "splits" / (dataset + "_" + std::string(to_string(t)) + ".json");
}

std::filesystem::path RunLayout::score_path(std::uint64_t seed, Skew skew, const std::string& dataset,
                                            PredictionType t, unsigned hop, const std::string& method) const {
  return run_dir(seed) / "scores" / std::string(to_string(skew)) / (cell_stem(dataset, t, hop, method) + ".csv");
}

std::filesystem::path RunLayout::curve_path(std::uint64_t seed, Skew skew, const std::string& dataset,
                                            PredictionType t, unsigned hop, const std::string& method) const {
  return run_dir(seed) / "curves" / std::string(to_string(skew)) / (cell_stem(dataset, t, hop, method) + ".csv");
}

std::filesystem::path RunLayout::score_failures(std::uint64_t seed) const {
  return stage_failures_path(*this, seed, "score");
}

std::uint64_t split_seed(std::uint64_t master, const std::string& dataset, PredictionType t) {
  return derive_seed(master, "split/" + dataset + "/" + std::string(to_string(t)));
}

std::uint64_t view_seed(std::uint64_t master, const std::string& dataset, PredictionType t, unsigned hop) {
  return derive_seed(master, "view/" + dataset + "/" + std::string(to_string(t)) + "/" + hop_tag(hop));
}

std::uint64_t embedding_seed(std::uint64_t master, const std::string& dataset, PredictionType t, EmbeddingKind k) {
  return derive_seed(master, "embed/" + dataset + "/" + std::string(to_string(t)) + "/" + std::string(to_string(k)));
}

std::uint64_t classifier_seed(std::uint64_t master, const std::string& dataset, PredictionType t, unsigned hop,
                              Skew skew, const std::string& method) {
  return derive_seed(master, "classifier/" + dataset + "/" + std::string(to_string(t)) + "/" + hop_tag(hop) + "/" +
                                 std::string(to_string(skew)) + "/" + method);
}

bool eligible(const MethodSpec& m, unsigned hop) { return m.group != MethodGroup::kLocalSim || hop == 2; }

std::vector<IngestRow> stage_ingest(const RunConfig& cfg) {
  std::vector<IngestRow> rows;
  for (const auto& d : cfg.datasets) {
    const InteractionLog log = read_edge_list(d.path, d.parse_options());
    IngestRow row;
    row.dataset = d.name;
    row.summary = summarize(log);
    std::vector<LabelPair> pairs;
    pairs.reserve(log.records.size());
    for (const auto& r : log.records) pairs.emplace_back(r.src, r.dst);
    const Graph g = Graph::from_label_pairs(pairs);
    row.lcc_nodes = g.num_nodes();
    row.lcc_edges = g.num_edges();
    rows.push_back(std::move(row));
  }
  std::filesystem::create_directories(cfg.output_dir);
  RunLayout layout{cfg.output_dir};
  std::ofstream out(layout.ingest_csv(), std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + layout.ingest_csv().string());
  out << "dataset,records,distinct_labels,distinct_directed_pairs,distinct_undirected_pairs,self_interactions,"
         "lcc_nodes,lcc_edges\n";
  for (const auto& r : rows) {
    out << r.dataset << ',' << r.summary.records << ',' << r.summary.distinct_labels << ','
        << r.summary.distinct_directed_pairs << ',' << r.summary.distinct_undirected_pairs << ','
        << r.summary.self_interactions << ',' << r.lcc_nodes << ',' << r.lcc_edges << '\n';
  }
  return rows;
}

std::vector<CellFailure> stage_split(const RunConfig& cfg) {
  RunLayout layout{cfg.output_dir};
  std::map<std::string, std::string> parse_errors;
  const auto logs = load_logs(cfg, parse_errors);
  std::vector<CellFailure> all;
  for (std::uint64_t seed : cfg.seeds) {
    std::vector<CellFailure> failures;
    std::filesystem::create_directories(layout.run_dir(seed) / "splits");
    for (const auto& d : cfg.datasets) {
      for (PredictionType t : d.prediction_types) {
        CellFailure f;
        f.seed = seed;
        f.dataset = d.name;
        f.prediction_type = std::string(to_string(t));
        f.stage = "split";
        const auto path = layout.split_path(seed, d.name, t);
        std::filesystem::remove(path);
        if (auto it = parse_errors.find(d.name); it != parse_errors.end()) {
          f.stage = "ingest";
          f.kind = "parse";
          f.message = it->second;
          failures.push_back(f);
          continue;
        }
        try {
          const EvalSplit split = make_eval_split(logs.at(d.name), t, split_seed(seed, d.name, t), cfg.split);
          write_split(path, split);
        } catch (const std::exception& e) {
          f.kind = error_kind(e);
          f.message = e.what();
          failures.push_back(f);
        }
      }
    }
    write_failures(stage_failures_path(layout, seed, "split"), failures);
    all.insert(all.end(), failures.begin(), failures.end());
  }
  return all;
}

std::vector<CellFailure> stage_score(const RunConfig& cfg) {
  RunLayout layout{cfg.output_dir};
  const auto roster = cfg.roster();
  std::vector<CellFailure> all;
  for (std::uint64_t seed : cfg.seeds) {
    std::vector<CellFailure> failures;
    std::filesystem::remove_all(layout.run_dir(seed) / "scores");
    std::filesystem::remove_all(layout.run_dir(seed) / "curves");
    for (const auto& d : cfg.datasets) {
      for (PredictionType t : d.prediction_types) {
        const auto split_file = layout.split_path(seed, d.name, t);
        if (!std::filesystem::exists(split_file)) continue;  // split failure already recorded
        auto fail = [&](unsigned hop, std::optional<Skew> skew, const std::string& method, const std::exception& e) {
          CellFailure f;
          f.seed = seed;
          f.dataset = d.name;
          f.prediction_type = std::string(to_string(t));
          f.hop = hop;
          f.skew = skew ? std::string(to_string(*skew)) : "";
          f.method = method;
          f.stage = "score";
          f.kind = error_kind(e);
          f.message = e.what();
          failures.push_back(std::move(f));
        };
        EvalSplit split;
        try {
          split = read_split(split_file);
        } catch (const std::exception& e) {
          fail(0, std::nullopt, "", e);
          continue;
        }
        const Graph& g = split.graph;
        std::map<EmbeddingKind, std::optional<Embedding>> embeddings;
        std::map<EmbeddingKind, std::string> embedding_errors;
        auto embedding_for = [&](EmbeddingKind kind) -> const Embedding& {
          if (auto it = embedding_errors.find(kind); it != embedding_errors.end()) {
            throw Error(ErrorKind::kNumerical, "embedding unavailable: " + it->second);
          }
          auto& slot = embeddings[kind];
          if (!slot) {
            try {
              const std::uint64_t eseed = embedding_seed(seed, d.name, t, kind);
              const std::uint64_t digest = embedding_digest(g, kind, cfg.learning, eseed);
              const auto cache = layout.run_dir(seed) / "embeddings" /
                                 (d.name + "_" + std::string(to_string(t)) + "_" + std::string(to_string(kind)) + ".emb");
              slot = read_embedding(cache, g, digest);
              if (!slot) {
                slot = train_node_embedding(g, kind, cfg.learning, eseed, cfg.jobs);
                std::filesystem::create_directories(cache.parent_path());
                write_embedding(cache, g, *slot, eseed, digest);
              }
            } catch (const std::exception& e) {
              embedding_errors[kind] = e.what();
              throw;
            }
          }
          return *slot;
        };

        for (unsigned hop : cfg.hops) {
          Views views;
          try {
            // The imbalanced view is the superset every skew draws from.
            views.imbalanced = test_view(split, hop, Skew::kImbalanced, view_seed(seed, d.name, t, hop));
            views.balanced = test_view(split, hop, Skew::kBalanced, view_seed(seed, d.name, t, hop));
          } catch (const std::exception& e) {
            fail(hop, std::nullopt, "", e);
            continue;
          }
          for (const auto& m : roster) {
            if (!eligible(m, hop)) continue;
            if (m.similarity) {
              try {
                const ScoreSheet full = score_pairs(g, *m.similarity, views.imbalanced->pairs, cfg.similarity,
                                                    ScoreOptions{cfg.jobs, true});
                std::unordered_map<NodePair, double, NodePairHash> lookup;
                lookup.reserve(full.pairs.size());
                for (std::size_t i = 0; i < full.pairs.size(); ++i) lookup.emplace(full.pairs[i], full.scores[i]);
                for (Skew skew : cfg.skews) {
                  const TestView& view = skew == Skew::kBalanced ? *views.balanced : *views.imbalanced;
                  ScoreSheet sheet{m.name, view.pairs, {}};
                  sheet.scores.reserve(view.pairs.size());
                  for (const auto& p : view.pairs) sheet.scores.push_back(lookup.at(p));
                  const auto path = layout.score_path(seed, skew, d.name, t, hop, m.name);
                  std::filesystem::create_directories(path.parent_path());
                  write_score_sheet(path, g, sheet);
                }
              } catch (const std::exception& e) {
                fail(hop, std::nullopt, m.name, e);
              }
              continue;
            }
            for (Skew skew : cfg.skews) {
              try {
                const TestView& view = skew == Skew::kBalanced ? *views.balanced : *views.imbalanced;
                const Embedding& emb = embedding_for(m.learning->embedding);
                ScoreSheet sheet{m.name, view.pairs, {}};
                sheet.scores = learning_scores(emb, view.pairs, view.labels, m.learning->op, cfg.learning,
                                               classifier_seed(seed, d.name, t, hop, skew, m.name), cfg.jobs);
                const auto path = layout.score_path(seed, skew, d.name, t, hop, m.name);
                std::filesystem::create_directories(path.parent_path());
                write_score_sheet(path, g, sheet);
              } catch (const std::exception& e) {
                fail(hop, skew, m.name, e);
              }
            }
          }
        }
      }
    }
    write_failures(layout.score_failures(seed), failures);
    all.insert(all.end(), failures.begin(), failures.end());
  }
  return all;
}

ResultStore stage_evaluate(const RunConfig& cfg) {
  RunLayout layout{cfg.output_dir};
  const auto roster = cfg.roster();
  ResultStore store;
  for (std::uint64_t seed : cfg.seeds) {
    const auto split_failures = read_failures(stage_failures_path(layout, seed, "split"));
    const auto score_failures = read_failures(layout.score_failures(seed));
    for (const auto& d : cfg.datasets) {
      for (PredictionType t : d.prediction_types) {
        const std::string ptype(to_string(t));
        auto cell = [&](unsigned hop, Skew skew, const std::string& method) {
          CellFailure f;
          f.seed = seed;
          f.dataset = d.name;
          f.prediction_type = ptype;
          f.hop = hop;
          f.skew = std::string(to_string(skew));
          f.method = method;
          return f;
        };
        auto record = [&](CellFailure f, const CellFailure* cause, const std::string& stage, const std::string& kind,
                          const std::string& message) {
          if (cause) {
            f.stage = cause->stage;
            f.kind = cause->kind;
            f.message = cause->message;
          } else {
            f.stage = stage;
            f.kind = kind;
            f.message = message;
          }
          store.failures.push_back(std::move(f));
        };
        std::size_t cells_here = 0;
        for (unsigned hop : cfg.hops) {
          for (const auto& m : roster) cells_here += eligible(m, hop) ? cfg.skews.size() : 0;
        }
        store.expected_cells += cells_here;

        const auto split_file = layout.split_path(seed, d.name, t);
        std::optional<EvalSplit> split;
        std::string split_error = "split file missing";
        if (std::filesystem::exists(split_file)) {
          try {
            split = read_split(split_file);
          } catch (const std::exception& e) {
            split_error = e.what();
          }
        }
        if (!split) {
          for (unsigned hop : cfg.hops) {
            for (Skew skew : cfg.skews) {
              for (const auto& m : roster) {
                if (!eligible(m, hop)) continue;
                auto c = cell(hop, skew, m.name);
                record(c, covering(split_failures, c), "split", "io", split_error);
              }
            }
          }
          continue;
        }
        SplitSummary summary;
        summary.seed = seed;
        summary.dataset = d.name;
        summary.prediction_type = t;
        summary.nodes = split->graph.num_nodes();
        summary.edges = split->graph.num_edges();
        summary.positives_hop2 = split->positives.hop2.size();
        summary.positives_hop3 = split->positives.hop3.size();
        summary.positives_discarded = split->positives.discarded;
        summary.negatives_hop2 = split->negatives.hop2.size();
        summary.negatives_hop3 = split->negatives.hop3.size();
        store.splits.push_back(summary);

        for (unsigned hop : cfg.hops) {
          for (Skew skew : cfg.skews) {
            std::optional<TestView> view;
            std::string view_error;
            try {
              view = test_view(*split, hop, skew, view_seed(seed, d.name, t, hop));
            } catch (const std::exception& e) {
              view_error = e.what();
            }
            for (const auto& m : roster) {
              if (!eligible(m, hop)) continue;
              auto c = cell(hop, skew, m.name);
              if (!view) {
                record(c, covering(score_failures, c), "evaluate", "empty-cell", view_error);
                continue;
              }
              const auto path = layout.score_path(seed, skew, d.name, t, hop, m.name);
              if (!std::filesystem::exists(path)) {
                record(c, covering(score_failures, c), "score", "io", "score sheet missing: " + path.string());
                continue;
              }
              try {
                const ScoreSheet sheet = read_score_sheet(path, split->graph, m.name);
                if (sheet.pairs != view->pairs) {
                  throw Error(ErrorKind::kContractViolation, "score sheet pairs differ from the test view");
                }
                ResultRow row;
                row.seed = seed;
                row.dataset = d.name;
                row.directed = d.directed;
                row.prediction_type = t;
                row.hop = hop;
                row.method = m.name;
                row.group = m.group;
                row.metrics = evaluate_cell(sheet.scores, view->labels, skew);
                store.rows.push_back(std::move(row));
                if (cfg.pr_curves) {
                  const auto cpath = layout.curve_path(seed, skew, d.name, t, hop, m.name);
                  std::filesystem::create_directories(cpath.parent_path());
                  write_pr_curve_csv(cpath, pr_curve(sheet.scores, view->labels));
                }
              } catch (const std::exception& e) {
                record(c, nullptr, "evaluate", error_kind(e), e.what());
              }
            }
          }
        }
      }
    }
  }
  write_results_csv(layout.results_csv(), store);
  write_manifest(layout.manifest(), cfg, store);
  return store;
}

ResultStore run_pipeline(const RunConfig& cfg) {
  validate(cfg);
  std::filesystem::create_directories(cfg.output_dir);
  stage_split(cfg);
  stage_score(cfg);
  return stage_evaluate(cfg);
}

void write_results_csv(const std::filesystem::path& path, const ResultStore& store) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << "seed,dataset,network_type,prediction_type,hop,skew,method,group,positives,total,metric,value\n";
  for (const auto& r : store.rows) {
    const std::string prefix = std::to_string(r.seed) + "," + r.dataset + "," +
                               (r.directed ? "directed" : "undirected") + "," +
                               std::string(to_string(r.prediction_type)) + "," + std::to_string(r.hop) + "," +
                               std::string(to_string(r.metrics.skew)) + "," + r.method + "," +
                               std::string(to_string(r.group)) + "," + std::to_string(r.metrics.positives) + "," +
                               std::to_string(r.metrics.total) + ",";
    out << prefix << "auroc," << fmt_double(r.metrics.auroc) << '\n';
    out << prefix << "aupr," << fmt_double(r.metrics.aupr) << '\n';
    out << prefix << "pr_at_p," << fmt_double(r.metrics.pr_at_p) << '\n';
    out << prefix << "pr_at_p_half," << fmt_double(r.metrics.pr_at_p_half) << '\n';
  }
}

ResultStore read_results_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  ResultStore store;
  std::string line;
  std::getline(in, line);
  if (line.rfind("seed,dataset,", 0) != 0) throw Error(ErrorKind::kParse, "unexpected results header");
  std::map<std::string, std::size_t> index;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 12) throw ParseError(lineno, "expected 12 fields");
    const std::string key = line.substr(0, line.rfind(',', line.rfind(',') - 1));
    auto [it, inserted] = index.emplace(key, store.rows.size());
    if (inserted) {
      ResultRow r;
      r.seed = std::stoull(f[0]);
      r.dataset = f[1];
      r.directed = f[2] == "directed";
      r.prediction_type = parse_prediction_type(f[3]);
      r.hop = static_cast<unsigned>(std::stoul(f[4]));
      r.metrics.skew = parse_skew(f[5]);
      r.method = f[6];
      r.group = resolve_method(f[6]).group;
      r.metrics.positives = std::stoull(f[8]);
      r.metrics.total = std::stoull(f[9]);
      store.rows.push_back(std::move(r));
    }
    auto& m = store.rows[it->second].metrics;
    const double v = std::stod(f[11]);
    if (f[10] == "auroc") {
      m.auroc = v;
    } else if (f[10] == "aupr") {
      m.aupr = v;
    } else if (f[10] == "pr_at_p") {
      m.pr_at_p = v;
    } else if (f[10] == "pr_at_p_half") {
      m.pr_at_p_half = v;
    } else {
      throw ParseError(lineno, "unknown metric '" + f[10] + "'");
    }
  }
  return store;
}

void write_manifest(const std::filesystem::path& path, const RunConfig& cfg, const ResultStore& store) {
  Json j;
  j["software"] = std::string(kSoftwareVersion);
  j["config_digest"] = config_digest(cfg);
  j["config"] = Json::parse(canonical_config(cfg));
  j["seeds"] = cfg.seeds;
  j["seed_streams"] = "derive_seed(master, \"<stage>/<dataset>/<prediction_type>[/...]\")";
  Json roster = Json::array();
  for (const auto& m : cfg.roster()) {
    roster.push_back({{"method", m.name}, {"group", std::string(to_string(m.group))}});
  }
  j["roster"] = roster;
  char katz[96];
  std::snprintf(katz, sizeof katz, "Katz index truncated at walk length L=%u with beta=%g",
                cfg.similarity.katz_length, cfg.similarity.katz_beta);
  j["deviations"] = {
      "DeepWalk and node2vec train skip-gram with negative sampling instead of hierarchical softmax",
      katz,
      "GraphSAGE embeddings and random-forest classifiers are excluded from the roster",
      "AUPR is step-wise average precision without interpolation",
      "Pr@P/2 uses k = ceil(P/2); Precision@k splits boundary ties by expected value",
      "AUROC in comparisons is taken from the imbalanced test view",
  };
  Json splits = Json::array();
  for (const auto& s : store.splits) {
    Json sj;
    sj["seed"] = s.seed;
    sj["dataset"] = s.dataset;
    sj["prediction_type"] = std::string(to_string(s.prediction_type));
    sj["nodes"] = s.nodes;
    sj["edges"] = s.edges;
    sj["positives"] = {{"hop2", s.positives_hop2}, {"hop3", s.positives_hop3}, {"discarded", s.positives_discarded}};
    sj["negatives"] = {{"hop2", s.negatives_hop2}, {"hop3", s.negatives_hop3}};
    splits.push_back(sj);
  }
  j["splits"] = splits;
  j["cells"] = {{"expected", store.expected_cells}, {"emitted", store.rows.size()}, {"failed", store.failures.size()}};
  Json failures = Json::array();
  for (const auto& f : store.failures) failures.push_back(failure_to_json(f));
  j["failures"] = failures;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace lpeval
