#include "lpeval/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lpeval/error.hpp"
#include "lpeval/seeds.hpp"

namespace lpeval {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::kConfig, msg); }

template <typename T>
void read_opt(const Json& obj, const char* key, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("bad value for '") + key + "': " + e.what());
  }
}

void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || it.key() == k;
    if (!ok) config_error("unknown key '" + it.key() + "' in " + where);
  }
}

void apply_hyperparameters(const Json& h, RunConfig& cfg) {
  check_keys(h,
             {"train_fraction", "removal_fraction", "negative_ratio", "negative_strategy", "katz_beta",
              "katz_length", "solve_tolerance", "dense_limit", "walks_per_node", "walk_length", "dimensions",
              "window", "negatives", "epochs", "learning_rate", "node2vec_p", "node2vec_q", "lr_l2", "folds"},
             "hyperparameters");
  read_opt(h, "train_fraction", cfg.split.train_frac);
  read_opt(h, "removal_fraction", cfg.split.removal_frac);
  read_opt(h, "negative_ratio", cfg.split.negative_ratio);
  if (h.contains("negative_strategy")) {
    const auto s = h.at("negative_strategy").get<std::string>();
    if (s == "node-then-partner") {
      cfg.split.strategy = NegativeStrategy::kNodeThenPartner;
    } else if (s == "uniform-pair") {
      cfg.split.strategy = NegativeStrategy::kUniformPair;
    } else {
      config_error("negative_strategy must be node-then-partner or uniform-pair");
    }
  }
  read_opt(h, "katz_beta", cfg.similarity.katz_beta);
  read_opt(h, "katz_length", cfg.similarity.katz_length);
  read_opt(h, "solve_tolerance", cfg.similarity.solve_tolerance);
  read_opt(h, "dense_limit", cfg.similarity.dense_limit);
  read_opt(h, "walks_per_node", cfg.learning.walks.walks_per_node);
  read_opt(h, "walk_length", cfg.learning.walks.walk_length);
  read_opt(h, "dimensions", cfg.learning.skipgram.dim);
  read_opt(h, "window", cfg.learning.skipgram.window);
  read_opt(h, "negatives", cfg.learning.skipgram.negatives);
  read_opt(h, "epochs", cfg.learning.skipgram.epochs);
  read_opt(h, "learning_rate", cfg.learning.skipgram.learning_rate_start);
  read_opt(h, "node2vec_p", cfg.learning.node2vec_p);
  read_opt(h, "node2vec_q", cfg.learning.node2vec_q);
  read_opt(h, "lr_l2", cfg.learning.classifier.l2);
  read_opt(h, "folds", cfg.learning.folds);
}

std::string strategy_name(NegativeStrategy s) {
  return s == NegativeStrategy::kNodeThenPartner ? "node-then-partner" : "uniform-pair";
}

}  // namespace

ParseOptions DatasetConfig::parse_options() const {
  ParseOptions o;
  o.delimiter = delimiter;
  o.has_timestamps = temporal;
  o.directed = directed;
  o.comment_prefix = comment_prefix;
  return o;
}

std::string_view to_string(MethodGroup g) {
  switch (g) {
    case MethodGroup::kLocalSim: return "local-sim";
    case MethodGroup::kGlobalSim: return "global-sim";
    case MethodGroup::kLearning: return "learning";
  }
  return "?";
}

MethodSpec resolve_method(std::string_view name) {
  MethodSpec spec;
  spec.name = std::string(name);
  if (auto m = parse_similarity_method(name)) {
    spec.similarity = *m;
    spec.group = family(*m) == MethodFamily::kLocal ? MethodGroup::kLocalSim : MethodGroup::kGlobalSim;
    return spec;
  }
  if (auto l = parse_learning_method(name)) {
    if (!l->implemented) config_error("method '" + spec.name + "' is recognised but not implemented");
    spec.learning = *l;
    spec.group = MethodGroup::kLearning;
    return spec;
  }
  config_error("unknown method '" + spec.name + "'");
}

std::vector<std::string> default_roster() {
  std::vector<std::string> names;
  for (auto m : kSimilarityMethods) names.emplace_back(to_string(m));
  for (const auto& l : enumerate_learning_methods()) names.push_back(l.name);
  return names;
}

std::vector<MethodSpec> RunConfig::roster() const {
  std::vector<MethodSpec> out;
  out.reserve(methods.size());
  for (const auto& m : methods) out.push_back(resolve_method(m));
  return out;
}

RunConfig config_from_json(std::string_view text, const std::filesystem::path& base_dir) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("config must be a JSON object");
  check_keys(j, {"datasets", "methods", "skews", "hops", "seeds", "output", "jobs", "pr_curves", "hyperparameters"},
             "config");
  RunConfig cfg;
  if (!j.contains("datasets") || !j["datasets"].is_array()) config_error("config needs a 'datasets' array");
  for (const auto& d : j["datasets"]) {
    check_keys(d, {"name", "path", "temporal", "directed", "prediction_types", "delimiter", "comment"}, "dataset");
    DatasetConfig ds;
    read_opt(d, "name", ds.name);
    std::string path;
    read_opt(d, "path", path);
    if (ds.name.empty() || path.empty()) config_error("every dataset needs 'name' and 'path'");
    ds.path = std::filesystem::path(path).is_absolute() ? std::filesystem::path(path) : base_dir / path;
    read_opt(d, "temporal", ds.temporal);
    read_opt(d, "directed", ds.directed);
    if (d.contains("prediction_types")) {
      for (const auto& t : d["prediction_types"]) {
        try {
          ds.prediction_types.push_back(parse_prediction_type(t.get<std::string>()));
        } catch (const Error& e) {
          config_error(e.what());
        }
      }
    } else {
      if (ds.temporal) ds.prediction_types.push_back(PredictionType::kFuture);
      ds.prediction_types.push_back(PredictionType::kMissing);
    }
    if (d.contains("delimiter")) {
      const auto s = d["delimiter"].get<std::string>();
      if (s.size() != 1) config_error("delimiter must be a single character");
      ds.delimiter = s[0];
    }
    if (d.contains("comment")) {
      const auto s = d["comment"].get<std::string>();
      if (s.size() != 1) config_error("comment must be a single character");
      ds.comment_prefix = s[0];
    }
    cfg.datasets.push_back(std::move(ds));
  }
  if (j.contains("methods")) {
    cfg.methods.clear();
    read_opt(j, "methods", cfg.methods);
  }
  if (j.contains("skews")) {
    cfg.skews.clear();
    for (const auto& s : j["skews"]) {
      try {
        cfg.skews.push_back(parse_skew(s.get<std::string>()));
      } catch (const Error& e) {
        config_error(e.what());
      }
    }
  }
  read_opt(j, "hops", cfg.hops);
  read_opt(j, "seeds", cfg.seeds);
  if (j.contains("output")) {
    std::filesystem::path out = j["output"].get<std::string>();
    cfg.output_dir = out.is_absolute() ? out : base_dir / out;
  }
  read_opt(j, "jobs", cfg.jobs);
  read_opt(j, "pr_curves", cfg.pr_curves);
  if (j.contains("hyperparameters")) apply_hyperparameters(j["hyperparameters"], cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  auto base = path.parent_path();
  if (base.empty()) base = ".";
  return config_from_json(ss.str(), base);
}

void validate(const RunConfig& cfg) {
  if (cfg.datasets.empty()) config_error("no datasets configured");
  std::set<std::string> names;
  for (const auto& d : cfg.datasets) {
    if (!names.insert(d.name).second) config_error("duplicate dataset name '" + d.name + "'");
    if (d.name.find_first_of("/\\ ") != std::string::npos) config_error("dataset name '" + d.name + "' has / or space");
    if (d.prediction_types.empty()) config_error("dataset '" + d.name + "' has no prediction types");
    for (auto t : d.prediction_types) {
      if (t == PredictionType::kFuture && !d.temporal) {
        config_error("dataset '" + d.name + "' has no timestamps; only missing prediction is possible");
      }
    }
    if (!std::filesystem::is_regular_file(d.path)) config_error("dataset file not found: " + d.path.string());
  }
  if (cfg.methods.empty()) config_error("method roster is empty");
  std::set<std::string> seen;
  for (const auto& m : cfg.methods) {
    if (!seen.insert(m).second) config_error("method '" + m + "' listed twice");
    resolve_method(m);
  }
  if (cfg.hops.empty() || cfg.skews.empty() || cfg.seeds.empty()) config_error("hops, skews and seeds must be non-empty");
  for (unsigned h : cfg.hops) {
    if (h != 2 && h != 3) config_error("hop classes are 2 and 3");
  }
  if (!(cfg.split.train_frac > 0.0 && cfg.split.train_frac < 1.0)) config_error("train_fraction must be in (0, 1)");
  if (!(cfg.split.removal_frac > 0.0 && cfg.split.removal_frac < 1.0)) config_error("removal_fraction must be in (0, 1)");
  if (cfg.split.negative_ratio < 1) config_error("negative_ratio must be >= 1");
  if (cfg.jobs < 1) config_error("jobs must be >= 1");
  if (cfg.learning.folds < 2) config_error("folds must be >= 2");
  try {
    cfg.learning.walks.validate();
    cfg.learning.skipgram.validate();
  } catch (const Error& e) {
    config_error(e.what());
  }
}

std::string canonical_config(const RunConfig& cfg) {
  Json j;
  j["datasets"] = Json::array();
  for (const auto& d : cfg.datasets) {
    Json dj;
    dj["name"] = d.name;
    dj["file"] = d.path.filename().string();
    dj["temporal"] = d.temporal;
    dj["directed"] = d.directed;
    dj["prediction_types"] = Json::array();
    for (auto t : d.prediction_types) dj["prediction_types"].push_back(std::string(to_string(t)));
    j["datasets"].push_back(dj);
  }
  j["methods"] = cfg.methods;
  j["skews"] = Json::array();
  for (auto s : cfg.skews) j["skews"].push_back(std::string(to_string(s)));
  j["hops"] = cfg.hops;
  j["seeds"] = cfg.seeds;
  Json h;
  h["train_fraction"] = cfg.split.train_frac;
  h["removal_fraction"] = cfg.split.removal_frac;
  h["negative_ratio"] = cfg.split.negative_ratio;
  h["negative_strategy"] = strategy_name(cfg.split.strategy);
  h["katz_beta"] = cfg.similarity.katz_beta;
  h["katz_length"] = cfg.similarity.katz_length;
  h["solve_tolerance"] = cfg.similarity.solve_tolerance;
  h["dense_limit"] = cfg.similarity.dense_limit;
  h["walks_per_node"] = cfg.learning.walks.walks_per_node;
  h["walk_length"] = cfg.learning.walks.walk_length;
  h["dimensions"] = cfg.learning.skipgram.dim;
  h["window"] = cfg.learning.skipgram.window;
  h["negatives"] = cfg.learning.skipgram.negatives;
  h["epochs"] = cfg.learning.skipgram.epochs;
  h["learning_rate"] = cfg.learning.skipgram.learning_rate_start;
  h["node2vec_p"] = cfg.learning.node2vec_p;
  h["node2vec_q"] = cfg.learning.node2vec_q;
  h["lr_l2"] = cfg.learning.classifier.l2;
  h["folds"] = cfg.learning.folds;
  j["hyperparameters"] = h;
  return j.dump();
}

std::string config_digest(const RunConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical_config(cfg))));
  return buf;
}

}  // namespace lpeval
