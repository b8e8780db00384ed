#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "lpeval/compare.hpp"
#include "lpeval/config.hpp"
#include "lpeval/error.hpp"
#include "lpeval/pipeline.hpp"
#include "lpeval/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitPartial = 2;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string methods;
  std::optional<std::size_t> jobs;
  bool pr_curves = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "Master seed (replaces the configured seed list)");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--methods", o.methods, "Comma-separated method roster");
  cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
}

lpeval::RunConfig load(const CommonOptions& o) {
  lpeval::RunConfig cfg = lpeval::load_config(o.config);
  if (o.seed) cfg.seeds = {*o.seed};
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (!o.methods.empty()) {
    cfg.methods.clear();
    std::stringstream ss(o.methods);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) cfg.methods.push_back(item);
    }
  }
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.pr_curves) cfg.pr_curves = true;
  lpeval::validate(cfg);
  return cfg;
}

// Restores expected_cells from the manifest so reports can show coverage.
void attach_manifest(const lpeval::RunLayout& layout, lpeval::ResultStore& store) {
  std::ifstream in(layout.manifest(), std::ios::binary);
  if (!in) return;
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto j = nlohmann::json::parse(ss.str(), nullptr, false);
  if (j.is_discarded() || !j.contains("cells")) return;
  store.expected_cells = j["cells"].value("expected", std::size_t{0});
}

int report_store(const lpeval::ResultStore& store) {
  std::cerr << "cells: " << store.rows.size() << " evaluated, " << store.failures.size() << " failed of "
            << store.expected_cells << " expected\n";
  for (const auto& f : store.failures) {
    std::cerr << "  failed " << f.dataset << '/' << f.prediction_type << "/hop" << f.hop << '/' << f.skew << '/'
              << f.method << " [" << f.stage << "] " << f.message << '\n';
  }
  return store.failures.empty() ? kExitOk : kExitPartial;
}

void write_compare(const lpeval::RunConfig& cfg, const lpeval::ResultStore& store) {
  const lpeval::RunLayout layout{cfg.output_dir};
  lpeval::write_comparison_csvs(layout.compare_dir(), lpeval::compare_all(store));
}

void write_report(const lpeval::RunConfig& cfg, const lpeval::ResultStore& store) {
  const lpeval::RunLayout layout{cfg.output_dir};
  const auto report = lpeval::compare_all(store);
  for (const auto& p : lpeval::render_reports(report, store, layout, layout.report_dir())) {
    std::cout << p.string() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controlled link-prediction evaluation"};
  app.require_subcommand(1);

  CommonOptions ingest_o, split_o, score_o, eval_o, compare_o, report_o, all_o;
  auto* ingest = app.add_subcommand("ingest", "Parse datasets and summarise them");
  auto* split = app.add_subcommand("split", "Build ground truth, hop buckets and negatives");
  auto* score = app.add_subcommand("score", "Score every eligible cell and write score sheets");
  auto* evaluate = app.add_subcommand("evaluate", "Compute metrics from score sheets");
  auto* compare = app.add_subcommand("compare", "Run the statistical comparisons on results.csv");
  auto* report = app.add_subcommand("report", "Render CSV, markdown and PR-curve figures");
  auto* run_all = app.add_subcommand("run-all", "split, score, evaluate, compare and report");
  add_common(ingest, ingest_o);
  add_common(split, split_o);
  add_common(score, score_o);
  add_common(evaluate, eval_o);
  add_common(compare, compare_o);
  add_common(report, report_o);
  add_common(run_all, all_o);
  evaluate->add_flag("--pr-curves", eval_o.pr_curves, "Also export PR curves per cell");
  run_all->add_flag("--pr-curves", all_o.pr_curves, "Also export PR curves per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (ingest->parsed()) {
      const auto cfg = load(ingest_o);
      for (const auto& r : lpeval::stage_ingest(cfg)) {
        std::cout << r.dataset << ": records=" << r.summary.records << " nodes=" << r.summary.distinct_labels
                  << " directed_pairs=" << r.summary.distinct_directed_pairs
                  << " undirected_pairs=" << r.summary.distinct_undirected_pairs << " lcc_nodes=" << r.lcc_nodes
                  << " lcc_edges=" << r.lcc_edges << '\n';
      }
      return kExitOk;
    }
    if (split->parsed()) {
      const auto failures = lpeval::stage_split(load(split_o));
      for (const auto& f : failures) std::cerr << "split failed: " << f.dataset << '/' << f.prediction_type << ": " << f.message << '\n';
      return failures.empty() ? kExitOk : kExitPartial;
    }
    if (score->parsed()) {
      const auto failures = lpeval::stage_score(load(score_o));
      for (const auto& f : failures) std::cerr << "score failed: " << f.dataset << '/' << f.method << ": " << f.message << '\n';
      return failures.empty() ? kExitOk : kExitPartial;
    }
    if (evaluate->parsed()) {
      return report_store(lpeval::stage_evaluate(load(eval_o)));
    }
    if (compare->parsed()) {
      const auto cfg = load(compare_o);
      lpeval::ResultStore store = lpeval::read_results_csv(lpeval::RunLayout{cfg.output_dir}.results_csv());
      write_compare(cfg, store);
      return kExitOk;
    }
    if (report->parsed()) {
      const auto cfg = load(report_o);
      const lpeval::RunLayout layout{cfg.output_dir};
      lpeval::ResultStore store = lpeval::read_results_csv(layout.results_csv());
      attach_manifest(layout, store);
      write_report(cfg, store);
      return kExitOk;
    }
    if (run_all->parsed()) {
      const auto cfg = load(all_o);
      const lpeval::ResultStore store = lpeval::run_pipeline(cfg);
      write_compare(cfg, store);
      write_report(cfg, store);
      return report_store(store);
    }
  } catch (const lpeval::Error& e) {
    std::cerr << "lpeval: " << e.what() << '\n';
    return e.kind() == lpeval::ErrorKind::kConfig ? kExitConfig : kExitPartial;
  } catch (const std::exception& e) {
    std::cerr << "lpeval: " << e.what() << '\n';
    return kExitPartial;
  }
  return kExitOk;
}
