#include "lpeval/compare.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <tuple>

#include "lpeval/error.hpp"

namespace lpeval {
namespace {

struct Entry {
  MethodGroup group = MethodGroup::kGlobalSim;
  std::optional<MetricRecord> balanced;
  std::optional<MetricRecord> imbalanced;
};

struct Slice {
  std::vector<std::string> order;
  std::map<std::string, Entry> entries;
};

using SliceKey = std::tuple<std::uint64_t, std::string, PredictionType, unsigned>;
using Extractor = std::function<std::optional<double>(const Entry&)>;

struct Index {
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> datasets;
  std::map<std::string, bool> directed;
  std::map<SliceKey, Slice> slices;

  const Slice* find(std::uint64_t seed, const std::string& ds, PredictionType t, unsigned hop) const {
    auto it = slices.find({seed, ds, t, hop});
    return it == slices.end() ? nullptr : &it->second;
  }
};

template <typename T>
void push_unique(std::vector<T>& v, const T& x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

Index build_index(const ResultStore& store) {
  Index idx;
  for (const auto& r : store.rows) {
    push_unique(idx.seeds, r.seed);
    push_unique(idx.datasets, r.dataset);
    idx.directed[r.dataset] = r.directed;
    Slice& s = idx.slices[{r.seed, r.dataset, r.prediction_type, r.hop}];
    auto [it, inserted] = s.entries.try_emplace(r.method);
    if (inserted) s.order.push_back(r.method);
    it->second.group = r.group;
    (r.metrics.skew == Skew::kBalanced ? it->second.balanced : it->second.imbalanced) = r.metrics;
  }
  return idx;
}

// AUROC is skew-invariant in expectation; the imbalanced view has more
// negatives, so it is preferred when both are present.
std::optional<double> auroc_of(const Entry& e) {
  if (e.imbalanced) return e.imbalanced->auroc;
  if (e.balanced) return e.balanced->auroc;
  return std::nullopt;
}

Extractor extractor(TableMetric m) {
  switch (m) {
    case TableMetric::kAuroc: return auroc_of;
    case TableMetric::kAuprBalanced:
      return [](const Entry& e) { return e.balanced ? std::optional(e.balanced->aupr) : std::nullopt; };
    case TableMetric::kAuprImbalanced:
      return [](const Entry& e) { return e.imbalanced ? std::optional(e.imbalanced->aupr) : std::nullopt; };
    case TableMetric::kPrPBalanced:
      return [](const Entry& e) { return e.balanced ? std::optional(e.balanced->pr_at_p) : std::nullopt; };
    case TableMetric::kPrPImbalanced:
      return [](const Entry& e) { return e.imbalanced ? std::optional(e.imbalanced->pr_at_p) : std::nullopt; };
  }
  return auroc_of;
}

std::optional<double> pr_half_bal(const Entry& e) {
  return e.balanced ? std::optional(e.balanced->pr_at_p_half) : std::nullopt;
}
std::optional<double> pr_half_imb(const Entry& e) {
  return e.imbalanced ? std::optional(e.imbalanced->pr_at_p_half) : std::nullopt;
}

// Values of two extractors over methods present on both sides.
void paired_values(const Slice& a, const Extractor& fa, const Slice& b, const Extractor& fb,
                   const std::function<bool(const Entry&)>& keep, std::vector<double>& xa, std::vector<double>& xb) {
  xa.clear();
  xb.clear();
  for (const auto& name : a.order) {
    auto it = b.entries.find(name);
    if (it == b.entries.end()) continue;
    const Entry& ea = a.entries.at(name);
    if (!keep(ea)) continue;
    auto va = fa(ea);
    auto vb = fb(it->second);
    if (va && vb) {
      xa.push_back(*va);
      xb.push_back(*vb);
    }
  }
}

bool any_method(const Entry&) { return true; }
bool non_local(const Entry& e) { return e.group != MethodGroup::kLocalSim; }

ComparisonCell untestable(std::vector<std::pair<std::string, std::string>> keys, std::string column, std::size_t n,
                          std::string note) {
  ComparisonCell c;
  c.keys = std::move(keys);
  c.column = std::move(column);
  c.n = n;
  c.note = std::move(note);
  return c;
}

template <typename Fn>
ComparisonCell tested(std::vector<std::pair<std::string, std::string>> keys, std::string column, std::size_t n,
                      Fn&& run) {
  try {
    ComparisonCell c;
    c.test = run();
    c.keys = std::move(keys);
    c.column = std::move(column);
    c.n = n;
    return c;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerate && e.kind() != ErrorKind::kInvalidArgument) throw;
    return untestable(std::move(keys), std::move(column), n, e.what());
  }
}

ComparisonCell tau_cell(std::vector<std::pair<std::string, std::string>> keys, std::string column,
                        const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return untestable(std::move(keys), std::move(column), x.size(), "fewer than 2 methods");
  try {
    ComparisonCell c;
    c.value = kendall_tau(x, y);
    c.keys = std::move(keys);
    c.column = std::move(column);
    c.n = x.size();
    return c;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kDegenerate) throw;
    return untestable(std::move(keys), std::move(column), x.size(), e.what());
  }
}

std::string seed_str(std::uint64_t s) { return std::to_string(s); }

const MethodGroup kGroups[] = {MethodGroup::kLocalSim, MethodGroup::kGlobalSim, MethodGroup::kLearning};

}  // namespace

std::string_view to_string(TableMetric m) {
  switch (m) {
    case TableMetric::kAuroc: return "AUROC";
    case TableMetric::kAuprBalanced: return "AUPR-bal";
    case TableMetric::kAuprImbalanced: return "AUPR-imb";
    case TableMetric::kPrPBalanced: return "Pr@P-bal";
    case TableMetric::kPrPImbalanced: return "Pr@P-imb";
  }
  return "?";
}

std::string ComparisonCell::text() const {
  if (test) return format_result(*test);
  if (value) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", *value);
    return note.empty() ? std::string(buf) : std::string(buf) + " (" + note + ")";
  }
  return std::string(kNoWinner);
}

const ComparisonSection* ComparisonReport::find(std::string_view kind) const {
  for (const auto& s : sections) {
    if (s.kind == kind) return &s;
  }
  return nullptr;
}

std::vector<ComparisonSection> compare_future_vs_missing(const ResultStore& store) {
  const Index idx = build_index(store);
  ComparisonSection tests{"future-vs-missing", "Paired t-test, future vs missing prediction", {}};
  ComparisonSection taus{"future-vs-missing-tau", "Kendall tau of method rankings, future vs missing", {}};
  std::vector<double> x, y;
  for (auto seed : idx.seeds) {
    for (const auto& ds : idx.datasets) {
      for (unsigned hop : kHopClasses) {
        const Slice* f = idx.find(seed, ds, PredictionType::kFuture, hop);
        const Slice* m = idx.find(seed, ds, PredictionType::kMissing, hop);
        if (!f || !m) continue;
        const std::vector<std::pair<std::string, std::string>> keys{
            {"seed", seed_str(seed)}, {"network", ds}, {"hop", std::string(hop_name(hop))}};
        for (TableMetric metric : kTableMetrics) {
          const auto ex = extractor(metric);
          paired_values(*f, ex, *m, ex, any_method, x, y);
          const std::string col(to_string(metric));
          if (x.size() < 2) {
            tests.cells.push_back(untestable(keys, col, x.size(), "fewer than 2 common methods"));
          } else {
            tests.cells.push_back(tested(keys, col, x.size(), [&] { return paired_t_test(x, y, "future", "missing"); }));
          }
          taus.cells.push_back(tau_cell(keys, col, x, y));
        }
      }
    }
  }
  return {tests, taus};
}

ComparisonSection compare_hops(const ResultStore& store) {
  const Index idx = build_index(store);
  ComparisonSection sec{"two-hop-vs-three-hop", "Paired t-test, two-hop vs three-hop (global-sim and learning)", {}};
  std::vector<double> x, y;
  for (auto seed : idx.seeds) {
    for (PredictionType t : {PredictionType::kMissing, PredictionType::kFuture}) {
      for (const auto& ds : idx.datasets) {
        const Slice* h2 = idx.find(seed, ds, t, 2);
        const Slice* h3 = idx.find(seed, ds, t, 3);
        if (!h2 || !h3) continue;
        const std::vector<std::pair<std::string, std::string>> keys{
            {"seed", seed_str(seed)}, {"prediction", std::string(to_string(t))}, {"dataset", ds}};
        for (TableMetric metric : kTableMetrics) {
          const auto ex = extractor(metric);
          paired_values(*h2, ex, *h3, ex, non_local, x, y);
          const std::string col(to_string(metric));
          if (x.size() < 2) {
            sec.cells.push_back(untestable(keys, col, x.size(), "fewer than 2 common methods"));
          } else {
            sec.cells.push_back(tested(keys, col, x.size(), [&] { return paired_t_test(x, y, "two-hop", "three-hop"); }));
          }
        }
      }
    }
  }
  return sec;
}

std::vector<ComparisonSection> compare_groups(const ResultStore& store) {
  const Index idx = build_index(store);
  ComparisonSection anova{"groups-two-hop", "One-way ANOVA and Tukey HSD across method groups, two-hop", {}};
  ComparisonSection ttest{"groups-three-hop", "Student's t-test, global-sim vs learning, three-hop", {}};
  for (auto seed : idx.seeds) {
    for (PredictionType t : {PredictionType::kMissing, PredictionType::kFuture}) {
      for (const auto& ds : idx.datasets) {
        if (const Slice* s = idx.find(seed, ds, t, 2)) {
          for (TableMetric metric : kTableMetrics) {
            const auto ex = extractor(metric);
            std::map<MethodGroup, std::vector<double>> by_group;
            for (const auto& name : s->order) {
              const Entry& e = s->entries.at(name);
              if (auto v = ex(e)) by_group[e.group].push_back(*v);
            }
            std::vector<std::vector<double>> groups;
            std::vector<std::string> names;
            for (MethodGroup g : kGroups) {
              auto it = by_group.find(g);
              if (it != by_group.end() && it->second.size() >= 2) {
                groups.push_back(it->second);
                names.emplace_back(to_string(g));
              }
            }
            const std::string col(to_string(metric));
            auto keys_for = [&](const std::string& test) {
              return std::vector<std::pair<std::string, std::string>>{{"seed", seed_str(seed)},
                                                                      {"prediction", std::string(to_string(t))},
                                                                      {"dataset", ds},
                                                                      {"test", test}};
            };
            std::size_t n_total = 0;
            for (const auto& g : groups) n_total += g.size();
            if (groups.size() < 2) {
              anova.cells.push_back(untestable(keys_for("ANOVA"), col, n_total, "fewer than 2 groups"));
            } else {
              anova.cells.push_back(tested(keys_for("ANOVA"), col, n_total, [&] { return one_way_anova(groups).test; }));
            }
            std::vector<PairwiseResult> tukey;
            std::string tukey_error = "group missing";
            if (groups.size() >= 2) {
              try {
                tukey = tukey_hsd(groups, names);
              } catch (const Error& e) {
                if (e.kind() != ErrorKind::kDegenerate) throw;
                tukey_error = e.what();
              }
            }
            for (std::size_t a = 0; a < 3; ++a) {
              for (std::size_t b = a + 1; b < 3; ++b) {
                const std::string na(to_string(kGroups[a])), nb(to_string(kGroups[b]));
                const auto keys = keys_for(na + " vs " + nb);
                const PairwiseResult* hit = nullptr;
                for (const auto& pr : tukey) {
                  if (names[pr.first] == na && names[pr.second] == nb) hit = &pr;
                }
                if (hit) {
                  ComparisonCell c;
                  c.keys = keys;
                  c.column = col;
                  c.test = hit->test;
                  c.n = groups[hit->first].size() + groups[hit->second].size();
                  anova.cells.push_back(std::move(c));
                } else {
                  anova.cells.push_back(untestable(keys, col, 0, tukey_error));
                }
              }
            }
          }
        }
        if (const Slice* s = idx.find(seed, ds, t, 3)) {
          const std::vector<std::pair<std::string, std::string>> keys{
              {"seed", seed_str(seed)}, {"prediction", std::string(to_string(t))}, {"dataset", ds}};
          for (TableMetric metric : kTableMetrics) {
            const auto ex = extractor(metric);
            std::vector<double> global, learning;
            for (const auto& name : s->order) {
              const Entry& e = s->entries.at(name);
              auto v = ex(e);
              if (!v) continue;
              if (e.group == MethodGroup::kGlobalSim) global.push_back(*v);
              if (e.group == MethodGroup::kLearning) learning.push_back(*v);
            }
            const std::string col(to_string(metric));
            if (global.size() < 2 || learning.size() < 2) {
              ttest.cells.push_back(untestable(keys, col, global.size() + learning.size(), "group has fewer than 2 methods"));
            } else {
              ttest.cells.push_back(tested(keys, col, global.size() + learning.size(), [&] {
                return two_sample_t_test(global, learning, "global-sim", "learning");
              }));
            }
          }
        }
      }
    }
  }
  return {anova, ttest};
}

std::vector<ComparisonSection> compare_network_type(const ResultStore& store) {
  const Index idx = build_index(store);
  ComparisonSection tests{"network-type", "Student's t-test on best-per-group scores, directed vs undirected", {}};
  ComparisonSection best{"best-per-group", "Best method per group", {}};
  for (auto seed : idx.seeds) {
    for (PredictionType t : {PredictionType::kFuture, PredictionType::kMissing}) {
      for (unsigned hop : kHopClasses) {
        for (MethodGroup g : kGroups) {
          if (g == MethodGroup::kLocalSim && hop != 2) continue;
          const std::vector<std::pair<std::string, std::string>> keys{
              {"seed", seed_str(seed)},
              {"setting", std::string(to_string(t)) + " " + std::string(hop_name(hop))},
              {"group", std::string(to_string(g))}};
          bool any_slice = false;
          for (TableMetric metric : kTableMetrics) {
            const auto ex = extractor(metric);
            std::vector<double> directed, undirected;
            for (const auto& ds : idx.datasets) {
              const Slice* s = idx.find(seed, ds, t, hop);
              if (!s) continue;
              any_slice = true;
              std::optional<double> top;
              std::string top_name;
              for (const auto& name : s->order) {
                const Entry& e = s->entries.at(name);
                if (e.group != g) continue;
                auto v = ex(e);
                if (v && (!top || *v > *top)) {
                  top = v;
                  top_name = name;
                }
              }
              if (!top) continue;
              (idx.directed.at(ds) ? directed : undirected).push_back(*top);
              ComparisonCell c;
              c.keys = {{"seed", seed_str(seed)},
                        {"prediction", std::string(to_string(t))},
                        {"hop", std::string(hop_name(hop))},
                        {"dataset", ds},
                        {"group", std::string(to_string(g))}};
              c.column = std::string(to_string(metric));
              c.value = *top;
              c.note = top_name;
              c.n = 1;
              best.cells.push_back(std::move(c));
            }
            if (!any_slice) break;
            const std::string col(to_string(metric));
            if (directed.size() < 2 || undirected.size() < 2) {
              tests.cells.push_back(untestable(keys, col, directed.size() + undirected.size(),
                                               "fewer than 2 datasets on a side"));
            } else {
              tests.cells.push_back(tested(keys, col, directed.size() + undirected.size(), [&] {
                return two_sample_t_test(directed, undirected, "directed", "undirected");
              }));
            }
          }
        }
      }
    }
  }
  return {tests, best};
}

std::vector<ComparisonSection> compare_imbalance(const ResultStore& store) {
  const Index idx = build_index(store);
  ComparisonSection imb{"imbalance-tau", "Kendall tau between metric pairs across methods", {}};
  ComparisonSection early{"early-retrieval-tau", "Kendall tau for early retrieval (Pr@P/2)", {}};
  const Extractor aupr_bal = extractor(TableMetric::kAuprBalanced);
  const Extractor aupr_imb = extractor(TableMetric::kAuprImbalanced);
  const Extractor prp_bal = extractor(TableMetric::kPrPBalanced);
  const Extractor prp_imb = extractor(TableMetric::kPrPImbalanced);
  const std::vector<std::tuple<std::string, Extractor, Extractor>> imb_pairs{
      {"AUROC vs AUPR-bal", auroc_of, aupr_bal},
      {"AUROC vs AUPR-imb", auroc_of, aupr_imb},
      {"AUPR-bal vs AUPR-imb", aupr_bal, aupr_imb},
      {"Pr@P-bal vs Pr@P-imb", prp_bal, prp_imb}};
  const std::vector<std::tuple<std::string, Extractor, Extractor>> early_pairs{
      {"AUROC vs Pr@P/2-bal", auroc_of, pr_half_bal},
      {"AUROC vs Pr@P/2-imb", auroc_of, pr_half_imb},
      {"Pr@P/2-bal vs Pr@P/2-imb", pr_half_bal, pr_half_imb}};
  std::vector<double> x, y;
  for (auto seed : idx.seeds) {
    for (PredictionType t : {PredictionType::kMissing, PredictionType::kFuture}) {
      for (const auto& ds : idx.datasets) {
        for (unsigned hop : kHopClasses) {
          const Slice* s = idx.find(seed, ds, t, hop);
          if (!s) continue;
          const std::vector<std::pair<std::string, std::string>> keys{{"seed", seed_str(seed)},
                                                                      {"prediction", std::string(to_string(t))},
                                                                      {"dataset", ds},
                                                                      {"hop", std::string(hop_name(hop))}};
          for (const auto& [col, fa, fb] : imb_pairs) {
            paired_values(*s, fa, *s, fb, any_method, x, y);
            imb.cells.push_back(tau_cell(keys, col, x, y));
          }
          for (const auto& [col, fa, fb] : early_pairs) {
            paired_values(*s, fa, *s, fb, any_method, x, y);
            early.cells.push_back(tau_cell(keys, col, x, y));
          }
        }
      }
    }
  }
  return {imb, early};
}

ComparisonReport compare_all(const ResultStore& store) {
  ComparisonReport report;
  for (const auto& r : store.rows) push_unique(report.roster, r.method);
  auto add = [&](std::vector<ComparisonSection> v) {
    for (auto& s : v) report.sections.push_back(std::move(s));
  };
  add(compare_future_vs_missing(store));
  report.sections.push_back(compare_hops(store));
  add(compare_groups(store));
  add(compare_network_type(store));
  add(compare_imbalance(store));
  return report;
}

}  // namespace lpeval
