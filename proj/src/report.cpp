#include "lpeval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lpeval/error.hpp"

namespace lpeval {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string num(double x) {
  if (std::isnan(x)) return "";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string fixed(double x, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
}

// Renders rows with columns padded to equal width.
std::string markdown_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size(), 3);
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = std::max(width[c], header[c].size());
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    out << '|';
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string& s = c < cells.size() ? cells[c] : std::string();
      out << ' ' << s << std::string(width[c] - s.size(), ' ') << " |";
    }
    out << '\n';
  };
  line(header);
  out << '|';
  for (std::size_t c = 0; c < header.size(); ++c) out << std::string(width[c] + 2, '-') << '|';
  out << '\n';
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string section_markdown(const ComparisonSection& sec) {
  std::vector<std::string> key_names;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> row_keys;
  std::map<std::vector<std::string>, std::map<std::string, std::string>> cells;
  for (const auto& c : sec.cells) {
    if (key_names.empty()) {
      for (const auto& kv : c.keys) key_names.push_back(kv.first);
    }
    std::vector<std::string> rk;
    for (const auto& kv : c.keys) rk.push_back(kv.second);
    if (!cells.count(rk)) row_keys.push_back(rk);
    if (std::find(columns.begin(), columns.end(), c.column) == columns.end()) columns.push_back(c.column);
    cells[rk][c.column] = c.text();
  }
  std::vector<std::string> header = key_names;
  header.insert(header.end(), columns.begin(), columns.end());
  std::vector<std::vector<std::string>> rows;
  for (const auto& rk : row_keys) {
    std::vector<std::string> r = rk;
    for (const auto& col : columns) {
      auto it = cells[rk].find(col);
      r.push_back(it == cells[rk].end() ? std::string(kNoWinner) : it->second);
    }
    rows.push_back(std::move(r));
  }
  std::ostringstream out;
  out << "## " << sec.title << "\n\n";
  if (rows.empty()) {
    out << "No comparable cells.\n\n";
  } else {
    out << markdown_table(header, rows) << '\n';
  }
  return out.str();
}

std::string results_markdown(const ResultStore& store) {
  // One table per (seed, dataset, prediction type, hop): methods x metrics.
  std::vector<std::string> order;
  std::map<std::string, std::vector<const ResultRow*>> groups;
  for (const auto& r : store.rows) {
    const std::string key = "seed " + std::to_string(r.seed) + ", " + r.dataset + ", " +
                            std::string(to_string(r.prediction_type)) + ", " + std::string(hop_name(r.hop));
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::ostringstream out;
  out << "## Metric tables\n\n";
  for (const auto& key : order) {
    std::vector<std::string> methods;
    std::map<std::string, std::map<Skew, const MetricRecord*>> by_method;
    for (const ResultRow* r : groups[key]) {
      if (!by_method.count(r->method)) methods.push_back(r->method);
      by_method[r->method][r->metrics.skew] = &r->metrics;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& m : methods) {
      std::vector<std::string> row{m};
      for (Skew s : {Skew::kBalanced, Skew::kImbalanced}) {
        auto it = by_method[m].find(s);
        if (it == by_method[m].end()) {
          row.insert(row.end(), 4, std::string(kNoWinner));
        } else {
          row.push_back(fixed(it->second->auroc, 4));
          row.push_back(fixed(it->second->aupr, 4));
          row.push_back(fixed(it->second->pr_at_p, 4));
          row.push_back(fixed(it->second->pr_at_p_half, 4));
        }
      }
      rows.push_back(std::move(row));
    }
    out << "### " << key << "\n\n";
    out << markdown_table({"method", "AUROC-bal", "AUPR-bal", "Pr@P-bal", "Pr@P/2-bal", "AUROC-imb", "AUPR-imb",
                           "Pr@P-imb", "Pr@P/2-imb"},
                          rows)
        << '\n';
  }
  return out.str();
}

}  // namespace

void write_comparison_csvs(const std::filesystem::path& dir, const ComparisonReport& report) {
  std::filesystem::create_directories(dir);
  for (const auto& sec : report.sections) {
    std::ostringstream out;
    bool header = false;
    for (const auto& c : sec.cells) {
      if (!header) {
        for (const auto& kv : c.keys) out << kv.first << ',';
        out << "column,statistic,p_value,stars,winner,value,note,n,text\n";
        header = true;
      }
      for (const auto& kv : c.keys) out << csv_field(kv.second) << ',';
      out << csv_field(c.column) << ',';
      if (c.test) {
        out << num(c.test->statistic) << ',' << num(c.test->p_value) << ',' << c.test->stars << ','
            << csv_field(c.test->winner) << ',';
      } else {
        out << ",,," << kNoWinner << ',';
      }
      out << (c.value ? num(*c.value) : "") << ',' << csv_field(c.note) << ',' << c.n << ',' << csv_field(c.text())
          << '\n';
    }
    if (!header) out << "column,statistic,p_value,stars,winner,value,note,n,text\n";
    write_text(dir / (sec.kind + ".csv"), out.str());
  }
}

std::string render_markdown(const ComparisonReport& report, const ResultStore& store) {
  std::ostringstream out;
  out << "# Link prediction evaluation report\n\n";
  out << "Roster (" << report.roster.size() << " methods): ";
  for (std::size_t i = 0; i < report.roster.size(); ++i) out << (i ? ", " : "") << report.roster[i];
  out << "\n\n";
  out << "Cells: " << store.rows.size() << " evaluated";
  if (store.expected_cells) out << " of " << store.expected_cells << " expected";
  out << ". p-values: `<.001` with `***` below .001, `**` below .01, `*` below .05; `---` marks untestable cells.\n\n";
  for (const auto& sec : report.sections) out << section_markdown(sec);
  out << results_markdown(store);
  return out.str();
}

std::vector<PrPoint> read_pr_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<PrPoint> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::kParse, "bad PR curve row in " + path.string());
    out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return out;
}

std::vector<std::filesystem::path> render_reports(const ComparisonReport& report, const ResultStore& store,
                                                  const RunLayout& layout, const std::filesystem::path& dir,
                                                  const ReportFormats& formats) {
  std::vector<std::filesystem::path> written;
  if (formats.csv) {
    write_comparison_csvs(dir / "csv", report);
    for (const auto& sec : report.sections) written.push_back(dir / "csv" / (sec.kind + ".csv"));
  }
  if (formats.markdown) {
    write_text(dir / "report.md", render_markdown(report, store));
    written.push_back(dir / "report.md");
  }
  if (formats.pr_svg) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<NamedCurve>> figures;
    for (const auto& r : store.rows) {
      const auto path = layout.curve_path(r.seed, r.metrics.skew, r.dataset, r.prediction_type, r.hop, r.method);
      if (!std::filesystem::exists(path)) continue;
      const std::string stem = "seed-" + std::to_string(r.seed) + "_" + r.dataset + "_" +
                               std::string(to_string(r.prediction_type)) + "_hop" + std::to_string(r.hop) + "_" +
                               std::string(to_string(r.metrics.skew));
      if (!figures.count(stem)) order.push_back(stem);
      figures[stem].push_back({r.method, read_pr_curve_csv(path)});
    }
    for (const auto& stem : order) {
      const auto path = dir / "figures" / (stem + ".svg");
      write_text(path, render_pr_svg(figures[stem], stem));
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace lpeval
