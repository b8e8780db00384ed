#include "lpeval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "lpeval/error.hpp"

namespace lpeval {
namespace {

struct Block {
  std::size_t count = 0;
  std::size_t positives = 0;
};

void check_inputs(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorKind::kInvalidArgument, "scores and labels differ in length");
  }
  for (double s : scores) {
    if (std::isnan(s)) throw Error(ErrorKind::kInvalidArgument, "NaN score");
  }
}

std::size_t count_positives(std::span<const int> labels) {
  return static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), [](int l) { return l != 0; }));
}

// Equal-score blocks in descending score order.
std::vector<Block> tie_blocks(std::span<const double> scores, std::span<const int> labels) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || scores[order[i]] != scores[order[i - 1]]) blocks.push_back({});
    ++blocks.back().count;
    if (labels[order[i]]) ++blocks.back().positives;
  }
  return blocks;
}

}  // namespace

double auroc(std::span<const double> scores, std::span<const int> labels) {
  check_inputs(scores, labels);
  const std::size_t p = count_positives(labels);
  const std::size_t n = labels.size() - p;
  if (p == 0 || n == 0) throw Error(ErrorKind::kSingleClass, "AUROC needs both classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of (1-based) mid-ranks of the positives.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t pos_in_block = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]]) ++pos_in_block;
      ++j;
    }
    const double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    rank_sum += mid * static_cast<double>(pos_in_block);
    i = j;
  }
  const double pp = static_cast<double>(p);
  return (rank_sum - pp * (pp + 1.0) / 2.0) / (pp * static_cast<double>(n));
}

std::vector<PrPoint> pr_curve(std::span<const double> scores, std::span<const int> labels) {
  check_inputs(scores, labels);
  const std::size_t p = count_positives(labels);
  if (p == 0) throw Error(ErrorKind::kSingleClass, "PR curve needs at least one positive");
  const auto blocks = tie_blocks(scores, labels);
  std::vector<PrPoint> curve;
  curve.reserve(blocks.size() + 1);
  std::size_t tp = 0, seen = 0;
  for (const auto& b : blocks) {
    tp += b.positives;
    seen += b.count;
    curve.push_back({static_cast<double>(tp) / static_cast<double>(p),
                     static_cast<double>(tp) / static_cast<double>(seen)});
  }
  curve.insert(curve.begin(), PrPoint{0.0, curve.front().precision});
  return curve;
}

double average_precision(std::span<const double> scores, std::span<const int> labels) {
  check_inputs(scores, labels);
  const std::size_t p = count_positives(labels);
  if (p == 0) throw Error(ErrorKind::kSingleClass, "average precision needs at least one positive");
  double ap = 0.0;
  std::size_t tp = 0, seen = 0;
  for (const auto& b : tie_blocks(scores, labels)) {
    tp += b.positives;
    seen += b.count;
    if (b.positives == 0) continue;
    ap += static_cast<double>(b.positives) / static_cast<double>(p) *
          (static_cast<double>(tp) / static_cast<double>(seen));
  }
  return ap;
}

double precision_at_k(std::span<const double> scores, std::span<const int> labels, std::size_t k) {
  check_inputs(scores, labels);
  if (k < 1 || k > scores.size()) {
    throw Error(ErrorKind::kOutOfRange,
                "k = " + std::to_string(k) + " outside [1, " + std::to_string(scores.size()) + "]");
  }
  double hits = 0.0;
  std::size_t remaining = k;
  for (const auto& b : tie_blocks(scores, labels)) {
    if (remaining == 0) break;
    if (b.count <= remaining) {
      hits += static_cast<double>(b.positives);
      remaining -= b.count;
    } else {
      hits += static_cast<double>(remaining) * static_cast<double>(b.positives) / static_cast<double>(b.count);
      remaining = 0;
    }
  }
  return hits / static_cast<double>(k);
}

MetricRecord evaluate_cell(std::span<const double> scores, std::span<const int> labels, Skew skew) {
  MetricRecord r;
  r.skew = skew;
  r.auroc = auroc(scores, labels);
  r.aupr = average_precision(scores, labels);
  r.positives = count_positives(labels);
  r.total = labels.size();
  r.pr_at_p = precision_at_k(scores, labels, r.positives);
  r.pr_at_p_half = precision_at_k(scores, labels, (r.positives + 1) / 2);
  return r;
}

void write_pr_curve_csv(const std::filesystem::path& path, std::span<const PrPoint> curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << "recall,precision\n";
  char buf[64];
  for (const auto& pt : curve) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g\n", pt.recall, pt.precision);
    out << buf;
  }
}

std::string render_pr_svg(std::span<const NamedCurve> curves, const std::string& title) {
  constexpr double kW = 640, kH = 480, kL = 60, kR = 180, kT = 40, kB = 50;
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  auto x_of = [&](double r) { return kL + r * pw; };
  auto y_of = [&](double p) { return kT + (1.0 - p) * ph; };
  std::ostringstream svg;
  char buf[128];
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kL << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  svg << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double v = t / 4.0;
    std::snprintf(buf, sizeof buf, "%.2f", v);
    svg << "<text x=\"" << x_of(v) - 10 << "\" y=\"" << kH - kB + 16 << "\" font-size=\"10\">" << buf << "</text>\n";
    svg << "<text x=\"" << kL - 32 << "\" y=\"" << y_of(v) + 4 << "\" font-size=\"10\">" << buf << "</text>\n";
  }
  svg << "<text x=\"" << kL + pw / 2 - 20 << "\" y=\"" << kH - 12 << "\" font-size=\"12\">Recall</text>\n";
  svg << "<text x=\"14\" y=\"" << kT + ph / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 " << kT + ph / 2
      << ")\">Precision</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    double prev_r = 0.0;
    for (const auto& pt : curves[c].points) {
      // Hold precision across each recall step.
      std::snprintf(buf, sizeof buf, "%.2f,%.2f %.2f,%.2f ", x_of(prev_r), y_of(pt.precision), x_of(pt.recall),
                    y_of(pt.precision));
      svg << buf;
      prev_r = pt.recall;
    }
    svg << "\"/>\n";
    const double ly = kT + 16 + 18.0 * static_cast<double>(c);
    svg << "<line x1=\"" << kW - kR + 12 << "\" y1=\"" << ly << "\" x2=\"" << kW - kR + 36 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << kW - kR + 42 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << curves[c].name
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace lpeval
