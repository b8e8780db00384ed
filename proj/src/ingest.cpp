#include "lpeval/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string_view>
#include <unordered_set>

#include "lpeval/error.hpp"

namespace lpeval {
namespace {

std::vector<std::string_view> split_fields(std::string_view line, std::optional<char> delimiter) {
  std::vector<std::string_view> fields;
  if (delimiter) {
    std::size_t start = 0;
    while (true) {
      const std::size_t pos = line.find(*delimiter, start);
      std::string_view f = line.substr(start, pos == std::string_view::npos ? pos : pos - start);
      // Trim surrounding blanks so "a, b" parses with delimiter ','.
      while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
      while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.remove_suffix(1);
      fields.push_back(f);
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return fields;
  }
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ','; };
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; });
}

}  // namespace

InteractionLog parse_edge_list(std::istream& in, const ParseOptions& options) {
  InteractionLog log;
  log.temporal = options.has_timestamps;
  log.declared_directed = options.directed;
  const std::size_t expected = options.has_timestamps ? 3 : 2;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (is_blank(line)) continue;
    const std::size_t first = line.find_first_not_of(" \t");
    if (line[first] == options.comment_prefix) continue;

    auto fields = split_fields(line, options.delimiter);
    if (fields.size() != expected) {
      throw ParseError(line_no, "expected " + std::to_string(expected) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) throw ParseError(line_no, "empty node label");

    InteractionRecord rec{std::string(fields[0]), std::string(fields[1]), std::nullopt};
    if (options.has_timestamps) {
      std::int64_t ts = 0;
      const auto f = fields[2];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), ts);
      if (ec != std::errc{} || ptr != f.data() + f.size() || ts < 0) {
        throw ParseError(line_no, "timestamp is not a non-negative integer: '" + std::string(f) + "'");
      }
      rec.timestamp = ts;
    }
    log.records.push_back(std::move(rec));
  }
  if (log.records.empty()) throw Error(ErrorKind::kEmptyInput, "edge list has no records");
  return log;
}

InteractionLog read_edge_list(const std::filesystem::path& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  return parse_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const InteractionLog& log) {
  for (const auto& r : log.records) {
    out << r.src << ' ' << r.dst;
    if (r.timestamp) out << ' ' << *r.timestamp;
    out << '\n';
  }
}

InteractionLog canonicalize_undirected(InteractionLog log) {
  std::vector<InteractionRecord> kept;
  kept.reserve(log.records.size());
  for (auto& r : log.records) {
    if (r.src == r.dst) continue;
    if (r.dst < r.src) std::swap(r.src, r.dst);
    kept.push_back(std::move(r));
  }
  log.records = std::move(kept);
  return log;
}

LogSummary summarize(const InteractionLog& log) {
  LogSummary s;
  s.records = log.records.size();
  std::unordered_set<std::string> labels;
  std::set<std::pair<std::string, std::string>> directed, undirected;
  for (const auto& r : log.records) {
    labels.insert(r.src);
    labels.insert(r.dst);
    if (r.src == r.dst) {
      ++s.self_interactions;
      continue;
    }
    directed.emplace(r.src, r.dst);
    undirected.emplace(std::min(r.src, r.dst), std::max(r.src, r.dst));
  }
  s.distinct_labels = labels.size();
  s.distinct_directed_pairs = directed.size();
  s.distinct_undirected_pairs = undirected.size();
  return s;
}

}  // namespace lpeval
