#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lpeval {

struct InteractionRecord {
  std::string src;
  std::string dst;
  std::optional<std::int64_t> timestamp;

  friend bool operator==(const InteractionRecord&, const InteractionRecord&) = default;
};

/// Raw interaction stream in file order.
struct InteractionLog {
  std::vector<InteractionRecord> records;
  bool temporal = false;
  bool declared_directed = false;
};

struct ParseOptions {
  /// std::nullopt splits on any run of spaces, tabs or commas.
  std::optional<char> delimiter;
  bool has_timestamps = false;
  bool directed = false;
  char comment_prefix = '#';
};

/// One record per non-blank, non-comment line: `src dst [timestamp]`.
/// Throws ParseError (with 1-based line number) on a malformed line and
/// kEmptyInput when no record is found.
InteractionLog parse_edge_list(std::istream& in, const ParseOptions& options);
InteractionLog read_edge_list(const std::filesystem::path& path, const ParseOptions& options);

/// Inverse of parse_edge_list with the default (whitespace) delimiter.
void write_edge_list(std::ostream& out, const InteractionLog& log);

/// Orients every record so src <= dst (byte-wise label order) and drops
/// self-interactions. Duplicates and record order are preserved.
InteractionLog canonicalize_undirected(InteractionLog log);

struct LogSummary {
  std::size_t records = 0;
  std::size_t distinct_labels = 0;
  std::size_t distinct_directed_pairs = 0;
  std::size_t distinct_undirected_pairs = 0;
  std::size_t self_interactions = 0;
};

LogSummary summarize(const InteractionLog& log);

}  // namespace lpeval
