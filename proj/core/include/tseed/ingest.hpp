#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tseed/types.hpp"

namespace tseed {

/// Bidirectional map between opaque node ids and dense indices.
///
/// Indices follow a canonical order of the ids (integer ids numerically,
/// then all other ids lexicographically), so the same set of ids always
/// yields the same indices regardless of input line order.
class NodeTable {
 public:
  NodeTable() = default;

  /// Builds a table from distinct ids; they are reordered canonically.
  static NodeTable from_ids(std::vector<std::string> ids);

  std::size_t size() const { return names_.size(); }
  const std::string& name(NodeIndex index) const { return names_.at(index); }
  std::optional<NodeIndex> find(std::string_view id) const;
  std::span<const std::string> names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeIndex> index_;
};

/// Canonical id ordering used by NodeTable.
bool canonical_id_less(std::string_view a, std::string_view b);

struct Event {
  NodeIndex source;
  NodeIndex target;
  Timestamp time;

  friend bool operator==(const Event&, const Event&) = default;
};

struct TimeSpan {
  Timestamp begin;
  Timestamp end;  // inclusive

  Timestamp length() const { return end - begin; }
  bool contains(Timestamp t) const { return t >= begin && t <= end; }
};

/// Immutable, time-ordered list of directed contact events.
///
/// Events are sorted by (time, source, target). The span is always the
/// closed range between the first and the last timestamp.
class EventLog {
 public:
  /// Throws DataError when `events` is empty or references unknown nodes.
  EventLog(std::vector<Event> events, std::shared_ptr<const NodeTable> nodes);

  std::span<const Event> events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  TimeSpan span() const { return span_; }
  const NodeTable& nodes() const { return *nodes_; }
  const std::shared_ptr<const NodeTable>& node_table() const { return nodes_; }

 private:
  std::vector<Event> events_;
  std::shared_ptr<const NodeTable> nodes_;
  TimeSpan span_{};
};

enum class InputFormat {
  /// `source target timestamp [ignored...]`
  tsv,
  /// KONECT `out.*` files: `source target [weight [timestamp ...]]`. With
  /// four or more columns the timestamp is the fourth one.
  konect,
};

InputFormat parse_input_format(std::string_view name);

struct ParseReport {
  std::size_t lines = 0;
  std::size_t comments = 0;
  std::size_t malformed = 0;
  std::size_t self_loops = 0;
  std::size_t events = 0;
  /// 1-based line numbers of the first few malformed lines.
  std::vector<std::size_t> malformed_examples;
};

struct ParsedLog {
  EventLog log;
  ParseReport report;
};

/// Parses a whitespace separated edge list. Comment lines start with `%`
/// or `#`. Self-loops are dropped, malformed lines are skipped; both are
/// counted in the report. Throws DataError if no event survives.
ParsedLog parse_event_log(std::istream& in, InputFormat format = InputFormat::tsv);
ParsedLog load_event_log(const std::filesystem::path& path,
                         InputFormat format = InputFormat::tsv);

/// Writes `source target timestamp` lines that parse back to the same log.
void write_event_log(std::ostream& out, const EventLog& log);

struct SplitLog {
  EventLog learning;
  EventLog evaluation;
};

/// Splits at the exact midpoint b of the span: learning holds [begin, b),
/// evaluation [b, end]. Both halves share the parent's node table.
SplitLog split_halves(const EventLog& log);

}  // namespace tseed
