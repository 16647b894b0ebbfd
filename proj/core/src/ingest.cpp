#include "tseed/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

namespace tseed {
namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string_view strip_leading_zeros(std::string_view s) {
  const auto first = s.find_first_not_of('0');
  return first == std::string_view::npos ? s.substr(s.size() - 1) : s.substr(first);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

/// Splits on runs of whitespace; returns at most `limit` fields.
std::size_t split_fields(std::string_view line, std::string_view* fields, std::size_t limit) {
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < line.size() && count < limit) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    fields[count++] = line.substr(start, i - start);
  }
  return count;
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  Timestamp value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

bool event_less(const Event& a, const Event& b) {
  if (a.time != b.time) return a.time < b.time;
  if (a.source != b.source) return a.source < b.source;
  return a.target < b.target;
}

}  // namespace

bool canonical_id_less(std::string_view a, std::string_view b) {
  const bool na = all_digits(a);
  const bool nb = all_digits(b);
  if (na != nb) return na;
  if (na) {
    const auto sa = strip_leading_zeros(a);
    const auto sb = strip_leading_zeros(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    if (sa != sb) return sa < sb;
  }
  return a < b;
}

NodeTable NodeTable::from_ids(std::vector<std::string> ids) {
  std::sort(ids.begin(), ids.end(), canonical_id_less);
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw std::invalid_argument("NodeTable: duplicate node id");
  }
  NodeTable table;
  table.index_.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    table.index_.emplace(ids[i], static_cast<NodeIndex>(i));
  }
  table.names_ = std::move(ids);
  return table;
}

std::optional<NodeIndex> NodeTable::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EventLog::EventLog(std::vector<Event> events, std::shared_ptr<const NodeTable> nodes)
    : events_(std::move(events)), nodes_(std::move(nodes)) {
  if (!nodes_) throw std::invalid_argument("EventLog: missing node table");
  if (events_.empty()) throw DataError("event log is empty");
  const auto n = nodes_->size();
  for (const auto& e : events_) {
    if (e.source >= n || e.target >= n) throw DataError("event references an unknown node index");
  }
  std::stable_sort(events_.begin(), events_.end(), event_less);
  span_ = {events_.front().time, events_.back().time};
}

InputFormat parse_input_format(std::string_view name) {
  if (name == "tsv") return InputFormat::tsv;
  if (name == "konect") return InputFormat::konect;
  throw ConfigError(fmt::format("unknown input format '{}' (expected konect or tsv)", name));
}

ParsedLog parse_event_log(std::istream& in, InputFormat format) {
  struct RawEvent {
    std::uint32_t source;
    std::uint32_t target;
    Timestamp time;
  };

  ParseReport report;
  std::unordered_map<std::string, std::uint32_t> first_seen;
  std::vector<std::string> ids;
  std::vector<RawEvent> raw;

  auto intern = [&](std::string_view id) {
    auto [it, inserted] = first_seen.try_emplace(std::string(id), static_cast<std::uint32_t>(ids.size()));
    if (inserted) ids.emplace_back(id);
    return it->second;
  };
  auto malformed = [&]() {
    ++report.malformed;
    if (report.malformed_examples.size() < 8) report.malformed_examples.push_back(report.lines);
  };

  std::string line;
  std::string_view fields[4];
  while (std::getline(in, line)) {
    ++report.lines;
    std::string_view view(line);
    const auto first = std::find_if_not(view.begin(), view.end(), is_space);
    if (first == view.end()) continue;
    if (*first == '%' || *first == '#') {
      ++report.comments;
      continue;
    }
    const auto count = split_fields(view, fields, 4);
    if (count < 3) {
      malformed();
      continue;
    }
    const auto ts_field = (format == InputFormat::konect && count == 4) ? fields[3] : fields[2];
    const auto ts = parse_timestamp(ts_field);
    if (!ts) {
      malformed();
      continue;
    }
    if (fields[0] == fields[1]) {
      ++report.self_loops;
      continue;
    }
    const auto s = intern(fields[0]);
    const auto t = intern(fields[1]);
    raw.push_back({s, t, *ts});
  }
  if (in.bad()) throw DataError("read error while parsing event log");
  if (raw.empty()) {
    throw DataError(fmt::format("no usable events ({} lines, {} malformed, {} self-loops)",
                                report.lines, report.malformed, report.self_loops));
  }

  // Relabel first-seen ids into the canonical order.
  auto table = std::make_shared<NodeTable>(NodeTable::from_ids(ids));
  std::vector<NodeIndex> relabel(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) relabel[i] = *table->find(ids[i]);

  std::vector<Event> events;
  events.reserve(raw.size());
  for (const auto& r : raw) events.push_back({relabel[r.source], relabel[r.target], r.time});
  report.events = events.size();
  return {EventLog(std::move(events), std::move(table)), std::move(report)};
}

ParsedLog load_event_log(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open '{}'", path.string()));
  try {
    return parse_event_log(in, format);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_event_log(std::ostream& out, const EventLog& log) {
  const auto& nodes = log.nodes();
  for (const auto& e : log.events()) {
    out << nodes.name(e.source) << ' ' << nodes.name(e.target) << ' ' << e.time << '\n';
  }
}

SplitLog split_halves(const EventLog& log) {
  const auto span = log.span();
  if (span.end <= span.begin) {
    throw DataError("cannot split an event log whose span has zero length");
  }
  // t < begin + (end - begin) / 2  <=>  2t < begin + end, evaluated without
  // overflow by comparing offsets from begin.
  const auto length = static_cast<std::uint64_t>(span.end - span.begin);
  std::vector<Event> learning;
  std::vector<Event> evaluation;
  for (const auto& e : log.events()) {
    const auto offset = static_cast<std::uint64_t>(e.time - span.begin);
    if (offset < length - offset) {
      learning.push_back(e);
    } else {
      evaluation.push_back(e);
    }
  }
  if (learning.empty() || evaluation.empty()) {
    throw DataError(fmt::format("split at the midpoint of [{}, {}] leaves the {} half empty",
                                span.begin, span.end, learning.empty() ? "learning" : "evaluation"));
  }
  return {EventLog(std::move(learning), log.node_table()),
          EventLog(std::move(evaluation), log.node_table())};
}

}  // namespace tseed
