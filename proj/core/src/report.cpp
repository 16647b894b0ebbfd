#include "tseed/report.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace tseed {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    if (!field.empty() && field.back() == '\r') field.pop_back();
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DataError(fmt::format("summary line {}: '{}' is not a number", line, text));
  }
}

std::string file_token(std::string text) {
  for (auto& c : text) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' ||
                    c == '-';
    if (!ok) c = '-';
  }
  return text;
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

template <typename Writer>
std::filesystem::path write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write '{}'", path.string()));
  writer(out);
  out.flush();
  if (!out) throw DataError(fmt::format("error while writing '{}'", path.string()));
  return path;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  return fmt::format("{:.10g}", value);
}

std::vector<SummaryRow> summary_rows(const ExperimentResult& result) {
  std::vector<SummaryRow> rows;
  rows.reserve(result.records.size());
  for (const auto& r : result.records) {
    rows.push_back({r.dataset, r.network_type(), r.strategy, r.phi.str(), r.total_influenced,
                    r.total_influenced_excluding_seeds, r.total_stddev, r.runs, r.seed_count, r.seed_digest,
                    r.cumulative_counts});
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    std::string cumulative;
    for (std::size_t i = 0; i < r.cumulative_counts.size(); ++i) {
      if (i > 0) cumulative += ';';
      cumulative += format_number(r.cumulative_counts[i]);
    }
    out << r.dataset << ',' << r.network_type << ',' << r.strategy << ',' << r.phi << ','
        << format_number(r.total_influenced) << ',' << format_number(r.total_influenced_excluding_seeds) << ','
        << format_number(r.total_stddev) << ',' << r.runs << ',' << r.seed_count << ',' << r.seed_digest << ','
        << cumulative << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("summary: empty input");
  const auto header = split_csv_line(line);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  for (const char* required : {"dataset", "network_type", "strategy", "phi", "total_influenced"}) {
    if (!column.contains(required)) throw DataError(fmt::format("summary: missing column '{}'", required));
  }

  std::vector<SummaryRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv_line(line);
    auto cell = [&](const char* name) -> std::optional<std::string> {
      auto it = column.find(name);
      if (it == column.end()) return std::nullopt;
      if (it->second >= cells.size()) throw DataError(fmt::format("summary line {}: too few columns", number));
      return cells[it->second];
    };
    SummaryRow row;
    row.dataset = *cell("dataset");
    row.network_type = *cell("network_type");
    row.strategy = *cell("strategy");
    row.phi = *cell("phi");
    row.total_influenced = to_double(*cell("total_influenced"), number);
    if (auto v = cell("total_influenced_excluding_seeds"); v && !v->empty()) {
      row.total_influenced_excluding_seeds = to_double(*v, number);
    }
    if (auto v = cell("total_stddev"); v && !v->empty()) row.total_stddev = to_double(*v, number);
    if (auto v = cell("runs"); v && !v->empty()) row.runs = static_cast<std::size_t>(to_double(*v, number));
    if (auto v = cell("seed_count"); v && !v->empty()) {
      row.seed_count = static_cast<std::size_t>(to_double(*v, number));
    }
    if (auto v = cell("seed_digest")) row.seed_digest = *v;
    if (auto v = cell("cumulative_counts"); v && !v->empty()) {
      std::istringstream parts(*v);
      std::string part;
      while (std::getline(parts, part, ';')) row.cumulative_counts.push_back(to_double(part, number));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

StatsOutcome compute_stats(const std::vector<SummaryRow>& rows, bool clamp_pvalues) {
  struct Group {
    std::string strategy;
    std::string phi;
    std::vector<std::string> datasets;
    std::vector<std::string> network_types;
    std::map<std::pair<std::string, std::string>, double> cells;
  };
  std::vector<Group> groups;
  auto add_unique = [](std::vector<std::string>& list, const std::string& value) {
    if (std::find(list.begin(), list.end(), value) == list.end()) list.push_back(value);
  };
  for (const auto& r : rows) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const Group& g) { return g.strategy == r.strategy && g.phi == r.phi; });
    if (it == groups.end()) {
      groups.push_back({r.strategy, r.phi, {}, {}, {}});
      it = std::prev(groups.end());
    }
    add_unique(it->datasets, r.dataset);
    add_unique(it->network_types, r.network_type);
    it->cells[{r.dataset, r.network_type}] = r.total_influenced;
  }

  StatsOutcome out;
  for (auto& g : groups) {
    const auto name = fmt::format("{} phi={}", g.strategy, g.phi);
    if (g.datasets.size() < 2 || g.network_types.size() < 2) {
      out.skipped.push_back(fmt::format("{}: needs at least 2 datasets and 2 network types (have {} x {})", name,
                                        g.datasets.size(), g.network_types.size()));
      continue;
    }
    std::vector<std::vector<double>> cells;
    bool complete = true;
    for (const auto& d : g.datasets) {
      auto& row = cells.emplace_back();
      for (const auto& t : g.network_types) {
        auto it = g.cells.find({d, t});
        if (it == g.cells.end()) {
          complete = false;
          break;
        }
        row.push_back(it->second);
      }
      if (!complete) break;
    }
    if (!complete) {
      out.skipped.push_back(fmt::format("{}: incomplete dataset x network type matrix", name));
      continue;
    }
    const ResultMatrix matrix(g.datasets, g.network_types, std::move(cells));
    out.tables.push_back({g.strategy, g.phi, g.datasets, g.network_types, friedman_test(matrix),
                          nemenyi_posthoc(matrix, clamp_pvalues)});
  }
  return out;
}

void write_friedman_csv(std::ostream& out, const StatsOutcome& stats) {
  out << "strategy,phi,network_type,mean_rank,friedman_p\n";
  for (const auto& t : stats.tables) {
    for (std::size_t j = 0; j < t.network_types.size(); ++j) {
      out << t.strategy << ',' << t.phi << ',' << t.network_types[j] << ','
          << format_number(t.friedman.mean_ranks[j]) << ',' << format_number(t.friedman.p_value) << '\n';
    }
  }
}

void write_nemenyi_csv(std::ostream& out, const StatsOutcome& stats) {
  out << "strategy,phi,pair,adjusted_p\n";
  for (const auto& t : stats.tables) {
    for (const auto& c : t.comparisons) {
      out << t.strategy << ',' << t.phi << ',' << t.network_types[c.first] << " vs " << t.network_types[c.second]
          << ',' << format_number(c.p_adjusted) << '\n';
    }
  }
}

void write_turnover_csv(std::ostream& out, const std::vector<TurnoverRecord>& records) {
  out << "dataset,network_type,strategy,runs,window,turnover_pct,stddev_pct\n";
  for (const auto& r : records) {
    const auto prefix = fmt::format("{},{},{},{},", r.dataset, r.network_type(), r.strategy, r.runs);
    for (std::size_t t = 0; t < r.summary.mean.size(); ++t) {
      out << prefix << (t + 1) << ',' << optional_cell(r.summary.mean[t]) << ','
          << optional_cell(r.summary.stddev[t]) << '\n';
    }
    out << prefix << "mean," << format_number(r.summary.overall_mean) << ','
        << format_number(r.summary.overall_stddev) << '\n';
  }
}

void write_trace_json(std::ostream& out, const RunRecord& record) {
  using Json = nlohmann::ordered_json;
  const auto& names = *record.nodes;
  auto id_list = [&](const std::vector<NodeIndex>& nodes) {
    Json list = Json::array();
    for (auto n : nodes) list.push_back(names.name(n));
    return list;
  };
  Json doc;
  doc["dataset"] = record.dataset;
  doc["network_type"] = record.network_type();
  doc["strategy"] = record.strategy;
  doc["phi"] = record.phi.str();
  doc["runs"] = record.runs;
  doc["trace_run"] = 0;
  doc["seeds"] = id_list(record.trace.seeds);
  doc["total_influenced"] = record.trace.total_influenced();
  doc["total_influenced_excluding_seeds"] = record.trace.total_influenced_excluding_seeds();
  Json windows = Json::array();
  for (std::size_t k = 0; k < record.trace.influenced_per_window.size(); ++k) {
    windows.push_back({{"window", k + 1},
                       {"newly_influenced", id_list(record.trace.influenced_per_window[k])},
                       {"cumulative", record.trace.cumulative_counts[k + 1]}});
  }
  doc["windows"] = std::move(windows);
  doc["cumulative_counts"] = record.trace.cumulative_counts;
  doc["mean_total_influenced"] = record.total_influenced;
  out << doc.dump(2) << '\n';
}

std::vector<std::filesystem::path> emit_report(const ExperimentResult& result,
                                               const std::filesystem::path& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw DataError(fmt::format("cannot create '{}': {}", directory.string(), ec.message()));

  std::vector<std::filesystem::path> written;
  const auto rows = summary_rows(result);
  written.push_back(write_file(directory / "summary.csv", [&](std::ostream& o) { write_summary_csv(o, rows); }));

  const auto stats = compute_stats(rows, result.config.clamp_pvalues);
  written.push_back(write_file(directory / "friedman.csv", [&](std::ostream& o) { write_friedman_csv(o, stats); }));
  written.push_back(write_file(directory / "nemenyi.csv", [&](std::ostream& o) { write_nemenyi_csv(o, stats); }));
  written.push_back(
      write_file(directory / "turnover.csv", [&](std::ostream& o) { write_turnover_csv(o, result.turnover); }));

  for (const auto& r : result.records) {
    const auto name = fmt::format("trace_{}_{}_{}_{}.json", file_token(r.dataset), r.network_type(),
                                  file_token(r.strategy), file_token(r.phi.str()));
    written.push_back(write_file(directory / name, [&](std::ostream& o) { write_trace_json(o, r); }));
  }

  if (result.config.timings) {
    written.push_back(write_file(directory / "timings.csv", [&](std::ostream& o) {
      o << "dataset,network_type,strategy,phi,duration_ms\n";
      for (const auto& r : result.records) {
        o << r.dataset << ',' << r.network_type() << ',' << r.strategy << ',' << r.phi.str() << ','
          << fmt::format("{:.3f}", r.duration_ms) << '\n';
      }
    }));
  }
  return written;
}

}  // namespace tseed
