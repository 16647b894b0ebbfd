#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tseed/analysis.hpp"
#include "tseed/ingest.hpp"
#include "tseed/propagation.hpp"
#include "tseed/seeding.hpp"

namespace tseed {

/// Full experiment description. Every field has a flat `key = value` form
/// in config files, named after the matching CLI flag (see apply_setting).
struct ExperimentConfig {
  std::vector<std::filesystem::path> inputs;
  InputFormat format = InputFormat::tsv;
  std::vector<std::size_t> learning_windows{10, 5, 1};
  std::size_t evaluation_windows = 10;
  std::vector<std::string> strategies{"inexp", "outexp", "totlog", "bethyp",
                                      "clopow", "random", "randomfreq"};
  double seed_fraction = 0.05;
  std::vector<Threshold> phis{Threshold::parse("0.33"), Threshold::parse("0.5"),
                              Threshold::parse("0.75")};
  std::uint64_t rng_seed = 1;
  std::size_t random_runs = 100;
  std::filesystem::path output_dir = "results";
  bool ef_recency = false;
  bool within_window_fixpoint = false;
  bool clamp_pvalues = false;
  TurnoverOptions turnover;
  /// Also write timings.csv (wall-clock, so not reproducible byte for byte).
  bool timings = false;

  /// Throws ConfigError.
  void validate() const;
};

/// Sets one key. List-valued keys take comma separated values and replace
/// the current list. Throws ConfigError for unknown keys or bad values.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Reads `key = value` lines; `#` starts a comment, blank lines are skipped.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base = {});

struct DatasetSummary {
  std::string label;
  std::size_t nodes = 0;
  std::size_t events = 0;
  std::size_t learning_events = 0;
  std::size_t evaluation_events = 0;
  /// |V0|, the nodes seen in the learning half.
  std::size_t candidate_nodes = 0;
  ParseReport parse;
};

/// One (dataset, network type, strategy, phi) outcome. Random strategies
/// report means over all runs; `trace` is the first run.
struct RunRecord {
  std::string dataset;
  std::size_t learning_windows = 0;
  std::string strategy;
  Threshold phi = Threshold::parse("1");
  std::size_t runs = 1;
  std::size_t seed_count = 0;
  double total_influenced = 0.0;
  double total_influenced_excluding_seeds = 0.0;
  double total_stddev = 0.0;
  std::vector<double> cumulative_counts;
  std::string seed_digest;
  double duration_ms = 0.0;
  PropagationTrace trace;
  std::shared_ptr<const NodeTable> nodes;

  std::string network_type() const { return "TSN" + std::to_string(learning_windows); }
};

struct TurnoverRecord {
  std::string dataset;
  std::size_t learning_windows = 0;
  std::string strategy;
  std::size_t runs = 1;
  TurnoverSummary summary;

  std::string network_type() const { return "TSN" + std::to_string(learning_windows); }
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<DatasetSummary> datasets;
  std::vector<RunRecord> records;
  std::vector<TurnoverRecord> turnover;
  /// Non-fatal diagnostics, such as clamped overflowing scores.
  std::vector<std::string> warnings;
};

/// ingest -> split -> learning networks -> measures -> aggregation -> seeds
/// -> propagation over the evaluation network -> turnover. Deterministic
/// for a fixed config. Errors carry the failing context in their message.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes summary.csv, friedman.csv, nemenyi.csv, turnover.csv and one
/// trace_<dataset>_<network>_<strategy>_<phi>.json per record (plus
/// timings.csv when enabled). Returns the written paths.
std::vector<std::filesystem::path> emit_report(const ExperimentResult& result,
                                               const std::filesystem::path& directory);

/// Hex FNV-1a digest of the given ids, in order.
std::string seed_digest(std::span<const std::string> ids);

}  // namespace tseed
