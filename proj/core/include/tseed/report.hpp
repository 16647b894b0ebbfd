#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tseed/analysis.hpp"
#include "tseed/experiment.hpp"

namespace tseed {

/// One row of summary.csv.
struct SummaryRow {
  std::string dataset;
  std::string network_type;
  std::string strategy;
  std::string phi;
  double total_influenced = 0.0;
  double total_influenced_excluding_seeds = 0.0;
  double total_stddev = 0.0;
  std::size_t runs = 1;
  std::size_t seed_count = 0;
  std::string seed_digest;
  std::vector<double> cumulative_counts;
};

inline constexpr const char* kSummaryHeader =
    "dataset,network_type,strategy,phi,total_influenced,total_influenced_excluding_seeds,"
    "total_stddev,runs,seed_count,seed_digest,cumulative_counts";

std::vector<SummaryRow> summary_rows(const ExperimentResult& result);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
/// Throws DataError on malformed input.
std::vector<SummaryRow> read_summary_csv(std::istream& in);

/// Friedman + Nemenyi for one (strategy, phi) over datasets x network types.
struct StrategyStats {
  std::string strategy;
  std::string phi;
  std::vector<std::string> datasets;
  std::vector<std::string> network_types;
  FriedmanResult friedman;
  std::vector<PairwiseComparison> comparisons;
};

/// Groups rows by (strategy, phi), in first-appearance order. Groups with
/// fewer than two datasets or network types, or with missing cells, are
/// listed in `skipped` instead.
struct StatsOutcome {
  std::vector<StrategyStats> tables;
  std::vector<std::string> skipped;
};

StatsOutcome compute_stats(const std::vector<SummaryRow>& rows, bool clamp_pvalues);

void write_friedman_csv(std::ostream& out, const StatsOutcome& stats);
void write_nemenyi_csv(std::ostream& out, const StatsOutcome& stats);
void write_turnover_csv(std::ostream& out, const std::vector<TurnoverRecord>& records);
void write_trace_json(std::ostream& out, const RunRecord& record);

/// Fixed-format number text used by every CSV writer (up to 10 significant
/// digits, no trailing zeros).
std::string format_number(double value);

}  // namespace tseed
