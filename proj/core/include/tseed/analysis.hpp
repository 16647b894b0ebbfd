#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tseed/seeding.hpp"
#include "tseed/windowing.hpp"

namespace tseed {

// ---------------------------------------------------------------------------
// Neighbour turnover
// ---------------------------------------------------------------------------

enum class TurnoverDirection { out, in };
enum class TurnoverBaseline {
  /// Compare window t with window t-1.
  previous,
  /// Compare every window with the first evaluation window (window 1 itself
  /// is compared with the initial neighbourhood).
  first,
};

TurnoverDirection parse_turnover_direction(std::string_view name);
TurnoverBaseline parse_turnover_baseline(std::string_view name);

struct TurnoverOptions {
  TurnoverDirection direction = TurnoverDirection::out;
  TurnoverBaseline baseline = TurnoverBaseline::previous;
};

/// Percentage of a seed's window-t neighbours that were not its neighbours
/// in the reference window, averaged over seeds active in t.
struct TurnoverReport {
  /// Percent in [0, 100]; empty when no seed has neighbours in that window.
  std::vector<std::optional<double>> per_window;
  /// Mean over the windows that have a value; 0 when none does.
  double mean = 0.0;
};

/// `initial` supplies the neighbourhoods used as reference for window 1,
/// typically the last learning window; without it window 1 is compared
/// against empty neighbourhoods. Throws std::invalid_argument for an empty
/// seed set.
TurnoverReport neighbor_turnover(const TemporalNetwork& evaluation, std::span<const NodeIndex> seeds,
                                 const IntervalGraph* initial = nullptr,
                                 TurnoverOptions options = {});

/// Mean and standard deviation across repeated runs (random baselines).
struct TurnoverSummary {
  std::vector<std::optional<double>> mean;
  std::vector<std::optional<double>> stddev;
  double overall_mean = 0.0;
  double overall_stddev = 0.0;
};

TurnoverSummary summarize_turnover(std::span<const TurnoverReport> runs);

// ---------------------------------------------------------------------------
// Friedman test and Nemenyi post-hoc comparison
// ---------------------------------------------------------------------------

/// Blocks (datasets) x treatments (network types) of total_influenced.
class ResultMatrix {
 public:
  /// Throws std::invalid_argument unless the matrix is complete with at
  /// least two blocks and two treatments.
  ResultMatrix(std::vector<std::string> blocks, std::vector<std::string> treatments,
               std::vector<std::vector<double>> cells);

  std::size_t block_count() const { return blocks_.size(); }
  std::size_t treatment_count() const { return treatments_.size(); }
  std::span<const std::string> blocks() const { return blocks_; }
  std::span<const std::string> treatments() const { return treatments_; }
  double at(std::size_t block, std::size_t treatment) const { return cells_[block][treatment]; }
  std::span<const double> block(std::size_t b) const { return cells_[b]; }

 private:
  std::vector<std::string> blocks_;
  std::vector<std::string> treatments_;
  std::vector<std::vector<double>> cells_;
};

/// Ranks within one block: 1 for the largest value, ties share the average
/// rank.
std::vector<double> rank_descending(std::span<const double> values);

struct FriedmanResult {
  std::vector<double> mean_ranks;
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t degrees_of_freedom = 0;
};

FriedmanResult friedman_test(const ResultMatrix& matrix);

struct PairwiseComparison {
  std::size_t first;
  std::size_t second;
  double z = 0.0;
  double p_unadjusted = 1.0;
  /// p_unadjusted times the number of pairs; above 1 unless clamped.
  double p_adjusted = 1.0;
};

/// All treatment pairs (i < j) in lexicographic order.
std::vector<PairwiseComparison> nemenyi_posthoc(const ResultMatrix& matrix, bool clamp = false);

/// Upper tail P(X >= x) of a chi-square distribution.
double chi_square_upper_tail(double x, std::size_t degrees_of_freedom);
/// Upper tail P(Z >= z) of the standard normal distribution.
double normal_upper_tail(double z);

}  // namespace tseed
