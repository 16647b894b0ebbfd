#include "tseed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "tseed/types.hpp"

namespace tseed {
namespace {

std::vector<NodeIndex> neighbourhood(const IntervalGraph& g, NodeIndex node, TurnoverDirection dir) {
  return dir == TurnoverDirection::out ? g.out_neighbors(node) : g.in_neighbors(node);
}

/// |current \ reference| / |current| in percent; both sorted, current non-empty.
double exchanged_percent(const std::vector<NodeIndex>& current, const std::vector<NodeIndex>& reference) {
  std::vector<NodeIndex> fresh;
  std::set_difference(current.begin(), current.end(), reference.begin(), reference.end(),
                      std::back_inserter(fresh));
  return 100.0 * static_cast<double>(fresh.size()) / static_cast<double>(current.size());
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return out;
}

}  // namespace

TurnoverDirection parse_turnover_direction(std::string_view name) {
  if (name == "out") return TurnoverDirection::out;
  if (name == "in") return TurnoverDirection::in;
  throw ConfigError(fmt::format("unknown turnover direction '{}' (expected in|out)", name));
}

TurnoverBaseline parse_turnover_baseline(std::string_view name) {
  if (name == "previous") return TurnoverBaseline::previous;
  if (name == "first") return TurnoverBaseline::first;
  throw ConfigError(fmt::format("unknown turnover baseline '{}' (expected previous|first)", name));
}

TurnoverReport neighbor_turnover(const TemporalNetwork& evaluation, std::span<const NodeIndex> seeds,
                                 const IntervalGraph* initial, TurnoverOptions options) {
  if (seeds.empty()) throw std::invalid_argument("neighbor_turnover: empty seed set");
  const auto k = evaluation.window_count();

  // neighbourhoods[t][i]: seed i in window t, t = 0 is the initial reference.
  std::vector<std::vector<std::vector<NodeIndex>>> hoods(k + 1, std::vector<std::vector<NodeIndex>>(seeds.size()));
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (initial) hoods[0][i] = neighbourhood(*initial, seeds[i], options.direction);
    for (std::size_t t = 1; t <= k; ++t) {
      hoods[t][i] = neighbourhood(evaluation.window(t), seeds[i], options.direction);
    }
  }

  TurnoverReport report;
  report.per_window.resize(k);
  double sum = 0.0;
  std::size_t defined = 0;
  for (std::size_t t = 1; t <= k; ++t) {
    const std::size_t ref = (options.baseline == TurnoverBaseline::previous || t == 1) ? t - 1 : 1;
    double window_sum = 0.0;
    std::size_t active = 0;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      if (hoods[t][i].empty()) continue;
      window_sum += exchanged_percent(hoods[t][i], hoods[ref][i]);
      ++active;
    }
    if (active > 0) {
      report.per_window[t - 1] = window_sum / static_cast<double>(active);
      sum += *report.per_window[t - 1];
      ++defined;
    }
  }
  report.mean = defined > 0 ? sum / static_cast<double>(defined) : 0.0;
  return report;
}

TurnoverSummary summarize_turnover(std::span<const TurnoverReport> runs) {
  TurnoverSummary out;
  if (runs.empty()) return out;
  const auto k = runs.front().per_window.size();
  out.mean.resize(k);
  out.stddev.resize(k);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<double> xs;
    for (const auto& r : runs) {
      if (t < r.per_window.size() && r.per_window[t]) xs.push_back(*r.per_window[t]);
    }
    if (xs.empty()) continue;
    const auto ms = mean_std(xs);
    out.mean[t] = ms.mean;
    out.stddev[t] = ms.stddev;
  }
  std::vector<double> means;
  for (const auto& r : runs) means.push_back(r.mean);
  const auto ms = mean_std(means);
  out.overall_mean = ms.mean;
  out.overall_stddev = ms.stddev;
  return out;
}

ResultMatrix::ResultMatrix(std::vector<std::string> blocks, std::vector<std::string> treatments,
                           std::vector<std::vector<double>> cells)
    : blocks_(std::move(blocks)), treatments_(std::move(treatments)), cells_(std::move(cells)) {
  if (blocks_.size() < 2 || treatments_.size() < 2) {
    throw std::invalid_argument(fmt::format("result matrix needs at least 2 blocks and 2 treatments, got {}x{}",
                                            blocks_.size(), treatments_.size()));
  }
  if (cells_.size() != blocks_.size()) throw std::invalid_argument("result matrix: row count mismatch");
  for (const auto& row : cells_) {
    if (row.size() != treatments_.size()) throw std::invalid_argument("result matrix: incomplete row");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("result matrix: non-finite cell");
    }
  }
}

std::vector<double> rank_descending(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 share ranks i+1..j.
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t p = i; p < j; ++p) ranks[order[p]] = shared;
    i = j;
  }
  return ranks;
}

FriedmanResult friedman_test(const ResultMatrix& matrix) {
  const auto n = matrix.block_count();
  const auto k = matrix.treatment_count();
  FriedmanResult out;
  out.degrees_of_freedom = k - 1;
  out.mean_ranks.assign(k, 0.0);

  bool all_tied = true;
  for (std::size_t b = 0; b < n; ++b) {
    const auto row = matrix.block(b);
    if (std::adjacent_find(row.begin(), row.end(), std::not_equal_to<>()) != row.end()) all_tied = false;
    const auto ranks = rank_descending(row);
    for (std::size_t j = 0; j < k; ++j) out.mean_ranks[j] += ranks[j];
  }
  for (auto& r : out.mean_ranks) r /= static_cast<double>(n);
  if (all_tied) return out;

  const double kd = static_cast<double>(k);
  double sum_sq = 0.0;
  for (double r : out.mean_ranks) sum_sq += r * r;
  const double stat = 12.0 * static_cast<double>(n) / (kd * (kd + 1.0)) *
                      (sum_sq - kd * (kd + 1.0) * (kd + 1.0) / 4.0);
  out.statistic = std::max(0.0, stat);
  out.p_value = chi_square_upper_tail(out.statistic, out.degrees_of_freedom);
  return out;
}

std::vector<PairwiseComparison> nemenyi_posthoc(const ResultMatrix& matrix, bool clamp) {
  const auto friedman = friedman_test(matrix);
  const double n = static_cast<double>(matrix.block_count());
  const double k = static_cast<double>(matrix.treatment_count());
  const double se = std::sqrt(k * (k + 1.0) / (6.0 * n));
  const double pairs = k * (k - 1.0) / 2.0;

  std::vector<PairwiseComparison> out;
  for (std::size_t i = 0; i < matrix.treatment_count(); ++i) {
    for (std::size_t j = i + 1; j < matrix.treatment_count(); ++j) {
      PairwiseComparison c{i, j};
      c.z = std::abs(friedman.mean_ranks[i] - friedman.mean_ranks[j]) / se;
      c.p_unadjusted = 2.0 * normal_upper_tail(c.z);
      c.p_adjusted = c.p_unadjusted * pairs;
      if (clamp) c.p_adjusted = std::min(1.0, c.p_adjusted);
      out.push_back(c);
    }
  }
  return out;
}

double chi_square_upper_tail(double x, std::size_t degrees_of_freedom) {
  if (degrees_of_freedom == 0) throw std::invalid_argument("chi-square needs at least 1 degree of freedom");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(static_cast<double>(degrees_of_freedom) / 2.0, x / 2.0);
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace tseed
