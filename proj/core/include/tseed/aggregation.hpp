#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tseed/measures.hpp"

namespace tseed {

/// Time aggregations collapsing a row m^1..m^K into one score.
enum class AggregationKind {
  max,          // max_l m^l
  min,          // min_l m^l
  sum,          // sum_l m^l
  max_log,      // max_l log_{K-l+1} m^l
  min_log,      // min_l log_{K-l+1} m^l
  sum_log,      // sum_l log_{K-l+1} m^l
  max_pow,      // max_l (m^l)^l
  min_pow,      // min_l (m^l)^l
  sum_pow,      // sum_l (m^l)^l
  linear,       // sum_l l * m^l
  hyperbolic,   // sum_l m^l / (K-l+1)
  exponential,  // sum_l m^l / e^l   (or e^(l-K) with ef_recency)
};

inline constexpr AggregationKind kAllAggregations[] = {
    AggregationKind::max,     AggregationKind::min,        AggregationKind::sum,
    AggregationKind::max_log, AggregationKind::min_log,    AggregationKind::sum_log,
    AggregationKind::max_pow, AggregationKind::min_pow,    AggregationKind::sum_pow,
    AggregationKind::linear,  AggregationKind::hyperbolic, AggregationKind::exponential,
};

std::string_view to_string(AggregationKind kind);
/// `max|min|sum|maxlog|minlog|sumlog|maxpow|minpow|sumpow|lf|hf|ef`
AggregationKind parse_aggregation_kind(std::string_view name);

struct AggregationOptions {
  /// Weight window l by e^(l-K) instead of e^-l, so the most recent window
  /// counts most.
  bool ef_recency = false;
};

/// Logarithm with the domain extensions used by the *_log aggregations:
/// log_b(0) = 0 for every b, log_1(x) = x. Negative logs for 0 < x < 1 are
/// kept as they are.
double extended_log(double x, std::size_t base);

/// Aggregates one row. May return +inf when a power overflows; aggregate()
/// clamps such scores.
double aggregate_row(std::span<const double> row, AggregationKind kind,
                     AggregationOptions options = {});

struct ScoreVector {
  std::vector<NodeIndex> nodes;
  std::vector<double> scores;
  MeasureKind measure;
  AggregationKind aggregation;
  std::size_t window_count;
  /// Number of scores that overflowed and were clamped to the largest
  /// finite double.
  std::size_t clamped = 0;
};

ScoreVector aggregate(const MeasureMatrix& matrix, AggregationKind kind,
                      AggregationOptions options = {});

}  // namespace tseed
