#include "tseed/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "tseed/types.hpp"

namespace tseed {
namespace {

enum class Fold { max, min, sum };

template <typename Transform>
double fold_row(std::span<const double> row, Fold fold, Transform transform) {
  double acc = fold == Fold::sum ? 0.0 : transform(row[0], 1);
  for (std::size_t l = (fold == Fold::sum ? 1 : 2); l <= row.size(); ++l) {
    const double value = transform(row[l - 1], l);
    switch (fold) {
      case Fold::max: acc = std::max(acc, value); break;
      case Fold::min: acc = std::min(acc, value); break;
      case Fold::sum: acc += value; break;
    }
  }
  return acc;
}

}  // namespace

std::string_view to_string(AggregationKind kind) {
  switch (kind) {
    case AggregationKind::max: return "max";
    case AggregationKind::min: return "min";
    case AggregationKind::sum: return "sum";
    case AggregationKind::max_log: return "maxlog";
    case AggregationKind::min_log: return "minlog";
    case AggregationKind::sum_log: return "sumlog";
    case AggregationKind::max_pow: return "maxpow";
    case AggregationKind::min_pow: return "minpow";
    case AggregationKind::sum_pow: return "sumpow";
    case AggregationKind::linear: return "lf";
    case AggregationKind::hyperbolic: return "hf";
    case AggregationKind::exponential: return "ef";
  }
  return "?";
}

AggregationKind parse_aggregation_kind(std::string_view name) {
  for (auto kind : kAllAggregations) {
    if (to_string(kind) == name) return kind;
  }
  if (name == "linear") return AggregationKind::linear;
  if (name == "hyperbolic") return AggregationKind::hyperbolic;
  if (name == "exponential") return AggregationKind::exponential;
  throw ConfigError(fmt::format(
      "unknown aggregation '{}' (expected max|min|sum|maxlog|minlog|sumlog|maxpow|minpow|sumpow|lf|hf|ef)",
      name));
}

double extended_log(double x, std::size_t base) {
  if (x == 0.0) return 0.0;
  if (base == 1) return x;
  return std::log(x) / std::log(static_cast<double>(base));
}

double aggregate_row(std::span<const double> row, AggregationKind kind, AggregationOptions options) {
  if (row.empty()) throw std::invalid_argument("aggregate_row: empty row");
  const std::size_t k = row.size();
  const auto log_t = [k](double m, std::size_t l) { return extended_log(m, k - l + 1); };
  const auto pow_t = [](double m, std::size_t l) { return std::pow(m, static_cast<double>(l)); };
  const auto id_t = [](double m, std::size_t) { return m; };

  switch (kind) {
    case AggregationKind::max: return fold_row(row, Fold::max, id_t);
    case AggregationKind::min: return fold_row(row, Fold::min, id_t);
    case AggregationKind::sum: return fold_row(row, Fold::sum, id_t);
    case AggregationKind::max_log: return fold_row(row, Fold::max, log_t);
    case AggregationKind::min_log: return fold_row(row, Fold::min, log_t);
    case AggregationKind::sum_log: return fold_row(row, Fold::sum, log_t);
    case AggregationKind::max_pow: return fold_row(row, Fold::max, pow_t);
    case AggregationKind::min_pow: return fold_row(row, Fold::min, pow_t);
    case AggregationKind::sum_pow: return fold_row(row, Fold::sum, pow_t);
    case AggregationKind::linear:
      return fold_row(row, Fold::sum, [](double m, std::size_t l) { return static_cast<double>(l) * m; });
    case AggregationKind::hyperbolic:
      return fold_row(row, Fold::sum,
                      [k](double m, std::size_t l) { return m / static_cast<double>(k - l + 1); });
    case AggregationKind::exponential:
      if (options.ef_recency) {
        return fold_row(row, Fold::sum, [k](double m, std::size_t l) {
          return m * std::exp(static_cast<double>(l) - static_cast<double>(k));
        });
      }
      return fold_row(row, Fold::sum,
                      [](double m, std::size_t l) { return m / std::exp(static_cast<double>(l)); });
  }
  return 0.0;
}

ScoreVector aggregate(const MeasureMatrix& matrix, AggregationKind kind, AggregationOptions options) {
  ScoreVector out{{matrix.nodes().begin(), matrix.nodes().end()},
                  std::vector<double>(matrix.row_count()),
                  matrix.kind(),
                  kind,
                  matrix.window_count(),
                  0};
  for (std::size_t r = 0; r < matrix.row_count(); ++r) {
    double score = aggregate_row(matrix.row(r), kind, options);
    if (!std::isfinite(score)) {
      score = score > 0 ? std::numeric_limits<double>::max() : std::numeric_limits<double>::lowest();
      ++out.clamped;
    }
    out.scores[r] = score;
  }
  return out;
}

}  // namespace tseed
