#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "tseed/aggregation.hpp"
#include "../support/oracles.hpp"

namespace tseed {
namespace {

double agg(std::vector<double> row, AggregationKind kind, bool recency = false) {
  return aggregate_row(row, kind, {recency});
}

TEST(Aggregate, FrozenExamples) {
  // 2/e + 4/e^2 + 6/e^3, evaluated with 40-digit arithmetic
  EXPECT_NEAR(agg({2, 4, 6}, AggregationKind::exponential), 1.5758224254965190686, 1e-12);
  EXPECT_DOUBLE_EQ(agg({3, 2, 1}, AggregationKind::hyperbolic), 3.0);
  EXPECT_DOUBLE_EQ(agg({1, 2, 3}, AggregationKind::linear), 14.0);
  EXPECT_DOUBLE_EQ(agg({7}, AggregationKind::sum), 7.0);
  // log_2(8) + log_1(9) with log_1 as identity
  EXPECT_DOUBLE_EQ(agg({8, 9}, AggregationKind::sum_log), 12.0);
  EXPECT_DOUBLE_EQ(agg({3, 2}, AggregationKind::sum_pow), 7.0);
}

TEST(Aggregate, SingleWindowCollapse) {
  const double m = 7.5;
  for (auto kind : kAllAggregations) {
    const double expected = kind == AggregationKind::exponential ? m / std::exp(1.0) : m;
    EXPECT_DOUBLE_EQ(agg({m}, kind), expected) << to_string(kind);
  }
  EXPECT_DOUBLE_EQ(agg({m}, AggregationKind::exponential, true), m);
}

TEST(ExtendedLog, DomainExtensions) {
  EXPECT_EQ(extended_log(0.0, 1), 0.0);
  EXPECT_EQ(extended_log(0.0, 5), 0.0);
  EXPECT_EQ(extended_log(9.0, 1), 9.0);
  EXPECT_DOUBLE_EQ(extended_log(8.0, 2), 3.0);
  EXPECT_DOUBLE_EQ(extended_log(0.5, 2), -1.0);
}

TEST(Aggregate, MinIncludesAbsentWindows) {
  EXPECT_EQ(agg({0, 5, 3}, AggregationKind::min), 0.0);
  EXPECT_EQ(agg({0, 5, 3}, AggregationKind::min_log), 0.0);
  EXPECT_EQ(agg({0, 5, 3}, AggregationKind::min_pow), 0.0);
}

TEST(Aggregate, MatchesFormulaOracle) {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<std::size_t> length(1, 10);
  std::uniform_real_distribution<double> value(0.0, 1e6);
  std::bernoulli_distribution absent(0.2);
  std::bernoulli_distribution sub_unit(0.1);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> row(length(rng));
    for (auto& v : row) {
      v = absent(rng) ? 0.0 : value(rng);
      if (sub_unit(rng)) v /= 1e6;
    }
    for (auto kind : kAllAggregations) {
      for (bool recency : {false, true}) {
        ASSERT_LE(oracle::relative_error(agg(row, kind, recency), oracle::aggregation(row, kind, recency)), 1e-12)
            << to_string(kind) << " trial " << trial;
      }
    }
  }
}

TEST(Aggregate, Monotone) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> value(0.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> row(1 + trial % 10);
    for (auto& v : row) v = value(rng);
    auto bumped = row;
    bumped[trial % row.size()] += 1.0 + value(rng);
    for (auto kind : {AggregationKind::sum, AggregationKind::linear, AggregationKind::hyperbolic,
                      AggregationKind::exponential, AggregationKind::sum_pow}) {
      ASSERT_LE(agg(row, kind), agg(bumped, kind)) << to_string(kind);
    }
  }
}

TEST(Aggregate, TimeAwareness) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> value(0.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> row(2 + trial % 9);
    for (auto& v : row) v = value(rng);
    auto reversed = std::vector<double>(row.rbegin(), row.rend());
    if (reversed == row) continue;
    for (auto kind : {AggregationKind::linear, AggregationKind::hyperbolic, AggregationKind::exponential}) {
      ASSERT_NE(agg(row, kind), agg(reversed, kind)) << to_string(kind);
    }
    for (auto kind : {AggregationKind::max, AggregationKind::min}) {
      ASSERT_EQ(agg(row, kind), agg(reversed, kind));
    }
    ASSERT_LE(oracle::relative_error(agg(row, AggregationKind::sum), agg(reversed, AggregationKind::sum)), 1e-14);
  }
}

TEST(Aggregate, RecencyDirection) {
  // Moving mass one window later: LF and HF increase, literal EF decreases,
  // recency EF increases.
  for (std::size_t k = 2; k <= 10; ++k) {
    for (std::size_t l = 0; l + 1 < k; ++l) {
      std::vector<double> early(k, 1.0);
      auto late = early;
      early[l] += 5.0;
      late[l + 1] += 5.0;
      EXPECT_LT(agg(early, AggregationKind::linear), agg(late, AggregationKind::linear));
      EXPECT_LT(agg(early, AggregationKind::hyperbolic), agg(late, AggregationKind::hyperbolic));
      EXPECT_GT(agg(early, AggregationKind::exponential), agg(late, AggregationKind::exponential));
      EXPECT_LT(agg(early, AggregationKind::exponential, true), agg(late, AggregationKind::exponential, true));
    }
  }
}

TEST(Aggregate, OverflowIsClamped) {
  MeasureMatrix m(MeasureKind::betweenness, {0, 1}, 10);
  for (std::size_t l = 0; l < 10; ++l) {
    m.at(0, l) = 1e300;
    m.at(1, l) = 2.0;
  }
  const auto scores = aggregate(m, AggregationKind::sum_pow);
  EXPECT_EQ(scores.clamped, 1u);
  EXPECT_EQ(scores.scores[0], std::numeric_limits<double>::max());
  EXPECT_TRUE(std::isfinite(scores.scores[1]));
}

TEST(AggregationKindNames, ParseRoundTrip) {
  for (auto kind : kAllAggregations) EXPECT_EQ(parse_aggregation_kind(to_string(kind)), kind);
  EXPECT_THROW(parse_aggregation_kind("median"), ConfigError);
}

}  // namespace
}  // namespace tseed
