#include "tseed/seeding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace tseed {

bool SeedSet::contains(NodeIndex node) const {
  return std::binary_search(nodes.begin(), nodes.end(), node);
}

Ranking rank_nodes(std::span<const NodeIndex> nodes, std::span<const double> scores) {
  if (nodes.size() != scores.size()) throw std::invalid_argument("rank_nodes: size mismatch");
  Ranking ranking;
  ranking.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) ranking.push_back({nodes[i], scores[i]});
  std::sort(ranking.begin(), ranking.end(), [](const RankedNode& a, const RankedNode& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.node < b.node;
  });
  return ranking;
}

Ranking rank_nodes(const ScoreVector& scores) { return rank_nodes(scores.nodes, scores.scores); }

std::size_t seed_count(std::size_t population, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument(fmt::format("seed fraction {} outside (0, 1]", fraction));
  }
  const double exact = fraction * static_cast<double>(population);
  const double slack = 1e-9 * std::max(1.0, exact);
  const auto m = static_cast<std::size_t>(std::ceil(exact - slack));
  return std::clamp<std::size_t>(m, population == 0 ? 0 : 1, population);
}

SeedSet select_seeds(const Ranking& ranking, double fraction, std::string strategy) {
  if (ranking.empty()) throw std::invalid_argument("select_seeds: empty ranking");
  const auto m = seed_count(ranking.size(), fraction);
  SeedSet seeds{{}, std::move(strategy)};
  seeds.nodes.reserve(m);
  for (std::size_t i = 0; i < m; ++i) seeds.nodes.push_back(ranking[i].node);
  std::sort(seeds.nodes.begin(), seeds.nodes.end());
  return seeds;
}

SeedSet random_seeds(std::span<const NodeIndex> population, std::size_t m, std::uint64_t rng_seed) {
  if (m > population.size()) {
    throw std::invalid_argument(fmt::format("cannot draw {} seeds from {} nodes", m, population.size()));
  }
  std::mt19937_64 rng(rng_seed);
  SeedSet seeds{{}, "random"};
  seeds.nodes.reserve(m);
  std::sample(population.begin(), population.end(), std::back_inserter(seeds.nodes), m, rng);
  std::sort(seeds.nodes.begin(), seeds.nodes.end());
  return seeds;
}

SeedSet random_freq_seeds(std::span<const NodeIndex> nodes, std::span<const std::size_t> occurrences,
                          std::size_t m, std::uint64_t rng_seed) {
  if (nodes.size() != occurrences.size()) throw std::invalid_argument("random_freq_seeds: size mismatch");
  // Efraimidis-Spirakis: the m largest keys log(u)/w form a weighted sample
  // without replacement with the same law as m successive weighted draws.
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Keyed {
    double key;
    NodeIndex node;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (occurrences[i] == 0) continue;
    double u = 0.0;
    while (u == 0.0) u = 1.0 - unit(rng);
    keyed.push_back({std::log(u) / static_cast<double>(occurrences[i]), nodes[i]});
  }
  if (m > keyed.size()) {
    throw std::invalid_argument(
        fmt::format("cannot draw {} seeds from {} nodes with positive occurrence", m, keyed.size()));
  }
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(m), keyed.end(),
                    [](const Keyed& a, const Keyed& b) {
                      if (a.key != b.key) return a.key > b.key;
                      return a.node < b.node;
                    });
  SeedSet seeds{{}, "randomfreq"};
  seeds.nodes.reserve(m);
  for (std::size_t i = 0; i < m; ++i) seeds.nodes.push_back(keyed[i].node);
  std::sort(seeds.nodes.begin(), seeds.nodes.end());
  return seeds;
}

Strategy parse_strategy(std::string_view raw) {
  std::string lowered(raw);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  const std::string_view name = lowered;
  Strategy s;
  s.label = lowered;
  if (name == "random") {
    s.kind = Strategy::Kind::random;
  } else if (name == "randomfreq" || name == "random_freq") {
    s.kind = Strategy::Kind::random_freq;
    s.label = "randomfreq";
  } else if (name == "inexp") {
    s.measure = MeasureKind::in_degree;
    s.aggregation = AggregationKind::exponential;
  } else if (name == "outexp") {
    s.measure = MeasureKind::out_degree;
    s.aggregation = AggregationKind::exponential;
  } else if (name == "totlog") {
    s.measure = MeasureKind::total_degree;
    s.aggregation = AggregationKind::sum_log;
  } else if (name == "bethyp") {
    s.measure = MeasureKind::betweenness;
    s.aggregation = AggregationKind::hyperbolic;
  } else if (name == "clopow") {
    s.measure = MeasureKind::closeness;
    s.aggregation = AggregationKind::sum_pow;
  } else if (const auto colon = name.find(':'); colon != std::string_view::npos) {
    s.measure = parse_measure_kind(name.substr(0, colon));
    s.aggregation = parse_aggregation_kind(name.substr(colon + 1));
    s.label = fmt::format("{}:{}", to_string(s.measure), to_string(s.aggregation));
  } else {
    throw ConfigError(fmt::format(
        "unknown strategy '{}' (expected inexp|outexp|totlog|bethyp|clopow|random|randomfreq|<measure>:<aggregation>)",
        name));
  }
  return s;
}

}  // namespace tseed
