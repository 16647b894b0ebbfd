#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tseed/aggregation.hpp"
#include "tseed/types.hpp"

namespace tseed {

struct RankedNode {
  NodeIndex node;
  double score;
};

/// Descending by score, ties broken by ascending node index.
using Ranking = std::vector<RankedNode>;

Ranking rank_nodes(const ScoreVector& scores);
Ranking rank_nodes(std::span<const NodeIndex> nodes, std::span<const double> scores);

/// The initially influenced set, kept sorted by node index.
struct SeedSet {
  std::vector<NodeIndex> nodes;
  std::string strategy;

  std::size_t size() const { return nodes.size(); }
  bool empty() const { return nodes.empty(); }
  bool contains(NodeIndex node) const;
};

/// ceil(fraction * population), computed so that products like 0.07 * 100
/// are not pushed over an integer by rounding noise. Throws
/// std::invalid_argument for fraction outside (0, 1].
std::size_t seed_count(std::size_t population, double fraction);

/// Top seed_count(|ranking|, fraction) nodes of the ranking.
SeedSet select_seeds(const Ranking& ranking, double fraction, std::string strategy = {});

/// Uniform sample of m nodes without replacement. Throws
/// std::invalid_argument when m > |population|.
SeedSet random_seeds(std::span<const NodeIndex> population, std::size_t m,
                     std::uint64_t rng_seed);

/// Sample of m nodes without replacement where each draw picks a remaining
/// node with probability proportional to its occurrence count. Nodes with
/// zero occurrences are never drawn.
SeedSet random_freq_seeds(std::span<const NodeIndex> nodes, std::span<const std::size_t> occurrences,
                          std::size_t m, std::uint64_t rng_seed);

/// A seeding strategy: rank by an aggregated measure, or one of the random
/// baselines.
struct Strategy {
  enum class Kind { ranked, random, random_freq };

  Kind kind = Kind::ranked;
  MeasureKind measure = MeasureKind::out_degree;
  AggregationKind aggregation = AggregationKind::exponential;
  std::string label;

  bool is_random() const { return kind != Kind::ranked; }
};

/// `inexp|outexp|totlog|bethyp|clopow|random|randomfreq|<measure>:<aggregation>`
Strategy parse_strategy(std::string_view name);

}  // namespace tseed
