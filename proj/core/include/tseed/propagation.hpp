#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tseed/seeding.hpp"
#include "tseed/windowing.hpp"

namespace tseed {

/// Adoption threshold phi in (0, 1], held as an exact fraction so that
/// boundary cases like 3/4 >= 0.75 are decided without rounding.
class Threshold {
 public:
  /// Parses a decimal (`0.75`, `.5`, `1`, at most 9 fractional digits) or a
  /// fraction (`1/3`). Throws std::invalid_argument outside (0, 1].
  static Threshold parse(std::string_view text);
  /// Uses the shortest decimal representation of `value`.
  static Threshold from_double(double value);

  std::uint64_t numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// Shortest decimal text of value().
  std::string str() const;

  /// influenced / degree >= phi, by cross-multiplication. degree > 0.
  /// Denominators are capped at 10^9 and degrees fit NodeIndex, so the
  /// products fit 64 bits.
  bool reached(std::uint32_t influenced, std::uint32_t degree) const {
    return std::uint64_t{influenced} * den_ >= num_ * std::uint64_t{degree};
  }

  friend bool operator==(const Threshold&, const Threshold&) = default;

 private:
  Threshold(std::uint64_t num, std::uint64_t den);
  std::uint64_t num_ = 1;
  std::uint64_t den_ = 1;
};

struct ThresholdConfig {
  Threshold phi = Threshold::parse("0.75");
  /// Let nodes adopted inside window k recruit others in the same window,
  /// iterating to a fixed point. Off by default: adoption in window k only
  /// sees nodes influenced before k.
  bool within_window_fixpoint = false;
};

/// Per-window influenced sets. Sets are pairwise disjoint; every node is
/// recorded in the first window it becomes influenced.
struct PropagationTrace {
  std::vector<NodeIndex> seeds;
  /// influenced_per_window[k-1] = Phi(k), sorted.
  std::vector<std::vector<NodeIndex>> influenced_per_window;
  /// cumulative_counts[k] = |Phi(0) u ... u Phi(k)|, k = 0..K.
  std::vector<std::size_t> cumulative_counts;

  std::size_t total_influenced() const { return cumulative_counts.back(); }
  std::size_t total_influenced_excluding_seeds() const {
    return cumulative_counts.back() - cumulative_counts.front();
  }
};

/// Linear threshold spread over the windows of `network`: a node of V_k not
/// yet influenced adopts in window k iff the influenced share of its window-k
/// in-neighbours reaches phi. Nodes without in-neighbours in window k are
/// skipped for that window. Seeds must be valid indices of the network's
/// node table (std::out_of_range otherwise) but need not appear in any window.
PropagationTrace propagate_lt(const TemporalNetwork& network, std::span<const NodeIndex> seeds,
                              const ThresholdConfig& config);
PropagationTrace propagate_lt(const TemporalNetwork& network, const SeedSet& seeds,
                              const ThresholdConfig& config);

inline std::size_t total_influenced(const PropagationTrace& trace) {
  return trace.total_influenced();
}

}  // namespace tseed
