#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tseed/windowing.hpp"

namespace tseed {

enum class MeasureKind { in_degree, out_degree, total_degree, betweenness, closeness };

std::string_view to_string(MeasureKind kind);
/// Accepts `in|out|total|betweenness|closeness` and the long forms.
MeasureKind parse_measure_kind(std::string_view name);

// Per-window measures. Every result is aligned with g.nodes().

std::vector<std::size_t> in_degree(const IntervalGraph& g);
std::vector<std::size_t> out_degree(const IntervalGraph& g);
/// In plus out; a reciprocated pair counts twice.
std::vector<std::size_t> total_degree(const IntervalGraph& g);

/// Directed, unweighted, unnormalized shortest-path betweenness
/// (sum over ordered pairs s != v != t of sigma_st(v) / sigma_st), using
/// Brandes' dependency accumulation. Sources are processed in index order.
std::vector<double> betweenness(const IntervalGraph& g);

/// Harmonic closeness over outgoing distances: sum of 1/d(v,u) over every
/// u reachable from v. Zero for nodes that reach nobody.
std::vector<double> closeness(const IntervalGraph& g);

std::vector<double> evaluate_measure(const IntervalGraph& g, MeasureKind kind);

/// Node x window matrix of one measure over a temporal network. Rows follow
/// tsn.all_nodes(); a node absent from window l has value 0 there.
class MeasureMatrix {
 public:
  MeasureMatrix(MeasureKind kind, std::vector<NodeIndex> nodes, std::size_t windows);

  MeasureKind kind() const { return kind_; }
  std::size_t window_count() const { return windows_; }
  std::size_t row_count() const { return nodes_.size(); }
  std::span<const NodeIndex> nodes() const { return nodes_; }
  std::optional<std::size_t> row_of(NodeIndex node) const;

  /// `window` is 0-based here.
  double at(std::size_t row, std::size_t window) const { return values_[row * windows_ + window]; }
  double& at(std::size_t row, std::size_t window) { return values_[row * windows_ + window]; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * windows_, windows_};
  }

 private:
  MeasureKind kind_;
  std::vector<NodeIndex> nodes_;
  std::size_t windows_;
  std::vector<double> values_;
};

/// Evaluates `kind` on every window. Windows are computed concurrently
/// when hardware allows; the result does not depend on scheduling.
MeasureMatrix measure_matrix(const TemporalNetwork& tsn, MeasureKind kind);

}  // namespace tseed
