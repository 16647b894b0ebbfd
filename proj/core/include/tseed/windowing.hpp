#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tseed/ingest.hpp"
#include "tseed/types.hpp"

namespace tseed {

struct WindowBounds {
  double begin;
  double end;
  /// Only the last window of a network includes its right end.
  bool right_closed;
};

/// Static directed graph of one time window.
///
/// Nodes are the endpoints of the window's edges, stored sorted by global
/// index. Adjacency is kept in CSR form over local positions (the rank of a
/// node within `nodes()`); because `nodes()` is sorted, local order and
/// global order agree. Edges are deduplicated and never self-loops.
class IntervalGraph {
 public:
  IntervalGraph() = default;
  IntervalGraph(std::size_t window_index, WindowBounds bounds, std::vector<Edge> edges);

  /// 1-based.
  std::size_t window_index() const { return window_index_; }
  WindowBounds bounds() const { return bounds_; }

  std::span<const NodeIndex> nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }
  bool empty() const { return nodes_.empty(); }

  NodeIndex node_at(std::size_t local) const { return nodes_[local]; }
  std::optional<std::size_t> local_of(NodeIndex node) const;
  bool contains(NodeIndex node) const { return local_of(node).has_value(); }

  std::span<const std::uint32_t> out_local(std::size_t local) const {
    return {out_targets_.data() + out_offsets_[local], out_targets_.data() + out_offsets_[local + 1]};
  }
  std::span<const std::uint32_t> in_local(std::size_t local) const {
    return {in_sources_.data() + in_offsets_[local], in_sources_.data() + in_offsets_[local + 1]};
  }

  /// Global ids; empty when the node is absent from the window.
  std::vector<NodeIndex> out_neighbors(NodeIndex node) const;
  std::vector<NodeIndex> in_neighbors(NodeIndex node) const;

  /// Deduplicated edge list in (source, target) order.
  std::vector<Edge> edges() const;

  double average_in_degree() const {
    return nodes_.empty() ? 0.0 : static_cast<double>(edge_count()) / static_cast<double>(node_count());
  }

 private:
  std::size_t window_index_ = 0;
  WindowBounds bounds_{};
  std::vector<NodeIndex> nodes_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<std::uint32_t> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<std::uint32_t> in_sources_;
};

/// Ordered sequence of K equal-duration interval graphs over a log span.
///
/// Window l (1-based) covers [begin + (l-1)d, begin + l*d), with the last
/// window closed on the right.
class TemporalNetwork {
 public:
  TemporalNetwork(std::vector<IntervalGraph> windows, TimeSpan span,
                  std::shared_ptr<const NodeTable> nodes);

  /// Builds a network directly from per-window edge lists, with unit-length
  /// synthetic windows [l-1, l). Mostly useful for tests and simulations.
  static TemporalNetwork from_edge_lists(std::vector<std::vector<Edge>> windows,
                                         std::shared_ptr<const NodeTable> nodes);

  std::size_t window_count() const { return windows_.size(); }
  std::span<const IntervalGraph> windows() const { return windows_; }
  /// 1-based, like window_index().
  const IntervalGraph& window(std::size_t l) const { return windows_.at(l - 1); }

  TimeSpan span() const { return span_; }
  double window_duration() const {
    return static_cast<double>(span_.length()) / static_cast<double>(windows_.size());
  }
  const NodeTable& nodes() const { return *nodes_; }
  const std::shared_ptr<const NodeTable>& node_table() const { return nodes_; }

  /// Sorted union of V_l over all windows.
  std::span<const NodeIndex> all_nodes() const { return all_nodes_; }
  /// Number of windows containing each node of all_nodes(), aligned with it.
  std::span<const std::size_t> occurrences() const { return occurrences_; }

  /// The 1-based window whose bounds contain `t`. Throws std::out_of_range
  /// outside the span.
  std::size_t window_of(Timestamp t) const;

 private:
  std::vector<IntervalGraph> windows_;
  TimeSpan span_{};
  std::shared_ptr<const NodeTable> nodes_;
  std::vector<NodeIndex> all_nodes_;
  std::vector<std::size_t> occurrences_;
};

/// 0-based window position of `t` in a span split into `windows` parts.
std::size_t window_position(TimeSpan span, std::size_t windows, Timestamp t);

/// Splits the log span into K equal windows and aggregates the events of
/// each window into a deduplicated directed graph. Throws
/// std::invalid_argument for K == 0.
TemporalNetwork build_tsn(const EventLog& log, std::size_t windows);

}  // namespace tseed
