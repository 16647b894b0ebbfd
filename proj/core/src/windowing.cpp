#include "tseed/windowing.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace tseed {
namespace {

__extension__ typedef unsigned __int128 uint128;

std::vector<NodeIndex> to_global(const IntervalGraph& g, std::span<const std::uint32_t> local) {
  std::vector<NodeIndex> out;
  out.reserve(local.size());
  for (auto l : local) out.push_back(g.node_at(l));
  return out;
}

}  // namespace

IntervalGraph::IntervalGraph(std::size_t window_index, WindowBounds bounds, std::vector<Edge> edges)
    : window_index_(window_index), bounds_(bounds) {
  std::erase_if(edges, [](const Edge& e) { return e.source == e.target; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  nodes_.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    nodes_.push_back(e.source);
    nodes_.push_back(e.target);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  nodes_.shrink_to_fit();

  const auto n = nodes_.size();
  auto local = [&](NodeIndex v) {
    return static_cast<std::uint32_t>(std::lower_bound(nodes_.begin(), nodes_.end(), v) - nodes_.begin());
  };

  // Edges are sorted by (source, target), so out lists come out sorted.
  out_offsets_.assign(n + 1, 0);
  in_offsets_.assign(n + 1, 0);
  std::vector<std::uint32_t> src_local(edges.size());
  std::vector<std::uint32_t> dst_local(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    src_local[i] = local(edges[i].source);
    dst_local[i] = local(edges[i].target);
    ++out_offsets_[src_local[i] + 1];
    ++in_offsets_[dst_local[i] + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offsets_[i + 1] += out_offsets_[i];
    in_offsets_[i + 1] += in_offsets_[i];
  }
  out_targets_ = std::move(dst_local);
  in_sources_.resize(edges.size());
  std::vector<std::size_t> cursor(in_offsets_.begin(), in_offsets_.end() - 1);
  // Iterating edges in source order fills each in list in ascending order.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    in_sources_[cursor[out_targets_[i]]++] = src_local[i];
  }
}

std::optional<std::size_t> IntervalGraph::local_of(NodeIndex node) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end() || *it != node) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::vector<NodeIndex> IntervalGraph::out_neighbors(NodeIndex node) const {
  const auto l = local_of(node);
  return l ? to_global(*this, out_local(*l)) : std::vector<NodeIndex>{};
}

std::vector<NodeIndex> IntervalGraph::in_neighbors(NodeIndex node) const {
  const auto l = local_of(node);
  return l ? to_global(*this, in_local(*l)) : std::vector<NodeIndex>{};
}

std::vector<Edge> IntervalGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t s = 0; s < nodes_.size(); ++s) {
    for (auto t : out_local(s)) out.push_back({nodes_[s], nodes_[t]});
  }
  return out;
}

TemporalNetwork::TemporalNetwork(std::vector<IntervalGraph> windows, TimeSpan span,
                                 std::shared_ptr<const NodeTable> nodes)
    : windows_(std::move(windows)), span_(span), nodes_(std::move(nodes)) {
  if (windows_.empty()) throw std::invalid_argument("TemporalNetwork: no windows");
  if (!nodes_) throw std::invalid_argument("TemporalNetwork: missing node table");
  std::vector<NodeIndex> all;
  for (const auto& w : windows_) {
    if (!w.nodes().empty() && w.nodes().back() >= nodes_->size()) {
      throw std::out_of_range("TemporalNetwork: window references an unknown node");
    }
    all.insert(all.end(), w.nodes().begin(), w.nodes().end());
  }
  std::sort(all.begin(), all.end());
  // Run lengths of the sorted multiset are the per-node window counts.
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    all_nodes_.push_back(all[i]);
    occurrences_.push_back(j - i);
    i = j;
  }
}

TemporalNetwork TemporalNetwork::from_edge_lists(std::vector<std::vector<Edge>> windows,
                                                 std::shared_ptr<const NodeTable> nodes) {
  std::vector<IntervalGraph> graphs;
  graphs.reserve(windows.size());
  for (std::size_t l = 0; l < windows.size(); ++l) {
    const bool last = l + 1 == windows.size();
    graphs.emplace_back(l + 1, WindowBounds{double(l), double(l + 1), last}, std::move(windows[l]));
  }
  return TemporalNetwork(std::move(graphs), TimeSpan{0, static_cast<Timestamp>(windows.size())},
                         std::move(nodes));
}

std::size_t window_position(TimeSpan span, std::size_t windows, Timestamp t) {
  if (!span.contains(t)) {
    throw std::out_of_range(fmt::format("timestamp {} outside [{}, {}]", t, span.begin, span.end));
  }
  if (t == span.end) return windows - 1;
  // floor((t - begin) * K / length); t < end so length > 0 here.
  const auto offset = static_cast<uint128>(static_cast<std::uint64_t>(t - span.begin));
  const auto length = static_cast<std::uint64_t>(span.length());
  const auto pos = static_cast<std::size_t>(offset * windows / length);
  return std::min(pos, windows - 1);
}

std::size_t TemporalNetwork::window_of(Timestamp t) const {
  return window_position(span_, windows_.size(), t) + 1;
}

TemporalNetwork build_tsn(const EventLog& log, std::size_t windows) {
  if (windows == 0) throw std::invalid_argument("build_tsn: window count must be at least 1");
  const auto span = log.span();
  std::vector<std::vector<Edge>> edges(windows);
  for (const auto& e : log.events()) {
    edges[window_position(span, windows, e.time)].push_back({e.source, e.target});
  }
  const double duration = static_cast<double>(span.length()) / static_cast<double>(windows);
  std::vector<IntervalGraph> graphs;
  graphs.reserve(windows);
  for (std::size_t l = 0; l < windows; ++l) {
    const WindowBounds bounds{static_cast<double>(span.begin) + duration * static_cast<double>(l),
                              static_cast<double>(span.begin) + duration * static_cast<double>(l + 1),
                              l + 1 == windows};
    graphs.emplace_back(l + 1, bounds, std::move(edges[l]));
  }
  return TemporalNetwork(std::move(graphs), span, log.node_table());
}

}  // namespace tseed
