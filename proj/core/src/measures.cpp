#include "tseed/measures.hpp"

#include <algorithm>
#include <future>
#include <limits>
#include <thread>

#include <fmt/format.h>

#include "tseed/types.hpp"

namespace tseed {
namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

/// Single-source BFS over out-edges; fills `dist` and returns visit order.
void bfs(const IntervalGraph& g, std::size_t source, std::vector<std::uint32_t>& dist,
         std::vector<std::uint32_t>& order) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  order.clear();
  dist[source] = 0;
  order.push_back(static_cast<std::uint32_t>(source));
  for (std::size_t head = 0; head < order.size(); ++head) {
    const auto v = order[head];
    for (auto w : g.out_local(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        order.push_back(w);
      }
    }
  }
}

}  // namespace

std::string_view to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::in_degree: return "in";
    case MeasureKind::out_degree: return "out";
    case MeasureKind::total_degree: return "total";
    case MeasureKind::betweenness: return "betweenness";
    case MeasureKind::closeness: return "closeness";
  }
  return "?";
}

MeasureKind parse_measure_kind(std::string_view name) {
  if (name == "in" || name == "in_degree" || name == "indegree") return MeasureKind::in_degree;
  if (name == "out" || name == "out_degree" || name == "outdegree") return MeasureKind::out_degree;
  if (name == "total" || name == "total_degree" || name == "degree") return MeasureKind::total_degree;
  if (name == "betweenness" || name == "bet") return MeasureKind::betweenness;
  if (name == "closeness" || name == "clo") return MeasureKind::closeness;
  throw ConfigError(fmt::format("unknown measure '{}' (expected in|out|total|betweenness|closeness)", name));
}

std::vector<std::size_t> in_degree(const IntervalGraph& g) {
  std::vector<std::size_t> out(g.node_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = g.in_local(v).size();
  return out;
}

std::vector<std::size_t> out_degree(const IntervalGraph& g) {
  std::vector<std::size_t> out(g.node_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = g.out_local(v).size();
  return out;
}

std::vector<std::size_t> total_degree(const IntervalGraph& g) {
  std::vector<std::size_t> out(g.node_count());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = g.in_local(v).size() + g.out_local(v).size();
  return out;
}

std::vector<double> betweenness(const IntervalGraph& g) {
  const auto n = g.node_count();
  std::vector<double> centrality(n, 0.0);
  std::vector<std::uint32_t> dist(n, kUnreached);
  std::vector<std::uint32_t> order;
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);
  order.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    if (g.out_local(s).empty()) continue;
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(static_cast<std::uint32_t>(s));
    for (std::size_t head = 0; head < order.size(); ++head) {
      const auto v = order[head];
      for (auto w : g.out_local(v)) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }

    // Predecessors of w on shortest paths are its in-neighbours one level up.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto w = *it;
      const double coeff = (1.0 + delta[w]) / sigma[w];
      for (auto v : g.in_local(w)) {
        if (dist[v] != kUnreached && dist[v] + 1 == dist[w]) delta[v] += sigma[v] * coeff;
      }
      if (w != s) centrality[w] += delta[w];
    }
    for (auto v : order) {
      dist[v] = kUnreached;
      sigma[v] = 0.0;
      delta[v] = 0.0;
    }
  }
  return centrality;
}

std::vector<double> closeness(const IntervalGraph& g) {
  const auto n = g.node_count();
  std::vector<double> out(n, 0.0);
  std::vector<std::uint32_t> dist(n);
  std::vector<std::uint32_t> order;
  order.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (g.out_local(v).empty()) continue;
    bfs(g, v, dist, order);
    double sum = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (u != v && dist[u] != kUnreached) sum += 1.0 / static_cast<double>(dist[u]);
    }
    out[v] = sum;
  }
  return out;
}

std::vector<double> evaluate_measure(const IntervalGraph& g, MeasureKind kind) {
  auto widen = [](const std::vector<std::size_t>& v) {
    return std::vector<double>(v.begin(), v.end());
  };
  switch (kind) {
    case MeasureKind::in_degree: return widen(in_degree(g));
    case MeasureKind::out_degree: return widen(out_degree(g));
    case MeasureKind::total_degree: return widen(total_degree(g));
    case MeasureKind::betweenness: return betweenness(g);
    case MeasureKind::closeness: return closeness(g);
  }
  return {};
}

MeasureMatrix::MeasureMatrix(MeasureKind kind, std::vector<NodeIndex> nodes, std::size_t windows)
    : kind_(kind), nodes_(std::move(nodes)), windows_(windows), values_(nodes_.size() * windows, 0.0) {}

std::optional<std::size_t> MeasureMatrix::row_of(NodeIndex node) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node);
  if (it == nodes_.end() || *it != node) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

MeasureMatrix measure_matrix(const TemporalNetwork& tsn, MeasureKind kind) {
  const auto windows = tsn.windows();
  const auto all = tsn.all_nodes();
  MeasureMatrix matrix(kind, {all.begin(), all.end()}, windows.size());

  std::vector<std::vector<double>> columns(windows.size());
  if (std::thread::hardware_concurrency() > 1 && windows.size() > 1) {
    std::vector<std::future<std::vector<double>>> jobs;
    jobs.reserve(windows.size());
    for (const auto& w : windows) {
      jobs.push_back(std::async(std::launch::async, [&w, kind] { return evaluate_measure(w, kind); }));
    }
    for (std::size_t l = 0; l < jobs.size(); ++l) columns[l] = jobs[l].get();
  } else {
    for (std::size_t l = 0; l < windows.size(); ++l) columns[l] = evaluate_measure(windows[l], kind);
  }

  for (std::size_t l = 0; l < windows.size(); ++l) {
    const auto nodes = windows[l].nodes();
    // Both node lists are sorted; walk them together.
    std::size_t row = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      while (matrix.nodes()[row] != nodes[i]) ++row;
      matrix.at(row, l) = columns[l][i];
    }
  }
  return matrix;
}

}  // namespace tseed
