// Acceptance suite: one PASS/FAIL line per criterion. Exit status is non-zero
// when any gating criterion fails. Criterion 6 runs only when
// TSEED_KONECT_FILE points at a KONECT wall-post edge list.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "tseed/aggregation.hpp"
#include "tseed/analysis.hpp"
#include "tseed/experiment.hpp"
#include "tseed/measures.hpp"
#include "tseed/propagation.hpp"
#include "tseed/seeding.hpp"
#include "../support/oracles.hpp"

using namespace tseed;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o, bool gating = true) {
  std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass && gating) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

TemporalNetwork network_of(std::size_t n, const std::vector<oracle::EdgeSet>& windows) {
  std::vector<std::vector<Edge>> w;
  for (const auto& e : windows) w.push_back(oracle::to_edges(e));
  return TemporalNetwork::from_edge_lists(std::move(w), oracle::numbered_nodes(n));
}

// 200 random networks, up to 10 nodes and 3 windows, against the literal rule.
Outcome propagation_oracle() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::size_t> nodes(2, 10), windows(1, 3);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  std::bernoulli_distribution pick(0.25);
  const std::pair<std::uint64_t, std::uint64_t> phis[] = {{33, 100}, {1, 2}, {3, 4}};
  std::size_t mismatches = 0, checks = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = nodes(rng);
    std::vector<oracle::EdgeSet> ws(windows(rng));
    for (auto& w : ws) w = oracle::random_edges(rng, n, density(rng));
    std::set<std::uint32_t> seeds;
    for (std::uint32_t v = 0; v < n; ++v)
      if (pick(rng)) seeds.insert(v);
    const auto net = network_of(n, ws);
    const std::vector<NodeIndex> seed_vec(seeds.begin(), seeds.end());
    for (auto [num, den] : phis) {
      const auto expected = oracle::linear_threshold(ws, seeds, num, den);
      const auto trace = propagate_lt(net, seed_vec, {Threshold::parse(fmt::format("{}/{}", num, den)), false});
      for (std::size_t k = 0; k < expected.size(); ++k) {
        ++checks;
        if (trace.influenced_per_window[k] != std::vector<NodeIndex>(expected[k].begin(), expected[k].end())) {
          ++mismatches;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 10.0,
          fmt::format("{} window sets compared, {} mismatches, {:.2f} s (limit 10 s)", checks, mismatches, elapsed)};
}

// 1000 random rows, every aggregation, relative error <= 1e-12.
Outcome aggregation_oracle() {
  std::mt19937_64 rng(20240602);
  std::uniform_int_distribution<std::size_t> length(1, 10);
  std::uniform_real_distribution<double> value(0.0, 1e6);
  std::uniform_int_distribution<int> special(0, 9);
  double worst = 0.0;
  std::size_t zeros = 0, base_one = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> row(length(rng));
    for (auto& v : row) {
      const int s = special(rng);
      v = s == 0 ? 0.0 : s == 1 ? value(rng) / 1e6 : value(rng);
      zeros += v == 0.0;
    }
    base_one += row.back() != 0.0;  // the last window uses log base 1
    for (auto kind : kAllAggregations) {
      for (bool recency : {false, true}) {
        if (recency && kind != AggregationKind::exponential) continue;
        const double got = aggregate_row(row, kind, {recency});
        const double want = oracle::aggregation(row, kind, recency);
        worst = std::max(worst, std::isfinite(want) ? oracle::relative_error(got, want) : (got == want ? 0.0 : 1.0));
      }
    }
  }
  return {worst <= 1e-12, fmt::format("1000 rows x 12 aggregations, max relative error {:.3g} (limit 1e-12), "
                                      "{} zero cells, {} rows exercising log base 1",
                                      worst, zeros, base_one)};
}

// Brandes against shortest-path enumeration; closeness against Floyd-Warshall.
Outcome centrality_oracle() {
  std::mt19937_64 rng(20240603);
  std::uniform_int_distribution<std::size_t> nodes(1, 6);
  std::uniform_real_distribution<double> density(0.0, 0.8);
  double worst_b = 0.0, worst_c = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = nodes(rng);
    const auto edges = oracle::random_edges(rng, n, density(rng));
    // keep every node present so that local and global indices coincide
    std::vector<Edge> list = oracle::to_edges(edges);
    IntervalGraph g(1, {0, 1, true}, list);
    const auto want_b = oracle::betweenness_by_paths(n, edges);
    const auto want_c = oracle::harmonic_closeness(n, edges);
    const auto got_b = betweenness(g);
    const auto got_c = closeness(g);
    for (std::size_t i = 0; i < g.nodes().size(); ++i) {
      const auto v = g.node_at(i);
      worst_b = std::max(worst_b, std::abs(got_b[i] - want_b[v]));
      worst_c = std::max(worst_c, std::abs(got_c[i] - want_c[v]));
    }
  }
  return {worst_b <= 1e-9 && worst_c <= 1e-12,
          fmt::format("500 graphs with <= 6 nodes, max |betweenness diff| {:.3g}, max |closeness diff| {:.3g}",
                      worst_b, worst_c)};
}

// Identical ordering in every block, n = 5, k = 3.
Outcome statistics_reproduction() {
  const std::vector<std::vector<double>> cells{{30, 20, 10}, {9, 8, 7}, {500, 400, 3}, {4, 2, 1}, {100, 50, 25}};
  const ResultMatrix m({"b1", "b2", "b3", "b4", "b5"}, {"TSN10", "TSN5", "TSN1"}, cells);
  const auto f = friedman_test(m);
  const auto pairs = nemenyi_posthoc(m);
  double p13 = -1.0;
  for (const auto& p : pairs)
    if (p.first == 0 && p.second == 2) p13 = p.p_adjusted;

  // Independent evaluation: Friedman formula by hand, df = 2 chi-square tail
  // is exp(-x/2); Nemenyi reference from scipy (norm.sf).
  const double n = 5, k = 3;
  const double r[] = {1, 2, 3};
  const double chi2 = 12 * n / (k * (k + 1)) * (r[0] * r[0] + r[1] * r[1] + r[2] * r[2] - k * (k + 1) * (k + 1) / 4);
  const double p_ref = std::exp(-chi2 / 2);
  const double nemenyi_ref = 0.004696206774007644;

  const bool ok = std::abs(f.statistic - 10.0) <= 1e-9 && std::abs(f.p_value - 0.0067) <= 1e-3 &&
                  std::abs(f.p_value - p_ref) <= 1e-12 && std::abs(p13 - 0.0047) <= 1e-3 &&
                  std::abs(p13 - nemenyi_ref) <= 1e-12;
  return {ok, fmt::format("chi2_F = {:.6g} (want 10), p = {:.6g} (want 0.0067 +- 1e-3), "
                          "Nemenyi TSN10 vs TSN1 adjusted p = {:.6g} (want 0.0047 +- 1e-3)",
                          f.statistic, f.p_value, p13)};
}

std::map<std::size_t, double> outexp_totals(const ExperimentConfig& cfg) {
  std::map<std::size_t, double> totals;
  for (const auto& r : run_experiment(cfg).records) totals[r.learning_windows] = r.total_influenced;
  return totals;
}

// Bursty fixture: finer learning granularity should win.
Outcome granularity_ordering() {
  ExperimentConfig cfg;
  cfg.inputs = {std::filesystem::path(TSEED_FIXTURE_DIR) / "bursty.tsv"};
  cfg.learning_windows = {10, 5, 1};
  cfg.evaluation_windows = 10;
  cfg.strategies = {"outexp"};
  cfg.phis = {Threshold::parse("0.75")};
  const auto t = outexp_totals(cfg);
  return {t.at(10) > t.at(5) && t.at(5) > t.at(1),
          fmt::format("OutExp phi 0.75: TSN10 = {}, TSN5 = {}, TSN1 = {} (want strictly decreasing)", t.at(10),
                      t.at(5), t.at(1))};
}

std::optional<Outcome> full_scale() {
  const char* path = std::getenv("TSEED_KONECT_FILE");
  if (path == nullptr || *path == '\0') return std::nullopt;
  ExperimentConfig cfg;
  cfg.inputs = {path};
  cfg.format = InputFormat::konect;
  cfg.learning_windows = {10, 5, 1};
  cfg.strategies = {"outexp"};
  cfg.phis = {Threshold::parse("0.75")};
  const auto t = outexp_totals(cfg);
  const double ref10 = 3512, ref5 = 2998, ref1 = 1500;
  auto within = [](double got, double ref) { return std::abs(got - ref) <= 0.1 * ref; };
  return Outcome{t.at(10) > t.at(1),
                 fmt::format("TSN10 = {} (ref 3512, {}), TSN5 = {} (ref 2998, {}), TSN1 = {} (ref 1500, {})", t.at(10),
                             within(t.at(10), ref10) ? "within 10%" : "outside 10%", t.at(5),
                             within(t.at(5), ref5) ? "within 10%" : "outside 10%", t.at(1),
                             within(t.at(1), ref1) ? "within 10%" : "outside 10%")};
}

// Property suites, each over at least 100 random instances.
Outcome property_suites() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240607);
  std::vector<std::string> broken;

  // LT seed and phi monotonicity
  {
    const char* phis[] = {"0.33", "0.5", "0.75", "1"};
    bool ok = true;
    for (int trial = 0; trial < 150 && ok; ++trial) {
      const std::size_t n = 6 + trial % 10;
      std::vector<oracle::EdgeSet> ws(1 + trial % 4);
      for (auto& w : ws) w = oracle::random_edges(rng, n, 0.3);
      const auto net = network_of(n, ws);
      std::vector<NodeIndex> seeds;
      std::bernoulli_distribution pick(0.25);
      for (NodeIndex v = 0; v < n; ++v)
        if (pick(rng)) seeds.push_back(v);
      std::size_t previous = SIZE_MAX;
      for (const char* p : phis) {
        const auto total = propagate_lt(net, seeds, {Threshold::parse(p), false}).total_influenced();
        ok = ok && total <= previous;
        previous = total;
      }
      for (NodeIndex extra = 0; extra < n && ok; ++extra) {
        if (std::binary_search(seeds.begin(), seeds.end(), extra)) continue;
        auto more = seeds;
        more.insert(std::upper_bound(more.begin(), more.end(), extra), extra);
        const ThresholdConfig cfg{Threshold::parse("0.5"), false};
        ok = propagate_lt(net, seeds, cfg).total_influenced() <= propagate_lt(net, more, cfg).total_influenced();
      }
    }
    if (!ok) broken.push_back("LT monotonicity");
  }

  // argsort invariance of rankings
  {
    bool ok = true;
    std::uniform_int_distribution<int> value(0, 15);
    for (int trial = 0; trial < 150 && ok; ++trial) {
      std::vector<NodeIndex> nodes(40);
      std::vector<double> s(40), t(40);
      for (NodeIndex i = 0; i < 40; ++i) {
        nodes[i] = i * 3;
        s[i] = value(rng);
        t[i] = std::log1p(s[i]) * 7 + 2;
      }
      const auto a = rank_nodes(nodes, s), b = rank_nodes(nodes, t);
      for (std::size_t i = 0; i < a.size(); ++i) ok = ok && a[i].node == b[i].node;
    }
    if (!ok) broken.push_back("argsort invariance");
  }

  // prefix monotonicity of seed selection
  {
    bool ok = true;
    std::uniform_real_distribution<double> frac(0.001, 1.0), value(0, 100);
    for (int trial = 0; trial < 150 && ok; ++trial) {
      std::vector<NodeIndex> nodes(1 + trial);
      std::vector<double> s(nodes.size());
      for (NodeIndex i = 0; i < nodes.size(); ++i) {
        nodes[i] = i;
        s[i] = value(rng);
      }
      const auto r = rank_nodes(nodes, s);
      double f1 = frac(rng), f2 = frac(rng);
      if (f1 > f2) std::swap(f1, f2);
      const auto small = select_seeds(r, f1), large = select_seeds(r, f2);
      ok = std::includes(large.nodes.begin(), large.nodes.end(), small.nodes.begin(), small.nodes.end());
    }
    if (!ok) broken.push_back("prefix monotonicity");
  }

  // Friedman rank-sum identity
  {
    bool ok = true;
    std::uniform_int_distribution<int> value(0, 5);
    for (int trial = 0; trial < 150 && ok; ++trial) {
      const std::size_t k = 2 + trial % 8;
      std::vector<double> row(k);
      for (auto& v : row) v = value(rng);
      const auto ranks = rank_descending(row);
      ok = std::abs(std::accumulate(ranks.begin(), ranks.end(), 0.0) - k * (k + 1) / 2.0) <= 1e-12;
    }
    if (!ok) broken.push_back("rank-sum identity");
  }

  const double elapsed = seconds_since(start);
  std::string detail = fmt::format("4 suites x 150 instances, {:.2f} s (limit 60 s)", elapsed);
  for (const auto& b : broken) detail += "; violated: " + b;
  return {broken.empty() && elapsed < 60.0, detail};
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  report(1, "propagation matches literal threshold rule", guarded(propagation_oracle));
  report(2, "aggregations match their formulas", guarded(aggregation_oracle));
  report(3, "betweenness and closeness match enumeration", guarded(centrality_oracle));
  report(4, "Friedman and Nemenyi on a consistent rank pattern", guarded(statistics_reproduction));
  report(5, "TSN10 > TSN5 > TSN1 on the bursty fixture", guarded(granularity_ordering));
  std::optional<Outcome> konect;
  try {
    konect = full_scale();
  } catch (const std::exception& e) {
    konect = Outcome{false, std::string("exception: ") + e.what()};
  }
  if (konect) {
    report(6, "full-scale KONECT run (not gating)", *konect, false);
  } else {
    std::printf("SKIP [6] full-scale KONECT run (not gating): set TSEED_KONECT_FILE to run it\n");
  }
  report(7, "property suites", guarded(property_suites));
  std::printf("%s\n", failures == 0 ? "acceptance: all gating criteria passed"
                                    : fmt::format("acceptance: {} gating criteria failed", failures).c_str());
  return failures == 0 ? 0 : 1;
}
