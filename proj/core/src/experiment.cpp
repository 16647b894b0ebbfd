#include "tseed/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "tseed/aggregation.hpp"
#include "tseed/measures.hpp"
#include "tseed/windowing.hpp"

namespace tseed {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError(fmt::format("{}: expected a non-negative integer, got '{}'", key, text));
  }
  return value;
}

double parse_double(std::string_view key, std::string_view text) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, text));
  }
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, text));
}

std::string normalize_key(std::string_view key) {
  std::string k(trim(key));
  while (!k.empty() && k.front() == '-') k.erase(k.begin());
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

std::string dataset_label(const std::filesystem::path& path) {
  auto label = path.stem().string();
  std::replace(label.begin(), label.end(), ',', '_');
  return label.empty() ? std::string("dataset") : label;
}

/// Rethrows the current exception with `context` prefixed, keeping the
/// error category.
[[noreturn]] void rethrow_with_context(const std::string& context) {
  try {
    throw;
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", context, e.what()));
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", context, e.what()));
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format("{}: {}", context, e.what()));
  }
}

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

void ExperimentConfig::validate() const {
  if (inputs.empty()) throw ConfigError("no input given");
  if (learning_windows.empty()) throw ConfigError("learning-windows: list is empty");
  std::set<std::size_t> seen_k;
  for (auto k : learning_windows) {
    if (k == 0) throw ConfigError("learning-windows: counts must be at least 1");
    if (!seen_k.insert(k).second) throw ConfigError(fmt::format("learning-windows: {} listed twice", k));
  }
  if (evaluation_windows == 0) throw ConfigError("evaluation-windows: must be at least 1");
  if (strategies.empty()) throw ConfigError("strategy: list is empty");
  std::set<std::string> seen_s;
  for (const auto& s : strategies) {
    const auto label = parse_strategy(s).label;
    if (!seen_s.insert(label).second) throw ConfigError(fmt::format("strategy: '{}' listed twice", label));
  }
  if (!(seed_fraction > 0.0 && seed_fraction <= 1.0)) {
    throw ConfigError(fmt::format("seed-fraction: {} outside (0, 1]", seed_fraction));
  }
  if (phis.empty()) throw ConfigError("phi: list is empty");
  if (random_runs == 0) throw ConfigError("random-runs: must be at least 1");
}

void apply_setting(ExperimentConfig& config, std::string_view raw_key, std::string_view raw_value) {
  const auto key = normalize_key(raw_key);
  const auto value = trim(raw_value);
  if (key == "input") {
    config.inputs.clear();
    for (auto item : split_list(value)) config.inputs.emplace_back(std::string(item));
  } else if (key == "format") {
    config.format = parse_input_format(value);
  } else if (key == "learning-windows") {
    config.learning_windows.clear();
    for (auto item : split_list(value)) config.learning_windows.push_back(parse_unsigned<std::size_t>(key, item));
  } else if (key == "evaluation-windows") {
    config.evaluation_windows = parse_unsigned<std::size_t>(key, value);
  } else if (key == "strategy") {
    config.strategies.clear();
    for (auto item : split_list(value)) {
      config.strategies.push_back(parse_strategy(item).label);
    }
  } else if (key == "seed-fraction") {
    config.seed_fraction = parse_double(key, value);
    if (!(config.seed_fraction > 0.0 && config.seed_fraction <= 1.0)) {
      throw ConfigError(fmt::format("seed-fraction: {} outside (0, 1]", value));
    }
  } else if (key == "phi") {
    config.phis.clear();
    for (auto item : split_list(value)) {
      try {
        config.phis.push_back(Threshold::parse(item));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(fmt::format("phi: {}", e.what()));
      }
    }
  } else if (key == "rng-seed") {
    config.rng_seed = parse_unsigned<std::uint64_t>(key, value);
  } else if (key == "random-runs") {
    config.random_runs = parse_unsigned<std::size_t>(key, value);
  } else if (key == "output") {
    config.output_dir = std::string(value);
  } else if (key == "ef-recency") {
    config.ef_recency = parse_bool(key, value);
  } else if (key == "within-window-fixpoint") {
    config.within_window_fixpoint = parse_bool(key, value);
  } else if (key == "clamp-pvalues") {
    config.clamp_pvalues = parse_bool(key, value);
  } else if (key == "turnover") {
    config.turnover.direction = parse_turnover_direction(value);
  } else if (key == "turnover-baseline") {
    config.turnover.baseline = parse_turnover_baseline(value);
  } else if (key == "timings") {
    config.timings = parse_bool(key, value);
  } else {
    throw ConfigError(fmt::format("unknown setting '{}'", raw_key));
  }
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(fmt::format("line {}: expected 'key = value'", number));
    }
    try {
      apply_setting(base, view.substr(0, eq), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("line {}: {}", number, e.what()));
    }
  }
  return base;
}

ExperimentConfig load_config(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path.string()));
  try {
    auto config = parse_config(in, std::move(base));
    // Relative inputs are resolved against the config file's directory.
    for (auto& input : config.inputs) {
      if (input.is_relative()) input = path.parent_path() / input;
    }
    return config;
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string seed_digest(std::span<const std::string> ids) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& id : ids) {
    for (unsigned char c : id) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // separator outside the byte range of ids
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  using Clock = std::chrono::steady_clock;

  std::vector<Strategy> strategies;
  for (const auto& s : config.strategies) strategies.push_back(parse_strategy(s));
  const ThresholdConfig base_threshold{Threshold::parse("1"), config.within_window_fixpoint};
  const AggregationOptions agg_options{config.ef_recency};

  ExperimentResult result;
  result.config = config;

  std::map<std::string, std::size_t> label_uses;
  for (const auto& input : config.inputs) {
    auto label = dataset_label(input);
    if (const auto uses = label_uses[label]++; uses > 0) label += fmt::format("-{}", uses + 1);

    std::optional<ParsedLog> parsed;
    std::optional<SplitLog> halves;
    try {
      parsed.emplace(load_event_log(input, config.format));
      halves.emplace(split_halves(parsed->log));
    } catch (...) {
      rethrow_with_context(fmt::format("dataset {}", label));
    }
    const auto evaluation = build_tsn(halves->evaluation, config.evaluation_windows);
    const auto names = parsed->log.node_table();

    DatasetSummary summary;
    summary.label = label;
    summary.nodes = names->size();
    summary.events = parsed->log.size();
    summary.learning_events = halves->learning.size();
    summary.evaluation_events = halves->evaluation.size();
    summary.parse = parsed->report;

    for (const auto k : config.learning_windows) {
      const auto learning = build_tsn(halves->learning, k);
      const auto candidates = learning.all_nodes();
      summary.candidate_nodes = candidates.size();
      const auto m = seed_count(candidates.size(), config.seed_fraction);
      const auto& last_learning = learning.window(learning.window_count());
      std::map<MeasureKind, MeasureMatrix> matrices;

      for (const auto& strategy : strategies) {
        const auto context = fmt::format("dataset {}, TSN{}, strategy {}", label, k, strategy.label);
        try {
          const auto seeding_start = Clock::now();
          std::vector<SeedSet> seed_sets;
          if (strategy.kind == Strategy::Kind::ranked) {
            auto it = matrices.find(strategy.measure);
            if (it == matrices.end()) {
              it = matrices.emplace(strategy.measure, measure_matrix(learning, strategy.measure)).first;
            }
            const auto scores = aggregate(it->second, strategy.aggregation, agg_options);
            if (scores.clamped > 0) {
              result.warnings.push_back(fmt::format("{}: {} scores overflowed and were clamped", context,
                                                    scores.clamped));
            }
            seed_sets.push_back(select_seeds(rank_nodes(scores), config.seed_fraction, strategy.label));
          } else {
            for (std::size_t run = 0; run < config.random_runs; ++run) {
              const auto rng_seed = config.rng_seed + run;
              seed_sets.push_back(strategy.kind == Strategy::Kind::random
                                      ? random_seeds(candidates, m, rng_seed)
                                      : random_freq_seeds(candidates, learning.occurrences(), m, rng_seed));
            }
          }
          const double seeding_ms =
              std::chrono::duration<double, std::milli>(Clock::now() - seeding_start).count();

          std::vector<std::string> digest_ids;
          std::vector<TurnoverReport> turnovers;
          for (const auto& seeds : seed_sets) {
            for (auto s : seeds.nodes) digest_ids.push_back(names->name(s));
            digest_ids.emplace_back();
            turnovers.push_back(neighbor_turnover(evaluation, seeds.nodes, &last_learning, config.turnover));
          }
          result.turnover.push_back(
              {label, k, strategy.label, seed_sets.size(), summarize_turnover(turnovers)});
          if (seed_sets.size() == 1) digest_ids.pop_back();
          const auto digest = seed_digest(digest_ids);

          for (const auto& phi : config.phis) {
            const auto start = Clock::now();
            auto threshold = base_threshold;
            threshold.phi = phi;
            std::vector<double> totals;
            std::vector<double> excluding;
            std::vector<double> cumulative(config.evaluation_windows + 1, 0.0);
            RunRecord record;
            for (std::size_t run = 0; run < seed_sets.size(); ++run) {
              auto trace = propagate_lt(evaluation, seed_sets[run], threshold);
              totals.push_back(static_cast<double>(trace.total_influenced()));
              excluding.push_back(static_cast<double>(trace.total_influenced_excluding_seeds()));
              for (std::size_t i = 0; i < cumulative.size(); ++i) {
                cumulative[i] += static_cast<double>(trace.cumulative_counts[i]);
              }
              if (run == 0) record.trace = std::move(trace);
            }
            for (auto& c : cumulative) c /= static_cast<double>(seed_sets.size());

            record.dataset = label;
            record.learning_windows = k;
            record.strategy = strategy.label;
            record.phi = phi;
            record.runs = seed_sets.size();
            record.seed_count = seed_sets.front().size();
            record.total_influenced = mean_of(totals);
            record.total_influenced_excluding_seeds = mean_of(excluding);
            record.total_stddev = stddev_of(totals, record.total_influenced);
            record.cumulative_counts = std::move(cumulative);
            record.seed_digest = digest;
            record.nodes = names;
            record.duration_ms =
                seeding_ms + std::chrono::duration<double, std::milli>(Clock::now() - start).count();
            result.records.push_back(std::move(record));
          }
        } catch (...) {
          rethrow_with_context(context);
        }
      }
    }
    result.datasets.push_back(std::move(summary));
  }
  return result;
}

}  // namespace tseed
