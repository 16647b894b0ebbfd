// tseed command line: run experiments, recompute statistics from summaries,
// inspect neighbour turnover and window contents.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "tseed/experiment.hpp"
#include "tseed/report.hpp"
#include "tseed/windowing.hpp"

namespace fs = std::filesystem;
using namespace tseed;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitData = 2;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

// Settings shared by `run` and `turnover`. Each value stays empty unless the
// flag was given, so config file values survive.
struct Overrides {
  std::string config;
  std::vector<std::string> inputs;
  std::string format;
  std::string learning_windows;
  std::string evaluation_windows;
  std::vector<std::string> strategies;
  std::vector<std::string> measures;
  std::vector<std::string> aggregations;
  std::string seed_fraction;
  std::vector<std::string> phis;
  std::string rng_seed;
  std::string random_runs;
  std::string output;
  std::string turnover;
  std::string turnover_baseline;
  bool ef_recency = false;
  bool fixpoint = false;
  bool clamp = false;
  bool timings = false;

  void attach(CLI::App& app) {
    app.add_option("--config", config, "key = value config file; flags below override it");
    app.add_option("--input", inputs, "Event log (repeatable, one dataset each)");
    app.add_option("--format", format, "tsv or konect");
    app.add_option("--learning-windows", learning_windows, "Comma separated window counts, e.g. 10,5,1");
    app.add_option("--evaluation-windows", evaluation_windows, "Window count of the evaluation half");
    app.add_option("--strategy", strategies,
                   "inexp|outexp|totlog|bethyp|clopow|random|randomfreq|<measure>:<aggregation> (repeatable)");
    app.add_option("--measure", measures, "in|out|total|betweenness|closeness; combined with --aggregation");
    app.add_option("--aggregation", aggregations, "max|min|sum|maxlog|minlog|sumlog|maxpow|minpow|sumpow|lf|hf|ef");
    app.add_option("--seed-fraction", seed_fraction, "Share of learning nodes used as seeds");
    app.add_option("--phi", phis, "Adoption threshold in (0, 1] (repeatable)");
    app.add_option("--rng-seed", rng_seed, "Base seed for the random baselines");
    app.add_option("--random-runs", random_runs, "Runs averaged per random strategy");
    app.add_option("--output", output, "Output directory");
    app.add_option("--turnover", turnover, "Neighbourhood direction: out or in");
    app.add_option("--turnover-baseline", turnover_baseline, "previous or first");
    app.add_flag("--ef-recency", ef_recency, "Weight recent windows highest in the exponential aggregation");
    app.add_flag("--within-window-fixpoint", fixpoint, "Let adoption cascade inside a window");
    app.add_flag("--clamp-pvalues", clamp, "Clamp adjusted p-values at 1");
    app.add_flag("--timings", timings, "Also write timings.csv");
  }

  ExperimentConfig build() const {
    ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_config(config);
    auto set = [&](std::string_view key, const std::string& value) {
      if (!value.empty()) apply_setting(cfg, key, value);
    };
    set("input", join(inputs));
    set("format", format);
    set("learning-windows", learning_windows);
    set("evaluation-windows", evaluation_windows);
    set("seed-fraction", seed_fraction);
    set("phi", join(phis));
    set("rng-seed", rng_seed);
    set("random-runs", random_runs);
    set("output", output);
    set("turnover", turnover);
    set("turnover-baseline", turnover_baseline);

    std::vector<std::string> strategy_list = strategies;
    if (!measures.empty() || !aggregations.empty()) {
      const std::vector<std::string> ms = measures.empty() ? std::vector<std::string>{"out"} : measures;
      const std::vector<std::string> as = aggregations.empty() ? std::vector<std::string>{"ef"} : aggregations;
      for (const auto& m : ms)
        for (const auto& a : as) strategy_list.push_back(m + ":" + a);
    }
    if (!strategy_list.empty()) apply_setting(cfg, "strategy", join(strategy_list));

    if (ef_recency) cfg.ef_recency = true;
    if (fixpoint) cfg.within_window_fixpoint = true;
    if (clamp) cfg.clamp_pvalues = true;
    if (timings) cfg.timings = true;
    cfg.validate();
    return cfg;
  }
};

void report_datasets(const ExperimentResult& result) {
  for (const auto& d : result.datasets) {
    const auto& p = d.parse;
    std::cerr << fmt::format("{}: {} events ({} learning, {} evaluation), {} nodes, {} seed candidates\n", d.label,
                             d.events, d.learning_events, d.evaluation_events, d.nodes, d.candidate_nodes);
    if (p.malformed > 0 || p.self_loops > 0) {
      std::string where;
      for (auto line : p.malformed_examples) where += fmt::format(" {}", line);
      std::cerr << fmt::format("{}: skipped {} malformed lines{}{}, dropped {} self-loops\n", d.label, p.malformed,
                               where.empty() ? "" : " (lines", where.empty() ? "" : where + ")", p.self_loops);
    }
  }
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
}

int cmd_run(const Overrides& opts) {
  const auto cfg = opts.build();
  const auto result = run_experiment(cfg);
  report_datasets(result);
  const auto files = emit_report(result, cfg.output_dir);

  std::cout << fmt::format("{:<16} {:<8} {:<24} {:>6} {:>12}\n", "dataset", "network", "strategy", "phi", "influenced");
  for (const auto& r : result.records) {
    std::cout << fmt::format("{:<16} {:<8} {:<24} {:>6} {:>12}\n", r.dataset, r.network_type(), r.strategy,
                             r.phi.str(), format_number(r.total_influenced));
  }
  std::cerr << fmt::format("wrote {} files to {}\n", files.size(), cfg.output_dir.string());
  return 0;
}

int cmd_stats(const std::vector<std::string>& summaries, const std::string& output, bool clamp) {
  std::vector<SummaryRow> rows;
  for (const auto& path : summaries) {
    std::ifstream in(path);
    if (!in) throw DataError(fmt::format("{}: cannot open", path));
    try {
      auto part = read_summary_csv(in);
      rows.insert(rows.end(), part.begin(), part.end());
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}: {}", path, e.what()));
    }
  }
  const auto stats = compute_stats(rows, clamp);
  for (const auto& s : stats.skipped) std::cerr << "skipped: " << s << '\n';

  auto write = [&](const std::string& name, auto&& writer) {
    if (output.empty()) {
      writer(std::cout);
      return;
    }
    fs::create_directories(output);
    std::ofstream out(fs::path(output) / name);
    writer(out);
    if (!out) throw DataError(fmt::format("cannot write {}", (fs::path(output) / name).string()));
  };
  write("friedman.csv", [&](std::ostream& o) { write_friedman_csv(o, stats); });
  write("nemenyi.csv", [&](std::ostream& o) { write_nemenyi_csv(o, stats); });
  return 0;
}

int cmd_turnover(const Overrides& opts) {
  auto cfg = opts.build();
  const auto result = run_experiment(cfg);
  report_datasets(result);
  if (opts.output.empty()) {
    write_turnover_csv(std::cout, result.turnover);
  } else {
    fs::create_directories(cfg.output_dir);
    std::ofstream out(cfg.output_dir / "turnover.csv");
    write_turnover_csv(out, result.turnover);
    if (!out) throw DataError(fmt::format("cannot write {}", (cfg.output_dir / "turnover.csv").string()));
  }
  return 0;
}

int cmd_windows(const std::string& input, const std::string& format, std::size_t k, const std::string& half) {
  if (k == 0) throw ConfigError("windows: window count must be at least 1");
  if (half != "learning" && half != "evaluation" && half != "all") {
    throw ConfigError(fmt::format("windows: unknown half '{}' (expected learning|evaluation|all)", half));
  }
  const auto parsed = load_event_log(input, parse_input_format(format));
  std::optional<SplitLog> split;
  if (half != "all") split = split_halves(parsed.log);
  const EventLog& log = half == "all" ? parsed.log : half == "learning" ? split->learning : split->evaluation;
  const auto tsn = build_tsn(log, k);
  std::cout << "window,begin,end,nodes,edges,average_in_degree\n";
  for (const auto& g : tsn.windows()) {
    std::cout << fmt::format("{},{},{},{},{},{}\n", g.window_index(), g.bounds().begin, g.bounds().end,
                             g.nodes().size(), g.edge_count(), format_number(g.average_in_degree()));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seed selection and linear-threshold spread over temporal social networks"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run = app.add_subcommand("run", "Run the full experiment and write the report files");
  run_opts.attach(*run);

  std::vector<std::string> summaries;
  std::string stats_output;
  bool stats_clamp = false;
  auto* stats = app.add_subcommand("stats", "Friedman and Nemenyi tables from summary.csv files");
  stats->add_option("--summary", summaries, "summary.csv (repeatable; rows are pooled)")->required();
  stats->add_option("--output", stats_output, "Directory for friedman.csv and nemenyi.csv (default: stdout)");
  stats->add_flag("--clamp-pvalues", stats_clamp, "Clamp adjusted p-values at 1");

  Overrides turnover_opts;
  auto* turnover = app.add_subcommand("turnover", "Neighbour turnover of seed sets over the evaluation windows");
  turnover_opts.attach(*turnover);

  std::string win_input, win_format = "tsv", win_half = "learning";
  std::size_t win_k = 10;
  auto* windows = app.add_subcommand("windows", "Per-window node, edge and in-degree counts");
  windows->add_option("--input", win_input, "Event log")->required();
  windows->add_option("--format", win_format, "tsv or konect");
  windows->add_option("--windows", win_k, "Window count");
  windows->add_option("--half", win_half, "learning, evaluation or all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_opts);
    if (*stats) return cmd_stats(summaries, stats_output, stats_clamp);
    if (*turnover) return cmd_turnover(turnover_opts);
    if (*windows) return cmd_windows(win_input, win_format, win_k, win_half);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
