#include "tseed/propagation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace tseed {
namespace {

constexpr std::uint64_t kMaxDenominator = 1'000'000'000;

std::uint64_t parse_digits(std::string_view text, std::string_view whole) {
  std::uint64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw std::invalid_argument(fmt::format("invalid threshold '{}'", whole));
  }
  return value;
}

}  // namespace

Threshold::Threshold(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num == 0 || num > den) {
    throw std::invalid_argument(fmt::format("threshold {}/{} outside (0, 1]", num, den));
  }
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (den_ > kMaxDenominator) {
    throw std::invalid_argument(fmt::format("threshold {}/{}: denominator too large", num, den));
  }
}

Threshold Threshold::parse(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Threshold(parse_digits(text.substr(0, slash), text), parse_digits(text.substr(slash + 1), text));
  }
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return Threshold(parse_digits(text, text), 1);
  const auto int_part = text.substr(0, dot);
  const auto frac_part = text.substr(dot + 1);
  if (frac_part.size() > 9 || (int_part.empty() && frac_part.empty())) {
    throw std::invalid_argument(fmt::format("invalid threshold '{}'", text));
  }
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  const std::uint64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
  const std::uint64_t frac = frac_part.empty() ? 0 : parse_digits(frac_part, text);
  if (whole > 1) throw std::invalid_argument(fmt::format("threshold '{}' outside (0, 1]", text));
  return Threshold(whole * den + frac, den);
}

Threshold Threshold::from_double(double value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw std::invalid_argument(fmt::format("threshold {} outside (0, 1]", value));
  }
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc{}) throw std::invalid_argument("threshold: cannot format value");
  return parse(std::string_view(buf, static_cast<std::size_t>(ptr - buf)));
}

std::string Threshold::str() const {
  if (kMaxDenominator % den_ == 0) {
    // Exact decimal: scale to 9 digits and trim.
    auto text = fmt::format("{}.{:09}", num_ / den_, (num_ % den_) * (kMaxDenominator / den_));
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
    return text;
  }
  return fmt::format("{}/{}", num_, den_);
}

PropagationTrace propagate_lt(const TemporalNetwork& network, std::span<const NodeIndex> seeds,
                              const ThresholdConfig& config) {
  const auto universe = network.nodes().size();
  std::vector<char> influenced(universe, 0);

  PropagationTrace trace;
  trace.seeds.assign(seeds.begin(), seeds.end());
  std::sort(trace.seeds.begin(), trace.seeds.end());
  trace.seeds.erase(std::unique(trace.seeds.begin(), trace.seeds.end()), trace.seeds.end());
  for (auto s : trace.seeds) {
    if (s >= universe) throw std::out_of_range(fmt::format("seed index {} outside node table", s));
    influenced[s] = 1;
  }

  std::size_t total = trace.seeds.size();
  trace.cumulative_counts.reserve(network.window_count() + 1);
  trace.cumulative_counts.push_back(total);
  trace.influenced_per_window.reserve(network.window_count());

  std::vector<NodeIndex> adopted;
  for (const auto& g : network.windows()) {
    std::vector<NodeIndex> window_adopted;
    // One synchronous pass against the state frozen at the start of the
    // pass; with the fixpoint option, passes repeat until nothing changes.
    bool changed = true;
    while (changed) {
      adopted.clear();
      for (std::size_t v = 0; v < g.node_count(); ++v) {
        const auto node = g.node_at(v);
        if (influenced[node]) continue;
        const auto in = g.in_local(v);
        if (in.empty()) continue;
        std::uint32_t hits = 0;
        for (auto u : in) hits += influenced[g.node_at(u)] ? 1u : 0u;
        if (config.phi.reached(hits, static_cast<std::uint32_t>(in.size()))) adopted.push_back(node);
      }
      for (auto node : adopted) influenced[node] = 1;
      window_adopted.insert(window_adopted.end(), adopted.begin(), adopted.end());
      changed = config.within_window_fixpoint && !adopted.empty();
    }
    std::sort(window_adopted.begin(), window_adopted.end());
    total += window_adopted.size();
    trace.cumulative_counts.push_back(total);
    trace.influenced_per_window.push_back(std::move(window_adopted));
  }
  return trace;
}

PropagationTrace propagate_lt(const TemporalNetwork& network, const SeedSet& seeds,
                              const ThresholdConfig& config) {
  return propagate_lt(network, seeds.nodes, config);
}

}  // namespace tseed
