#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tseed {

/// Dense node index, interned from the opaque ids of the input log.
using NodeIndex = std::uint32_t;

/// Seconds since epoch.
using Timestamp = std::int64_t;

struct Edge {
  NodeIndex source;
  NodeIndex target;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Input data could not be turned into a usable network.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment or CLI configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tseed
