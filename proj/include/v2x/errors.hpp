#pragma once

#include <stdexcept>
#include <string>

namespace v2x {

// Configuration that fails validation; message carries the offending key path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent mobility input; message carries the line number
// where applicable.
struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace v2x
