#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "v2x/engine.hpp"
#include "v2x/mobility.hpp"

namespace v2x {

struct TraceConfig {
  enum class Source { kFile, kSynthetic };

  Source source = Source::kSynthetic;
  std::string path;  // used when source = file
  SyntheticTraceParams synthetic;

  void validate() const;

  friend bool operator==(const TraceConfig&, const TraceConfig&) = default;
};

struct RunSettings {
  std::uint64_t seed = 1;
  int warmup_windows = -1;  // negative = longest reservation length
  std::string out_dir = "out";
  std::vector<int> sweep_k;  // sweep verb axes; empty outside sweeps
  std::vector<int> sweep_f;

  friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

struct RunConfig {
  GridConfig grid;
  ChannelConfig channel;
  SchedulerConfig scheduler;
  DecodeThresholds reception;
  MetricsConfig metrics;
  TraceConfig trace;
  RunSettings run;

  void validate() const;
  EngineConfig engine_config() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Strict parse of the sectioned key=value config format: unknown sections
// or keys, duplicate keys, and malformed values are errors naming the key
// path and line. scheduler.selectivity_k has no default and must be given.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical text form: every key emitted, fixed order, shortest exact
// number formatting. parse(serialize(c)) == c.
std::string serialize_config(const RunConfig& cfg);

// 16 hex digit digest of the canonical form, stamped into run manifests.
std::string config_digest(const RunConfig& cfg);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace v2x
