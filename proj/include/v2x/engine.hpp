#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "v2x/channel.hpp"
#include "v2x/metrics.hpp"
#include "v2x/mobility.hpp"
#include "v2x/reception.hpp"
#include "v2x/resource_grid.hpp"
#include "v2x/sps.hpp"
#include "v2x/window_plan.hpp"

namespace v2x {

struct EngineConfig {
  GridConfig grid;
  ChannelConfig channel;
  SchedulerConfig scheduler;
  DecodeThresholds thresholds;
  MetricsConfig metrics;
  // Windows excluded from metrics at the start of the run; negative means
  // the longest reservation length, so every vehicle has reselected at
  // least once off sensing before measurement starts.
  int warmup_windows = -1;

  int effective_warmup() const;
  void validate() const;
};

// Observation points for tests; both optional and outside the hot path's
// random-number flow, so installing them cannot change results.
struct RunHooks {
  std::function<void(WindowIndex, const std::vector<VehiclePose>&,
                     const GainMatrix&)>
      on_channel;
  std::function<void(WindowIndex, const WindowPlan&)> on_plan;
};

struct SimulationMeta {
  std::uint64_t seed = 0;
  std::string config_digest;  // stamped by the caller that owns the config
  std::int64_t windows_total = 0;
  std::int64_t windows_measured = 0;
  double mean_fleet_size = 0.0;
};

struct SimulationResult {
  PrrAccumulator prr;
  PowerCdfAccumulator power_cdf;
  SimulationMeta meta;
};

// Bootstrap scheduler states for the fleet present at window 0, in
// snapshot order. Exposed for inspection; the runner performs the same
// bootstrap internally (also for vehicles entering mid-trace).
std::vector<SpsState> init_fleet(const MobilityTrace& trace,
                                 const EngineConfig& cfg, std::uint64_t seed);

// Full deterministic run over every window the trace covers. Per window:
// position snapshot, correlated-shadowing update and gain matrix, fleet
// transmission plan, reception evaluation, metric accumulation (after
// warm-up), then per-vehicle scheduler stepping.
SimulationResult run_simulation(const EngineConfig& cfg,
                                const MobilityTrace& trace,
                                std::uint64_t seed,
                                const RunHooks& hooks = {});

}  // namespace v2x
