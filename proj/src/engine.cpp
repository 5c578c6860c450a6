#include "v2x/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "v2x/errors.hpp"
#include "v2x/rng.hpp"

namespace v2x {

namespace {

Rng vehicle_stream(std::uint64_t seed, const std::string& gid,
                   std::int64_t join_window) {
  return Rng(derive_seed({seed, purpose_tag(StreamPurpose::kScheduler),
                          fnv1a64(gid),
                          static_cast<std::uint64_t>(join_window)}));
}

// Windows the trace can serve a snapshot for.
std::int64_t covered_windows(const MobilityTrace& trace,
                             const GridConfig& grid) {
  const double window_s = grid.window_ms / 1000.0;
  const auto n = static_cast<std::int64_t>(
      std::floor((trace.end_time_s() - trace.start_time_s()) / window_s));
  return n + 1;
}

}  // namespace

int EngineConfig::effective_warmup() const {
  if (warmup_windows >= 0) return warmup_windows;
  return *std::max_element(scheduler.sps_duration_choices_windows.begin(),
                           scheduler.sps_duration_choices_windows.end());
}

void EngineConfig::validate() const {
  grid.validate();
  channel.validate(grid.num_sub_bands);
  scheduler.validate(grid);
  thresholds.validate();
  metrics.validate();
}

std::vector<SpsState> init_fleet(const MobilityTrace& trace,
                                 const EngineConfig& cfg,
                                 std::uint64_t seed) {
  cfg.validate();
  const FleetSnapshot snap = trace.snapshot_at(WindowIndex{0}, cfg.grid);
  if (snap.vehicles.empty())
    throw TraceError("init_fleet: no vehicles present at window 0");
  std::vector<SpsState> states;
  states.reserve(snap.vehicles.size());
  for (const VehiclePose& pose : snap.vehicles) {
    Rng rng = vehicle_stream(seed, pose.id, 0);
    states.push_back(init_sps_state(cfg.grid, cfg.scheduler, rng));
  }
  return states;
}

SimulationResult run_simulation(const EngineConfig& cfg,
                                const MobilityTrace& trace,
                                std::uint64_t seed, const RunHooks& hooks) {
  cfg.validate();
  const std::int64_t num_windows = covered_windows(trace, cfg.grid);
  if (num_windows < 2)
    throw TraceError("run_simulation: trace must cover at least 2 windows");

  const int warmup = cfg.effective_warmup();
  const double awareness_limit = cfg.metrics.distance_bins_m.back();

  // One slot per distinct vehicle id, created on first appearance. Slot
  // indices key the shadowing pair state, so they must not depend on
  // scheduler settings; they derive only from the trace.
  struct Slot {
    std::string gid;
    SpsState sps;
    Rng rng{0};
    std::int64_t last_seen_window = -2;
  };
  std::vector<Slot> slots;
  std::unordered_map<std::string, int> slot_of_gid;

  ShadowField shadow(seed, cfg.channel.shadow_sigma_db,
                     cfg.channel.shadow_corr_dist_m);

  SimulationResult result;
  result.prr = PrrAccumulator(cfg.metrics);
  result.meta.seed = seed;
  result.meta.windows_total = num_windows;

  std::int64_t fleet_accum = 0;

  for (std::int64_t n = 0; n < num_windows; ++n) {
    const WindowIndex window{n};
    const FleetSnapshot snap = trace.snapshot_at(window, cfg.grid);

    // Reconcile fleet churn. A vehicle absent last window bootstraps
    // afresh; its old reservation is gone.
    std::vector<int> active;
    std::vector<Vec2> positions;
    active.reserve(snap.vehicles.size());
    positions.reserve(snap.vehicles.size());
    for (const VehiclePose& pose : snap.vehicles) {
      auto [it, inserted] =
          slot_of_gid.try_emplace(pose.id, static_cast<int>(slots.size()));
      if (inserted) slots.push_back(Slot{pose.id, {}, Rng{0}, -2});
      Slot& slot = slots[static_cast<std::size_t>(it->second)];
      if (slot.last_seen_window != n - 1) {
        slot.rng = vehicle_stream(seed, pose.id, n);
        slot.sps = init_sps_state(cfg.grid, cfg.scheduler, slot.rng);
      }
      slot.last_seen_window = n;
      active.push_back(it->second);
      positions.push_back(pose.pos);
    }
    const int fleet = static_cast<int>(active.size());
    fleet_accum += fleet;
    if (fleet == 0) continue;

    shadow.begin_window(window);
    GainMatrix gains(fleet);
    for (int i = 0; i < fleet; ++i) {
      for (int j = i + 1; j < fleet; ++j) {
        const double dist = distance_m(positions[i], positions[j]);
        const Vec2 mid{(positions[i].x + positions[j].x) / 2.0,
                       (positions[i].y + positions[j].y) / 2.0};
        const double x_db =
            shadow.update(static_cast<std::uint32_t>(active[i]),
                          static_cast<std::uint32_t>(active[j]), mid);
        gains.set(i, j, link_gain_linear(dist, x_db, cfg.channel));
      }
    }
    if (hooks.on_channel) hooks.on_channel(window, snap.vehicles, gains);

    WindowPlan plan(fleet, cfg.grid);
    for (int i = 0; i < fleet; ++i) {
      const SpsState& st = slots[static_cast<std::size_t>(active[i])].sps;
      plan.assign(i, st.primary);
      for (int f = 2; f <= cfg.grid.num_sub_bands; ++f)
        plan.assign(i, SubchannelId{f, st.aux_subframes[
                                           static_cast<std::size_t>(f - 2)]});
    }
    plan.finalize();
    if (hooks.on_plan) hooks.on_plan(window, plan);

    const std::vector<ReceptionRecord> records =
        evaluate_window(plan, positions, gains, cfg.channel, cfg.thresholds,
                        awareness_limit, window);
    const bool measured = n >= warmup;
    if (measured) {
      result.prr.accumulate(records);
      ++result.meta.windows_measured;
    }

    for (int i = 0; i < fleet; ++i) {
      Slot& slot = slots[static_cast<std::size_t>(active[i])];
      const auto provider = [&]() {
        return sense_powers(i, plan, gains.row(i), cfg.channel);
      };
      double picked_power = 0.0;
      const bool reselected = step_window(slot.sps, provider, cfg.grid,
                                          cfg.scheduler, slot.rng,
                                          &picked_power);
      if (reselected && measured) result.power_cdf.add(picked_power);
    }
  }

  result.meta.mean_fleet_size =
      static_cast<double>(fleet_accum) / static_cast<double>(num_windows);
  return result;
}

}  // namespace v2x
